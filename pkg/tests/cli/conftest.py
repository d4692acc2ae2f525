import logging
from collections.abc import Iterator

import pytest


@pytest.fixture(autouse=True)
def restore_root_handlers() -> Iterator[None]:
    """The CLI points the root logger at the captured stderr; undo that after each test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
