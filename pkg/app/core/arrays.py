"""Helpers for the immutable NumPy arrays held by domain types."""

import numpy as np
from numpy.typing import ArrayLike, NDArray


def readonly(values: ArrayLike, dtype: type | None = None) -> NDArray:
    """Return a C-contiguous copy of ``values`` with the write flag cleared."""
    array = np.array(values, dtype=dtype, copy=True, order="C")
    array.setflags(write=False)
    return array
