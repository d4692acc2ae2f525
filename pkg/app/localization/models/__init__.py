from app.localization.models.result import (
    LocalizationResult,
    MergedSpectra,
    Method,
    OpCounter,
    resolve_methods,
)

__all__ = ["LocalizationResult", "MergedSpectra", "Method", "OpCounter", "resolve_methods"]
