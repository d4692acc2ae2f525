"""Response envelope shared by every HTTP route."""

from typing import Any, Generic, TypeVar

from pydantic import BaseModel

T = TypeVar("T")


class ApiResponse(BaseModel, Generic[T]):
    """Standard API response envelope.

    Example success response:
        {
            "success": true,
            "data": {"array": "respeaker-usb", "groups": 4, ...},
            "meta": {"total": 5}
        }

    Errors are rendered by the exception handlers in the same shape:
        {
            "success": false,
            "error": {
                "code": "NOT_FOUND",
                "message": "Unknown array preset: foo",
                "details": {"resource": "array"}
            }
        }
    """

    success: bool = True
    data: T | None = None
    error: dict[str, Any] | None = None
    meta: dict[str, Any] | None = None


def success_response(data: T, meta: dict[str, Any] | None = None) -> ApiResponse[T]:
    return ApiResponse(success=True, data=data, meta=meta)
