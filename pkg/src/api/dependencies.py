"""
API authentication.

When API_SECRET_KEY is configured every /api/v1 route needs a matching
X-API-Key header; without it the API is open for local use.
"""
import secrets
from typing import Optional

from fastapi import Header, HTTPException, status

from src.config import get_settings


def _unauthorized(detail: str) -> HTTPException:
    return HTTPException(
        status_code=status.HTTP_401_UNAUTHORIZED,
        detail=detail,
        headers={"WWW-Authenticate": "X-API-Key"},
    )


async def validate_api_key(x_api_key: Optional[str] = Header(default=None, alias="X-API-Key")) -> None:
    """
    Router-level dependency checking the X-API-Key header.

    Raises:
        HTTPException 401: a key is configured and the header is missing or wrong
    """
    expected = get_settings().api_secret_key
    if not expected:
        return
    if not x_api_key:
        raise _unauthorized("Missing X-API-Key header")
    if not secrets.compare_digest(x_api_key.encode(), expected.encode()):
        raise _unauthorized("Invalid API key")
