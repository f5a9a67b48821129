"""
Pydantic models for API request/response schemas.
"""
from typing import Any, Dict, List, Optional

from pydantic import AnyHttpUrl, BaseModel, Field, field_validator

from src.core.suite_registry import SUITE_MAP


# ── Request Schemas ────────────────────────────────────────────────────────

class VerifyRequest(BaseModel):
    """
    Request body for the verification endpoints.

    Attributes:
        suite: registered suite name (see GET /api/v1/suites)
        domain: coefficient domain descriptor; the suite default when None
        max: sweep bound; the suite default when None
        F: F-matrix text for spectral and concrete suites
        samples / seed: property-suite sampling
    """
    suite: str
    domain: Optional[str] = None
    max: Optional[int] = Field(default=None, ge=0)
    F: Optional[str] = None
    samples: int = Field(default=200, ge=1)
    seed: int = 0

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value: str) -> str:
        if value not in SUITE_MAP:
            raise ValueError(f"unknown suite '{value}'; known suites: {', '.join(sorted(SUITE_MAP))}")
        return value


class VerifyJobRequest(VerifyRequest):
    """
    Request body for POST /api/v1/jobs/verify.

    Attributes:
        webhook_url: URL to POST the certificate to when the run finishes.
                     Can be None for fire-and-forget runs.
        job_metadata: Arbitrary metadata from the caller (passed through).
    """
    webhook_url: Optional[AnyHttpUrl] = None
    job_metadata: Optional[Dict[str, Any]] = None


class GramRequest(BaseModel):
    n: int = Field(ge=0)
    domain: Optional[str] = None


class DimsRequest(BaseModel):
    """Path-model dimensions of a built-in graph ("A5") or an explicit adjacency matrix."""
    graph: Optional[str] = "A4"
    adjacency: Optional[List[List[int]]] = None
    star: int = 0
    levels: int = Field(default=8, ge=0)
    hilbert_dim: Optional[int] = Field(default=None, ge=1)


# ── Response Schemas ───────────────────────────────────────────────────────

class JobAcceptedResponse(BaseModel):
    """
    Immediate response returned when a job is accepted (HTTP 202).

    The suite runs asynchronously via BackgroundTasks.
    """
    status: str = "processing"
    job_id: str
    message: str = "Job accepted. The certificate will be posted to the webhook upon completion."


class DimsResponse(BaseModel):
    graph: str
    rows: List[Dict[str, Any]]
    growth_estimate: Optional[float] = None
    embedability: Optional[str] = None


class SuiteInfo(BaseModel):
    name: str
    description: str
    default_max: int


class ErrorResponse(BaseModel):
    """Standard error response."""
    detail: str
