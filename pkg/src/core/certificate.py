"""
Verification certificates: the machine-readable result of one suite run.

Overall pass holds exactly when every case passes.  JSON output is
byte-stable for identical inputs apart from the timing fields.
"""
import csv
import io
import platform
from importlib import metadata
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

AUDIT_FIELDS = ["index", "task", "case", "passed", "expected", "got", "detail"]
VERSIONED_PACKAGES = ("numpy", "sympy", "networkx", "pandas")


class CaseModel(BaseModel):
    index: int
    task: str
    case: str
    passed: bool
    expected: str = ""
    got: str = ""
    detail: str = ""


class Certificate(BaseModel):
    suite: str
    domain: str
    F: Optional[str] = None
    max: int
    versions: Dict[str, str] = Field(default_factory=dict)
    wall_time_seconds: float = 0.0
    cases: List[CaseModel] = Field(default_factory=list)

    @computed_field
    @property
    def total(self) -> int:
        return len(self.cases)

    @computed_field
    @property
    def failed(self) -> int:
        return sum(not c.passed for c in self.cases)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> List[CaseModel]:
        return [c for c in self.cases if not c.passed]


def runtime_versions() -> Dict[str, str]:
    versions = {"python": platform.python_version()}
    for package in VERSIONED_PACKAGES:
        try:
            versions[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            versions[package] = "unknown"
    return versions


def build_audit_csv(certificate: Certificate) -> str:
    """One CSV row per case, in certificate order."""
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=AUDIT_FIELDS)
    writer.writeheader()
    for case in certificate.cases:
        writer.writerow(case.model_dump(include=set(AUDIT_FIELDS)))
    return output.getvalue()
