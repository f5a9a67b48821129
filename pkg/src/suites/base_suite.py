"""
Abstract base class for all verification suites.

A suite turns its parameters into a list of independent tasks.  Each task
returns one or more case records; the engine runs tasks in parallel and
reassembles the records in task order, so certificates are deterministic.
Suites never raise for a failing identity; they record it as failed.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, ClassVar, List, Optional
import logging

from src.algebra.aof import FMatrix, identity_F, parse_F
from src.algebra.scalars import CoeffDomain
from src.algebra.spectral import SpectralCheck
from src.algebra.temperley_lieb import IdentityCheck, format_normal_form


@dataclass
class CaseRecord:
    case: str
    passed: bool
    expected: str = ""
    got: str = ""
    detail: str = ""


@dataclass
class SuiteTask:
    index: int
    label: str
    run: Callable[[], List[CaseRecord]]


@dataclass
class SuiteParams:
    """
    Sweep parameters shared by all suites.

    Attributes:
        max: sweep bound (strands, level or index, depending on the suite);
             None selects the suite default
        F: F-matrix text for the suites that need one ("I2", "t=0.7", JSON)
        samples: random samples for property suites
        seed: seed of numpy.random.default_rng
    """
    max: Optional[int] = None
    F: Optional[str] = None
    samples: int = 200
    seed: int = 0


def record_from_identity(check: IdentityCheck) -> CaseRecord:
    return CaseRecord(
        case=check.case,
        passed=check.equal,
        expected=format_normal_form(check.rhs),
        got=format_normal_form(check.lhs),
    )


def record_from_spectral(check: SpectralCheck) -> CaseRecord:
    return CaseRecord(case=check.case, passed=check.holds, detail=check.detail)


class BaseSuite(ABC):
    """
    Abstract base for verification suites.

    Subclasses set ``name``, ``description`` and ``default_max`` and
    implement build_tasks().  ``default_domain`` and ``default_F`` are used
    when the caller does not pass them.
    """

    name: ClassVar[str]
    description: ClassVar[str]
    default_max: ClassVar[int]
    default_domain: ClassVar[Optional[str]] = None
    default_F: ClassVar[Optional[str]] = None

    def __init__(self, domain: CoeffDomain, params: Optional[SuiteParams] = None,
                 logger: Optional[logging.Logger] = None):
        self.domain = domain
        self.params = params or SuiteParams()
        self.logger = logger or logging.getLogger(__name__)

    @property
    def bound(self) -> int:
        return self.default_max if self.params.max is None else self.params.max

    def f_matrix(self) -> FMatrix:
        text = self.params.F or self.default_F
        if text is None:
            return identity_F(2, self.domain)
        return parse_F(text, self.domain)

    @abstractmethod
    def build_tasks(self) -> List[SuiteTask]:
        """
        Build the independent tasks of this run.

        Raises:
            TLError: parameters or domain unusable for this suite
        """
        ...

    # ── Utilities ─────────────────────────────────────────────────────────

    def identity_task(self, index: int, label: str, checks: Callable[[], List[IdentityCheck]]) -> SuiteTask:
        return SuiteTask(index, label, lambda: [record_from_identity(c) for c in checks()])

    def spectral_task(self, index: int, label: str, checks: Callable[[], List[SpectralCheck]]) -> SuiteTask:
        return SuiteTask(index, label, lambda: [record_from_spectral(c) for c in checks()])

    def log_case(self, case: str, status: str, details: str = "", level: int = logging.INFO):
        """Log a structured case record."""
        self.logger.log(level, f"Suite: {self.name} - Case: {case} - Status: {status} - Details: {details}")
