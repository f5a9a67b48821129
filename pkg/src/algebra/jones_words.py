"""
The distinguished Jones words p^{(k)}_{r,s} and f_{r-1}, the run-merge
rewriting rule, and exact checks of the p-word exchange identity.

Every identity here is verified by computing both sides independently in
the diagram basis; the rewriting rules are never used to prove themselves.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from src.algebra.errors import PreconditionError, VerificationError
from src.algebra.markov import markov_trace
from src.algebra.scalars import CoeffDomain, Scalar
from src.algebra.temperley_lieb import (
    IdentityCheck,
    JonesWord,
    TLElement,
    tl_involution,
    tl_multiply,
    word_to_element,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PWord:
    """
    p^{(k)}_{r,s} = λ^{rs}·(e_{r+k}⋯e_{1+k})(e_{r+k+1}⋯e_{2+k})⋯(e_{r+k+s-1}⋯e_{s+k}).

    s descending runs of length r; p^{(k)}_{0,s} = p^{(k)}_{r,0} = 1.
    """

    k: int
    r: int
    s: int

    def __post_init__(self):
        if min(self.k, self.r, self.s) < 0:
            raise PreconditionError(f"p-word indices must be >= 0, got k={self.k}, r={self.r}, s={self.s}")

    @property
    def min_strands(self) -> int:
        return self.k + self.r + self.s

    def letters(self) -> Tuple[int, ...]:
        if self.r == 0 or self.s == 0:
            return ()
        out: List[int] = []
        for t in range(self.s):
            out.extend(range(self.r + self.k + t, self.k + t, -1))
        return tuple(out)

    def word(self, domain: CoeffDomain) -> JonesWord:
        return JonesWord(domain.lam_pow(self.r * self.s), self.letters())

    def element(self, n: int, domain: CoeffDomain) -> TLElement:
        if n < self.min_strands:
            raise PreconditionError(
                f"p^({self.k})_{{{self.r},{self.s}}} needs at least {self.min_strands} strands, got {n}"
            )
        return word_to_element(self.word(domain), n, domain)


def build_p(k: int, r: int, s: int, n: int, domain: CoeffDomain) -> TLElement:
    """
    p^{(k)}_{r,s} as an element of TL_n.

    Raises:
        PreconditionError: n < k + r + s.
    """
    return PWord(k, r, s).element(n, domain)


def f_letters(r: int) -> Tuple[int, ...]:
    out: List[int] = []
    for t in range(r):
        out.extend(range(r + t, t, -1))
    return tuple(out)


def build_f(r: int, n: int, domain: CoeffDomain) -> TLElement:
    """
    The Jones projection f_{r-1} = λ^{r(r-1)}·(e_r⋯e_1)(e_{r+1}⋯e_2)⋯(e_{2r-1}⋯e_r).

    Raises:
        PreconditionError: n < 2r or r < 0.
    """
    if r < 0:
        raise PreconditionError(f"r must be >= 0, got {r}")
    if n < 2 * r:
        raise PreconditionError(f"f_{r - 1} needs at least {2 * r} strands, got {n}")
    return word_to_element(JonesWord(domain.lam_pow(r * (r - 1)), f_letters(r)), n, domain)


@dataclass
class ProjectionReport:
    r: int
    idempotent: bool
    self_adjoint: bool
    trace: Scalar
    trace_ok: bool
    matches_p: bool

    @property
    def holds(self) -> bool:
        return self.idempotent and self.self_adjoint and self.trace_ok and self.matches_p


def verify_f_projection(r: int, domain: CoeffDomain, n: Optional[int] = None) -> ProjectionReport:
    """f² = f = f*, tr(f) = λ^{-2r} and f = λ^{-r}·p_{r,r}, all at n (default 2r) strands."""
    n = 2 * r if n is None else n
    f = build_f(r, n, domain)
    trace = markov_trace(f)
    report = ProjectionReport(
        r=r,
        idempotent=tl_multiply(f, f) == f,
        self_adjoint=tl_involution(f) == f,
        trace=trace,
        trace_ok=domain.eq(trace, domain.lam_pow(-2 * r)),
        matches_p=build_p(0, r, r, n, domain).scale(domain.lam_pow(-r)) == f,
    )
    logger.debug("f_%s projection check on %s strands: %s", r - 1, n, report.holds)
    return report


# ── Run merging ────────────────────────────────────────────────────────────


def descending_run(top: int, bottom: int) -> Tuple[int, ...]:
    return tuple(range(top, bottom - 1, -1))


def _check_run_pair(run1: Tuple[int, int], run2: Tuple[int, int], n: int) -> None:
    (r, j), (s, p) = run1, run2
    if not (1 <= p <= j <= r < s <= n - 1):
        raise PreconditionError(
            f"run merge needs 1 <= p <= j <= r < s <= n-1, got r={r}, j={j}, s={s}, p={p}, n={n}"
        )


def run_pair_identity(
    run1: Tuple[int, int], run2: Tuple[int, int], n: int, domain: CoeffDomain
) -> IdentityCheck:
    """
    (e_r⋯e_j)(e_s⋯e_p) against λ⁻²(e_r⋯e_p)(e_s⋯e_{j+2}), both multiplied out in TL_n.

    The second run on the right is empty when s = j+1.
    """
    _check_run_pair(run1, run2, n)
    (r, j), (s, p) = run1, run2
    lhs = word_to_element(descending_run(r, j) + descending_run(s, p), n, domain)
    rhs_word = JonesWord(domain.lam_pow(-2), descending_run(r, p) + descending_run(s, j + 2))
    rhs = word_to_element(rhs_word, n, domain)
    return IdentityCheck(case=f"r={r},j={j},s={s},p={p},n={n}", lhs=lhs, rhs=rhs)


def reduce_run_pair(
    run1: Tuple[int, int], run2: Tuple[int, int], n: int, domain: CoeffDomain
) -> TLElement:
    """
    Merge two descending runs (e_r⋯e_j)(e_s⋯e_p) with p ≤ j ≤ r < s ≤ n-1.

    Returns:
        λ⁻²(e_r⋯e_p)(e_s⋯e_{j+2}), checked against the direct product.

    Raises:
        PreconditionError: the index constraints fail.
        VerificationError: the two sides disagree.
    """
    check = run_pair_identity(run1, run2, n, domain)
    if not check.equal:
        raise VerificationError(f"run merge failed for {check.case}")
    return check.rhs


def run_merge_cases(max_s: int) -> Iterator[Tuple[Tuple[int, int], Tuple[int, int], int]]:
    """Every admissible (run1, run2, n) with s ≤ max_s, on the minimal s+1 strands."""
    for s in range(2, max_s + 1):
        for r in range(1, s):
            for j in range(1, r + 1):
                for p in range(1, j + 1):
                    yield (r, j), (s, p), s + 1


def verify_run_merge_sweep(max_s: int, domain: CoeffDomain) -> List[IdentityCheck]:
    checks = [run_pair_identity(a, b, n, domain) for a, b, n in run_merge_cases(max_s)]
    logger.info(
        "Run-merge sweep up to s=%s: %s cases, %s equal",
        max_s, len(checks), sum(c.equal for c in checks),
    )
    return checks


# ── p-word exchange ────────────────────────────────────────────────────────


def verify_p_exchange(r: int, s: int, domain: CoeffDomain) -> IdentityCheck:
    """
    p_{r,2}·p_{r+2,s} against p_{r,s}·p^{(2s)}_{r-s,2} on r+s+2 strands.

    Raises:
        PreconditionError: s > r or a negative index.
    """
    if s < 0 or s > r:
        raise PreconditionError(f"p-word exchange needs 0 <= s <= r, got r={r}, s={s}")
    n = r + s + 2
    lhs = tl_multiply(build_p(0, r, 2, n, domain), build_p(0, r + 2, s, n, domain))
    rhs = tl_multiply(build_p(0, r, s, n, domain), build_p(2 * s, r - s, 2, n, domain))
    return IdentityCheck(case=f"r={r},s={s}", lhs=lhs, rhs=rhs)


def p_exchange_cases(max_r: int) -> Iterator[Tuple[int, int]]:
    for r in range(max_r + 1):
        for s in range(r + 1):
            yield r, s


def verify_p_exchange_sweep(max_r: int, domain: CoeffDomain) -> List[IdentityCheck]:
    checks = [verify_p_exchange(r, s, domain) for r, s in p_exchange_cases(max_r)]
    logger.info(
        "p-exchange sweep up to r=%s: %s cases, %s equal",
        max_r, len(checks), sum(c.equal for c in checks),
    )
    return checks
