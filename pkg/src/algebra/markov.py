"""
Markov trace, conditional expectations and the trace inner product on TL_n.

tr(D) = λ^{c(D)-n} with c(D) the number of loops in the trace closure, and
E: TL_n → TL_{n-1} is λ⁻¹ times the closure of the last strand.  The inner
product ⟨S, T⟩ = tr(S*T) defines the Gram matrices whose radical is
quotiented out at the roots-of-unity indices.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.diagrams import (
    PlanarDiagram,
    close_last_strand,
    diagram_compose,
    enumerate_diagrams,
    flip,
    trace_closure_loops,
)
from src.algebra.errors import BudgetExceededError, PreconditionError
from src.algebra.scalars import CoeffDomain, Scalar, make_domain
from src.algebra.temperley_lieb import (
    TLElement,
    embed,
    jones_projection,
    reduced_word_table,
    tl_involution,
    tl_multiply,
)

logger = logging.getLogger(__name__)

_DETERMINANT_MAX_SIZE = {"symbolic": 5, "number-field": 14, "float": 1430}


# ── Trace and expectations ─────────────────────────────────────────────────


def markov_trace(x: TLElement) -> Scalar:
    """Normalized Markov trace: tr(1) = 1, tr(e_i) = λ⁻², tr(xy) = tr(yx)."""
    domain = x.domain
    total = domain.zero
    for d, c in x.terms.items():
        total = total + c * domain.lam_pow(trace_closure_loops(d) - x.n)
    return total


def _close_once(x: TLElement) -> TLElement:
    domain = x.domain
    acc: Dict[PlanarDiagram, Scalar] = {}
    for d, c in x.terms.items():
        closed, loops = close_last_strand(d)
        # cada lazo cerrado aporta un λ
        value = c * domain.lam_pow(loops - 1)
        acc[closed] = acc[closed] + value if closed in acc else value
    return TLElement(x.n - 1, domain, acc)


def expect_down(x: TLElement, steps: int) -> TLElement:
    """`steps` successive strand closures; may go all the way down to TL_0."""
    if not 0 <= steps <= x.n:
        raise PreconditionError(f"cannot take {steps} expectations from {x.n} strands")
    for _ in range(steps):
        x = _close_once(x)
    return x


def cond_expectation(x: TLElement) -> TLElement:
    """
    E: TL_n → TL_{n-1}, λ⁻¹ times the partial closure of the last strand.

    Raises:
        PreconditionError: n < 2.
    """
    if x.n < 2:
        raise PreconditionError(f"conditional expectation needs n >= 2, got n={x.n}")
    return _close_once(x)


def composite_expectation(x: TLElement, steps: int) -> TLElement:
    """k-fold E: TL_n → TL_{n-k}, k in 0..n-1."""
    if not 0 <= steps <= x.n - 1:
        raise PreconditionError(f"steps must lie in 0..{x.n - 1}, got {steps}")
    return expect_down(x, steps)


def inner_product(x: TLElement, y: TLElement) -> Scalar:
    """⟨x, y⟩ = tr(x* y), conjugate-linear in x."""
    return markov_trace(tl_multiply(tl_involution(x), y))


def verify_markov_relation(x: TLElement) -> Tuple[bool, TLElement]:
    """e_n x e_n = E(x) e_n in TL_{n+1}; returns (holds, lhs - rhs)."""
    n = x.n
    e = jones_projection(n, n + 1, x.domain)
    lhs = tl_multiply(tl_multiply(e, embed(x, n + 1)), e)
    rhs = tl_multiply(embed(expect_down(x, 1), n + 1), e)
    difference = lhs - rhs
    return difference.is_zero(), difference


# ── Gram matrices ──────────────────────────────────────────────────────────


@lru_cache(maxsize=None)
def gram_basis(n: int) -> Tuple[PlanarDiagram, ...]:
    """Diagrams ordered shortlex by their reduced word (identity first)."""
    table = reduced_word_table(n)
    return tuple(sorted(enumerate_diagrams(n), key=lambda d: (len(table[d]), table[d])))


def basis_vector(d: PlanarDiagram, domain: CoeffDomain) -> TLElement:
    """The reduced Jones word of d as an element: λ^{-ℓ(d)}·d."""
    length = len(reduced_word_table(d.n)[d])
    return TLElement.from_diagram(d, domain, domain.lam_pow(-length))


@lru_cache(maxsize=None)
def _gram_exponents(n: int) -> Tuple[Tuple[int, ...], ...]:
    """λ-exponents of ⟨e_a, e_b⟩ for the reduced-word basis."""
    table = reduced_word_table(n)
    basis = gram_basis(n)
    rows = []
    for a in basis:
        row = []
        for b in basis:
            d, loops = diagram_compose(flip(a), b)
            row.append(loops + trace_closure_loops(d) - n - len(table[a]) - len(table[b]))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass
class GramReport:
    """
    Gram matrix of the trace inner product on TL_n.

    Attributes:
        n: level
        labels: diagrams labelling the basis vectors λ^{-ℓ(D)}·D
        matrix: ⟨S, T⟩ = tr(S*T)
        rank: exact rank (ε-thresholded in float mode)
        positive: positive semidefinite verdict (symbolic: decided at the sample λ)
        pivots: indices of the greedy quotient basis
        determinant: exact determinant when the matrix is small enough
    """

    n: int
    domain: CoeffDomain
    labels: List[PlanarDiagram]
    matrix: List[List[Scalar]]
    rank: int
    positive: bool
    pivots: List[int] = field(default_factory=list)
    determinant: Optional[Scalar] = None


def _check_budget(n: int, max_strands: Optional[int]) -> None:
    if max_strands is None:
        from src.config import get_settings

        max_strands = get_settings().tl_gram_max_strands
    if n > max_strands:
        raise BudgetExceededError(f"n={n} exceeds the Gram size budget of {max_strands} strands")
    if n < 0:
        raise PreconditionError(f"strand count must be >= 0, got {n}")


def gram_rows(n: int, domain: CoeffDomain) -> List[List[Scalar]]:
    return [[domain.lam_pow(k) for k in row] for row in _gram_exponents(n)]


def gram_matrix(n: int, domain: CoeffDomain, max_strands: Optional[int] = None) -> GramReport:
    """
    Full Gram matrix of TL_n over the reduced-word basis, with rank and positivity.

    Raises:
        BudgetExceededError: n above the configured size budget.
    """
    _check_budget(n, max_strands)
    # 1. Matriz completa y columnas pivote (rango)
    rows = gram_rows(n, domain)
    pivots = domain.pivot_columns(rows)
    # 2. Positividad sobre el bloque de pivotes
    positive = _is_positive(n, domain, rows, pivots)
    # 3. Determinante solo si el tamaño lo permite
    determinant = None
    if len(rows) <= _DETERMINANT_MAX_SIZE[domain.mode]:
        determinant = _determinant(domain, rows)
    logger.info(
        "Gram matrix n=%s on %s: size %s, rank %s, positive=%s",
        n, domain.descriptor, len(rows), len(pivots), positive,
    )
    return GramReport(
        n=n,
        domain=domain,
        labels=list(gram_basis(n)),
        matrix=rows,
        rank=len(pivots),
        positive=positive,
        pivots=pivots,
        determinant=determinant,
    )


def _determinant(domain: CoeffDomain, rows: List[List[Scalar]]) -> Scalar:
    if not domain.is_exact:
        return complex(np.linalg.det(np.array(rows, dtype=complex)))
    return domain.to_domain_matrix(rows).det()


def _is_positive(n: int, domain: CoeffDomain, rows, pivots: List[int]) -> bool:
    if domain.mode == "symbolic":
        sample = make_domain(f"index={domain.sample_lambda ** 2}")
        rows = gram_rows(n, sample)
        return _is_positive(n, sample, rows, sample.pivot_columns(rows))
    restricted = [[rows[i][j] for j in pivots] for i in pivots]
    try:
        _, norms = gram_schmidt(restricted, domain)
    except PreconditionError:
        return False
    return all(domain.sign(v) > 0 for v in norms)


def _accumulate(domain: CoeffDomain, coeffs: Sequence[Scalar], column: Sequence[Scalar]) -> Tuple[Scalar, float]:
    """Σ conj(c_i)·g_i together with the largest |term| summed (the float-mode zero scale)."""
    total = domain.zero
    largest = 0.0
    for c, g in zip(coeffs, column):
        if c:
            term = domain.conj(c) * g
            total = total + term
            if not domain.is_exact:
                largest = max(largest, abs(term))
    return total, largest


def gram_schmidt(
    gram: Sequence[Sequence[Scalar]], domain: CoeffDomain
) -> Tuple[List[List[Scalar]], List[Scalar]]:
    """
    Gram–Schmidt on vectors known only through their Gram matrix.

    Returns:
        (coeffs, norms) with w_k = Σ_j coeffs[k][j]·v_j mutually orthogonal
        and norms[k] = ⟨w_k, w_k⟩.

    Raises:
        PreconditionError: a vanishing norm (dependent or isotropic vectors).
    """
    size = len(gram)
    coeffs: List[List[Scalar]] = []
    norms: List[Scalar] = []
    scale = domain.magnitude(x for row in gram for x in row) if size else 1.0
    for k in range(size):
        row = [domain.zero] * size
        row[k] = domain.one
        for j in range(k):
            overlap, size_j = _accumulate(domain, coeffs[j][: j + 1], [gram[i][k] for i in range(j + 1)])
            if domain.is_zero(overlap, max(scale, size_j)):
                continue
            mu = overlap / norms[j]
            for i in range(j + 1):
                row[i] = row[i] - mu * coeffs[j][i]
        norm, size_k = _accumulate(domain, row[: k + 1], [gram[i][k] for i in range(k + 1)])
        if domain.is_zero(norm, max(scale, size_k)):
            raise PreconditionError(f"vanishing norm at vector {k} during Gram–Schmidt")
        coeffs.append(row)
        norms.append(norm)
    return coeffs, norms


def radical_quotient_basis(
    n: int, domain: CoeffDomain, force: bool = False, max_strands: Optional[int] = None
) -> List[TLElement]:
    """
    Basis of a complement of the Gram kernel: greedy independent reduced words.

    Raises:
        FloatModeError: float mode unless `force` is set.
    """
    if not force:
        domain.require_exact("radical_quotient_basis")
    _check_budget(n, max_strands)
    pivots = domain.pivot_columns(gram_rows(n, domain))
    labels = gram_basis(n)
    return [basis_vector(labels[i], domain) for i in pivots]


def orthogonal_quotient_basis(
    n: int, domain: CoeffDomain, max_strands: Optional[int] = None
) -> Tuple[List[TLElement], List[Scalar]]:
    """
    Orthogonal basis of the trace-nondegenerate quotient of TL_n.

    Exact modes return unnormalized vectors together with their squared
    norms; float mode returns orthonormal vectors (norms all 1).
    """
    _check_budget(n, max_strands)
    rows = gram_rows(n, domain)
    pivots = domain.pivot_columns(rows)
    labels = gram_basis(n)
    vectors = [basis_vector(labels[i], domain) for i in pivots]
    restricted = [[rows[i][j] for j in pivots] for i in pivots]
    coeffs, norms = gram_schmidt(restricted, domain)
    basis = []
    for k, row in enumerate(coeffs):
        w = TLElement.zero(n, domain)
        for j, c in enumerate(row):
            if c:
                w = w + vectors[j].scale(c)
        basis.append(w)
    if not domain.is_exact:
        basis = [w.scale(1 / domain.sqrt_float(norm)) for w, norm in zip(basis, norms)]
        norms = [domain.one for _ in norms]
    return basis, norms
