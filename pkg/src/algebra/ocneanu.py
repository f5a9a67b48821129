"""
Arrow coordinates: the intertwiner spaces (ι, ρ^{⊗r}) of the bimodule
category, each identified with TL_r.

An arrow at level r is a TLElement on r strands; level 0 holds scalars as
elements of TL_0.  The tensor product, the insertions of the conjugation
arrow R (whose coordinate is λ·1 at level 2) and of R*, and the
conjugation J are all closed formulas in p-words and two-step expectations.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from src.algebra.diagrams import enumerate_diagrams, identity_diagram, noncrossing_pairings
from src.algebra.errors import DomainMismatchError, PreconditionError, StrandMismatchError
from src.algebra.jones_words import build_p
from src.algebra.markov import expect_down, inner_product, orthogonal_quotient_basis
from src.algebra.scalars import CoeffDomain, Scalar
from src.algebra.temperley_lieb import (
    IdentityCheck,
    TLElement,
    embed,
    identity,
    tl_involution,
    tl_multiply,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ArrowAtLevel:
    """Coordinate Γ_r(T) ∈ TL_r of an arrow T: ι → ρ^{⊗r}."""

    level: int
    value: TLElement

    def __post_init__(self):
        if self.value.n != self.level:
            raise StrandMismatchError(
                f"arrow at level {self.level} carries a TL_{self.value.n} value"
            )

    @property
    def domain(self) -> CoeffDomain:
        return self.value.domain

    @classmethod
    def of(cls, value: TLElement) -> "ArrowAtLevel":
        return cls(value.n, value)

    @classmethod
    def scalar(cls, c: Scalar, domain: CoeffDomain) -> "ArrowAtLevel":
        return cls(0, TLElement.from_diagram(identity_diagram(0), domain, domain.convert(c)))

    @classmethod
    def unit(cls, level: int, domain: CoeffDomain) -> "ArrowAtLevel":
        return cls(level, identity(level, domain))

    def to_scalar(self) -> Scalar:
        if self.level:
            raise PreconditionError(f"arrow at level {self.level} is not a scalar")
        return self.value.to_scalar()

    def scale(self, c: Scalar) -> "ArrowAtLevel":
        return ArrowAtLevel(self.level, self.value.scale(c))

    def __add__(self, other: "ArrowAtLevel") -> "ArrowAtLevel":
        return ArrowAtLevel(self.level, self.value + other.value)

    def __sub__(self, other: "ArrowAtLevel") -> "ArrowAtLevel":
        return ArrowAtLevel(self.level, self.value - other.value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArrowAtLevel):
            return NotImplemented
        return self.level == other.level and self.value == other.value

    __hash__ = None


def arrow_value(x) -> TLElement:
    return x.value if isinstance(x, ArrowAtLevel) else x


def _same_domain(*arrows: ArrowAtLevel) -> CoeffDomain:
    domain = arrows[0].domain
    for a in arrows[1:]:
        if a.domain != domain:
            raise DomainMismatchError(
                f"domains differ: '{domain.descriptor}' vs '{a.domain.descriptor}'"
            )
    return domain


# ── Tensor product ─────────────────────────────────────────────────────────


def tensor_arrows(S: ArrowAtLevel, T: ArrowAtLevel) -> ArrowAtLevel:
    """S ⊗ T ↦ S·p_{r,s}·T in TL_{r+s}, both factors included with strands on the right."""
    domain = _same_domain(S, T)
    r, s = S.level, T.level
    n = r + s
    value = tl_multiply(
        tl_multiply(embed(S.value, n), build_p(0, r, s, n, domain)),
        embed(T.value, n),
    )
    return ArrowAtLevel(n, value)


# ── R and R* insertions ────────────────────────────────────────────────────


def insert_R(r: int, s: int, zeta: ArrowAtLevel) -> ArrowAtLevel:
    """
    Coordinate of (1_r ⊗ R ⊗ 1_s)∘ζ for ζ at level r+s.

    r > s:  λ·ζ·p^{(2s)}_{r-s,2}
    r = s:  λ·ζ
    r < s:  λ·p^{(2r)}_{2,s-r}·ζ

    Raises:
        PreconditionError: negative r or s.
        StrandMismatchError: ζ not at level r+s.
    """
    _check_insert(r, s, zeta, r + s)
    domain = zeta.domain
    n = r + s + 2
    z = embed(zeta.value, n)
    if r > s:
        value = tl_multiply(z, build_p(2 * s, r - s, 2, n, domain))
    elif r == s:
        value = z
    else:
        value = tl_multiply(build_p(2 * r, 2, s - r, n, domain), z)
    return ArrowAtLevel(n, value.scale(domain.lam))


def insert_R_star(r: int, s: int, zeta: ArrowAtLevel) -> ArrowAtLevel:
    """
    Coordinate of (1_r ⊗ R* ⊗ 1_s)∘ζ for ζ at level r+s+2.

    r > s:  λ·E E(ζ·(p^{(2s)}_{r-s,2})*)
    r = s:  λ·E E(ζ)
    r < s:  λ·E E((p^{(2r)}_{2,s-r})*·ζ)
    """
    _check_insert(r, s, zeta, r + s + 2)
    domain = zeta.domain
    n = r + s + 2
    z = zeta.value
    if r > s:
        z = tl_multiply(z, tl_involution(build_p(2 * s, r - s, 2, n, domain)))
    elif r < s:
        z = tl_multiply(tl_involution(build_p(2 * r, 2, s - r, n, domain)), z)
    return ArrowAtLevel(r + s, expect_down(z, 2).scale(domain.lam))


def _check_insert(r: int, s: int, zeta: ArrowAtLevel, level: int) -> None:
    if r < 0 or s < 0:
        raise PreconditionError(f"insertion position needs r, s >= 0, got r={r}, s={s}")
    if zeta.level != level:
        raise StrandMismatchError(
            f"insertion at (r={r}, s={s}) expects an arrow at level {level}, got {zeta.level}"
        )


def conjugate_arrow(T: ArrowAtLevel) -> ArrowAtLevel:
    """J_r(T) = T*: the antiunitary conjugation of the level-r space."""
    return ArrowAtLevel(T.level, tl_involution(T.value))


def arrow_inner_product(S: ArrowAtLevel, T: ArrowAtLevel) -> Scalar:
    """⟨S, T⟩ = tr(S*T) on the level-r space; at level 0 this is conj(s)·t."""
    if S.level != T.level:
        raise StrandMismatchError(f"inner product of arrows at levels {S.level} and {T.level}")
    return inner_product(S.value, T.value)


# ── Bases and planar arrows ────────────────────────────────────────────────


@dataclass
class ArrowBasis:
    """Orthogonal basis of the level-r space with squared norms (1 in float mode)."""

    level: int
    arrows: List[ArrowAtLevel]
    norms: List[Scalar]

    @property
    def dimension(self) -> int:
        return len(self.arrows)


def invariant_arrow_basis(r: int, domain: CoeffDomain, max_strands=None) -> ArrowBasis:
    """
    Orthogonalized basis of the level-r arrow space (all of TL_r modulo the
    trace radical).  Float mode returns an orthonormal basis.

    Raises:
        BudgetExceededError: r above the Gram size budget.
    """
    vectors, norms = orthogonal_quotient_basis(r, domain, max_strands=max_strands)
    return ArrowBasis(level=r, arrows=[ArrowAtLevel(r, v) for v in vectors], norms=norms)


Pairing = Tuple[Tuple[int, int], ...]


def planar_pairings(r: int) -> List[Pairing]:
    """Noncrossing pairings of r points on a line, in deterministic order."""
    return [tuple(sorted(p)) for p in noncrossing_pairings(range(r))]


def _split_innermost(pairing: Pairing) -> Tuple[int, Pairing]:
    """Leftmost adjacent pair (i, i+1) and the pairing left after removing it."""
    pairs = sorted(pairing)
    for a, b in pairs:
        if b == a + 1:
            def relabel(p: int) -> int:
                return p if p < a else p - 2

            rest = tuple(sorted((relabel(x), relabel(y)) for x, y in pairs if (x, y) != (a, b)))
            return a, rest
    raise PreconditionError(f"pairing {pairing} is not noncrossing")


def planar_arrow(pairing: Sequence[Tuple[int, int]], domain: CoeffDomain) -> ArrowAtLevel:
    """
    ρ of the planar R-insertion vector of a noncrossing pairing of r points:
    peel the leftmost adjacent pair (i, i+1) and insert R there on top of the
    arrow of the remaining pairing.  The empty pairing is the level-0 unit.
    """
    pairing = tuple(sorted(tuple(sorted(p)) for p in pairing))
    if not pairing:
        return ArrowAtLevel.scalar(1, domain)
    level = 2 * len(pairing)
    i, rest = _split_innermost(pairing)
    return insert_R(i, level - 2 - i, planar_arrow(rest, domain))


# ── Quantum multiplicity ───────────────────────────────────────────────────


@dataclass
class MultiplicityReport:
    """
    Attributes:
        level: r
        dimension: dim of the level-r space
        m_squared: Tr(JJ*)·Tr((JJ*)⁻¹)
        conjugation_unitary: JJ* is the identity (J antiunitary and involutive)
    """

    level: int
    dimension: int
    m_squared: Scalar
    conjugation_unitary: bool

    @property
    def minimal(self) -> bool:
        return self.conjugation_unitary


def quantum_multiplicity(level: int, domain: CoeffDomain, max_strands=None) -> MultiplicityReport:
    """
    Quantum multiplicity of the level-r space from its conjugation J.

    With an orthogonal basis w_α (norms N_α) and M_{αβ} = ⟨w_α, w_β*⟩/N_α, the
    operator JJ* is similar to P = M N⁻¹ Mᵀ N, so m² = tr(P)·tr(P⁻¹); m = dim
    exactly when P = 1.
    """
    basis = invariant_arrow_basis(level, domain, max_strands=max_strands)
    dim = basis.dimension
    stars = [conjugate_arrow(w) for w in basis.arrows]
    M = [
        [domain.div(arrow_inner_product(wa, sb), na) for sb in stars]
        for wa, na in zip(basis.arrows, basis.norms)
    ]
    P = [
        [
            sum(
                (M[a][c] * domain.conj(M[b][c]) / basis.norms[c] for c in range(dim)),
                domain.zero,
            )
            * basis.norms[b]
            for b in range(dim)
        ]
        for a in range(dim)
    ]
    unitary = all(
        domain.eq(P[a][b], domain.one if a == b else domain.zero)
        for a in range(dim)
        for b in range(dim)
    )
    trace_p = sum((P[a][a] for a in range(dim)), domain.zero)
    if unitary:
        trace_inv = domain.convert(dim)
    elif domain.is_exact:
        inverse = domain.to_domain_matrix(P).inv()
        trace_inv = sum((inverse[a, a].element for a in range(dim)), domain.zero)
    else:
        trace_inv = complex(np.trace(np.linalg.inv(np.array(P, dtype=complex))))
    m_squared = trace_p * trace_inv
    logger.info("Quantum multiplicity at level %s: dim=%s, unitary J=%s", level, dim, unitary)
    return MultiplicityReport(level=level, dimension=dim, m_squared=m_squared, conjugation_unitary=unitary)


# ── Identity sweeps ────────────────────────────────────────────────────────


def basis_arrows(level: int, domain: CoeffDomain) -> Iterator[ArrowAtLevel]:
    for d in enumerate_diagrams(level):
        yield ArrowAtLevel(level, TLElement.from_diagram(d, domain))


def conjugate_equation_checks(top: int, domain: CoeffDomain) -> List[IdentityCheck]:
    """
    Identities whose intermediate level is exactly ``top``, on every diagram:

        insert_R_star(r, s, insert_R(r, s, ζ)) = β·ζ                (ζ at level top-2)
        insert_R_star(r, s+1, insert_R(r+1, s, T)) = T              (T at level top-2)
        insert_R_star(r+1, s, insert_R(r, s+1, T)) = T
    """
    checks: List[IdentityCheck] = []
    if top < 2:
        return checks
    base = top - 2
    for r in range(base + 1):
        s = base - r
        for z in basis_arrows(base, domain):
            twice = insert_R_star(r, s, insert_R(r, s, z))
            checks.append(
                IdentityCheck(f"R*R at r={r},s={s},T={z.value.sorted_terms()[0][0]}",
                              twice.value, z.value.scale(domain.beta))
            )
    if top < 3:
        return checks
    for r in range(base):
        s = base - 1 - r
        for T in basis_arrows(base, domain):
            label = T.value.sorted_terms()[0][0]
            left = insert_R_star(r, s + 1, insert_R(r + 1, s, T))
            right = insert_R_star(r + 1, s, insert_R(r, s + 1, T))
            checks.append(IdentityCheck(f"zigzag-left r={r},s={s},T={label}", left.value, T.value))
            checks.append(IdentityCheck(f"zigzag-right r={r},s={s},T={label}", right.value, T.value))
    return checks


def verify_conjugate_equations(max_level: int, domain: CoeffDomain) -> List[IdentityCheck]:
    """R*R = β and both zig-zag identities for every intermediate level ≤ max_level."""
    checks = [c for top in range(2, max_level + 1) for c in conjugate_equation_checks(top, domain)]
    logger.info(
        "Conjugate equations up to level %s: %s cases, %s equal",
        max_level, len(checks), sum(c.equal for c in checks),
    )
    return checks


def adjointness_checks(total: int, domain: CoeffDomain) -> List[IdentityCheck]:
    """⟨insert_R(r,s,ζ), ζ'⟩ = ⟨ζ, insert_R_star(r,s,ζ')⟩ on diagram bases with r+s = total."""
    checks: List[IdentityCheck] = []
    lower = list(basis_arrows(total, domain))
    upper = list(basis_arrows(total + 2, domain))
    for r in range(total + 1):
        s = total - r
        for i, z in enumerate(lower):
            lifted = insert_R(r, s, z)
            for j, w in enumerate(upper):
                lhs = arrow_inner_product(lifted, w)
                rhs = arrow_inner_product(z, insert_R_star(r, s, w))
                checks.append(IdentityCheck.of_scalars(f"r={r},s={s},ζ#{i},ζ'#{j}", lhs, rhs, domain))
    return checks


def verify_adjointness(max_total: int, domain: CoeffDomain) -> List[IdentityCheck]:
    return [c for total in range(max_total + 1) for c in adjointness_checks(total, domain)]


def tensor_associativity_checks(total: int, domain: CoeffDomain) -> List[IdentityCheck]:
    """(S⊗T)⊗U = S⊗(T⊗U) on diagram bases with r+s+t = total."""
    checks: List[IdentityCheck] = []
    for r in range(total + 1):
        for s in range(total - r + 1):
            t = total - r - s
            for i, S in enumerate(basis_arrows(r, domain)):
                for j, T in enumerate(basis_arrows(s, domain)):
                    for k, U in enumerate(basis_arrows(t, domain)):
                        lhs = tensor_arrows(tensor_arrows(S, T), U)
                        rhs = tensor_arrows(S, tensor_arrows(T, U))
                        checks.append(
                            IdentityCheck(f"levels=({r},{s},{t}) #{i},{j},{k}", lhs.value, rhs.value)
                        )
    return checks


def verify_tensor_associativity(max_total: int, domain: CoeffDomain) -> List[IdentityCheck]:
    return [c for total in range(max_total + 1) for c in tensor_associativity_checks(total, domain)]
