"""
The spectral *-algebra of the ergodic A_o(F) action.

Elements are finite sums of generators T̄⊗ξ with T ∈ TL_r and ξ ∈ H^{⊗r}.
They are stored canonically as {(D, K): c}, meaning c·(D̄⊗ψ_K) for a
diagram D on r strands and a multi-index K of length r (0-based).  The bar
is conjugate-linear, so T̄ = Σ conj(t_D)·D̄.

Elements are never quotiented by the R-relations on the fly; those are
applied explicitly through apply_R_relation / lift_R_relation.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.algebra.aof import FMatrix, planar_vector, planar_vector_gram
from src.algebra.diagrams import PlanarDiagram, enumerate_diagrams, flip, identity_diagram
from src.algebra.errors import (
    BudgetExceededError,
    DomainMismatchError,
    PreconditionError,
    StrandMismatchError,
)
from src.algebra.jones_words import build_p
from src.algebra.markov import gram_schmidt, inner_product
from src.algebra.ocneanu import ArrowAtLevel, insert_R, insert_R_star, planar_arrow
from src.algebra.scalars import CoeffDomain, Scalar
from src.algebra.temperley_lieb import IdentityCheck, TLElement, embed, format_normal_form, tl_multiply
from src.config import get_settings

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]
Key = Tuple[PlanarDiagram, Index]
Monomial = Tuple[Tuple[int, int], ...]


class SpectralAlgebra:
    """
    Context for spectral elements: F, the coefficient domain and the level cutoff.

    Args:
        F: validated F matrix (its domain is the coefficient domain)
        max_level: product cutoff (defaults to settings.tl_max_level)
    """

    def __init__(self, F: FMatrix, max_level: Optional[int] = None):
        if max_level is None:
            max_level = get_settings().tl_max_level
        self.F = F
        self.domain: CoeffDomain = F.domain
        self.n = F.n
        self.max_level = max_level
        self._p_cache: Dict[Tuple[int, int], TLElement] = {}
        self._state_cache: Dict[int, List[Tuple[TLElement, Dict[Index, Scalar], Scalar]]] = {}

    def __repr__(self) -> str:
        return f"SpectralAlgebra(F={self.F.label}, domain={self.domain.descriptor!r}, max_level={self.max_level})"

    # ── Construction ──────────────────────────────────────────────────────

    def zero(self) -> "SpectralElement":
        return SpectralElement(self, {})

    def unit(self) -> "SpectralElement":
        return self.scalar(self.domain.one)

    def scalar(self, c: Scalar) -> "SpectralElement":
        return SpectralElement(self, {(identity_diagram(0), ()): self.domain.convert(c)})

    def basis_generator(self, d: PlanarDiagram, index: Sequence[int]) -> "SpectralElement":
        """D̄⊗ψ_K."""
        return SpectralElement(self, {(d, tuple(index)): self.domain.one})

    def generator(self, value: TLElement, vector: Mapping[Sequence[int], Scalar]) -> "SpectralElement":
        """T̄⊗ξ for T ∈ TL_r and ξ = Σ_K ξ_K ψ_K given as {K: ξ_K}."""
        domain = self.domain
        if value.domain != domain:
            raise DomainMismatchError(
                f"commutant lives in '{value.domain.descriptor}', algebra uses '{domain.descriptor}'"
            )
        terms: Dict[Key, Scalar] = {}
        for index, coeff in vector.items():
            index = self._check_index(index, value.n)
            coeff = domain.convert(coeff)
            for d, t in value.terms.items():
                key = (d, index)
                c = domain.conj(t) * coeff
                terms[key] = terms[key] + c if key in terms else c
        return SpectralElement(self, terms)

    def _check_index(self, index: Sequence[int], level: int) -> Index:
        index = tuple(int(k) for k in index)
        if len(index) != level:
            raise StrandMismatchError(f"multi-index {index} has length {len(index)}, expected level {level}")
        for k in index:
            if not 0 <= k < self.n:
                raise PreconditionError(f"basis index {k} outside 0..{self.n - 1}")
        return index

    def generators(self, level: int) -> Iterator["SpectralElement"]:
        """All basis generators D̄⊗ψ_K at one level."""
        for d in enumerate_diagrams(level):
            for index in itertools.product(range(self.n), repeat=level):
                yield self.basis_generator(d, index)

    def generators_up_to(self, max_level: int) -> List["SpectralElement"]:
        return [g for r in range(max_level + 1) for g in self.generators(r)]

    # ── Cached building blocks ────────────────────────────────────────────

    def p_word(self, r: int, s: int) -> TLElement:
        key = (r, s)
        if key not in self._p_cache:
            self._p_cache[key] = build_p(0, r, s, r + s, self.domain)
        return self._p_cache[key]

    def invariant_data(self, level: int) -> List[Tuple[TLElement, Dict[Index, Scalar], Scalar]]:
        """
        (ρ(w_α), w_α, N_α) for an orthogonal basis w_α of the fixed vectors of
        u^{⊗r}; ρ(w_α) is the same combination of planar arrows.
        """
        if level in self._state_cache:
            return self._state_cache[level]
        if level > self.max_level:
            raise BudgetExceededError(f"level {level} exceeds the cutoff {self.max_level}")
        domain = self.domain
        if level == 0:
            data = [(ArrowAtLevel.scalar(1, domain).value, {(): domain.one}, domain.one)]
            self._state_cache[0] = data
            return data
        pairings, gram = planar_vector_gram(level, self.F)
        data = []
        if pairings:
            pivots = domain.pivot_columns(gram)
            restricted = [[gram[i][j] for j in pivots] for i in pivots]
            coeffs, norms = gram_schmidt(restricted, domain)
            arrows = [planar_arrow(pairings[i], domain).value for i in pivots]
            vectors = [planar_vector(pairings[i], level, self.F) for i in pivots]
            indices = list(itertools.product(range(self.n), repeat=level))
            for row, norm in zip(coeffs, norms):
                arrow = TLElement.zero(level, domain)
                vec = np.zeros(len(indices), dtype=object if domain.is_exact else complex)
                if domain.is_exact:
                    vec.fill(domain.zero)
                for j, c in enumerate(row):
                    if c:
                        arrow = arrow + arrows[j].scale(c)
                        vec = vec + vectors[j] * c
                components = {idx: v for idx, v in zip(indices, vec) if not domain.is_zero(v)}
                data.append((arrow, components, norm))
        self._state_cache[level] = data
        return data


class SpectralElement:
    """Finite sum Σ c·(D̄⊗ψ_K) with zero coefficients pruned."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SpectralAlgebra, terms: Mapping[Key, Scalar], scale: Optional[float] = None):
        self.algebra = algebra
        domain = algebra.domain
        scale = max(scale or 0.0, domain.magnitude(terms.values()))
        cleaned: Dict[Key, Scalar] = {}
        for (d, index), c in terms.items():
            if d.n != len(index):
                raise StrandMismatchError(
                    f"commutant on {d.n} strands paired with a degree-{len(index)} vector"
                )
            if not domain.is_zero(c, scale):
                cleaned[(d, index)] = c
        self.terms = cleaned

    @property
    def domain(self) -> CoeffDomain:
        return self.algebra.domain

    def levels(self) -> List[int]:
        return sorted({d.n for d, _ in self.terms})

    def by_level(self) -> Dict[int, Dict[Key, Scalar]]:
        out: Dict[int, Dict[Key, Scalar]] = {}
        for (d, index), c in self.terms.items():
            out.setdefault(d.n, {})[(d, index)] = c
        return out

    def sorted_terms(self) -> List[Tuple[Key, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][0].n, item[0][0], item[0][1]))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SpectralElement") -> None:
        if not isinstance(other, SpectralElement):
            raise TypeError(f"expected SpectralElement, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            if other.algebra.domain != self.domain or other.algebra.F.label != self.algebra.F.label:
                raise DomainMismatchError("spectral elements from different algebras")

    def __add__(self, other: "SpectralElement") -> "SpectralElement":
        return sp_add(self, other)

    def __sub__(self, other: "SpectralElement") -> "SpectralElement":
        return sp_add(self, sp_scale(other, -1))

    def __mul__(self, other):
        if isinstance(other, SpectralElement):
            return sp_product(self, other)
        return sp_scale(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectralElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(
            f"({self.domain.format(c)})·{d}⊗ψ{list(k)}" for (d, k), c in self.sorted_terms()
        )
        return f"SpectralElement({body or '0'})"


# ── Linear structure ───────────────────────────────────────────────────────


def sp_add(a: SpectralElement, b: SpectralElement) -> SpectralElement:
    a._check(b)
    terms = dict(a.terms)
    for key, c in b.terms.items():
        terms[key] = terms[key] + c if key in terms else c
    domain = a.algebra.domain
    scale = max(domain.magnitude(a.terms.values()), domain.magnitude(b.terms.values()))
    return SpectralElement(a.algebra, terms, scale=scale)


def sp_scale(a: SpectralElement, c: Scalar) -> SpectralElement:
    c = a.domain.convert(c)
    return SpectralElement(a.algebra, {key: c * v for key, v in a.terms.items()})


def canonicalize(a: SpectralElement) -> SpectralElement:
    """Merge and prune, returning an element whose terms are in sorted order."""
    return SpectralElement(a.algebra, dict(a.sorted_terms()))


def _bar(x: TLElement, coeff: Scalar, index: Index, out: Dict[Key, Scalar]) -> None:
    """Accumulate coeff·(x̄⊗ψ_index) into out."""
    domain = x.domain
    for d, t in x.terms.items():
        key = (d, index)
        c = coeff * domain.conj(t)
        out[key] = out[key] + c if key in out else c


# ── Product and star ───────────────────────────────────────────────────────


def sp_product(a: SpectralElement, b: SpectralElement) -> SpectralElement:
    """
    (T̄⊗ξ)(T̄'⊗ξ') = (T·p_{r,s}·T')‾ ⊗ ξξ', extended bilinearly.

    Raises:
        BudgetExceededError: a product term above the level cutoff.
    """
    a._check(b)
    algebra = a.algebra
    domain = algebra.domain
    out: Dict[Key, Scalar] = {}
    for (d1, k1), c1 in a.terms.items():
        for (d2, k2), c2 in b.terms.items():
            r, s = d1.n, d2.n
            # el corte de niveles se aplica término a término
            if r + s > algebra.max_level:
                raise BudgetExceededError(
                    f"product of levels {r} and {s} exceeds the cutoff {algebra.max_level}"
                )
            n = r + s
            left = embed(TLElement.from_diagram(d1, domain), n)
            right = embed(TLElement.from_diagram(d2, domain), n)
            value = tl_multiply(tl_multiply(left, algebra.p_word(r, s)), right)
            _bar(value, c1 * c2, k1 + k2, out)
    return SpectralElement(algebra, out)


def j_on_index(index: Index, F: FMatrix) -> Dict[Index, Scalar]:
    """j_{u^r}ψ_K = Σ_L ∏_i F[l_i, k_{r+1-i}] ψ_L, sparse."""
    domain = F.domain
    reversed_index = index[::-1]
    out: Dict[Index, Scalar] = {(): domain.one}
    for k in reversed_index:
        grown: Dict[Index, Scalar] = {}
        for prefix, c in out.items():
            for l in range(F.n):
                entry = F.entries[l, k]
                if domain.is_zero(entry):
                    continue
                grown[prefix + (l,)] = c * entry
        out = grown
    return out


def sp_star(a: SpectralElement) -> SpectralElement:
    """(c·D̄⊗ψ_K)* = conj(c)·(D*)‾ ⊗ j_{u^r}ψ_K."""
    algebra = a.algebra
    domain = algebra.domain
    out: Dict[Key, Scalar] = {}
    for (d, index), c in a.terms.items():
        star_d = flip(d)
        cc = domain.conj(c)
        for target, coeff in j_on_index(index, algebra.F).items():
            key = (star_d, target)
            value = cc * coeff
            out[key] = out[key] + value if key in out else value
    return SpectralElement(algebra, out)


# ── Invariant state ────────────────────────────────────────────────────────


def _state_of_term(algebra: SpectralAlgebra, d: PlanarDiagram, index: Index) -> Scalar:
    domain = algebra.domain
    total = domain.zero
    element = TLElement.from_diagram(d, domain)
    for arrow, components, norm in algebra.invariant_data(d.n):
        w = components.get(index)
        if w is None:
            continue
        total = total + inner_product(element, arrow) * domain.conj(w) / norm
    return total


def invariant_state(a: SpectralElement) -> Scalar:
    """h(T̄⊗ξ) = Σ_α ⟨T, ρ(w_α)⟩·⟨w_α, ξ⟩ / N_α, with h(1) = 1. Needs d = β."""
    algebra = a.algebra
    algebra.F.require_subfactor()
    total = algebra.domain.zero
    for (d, index), c in a.terms.items():
        total = total + c * _state_of_term(algebra, d, index)
    return total


# ── R-relations ────────────────────────────────────────────────────────────


def _insert_pair(index: Index, r: int, F: FMatrix) -> Dict[Index, Scalar]:
    """(1_r⊗R_u⊗1)ψ_K: Σ_{a,b} F[b,a]·ψ_{K[:r] a b K[r:]}."""
    domain = F.domain
    out: Dict[Index, Scalar] = {}
    for a_ in range(F.n):
        for b_ in range(F.n):
            entry = F.entries[b_, a_]
            if not domain.is_zero(entry):
                out[index[:r] + (a_, b_) + index[r:]] = entry
    return out


def _contract_pair(index: Index, r: int, F: FMatrix) -> Tuple[Index, Scalar]:
    """(1_r⊗R_u*⊗1)ψ_K = conj(F[k_{r+1}, k_r])·ψ_{K without positions r, r+1}."""
    return index[:r] + index[r + 2:], F.domain.conj(F.entries[index[r + 1], index[r]])


def _check_relation_level(r: int, s: int, a: SpectralElement, level: int) -> None:
    if r < 0 or s < 0:
        raise PreconditionError(f"relation position needs r, s >= 0, got r={r}, s={s}")
    wrong = [lv for lv in a.levels() if lv != level]
    if wrong:
        raise PreconditionError(f"relation at (r={r}, s={s}) needs every term at level {level}, found {wrong}")


def apply_R_relation(r: int, s: int, a: SpectralElement, direction: str) -> SpectralElement:
    """
    Rewrite a level-(r+s+2) element down to level r+s with the relation
    insert_R(r,s,S)‾⊗ξ ≡ S̄⊗(1_r⊗R_u*⊗1_s)ξ.

    direction "R*": for each multi-index K the commutant T_K must be
        insert_R(r,s,S_K); then S_K = β⁻¹·insert_R_star(r,s,T_K) and the
        result is Σ_K S̄_K⊗(1⊗R_u*⊗1)ψ_K.
    direction "R": for each diagram D the vector η_D must be (1⊗R_u⊗1)η'_D;
        then η'_D = d⁻¹(1⊗R_u*⊗1)η_D and the result is
        Σ_D insert_R_star(r,s,D)‾⊗η'_D.

    Raises:
        PreconditionError: a term off level r+s+2, or the commutant / vector
            part not in the required image.
    """
    algebra = a.algebra
    F = algebra.F
    domain = algebra.domain
    level = r + s + 2
    _check_relation_level(r, s, a, level)
    out: Dict[Key, Scalar] = {}

    if direction == "R*":
        by_index: Dict[Index, TLElement] = {}
        for (d, index), c in a.terms.items():
            part = TLElement.from_diagram(d, domain, domain.conj(c))
            by_index[index] = by_index[index] + part if index in by_index else part
        for index, T in by_index.items():
            S = insert_R_star(r, s, ArrowAtLevel(level, T)).scale(domain.inv(domain.beta))
            if not insert_R(r, s, S).value == T:
                raise PreconditionError(
                    f"commutant at ψ{list(index)} is not in the image of the R insertion at (r={r}, s={s})"
                )
            lowered, coeff = _contract_pair(index, r, F)
            _bar(S.value, coeff, lowered, out)
    elif direction == "R":
        by_diagram: Dict[PlanarDiagram, Dict[Index, Scalar]] = {}
        for (d, index), c in a.terms.items():
            by_diagram.setdefault(d, {})[index] = c
        d_inv = domain.inv(F.d)
        for d, vector in by_diagram.items():
            lowered: Dict[Index, Scalar] = {}
            for index, c in vector.items():
                target, coeff = _contract_pair(index, r, F)
                lowered[target] = lowered.get(target, domain.zero) + c * coeff * d_inv
            rebuilt: Dict[Index, Scalar] = {}
            for index, c in lowered.items():
                for target, coeff in _insert_pair(index, r, F).items():
                    rebuilt[target] = rebuilt.get(target, domain.zero) + c * coeff
            difference = set(rebuilt) | set(vector)
            if any(
                not domain.eq(rebuilt.get(k, domain.zero), vector.get(k, domain.zero))
                for k in difference
            ):
                raise PreconditionError(
                    f"vector part at {d} is not in the image of 1⊗R_u⊗1 at position {r}"
                )
            S = insert_R_star(r, s, ArrowAtLevel(level, TLElement.from_diagram(d, domain)))
            for index, c in lowered.items():
                _bar(S.value, c, index, out)
    else:
        raise PreconditionError(f"direction must be 'R*' or 'R', got {direction!r}")
    return SpectralElement(algebra, out)


def lift_R_relation(r: int, s: int, a: SpectralElement) -> SpectralElement:
    """
    The R*-relation read upward: S̄⊗η ↦ insert_R(r,s,S)‾⊗d⁻¹(1⊗R_u⊗1)η,
    taking a level-(r+s) element to level r+s+2.

    Raises:
        BudgetExceededError: r+s+2 above the cutoff.
    """
    algebra = a.algebra
    domain = algebra.domain
    level = r + s
    _check_relation_level(r, s, a, level)
    if level + 2 > algebra.max_level:
        raise BudgetExceededError(f"lifting to level {level + 2} exceeds the cutoff {algebra.max_level}")
    d_inv = domain.inv(algebra.F.d)
    out: Dict[Key, Scalar] = {}
    for (d, index), c in a.terms.items():
        # c·D̄ = (conj(c)·D)‾
        lifted = insert_R(r, s, ArrowAtLevel(level, TLElement.from_diagram(d, domain, domain.conj(c))))
        for target, coeff in _insert_pair(index, r, algebra.F).items():
            _bar(lifted.value, coeff * d_inv, target, out)
    return SpectralElement(algebra, out)


def relation_consistency(
    r: int,
    s: int,
    a: SpectralElement,
    direction: str,
    probes: Sequence[SpectralElement] = (),
) -> List[IdentityCheck]:
    """
    The rewritten element and the original agree under the invariant state,
    alone and multiplied by each probe on either side (within the cutoff).
    """
    algebra = a.algebra
    domain = algebra.domain
    rewritten = apply_R_relation(r, s, a, direction)
    pairs = [("h(a)", a, rewritten)]
    for i, probe in enumerate(probes):
        top = max(probe.levels(), default=0) + r + s + 2
        if top > algebra.max_level:
            continue
        pairs.append((f"h(a·probe{i})", sp_product(a, probe), sp_product(rewritten, probe)))
        pairs.append((f"h(probe{i}·a)", sp_product(probe, a), sp_product(probe, rewritten)))
    return [
        IdentityCheck(
            f"{direction} at (r={r}, s={s}) {label}",
            ArrowAtLevel.scalar(invariant_state(original), domain).value,
            ArrowAtLevel.scalar(invariant_state(lowered), domain).value,
        )
        for label, original, lowered in pairs
    ]


# ── Coaction ───────────────────────────────────────────────────────────────


@dataclass
class CoactionSum:
    """Σ_m x_m ⊗ u_m: a formal sum keyed by monomials u_{l1 k1}⋯u_{lr kr}."""

    algebra: SpectralAlgebra
    parts: Dict[Monomial, SpectralElement] = field(default_factory=dict)

    def add(self, monomial: Monomial, x: SpectralElement) -> None:
        if monomial in self.parts:
            self.parts[monomial] = self.parts[monomial] + x
        else:
            self.parts[monomial] = x
        if self.parts[monomial].is_zero():
            del self.parts[monomial]

    def __mul__(self, other: "CoactionSum") -> "CoactionSum":
        out = CoactionSum(self.algebra)
        for m1, x1 in self.parts.items():
            for m2, x2 in other.parts.items():
                out.add(m1 + m2, sp_product(x1, x2))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoactionSum):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        zero = self.algebra.zero()
        return all(self.parts.get(k, zero) == other.parts.get(k, zero) for k in keys)

    __hash__ = None


def coaction_expand(a: SpectralElement) -> CoactionSum:
    """β(D̄⊗ψ_K) = Σ_L (D̄⊗ψ_L) ⊗ u_{l1 k1}⋯u_{lr kr}."""
    algebra = a.algebra
    out = CoactionSum(algebra)
    for (d, index), c in a.terms.items():
        for target in itertools.product(range(algebra.n), repeat=len(index)):
            monomial = tuple(zip(target, index))
            out.add(monomial, SpectralElement(algebra, {(d, target): c}))
    return out


def counit(beta: CoactionSum) -> SpectralElement:
    """Substitute u_{ij} ↦ δ_{ij}."""
    total = beta.algebra.zero()
    for monomial, x in beta.parts.items():
        if all(i == j for i, j in monomial):
            total = total + x
    return total


# ── Verification sweeps ────────────────────────────────────────────────────


@dataclass
class SpectralCheck:
    case: str
    holds: bool
    detail: str = ""


def verify_star(algebra: SpectralAlgebra, max_level: int = 2) -> List[SpectralCheck]:
    """a** = σ^r·a on generators and (ab)* = b*a* on generator pairs, levels ≤ max_level."""
    sigma = algebra.F.sigma
    gens = algebra.generators_up_to(max_level)
    checks: List[SpectralCheck] = []
    for i, g in enumerate(gens):
        level = g.levels()[0]
        twice = sp_star(sp_star(g))
        checks.append(SpectralCheck(f"involutive #{i} (level {level})", twice == sp_scale(g, sigma ** level)))
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            if g.levels()[0] + h.levels()[0] > algebra.max_level:
                continue
            lhs = sp_star(sp_product(g, h))
            rhs = sp_product(sp_star(h), sp_star(g))
            checks.append(SpectralCheck(f"antimultiplicative #{i},#{j}", lhs == rhs))
    return checks


def verify_associativity(
    algebra: SpectralAlgebra,
    max_level: int,
    generators: Optional[Sequence[SpectralElement]] = None,
    left: Optional[Sequence[SpectralElement]] = None,
) -> List[SpectralCheck]:
    """
    (ab)c = a(bc) on generator triples with total level ≤ max_level.

    ``left`` restricts the first factor (default: all generators) so a sweep
    can be split into independent blocks.
    """
    gens = list(generators) if generators is not None else algebra.generators_up_to(max_level)
    firsts = list(left) if left is not None else gens
    checks: List[SpectralCheck] = []
    for i, a in enumerate(firsts):
        la = a.levels()[0] if a.levels() else 0
        for j, b in enumerate(gens):
            lb = b.levels()[0] if b.levels() else 0
            if la + lb > max_level:
                continue
            ab = sp_product(a, b)
            for k, c in enumerate(gens):
                lc = c.levels()[0] if c.levels() else 0
                if la + lb + lc > max_level:
                    continue
                lhs = sp_product(ab, c)
                rhs = sp_product(a, sp_product(b, c))
                checks.append(SpectralCheck(f"#{i},#{j},#{k}", lhs == rhs))
    return checks


def verify_coaction(algebra: SpectralAlgebra, max_level: int) -> List[SpectralCheck]:
    """Counit law and formal multiplicativity β(ab) = β(a)β(b) on generator pairs."""
    gens = algebra.generators_up_to(max_level)
    checks: List[SpectralCheck] = []
    expanded = [coaction_expand(g) for g in gens]
    for i, (g, beta) in enumerate(zip(gens, expanded)):
        checks.append(SpectralCheck(f"counit #{i}", counit(beta) == g))
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            if sum(g.levels()) + sum(h.levels()) > algebra.max_level:
                continue
            lhs = coaction_expand(sp_product(g, h))
            checks.append(SpectralCheck(f"multiplicative #{i},#{j}", lhs == expanded[i] * expanded[j]))
    return checks


def verify_relation_round_trips(algebra: SpectralAlgebra, max_total: int) -> List[SpectralCheck]:
    """
    For every basis generator g at level r+s ≤ max_total:

    - lowering lift_R_relation(g) with the R* direction returns g;
    - lowering it with the R direction returns (β/d)·g;
    - when F matches the index, both lowerings keep every invariant-state
      value against level-≤1 probes.
    """
    domain = algebra.domain
    ratio = domain.div(domain.beta, algebra.F.d)
    probes = algebra.generators_up_to(1) if algebra.F.subfactor_ok else []
    checks: List[SpectralCheck] = []
    for total in range(max_total + 1):
        if total + 2 > algebra.max_level:
            break
        for r in range(total + 1):
            s = total - r
            for i, g in enumerate(algebra.generators(total)):
                up = lift_R_relation(r, s, g)
                label = f"(r={r}, s={s}) #{i}"
                checks.append(SpectralCheck(f"R* round trip {label}", apply_R_relation(r, s, up, "R*") == g))
                checks.append(
                    SpectralCheck(f"R round trip {label}", apply_R_relation(r, s, up, "R") == sp_scale(g, ratio))
                )
                for direction in ("R*", "R") if probes else ():
                    for check in relation_consistency(r, s, up, direction, probes):
                        detail = "" if check.equal else format_normal_form(check.difference)
                        checks.append(SpectralCheck(f"{check.case} {label}", check.equal, detail))
    logger.info(
        "R-relation round trips up to level %s: %s checks, %s failing",
        max_total, len(checks), sum(not c.holds for c in checks),
    )
    return checks


def verify_traciality(algebra: SpectralAlgebra, r_max: int) -> List[SpectralCheck]:
    """
    h(ab) = h(ba) for all basis generator pairs with levels ≤ r_max.

    Expected to hold for F = I_p; for other F the failures are reported, not raised.

    Raises:
        PreconditionError: F does not match the index.
    """
    algebra.F.require_subfactor()
    domain = algebra.domain
    gens = algebra.generators_up_to(r_max)
    checks: List[SpectralCheck] = []
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            if j < i:
                continue
            hab = invariant_state(sp_product(a, b))
            hba = invariant_state(sp_product(b, a))
            holds = domain.eq(hab, hba)
            detail = "" if holds else f"h(ab)={domain.format(hab)}, h(ba)={domain.format(hba)}"
            checks.append(SpectralCheck(f"#{i},#{j}", holds, detail))
    logger.info(
        "Traciality for F %s up to level %s: %s pairs, %s violations",
        algebra.F.label, r_max, len(checks), sum(not c.holds for c in checks),
    )
    return checks


def verify_state_positivity(algebra: SpectralAlgebra, elements: Iterable[SpectralElement]) -> List[SpectralCheck]:
    """h(a*a) ≥ 0 (real part, with a zero imaginary part in float mode)."""
    domain = algebra.domain
    checks = []
    for i, a in enumerate(elements):
        value = invariant_state(sp_product(sp_star(a), a))
        holds = domain.sign(value) >= 0
        if not domain.is_exact:
            holds = holds and abs(complex(value).imag) <= domain.eps * max(abs(complex(value)), 1.0)
        checks.append(SpectralCheck(f"positivity #{i}", holds, domain.format(value)))
    return checks
