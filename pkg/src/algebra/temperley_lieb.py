"""
The Temperley–Lieb algebra TL_n with loop value λ.

Elements are finite linear combinations of planar diagrams (the canonical
normal form).  The Jones projections are e_i = λ⁻¹·U_i with U_i the
cup-cap diagram, so e_i² = e_i and e_i e_{i±1} e_i = λ⁻² e_i.  Jones reduced
words are a secondary presentation produced on demand.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.algebra.diagrams import (
    PlanarDiagram,
    catalan,
    cup_cap,
    diagram_compose,
    embed_right,
    enumerate_diagrams,
    flip,
    identity_diagram,
)
from src.algebra.errors import (
    DomainMismatchError,
    LetterRangeError,
    StrandMismatchError,
    VerificationError,
)
from src.algebra.scalars import CoeffDomain, Scalar

logger = logging.getLogger(__name__)


class TLElement:
    """A linear combination of planar diagrams on n strands with pruned zero terms."""

    __slots__ = ("n", "domain", "terms")

    def __init__(
        self,
        n: int,
        domain: CoeffDomain,
        terms: Optional[Mapping[PlanarDiagram, Scalar]] = None,
        scale: Optional[float] = None,
    ):
        self.n = n
        self.domain = domain
        cleaned: Dict[PlanarDiagram, Scalar] = {}
        if terms:
            scale = max(scale or 0.0, domain.magnitude(terms.values()))
            for d, c in terms.items():
                if d.n != n:
                    raise StrandMismatchError(f"diagram on {d.n} strands inside a TL_{n} element")
                if not domain.is_zero(c, scale):
                    cleaned[d] = c
        self.terms = cleaned

    # ── Construction helpers ──────────────────────────────────────────────

    @classmethod
    def from_diagram(cls, d: PlanarDiagram, domain: CoeffDomain, coeff: Scalar = None) -> "TLElement":
        return cls(d.n, domain, {d: domain.one if coeff is None else coeff})

    @classmethod
    def zero(cls, n: int, domain: CoeffDomain) -> "TLElement":
        return cls(n, domain)

    # ── Queries ───────────────────────────────────────────────────────────

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: PlanarDiagram) -> Scalar:
        return self.terms.get(d, self.domain.zero)

    def sorted_terms(self) -> List[Tuple[PlanarDiagram, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def to_scalar(self) -> Scalar:
        """The coefficient of the identity diagram; meaningful for n = 0."""
        return self.coefficient(identity_diagram(self.n))

    # ── Linear structure ──────────────────────────────────────────────────

    def _check(self, other: "TLElement") -> None:
        if not isinstance(other, TLElement):
            raise TypeError(f"expected TLElement, got {type(other).__name__}")
        if other.n != self.n:
            raise StrandMismatchError(f"cannot combine TL_{self.n} and TL_{other.n} elements")
        if other.domain != self.domain:
            raise DomainMismatchError(
                f"domains differ: '{self.domain.descriptor}' vs '{other.domain.descriptor}'"
            )

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        scale = max(self.domain.magnitude(self.terms.values()), self.domain.magnitude(other.terms.values()))
        return TLElement(self.n, self.domain, terms, scale=scale)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, self.domain, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "TLElement":
        c = self.domain.convert(c)
        return TLElement(self.n, self.domain, {d: c * v for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        if other.n != self.n or other.domain != self.domain:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({self.domain.format(c)})·{d}" for d, c in self.sorted_terms())
        return f"TLElement(n={self.n}, {body or '0'})"


@dataclass(frozen=True)
class JonesWord:
    """prefactor · e_{i₁}⋯e_{i_k}."""

    prefactor: Scalar
    letters: Tuple[int, ...]

    def runs(self) -> List[Tuple[int, ...]]:
        """Split into maximal runs of consecutive descending letters."""
        runs: List[List[int]] = []
        for letter in self.letters:
            if runs and runs[-1][-1] - 1 == letter:
                runs[-1].append(letter)
            else:
                runs.append([letter])
        return [tuple(r) for r in runs]

    def is_reduced(self) -> bool:
        """Jones reduced form: descending runs with strictly increasing tops and bottoms."""
        runs = self.runs()
        tops = [r[0] for r in runs]
        bottoms = [r[-1] for r in runs]
        return all(a < b for a, b in zip(tops, tops[1:])) and all(
            a < b for a, b in zip(bottoms, bottoms[1:])
        )


# ── Distinguished elements ─────────────────────────────────────────────────


def identity(n: int, domain: CoeffDomain) -> TLElement:
    return TLElement.from_diagram(identity_diagram(n), domain)


def cup_cap_element(i: int, n: int, domain: CoeffDomain) -> TLElement:
    """U_i with coefficient 1."""
    return TLElement.from_diagram(cup_cap(i, n), domain)


def jones_projection(i: int, n: int, domain: CoeffDomain) -> TLElement:
    """e_i = λ⁻¹·U_i."""
    return TLElement.from_diagram(cup_cap(i, n), domain, domain.lam_pow(-1))


# ── Products ───────────────────────────────────────────────────────────────


def tl_multiply(a: TLElement, b: TLElement) -> TLElement:
    """Bilinear extension of diagram stacking; each closed loop contributes λ."""
    a._check(b)
    domain = a.domain
    acc: Dict[PlanarDiagram, Scalar] = {}
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            d, loops = diagram_compose(da, db)
            c = ca * cb
            if loops:
                c = c * domain.lam_pow(loops)
            acc[d] = acc[d] + c if d in acc else c
    return TLElement(a.n, domain, acc)


def tl_product(elements: Sequence[TLElement]) -> TLElement:
    result = elements[0]
    for x in elements[1:]:
        result = tl_multiply(result, x)
    return result


def tl_involution(x: TLElement) -> TLElement:
    """Vertical flip of each diagram with conjugated coefficients."""
    domain = x.domain
    return TLElement(x.n, domain, {flip(d): domain.conj(c) for d, c in x.terms.items()})


def embed(x: TLElement, m: int) -> TLElement:
    """Natural inclusion TL_n ⊂ TL_m (straight strands on the right)."""
    return TLElement(m, x.domain, {embed_right(d, m): c for d, c in x.terms.items()})


# ── Words ──────────────────────────────────────────────────────────────────


def _check_letters(letters: Iterable[int], n: int) -> Tuple[int, ...]:
    letters = tuple(int(i) for i in letters)
    for i in letters:
        if not 1 <= i <= n - 1:
            raise LetterRangeError(f"letter e{i} out of range for {n} strands (1..{n - 1})")
    return letters


@lru_cache(maxsize=1 << 14)
def word_diagram(letters: Tuple[int, ...], n: int) -> Tuple[PlanarDiagram, int]:
    """The diagram of U_{i₁}⋯U_{i_k} and the loops closed along the way."""
    d = identity_diagram(n)
    loops = 0
    for i in letters:
        d, new_loops = diagram_compose(d, cup_cap(i, n))
        loops += new_loops
    return d, loops


def word_to_element(w, n: int, domain: CoeffDomain) -> TLElement:
    """
    The element prefactor·e_{i₁}⋯e_{i_k} of TL_n; the empty word is the identity.

    Args:
        w: a JonesWord, or a plain sequence of letters (prefactor 1)
        n: strand count
        domain: coefficient domain

    Raises:
        LetterRangeError: a letter outside 1..n-1.
    """
    if isinstance(w, JonesWord):
        prefactor, letters = domain.convert(w.prefactor), w.letters
    else:
        prefactor, letters = domain.one, tuple(w)
    letters = _check_letters(letters, n)
    d, loops = word_diagram(letters, n)
    return TLElement.from_diagram(d, domain, prefactor * domain.lam_pow(loops - len(letters)))


def _reduced_words(n: int) -> Iterator[Tuple[int, ...]]:
    def extend(prev_top: int, prev_bottom: int, acc: Tuple[int, ...]):
        yield acc
        for top in range(prev_top + 1, n):
            for bottom in range(prev_bottom + 1, top + 1):
                run = tuple(range(top, bottom - 1, -1))
                yield from extend(top, bottom, acc + run)

    yield from extend(0, 0, ())


@lru_cache(maxsize=None)
def reduced_word_table(n: int) -> Dict[PlanarDiagram, Tuple[int, ...]]:
    """
    The diagram ↔ Jones-reduced-word bijection on n strands.

    Every reduced word multiplies out to a single loop-free diagram and the
    C_n reduced words hit every diagram exactly once.
    """
    table: Dict[PlanarDiagram, Tuple[int, ...]] = {}
    for letters in _reduced_words(n):
        d, loops = word_diagram(letters, n)
        if loops or d in table:
            raise VerificationError(f"reduced word {letters} is not a basis word on {n} strands")
        table[d] = letters
    if len(table) != catalan(n):
        raise VerificationError(f"found {len(table)} reduced words on {n} strands, expected C_{n}")
    logger.debug("Reduced-word table for n=%s built (%s words)", n, len(table))
    return table


def element_to_reduced_words(x: TLElement) -> List[JonesWord]:
    """
    Express x in the reduced-word basis: each diagram D with coefficient c
    becomes c·λ^{ℓ} · e_w with w the reduced word of D and ℓ its length.
    """
    table = reduced_word_table(x.n)
    domain = x.domain
    words = []
    for d, c in x.sorted_terms():
        letters = table[d]
        words.append(JonesWord(c * domain.lam_pow(len(letters)), letters))
    return words


def words_to_element(words: Sequence[JonesWord], n: int, domain: CoeffDomain) -> TLElement:
    result = TLElement.zero(n, domain)
    for w in words:
        result = result + word_to_element(w, n, domain)
    return result


def format_word(w: JonesWord, domain: CoeffDomain) -> str:
    body = " ".join(f"e{i}" for i in w.letters)
    coeff = domain.format(w.prefactor)
    if not body:
        return coeff
    if coeff == "1":
        return body
    if coeff == "-1":
        return f"-{body}"
    return f"{coeff} · {body}"


def format_normal_form(x: TLElement) -> str:
    """Human-readable reduced-word normal form, e.g. 'λ^-2 · e1'."""
    words = element_to_reduced_words(x)
    if not words:
        return "0"
    return " + ".join(format_word(w, x.domain) for w in words)


# ── Sampling ───────────────────────────────────────────────────────────────


def random_word(n: int, rng: np.random.Generator, max_length: int = 12) -> Tuple[int, ...]:
    if n < 2:
        return ()
    length = int(rng.integers(0, max_length + 1))
    return tuple(int(i) for i in rng.integers(1, n, size=length))


def random_element(
    n: int,
    domain: CoeffDomain,
    rng: np.random.Generator,
    num_terms: int = 3,
    max_length: int = 6,
) -> TLElement:
    """A random integer combination of random words, for property tests."""
    result = TLElement.zero(n, domain)
    for _ in range(num_terms):
        coeff = int(rng.integers(-3, 4)) or 1
        result = result + word_to_element(random_word(n, rng, max_length), n, domain).scale(coeff)
    return result


def basis_elements(n: int, domain: CoeffDomain) -> List[TLElement]:
    """The diagram basis of TL_n in lexicographic order."""
    return [TLElement.from_diagram(d, domain) for d in enumerate_diagrams(n)]


@dataclass
class IdentityCheck:
    """Both sides of an identity computed independently in the diagram basis."""

    case: str
    lhs: TLElement
    rhs: TLElement

    @property
    def difference(self) -> TLElement:
        return self.lhs - self.rhs

    @property
    def equal(self) -> bool:
        return self.difference.is_zero()

    @classmethod
    def of_scalars(cls, case: str, lhs: Scalar, rhs: Scalar, domain: CoeffDomain) -> "IdentityCheck":
        """A scalar identity, both sides held as multiples of the empty diagram."""
        empty = identity_diagram(0)
        return cls(
            case,
            TLElement.from_diagram(empty, domain, domain.convert(lhs)),
            TLElement.from_diagram(empty, domain, domain.convert(rhs)),
        )
