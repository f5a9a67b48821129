"""
Planar Temperley–Lieb diagrams on n strands.

A diagram is a perfect matching of 2n boundary points stored as an
involution array: top points are 0..n-1 (left to right), bottom points are
n..2n-1.  Products stack the second diagram under the first; closed loops are
counted, never stored.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, List, Sequence, Tuple

from src.algebra.errors import LetterRangeError, PreconditionError, StrandMismatchError


@dataclass(frozen=True, order=True)
class PlanarDiagram:
    n: int
    pairing: Tuple[int, ...]

    def __post_init__(self):
        if len(self.pairing) != 2 * self.n:
            raise PreconditionError(
                f"pairing of length {len(self.pairing)} does not match n={self.n}"
            )
        if not is_planar_matching(self.pairing):
            raise PreconditionError(f"pairing {self.pairing} is not a noncrossing perfect matching")

    def __str__(self) -> str:
        return f"D{self.n}{list(self.pairing)}"

    def through_strands(self) -> int:
        """Propagation number: strands joining top to bottom."""
        return sum(1 for p in range(self.n) if self.pairing[p] >= self.n)


def _circle_position(point: int, n: int) -> int:
    # top i sits at i, bottom i at 2n-1-i when walking around the boundary
    return point if point < n else 3 * n - 1 - point


def is_planar_matching(pairing: Sequence[int]) -> bool:
    """True iff `pairing` is an involution without fixed points whose chords do not cross."""
    size = len(pairing)
    if size % 2:
        return False
    n = size // 2
    for p, q in enumerate(pairing):
        if not 0 <= q < size or q == p or pairing[q] != p:
            return False
    by_position = [0] * size
    for p in range(size):
        by_position[_circle_position(p, n)] = p
    stack: List[int] = []
    for pos in range(size):
        partner = _circle_position(pairing[by_position[pos]], n)
        if partner > pos:
            stack.append(pos)
        elif not stack or stack.pop() != partner:
            return False
    return True


# ── Distinguished diagrams ─────────────────────────────────────────────────


@lru_cache(maxsize=None)
def identity_diagram(n: int) -> PlanarDiagram:
    return PlanarDiagram(n, tuple([n + i for i in range(n)] + list(range(n))))


@lru_cache(maxsize=None)
def cup_cap(i: int, n: int) -> PlanarDiagram:
    """U_i: cap on top points i-1, i and cup on bottom points i-1, i (1-based i)."""
    if not 1 <= i <= n - 1:
        raise LetterRangeError(f"generator index {i} outside 1..{n - 1}")
    pairing = list(identity_diagram(n).pairing)
    a, b = i - 1, i
    pairing[a], pairing[b] = b, a
    pairing[n + a], pairing[n + b] = n + b, n + a
    return PlanarDiagram(n, tuple(pairing))


# ── Composition and closures ───────────────────────────────────────────────


@lru_cache(maxsize=1 << 16)
def diagram_compose(a: PlanarDiagram, b: PlanarDiagram) -> Tuple[PlanarDiagram, int]:
    """
    Stack `b` under `a`.

    Returns:
        (diagram, loop_count) with the closed loops removed.

    Raises:
        StrandMismatchError: different strand counts.
    """
    if a.n != b.n:
        raise StrandMismatchError(f"cannot compose diagrams on {a.n} and {b.n} strands")
    n = a.n
    result = [-1] * (2 * n)
    seen_middle = [False] * n

    for start in range(2 * n):
        if result[start] != -1:
            continue
        in_a = start < n
        point = start
        while True:
            if in_a:
                q = a.pairing[point]
                if q < n:
                    end = q
                    break
                middle = q - n
                seen_middle[middle] = True
                in_a, point = False, middle
            else:
                q = b.pairing[point]
                if q >= n:
                    end = q
                    break
                seen_middle[q] = True
                in_a, point = True, n + q
        result[start] = end
        result[end] = start

    loops = 0
    for i in range(n):
        if seen_middle[i]:
            continue
        loops += 1
        current = i
        while True:
            seen_middle[current] = True
            j = a.pairing[n + current] - n
            seen_middle[j] = True
            k = b.pairing[j]
            if k == i:
                break
            current = k
    return PlanarDiagram(n, tuple(result)), loops


@lru_cache(maxsize=1 << 14)
def trace_closure_loops(d: PlanarDiagram) -> int:
    """Number of loops after joining top i to bottom i for every i."""
    n = d.n
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = d.pairing[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return loops


@lru_cache(maxsize=1 << 14)
def close_last_strand(d: PlanarDiagram) -> Tuple[PlanarDiagram, int]:
    """
    Join top n-1 to bottom n-1 and drop both points.

    Returns:
        (diagram on n-1 strands, loops formed: 0 or 1)
    """
    n = d.n
    if n < 1:
        raise PreconditionError("cannot close a strand of the empty diagram")
    top, bottom = n - 1, 2 * n - 1
    if d.pairing[top] == bottom:
        loops = 1
    else:
        loops = 0

    def relabel(p: int) -> int:
        return p if p < n - 1 else p - 1

    result = [-1] * (2 * (n - 1))
    for p in range(2 * n):
        if p in (top, bottom):
            continue
        q = d.pairing[p]
        while q in (top, bottom):
            q = d.pairing[bottom if q == top else top]
        result[relabel(p)] = relabel(q)
    return PlanarDiagram(n - 1, tuple(result)), loops


def flip(d: PlanarDiagram) -> PlanarDiagram:
    """Vertical reflection (the diagrammatic adjoint)."""
    n = d.n

    def swap(p: int) -> int:
        return p + n if p < n else p - n

    result = [0] * (2 * n)
    for p in range(2 * n):
        result[swap(p)] = swap(d.pairing[p])
    return PlanarDiagram(n, tuple(result))


def embed_right(d: PlanarDiagram, m: int) -> PlanarDiagram:
    """Natural inclusion into m ≥ n strands: straight strands added on the right."""
    n = d.n
    if m < n:
        raise PreconditionError(f"cannot embed {n} strands into {m}")
    if m == n:
        return d

    def move(p: int) -> int:
        return p if p < n else m + (p - n)

    result = [0] * (2 * m)
    for p in range(2 * n):
        result[move(p)] = move(d.pairing[p])
    for k in range(n, m):
        result[k] = m + k
        result[m + k] = k
    return PlanarDiagram(m, tuple(result))


# ── Enumeration ────────────────────────────────────────────────────────────


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def noncrossing_pairings(points: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    """
    All noncrossing pairings of points laid out in order on a line.

    The first point pairs with a point leaving an even number of points
    between them, which keeps every chord from crossing it.
    """
    points = list(points)
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1:]
        for inner in noncrossing_pairings(inside):
            for outer in noncrossing_pairings(outside):
                yield [(first, points[k])] + inner + outer


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> Tuple[PlanarDiagram, ...]:
    """All C_n planar diagrams on n strands, in lexicographic order."""
    if n < 0:
        raise PreconditionError(f"strand count must be >= 0, got {n}")
    positions = list(range(2 * n))
    point_at = [p if p < n else None for p in range(2 * n)]
    for p in range(n, 2 * n):
        point_at[_circle_position(p, n)] = p
    diagrams = []
    for chords in noncrossing_pairings(positions):
        pairing = [0] * (2 * n)
        for x, y in chords:
            px, py = point_at[x], point_at[y]
            pairing[px], pairing[py] = py, px
        diagrams.append(PlanarDiagram(n, tuple(pairing)))
    return tuple(sorted(diagrams))
