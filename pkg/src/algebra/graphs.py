"""
Principal-graph path models.

The level dimensions of a subfactor with principal graph Γ and distinguished
vertex * are loop counts d_r = (A^{2r})_{*,*}.  Everything here is integer
linear algebra over numpy object arrays, so counts never overflow.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import networkx as nx
import numpy as np
import pandas as pd

from src.algebra.errors import PreconditionError

logger = logging.getLogger(__name__)

MIN_GROWTH_LEVELS = 4


@dataclass(frozen=True, eq=False)
class PrincipalGraph:
    """Connected bipartite graph with a distinguished even vertex."""

    name: str
    adjacency: np.ndarray
    star: int = 0

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=object)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] == 0:
            raise PreconditionError(f"{self.name}: adjacency must be a non-empty square matrix")
        if any(int(x) < 0 for x in adj.flat):
            raise PreconditionError(f"{self.name}: adjacency entries must be non-negative integers")
        if not (adj == adj.T).all():
            raise PreconditionError(f"{self.name}: adjacency must be symmetric")
        if not 0 <= self.star < adj.shape[0]:
            raise PreconditionError(f"{self.name}: star vertex {self.star} out of range")
        object.__setattr__(self, "adjacency", adj)
        g = self.to_networkx()
        if not nx.is_connected(g):
            raise PreconditionError(f"{self.name}: principal graph must be connected")
        if not nx.is_bipartite(g):
            raise PreconditionError(f"{self.name}: principal graph must be bipartite")

    @property
    def size(self) -> int:
        return self.adjacency.shape[0]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.size))
        for i in range(self.size):
            for j in range(i, self.size):
                if self.adjacency[i, j]:
                    g.add_edge(i, j, weight=int(self.adjacency[i, j]))
        return g

    def even_vertices(self) -> List[int]:
        """Vertices at even distance from *."""
        dist = nx.single_source_shortest_path_length(self.to_networkx(), self.star)
        return sorted(v for v, k in dist.items() if k % 2 == 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrincipalGraph):
            return NotImplemented
        return (
            self.star == other.star
            and self.adjacency.shape == other.adjacency.shape
            and bool((self.adjacency == other.adjacency).all())
        )

    __hash__ = None


def a_series(m: int) -> PrincipalGraph:
    """The path graph A_m with * at one end; principal graph of index 4cos²(π/(m+1))."""
    if m < 2:
        raise PreconditionError(f"A_m needs m >= 2, got {m}")
    adj = np.zeros((m, m), dtype=object)
    for i in range(m - 1):
        adj[i, i + 1] = adj[i + 1, i] = 1
    return PrincipalGraph(name=f"A{m}", adjacency=adj, star=0)


def graph_from_name(name: str) -> PrincipalGraph:
    """Built-in lookup: ``A5`` or ``A_5``."""
    label = name.strip().upper().replace("_", "")
    if not label.startswith("A") or not label[1:].isdigit():
        raise PreconditionError(f"unknown built-in graph {name!r}; only the A series ships")
    return a_series(int(label[1:]))


def graph_from_json(data: Union[str, Mapping[str, Any]]) -> PrincipalGraph:
    """Read ``{"adjacency": [[...]], "star": 0, "name": "..."}`` (string or parsed)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise PreconditionError(f"graph JSON is not valid JSON: {e}") from e
    if "adjacency" not in data:
        raise PreconditionError("graph JSON needs an 'adjacency' field")
    try:
        adj = np.array([[int(x) for x in row] for row in data["adjacency"]], dtype=object)
    except (TypeError, ValueError) as e:
        raise PreconditionError(f"adjacency must be a list of integer rows: {e}") from e
    return PrincipalGraph(name=str(data.get("name", "custom")), adjacency=adj, star=int(data.get("star", 0)))


def graph_to_json(g: PrincipalGraph) -> Dict[str, Any]:
    return {
        "name": g.name,
        "adjacency": [[int(x) for x in row] for row in g.adjacency],
        "star": g.star,
    }


def perron_frobenius(g: PrincipalGraph) -> float:
    eigenvalues = np.linalg.eigvalsh(g.adjacency.astype(float))
    return float(eigenvalues[-1])


def index_of(g: PrincipalGraph) -> float:
    return perron_frobenius(g) ** 2


@dataclass
class DimSequence:
    graph: str
    values: List[int]
    beta: float

    @property
    def levels(self) -> int:
        return len(self.values) - 1

    def bound_holds(self) -> bool:
        """d_r ≤ β^r at every computed level (with float slack on β^r)."""
        return all(d <= self.beta ** r * (1 + 1e-9) for r, d in enumerate(self.values))


def _star_paths(g: PrincipalGraph, length: int) -> List[np.ndarray]:
    """[A^k e_*] for k = 0..length, as exact integer vectors."""
    v = np.zeros(g.size, dtype=object)
    v[g.star] = 1
    out = [v]
    for _ in range(length):
        v = g.adjacency.dot(v)
        out.append(v)
    return out


def path_dims(g: PrincipalGraph, R: int) -> DimSequence:
    """
    d_r = (A^{2r})_{*,*} for r = 0..R.

    A is symmetric, so (A^{2r})_{*,*} = ‖A^r e_*‖² and only R matrix-vector
    products are needed.
    """
    if R < 0:
        raise PreconditionError(f"R must be >= 0, got {R}")
    paths = _star_paths(g, R)
    values = [int(v.dot(v)) for v in paths]
    seq = DimSequence(graph=g.name, values=values, beta=index_of(g))
    logger.debug("path dims of %s up to %s: %s", g.name, R, values)
    return seq


@dataclass
class GrowthReport:
    estimate: float
    root_estimate: float
    table: pd.DataFrame


def growth_rate(d: DimSequence) -> GrowthReport:
    """
    Convergence table of d_r^{1/r} and d_r/d_{r-1}.

    ``estimate`` is the last consecutive ratio, ``root_estimate`` the last r-th root.
    Both converge to the index.
    """
    if d.levels < MIN_GROWTH_LEVELS:
        raise PreconditionError(f"growth rate needs R >= {MIN_GROWTH_LEVELS}, got {d.levels}")
    rows = []
    for r in range(1, d.levels + 1):
        dr, prev = d.values[r], d.values[r - 1]
        rows.append({
            "r": r,
            "d_r": dr,
            "root": math.exp(math.log(dr) / r) if dr > 0 else 0.0,
            "ratio": dr / prev if prev > 0 else float("nan"),
        })
    table = pd.DataFrame(rows, columns=["r", "d_r", "root", "ratio"])
    last = table.iloc[-1]
    return GrowthReport(estimate=float(last["ratio"]), root_estimate=float(last["root"]), table=table)


@dataclass
class EmbedabilityReport:
    n: int
    first_violation: Optional[int]
    table: pd.DataFrame

    @property
    def obstructed(self) -> bool:
        return self.first_violation is not None

    @property
    def verdict(self) -> str:
        if self.first_violation is None:
            return f"no obstruction up to R={len(self.table) - 1}"
        return f"d_{self.first_violation} > {self.n}^{self.first_violation}: not embedable into dimension {self.n}"


def embedability_check(d: DimSequence, n: int) -> EmbedabilityReport:
    """Least r with d_r > n^r, compared in exact integers."""
    if n < 1:
        raise PreconditionError(f"candidate Hilbert dimension must be >= 1, got {n}")
    rows = [{"r": r, "d_r": dr, "n^r": n ** r, "exceeds": dr > n ** r} for r, dr in enumerate(d.values)]
    table = pd.DataFrame(rows, columns=["r", "d_r", "n^r", "exceeds"])
    violations = table.loc[table["exceeds"], "r"]
    first = int(violations.iloc[0]) if len(violations) else None
    report = EmbedabilityReport(n=n, first_violation=first, table=table)
    logger.info("Embedability of %s into dimension %s: %s", d.graph, n, report.verdict)
    return report


def bratteli_graph(g: PrincipalGraph, R: int) -> nx.DiGraph:
    """Layered path model: node (k, v) carries the number of length-k paths * → v."""
    if R < 0:
        raise PreconditionError(f"R must be >= 0, got {R}")
    paths = _star_paths(g, R)
    diagram = nx.DiGraph()
    for k, counts in enumerate(paths):
        for v in range(g.size):
            if counts[v]:
                diagram.add_node((k, v), floor=k, vertex=v, count=int(counts[v]))
    for k in range(R):
        for v in range(g.size):
            if not paths[k][v]:
                continue
            for w in range(g.size):
                if g.adjacency[v, w] and paths[k + 1][w]:
                    diagram.add_edge((k, v), (k + 1, w), multiplicity=int(g.adjacency[v, w]))
    return diagram


def bratteli_export(g: PrincipalGraph, R: int) -> str:
    """DOT text of the path model, one ``rank=same`` subgraph per floor."""
    diagram = bratteli_graph(g, R)
    lines = [f'digraph "{g.name}" {{', "  rankdir=TB;"]
    for k in range(R + 1):
        floor = sorted(n for n, data in diagram.nodes(data=True) if data["floor"] == k)
        lines.append(f"  subgraph floor_{k} {{")
        lines.append("    rank=same;")
        for node in floor:
            data = diagram.nodes[node]
            lines.append(f'    "{k}_{data["vertex"]}" [label="{data["vertex"]} ({data["count"]})"];')
        lines.append("  }")
    for (k, v), (_, w), data in sorted(diagram.edges(data=True)):
        label = f' [label="{data["multiplicity"]}"]' if data["multiplicity"] > 1 else ""
        lines.append(f'  "{k}_{v}" -> "{k + 1}_{w}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dims_table(g: PrincipalGraph, R: int) -> pd.DataFrame:
    """One row per level: r, d_r, β^r and whether d_r ≤ β^r."""
    seq = path_dims(g, R)
    rows = [
        {"r": r, "d_r": dr, "beta^r": seq.beta ** r, "bound_ok": dr <= seq.beta ** r * (1 + 1e-9)}
        for r, dr in enumerate(seq.values)
    ]
    return pd.DataFrame(rows, columns=["r", "d_r", "beta^r", "bound_ok"])


def a_series_for_lambda(m: int) -> PrincipalGraph:
    """A_{m-1}: the principal graph at λ = 2cos(π/m)."""
    return a_series(m - 1)


def dims_for_graphs(graphs: Sequence[PrincipalGraph], R: int) -> Dict[str, DimSequence]:
    return {g.name: path_dims(g, R) for g in graphs}
