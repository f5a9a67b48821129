"""
JSON formats for TL elements, spectral elements, graphs and Gram reports.

Scalars travel as exact strings in λ (e.g. "λ^-2", "2*λ + 1"); plain JSON
numbers are accepted on input.  Multi-indices are 1-based on the wire and
0-based in memory.
"""
from collections import defaultdict
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.algebra.diagrams import PlanarDiagram
from src.algebra.errors import PreconditionError
from src.algebra.markov import GramReport
from src.algebra.scalars import CoeffDomain, Scalar
from src.algebra.spectral import SpectralAlgebra, SpectralElement
from src.algebra.temperley_lieb import (
    JonesWord,
    TLElement,
    element_to_reduced_words,
    reduced_word_table,
    word_to_element,
)

ScalarText = Union[str, int, float]


def parse_scalar(value: ScalarText, domain: CoeffDomain) -> Scalar:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return domain.convert(value)
    return domain.parse(str(value))


# ── TL elements ────────────────────────────────────────────────────────────


class WordTerm(BaseModel):
    """
    One term of a TL element.

    ``word`` is read as coeff·e_{i₁}⋯e_{i_k}.  When only ``diagram`` (a pairing
    array over 2n points) is given, coeff multiplies that diagram directly.
    On output both are present and ``word`` is authoritative.
    """
    coeff: ScalarText = "1"
    word: Optional[List[int]] = None
    diagram: Optional[List[int]] = None

    @model_validator(mode="after")
    def _needs_word_or_diagram(self) -> "WordTerm":
        if self.word is None and self.diagram is None:
            raise ValueError("each term needs a 'word' or a 'diagram'")
        return self


class TLElementModel(BaseModel):
    n: int = Field(ge=0)
    terms: List[WordTerm] = Field(default_factory=list)


def element_from_model(model: TLElementModel, domain: CoeffDomain) -> TLElement:
    result = TLElement.zero(model.n, domain)
    for term in model.terms:
        coeff = parse_scalar(term.coeff, domain)
        if term.word is not None:
            result = result + word_to_element(JonesWord(coeff, tuple(term.word)), model.n, domain)
        else:
            d = PlanarDiagram(model.n, tuple(term.diagram))
            result = result + TLElement.from_diagram(d, domain, coeff)
    return result


def element_to_model(x: TLElement) -> TLElementModel:
    table = {letters: d for d, letters in reduced_word_table(x.n).items()}
    terms = [
        WordTerm(
            coeff=x.domain.format(w.prefactor),
            word=list(w.letters),
            diagram=list(table[w.letters].pairing),
        )
        for w in element_to_reduced_words(x)
    ]
    return TLElementModel(n=x.n, terms=terms)


def parse_element(data: Union[str, Dict[str, Any]], domain: CoeffDomain) -> TLElement:
    model = TLElementModel.model_validate_json(data) if isinstance(data, str) else TLElementModel.model_validate(data)
    return element_from_model(model, domain)


# ── Spectral elements ──────────────────────────────────────────────────────


class IndexCoeff(BaseModel):
    idx: List[int]
    coeff: ScalarText = "1"


class SpectralTerm(BaseModel):
    level: int = Field(ge=0)
    tl: TLElementModel
    vec: List[IndexCoeff] = Field(default_factory=list)

    @model_validator(mode="after")
    def _levels_agree(self) -> "SpectralTerm":
        if self.tl.n != self.level:
            raise ValueError(f"tl element on {self.tl.n} strands at level {self.level}")
        for entry in self.vec:
            if len(entry.idx) != self.level:
                raise ValueError(f"multi-index {entry.idx} does not have length {self.level}")
        return self


class SpectralElementModel(BaseModel):
    terms: List[SpectralTerm] = Field(default_factory=list)


def spectral_from_model(model: SpectralElementModel, algebra: SpectralAlgebra) -> SpectralElement:
    domain = algebra.domain
    result = algebra.zero()
    for term in model.terms:
        value = element_from_model(term.tl, domain)
        vector = {}
        for entry in term.vec:
            if any(k < 1 for k in entry.idx):
                raise PreconditionError(f"multi-index {entry.idx} is 1-based; entries must be >= 1")
            index = tuple(k - 1 for k in entry.idx)
            coeff = parse_scalar(entry.coeff, domain)
            vector[index] = vector[index] + coeff if index in vector else coeff
        result = result + algebra.generator(value, vector)
    return result


def spectral_to_model(a: SpectralElement) -> SpectralElementModel:
    """One term per diagram D, carrying D̄ and the vector Σ c_K ψ_K."""
    domain = a.domain
    grouped: Dict[PlanarDiagram, List[IndexCoeff]] = defaultdict(list)
    for (d, index), c in a.sorted_terms():
        grouped[d].append(IndexCoeff(idx=[k + 1 for k in index], coeff=domain.format(c)))
    terms = [
        SpectralTerm(level=d.n, tl=element_to_model(TLElement.from_diagram(d, domain)), vec=vec)
        for d, vec in grouped.items()
    ]
    return SpectralElementModel(terms=terms)


def parse_spectral(data: Union[str, Dict[str, Any]], algebra: SpectralAlgebra) -> SpectralElement:
    if isinstance(data, str):
        model = SpectralElementModel.model_validate_json(data)
    else:
        model = SpectralElementModel.model_validate(data)
    return spectral_from_model(model, algebra)


# ── Graphs, matrices, reports ──────────────────────────────────────────────


class GraphModel(BaseModel):
    adjacency: List[List[int]]
    star: int = 0
    name: Optional[str] = None


class GramReportModel(BaseModel):
    n: int
    domain: str
    dimension: int
    rank: int
    positive: bool
    determinant: Optional[str] = None
    pivots: List[int]
    labels: List[List[int]]
    matrix: List[List[str]]


def gram_report_to_model(report: GramReport) -> GramReportModel:
    domain = report.domain
    return GramReportModel(
        n=report.n,
        domain=domain.descriptor,
        dimension=len(report.labels),
        rank=report.rank,
        positive=report.positive,
        determinant=None if report.determinant is None else domain.format(report.determinant),
        pivots=list(report.pivots),
        labels=[list(d.pairing) for d in report.labels],
        matrix=[[domain.format(x) for x in row] for row in report.matrix],
    )


def matrix_to_json(matrix: np.ndarray, domain: CoeffDomain) -> List[List[str]]:
    """2-D array of scalars as nested lists of scalar strings."""
    return [[domain.format(x) for x in row] for row in np.atleast_2d(matrix)]
