"""
Level dimensions from two independent sources: the rank of the trace Gram
matrix at λ = 2cos(π/m), and the loop counts of the path model on A_{m-1}.
Runs in its own number-field domains; the requested domain is not used.
"""
import math
from typing import List

from src.algebra.diagrams import enumerate_diagrams
from src.algebra.graphs import a_series_for_lambda, path_dims
from src.algebra.markov import gram_matrix
from src.algebra.scalars import make_domain
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteTask

ROOT_OF_UNITY_ORDERS = (4, 5, 6, 7)
ENUMERATION_MAX = 10
GENERIC_RANK_MAX = 5


class DimsSuite(BaseSuite):
    name = "dims"
    description = "rank Gram(TL_n, λ = 2cos π/m) = (A^2n)_** on A_(m-1) for m = 4..7 and n ≤ max; C_n counts"
    default_max = 6

    def _cross_oracle(self, m: int) -> List[CaseRecord]:
        domain = make_domain(f"index=4cos2(pi/{m})")
        graph = a_series_for_lambda(m)
        dims = path_dims(graph, self.bound)
        records = []
        for n in range(1, self.bound + 1):
            report = gram_matrix(n, domain, max_strands=self.bound)
            records.append(
                CaseRecord(
                    f"m={m} n={n} rank = loops on {graph.name}",
                    report.rank == dims.values[n],
                    expected=str(dims.values[n]),
                    got=str(report.rank),
                )
            )
        records.append(CaseRecord(f"{graph.name} d_r ≤ β^r", dims.bound_holds()))
        return records

    def _generic(self) -> List[CaseRecord]:
        records = []
        for n in range(ENUMERATION_MAX + 1):
            expected = math.comb(2 * n, n) // (n + 1)
            count = len(enumerate_diagrams(n))
            records.append(CaseRecord(f"diagram count n={n}", count == expected, str(expected), str(count)))
        symbolic = make_domain("symbolic")
        for n in range(1, min(self.bound, GENERIC_RANK_MAX) + 1):
            report = gram_matrix(n, symbolic, max_strands=self.bound)
            expected = math.comb(2 * n, n) // (n + 1)
            records.append(CaseRecord(f"generic rank n={n}", report.rank == expected, str(expected), str(report.rank)))
        return records

    def build_tasks(self) -> List[SuiteTask]:
        tasks = [SuiteTask(0, "generic", self._generic)]
        for m in ROOT_OF_UNITY_ORDERS:
            tasks.append(SuiteTask(len(tasks), f"m={m}", lambda m=m: self._cross_oracle(m)))
        return tasks
