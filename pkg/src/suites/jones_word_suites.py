"""
Suites over the distinguished Jones words: the run-merge rule, the p-word
exchange identity and the Jones projections f_{r-1}.
"""
from collections import defaultdict
from typing import List

from src.algebra.jones_words import (
    p_exchange_cases,
    run_merge_cases,
    run_pair_identity,
    verify_f_projection,
    verify_p_exchange,
)
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteTask


class RunMergeSuite(BaseSuite):
    name = "run-merge"
    description = "(e_r..e_j)(e_s..e_p) = λ^-2 (e_r..e_p)(e_s..e_(j+2)) for every admissible case with s ≤ max"
    default_max = 8

    def build_tasks(self) -> List[SuiteTask]:
        by_s = defaultdict(list)
        for run1, run2, n in run_merge_cases(self.bound):
            by_s[run2[0]].append((run1, run2, n))
        return [
            self.identity_task(
                k, f"s={s}",
                lambda cases=cases: [run_pair_identity(a, b, n, self.domain) for a, b, n in cases],
            )
            for k, (s, cases) in enumerate(sorted(by_s.items()))
        ]


class PExchangeSuite(BaseSuite):
    name = "p-exchange"
    description = "p_(r,2) p_(r+2,s) = p_(r,s) p^(2s)_(r-s,2) on r+s+2 strands for 0 ≤ s ≤ r ≤ max"
    default_max = 5

    def build_tasks(self) -> List[SuiteTask]:
        return [
            self.identity_task(k, f"r={r},s={s}", lambda r=r, s=s: [verify_p_exchange(r, s, self.domain)])
            for k, (r, s) in enumerate(p_exchange_cases(self.bound))
        ]


class FProjectionSuite(BaseSuite):
    name = "f-projection"
    description = "f_(r-1) is a self-adjoint idempotent with trace λ^-2r and equals λ^-r p_(r,r), r ≤ max"
    default_max = 4

    def _records(self, r: int) -> List[CaseRecord]:
        report = verify_f_projection(r, self.domain)
        trace = self.domain.format(report.trace)
        expected_trace = self.domain.format(self.domain.lam_pow(-2 * r))
        return [
            CaseRecord(f"r={r} idempotent", report.idempotent),
            CaseRecord(f"r={r} self-adjoint", report.self_adjoint),
            CaseRecord(f"r={r} trace", report.trace_ok, expected=expected_trace, got=trace),
            CaseRecord(f"r={r} equals λ^-r p_(r,r)", report.matches_p),
        ]

    def build_tasks(self) -> List[SuiteTask]:
        return [
            SuiteTask(k, f"r={r}", lambda r=r: self._records(r))
            for k, r in enumerate(range(self.bound + 1))
        ]
