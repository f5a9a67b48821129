"""
Suites over the arrow coordinates: conjugate equations for the R and R*
insertions, their adjointness, associativity of the tensor product and the
quantum multiplicity of each level.
"""
from typing import List

from src.algebra.ocneanu import (
    adjointness_checks,
    conjugate_equation_checks,
    quantum_multiplicity,
    tensor_associativity_checks,
)
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteTask, record_from_identity


class ConjugateEquationsSuite(BaseSuite):
    name = "conjugate-equations"
    description = "R*R = β and both zig-zag identities of the R/R* insertions at every level ≤ max"
    default_max = 6

    def build_tasks(self) -> List[SuiteTask]:
        return [
            self.identity_task(k, f"level={top}", lambda top=top: conjugate_equation_checks(top, self.domain))
            for k, top in enumerate(range(2, self.bound + 1))
        ]


class AdjointnessSuite(BaseSuite):
    name = "adjointness"
    description = "⟨insert_R ζ, ζ'⟩ = ⟨ζ, insert_R_star ζ'⟩, tensor associativity and m(level) = dim, totals ≤ max"
    default_max = 4

    def _records(self, total: int) -> List[CaseRecord]:
        domain = self.domain
        records = [record_from_identity(c) for c in adjointness_checks(total, domain)]
        records += [record_from_identity(c) for c in tensor_associativity_checks(total, domain)]
        if domain.is_exact:
            report = quantum_multiplicity(total, domain)
            expected = domain.convert(report.dimension ** 2)
            records.append(
                CaseRecord(
                    f"level={total} m^2 = dim^2",
                    report.conjugation_unitary and domain.eq(report.m_squared, expected),
                    expected=domain.format(expected),
                    got=domain.format(report.m_squared),
                )
            )
        return records

    def build_tasks(self) -> List[SuiteTask]:
        return [
            SuiteTask(k, f"total={total}", lambda total=total: self._records(total))
            for k, total in enumerate(range(self.bound + 1))
        ]
