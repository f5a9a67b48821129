"""
Defining relations of the Jones projections, checked as exact equalities of
diagram expansions: e_i² = e_i, far commutation, and e_ie_{i±1}e_i = λ⁻²e_i.
"""
from typing import List

from src.algebra.temperley_lieb import IdentityCheck, jones_projection, tl_product
from src.suites.base_suite import BaseSuite, SuiteTask


def relation_checks(n: int, domain) -> List[IdentityCheck]:
    e = {i: jones_projection(i, n, domain) for i in range(1, n)}
    checks = []
    for i in range(1, n):
        checks.append(IdentityCheck(f"n={n} e{i}^2", tl_product([e[i], e[i]]), e[i]))
    for i in range(1, n):
        for j in range(i + 2, n):
            checks.append(
                IdentityCheck(f"n={n} e{i}e{j}=e{j}e{i}", tl_product([e[i], e[j]]), tl_product([e[j], e[i]]))
            )
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if 1 <= j < n:
                checks.append(
                    IdentityCheck(
                        f"n={n} e{i}e{j}e{i}", tl_product([e[i], e[j], e[i]]),
                        e[i].scale(domain.lam_pow(-2)),
                    )
                )
    return checks


class RelationsSuite(BaseSuite):
    name = "relations"
    description = "e_i^2 = e_i, far commutation and e_i e_(i±1) e_i = λ^-2 e_i for n ≤ max"
    default_max = 8

    def build_tasks(self) -> List[SuiteTask]:
        return [
            self.identity_task(k, f"n={n}", lambda n=n: relation_checks(n, self.domain))
            for k, n in enumerate(range(2, self.bound + 1))
        ]
