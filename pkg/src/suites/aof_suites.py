"""
Suites over the concrete Hilbert-space side: quasitensor axioms of the arrow
functor, invariant-vector dimensions, and the concrete TL representation on
H^{⊗r}.
"""
import itertools
from typing import List

import numpy as np

from src.algebra.aof import (
    ConcreteOperator,
    FMatrix,
    arrays_equal,
    concrete_e,
    concrete_representation,
    conjugate_equation,
    eye,
    invariant_vectors,
    j_map,
    mu_parameter,
    verify_concrete_naturality,
    verify_planar_isometry,
    verify_quasitensor,
    verify_sandwich,
    zeros,
)
from src.algebra.diagrams import catalan
from src.algebra.temperley_lieb import random_element, tl_involution, tl_multiply
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteTask, record_from_identity

CONCRETE_MAX_STRANDS = 5
ISOMETRY_MAX_LEVEL = 6


class QuasitensorSuite(BaseSuite):
    name = "quasitensor"
    description = "unit, isometry, exchange and naturality axioms of the arrow functor at total level ≤ max"
    default_max = 3

    def _sandwich(self, F: FMatrix) -> List[CaseRecord]:
        domain = self.domain
        return [
            CaseRecord(
                f"dim ≤ m ≤ d^r at r={row.level}", row.holds,
                expected=f"{row.dimension}^2 ≤ m^2 ≤ {domain.format(row.d_power)}^2",
                got=domain.format(row.multiplicity_squared),
            )
            for row in verify_sandwich(self.bound, F)
        ]

    def build_tasks(self) -> List[SuiteTask]:
        F = None
        if self.params.F:
            F = self.f_matrix()
            F.require_subfactor()
        tasks = [self.identity_task(0, "axioms", lambda: verify_quasitensor(self.bound, self.domain, F))]
        if F is not None:
            tasks.append(SuiteTask(1, "sandwich", lambda: self._sandwich(F)))
        return tasks


class ConcreteRepSuite(BaseSuite):
    name = "concrete-rep"
    description = "invariant dimensions C_(r/2), conjugate equation, j involution and the TL representation on H^r"
    default_max = 8
    default_domain = "index=4"
    default_F = "I2"

    def _dimensions(self, F: FMatrix) -> List[CaseRecord]:
        records = []
        for r in range(0, self.bound + 1, 2):
            dim = invariant_vectors(r, F).dimension
            records.append(CaseRecord(f"invariant dimension r={r}", dim == catalan(r // 2),
                                      expected=str(catalan(r // 2)), got=str(dim)))
        return records

    def _structure(self, F: FMatrix) -> List[CaseRecord]:
        domain = self.domain
        records = []
        sigma_one = ConcreteOperator(1, 1, eye(F.n, domain) * domain.convert(F.sigma), F)
        records.append(CaseRecord("(R*⊗1)(1⊗R) = σ", conjugate_equation(F).equals(sigma_one)))
        for r in range(1, 4):
            ok = True
            for pos in range(F.n ** r):
                psi = zeros((F.n ** r,), domain)
                psi[pos] = domain.one
                target = psi * domain.convert(F.sigma ** r)
                ok = ok and arrays_equal(j_map(j_map(psi, r, F), r, F), target, domain)
            records.append(CaseRecord(f"j∘j = σ^r at r={r}", ok))
        if F.n == 2:
            mu = mu_parameter(F)
            d = domain.numeric(F.d).real
            records.append(CaseRecord("|μ + 1/μ| = d", bool(np.isclose(abs(mu + 1 / mu), d)),
                                      expected=repr(d), got=repr(abs(mu + 1 / mu))))
        return records

    def _representation(self, F: FMatrix, r: int) -> List[CaseRecord]:
        domain = self.domain
        rng = np.random.default_rng(self.params.seed + r)
        records = []
        e = {i: concrete_e(i, r, F) for i in range(1, r)}
        lam2 = domain.lam_pow(-2)
        for i, j in itertools.product(e, repeat=2):
            if i == j:
                records.append(CaseRecord(f"r={r} (e{i}^H)^2", (e[i] @ e[i]).equals(e[i])))
            elif abs(i - j) == 1:
                records.append(CaseRecord(f"r={r} e{i}e{j}e{i} (H)", (e[i] @ e[j] @ e[i]).equals(e[i].scale(lam2))))
            elif i < j:
                records.append(CaseRecord(f"r={r} e{i}e{j} = e{j}e{i} (H)", (e[i] @ e[j]).equals(e[j] @ e[i])))
        for k in range(max(1, self.params.samples // 40)):
            x, y = random_element(r, domain, rng), random_element(r, domain, rng)
            rx, ry = concrete_representation(x, F), concrete_representation(y, F)
            records.append(CaseRecord(f"r={r} π(xy) = π(x)π(y) #{k}",
                                      concrete_representation(tl_multiply(x, y), F).equals(rx @ ry)))
            records.append(CaseRecord(f"r={r} π(x*) = π(x)* #{k}",
                                      concrete_representation(tl_involution(x), F).equals(rx.adjoint())))
        return records

    def _isometry(self, F: FMatrix) -> List[CaseRecord]:
        top = min(self.bound, ISOMETRY_MAX_LEVEL)
        checks = [c for r in range(2, top + 1, 2) for c in verify_planar_isometry(r, F)]
        checks.extend(verify_concrete_naturality(top, F))
        return [record_from_identity(c) for c in checks]

    def build_tasks(self) -> List[SuiteTask]:
        F = self.f_matrix()
        tasks = [
            SuiteTask(0, "invariant dimensions", lambda: self._dimensions(F)),
            SuiteTask(1, "structure maps", lambda: self._structure(F)),
        ]
        if F.loop_matches:
            for r in range(1, min(self.bound, CONCRETE_MAX_STRANDS) + 1):
                tasks.append(SuiteTask(len(tasks), f"representation r={r}", lambda r=r: self._representation(F, r)))
        if F.subfactor_ok and self.bound >= 2:
            tasks.append(SuiteTask(len(tasks), "planar isometry and naturality", lambda: self._isometry(F)))
        return tasks
