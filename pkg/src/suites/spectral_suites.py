"""
Suites over the spectral *-algebra: star, coaction, R-relation round trips,
associativity of the product and traciality of the invariant state.
"""
from collections import Counter
from typing import List

from src.algebra.spectral import (
    SpectralAlgebra,
    verify_associativity,
    verify_coaction,
    verify_relation_round_trips,
    verify_star,
    verify_traciality,
)
from src.config import get_settings
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteTask

STAR_LEVEL = 2
COACTION_LEVEL = 2
ROUND_TRIP_TOTAL = 2
SHOWN_FAILURES = 5


class SpectralSuite(BaseSuite):
    name = "spectral"
    description = "star involution, coaction, R-relation round trips and associativity on generator triples of total level ≤ max"
    default_max = 6
    default_F = "I2"

    def _associativity(self, algebra: SpectralAlgebra, gens, level: int) -> List[CaseRecord]:
        left = [g for g in gens if sum(g.levels()) == level]
        checks = verify_associativity(algebra, self.bound, generators=gens, left=left)
        failures = [c.case for c in checks if not c.holds]
        return [
            CaseRecord(
                case=f"associativity, first factor at level {level}",
                passed=not failures,
                expected=f"{len(checks)} triples",
                got=f"{len(checks) - len(failures)} equal",
                detail=", ".join(failures[:SHOWN_FAILURES]),
            )
        ]

    def build_tasks(self) -> List[SuiteTask]:
        algebra = SpectralAlgebra(self.f_matrix(), max(self.bound, get_settings().tl_max_level))
        gens = algebra.generators_up_to(self.bound)
        tasks = [
            self.spectral_task(0, "star", lambda: verify_star(algebra, STAR_LEVEL)),
            self.spectral_task(1, "coaction", lambda: verify_coaction(algebra, COACTION_LEVEL)),
            self.spectral_task(2, "R-relations", lambda: verify_relation_round_trips(algebra, ROUND_TRIP_TOTAL)),
        ]
        levels = sorted(Counter(sum(g.levels()) for g in gens))
        for level in levels:
            tasks.append(
                SuiteTask(len(tasks), f"associativity level={level}",
                          lambda level=level: self._associativity(algebra, gens, level))
            )
        return tasks


class TracialitySuite(BaseSuite):
    name = "traciality"
    description = "h(ab) = h(ba) for all basis generator pairs of level ≤ max (F must match the index)"
    default_max = 3
    default_domain = "index=2"
    default_F = "I2"

    def build_tasks(self) -> List[SuiteTask]:
        F = self.f_matrix()
        F.require_subfactor()
        algebra = SpectralAlgebra(F, max(2 * self.bound, get_settings().tl_max_level))
        return [self.spectral_task(0, f"F={F.label}", lambda: verify_traciality(algebra, self.bound))]
