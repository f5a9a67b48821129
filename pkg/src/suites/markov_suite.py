"""
Metric structure of TL_n under the Markov trace.

Per level: the trace property, tr∘E = tr and E(1) = 1, the Markov property
E(x e_{n-1} y) = λ⁻²xy, the relation e_n x e_n = E(x)e_n, and
⟨S*, T*⟩ = ⟨T, S⟩.  Up to FULL_BASIS_MAX_STRANDS every check runs over the
whole diagram basis (all pairs where two elements are involved); above it
the pair checks fall back to seeded random elements.
"""
from typing import Iterator, List, Tuple

import numpy as np

from src.algebra.markov import cond_expectation, inner_product, markov_trace, verify_markov_relation
from src.algebra.temperley_lieb import (
    IdentityCheck,
    TLElement,
    basis_elements,
    embed,
    identity,
    jones_projection,
    random_element,
    tl_involution,
    tl_product,
)
from src.suites.base_suite import BaseSuite, SuiteTask

FULL_BASIS_MAX_STRANDS = 6


class MarkovSuite(BaseSuite):
    name = "markov"
    description = "tr(xy) = tr(yx), tr∘E = tr, Markov property and star antiunitarity for n ≤ max"
    default_max = 6

    def _elements(self, n: int, rng) -> List[Tuple[str, TLElement]]:
        if n <= FULL_BASIS_MAX_STRANDS:
            return [(f"D#{k}", b) for k, b in enumerate(basis_elements(n, self.domain))]
        count = max(1, self.params.samples // 20)
        return [(f"x#{k}", random_element(n, self.domain, rng)) for k in range(count)]

    def _pairs(self, n: int, rng) -> Iterator[Tuple[str, TLElement, TLElement]]:
        if n <= FULL_BASIS_MAX_STRANDS:
            elements = self._elements(n, rng)
            for a, x in elements:
                for b, y in elements:
                    yield f"{a},{b}", x, y
            return
        for k in range(max(1, self.params.samples // 20)):
            yield f"#{k}", random_element(n, self.domain, rng), random_element(n, self.domain, rng)

    def _checks(self, n: int) -> List[IdentityCheck]:
        domain = self.domain
        rng = np.random.default_rng(self.params.seed + n)
        checks: List[IdentityCheck] = []
        for label, x, y in self._pairs(n, rng):
            checks.append(
                IdentityCheck.of_scalars(
                    f"n={n} tr(xy)=tr(yx) {label}",
                    markov_trace(tl_product([x, y])), markov_trace(tl_product([y, x])), domain,
                )
            )
        basis = basis_elements(n, domain)
        if n >= 2:
            checks.append(IdentityCheck(f"n={n} E(1)=1", cond_expectation(identity(n, domain)), identity(n - 1, domain)))
            for k, b in enumerate(basis):
                checks.append(
                    IdentityCheck.of_scalars(
                        f"n={n} tr(E(D#{k}))=tr(D#{k})", markov_trace(cond_expectation(b)), markov_trace(b), domain,
                    )
                )
            e = jones_projection(n - 1, n, domain)
            for label, x, y in self._pairs(n - 1, rng):
                lhs = cond_expectation(tl_product([embed(x, n), e, embed(y, n)]))
                rhs = tl_product([x, y]).scale(domain.lam_pow(-2))
                checks.append(IdentityCheck(f"n={n} E(x e{n - 1} y) {label}", lhs, rhs))
        for label, x in self._elements(n, rng):
            _, difference = verify_markov_relation(x)
            checks.append(
                IdentityCheck(f"n={n} e{n} x e{n} = E(x) e{n} {label}", difference, TLElement.zero(n + 1, domain))
            )
        stars = [tl_involution(b) for b in basis]
        for i, (s, s_star) in enumerate(zip(basis, stars)):
            for j, (t, t_star) in enumerate(zip(basis, stars)):
                checks.append(
                    IdentityCheck.of_scalars(
                        f"n={n} <D#{i}*,D#{j}*>=<D#{j},D#{i}>",
                        inner_product(s_star, t_star), inner_product(t, s), domain,
                    )
                )
        return checks

    def build_tasks(self) -> List[SuiteTask]:
        return [
            self.identity_task(k, f"n={n}", lambda n=n: self._checks(n))
            for k, n in enumerate(range(1, self.bound + 1))
        ]
