"""
Two independent multiplication paths on random Jones words: the product of
the generators e_i one by one, and the word read as a single stacked diagram.
Also round-trips every product through its reduced-word normal form.
"""
from typing import List

import numpy as np

from src.algebra.temperley_lieb import (
    IdentityCheck,
    element_to_reduced_words,
    identity,
    jones_projection,
    random_element,
    random_word,
    tl_involution,
    tl_multiply,
    tl_product,
    word_to_element,
    words_to_element,
)
from src.suites.base_suite import BaseSuite, SuiteTask

MAX_WORD_LENGTH = 12


class WordOracleSuite(BaseSuite):
    name = "word-oracle"
    description = "random words: generator-by-generator product = stacked diagram; normal form round trip; (xy)* = y*x*"
    default_max = 6

    def _checks(self, n: int, seed: int) -> List[IdentityCheck]:
        domain = self.domain
        rng = np.random.default_rng(seed)
        checks = []
        for k in range(self.params.samples):
            letters = random_word(n, rng, MAX_WORD_LENGTH)
            stepwise = tl_product([identity(n, domain)] + [jones_projection(i, n, domain) for i in letters])
            stacked = word_to_element(letters, n, domain)
            checks.append(IdentityCheck(f"n={n} word {list(letters)}", stepwise, stacked))
            round_trip = words_to_element(element_to_reduced_words(stacked), n, domain)
            checks.append(IdentityCheck(f"n={n} normal form #{k}", round_trip, stacked))
        for k in range(max(1, self.params.samples // 10)):
            x = random_element(n, domain, rng)
            y = random_element(n, domain, rng)
            checks.append(
                IdentityCheck(
                    f"n={n} involution #{k}",
                    tl_involution(tl_multiply(x, y)),
                    tl_multiply(tl_involution(y), tl_involution(x)),
                )
            )
        return checks

    def build_tasks(self) -> List[SuiteTask]:
        return [
            self.identity_task(k, f"n={n}", lambda n=n: self._checks(n, self.params.seed + n))
            for k, n in enumerate(range(2, self.bound + 1))
        ]
