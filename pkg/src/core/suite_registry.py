"""
Central registry mapping suite names to their suite classes.

Used by the engine, by `tl verify --list` and by the API schemas.
"""
from typing import Dict, List, Optional, Type

from src.suites.aof_suites import ConcreteRepSuite, QuasitensorSuite
from src.suites.arrow_suites import AdjointnessSuite, ConjugateEquationsSuite
from src.suites.base_suite import BaseSuite
from src.suites.dims_suite import DimsSuite
from src.suites.jones_word_suites import FProjectionSuite, PExchangeSuite, RunMergeSuite
from src.suites.markov_suite import MarkovSuite
from src.suites.relations_suite import RelationsSuite
from src.suites.spectral_suites import SpectralSuite, TracialitySuite
from src.suites.word_oracle_suite import WordOracleSuite


# ── Suite name → Suite class ───────────────────────────────────────────────

SUITE_MAP: Dict[str, Type[BaseSuite]] = {
    suite.name: suite
    for suite in (
        RelationsSuite,
        WordOracleSuite,
        MarkovSuite,
        RunMergeSuite,
        PExchangeSuite,
        FProjectionSuite,
        ConjugateEquationsSuite,
        AdjointnessSuite,
        DimsSuite,
        QuasitensorSuite,
        SpectralSuite,
        TracialitySuite,
        ConcreteRepSuite,
    )
}


# ── Factory helpers ────────────────────────────────────────────────────────

def get_suite(name: str) -> Optional[Type[BaseSuite]]:
    """
    Get the suite class registered under a name.

    Args:
        name: suite name (e.g. 'p-exchange', 'relations')

    Returns:
        The suite class, or None if nothing is registered under that name.
    """
    return SUITE_MAP.get(name)


def list_suites() -> List[Dict[str, object]]:
    """Name, description and default bound of every registered suite."""
    return [
        {"name": name, "description": cls.description, "default_max": cls.default_max}
        for name, cls in SUITE_MAP.items()
    ]
