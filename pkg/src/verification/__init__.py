"""Simulation and equivalence checking."""

from .equivalence import (
    EquivalenceReport,
    check_equivalence,
    simulate,
    simulate_frame,
    simulate_words,
)

__all__ = ['EquivalenceReport', 'check_equivalence', 'simulate', 'simulate_frame', 'simulate_words']
