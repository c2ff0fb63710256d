"""
Self-test suites, one callable per oracle or invariant family.

Every suite is a plain function (scale, seed) -> SuiteResult with a
one-line docstring; the self-test graph runs them in list order.
"""

from suites.base import FULL, REDUCED, Scale, SuiteResult
from suites.algebra_suites import periodic_laws, word_oracle
from suites.group_suites import equivariance, lyndon_axioms, seminorm
from suites.boundary_suites import dbar_axioms, ultrametric
from suites.walk_suites import (
    dirac_convergence,
    drift_rate,
    harmonic_measure,
    s_subsequence_rate,
    stationarity,
    transition_law,
    type_concentration,
)
from suites.strip_suites import axis_strip, strip_growth

# All suites in execution order
all_suites = [
    # Word algebra
    word_oracle,
    periodic_laws,
    # Group tree
    lyndon_axioms,
    equivariance,
    seminorm,
    # Boundary
    ultrametric,
    dbar_axioms,
    # Walks
    drift_rate,
    harmonic_measure,
    stationarity,
    transition_law,
    type_concentration,
    s_subsequence_rate,
    dirac_convergence,
    # Strips
    axis_strip,
    strip_growth,
]

# Subsets for quick runs
algebra_suites = [word_oracle, periodic_laws, lyndon_axioms, equivariance, seminorm]
boundary_suites = [ultrametric, dbar_axioms]
walk_suites = [drift_rate, harmonic_measure, stationarity, transition_law, type_concentration, s_subsequence_rate, dirac_convergence]
strip_suites = [axis_strip, strip_growth]

suites_by_name = {fn.__name__: fn for fn in all_suites}
