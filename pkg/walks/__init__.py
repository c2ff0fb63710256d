"""
Random μ-walks: measures, paths, ends, cone measures and strips.
"""

from walks.measure import Measure, Nondegeneracy, check_nondegenerate, make_measure, reflect, uniform_symmetric
from walks.paths import WalkPath, boundary_point, detect_S_subsequence, drift, sample_path, transition_counts
from walks.cones import (
    ConeMeasure,
    dirac_convergence_profile,
    empirical_cone_measure,
    run_ensemble,
    stationarity_residual,
)
from walks.harmonic import harmonic_cone_measure, hitting_probabilities
from walks.strips import StripCounts, strip_count, seminorm_comparison
