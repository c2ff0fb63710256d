"""
Experiment constants and factory functions.

Centralizes numeric settings so the library, the graphs and the CLI agree on
windows, thresholds and output formatting.
"""

import numpy as np

from config.settings import OUT_DIR, THREADS

DEFAULT_SEED = 20240611
DEFAULT_STEPS = 5000
DEFAULT_WALKS = 2000
DEFAULT_CONE_DEPTH = 2
DEFAULT_EXPLORE_DEPTH = 3
DEFAULT_STRIP_KMAX = 8

STABLE_WINDOW_FRACTION = 0.25  # bnd estimator: prefix stable across the final quarter of checkpoints
UNIFORM_TAIL_FRACTION = 0.125  # checkpoints are dense over the final eighth
INCONCLUSIVE_ABORT_FRACTION = 0.10  # ensemble aborts above this share of unstable paths
S_MIN_INDICES = 3  # an S-subsequence shorter than this is reported empty

METRIC_SERIES_LEVELS = 52  # levels summed past the apex; the remainder is below float resolution
RADIUS_TOLERANCE = 1e-12  # slack when rounding -ln(delta) to an integer radius
NONDEGENERACY_HORIZON = 4
HARMONIC_TOLERANCE = 1e-15
HARMONIC_MAX_ITER = 10_000

FLOAT_FORMAT = ".17g"  # CSV floats, locale independent
CODE_VERSION = "0.1.0"


def make_rng(master_seed: int, walk_index: int) -> np.random.Generator:
    """Counter-based generator for one walk of an ensemble.

    Args:
        master_seed: Ensemble seed.
        walk_index: Position of the walk in the ensemble.

    Returns:
        A Philox-backed Generator whose stream depends only on the two keys.
    """
    seq = np.random.SeedSequence([master_seed & 0xFFFFFFFFFFFFFFFF, walk_index])
    return np.random.Generator(np.random.Philox(seq))


def format_float(x: float) -> str:
    return format(float(x), FLOAT_FORMAT)


def default_threads() -> int:
    return THREADS


def default_out_dir():
    return OUT_DIR
