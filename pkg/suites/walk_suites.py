"""
Walk suites: drift, harmonic measure, stationarity, type concentration,
S-subsequences, Dirac convergence and the transition law.

Tolerances are three Monte-Carlo standard errors unless stated otherwise.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache

import numpy as np

from config.config import S_MIN_INDICES
from suites.base import Scale, SuiteResult, workspace
from walks.cones import MassBound, WalkOutcome, check_abort, run_ensemble, stationarity_residual, tabulate_cones
from walks.harmonic import harmonic_cone_measure
from walks.paths import sample_path, transition_counts

logger = logging.getLogger(__name__)

SIGMAS = 3.0
DRIFT_BAND = (0.48, 0.52)
EXACT_RESIDUAL = 1e-12
TYPE_N_SHARE = 0.95
S_SHARE = 0.99
DIRAC_MEDIAN = 0.9
PROFILE_TABLE_DEPTH = 6
TRANSITION_STEPS = 20_000


@lru_cache(maxsize=8)
def _ensemble(
    name: str, walks: int, steps: int, seed: int, profile: bool = False, s_evidence: bool = False
) -> tuple[WalkOutcome, ...]:
    ws = workspace(name)
    nu = harmonic_cone_measure(ws.group, ws.measure, PROFILE_TABLE_DEPTH) if profile else None
    return tuple(
        run_ensemble(ws.measure, walks, steps, seed, profile_measure=nu, profile_depth=1, s_evidence=s_evidence)
    )


def drift_rate(scale: Scale, seed: int) -> SuiteResult:
    """Mean |τ_N| / N of the uniform walk on F(a, b) lies in [0.48, 0.52]."""
    outcomes = _ensemble("free_ab", scale.drift_walks, scale.drift_steps, seed)
    mean = float(np.mean([o.drift for o in outcomes]))
    lo, hi = DRIFT_BAND
    ok = lo <= mean <= hi
    return SuiteResult(
        "drift", ok, len(outcomes), 0 if ok else 1, f"mean drift {mean:.4f} (expected 1/2)", {"drift": mean}
    )


def harmonic_measure(scale: Scale, seed: int) -> SuiteResult:
    """Depth-1 cones carry 1/4 and depth-2 cones 1/12 of the end distribution."""
    ws = workspace("free_ab")
    outcomes = _ensemble("free_ab", scale.drift_walks, scale.drift_steps, seed)
    check_abort(list(outcomes))
    nu = tabulate_cones([o.end for o in outcomes], 2, 1)
    exact = harmonic_cone_measure(ws.group, ws.measure, 2)
    bad = 0
    worst = 0.0
    for apex, p in exact.table.items():
        se = math.sqrt(p * (1 - p) / nu.samples)
        z = abs(nu.mass(apex) - p) / se
        worst = max(worst, z)
        if z > SIGMAS:
            bad += 1
    return SuiteResult(
        "harmonic_measure",
        bad == 0,
        len(exact.table),
        bad,
        f"largest deviation {worst:.2f} standard errors over {nu.samples} ends",
        {"worst_z": worst},
    )


def stationarity(scale: Scale, seed: int) -> SuiteResult:
    """ν(U_x) = Σ μ(g) ν(g^-1 U_x) for depth <= 2 cones, empirically and exactly."""
    ws = workspace("free_ab")
    outcomes = _ensemble("free_ab", scale.residual_walks, scale.residual_steps, seed)
    check_abort(list(outcomes))
    nu = tabulate_cones([o.end for o in outcomes], 3, 1)
    rows = stationarity_residual(nu, ws.measure)
    bad = sum(1 for r in rows if r.residual > SIGMAS * r.std_error)
    exact_rows = stationarity_residual(harmonic_cone_measure(ws.group, ws.measure, 3), ws.measure)
    exact_max = max(r.residual for r in exact_rows)
    if exact_max > EXACT_RESIDUAL:
        bad += 1
    worst = max((r.residual / r.std_error for r in rows if r.std_error > 0), default=0.0)
    return SuiteResult(
        "stationarity",
        bad == 0,
        len(rows) + 1,
        bad,
        f"empirical residual up to {worst:.2f} standard errors, exact residual {exact_max:.1e}",
        {"worst_z": worst, "exact": exact_max},
    )


def _type_n_share(outcomes: tuple[WalkOutcome, ...], n: int) -> float:
    conclusive = [o for o in outcomes if o.conclusive]
    if not conclusive:
        return 0.0
    return sum(1 for o in conclusive if o.end_type == n) / len(conclusive)


def type_concentration(scale: Scale, seed: int) -> SuiteResult:
    """Ends of the walk on the Z^2 group are of type 2, more so on longer paths."""
    ws = workspace("not_min")
    short = _ensemble("not_min", scale.z2_walks, scale.z2_steps, seed, s_evidence=True)  # shared with s_subsequence_rate
    longer = _ensemble("not_min", scale.z2_walks, 2 * scale.z2_steps, seed)
    first, second = _type_n_share(short, ws.n), _type_n_share(longer, ws.n)
    ok = first >= TYPE_N_SHARE and second >= first
    return SuiteResult(
        "type_concentration",
        ok,
        2 * scale.z2_walks,
        0 if ok else 1,
        f"type-{ws.n} share {first:.3f} at {scale.z2_steps} steps, {second:.3f} at {2 * scale.z2_steps}",
        {"share": first, "share_doubled": second},
    )


def s_subsequence_rate(scale: Scale, seed: int) -> SuiteResult:
    """Almost every path of the Z^2 walk carries an S-subsequence."""
    outcomes = _ensemble("not_min", scale.z2_walks, scale.z2_steps, seed, s_evidence=True)
    hits = sum(1 for o in outcomes if o.s_picks >= S_MIN_INDICES)
    share = hits / len(outcomes)
    ok = share >= S_SHARE
    return SuiteResult(
        "s_subsequence_rate", ok, len(outcomes), len(outcomes) - hits, f"{share:.3f} of paths", {"share": share}
    )


def dirac_convergence(scale: Scale, seed: int) -> SuiteResult:
    """τ_i·ν concentrates on the depth-1 cone around the end of the path."""
    outcomes = _ensemble("free_ab", scale.dirac_walks, scale.dirac_steps, seed, profile=True)
    profiles = [o.profile for o in outcomes if o.profile]
    if not profiles:
        return SuiteResult("dirac_convergence", False, 0, 1, "no path produced a profile")
    steps = [r.step for r in profiles[0]]
    masses = np.array([[r.mass for r in p] for p in profiles if len(p) == len(steps)])
    # cut-down cones overstate the mass; complements of them understate it
    upper = sum(1 for p in profiles for r in p if r.bound is MassBound.UPPER)
    medians = np.median(masses, axis=0)
    final = float(medians[-1])
    dips = int(np.sum(np.diff(medians) < -1e-12))
    ok = final >= DIRAC_MEDIAN and dips == 0
    return SuiteResult(
        "dirac_convergence",
        ok,
        len(profiles),
        dips + (0 if final >= DIRAC_MEDIAN else 1),
        f"median mass {final:.4f} at step {steps[-1]}, {dips} decreases along the ladder, {upper} upper-bound rows",
        {"median": final, "upper_rows": upper},
    )


def transition_law(scale: Scale, seed: int) -> SuiteResult:
    """Observed quotients τ_i^-1 τ_(i+1) follow μ."""
    ws = workspace("not_min")
    steps = min(TRANSITION_STEPS, 4 * scale.drift_steps)
    path = sample_path(ws.measure, seed, steps)
    counts = transition_counts(ws.measure, path)
    bad = 0
    worst = 0.0
    for g, p in zip(ws.measure.support, ws.measure.weights):
        se = math.sqrt(steps * p * (1 - p))
        z = abs(counts.get(g.word, 0) - steps * p) / se
        worst = max(worst, z)
        if z > SIGMAS:
            bad += 1
    return SuiteResult(
        "transition_law", bad == 0, len(ws.measure), bad, f"largest deviation {worst:.2f} standard errors"
    )
