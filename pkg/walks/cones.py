"""
Cone measures: the stationary measure ν seen through the cones U_x.

An empirical ConeMeasure is tabulated from the ends of a walk ensemble and
keeps every end truncated at the table depth, so indicator statistics and
standard errors can be recomputed for any cone it covers.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple

import numpy as np

from algebra.words import InfiniteWord, c_len, invert, mult, prefix
from algebra.zn import ZnVec
from boundary.ends import BoundaryPoint
from config.config import INCONCLUSIVE_ABORT_FRACTION
from utils.errors import (
    DepthShortfallError,
    DomainError,
    ExperimentAbortedError,
    InconclusiveError,
    PrecisionError,
)
from walks.measure import Measure
from walks.paths import WalkPath, boundary_point, detect_S_subsequence, drift, sample_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConeMeasure:
    n: int
    depth: int
    table: Mapping[InfiniteWord, float]
    ends: tuple[InfiniteWord, ...] = field(default=())
    walks: int = 0
    inconclusive: int = 0

    @property
    def samples(self) -> int:
        return len(self.ends)

    @property
    def limit(self) -> ZnVec:
        return ZnVec.first(self.depth, self.n)

    def covers(self, apex: InfiniteWord) -> bool:
        return apex.length <= self.limit

    def mass(self, apex: InfiniteWord, truncate: bool = False) -> float:
        """ν(U_apex); with truncate, deeper apexes are cut to the table depth."""
        if apex.is_empty:
            return 1.0
        if not self.covers(apex):
            if not truncate:
                raise DomainError(f"cone {apex} is deeper than the table depth {self.depth}")
            apex = prefix(apex, self.limit)
        return self.table.get(apex, 0.0)

    def std_error(self, apex: InfiniteWord) -> float:
        if not self.ends:
            return 0.0
        p = self.mass(apex)
        return math.sqrt(p * (1.0 - p) / len(self.ends))

    def sphere(self, k: int) -> dict[InfiniteWord, float]:
        target = ZnVec.first(k, self.n)
        return {w: p for w, p in self.table.items() if w.length == target}

    def inconclusive_fraction(self) -> float:
        return self.inconclusive / self.walks if self.walks else 0.0


def _contains(sample: InfiniteWord, apex: InfiniteWord) -> bool:
    return c_len(sample, apex) == apex.length


def tabulate_cones(ends: list[BoundaryPoint | None], depth: int, n: int) -> ConeMeasure:
    """Frequencies of the cones of length (k, 0, ..., 0), k <= depth.

    Ends that are missing or too shallow for the table count as inconclusive.
    """
    limit = ZnVec.first(depth, n)
    samples: list[InfiniteWord] = []
    skipped = 0
    for end in ends:
        if end is None or not limit < end.deepest.length:
            skipped += 1
            continue
        samples.append(prefix(end.deepest, limit))
    counts: dict[InfiniteWord, int] = {}
    for s in samples:
        for k in range(1, depth + 1):
            key = prefix(s, ZnVec.first(k, n))
            counts[key] = counts.get(key, 0) + 1
    total = len(samples)
    table = {w: c / total for w, c in sorted(counts.items(), key=lambda kv: kv[0].sort_key())} if total else {}
    return ConeMeasure(n, depth, table, tuple(samples), len(ends), skipped)


# ---------------------------------------------------------------------------
# Translated cones
# ---------------------------------------------------------------------------


def translated_cone(g: InfiniteWord, x: InfiniteWord) -> tuple[InfiniteWord, bool]:
    """g · U_x as (apex, complement): U_(g*x) when the image edge points away
    from ε, else the complement of U_(g*parent(x))."""
    if x.is_empty:
        raise DomainError("U_ε is the whole boundary, not a cone")
    parent = prefix(x, x.length - ZnVec.unit(x.n))
    gx, gp = mult(g, x), mult(g, parent)
    if gp.length < gx.length:
        return gx, False
    return gp, True


def translated_mass(
    nu: ConeMeasure, g: InfiniteWord, x: InfiniteWord, truncate: bool = False
) -> float:
    """ν(g · U_x).

    Raises:
        DepthShortfallError: the image cone is deeper than the table (unless truncate).
    """
    apex, complement = translated_cone(g, x)
    if not truncate and not nu.covers(apex):
        needed = apex.length.coords[0] if apex.length.is_finite else -1
        raise DepthShortfallError(str(g), str(x), needed, nu.depth)
    p = nu.mass(apex, truncate=truncate)
    return 1.0 - p if complement else p


@dataclass(frozen=True)
class Residual:
    apex: InfiniteWord
    observed: float
    predicted: float
    residual: float
    std_error: float


def stationarity_residual(
    nu: ConeMeasure, mu: Measure, apexes: list[InfiniteWord] | None = None
) -> list[Residual]:
    """|ν(U_x) - Σ_g μ(g) ν(g^-1 U_x)| per cone, with its Monte-Carlo standard error."""
    shifts = [invert(g.word) for g in mu.support]
    weights = mu.probabilities
    if apexes is None:
        reach = max(
            (w.length.coords[0] if w.length.is_finite else nu.depth + 1) for w in shifts
        )
        apexes = [w for w in nu.table if w.length.coords[0] <= nu.depth - reach]
    out: list[Residual] = []
    for x in apexes:
        images = [translated_cone(h, x) for h in shifts]
        for h, (apex, _) in zip(shifts, images):
            if not nu.covers(apex):
                needed = apex.length.coords[0] if apex.length.is_finite else -1
                raise DepthShortfallError(str(invert(h)), str(x), needed, nu.depth)
        observed = nu.mass(x)
        parts = np.array([nu.mass(a) for a, _ in images])
        parts = np.where([c for _, c in images], 1.0 - parts, parts)
        predicted = float(np.dot(weights, parts))
        se = 0.0
        if nu.ends:
            diff = np.empty(len(nu.ends))
            for i, s in enumerate(nu.ends):
                inside = np.array([_contains(s, a) != c for a, c in images], dtype=np.float64)
                diff[i] = float(_contains(s, x)) - float(np.dot(weights, inside))
            se = float(np.std(diff, ddof=1) / math.sqrt(len(diff))) if len(diff) > 1 else 0.0
        out.append(Residual(x, observed, predicted, abs(observed - predicted), se))
    return out


class MassBound(str, Enum):
    EXACT = "exact"
    LOWER = "lower"  # complement of a cone cut to the table depth
    UPPER = "upper"  # cone cut to the table depth


class DiracRow(NamedTuple):
    step: int
    mass: float
    bound: MassBound


def dirac_convergence_profile(
    path: WalkPath, nu: ConeMeasure, depth: int, end: BoundaryPoint | None = None
) -> list[DiracRow]:
    """(i, (τ_i · ν)(U_y), bound) over the checkpoints, y the depth-`depth` prefix of the end.

    Image cones deeper than the table are read at the table depth; `bound`
    says on which side of the true mass such a row lies.
    """
    omega = end if end is not None else boundary_point(path)
    cut = ZnVec.first(depth, path.final.n)
    if not cut < omega.deepest.length:
        raise PrecisionError(
            f"end {omega} is shallower than the cone depth {depth}", lower_bound=omega.depth
        )
    apex = prefix(omega.deepest, cut)
    rows: list[DiracRow] = []
    for i, tau in path.checkpoints:
        g = invert(tau)
        image, complement = translated_cone(g, apex)
        bound = MassBound.EXACT
        if not nu.covers(image):
            bound = MassBound.LOWER if complement else MassBound.UPPER
        rows.append(DiracRow(i, translated_mass(nu, g, apex, truncate=True), bound))
    return rows


# ---------------------------------------------------------------------------
# Ensembles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkOutcome:
    walk_index: int
    steps: int
    final_length: ZnVec
    drift: float
    hbar_final: int
    hbar_max: int
    end: BoundaryPoint | None
    end_type: int | None
    conclusive: bool
    stable_depth: ZnVec | None
    s_picks: int | None  # None unless S-evidence was requested
    profile: tuple[DiracRow, ...] = ()
    note: str = ""


def run_walk(
    mu: Measure,
    master_seed: int,
    walk_index: int,
    steps: int,
    profile_measure: ConeMeasure | None = None,
    profile_depth: int = 1,
    s_evidence: bool = False,
) -> WalkOutcome:
    path = sample_path(mu, master_seed, steps, walk_index)
    hbars = path.hbar_profile()
    s_picks = len(detect_S_subsequence(path).indices) if s_evidence else None
    end, note = None, ""
    try:
        end = boundary_point(path)
    except InconclusiveError as e:
        note = str(e)
    end_type = end.declared_type if end is not None else None
    profile: tuple[DiracRow, ...] = ()
    if end is not None and profile_measure is not None:
        try:
            profile = tuple(dirac_convergence_profile(path, profile_measure, profile_depth, end))
        except PrecisionError as e:
            note = str(e)
    return WalkOutcome(
        walk_index=walk_index,
        steps=steps,
        final_length=path.final.length,
        drift=drift(path),
        hbar_final=hbars[-1],
        hbar_max=max(hbars),
        end=end,
        end_type=end_type,
        conclusive=end is not None and end.conclusive,
        stable_depth=end.depth if end is not None else None,
        s_picks=s_picks,
        profile=profile,
        note=note,
    )


def run_ensemble(
    mu: Measure,
    walks: int,
    steps: int,
    master_seed: int,
    threads: int = 1,
    profile_measure: ConeMeasure | None = None,
    profile_depth: int = 1,
    s_evidence: bool = False,
) -> list[WalkOutcome]:
    """Independent walks 0..walks-1, returned in walk-index order.

    S-subsequence detection runs only when s_evidence is set; otherwise
    every outcome carries s_picks=None.
    """
    if walks < 1 or steps < 1:
        raise DomainError(f"walks and steps must be positive, got {walks}, {steps}")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        outcomes = list(
            pool.map(
                lambda i: run_walk(mu, master_seed, i, steps, profile_measure, profile_depth, s_evidence),
                range(walks),
            )
        )
    missing = sum(1 for o in outcomes if o.end is None)
    logger.info("ensemble of %d walks x %d steps: %d inconclusive", walks, steps, missing)
    return outcomes


def check_abort(outcomes: list[WalkOutcome], threshold: float = INCONCLUSIVE_ABORT_FRACTION) -> float:
    """Share of inconclusive walks.

    Raises:
        ExperimentAbortedError: the share exceeds threshold.
    """
    share = sum(1 for o in outcomes if o.end is None) / len(outcomes)
    if share > threshold:
        logger.warning("aborting: %.1f%% inconclusive walks", 100 * share)
        raise ExperimentAbortedError(
            f"{share:.1%} of walks inconclusive, threshold {threshold:.0%}"
        )
    return share


def empirical_cone_measure(
    mu: Measure,
    walks: int,
    steps: int,
    depth: int,
    master_seed: int,
    threads: int = 1,
) -> ConeMeasure:
    """Run the ensemble and tabulate its ends.

    Raises:
        ExperimentAbortedError: more than 10% of walks did not stabilize.
    """
    if depth < 1:
        raise DomainError(f"depth must be positive, got {depth}")
    outcomes = run_ensemble(mu, walks, steps, master_seed, threads)
    check_abort(outcomes)
    return tabulate_cones([o.end for o in outcomes], depth, mu.support[0].word.n)
