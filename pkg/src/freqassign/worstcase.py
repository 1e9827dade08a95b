"""Minimum receive power over a distance-uncertainty interval.

The receiver sits somewhere in [d_min, d_max] but the exact distance is
unknown.  The worst case of the single-carrier power (and of the
two-carrier envelope bound) is attained either at an interval endpoint or
at the largest interference null inside the interval, so it can be read
off from three closed-form evaluations.  An exhaustive phase-resolved grid
scan doubles as an independent oracle for that claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .channel import (
    DEFAULT_CONSTANTS,
    TWO_PI,
    CarrierFrequency,
    FrequencyPair,
    PhysicalConstants,
    SceneGeometry,
    null_distances,
    path_difference,
    receive_power_single,
    sum_power_lower_bound,
)

LOWER_ENDPOINT = "lower_endpoint"
UPPER_ENDPOINT = "upper_endpoint"
INTERIOR_NULL = "interior_null"


@dataclass(frozen=True)
class DistanceInterval:
    """Known range of possible transmitter-receiver distances, in meters."""

    d_min: float
    d_max: float

    def __post_init__(self):
        if not 0 < self.d_min <= self.d_max:
            raise ValueError("interval requires 0 < d_min <= d_max")

    def contains(self, d: float) -> bool:
        return self.d_min <= d <= self.d_max


@dataclass(frozen=True)
class WorstCaseResult:
    """Worst-case power and where in the interval it is attained."""

    power: float
    argmin_distance: float
    candidate_kind: str


def _min_over_candidates(power_fn, interval: DistanceInterval, nulls) -> WorstCaseResult:
    distances = [interval.d_min, interval.d_max]
    kinds = [LOWER_ENDPOINT, UPPER_ENDPOINT]
    inside = nulls[(nulls >= interval.d_min) & (nulls <= interval.d_max)]
    if inside.size:
        distances.append(float(np.max(inside)))
        kinds.append(INTERIOR_NULL)
    powers = np.asarray(power_fn(np.array(distances)))
    best = None
    for p, d, kind in zip(powers, distances, kinds):
        if best is None or p < best.power:
            best = WorstCaseResult(float(p), d, kind)
    return best


def _invert_path_difference(geom: SceneGeometry, q: float) -> float:
    """Distance at which l_ref - l_los equals q, clamped to q's valid range."""
    q = min(q, 2.0 * min(geom.h_tx, geom.h_rx))
    l_los = (4.0 * geom.h_tx * geom.h_rx - q * q) / (2.0 * q)
    return math.sqrt(max(l_los * l_los - (geom.h_tx - geom.h_rx) ** 2, 0.0))


def _polish_null_basin(
    power_fn,
    geom: SceneGeometry,
    interval: DistanceInterval,
    nulls: np.ndarray,
    omega: float,
    c: float,
) -> tuple[float, float] | None:
    """Locate the true basin minimum around the deepest relevant null.

    The phase condition puts the k-th null at d_k, but the distance-dependent
    amplitude shifts the actual minimum of the power curve slightly towards
    larger d.  This searches the full oscillation basin (phase 2*pi*k +- pi)
    of the largest null at or below d_max, clipped to the interval; nulls
    above d_max cannot matter because the shift never moves a minimum to
    smaller distances.
    """
    below = np.nonzero(nulls <= interval.d_max)[0]
    if below.size == 0:
        return None
    k = int(below[0]) + 1  # nulls are sorted by descending distance
    d_hi = min(_invert_path_difference(geom, (TWO_PI * k - math.pi) * c / omega), interval.d_max)
    d_lo = max(_invert_path_difference(geom, (TWO_PI * k + math.pi) * c / omega), interval.d_min)
    if not d_lo < d_hi:
        return None
    res = minimize_scalar(
        lambda d: float(power_fn(d)),
        bounds=(d_lo, d_hi),
        method="bounded",
        options={"xatol": max(1e-12, 1e-12 * d_hi)},
    )
    return float(res.fun), float(res.x)


def worst_case_single(
    geom: SceneGeometry,
    interval: DistanceInterval,
    freq: CarrierFrequency,
    p_t: float = 1.0,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> WorstCaseResult:
    """Minimum single-carrier receive power over the interval.

    Takes the minimum of P_r at d_min, at d_max, and at the largest null
    distance d_k falling inside the closed interval.  When no null lies in
    the interval only the endpoints compete.
    """
    nulls = null_distances(geom, freq, constants)
    return _min_over_candidates(
        lambda d: receive_power_single(geom, d, freq, p_t, constants),
        interval,
        nulls,
    )


def worst_case_pair(
    geom: SceneGeometry,
    interval: DistanceInterval,
    pair: FrequencyPair,
    p_t: float = 1.0,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> WorstCaseResult:
    """Minimum of the two-carrier envelope bound over the interval.

    Same candidate structure as :func:`worst_case_single`, with the null
    distances computed from the spacing delta_omega instead of the carrier
    and the envelope lower bound as the evaluated power.  Because the
    spacing oscillation is slow, the interior minimum can sit measurably
    off the nominal null distance, so the basin around the deepest relevant
    null is additionally polished by a bounded search.
    """
    power_fn = lambda d: sum_power_lower_bound(geom, d, pair, p_t, constants)
    spacing_nulls = null_distances(geom, CarrierFrequency(pair.delta_f), constants)
    best = _min_over_candidates(power_fn, interval, spacing_nulls)
    polished = _polish_null_basin(
        power_fn, geom, interval, spacing_nulls, pair.delta_omega, constants.c
    )
    if polished is not None and polished[0] < best.power:
        best = WorstCaseResult(polished[0], polished[1], INTERIOR_NULL)
    return best


def phase_uniform_grid(
    geom: SceneGeometry,
    interval: DistanceInterval,
    omega: float,
    max_phase_step: float = 0.01,
    min_points: int = 1024,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> np.ndarray:
    """Distance grid whose phase argument advances <= max_phase_step per step.

    The two-ray phase (omega/c)*(l_ref - l_los) is monotone in d, so a grid
    uniform in the path difference q = l_ref - l_los resolves the fastest
    oscillation everywhere; uniform-in-d grids undersample small distances.
    ``omega`` is the angular rate of the oscillation of interest (the
    carrier for P_r, the spacing delta_omega for the envelope bound).
    """
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    if interval.d_min == interval.d_max:
        return np.array([interval.d_min])
    q_hi = path_difference(geom, interval.d_min)
    q_lo = path_difference(geom, interval.d_max)
    span = (q_hi - q_lo) * omega / constants.c
    n = max(min_points, int(math.ceil(span / max_phase_step)) + 1)
    q = np.linspace(q_hi, q_lo, n)
    # Invert q -> d: l_los = (4*h_tx*h_rx - q^2)/(2q), d^2 = l_los^2 - dh^2.
    l_los = (4.0 * geom.h_tx * geom.h_rx - q**2) / (2.0 * q)
    d_sq = np.maximum(l_los**2 - (geom.h_tx - geom.h_rx) ** 2, 0.0)
    d = np.sqrt(d_sq)
    d[0] = interval.d_min
    d[-1] = interval.d_max
    return d


def grid_min(
    power_fn: Callable,
    interval: DistanceInterval,
    grid: np.ndarray | None = None,
    refine: bool = True,
) -> WorstCaseResult:
    """Global minimum of a power curve over the interval by exhaustive scan.

    ``power_fn`` must accept ndarray distances.  ``grid`` is the scan
    resolution policy; build it with :func:`phase_uniform_grid` so that the
    phase argument moves by at most 0.01 rad per step.  Every sampled local
    minimum is then polished by a bounded scalar minimization before the
    basins are ranked: near a deep null the grid samples sit well above the
    basin floor, so ranking raw samples could pick the wrong basin.  Serves
    as the independent oracle for the closed-form worst-case evaluations.
    """
    if grid is None:
        grid = np.linspace(interval.d_min, interval.d_max, 4096)
    powers = np.asarray(power_fn(grid))
    candidates = [(float(powers[0]), float(grid[0]))]
    if grid.size > 1:
        candidates.append((float(powers[-1]), float(grid[-1])))
    if refine and grid.size > 2:
        interior = powers[1:-1]
        is_min = (
            (interior <= powers[:-2])
            & (interior <= powers[2:])
            & ((interior < powers[:-2]) | (interior < powers[2:]))
        )
        brackets = [(int(i - 1), int(i + 1)) for i in np.nonzero(is_min)[0] + 1]
        # A minimum falling between an endpoint and its neighbor leaves no
        # interior sample to flag, so the two edge brackets always count.
        brackets.append((0, 1))
        brackets.append((grid.size - 2, grid.size - 1))
        for i_lo, i_hi in brackets:
            lo, hi = float(grid[i_lo]), float(grid[i_hi])
            mid = (i_lo + i_hi) // 2
            best_p, best_d = float(powers[mid]), float(grid[mid])
            if hi > lo:
                res = minimize_scalar(
                    lambda d: float(power_fn(d)),
                    bounds=(lo, hi),
                    method="bounded",
                    options={"xatol": max(1e-12, 1e-12 * hi)},
                )
                if res.fun < best_p:
                    best_p, best_d = float(res.fun), float(res.x)
            candidates.append((best_p, best_d))
    best_p, best_d = min(candidates, key=lambda c: c[0])
    if best_d == interval.d_min:
        kind = LOWER_ENDPOINT
    elif best_d == interval.d_max:
        kind = UPPER_ENDPOINT
    else:
        kind = INTERIOR_NULL
    return WorstCaseResult(best_p, best_d, kind)
