"""Worst-case powers as knapsack profits.

Each user (knapsack) values a frequency (item) by the worst-case receive
power it guarantees over that user's distance-uncertainty interval.  A
single frequency held alone is worth its single-carrier worst case at full
transmit power; a pair of frequencies is worth the two-carrier worst case,
so the joint profit is defined as the difference to the two single
profits.  Joint profits are therefore typically negative: the pair's
worst case already carries the power split between the carriers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .channel import (
    DEFAULT_CONSTANTS,
    TWO_PI,
    CarrierFrequency,
    FrequencyPair,
    PhysicalConstants,
    SceneGeometry,
    path_lengths,
)
from .worstcase import DistanceInterval, worst_case_pair, worst_case_single


@dataclass(frozen=True)
class UserProfile:
    """Receiver height and distance-uncertainty interval of one user."""

    h_rx: float
    interval: DistanceInterval

    def __post_init__(self):
        if self.h_rx <= 0:
            raise ValueError("receiver height must be positive")


@dataclass(frozen=True)
class SystemConfig:
    """Transmitter-side parameters shared by all users."""

    h_tx: float
    p_t: float = 1.0
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        if self.h_tx <= 0:
            raise ValueError("transmitter height must be positive")
        if self.p_t <= 0:
            raise ValueError("transmit power must be positive")


def single_profit(user: UserProfile, freq: CarrierFrequency, system: SystemConfig) -> float:
    """Worst-case power of a user holding one frequency alone, in watts.

    A user with a single assigned frequency transmits at the full power
    budget, so no power split applies here.
    """
    geom = SceneGeometry(system.h_tx, user.h_rx)
    return worst_case_single(
        geom, user.interval, freq, system.p_t, system.constants
    ).power


def pair_profit(
    user: UserProfile,
    freq_i: CarrierFrequency,
    freq_j: CarrierFrequency,
    system: SystemConfig,
) -> float:
    """Joint profit of holding two frequencies together, in watts.

    Defined so that single_i + single_j + pair_ij reconstructs the
    two-frequency worst case exactly; symmetric in the two frequencies.
    """
    if freq_i.f == freq_j.f:
        raise ValueError("joint profit requires two distinct frequencies")
    geom = SceneGeometry(system.h_tx, user.h_rx)
    pair = FrequencyPair.of(freq_i.f, freq_j.f)
    both = worst_case_pair(geom, user.interval, pair, system.p_t, system.constants).power
    return both - single_profit(user, freq_i, system) - single_profit(user, freq_j, system)


@dataclass
class ProfitTable:
    """Dense per-user profit matrices for a fixed frequency list.

    ``single[u, i]`` is the single-frequency worst case of user u on
    frequency i; ``pair[u, i, j]`` the symmetric joint profit, with the
    diagonal unused and kept at zero.
    """

    users: list[UserProfile]
    frequencies: list[CarrierFrequency]
    single: np.ndarray  # (K, N) watts
    pair: np.ndarray  # (K, N, N) watts, symmetric, zero diagonal

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_frequencies(self) -> int:
        return len(self.frequencies)

    def to_dict(self) -> dict:
        return {
            "users": [
                {
                    "h_rx_m": u.h_rx,
                    "d_min_m": u.interval.d_min,
                    "d_max_m": u.interval.d_max,
                }
                for u in self.users
            ],
            "frequencies_hz": [fr.f for fr in self.frequencies],
            "single_profits_w": self.single.tolist(),
            "pair_profits_w": self.pair.tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ProfitTable":
        users = [
            UserProfile(u["h_rx_m"], DistanceInterval(u["d_min_m"], u["d_max_m"]))
            for u in data["users"]
        ]
        freqs = [CarrierFrequency(f) for f in data["frequencies_hz"]]
        return cls(
            users=users,
            frequencies=freqs,
            single=np.asarray(data["single_profits_w"], dtype=float),
            pair=np.asarray(data["pair_profits_w"], dtype=float),
        )

    @classmethod
    def from_json(cls, text: str) -> "ProfitTable":
        return cls.from_dict(json.loads(text))


def _pair_worst_cases(user: UserProfile, hz: np.ndarray, system: SystemConfig) -> np.ndarray:
    """Two-frequency worst cases of one user for every unordered pair, (N, N).

    Most pairs in a narrow band have no spacing null anywhere near the
    interval, so their worst case is just the smaller of the two endpoint
    bound values; those are evaluated for all pairs at once with the same
    formula :func:`freqassign.channel.sum_power_lower_bound` uses.  Pairs
    whose spacing phase admits a null (or its polished basin) within half
    an oscillation of the interval are referred to
    :func:`freqassign.worstcase.worst_case_pair` instead.
    """
    geom = SceneGeometry(system.h_tx, user.h_rx)
    c = system.constants.c
    ends = np.array([user.interval.d_min, user.interval.d_max])
    lens = path_lengths(geom, ends)
    q = 4.0 * geom.h_tx * geom.h_rx / (lens.l_los + lens.l_ref)  # (2,)
    radial = 1.0 / lens.l_los**2 + 1.0 / lens.l_ref**2
    cross_amp = 2.0 / (lens.l_los * lens.l_ref)

    w = TWO_PI * hz
    w1 = np.minimum(w[:, None], w[None, :])[..., None]  # lower carrier
    w2 = np.maximum(w[:, None], w[None, :])[..., None]
    dw = TWO_PI * np.abs(hz[:, None] - hz[None, :])[..., None]
    inv_w = 1.0 / w1**2 + 1.0 / w2**2
    env_sq = 1.0 / w1**4 + 1.0 / w2**4 + 2.0 * np.cos(dw / c * q) / (w1**2 * w2**2)
    bracket = inv_w * radial - cross_amp * np.sqrt(np.maximum(env_sq, 0.0))
    endpoint_floor = (0.5 * system.p_t * (c / 2.0) ** 2 * bracket).min(axis=-1)

    # Gate: a spacing null d_k (phase 2*pi*k) matters only if some k <=
    # k_max lands within +-pi of the interval's phase range; widen the
    # rounding by an epsilon so borderline pairs take the exact path.
    phase = dw[..., 0] / c * q[:, None, None]  # (2, N, N): [at d_min, at d_max]
    kmax_pair = np.floor(dw[..., 0] * min(geom.h_tx, geom.h_rx) / (math.pi * c))
    k_lo = np.maximum(1.0, np.ceil((phase[1] - math.pi) / TWO_PI - 1e-9))
    k_hi = np.minimum(kmax_pair, np.floor((phase[0] + math.pi) / TWO_PI + 1e-9))
    needs_exact = k_lo <= k_hi

    worst = endpoint_floor
    for i, j in zip(*np.nonzero(np.triu(needs_exact, k=1))):
        fp = FrequencyPair.of(float(hz[i]), float(hz[j]))
        value = worst_case_pair(
            geom, user.interval, fp, system.p_t, system.constants
        ).power
        worst[i, j] = value
        worst[j, i] = value
    return worst


def build_profit_table(
    users: list[UserProfile],
    freqs: list[CarrierFrequency],
    system: SystemConfig,
) -> ProfitTable:
    """Evaluate all single and unordered-pair profits for every user."""
    if not users:
        raise ValueError("at least one user is required")
    hz = np.array([fr.f for fr in freqs])
    if np.unique(hz).size != hz.size:
        raise ValueError("frequencies must be pairwise distinct")
    n_users, n_freqs = len(users), len(freqs)
    single = np.zeros((n_users, n_freqs))
    pair = np.zeros((n_users, n_freqs, n_freqs))
    for u, user in enumerate(users):
        geom = SceneGeometry(system.h_tx, user.h_rx)
        for i, fr in enumerate(freqs):
            single[u, i] = worst_case_single(
                geom, user.interval, fr, system.p_t, system.constants
            ).power
        both = _pair_worst_cases(user, hz, system)
        upper = np.triu(both - single[u, :, None] - single[u, None, :], k=1)
        pair[u] = upper + upper.T  # exact symmetry, zero diagonal
    return ProfitTable(users=list(users), frequencies=list(freqs), single=single, pair=pair)
