"""Closed-form two-ray ground-reflection propagation math.

A transmitter at height ``h_tx`` and a receiver at height ``h_rx`` above a
flat, perfectly reflecting ground are separated by a ground distance ``d``.
The received signal is the superposition of the line-of-sight ray and one
ground-reflected ray; their relative phase decides between constructive and
destructive interference.  All functions are pure and accept scalar or
ndarray distances.

Powers are handled in linear watts throughout; conversion to decibels
happens only at presentation boundaries via :func:`to_decibel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """Physical constants entering the propagation formulas."""

    c: float = SPEED_OF_LIGHT  # speed of light [m/s]

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("speed of light must be positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SceneGeometry:
    """Antenna heights above the reflecting ground plane, in meters."""

    h_tx: float
    h_rx: float

    def __post_init__(self):
        if self.h_tx <= 0 or self.h_rx <= 0:
            raise ValueError("antenna heights must be positive")


@dataclass(frozen=True)
class CarrierFrequency:
    """A carrier frequency in hertz with its derived angular frequency."""

    f: float

    def __post_init__(self):
        if self.f <= 0:
            raise ValueError("frequency must be positive")

    @property
    def omega(self) -> float:
        """Angular frequency 2*pi*f [rad/s]."""
        return TWO_PI * self.f


@dataclass(frozen=True)
class FrequencyPair:
    """Two carriers used in parallel, canonically ordered f1 < f2."""

    f1: float
    f2: float

    def __post_init__(self):
        if self.f1 <= 0 or self.f2 <= 0:
            raise ValueError("frequencies must be positive")
        if not self.f1 < self.f2:
            raise ValueError("pair requires f1 < f2")

    @classmethod
    def of(cls, f_a: float, f_b: float) -> "FrequencyPair":
        """Build a pair from two distinct frequencies in either order."""
        if f_a == f_b:
            raise ValueError("pair requires two distinct frequencies")
        return cls(min(f_a, f_b), max(f_a, f_b))

    @classmethod
    def from_spacing(cls, f1: float, delta_f: float) -> "FrequencyPair":
        """Build a pair from the lower carrier and a positive spacing."""
        if delta_f <= 0:
            raise ValueError("spacing must be positive")
        return cls(f1, f1 + delta_f)

    @property
    def omega1(self) -> float:
        return TWO_PI * self.f1

    @property
    def omega2(self) -> float:
        return TWO_PI * self.f2

    @property
    def delta_f(self) -> float:
        """Frequency spacing f2 - f1 [Hz]."""
        return self.f2 - self.f1

    @property
    def delta_omega(self) -> float:
        """Angular frequency spacing omega2 - omega1 [rad/s]."""
        return TWO_PI * self.delta_f


@dataclass(frozen=True)
class PathLengths:
    """Line-of-sight and reflected path lengths, in meters."""

    l_los: float
    l_ref: float


def path_lengths(geom: SceneGeometry, d) -> PathLengths:
    """Path lengths of the direct and ground-reflected rays.

    l_los = sqrt((h_tx - h_rx)^2 + d^2)
    l_ref = sqrt((h_tx + h_rx)^2 + d^2)

    ``d`` may be a scalar or an ndarray of ground distances in meters.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("ground distance must be nonnegative")
    l_los = np.sqrt((geom.h_tx - geom.h_rx) ** 2 + d**2)
    l_ref = np.sqrt((geom.h_tx + geom.h_rx) ** 2 + d**2)
    if d.ndim == 0:
        return PathLengths(float(l_los), float(l_ref))
    return PathLengths(l_los, l_ref)


def path_difference(geom: SceneGeometry, d):
    """Excess length l_ref - l_los of the reflected ray, in meters.

    Evaluated as 4*h_tx*h_rx / (l_los + l_ref), which is exact and avoids
    the catastrophic cancellation of the direct difference once d greatly
    exceeds the antenna heights.
    """
    lens = path_lengths(geom, d)
    return 4.0 * geom.h_tx * geom.h_rx / (lens.l_los + lens.l_ref)


def phase_shift(
    geom: SceneGeometry,
    d,
    freq: CarrierFrequency,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
):
    """Relative phase (omega/c)*(l_ref - l_los) between the two rays [rad].

    Strictly decreasing in d: it falls from :func:`max_phase_shift` at d=0
    towards zero as d grows.  Destructive interference occurs at multiples
    of 2*pi.
    """
    return freq.omega / constants.c * path_difference(geom, d)


def max_phase_shift(
    geom: SceneGeometry,
    freq: CarrierFrequency,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Supremum of the phase shift, reached in the limit d -> 0 [rad].

    Equals 2*omega*min(h_tx, h_rx)/c.
    """
    return 2.0 * freq.omega * min(geom.h_tx, geom.h_rx) / constants.c


def k_max(
    geom: SceneGeometry,
    freq: CarrierFrequency,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> int:
    """Number of destructive-interference minima over d in (0, inf)."""
    return int(math.floor(max_phase_shift(geom, freq, constants) / TWO_PI))


def null_distances(
    geom: SceneGeometry,
    freq: CarrierFrequency,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> np.ndarray:
    """Distances d_k of the receive-power minima, largest first.

    The k-th minimum solves phase_shift(d_k) = 2*pi*k and is located at

        d_k^2 = ((c*pi*k)^2 - (omega*h_rx)^2) * ((c*pi*k)^2 - (omega*h_tx)^2)
                / (omega*c*pi*k)^2

    for k = 1..k_max.  Returns an empty array when k_max is zero.
    """
    n = k_max(geom, freq, constants)
    if n == 0:
        return np.empty(0)
    k = np.arange(1, n + 1, dtype=float)
    omega = freq.omega
    c = constants.c
    a = (c * math.pi * k) ** 2 - (omega * geom.h_rx) ** 2
    b = (c * math.pi * k) ** 2 - (omega * geom.h_tx) ** 2
    # Both factors are <= 0 for k <= k_max; clamp the tiny negative products
    # that roundoff can produce right at the k_max boundary.
    d_sq = np.maximum(a * b, 0.0) / (omega * c * math.pi * k) ** 2
    return np.sqrt(d_sq)


def receive_power_single(
    geom: SceneGeometry,
    d,
    freq: CarrierFrequency,
    p_t: float = 1.0,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
):
    """Receive power of a single carrier over the two-ray channel [W].

    P_r = P_t * (c/(2*omega))^2 *
          (1/l_los^2 + 1/l_ref^2 - 2*cos(dphi)/(l_los*l_ref))

    with dphi the phase shift between the rays.  The implementation groups
    the bracket as (1/l_los - 1/l_ref)^2 + 2*(1 - cos(dphi))/(l_los*l_ref),
    which is algebraically identical and never rounds below zero.

    Parameters
    ----------
    geom : SceneGeometry
        Antenna heights [m].
    d : float or ndarray
        Ground distance(s) [m]; d=0 is rejected when h_tx == h_rx because
        the line-of-sight length vanishes there.
    freq : CarrierFrequency
        Carrier.
    p_t : float
        Transmit power [W].
    """
    if p_t <= 0:
        raise ValueError("transmit power must be positive")
    lens = path_lengths(geom, d)
    if np.any(np.asarray(lens.l_los) == 0.0):
        raise ValueError("singular geometry: d=0 with h_tx == h_rx")
    c = constants.c
    omega = freq.omega
    dphi = omega / c * (4.0 * geom.h_tx * geom.h_rx / (lens.l_los + lens.l_ref))
    amplitude = p_t * (c / (2.0 * omega)) ** 2
    cross = 2.0 * (1.0 - np.cos(dphi)) / (lens.l_los * lens.l_ref)
    return amplitude * ((1.0 / lens.l_los - 1.0 / lens.l_ref) ** 2 + cross)


def sum_power_two(
    geom: SceneGeometry,
    d,
    pair: FrequencyPair,
    p_t: float = 1.0,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
):
    """Total receive power of two carriers sharing the transmit power [W].

    Each carrier transmits at P_t/2; the closed form is

    P_s = (P_t/2) * (c/2)^2 * [ (1/omega1^2 + 1/omega2^2) * (1/l^2 + 1/lr^2)
          - (2/(l*lr)) * (cos(dphi1)/omega1^2 + cos(dphi2)/omega2^2) ]

    and equals receive_power_single at omega1 plus omega2, each at P_t/2.
    """
    if p_t <= 0:
        raise ValueError("transmit power must be positive")
    lens = path_lengths(geom, d)
    if np.any(np.asarray(lens.l_los) == 0.0):
        raise ValueError("singular geometry: d=0 with h_tx == h_rx")
    c = constants.c
    w1, w2 = pair.omega1, pair.omega2
    q = 4.0 * geom.h_tx * geom.h_rx / (lens.l_los + lens.l_ref)
    inv_w = 1.0 / w1**2 + 1.0 / w2**2
    radial = 1.0 / lens.l_los**2 + 1.0 / lens.l_ref**2
    cross = (np.cos(w1 / c * q) / w1**2 + np.cos(w2 / c * q) / w2**2)
    bracket = inv_w * radial - 2.0 / (lens.l_los * lens.l_ref) * cross
    return 0.5 * p_t * (c / 2.0) ** 2 * bracket


def sum_power_lower_bound(
    geom: SceneGeometry,
    d,
    pair: FrequencyPair,
    p_t: float = 1.0,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
):
    """Lower envelope of the two-carrier sum power [W].

    Replaces the oscillating cosine pair in :func:`sum_power_two` by the
    magnitude of its analytic signal, leaving an oscillation at the spacing
    delta_omega only:

    lb = (P_t/2) * (c/2)^2 * [ (1/omega1^2 + 1/omega2^2) * (1/l^2 + 1/lr^2)
         - (2/(l*lr)) * sqrt(1/omega1^4 + 1/omega2^4
                             + 2*cos(delta_omega*(lr-l)/c)/(omega1^2*omega2^2)) ]

    Guaranteed <= sum_power_two(d) for every distance.
    """
    if p_t <= 0:
        raise ValueError("transmit power must be positive")
    lens = path_lengths(geom, d)
    if np.any(np.asarray(lens.l_los) == 0.0):
        raise ValueError("singular geometry: d=0 with h_tx == h_rx")
    c = constants.c
    w1, w2 = pair.omega1, pair.omega2
    q = 4.0 * geom.h_tx * geom.h_rx / (lens.l_los + lens.l_ref)
    inv_w = 1.0 / w1**2 + 1.0 / w2**2
    radial = 1.0 / lens.l_los**2 + 1.0 / lens.l_ref**2
    env_sq = (
        1.0 / w1**4
        + 1.0 / w2**4
        + 2.0 * np.cos(pair.delta_omega / c * q) / (w1**2 * w2**2)
    )
    # env_sq >= (1/w1^2 - 1/w2^2)^2 analytically; clamp fp undershoot.
    envelope = np.sqrt(np.maximum(env_sq, 0.0))
    bracket = inv_w * radial - 2.0 / (lens.l_los * lens.l_ref) * envelope
    return 0.5 * p_t * (c / 2.0) ** 2 * bracket


def envelope_identity_residual(omega1, omega2, t):
    """Residual of the analytic-signal envelope identity, dimensionless.

    Evaluates |s + j*s_hat|^2 two ways for s = cos(omega1*t)/omega1^2 +
    cos(omega2*t)/omega2^2:

      expanded:    (cos a/w1^2 + cos b/w2^2)^2 + (sin a/w1^2 + sin b/w2^2)^2
      closed form: 1/w1^4 + 1/w2^4 + 2*cos((w2-w1)*t)/(w1^2*w2^2)

    and returns their absolute difference normalized by the envelope's
    maximum (1/w1^2 + 1/w2^2)^2, which keeps the residual meaningful even
    where the two near-equal sides almost cancel.  All arguments broadcast.
    """
    omega1 = np.asarray(omega1, dtype=float)
    omega2 = np.asarray(omega2, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(omega1 <= 0) or np.any(omega2 <= 0):
        raise ValueError("angular frequencies must be positive")
    a = omega1 * t
    b = omega2 * t
    iw1, iw2 = 1.0 / omega1**2, 1.0 / omega2**2
    expanded = (np.cos(a) * iw1 + np.cos(b) * iw2) ** 2 + (
        np.sin(a) * iw1 + np.sin(b) * iw2
    ) ** 2
    closed = iw1**2 + iw2**2 + 2.0 * np.cos((omega2 - omega1) * t) * iw1 * iw2
    out = np.abs(expanded - closed) / (iw1 + iw2) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def to_decibel(p, reference: float = 1.0):
    """Convert a linear power ratio to decibels: 10*log10(p/reference).

    Zero powers map to -inf instead of raising; negative powers are
    rejected.
    """
    if reference <= 0:
        raise ValueError("reference power must be positive")
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValueError("power must be nonnegative")
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(p / reference)
    if out.ndim == 0:
        return float(out)
    return out
