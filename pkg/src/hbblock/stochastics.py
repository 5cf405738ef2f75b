"""Poisson pedestrian-blockage arrivals and frame-level probabilities.

Blockage arrivals in a frame of length T are Poisson with rate
``lambda = lambda0 * blocking_region_length * pedestrian_width`` and each
blockage lasts a duration uniform on [min_duration, max_duration].  The
probability that frame i is blockage-free combines "no arrival now" with a
survival product over the history window of ceil(max_duration / T) earlier
frames; both infinite sums involved have closed forms (complementary
exponential and the Poisson probability generating function), which are what
the library evaluates.  The truncated-series routes are kept in the test
suite as independent oracles.

Everything here is pure; per-frame series may be evaluated concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import BodyGeometry, blocking_region_length

__all__ = [
    "PedestrianProcess",
    "FrameStructure",
    "poisson_pmf",
    "arrival_rate",
    "frame_arrival_rate",
    "frame_arrival_prob",
    "persistence_factor",
    "pgf_poisson",
    "blockage_free_prob",
    "arrival_prob_series",
    "blockage_free_series",
]


@dataclass(frozen=True)
class PedestrianProcess:
    """Pedestrian arrival density (per m^2 per s) and duration bounds (s)."""

    density: float
    min_duration: float
    max_duration: float

    def __post_init__(self) -> None:
        if self.density < 0:
            raise ValueError("density must be >= 0")
        if not 0 < self.min_duration < self.max_duration:
            raise ValueError("durations must satisfy 0 < min_duration < max_duration")


@dataclass(frozen=True)
class FrameStructure:
    """TDD frame: downlink slot, guard slot, uplink slot (all seconds)."""

    downlink: float
    guard: float
    uplink: float

    def __post_init__(self) -> None:
        if self.downlink <= 0 or self.guard <= 0 or self.uplink <= 0:
            raise ValueError("all slot lengths must be positive")

    @property
    def duration(self) -> float:
        """Total frame length T."""
        return self.downlink + self.guard + self.uplink


def poisson_pmf(k: int, mu: float) -> float:
    """P(K = k) for K ~ Poisson(mu), evaluated in log space.

    Log-space evaluation keeps large k from overflowing mu**k / k!.
    """
    if k < 0 or k != int(k):
        raise ValueError("k must be a non-negative integer")
    if mu < 0:
        raise ValueError("mu must be >= 0")
    if mu == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(mu) - mu - math.lgamma(k + 1))


def arrival_rate(density: float, d_2d: float, geom: BodyGeometry) -> float:
    """Blockage-arrival rate (1/s) at horizontal user-AP distance ``d_2d``.

    Arrivals are pedestrian centres entering the blocking strip, so the rate
    is density * strip length * strip width.
    """
    if density < 0:
        raise ValueError("density must be >= 0")
    return density * blocking_region_length(d_2d, geom) * geom.pedestrian_width


def frame_arrival_rate(density: float, elevation: float, geom: BodyGeometry) -> float:
    """Arrival rate expressed through the elevation angle of arrival.

    Identical to :func:`arrival_rate` at
    ``d_2d = (ap_height - device_height) * tan(elevation)``; an elevation of
    pi/2 would put the AP at infinite range and is rejected.
    """
    if not 0 <= elevation < math.pi / 2:
        raise ValueError("elevation must be in [0, pi/2)")
    drop = geom.ap_height - geom.device_height
    return arrival_rate(density, drop * math.tan(elevation), geom)


def frame_arrival_prob(rate: float, frame_len: float) -> float:
    """Probability of at least one blockage arrival within one frame.

    Closed form 1 - exp(-rate * T) of the full Poisson tail sum.
    """
    if rate < 0:
        raise ValueError("rate must be >= 0")
    if frame_len <= 0:
        raise ValueError("frame_len must be positive")
    return -math.expm1(-rate * frame_len)


def persistence_factor(
    i: int, j: int, frame_len: float, process: PedestrianProcess, clamp: bool = True
) -> float:
    """Probability that a blockage arriving in frame j has ended by frame i.

    This is the uniform-duration CDF evaluated at the elapsed time
    ``(i - j) * frame_len``.  The raw linear expression is negative below
    min_duration and above one past max_duration; it is clamped to [0, 1] by
    default, with ``clamp=False`` exposing the unclamped variant for
    discrepancy studies.
    """
    if j >= i:
        raise ValueError("persistence factor requires j < i")
    q = ((i - j) * frame_len - process.min_duration) / (
        process.max_duration - process.min_duration
    )
    if clamp:
        q = min(1.0, max(0.0, q))
    return q


def pgf_poisson(mu: float, q: float) -> float:
    """Poisson probability generating function E[q^K] = exp(mu * (q - 1)).

    Equals the series sum_k P(K = k) q^k; the closed form replaces the
    truncated sum everywhere outside the test oracles.
    """
    if mu < 0:
        raise ValueError("mu must be >= 0")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    return math.exp(mu * (q - 1.0))


def blockage_free_prob(
    i: int,
    rates,
    frame_len: float,
    process: PedestrianProcess,
    clamp: bool = True,
) -> float:
    """Probability that frame i is free of pedestrian blockage.

    Combines no-arrival-now with the survival of every blockage that may
    have arrived within the preceding ceil(max_duration / frame_len) frames.
    ``rates`` holds the per-frame arrival rates from frame 0 on; history
    before frame 0 contributes nothing (the process starts empty at cell
    entry).  This scalar form is the reference implementation; use
    :func:`blockage_free_series` for whole trajectories.
    """
    rates = np.asarray(rates, dtype=np.float64)
    if rates.size == 0:
        raise ValueError("rates must be non-empty")
    if i < 0 or i >= rates.size:
        raise ValueError("frame index outside the rate series")
    window = _kernels._robust_ceil(process.max_duration / frame_len)
    free = 1.0 - frame_arrival_prob(rates[i], frame_len)
    for j in range(max(0, i - window), i):
        q = persistence_factor(i, j, frame_len, process, clamp=clamp)
        mu = rates[j] * frame_len
        if clamp:
            free *= pgf_poisson(mu, q)
        else:
            free *= math.exp(mu * (q - 1.0))
    return free


def arrival_prob_series(rates, frame_len: float) -> np.ndarray:
    """Vectorised :func:`frame_arrival_prob` over a rate series."""
    rates = np.asarray(rates, dtype=np.float64)
    if np.any(rates < 0):
        raise ValueError("rates must be >= 0")
    return -np.expm1(-rates * frame_len)


def blockage_free_series(
    rates,
    frame_len: float,
    process: PedestrianProcess,
    clamp: bool = True,
) -> np.ndarray:
    """Blockage-free probability for every frame of a rate series.

    Kernel-backed evaluation of :func:`blockage_free_prob`; the two agree to
    floating-point summation order.
    """
    rates = np.ascontiguousarray(rates, dtype=np.float64)
    if rates.size == 0:
        raise ValueError("rates must be non-empty")
    weights = _kernels.survival_weights(
        frame_len, process.min_duration, process.max_duration, clamp=clamp
    )
    survival = _kernels.history_survival(rates, frame_len, weights)
    return (1.0 - arrival_prob_series(rates, frame_len)) * survival
