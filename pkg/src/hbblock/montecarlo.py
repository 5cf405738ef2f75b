"""Discrete-event oracle for the frame-level blockage probabilities.

Each replication draws, per frame, a Poisson number of blockage arrivals;
every arrival gets a start instant uniform within its frame and a duration
uniform on the process bounds.  A frame counts as blocked when any such
interval overlaps it.  Empirical per-frame frequencies of "arrival in frame"
and "no blockage present" validate the analytic closed forms independently:
the analytic history product assumes arrivals sit at frame starts and treats
past frames as independent, so a small systematic gap at short frames is
expected, quantified here rather than hidden.

Streams are derived deterministically: replication ``r`` of ``base_seed``
uses ``numpy.random.Philox`` keyed by ``SeedSequence(entropy=base_seed,
spawn_key=(r,))``, and inside one replication the draw order is fixed
(per-frame counts first, then offsets and durations per arrival frame in
ascending frame order).  Replications are independent and may run
concurrently; aggregation is a commutative sum of counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import SidewalkScenario, _trajectory
from .stochastics import PedestrianProcess

__all__ = [
    "ReplicationResult",
    "EstimateSeries",
    "simulate_replication",
    "simulate_replication_rates",
    "estimate_probs",
    "estimate_probs_rates",
]

MIN_REPLICATIONS = 100


@dataclass(frozen=True)
class ReplicationResult:
    """Outcome of one replication: per-frame arrival and presence flags."""

    seed: int
    stream: int
    arrived: np.ndarray
    present: np.ndarray


@dataclass
class EstimateSeries:
    """Per-frame empirical probabilities with binomial standard errors."""

    p_arrival: np.ndarray
    p_arrival_se: np.ndarray
    p_free: np.ndarray
    p_free_se: np.ndarray
    n_replications: int


def _generator(seed: int, stream: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(sequence))


def _draw(
    rng: np.random.Generator,
    rates: np.ndarray,
    frame_len: float,
    process: PedestrianProcess,
) -> tuple[np.ndarray, np.ndarray]:
    counts = rng.poisson(rates * frame_len)
    arrived = counts > 0
    present = arrived.copy()
    n = rates.shape[0]
    for j in np.nonzero(counts)[0]:
        k = int(counts[j])
        offsets = rng.random(k)
        durations = rng.uniform(process.min_duration, process.max_duration, k)
        ends = (j + offsets) * frame_len + durations
        for end in ends:
            # half-open interval: a blockage ending exactly on a frame
            # boundary does not touch that frame
            last = min(n - 1, math.ceil(end / frame_len) - 1)
            present[j : last + 1] = True
    return arrived, present


def simulate_replication_rates(
    rates,
    frame_len: float,
    process: PedestrianProcess,
    seed: int,
    stream: int = 0,
) -> ReplicationResult:
    """One replication over an explicit per-frame rate series."""
    rates = np.ascontiguousarray(rates, dtype=np.float64)
    if rates.size == 0:
        raise ValueError("rates must be non-empty")
    rng = _generator(seed, stream)
    arrived, present = _draw(rng, rates, frame_len, process)
    return ReplicationResult(seed=seed, stream=stream, arrived=arrived, present=present)


def simulate_replication(
    scenario: SidewalkScenario, seed: int, stream: int = 0
) -> ReplicationResult:
    """One replication of the sidewalk trajectory."""
    rates = _trajectory(scenario).rates
    return simulate_replication_rates(
        rates, scenario.frame.duration, scenario.process, seed, stream
    )


def estimate_probs_rates(
    rates,
    frame_len: float,
    process: PedestrianProcess,
    n_replications: int,
    base_seed: int,
) -> EstimateSeries:
    """Empirical arrival/blockage-free frequencies over many replications.

    Replication ``r`` reproduces ``simulate_replication_rates(..., base_seed,
    stream=r)`` exactly, so estimates from disjoint stream ranges are
    independent.
    """
    if n_replications < MIN_REPLICATIONS:
        raise ValueError(f"n_replications must be >= {MIN_REPLICATIONS}")
    rates = np.ascontiguousarray(rates, dtype=np.float64)
    if rates.size == 0:
        raise ValueError("rates must be non-empty")
    n = rates.shape[0]
    arrival_counts = np.zeros(n, dtype=np.int64)
    free_counts = np.zeros(n, dtype=np.int64)
    for r in range(n_replications):
        arrived, present = _draw(_generator(base_seed, r), rates, frame_len, process)
        arrival_counts += arrived
        free_counts += ~present
    p_arrival = arrival_counts / n_replications
    p_free = free_counts / n_replications
    return EstimateSeries(
        p_arrival=p_arrival,
        p_arrival_se=np.sqrt(p_arrival * (1.0 - p_arrival) / n_replications),
        p_free=p_free,
        p_free_se=np.sqrt(p_free * (1.0 - p_free) / n_replications),
        n_replications=n_replications,
    )


def estimate_probs(
    scenario: SidewalkScenario, n_replications: int, base_seed: int
) -> EstimateSeries:
    """Empirical per-frame estimates for the sidewalk trajectory."""
    rates = _trajectory(scenario).rates
    return estimate_probs_rates(
        rates, scenario.frame.duration, scenario.process, n_replications, base_seed
    )
