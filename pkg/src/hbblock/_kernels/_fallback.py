"""Numpy implementations of the hot kernels.

Semantics match ``_native`` exactly; see ``hbblock._kernels`` for the
contracts.  All functions are pure.
"""

from __future__ import annotations

import numpy as np


def history_survival(rates: np.ndarray, frame_len: float, weights: np.ndarray) -> np.ndarray:
    """Per-frame survival factor of all blockages that arrived earlier.

    Returns ``G`` with ``G[i] = exp(frame_len * sum_m rates[i-m] * weights[m])``
    where m runs over 1..len(weights)-1 and terms with i-m < 0 are absent
    (no arrivals before the first frame).
    """
    rates = np.ascontiguousarray(rates, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    n = rates.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.float64)
    # weights[0] == 0, so the full convolution restricted to the first n lags
    # is exactly the lagged sum over m >= 1.
    s = np.convolve(rates, weights)[:n]
    return np.exp(frame_len * s)


def self_blocked_count(
    xs: np.ndarray,
    ys: np.ndarray,
    ap_x: float,
    ap_y: float,
    cos_half_sector: float,
    min_range: float,
) -> int:
    """Count grid points whose user (facing +x, body trailing) is self-blocked.

    A point is blocked when the access point lies inside the rear cone of
    half-angle arccos(cos_half_sector) around the -x axis and farther than
    min_range in ground distance.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    dx = xs[:, None] - ap_x
    dy = ys[None, :] - ap_y
    d = np.hypot(dx, dy)
    blocked = (dx > d * cos_half_sector) & (d > min_range)
    return int(np.count_nonzero(blocked))
