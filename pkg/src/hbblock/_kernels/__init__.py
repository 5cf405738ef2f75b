"""Hot numeric kernels with a compiled fast path.

Two implementations of the same contracts live side by side:

* ``_native`` -- Cython extension, built by ``setup.py`` when a compiler is
  available.
* ``_fallback`` -- vectorised numpy, always importable.

The backend is selected once at import time.  Results agree up to
floating-point summation order (tested to 1e-12).  Set the environment
variable ``HBBLOCK_DISABLE_NATIVE=1`` to force the fallback, e.g. for
benchmark baselines.
"""

from __future__ import annotations

import math
import os

import numpy as np

if os.environ.get("HBBLOCK_DISABLE_NATIVE"):
    from . import _fallback as _impl

    BACKEND = "fallback"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "fallback"

history_survival = _impl.history_survival
self_blocked_count = _impl.self_blocked_count


def survival_weights(
    frame_len: float, min_duration: float, max_duration: float, clamp: bool = True
) -> np.ndarray:
    """Log-domain weights of the blockage-history survival product.

    ``weights[m]`` (m >= 1) is ``q_m - 1`` where ``q_m`` is the probability
    that a blockage which arrived m frames ago has already ended, under a
    duration uniform on [min_duration, max_duration].  ``weights[0]`` is
    unused and kept at 0.  With ``clamp`` disabled the raw linear expression
    is kept even outside [0, 1] (diagnostic mode).
    """
    if frame_len <= 0:
        raise ValueError("frame_len must be positive")
    window = _robust_ceil(max_duration / frame_len)
    m = np.arange(window + 1, dtype=np.float64)
    q = (m * frame_len - min_duration) / (max_duration - min_duration)
    if clamp:
        np.clip(q, 0.0, 1.0, out=q)
    weights = q - 1.0
    weights[0] = 0.0
    return weights


def _robust_ceil(x: float, eps: float = 1e-9) -> int:
    """Ceiling that ignores representation noise just above an integer."""
    c = math.ceil(x)
    if c - x > 1.0 - eps:
        c -= 1
    return int(c)
