"""3D human-body blockage model for outdoor millimeter-wave links.

Self-blockage sectors and the pedestrian blocking region (:mod:`.geometry`),
Poisson arrival probabilities with duration memory (:mod:`.stochastics`),
the single-user sidewalk case study with losses and sweeps
(:mod:`.scenario`), a seeded Monte Carlo oracle (:mod:`.montecarlo`), and a
CSV batch CLI (:mod:`.cli`).
"""

from ._kernels import BACKEND as kernel_backend
from .geometry import (
    BodyGeometry,
    SidewalkCell,
    SphericalAoA,
    aoa_of_frame,
    blocking_region_length,
    blocking_region_length_2d,
    horizontal_sector_width,
    is_self_blocked,
    vertical_sector_threshold,
)
from .montecarlo import (
    EstimateSeries,
    ReplicationResult,
    estimate_probs,
    estimate_probs_rates,
    simulate_replication,
    simulate_replication_rates,
)
from .scenario import (
    BlockageLoss,
    FrameRecord,
    SidewalkScenario,
    SweepResult,
    SweepRow,
    expected_dl_time,
    frame_series,
    frames_before_self_block,
    frames_before_self_block_closed_form,
    hbb_loss_db,
    self_blockage_area_fraction,
    sweep,
)
from .stochastics import (
    FrameStructure,
    PedestrianProcess,
    arrival_prob_series,
    arrival_rate,
    blockage_free_prob,
    blockage_free_series,
    frame_arrival_prob,
    frame_arrival_rate,
    persistence_factor,
    pgf_poisson,
    poisson_pmf,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    "BodyGeometry",
    "SphericalAoA",
    "SidewalkCell",
    "PedestrianProcess",
    "FrameStructure",
    "SidewalkScenario",
    "FrameRecord",
    "BlockageLoss",
    "SweepRow",
    "SweepResult",
    "ReplicationResult",
    "EstimateSeries",
    "horizontal_sector_width",
    "vertical_sector_threshold",
    "is_self_blocked",
    "blocking_region_length",
    "blocking_region_length_2d",
    "aoa_of_frame",
    "poisson_pmf",
    "arrival_rate",
    "frame_arrival_rate",
    "frame_arrival_prob",
    "persistence_factor",
    "pgf_poisson",
    "blockage_free_prob",
    "arrival_prob_series",
    "blockage_free_series",
    "frame_series",
    "frames_before_self_block",
    "frames_before_self_block_closed_form",
    "expected_dl_time",
    "self_blockage_area_fraction",
    "hbb_loss_db",
    "sweep",
    "simulate_replication",
    "simulate_replication_rates",
    "estimate_probs",
    "estimate_probs_rates",
]
