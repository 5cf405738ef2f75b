"""Single-user sidewalk case study: frame loop, losses, parameter sweeps.

The user crosses a rectangular cell along its middle axis at constant speed;
the AP hangs at the midpoint of one long edge.  Because the body trails the
handset, the self-blockage sector faces backward along the trajectory: the
azimuth returned by :func:`hbblock.geometry.aoa_of_frame` (measured from the
walking direction) is mirrored to the body axis before the sector test.
With the default dimensions this makes self-blockage start shortly after the
user passes the AP and persist until cell exit, which is what breaks the
symmetry of the per-frame probability curves.

All operations are deterministic; rows of a sweep and frames of a series
share no mutable state and may be computed concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _kernels
from .geometry import (
    BodyGeometry,
    SidewalkCell,
    horizontal_sector_width,
    vertical_sector_threshold,
)
from .stochastics import (
    FrameStructure,
    PedestrianProcess,
    arrival_prob_series,
    blockage_free_series,
)

__all__ = [
    "SidewalkScenario",
    "FrameRecord",
    "BlockageLoss",
    "SweepRow",
    "SweepResult",
    "REFERENCE_ENTRY_AZIMUTH_DEG",
    "frame_series",
    "frames_before_self_block",
    "frames_before_self_block_closed_form",
    "expected_dl_time",
    "self_blockage_area_fraction",
    "hbb_loss_db",
    "sweep",
]

# Published entry azimuth (degrees, body axis) of the self-blocking region
# for the reference sidewalk configuration; used only by the closed-form
# frame-count variant.  The geometric computation in
# frames_before_self_block does not depend on it.
REFERENCE_ENTRY_AZIMUTH_DEG = 26.38


@dataclass(frozen=True)
class SidewalkScenario:
    """Cell, dimensions, pedestrian process and frame structure in one place."""

    cell: SidewalkCell
    geom: BodyGeometry
    process: PedestrianProcess
    frame: FrameStructure

    def __post_init__(self) -> None:
        step = self.cell.speed * self.frame.duration
        if step >= self.cell.length / 10.0:
            raise ValueError(
                "frame too long for the cell: need speed * frame duration < length / 10"
            )

    @property
    def n_frames(self) -> int:
        """Number of whole frames during one cell traversal."""
        return _robust_floor(self.cell.length / (self.cell.speed * self.frame.duration))


@dataclass(frozen=True)
class FrameRecord:
    """Per-frame derived quantities along the trajectory.

    ``azimuth`` is the travel-axis angle of arrival (radians); the
    ``self_blocked`` flag already accounts for the mirror to the body axis.
    """

    index: int
    time: float
    azimuth: float
    elevation: float
    d_2d: float
    arrival_rate: float
    p_arrival: float
    p_free: float
    self_blocked: bool


@dataclass(frozen=True)
class BlockageLoss:
    """Blockage losses in dB: -10*log10 of the respective success fraction.

    ``math.inf`` marks total outage (no usable frames or zero success).
    ``mean_free`` is the average blockage-free probability over frames not
    self-blocked, the quantity behind ``pedestrian_db``.
    """

    pedestrian_db: float
    self_db: float
    total_db: float
    mean_free: float


class _Trajectory(NamedTuple):
    azimuth: np.ndarray
    elevation: np.ndarray
    d_2d: np.ndarray
    rates: np.ndarray
    self_blocked: np.ndarray


def _robust_floor(x: float, eps: float = 1e-9) -> int:
    """Floor that forgives representation noise just below an integer."""
    f = math.floor(x)
    if x - f > 1.0 - eps:
        f += 1
    return int(f)


def _trajectory(scenario: SidewalkScenario) -> _Trajectory:
    cell, geom = scenario.cell, scenario.geom
    n = scenario.n_frames
    pos = np.arange(n, dtype=np.float64) * (cell.speed * scenario.frame.duration)
    azimuth = np.arctan2(cell.width, cell.length - 2.0 * pos)
    drop = geom.ap_height - geom.device_height
    d_2d = np.hypot(cell.width / 2.0, cell.length / 2.0 - pos)
    elevation = np.arctan(d_2d / drop)
    strip = (geom.pedestrian_height - geom.device_height) / drop * d_2d
    strip += geom.pedestrian_width / 2.0
    rates = scenario.process.density * strip * geom.pedestrian_width
    half_sector = horizontal_sector_width(geom.user_width, geom.device_distance) / 2.0
    threshold = vertical_sector_threshold(
        geom.device_distance, geom.user_height, geom.device_height
    )
    # body axis points against the walking direction: mirror the azimuth
    self_blocked = (np.pi - azimuth < half_sector) & (elevation > threshold)
    return _Trajectory(azimuth, elevation, d_2d, rates, self_blocked)


def frame_series(scenario: SidewalkScenario, clamp: bool = True) -> list[FrameRecord]:
    """One record per frame from cell entry to cell exit."""
    traj = _trajectory(scenario)
    frame_len = scenario.frame.duration
    p_arrival = arrival_prob_series(traj.rates, frame_len)
    p_free = blockage_free_series(traj.rates, frame_len, scenario.process, clamp=clamp)
    return [
        FrameRecord(
            index=i,
            time=i * frame_len,
            azimuth=float(traj.azimuth[i]),
            elevation=float(traj.elevation[i]),
            d_2d=float(traj.d_2d[i]),
            arrival_rate=float(traj.rates[i]),
            p_arrival=float(p_arrival[i]),
            p_free=float(p_free[i]),
            self_blocked=bool(traj.self_blocked[i]),
        )
        for i in range(scenario.n_frames)
    ]


def frames_before_self_block(scenario: SidewalkScenario) -> int:
    """Index of the first self-blocked frame (trajectory length if none).

    Computed from the blockage sectors and the trajectory angles directly;
    every frame before the returned index is free of self-blockage.
    """
    blocked = _trajectory(scenario).self_blocked
    if not blocked.any():
        return scenario.n_frames
    return int(np.argmax(blocked))


def frames_before_self_block_closed_form(
    scenario: SidewalkScenario, entry_azimuth_deg: float = REFERENCE_ENTRY_AZIMUTH_DEG
) -> int:
    """Closed-form frame count from a given body-axis entry azimuth.

    Cross-check variant: assumes self-blockage starts where the rear-axis
    azimuth of the AP shrinks to ``entry_azimuth_deg``.  With the published
    reference azimuth this does not coincide exactly with the geometric
    entry point of :func:`frames_before_self_block`; both are exposed so the
    discrepancy stays visible.
    """
    if not 0 < entry_azimuth_deg < 90:
        raise ValueError("entry_azimuth_deg must be in (0, 90)")
    cot = 1.0 / math.tan(math.radians(entry_azimuth_deg))
    cell = scenario.cell
    travelled = (cell.length + cell.width * cot) / 2.0
    return _robust_floor(travelled / (cell.speed * scenario.frame.duration))


def expected_dl_time(
    scenario: SidewalkScenario, mode: str = "sum", clamp: bool = True
) -> float:
    """Expected effective downlink time (s) before self-blockage sets in.

    ``mode="sum"`` (default) accumulates p_free * downlink over the frames
    preceding self-blockage.  ``mode="literal"`` additionally multiplies by
    the frame count, reproducing the published closed form verbatim; that
    variant grows quadratically with the frame count and exceeds the
    traversal time, so it is kept for comparison only.
    """
    if mode not in ("sum", "literal"):
        raise ValueError("mode must be 'sum' or 'literal'")
    traj = _trajectory(scenario)
    frame_len = scenario.frame.duration
    p_free = blockage_free_series(traj.rates, frame_len, scenario.process, clamp=clamp)
    m = frames_before_self_block(scenario)
    total = float(p_free[:m].sum()) * scenario.frame.downlink
    if mode == "literal":
        total *= m
    return total


def self_blockage_area_fraction(
    scenario: SidewalkScenario,
    grid_resolution: float = 0.01,
    check_convergence: bool = True,
) -> float:
    """Fraction of the cell area where a user (facing the walking direction)
    is self-blocked.

    Cell-centred sampling on a uniform grid; the resolution is adjusted to
    tile the cell exactly.  With ``check_convergence`` the estimate is
    validated against half resolution (difference below 1e-3, refining up to
    four times) and the finest value is returned; without it a single grid
    at the requested resolution is evaluated.
    """
    cell, geom = scenario.cell, scenario.geom
    limit = min(cell.length, cell.width) / 100.0
    if not 0 < grid_resolution <= limit:
        raise ValueError(f"grid_resolution must be in (0, {limit}]")
    if not check_convergence:
        return _area_fraction_single(cell, geom, grid_resolution)
    h = grid_resolution
    coarse = _area_fraction_single(cell, geom, h)
    for _ in range(4):
        fine = _area_fraction_single(cell, geom, h / 2.0)
        if abs(fine - coarse) < 1e-3:
            return fine
        coarse, h = fine, h / 2.0
    raise RuntimeError("self-blockage area integration did not converge")


@lru_cache(maxsize=128)
def _area_fraction_single(
    cell: SidewalkCell, geom: BodyGeometry, resolution: float
) -> float:
    nx = max(1, round(cell.length / resolution))
    ny = max(1, round(cell.width / resolution))
    xs = (np.arange(nx, dtype=np.float64) + 0.5) * (cell.length / nx)
    ys = (np.arange(ny, dtype=np.float64) + 0.5) * (cell.width / ny)
    half_sector = horizontal_sector_width(geom.user_width, geom.device_distance) / 2.0
    threshold = vertical_sector_threshold(
        geom.device_distance, geom.user_height, geom.device_height
    )
    min_range = (geom.ap_height - geom.device_height) * math.tan(threshold)
    count = _kernels.self_blocked_count(
        xs, ys, cell.length / 2.0, cell.width, math.cos(half_sector), min_range
    )
    return count / (nx * ny)


def hbb_loss_db(
    scenario: SidewalkScenario,
    grid_resolution: float = 0.01,
    clamp: bool = True,
) -> BlockageLoss:
    """Pedestrian, self-blockage and total loss in dB for one scenario.

    Pedestrian loss averages the blockage-free probability over the frames
    that are not self-blocked (self-blockage dominates the rest, which the
    downlink-time sum excludes anyway); self-blockage loss comes from the
    blocked area fraction of the cell.
    """
    traj = _trajectory(scenario)
    p_free = blockage_free_series(
        traj.rates, scenario.frame.duration, scenario.process, clamp=clamp
    )
    usable = ~traj.self_blocked
    if not usable.any():
        mean_free = 0.0
    else:
        mean_free = float(p_free[usable].mean())
    pedestrian_db = math.inf if mean_free == 0.0 else -10.0 * math.log10(mean_free) + 0.0
    fraction = self_blockage_area_fraction(scenario, grid_resolution)
    self_db = math.inf if fraction == 1.0 else -10.0 * math.log10(1.0 - fraction) + 0.0
    return BlockageLoss(
        pedestrian_db=pedestrian_db,
        self_db=self_db,
        total_db=pedestrian_db + self_db,
        mean_free=mean_free,
    )


@dataclass(frozen=True)
class SweepRow:
    """One sweep output row; ``case`` flags reference rows and invalid inputs."""

    param_value: float | str
    t_data_s: float
    pedestrian_loss_db: float
    self_loss_db: float
    total_loss_db: float
    mean_p_free: float
    case: str = "swept"


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    rows: tuple[SweepRow, ...]
    metadata: tuple[tuple[str, object], ...]


_SWEEP_PARAMETERS = ("T", "lambda0", "H", "body")


def sweep(
    scenario: SidewalkScenario,
    parameter: str,
    values,
    grid_resolution: float = 0.01,
    clamp: bool = True,
    mode: str = "sum",
) -> SweepResult:
    """Recompute losses and downlink time for each value of one parameter.

    ``parameter`` is one of T (total frame length, s; guard and uplink slots
    kept from the base scenario), lambda0, H (AP height) or body
    (``(width, height)`` pairs applied jointly to user and pedestrians, with
    the handset height scaled as 1.5/1.7 of the body height).  For the T
    sweep, two flagged reference rows accompany every value: the
    pedestrian-free case and the case ignoring blockage entirely.  Values
    violating the domain invariants yield a row flagged ``invalid`` and the
    sweep continues.
    """
    if parameter == "body_size":
        parameter = "body"
    if parameter not in _SWEEP_PARAMETERS:
        raise ValueError(f"parameter must be one of {_SWEEP_PARAMETERS}")
    rows: list[SweepRow] = []
    for value in values:
        label = _value_label(parameter, value)
        try:
            variant = _apply_parameter(scenario, parameter, value)
        except (ValueError, TypeError):
            rows.append(
                SweepRow(label, math.nan, math.nan, math.nan, math.nan, math.nan, "invalid")
            )
            continue
        rows.append(_metrics_row(variant, label, grid_resolution, clamp, mode, "swept"))
        if parameter == "T":
            quiet = replace(variant, process=replace(variant.process, density=0.0))
            rows.append(
                _metrics_row(quiet, label, grid_resolution, clamp, mode, "no_pedestrians")
            )
            ideal = variant.n_frames * variant.frame.downlink
            if mode == "literal":
                ideal *= variant.n_frames
            rows.append(SweepRow(label, ideal, 0.0, 0.0, 0.0, 1.0, "hbb_ignored"))
    metadata = (
        ("parameter", parameter),
        ("eq13_mode", mode),
        ("eq8_clamp", clamp),
        ("grid_resolution_m", grid_resolution),
    )
    return SweepResult(parameter=parameter, rows=tuple(rows), metadata=metadata)


def _value_label(parameter: str, value) -> float | str:
    if parameter == "body":
        width, height = value
        return f"{float(width):.9g}:{float(height):.9g}"
    return float(value)


def _apply_parameter(
    scenario: SidewalkScenario, parameter: str, value
) -> SidewalkScenario:
    if parameter == "T":
        frame = scenario.frame
        downlink = float(value) - frame.guard - frame.uplink
        return replace(scenario, frame=replace(frame, downlink=downlink))
    if parameter == "lambda0":
        return replace(scenario, process=replace(scenario.process, density=float(value)))
    if parameter == "H":
        return replace(scenario, geom=replace(scenario.geom, ap_height=float(value)))
    width, height = value
    geom = replace(
        scenario.geom,
        user_width=float(width),
        pedestrian_width=float(width),
        user_height=float(height),
        pedestrian_height=float(height),
        device_height=(1.5 / 1.7) * float(height),
    )
    return replace(scenario, geom=geom)


def _metrics_row(
    scenario: SidewalkScenario,
    label: float | str,
    grid_resolution: float,
    clamp: bool,
    mode: str,
    case: str,
) -> SweepRow:
    loss = hbb_loss_db(scenario, grid_resolution=grid_resolution, clamp=clamp)
    t_data = expected_dl_time(scenario, mode=mode, clamp=clamp)
    return SweepRow(
        param_value=label,
        t_data_s=t_data,
        pedestrian_loss_db=loss.pedestrian_db,
        self_loss_db=loss.self_db,
        total_loss_db=loss.total_db,
        mean_p_free=loss.mean_free,
        case=case,
    )
