"""Deterministic 3D blockage geometry.

The user's body is a flat blocker of width ``user_width`` held
``device_distance`` behind the handset; pedestrians are cylinders.  The
access point (AP) sits on a pole of height ``ap_height``.  Signal directions
are spherical angles at the handset: azimuth measured in the ground plane,
elevation measured down from the vertical axis (0 = straight overhead).

All angles are radians; degrees appear only at I/O boundaries.  Every
function here is pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BodyGeometry",
    "SphericalAoA",
    "SidewalkCell",
    "horizontal_sector_width",
    "vertical_sector_threshold",
    "is_self_blocked",
    "blocking_region_length",
    "blocking_region_length_2d",
    "aoa_of_frame",
]


@dataclass(frozen=True)
class BodyGeometry:
    """Dimensions of user, pedestrians, handset and AP installation.

    ``user_width`` may be zero (degenerate user that never self-blocks); all
    other lengths must be positive.  The handset has to sit below the user's
    head, below pedestrian height and below the AP, otherwise the blockage
    model's sector and region formulas lose their meaning.
    """

    user_width: float
    user_height: float
    device_distance: float
    device_height: float
    pedestrian_width: float
    pedestrian_height: float
    ap_height: float

    def __post_init__(self) -> None:
        if self.user_width < 0:
            raise ValueError("user_width must be >= 0")
        for name in (
            "user_height",
            "device_distance",
            "device_height",
            "pedestrian_width",
            "pedestrian_height",
            "ap_height",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.device_height >= self.user_height:
            raise ValueError("device_height must be below user_height")
        if self.device_height >= self.ap_height:
            raise ValueError("device_height must be below ap_height")
        if self.device_height >= self.pedestrian_height:
            raise ValueError("device_height must be below pedestrian_height")


@dataclass(frozen=True)
class SphericalAoA:
    """Angle of arrival (azimuth, elevation-from-vertical) plus range."""

    azimuth: float
    elevation: float
    distance: float = 0.0

    def __post_init__(self) -> None:
        if not -math.pi < self.azimuth <= math.pi:
            raise ValueError("azimuth must be in (-pi, pi]")
        if not 0.0 <= self.elevation <= math.pi / 2:
            raise ValueError("elevation must be in [0, pi/2]")
        if self.distance < 0:
            raise ValueError("distance must be >= 0")


@dataclass(frozen=True)
class SidewalkCell:
    """Rectangular cell of length x width traversed at constant speed (m/s)."""

    length: float
    width: float
    speed: float

    def __post_init__(self) -> None:
        if self.length <= 0 or self.width <= 0 or self.speed <= 0:
            raise ValueError("cell length, width and speed must be positive")


def horizontal_sector_width(user_width: float, device_distance: float) -> float:
    """Full opening angle of the azimuth sector shadowed by the user's body.

    Zero width is accepted and returns 0 (nothing is ever shadowed).
    """
    if user_width < 0:
        raise ValueError("user_width must be >= 0")
    if device_distance <= 0:
        raise ValueError("device_distance must be positive")
    return 2.0 * math.atan(user_width / (2.0 * device_distance))


def vertical_sector_threshold(
    device_distance: float, user_height: float, device_height: float
) -> float:
    """Elevation beyond which the head no longer clears the arriving ray.

    The critical ray grazes the top of the user's head; arrivals at larger
    elevation (closer to the horizon) pass through the body.
    """
    if device_distance <= 0:
        raise ValueError("device_distance must be positive")
    if user_height <= device_height:
        raise ValueError("vertical sector undefined: user_height must exceed device_height")
    return math.atan(device_distance / (user_height - device_height))


def is_self_blocked(aoa: SphericalAoA, geom: BodyGeometry) -> bool:
    """Whether an arrival is shadowed by the user's own body.

    Azimuth is measured from the handset-to-body axis, so azimuth 0 means
    the signal arrives from directly behind the body.  Blocked iff the
    arrival falls inside both the horizontal sector and the vertical sector.
    """
    half_sector = horizontal_sector_width(geom.user_width, geom.device_distance) / 2.0
    threshold = vertical_sector_threshold(
        geom.device_distance, geom.user_height, geom.device_height
    )
    return abs(aoa.azimuth) < half_sector and aoa.elevation > threshold


def blocking_region_length(d_2d: float, geom: BodyGeometry) -> float:
    """Length of the ground strip where a pedestrian centre blocks the path.

    3D model: beyond this distance from the user the ray already passes over
    pedestrian height.  Affine in the horizontal user-AP distance ``d_2d``
    with slope below one whenever the AP overtops pedestrians.
    """
    if d_2d < 0:
        raise ValueError("d_2d must be >= 0")
    slope = (geom.pedestrian_height - geom.device_height) / (
        geom.ap_height - geom.device_height
    )
    return slope * d_2d + geom.pedestrian_width / 2.0


def blocking_region_length_2d(d_2d: float, geom: BodyGeometry) -> float:
    """Blocking-strip length when elevation is ignored (flat baseline).

    The whole horizontal user-AP path blocks, so this is an upper bound on
    :func:`blocking_region_length` whenever pedestrians are shorter than the
    AP pole.
    """
    if d_2d < 0:
        raise ValueError("d_2d must be >= 0")
    return d_2d + geom.pedestrian_width / 2.0


def aoa_of_frame(
    i: int, cell: SidewalkCell, geom: BodyGeometry, frame_len: float
) -> SphericalAoA:
    """Angle of arrival at frame ``i`` on the sidewalk trajectory.

    The user enters at one short edge and walks the middle axis; the AP
    hangs at the midpoint of one long edge, i.e. laterally offset by half
    the cell width.  The returned azimuth is measured from the walking
    direction and sweeps continuously from near 0 toward pi as the user
    passes the AP (two-argument arctangent, no sign flip).  Since the body
    trails the handset, self-blockage tests must mirror this azimuth to the
    body axis first (see :mod:`hbblock.scenario`).
    """
    if i < 0:
        raise ValueError("frame index must be >= 0")
    if frame_len <= 0:
        raise ValueError("frame_len must be positive")
    pos = cell.speed * frame_len * i
    if pos > cell.length:
        raise ValueError(f"frame {i}: user is beyond the cell exit")
    theta = math.atan2(cell.width, cell.length - 2.0 * pos)
    drop = geom.ap_height - geom.device_height
    d_2d = math.hypot(cell.width / 2.0, cell.length / 2.0 - pos)
    phi = math.atan(d_2d / drop)
    return SphericalAoA(azimuth=theta, elevation=phi, distance=math.hypot(d_2d, drop))
