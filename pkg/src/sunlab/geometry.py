"""Screen projection, ray-field construction, and trial scheduling.

Positions are visual angles in degrees: x rightward, y upward, origin at the
screen center (where the target sits). Pixels appear only at the projection
boundary and in the first-move threshold conversion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .rng import derive_seed, stream

DISTANCES_DEG: tuple[float, ...] = (3.5, 7.0, 10.5, 14.0)
TRIALS_PER_DISTANCE = 6
ANGLE_STEP_RAD = math.pi / 3.0
TRIALS_PER_EXERCISE = len(DISTANCES_DEG) * TRIALS_PER_DISTANCE
TAU = 2.0 * math.pi


class GeometryError(ValueError):
    pass


class Condition(str, Enum):
    """Experimental conditions; values double as CLI/JSON names."""

    CP_PVL = "cp-pvl"
    SP_PVL = "sp-pvl"
    CP_FVF = "cp-fvf"
    SP_SIMPVL = "sp-simpvl"
    ESTIMATION = "estimation"

    @classmethod
    def parse(cls, text: str) -> "Condition":
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown condition {text!r} (valid: {valid})") from None


@dataclass(frozen=True)
class PointDeg:
    """A point in degree coordinates, finite and within +-90 deg per axis."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError("point coordinates must be finite")
        if abs(self.x) > 90.0 or abs(self.y) > 90.0:
            raise GeometryError("point coordinates must lie within +-90 deg")

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def add(self, other: "PointDeg") -> "PointDeg":
        return PointDeg(self.x + other.x, self.y + other.y)

    def sub(self, other: "PointDeg") -> "PointDeg":
        return PointDeg(self.x - other.x, self.y - other.y)

    def scale(self, k: float) -> "PointDeg":
        return PointDeg(self.x * k, self.y * k)

    def dist(self, other: "PointDeg") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


ORIGIN = PointDeg(0.0, 0.0)


@dataclass(frozen=True)
class ScreenGeometry:
    """Physical screen placement. The default half-height of 15 deg encodes
    the calibration rule: the top edge sits 15 deg above the eye line."""

    width_px: int
    height_px: int
    width_cm: float
    height_cm: float
    viewing_distance_cm: float
    half_height_deg: float = 15.0

    def __post_init__(self) -> None:
        for name in ("width_px", "height_px", "width_cm", "height_cm",
                     "viewing_distance_cm", "half_height_deg"):
            if getattr(self, name) <= 0:
                raise GeometryError(f"{name} must be strictly positive")
        px_aspect = self.width_px / self.height_px
        cm_aspect = self.width_cm / self.height_cm
        if abs(px_aspect / cm_aspect - 1.0) > 0.05:
            raise GeometryError(
                f"pixel aspect {px_aspect:.4f} deviates more than 5% from "
                f"physical aspect {cm_aspect:.4f}")
        placed = (self.height_cm / 2.0) / self.viewing_distance_cm
        expected = math.tan(math.radians(self.half_height_deg))
        if abs(placed / expected - 1.0) > 0.02:
            raise GeometryError(
                "screen placement inconsistent with half_height_deg: "
                f"tan({self.half_height_deg} deg)={expected:.5f} but "
                f"(height/2)/distance={placed:.5f}")

    @property
    def px_per_deg(self) -> float:
        return (self.height_px / 2.0) / self.half_height_deg

    @property
    def deg_per_px(self) -> float:
        return self.half_height_deg / (self.height_px / 2.0)


@dataclass(frozen=True)
class RayConfig:
    """Visual parameters of the ray field (two-color concentric lines)."""

    num_rays: int = 128
    start_offset_deg: float = 2.0
    outer_color: tuple[int, int, int, int] = (0, 0, 0, 255)
    inner_color: tuple[int, int, int, int] = (255, 255, 255, 255)
    outer_width_px: int = 2
    inner_width_px: int = 1
    opacity: float = 1.0
    max_length_deg: Optional[float] = None  # None means "to the clip edge"

    def __post_init__(self) -> None:
        if self.num_rays < 3:
            raise GeometryError("num_rays must be at least 3")
        if self.start_offset_deg < 0:
            raise GeometryError("start_offset_deg must be non-negative")
        if self.inner_width_px > self.outer_width_px:
            raise GeometryError("inner line cannot be wider than the outer line")
        if not 0.0 <= self.opacity <= 1.0:
            raise GeometryError("opacity must lie in [0, 1]")
        if self.max_length_deg is not None and self.max_length_deg <= 0:
            raise GeometryError("max_length_deg must be positive when given")


@dataclass(frozen=True)
class Aperture:
    center: PointDeg
    radius_deg: float = 1.5


@dataclass(frozen=True)
class ClipRegion:
    """Moving-area disk (centered at the origin) plus an optional aperture
    disk outside of which everything is masked."""

    moving_area_radius_deg: float = 15.0
    aperture: Optional[Aperture] = None

    def __post_init__(self) -> None:
        if self.moving_area_radius_deg <= 0:
            raise GeometryError("moving_area_radius_deg must be positive")
        if self.aperture is not None:
            if self.aperture.radius_deg <= 0:
                raise GeometryError("aperture radius must be positive")
            if self.aperture.radius_deg >= self.moving_area_radius_deg:
                raise GeometryError("aperture radius must be smaller than the moving area")


@dataclass(frozen=True)
class Segment:
    a: PointDeg
    b: PointDeg

    def length(self) -> float:
        return self.a.dist(self.b)


@dataclass(frozen=True)
class TrialSpec:
    """One planned trial: where the cursor appears relative to the target."""

    trial_id: int
    condition: Condition
    distance_deg: float
    angle_rad: float
    seed: int

    def __post_init__(self) -> None:
        if self.distance_deg not in DISTANCES_DEG:
            raise GeometryError(
                f"distance_deg must be one of {DISTANCES_DEG}, got {self.distance_deg}")
        if not 0.0 <= self.angle_rad < TAU:
            raise GeometryError("angle_rad must lie in [0, 2*pi)")


@dataclass(frozen=True)
class TrialSchedule:
    exercise_id: str
    condition: Condition
    trials: tuple[TrialSpec, ...]
    seed: int


@dataclass(frozen=True)
class MouseGain:
    """Device sensitivity so that `travel_cm` of mouse motion crosses the
    full screen height (twice the half-height angle)."""

    deg_per_cm: float
    px_per_cm: float
    dpi: float
    counts_per_degree: float
    cm_per_screen_height: float


def deg_to_px(p: PointDeg, g: ScreenGeometry, mode: str = "linear") -> tuple[float, float]:
    """Project a degree-space point to (unquantized) absolute pixels.

    Linear mode scales degrees uniformly; tangent mode applies the exact
    flat-screen projection per axis. Pixel y grows downward, so positive
    degree y maps above the center.
    """
    cx = g.width_px / 2.0
    cy = g.height_px / 2.0
    half_px = g.height_px / 2.0
    if mode == "linear":
        s = half_px / g.half_height_deg
        return (cx + p.x * s, cy - p.y * s)
    if mode == "tangent":
        if abs(p.x) > 89.0 or abs(p.y) > 89.0:
            raise GeometryError("tangent projection undefined beyond 89 deg")
        s = half_px / math.tan(math.radians(g.half_height_deg))
        return (cx + math.tan(math.radians(p.x)) * s,
                cy - math.tan(math.radians(p.y)) * s)
    raise GeometryError(f"unknown projection mode {mode!r}")


def px_to_deg(px: tuple[float, float], g: ScreenGeometry, mode: str = "linear") -> PointDeg:
    cx = g.width_px / 2.0
    cy = g.height_px / 2.0
    half_px = g.height_px / 2.0
    dx = px[0] - cx
    dy = cy - px[1]
    if mode == "linear":
        s = half_px / g.half_height_deg
        return PointDeg(dx / s, dy / s)
    if mode == "tangent":
        s = half_px / math.tan(math.radians(g.half_height_deg))
        return PointDeg(math.degrees(math.atan(dx / s)), math.degrees(math.atan(dy / s)))
    raise GeometryError(f"unknown projection mode {mode!r}")


def mouse_gain(g: ScreenGeometry, travel_cm: float = 3.5) -> MouseGain:
    if travel_cm <= 0:
        raise GeometryError("travel_cm must be positive")
    span_deg = 2.0 * g.half_height_deg
    px_per_cm = g.height_px / travel_cm
    return MouseGain(
        deg_per_cm=span_deg / travel_cm,
        px_per_cm=px_per_cm,
        dpi=px_per_cm * 2.54,
        counts_per_degree=g.height_px / span_deg,
        cm_per_screen_height=travel_cm,
    )


def _ray_area_exit(cursor: PointDeg, ux: float, uy: float, radius: float) -> float:
    # Positive root of |cursor + t*u| = radius for a unit direction u.
    b = cursor.x * ux + cursor.y * uy
    c = cursor.x * cursor.x + cursor.y * cursor.y - radius * radius
    disc = b * b - c
    if disc <= 0.0:
        return 0.0
    return -b + math.sqrt(disc)


def _disk_interval(cursor: PointDeg, ux: float, uy: float,
                   center: PointDeg, radius: float) -> Optional[tuple[float, float]]:
    # Parameter interval of the line cursor + t*u inside the given disk.
    rx = cursor.x - center.x
    ry = cursor.y - center.y
    b = rx * ux + ry * uy
    c = rx * rx + ry * ry - radius * radius
    disc = b * b - c
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    return (-b - root, -b + root)


def generate_rays(cursor: PointDeg, cfg: RayConfig, clip: ClipRegion) -> list[Segment]:
    """Clipped ray segments radiating from the cursor, ordered by ray index.

    Ray k points along 2*pi*k/num_rays, starts `start_offset_deg` from the
    cursor, ends at the moving-area boundary (or `max_length_deg`), and is
    then restricted to the aperture disk when one is present. Zero-length
    results are dropped.
    """
    out: list[Segment] = []
    eps = 1e-12
    for k in range(cfg.num_rays):
        theta = TAU * k / cfg.num_rays
        ux = math.cos(theta)
        uy = math.sin(theta)
        t_hi = _ray_area_exit(cursor, ux, uy, clip.moving_area_radius_deg)
        if cfg.max_length_deg is not None:
            t_hi = min(t_hi, cfg.max_length_deg)
        t_lo = cfg.start_offset_deg
        if clip.aperture is not None:
            window = _disk_interval(cursor, ux, uy, clip.aperture.center,
                                    clip.aperture.radius_deg)
            if window is None:
                continue
            t_lo = max(t_lo, window[0])
            t_hi = min(t_hi, window[1])
        if t_hi - t_lo <= eps:
            continue
        out.append(Segment(
            PointDeg(cursor.x + t_lo * ux, cursor.y + t_lo * uy),
            PointDeg(cursor.x + t_hi * ux, cursor.y + t_hi * uy),
        ))
    return out


def clamp_to_area(cursor: PointDeg, clip: ClipRegion) -> PointDeg:
    """Radially project points outside the moving area onto its boundary."""
    r = cursor.norm()
    if r <= clip.moving_area_radius_deg:
        return cursor
    k = clip.moving_area_radius_deg / r
    return PointDeg(cursor.x * k, cursor.y * k)


def generate_schedule(condition: Condition, seed: int) -> TrialSchedule:
    """Seeded 24-trial exercise plan: 6 roll angles per distance, spaced
    pi/3 from a uniformly drawn base angle, then Fisher-Yates permuted.

    Base angles (one per distance, in DISTANCES_DEG order) and the shuffle
    both consume the single stream named ("schedule", condition), so the
    plan is a pure function of (condition, seed).
    """
    gen = stream(seed, "schedule", condition.value)
    bases = [float(gen.uniform(0.0, TAU)) for _ in DISTANCES_DEG]
    planned: list[tuple[float, float]] = []
    for base, distance in zip(bases, DISTANCES_DEG):
        for k in range(TRIALS_PER_DISTANCE):
            planned.append((distance, math.fmod(base + k * ANGLE_STEP_RAD, TAU)))
    # Fisher-Yates, high index down, from the same stream.
    for i in range(len(planned) - 1, 0, -1):
        j = int(gen.integers(0, i + 1))
        planned[i], planned[j] = planned[j], planned[i]
    trials = tuple(
        TrialSpec(trial_id=i, condition=condition, distance_deg=d, angle_rad=a,
                  seed=derive_seed(seed, "trial", i))
        for i, (d, a) in enumerate(planned)
    )
    return TrialSchedule(
        exercise_id=f"{condition.value}-{seed}",
        condition=condition,
        trials=trials,
        seed=int(seed),
    )


def initial_cursor_position(t: TrialSpec) -> PointDeg:
    """Cursor start point; the target is always at the origin."""
    return PointDeg(t.distance_deg * math.cos(t.angle_rad),
                    t.distance_deg * math.sin(t.angle_rad))


def spec_to_dict(spec: TrialSpec) -> dict:
    return {
        "trial_id": spec.trial_id,
        "condition": spec.condition.value,
        "distance_deg": spec.distance_deg,
        "angle_rad": spec.angle_rad,
        "seed": spec.seed,
    }


def spec_from_dict(d: dict) -> TrialSpec:
    return TrialSpec(
        trial_id=int(d["trial_id"]),
        condition=Condition.parse(d["condition"]),
        distance_deg=float(d["distance_deg"]),
        angle_rad=float(d["angle_rad"]),
        seed=int(d["seed"]),
    )


def schedule_to_dict(sched: TrialSchedule) -> dict:
    return {
        "exercise_id": sched.exercise_id,
        "condition": sched.condition.value,
        "seed": sched.seed,
        "trials": [spec_to_dict(t) for t in sched.trials],
    }


def schedule_from_dict(d: dict) -> TrialSchedule:
    return TrialSchedule(
        exercise_id=str(d["exercise_id"]),
        condition=Condition.parse(d["condition"]),
        trials=tuple(spec_from_dict(t) for t in d["trials"]),
        seed=int(d["seed"]),
    )


DEFAULT_GEOMETRY = ScreenGeometry(
    width_px=1680, height_px=1050,
    width_cm=52.0, height_cm=32.0,
    viewing_distance_cm=59.7,
)
DEFAULT_RAY_CONFIG = RayConfig()
DEFAULT_CLIP = ClipRegion()
SIMPVL_CLIP = ClipRegion(aperture=Aperture(center=ORIGIN, radius_deg=1.5))
TARGET_RADIUS_DEG = 0.5
