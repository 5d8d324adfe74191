"""Per-trial derived quantities: time decomposition, trajectory metrics,
gaze classification, and the movement-time delay split.

Timestamps must be integer-valued milliseconds so that AT + MT + KT == TCT
holds exactly; divisions happen only when velocities are formed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import PointDeg, ScreenGeometry, TrialSpec
from .session import GazeSample, ParticipantProfile, PointerSample, TrialRecord

ON_TARGET = "on_target"
ON_CURSOR = "on_cursor"
ELSEWHERE = "elsewhere"
GAZE_CATEGORIES = (ON_TARGET, ON_CURSOR, ELSEWHERE)


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class MetricsConfig:
    first_move_threshold_px: float = 10.0
    target_radius_deg: float = 0.5
    gaze_radius_deg: float = 2.0
    gaze_bins: int = 100

    def __post_init__(self) -> None:
        for name in ("first_move_threshold_px", "target_radius_deg",
                     "gaze_radius_deg", "gaze_bins"):
            if getattr(self, name) <= 0:
                raise MetricsError(f"{name} must be positive")


@dataclass(frozen=True)
class TrialMetrics:
    tct_ms: int
    at_ms: int
    mt_ms: int
    kt_ms: int
    path_length_deg: float
    trajectory_excess_deg: float
    overshoot_path_deg: float
    mean_velocity_deg_per_s: float
    initial_distance_deg: float


@dataclass(frozen=True)
class GazeProfile:
    """Category proportions over normalized trial time, averaged per bin
    across the trials that contribute samples to that bin."""

    on_target: tuple[float, ...]
    on_cursor: tuple[float, ...]
    elsewhere: tuple[float, ...]
    bin_trials: tuple[int, ...]
    mean_first_move_norm: float
    n_trials: int


def _int_ms(value: float, where: str) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise MetricsError(f"{where}: timestamps must be integer-valued milliseconds, got {value!r}")


def _event_times(trial: TrialRecord) -> tuple[list[int], int]:
    if trial.outcome != "completed":
        raise MetricsError("metrics are defined for completed trials only")
    if not trial.click_events:
        raise MetricsError("completed trial has no click events")
    times = [_int_ms(s.t_ms, "pointer sample") for s in trial.pointer_samples]
    tct = _int_ms(trial.click_events[-1].t_ms, "click event")
    return times, tct


def first_move_threshold_deg(g: ScreenGeometry, cfg: MetricsConfig) -> float:
    """The 10-pixel rule converted through the log's own screen geometry."""
    return cfg.first_move_threshold_px * g.deg_per_px


def _first_move_index(samples: Sequence[PointerSample], thr_deg: float) -> int:
    start = samples[0].pos
    for i, s in enumerate(samples):
        if s.pos.dist(start) > thr_deg:
            return i
    raise MetricsError("cursor never moved beyond the first-move threshold")


def _last_reach_index(samples: Sequence[PointerSample], times: Sequence[int],
                      tct: int, radius: float) -> int:
    """Earliest sample of the final contiguous in-target run before the click."""
    reach = None
    inside_prev = False
    for i, s in enumerate(samples):
        if times[i] > tct:
            break
        inside = s.pos.norm() <= radius + 1e-12
        if inside and not inside_prev:
            reach = i
        inside_prev = inside
    if reach is None:
        raise MetricsError("cursor never entered the target disk before the click")
    return reach


def decompose_times(trial: TrialRecord, g: ScreenGeometry,
                    cfg: MetricsConfig = MetricsConfig()) -> tuple[int, int, int, int]:
    """(at, mt, kt, tct) in integer milliseconds, summing exactly to tct."""
    times, tct = _event_times(trial)
    if len(trial.pointer_samples) < 2:
        raise MetricsError("need at least 2 pointer samples")
    thr = first_move_threshold_deg(g, cfg)
    at_idx = _first_move_index(trial.pointer_samples, thr)
    reach_idx = _last_reach_index(trial.pointer_samples, times, tct, cfg.target_radius_deg)
    at = times[at_idx]
    mt = times[reach_idx] - at
    kt = tct - times[reach_idx]
    return at, mt, kt, tct


def path_length(trial: TrialRecord, cfg: MetricsConfig = MetricsConfig()) -> float:
    """Summed sample-to-sample distance from the trial start through the
    last target reach. Pre-move hold samples contribute zero length, and
    starting at the trial's first sample keeps path >= D - target_radius
    for every completed trial."""
    times, tct = _event_times(trial)
    reach_idx = _last_reach_index(trial.pointer_samples, times, tct, cfg.target_radius_deg)
    total = 0.0
    for i in range(reach_idx):
        total += trial.pointer_samples[i + 1].pos.dist(trial.pointer_samples[i].pos)
    return total


def overshoot_path(trial: TrialRecord, cfg: MetricsConfig = MetricsConfig()) -> float:
    """Total length of movement segments ending in the half-space behind the
    target, where "behind" is opposite the initial-cursor side of the line
    through the target center perpendicular to the approach axis."""
    times, tct = _event_times(trial)
    reach_idx = _last_reach_index(trial.pointer_samples, times, tct, cfg.target_radius_deg)
    start = trial.pointer_samples[0].pos
    d0 = start.norm()
    if d0 <= 0.0:
        return 0.0
    ux = start.x / d0
    uy = start.y / d0
    total = 0.0
    for i in range(reach_idx):
        a = trial.pointer_samples[i].pos
        b = trial.pointer_samples[i + 1].pos
        if b.x * ux + b.y * uy < 0.0:
            total += a.dist(b)
    return total


def mean_velocity(trial: TrialRecord, g: ScreenGeometry,
                  cfg: MetricsConfig = MetricsConfig()) -> float:
    _, mt, _, _ = decompose_times(trial, g, cfg)
    if mt <= 0:
        raise MetricsError("movement time is zero; mean velocity undefined")
    return path_length(trial, cfg) / (mt / 1000.0)


def compute_trial_metrics(trial: TrialRecord, g: ScreenGeometry,
                          cfg: MetricsConfig = MetricsConfig()) -> TrialMetrics:
    at, mt, kt, tct = decompose_times(trial, g, cfg)
    length = path_length(trial, cfg)
    if mt <= 0:
        raise MetricsError("movement time is zero; mean velocity undefined")
    return TrialMetrics(
        tct_ms=tct,
        at_ms=at,
        mt_ms=mt,
        kt_ms=kt,
        path_length_deg=length,
        trajectory_excess_deg=length - trial.spec.distance_deg,
        overshoot_path_deg=overshoot_path(trial, cfg),
        mean_velocity_deg_per_s=length / (mt / 1000.0),
        initial_distance_deg=trial.spec.distance_deg,
    )


def classify_gaze(gaze: PointDeg, cursor: PointDeg,
                  cfg: MetricsConfig = MetricsConfig()) -> str:
    """Target first, then cursor, else elsewhere; both tests use the same
    radius and the target sits at the origin."""
    if gaze.norm() < cfg.gaze_radius_deg:
        return ON_TARGET
    if gaze.dist(cursor) < cfg.gaze_radius_deg:
        return ON_CURSOR
    return ELSEWHERE


def _cursor_at(samples: Sequence[PointerSample], t: float) -> PointDeg:
    if t <= samples[0].t_ms:
        return samples[0].pos
    if t >= samples[-1].t_ms:
        return samples[-1].pos
    lo, hi = 0, len(samples) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if samples[mid].t_ms <= t:
            lo = mid
        else:
            hi = mid
    a, b = samples[lo], samples[hi]
    w = (t - a.t_ms) / (b.t_ms - a.t_ms)
    return PointDeg(a.pos.x + w * (b.pos.x - a.pos.x), a.pos.y + w * (b.pos.y - a.pos.y))


def gaze_profile(trials: Sequence[TrialRecord], g: ScreenGeometry,
                 cfg: MetricsConfig = MetricsConfig()) -> GazeProfile:
    """Average per-bin category proportions on the normalized [0, 1] trial
    clock (0 = display, 1 = click), plus the mean normalized first-move time."""
    usable = [t for t in trials if t.gaze_samples]
    if not usable:
        raise MetricsError("no trials with gaze samples")
    bins = cfg.gaze_bins
    sums = {cat: [0.0] * bins for cat in GAZE_CATEGORIES}
    bin_trials = [0] * bins
    first_move_norms = []
    thr = first_move_threshold_deg(g, cfg)
    for trial in usable:
        times, tct = _event_times(trial)
        if tct <= 0:
            raise MetricsError("trial has non-positive completion time")
        counts = {cat: [0] * bins for cat in GAZE_CATEGORIES}
        totals = [0] * bins
        for s in trial.gaze_samples:
            if not s.valid or s.t_ms > tct:
                continue
            b = min(int(bins * (s.t_ms / tct)), bins - 1)
            cat = classify_gaze(s.pos, _cursor_at(trial.pointer_samples, s.t_ms), cfg)
            counts[cat][b] += 1
            totals[b] += 1
        for b in range(bins):
            if totals[b] == 0:
                continue
            bin_trials[b] += 1
            for cat in GAZE_CATEGORIES:
                sums[cat][b] += counts[cat][b] / totals[b]
        at_idx = _first_move_index(trial.pointer_samples, thr)
        first_move_norms.append(times[at_idx] / tct)

    def averaged(cat: str) -> tuple[float, ...]:
        return tuple(sums[cat][b] / bin_trials[b] if bin_trials[b] else 0.0
                     for b in range(bins))

    return GazeProfile(
        on_target=averaged(ON_TARGET),
        on_cursor=averaged(ON_CURSOR),
        elsewhere=averaged(ELSEWHERE),
        bin_trials=tuple(bin_trials),
        mean_first_move_norm=sum(first_move_norms) / len(first_move_norms),
        n_trials=len(usable),
    )


@dataclass(frozen=True)
class DelayDecomposition:
    delta_mt_ms: float
    delay_length_ms: float
    delay_velocity_ms: float
    length_fraction: Optional[float]
    velocity_fraction: Optional[float]
    degenerate: bool


def delay_decomposition(mean_l_sim: float, mean_v_sim: float,
                        mean_l_base: float, mean_v_base: float) -> DelayDecomposition:
    """Split the movement-time difference into the part explained by longer
    paths (simulated length at baseline speed) and the velocity remainder."""
    if mean_v_sim <= 0 or mean_v_base <= 0:
        raise MetricsError("velocities must be positive")
    delta_s = mean_l_sim / mean_v_sim - mean_l_base / mean_v_base
    length_s = (mean_l_sim - mean_l_base) / mean_v_base
    velocity_s = delta_s - length_s
    if delta_s <= 0:
        return DelayDecomposition(delta_s * 1000.0, length_s * 1000.0,
                                  velocity_s * 1000.0, None, None, True)
    return DelayDecomposition(
        delta_mt_ms=delta_s * 1000.0,
        delay_length_ms=length_s * 1000.0,
        delay_velocity_ms=velocity_s * 1000.0,
        length_fraction=length_s / delta_s,
        velocity_fraction=velocity_s / delta_s,
        degenerate=False,
    )


def vf_idt_ratio(profile: ParticipantProfile, spec: TrialSpec) -> float:
    """Visual-field radius over the trial's initial cursor-target distance."""
    if profile.vf_radius_deg is None:
        raise MetricsError("participant has no recorded visual-field radius")
    return profile.vf_radius_deg / spec.distance_deg
