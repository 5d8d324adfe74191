"""Synthetic participants emitting 33 Hz session logs per condition.

Motion model: after a drawn acquisition hold, the agent walks the sample
grid in planned sub-movements. Each plan draws a target-distance estimate
(exact for full-vision agents, biased and noisy outside the aperture for
simulated-PVL agents) and a heading; direction is refreshed on the
re-perception cadence, distance only at plan boundaries or when a look
lands inside the aperture where the cursor is actually visible.

Per-sample arc lengths are scheduled so that the cumulative distance walked
equals v*(k-1)*dt at every movement sample after the initial twitch. The
analysis measures mean velocity as path/MT with MT starting at the first
detected move, so this schedule makes the measured velocity equal the
commanded one instead of inheriting a one-sample quantization bias.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .geometry import (
    Aperture,
    ClipRegion,
    Condition,
    DEFAULT_CLIP,
    DEFAULT_GEOMETRY,
    DEFAULT_RAY_CONFIG,
    ORIGIN,
    PointDeg,
    ScreenGeometry,
    TrialSchedule,
    TrialSpec,
    clamp_to_area,
    initial_cursor_position,
)
from .metrics import MetricsConfig, first_move_threshold_deg
from .session import (
    ClickEvent,
    GazeSample,
    ParticipantProfile,
    PointerSample,
    SessionLog,
    TrialRecord,
)
from .rng import stream

SIM_CREATED_AT = "2000-01-01T00:00:00Z"
CLICK_RADIUS_DEG = 0.45  # stop margin safely inside the 0.5 deg target
ABORT_AFTER_S = 60.0


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class VelocityLaw:
    """Commanded mean velocity as a function of the initial distance."""

    kind: str  # "affine" or "constant"
    slope: float = 0.71  # deg/s per deg, affine only
    intercept_deg_per_s: float = 13.0
    constant_deg_per_s: float = 12.0

    def velocity(self, distance_deg: float) -> float:
        if self.kind == "affine":
            return self.slope * distance_deg + self.intercept_deg_per_s
        if self.kind == "constant":
            return self.constant_deg_per_s
        raise SimulationError(f"unknown velocity law {self.kind!r}")


@dataclass(frozen=True)
class PerceptionModel:
    """Distance/direction estimation from the ray convergence cue.

    The distance bias is E(D) = slope*D + intercept, the additive error of
    the estimate; set distance_model="raw" to instead read the affine line
    as the estimate itself. Noise SDs interpolate the measured anchors and
    are clamped outside them.
    """

    distance_bias_slope: float = -0.47
    distance_bias_intercept_deg: float = 2.95
    distance_noise_anchors: tuple[tuple[float, float], ...] = (
        (3.5, 2.0), (7.0, 2.4), (10.5, 2.6), (14.0, 3.1))
    direction_noise_sd_rad: float = math.pi / 32
    direction_noise_far_sd_rad: float = math.pi / 16
    direction_noise_far_threshold_deg: float = 12.0
    reperception_interval_ms: float = 150.0
    exact_radius_deg: float = 1.5  # cursor visible inside the aperture
    plan_shrink: float = 0.92  # deliberate undershoot of planned reaches
    execution_noise_frac: float = 0.35  # damping of estimate noise in motor plans
    replan_bias_frac: float = 0.5  # in-flight re-estimates are partly corrected
    distance_model: str = "bias"

    def __post_init__(self) -> None:
        if self.reperception_interval_ms <= 0:
            raise SimulationError("reperception_interval_ms must be positive")
        if any(sd <= 0 for _, sd in self.distance_noise_anchors):
            raise SimulationError("distance noise SDs must be positive")
        if self.direction_noise_sd_rad <= 0 or self.direction_noise_far_sd_rad <= 0:
            raise SimulationError("direction noise SDs must be positive")
        if self.distance_model not in ("bias", "raw"):
            raise SimulationError("distance_model must be 'bias' or 'raw'")

    def bias(self, distance_deg: float) -> float:
        return self.distance_bias_slope * distance_deg + self.distance_bias_intercept_deg

    def estimate_mean(self, distance_deg: float) -> float:
        if self.distance_model == "raw":
            return self.distance_bias_slope * distance_deg + self.distance_bias_intercept_deg
        return distance_deg + self.bias(distance_deg)

    def noise_sd(self, distance_deg: float) -> float:
        anchors = self.distance_noise_anchors
        if distance_deg <= anchors[0][0]:
            return anchors[0][1]
        if distance_deg >= anchors[-1][0]:
            return anchors[-1][1]
        for (d0, s0), (d1, s1) in zip(anchors, anchors[1:]):
            if d0 <= distance_deg <= d1:
                w = (distance_deg - d0) / (d1 - d0)
                return s0 + w * (s1 - s0)
        return anchors[-1][1]

    def direction_sd(self, distance_deg: float) -> float:
        if distance_deg >= self.direction_noise_far_threshold_deg:
            return self.direction_noise_far_sd_rad
        return self.direction_noise_sd_rad


@dataclass(frozen=True)
class MovementModel:
    velocity_law: VelocityLaw
    jitter_frac: float = 0.05  # within-trial arc jitter, schedule-compensated
    heading_gain: float = 1.0  # correction applied per re-perception
    heading_noise_sd_rad: float = 0.015  # motor/heading noise for exact perceivers

    def __post_init__(self) -> None:
        if self.velocity_law.velocity(3.5) <= 0 or self.velocity_law.velocity(14.0) <= 0:
            raise SimulationError("velocities must be positive")


@dataclass(frozen=True)
class SearchModel:
    """Visual-search acquisition time for crosshair-pointer PVL agents:
    mean grows with the distance / visual-field ratio, with heavy spread."""

    base_ms: float = 800.0
    per_ratio_ms: float = 900.0
    spread_frac: float = 0.4


@dataclass(frozen=True)
class LatencyModel:
    acquisition_mean_ms: float
    acquisition_sd_ms: float
    keystroke_mean_ms: float
    keystroke_sd_ms: float
    search: Optional[SearchModel] = None

    def __post_init__(self) -> None:
        for name in ("acquisition_mean_ms", "acquisition_sd_ms",
                     "keystroke_mean_ms", "keystroke_sd_ms"):
            if getattr(self, name) <= 0:
                raise SimulationError(f"{name} must be positive")


@dataclass(frozen=True)
class AgentModel:
    condition: Condition
    movement: MovementModel
    latency: LatencyModel
    perception: Optional[PerceptionModel] = None
    gaze_script: str = "none"  # "target_locked" | "four_phase_search" | "none"
    sample_rate_hz: int = 33
    seed: int = 0
    vf_radius_deg: Optional[float] = None

    def __post_init__(self) -> None:
        needs_perception = self.condition in (Condition.SP_SIMPVL, Condition.SP_PVL,
                                              Condition.ESTIMATION)
        if needs_perception and self.perception is None:
            raise SimulationError(f"{self.condition.value} agents need a perception model")
        if not needs_perception and self.perception is not None:
            raise SimulationError(
                f"{self.condition.value} agents perceive the cursor directly; "
                "no perception model applies")
        if self.gaze_script not in ("target_locked", "four_phase_search", "none"):
            raise SimulationError(f"unknown gaze script {self.gaze_script!r}")
        if self.sample_rate_hz <= 0:
            raise SimulationError("sample_rate_hz must be positive")


@dataclass(frozen=True)
class EstimationResult:
    true_pos: PointDeg
    estimated_pos: PointDeg


PRESET_NAMES = ("cp-fvf", "sp-simpvl", "sp-pvl", "cp-pvl")


def preset(name: str, seed: int = 0) -> AgentModel:
    condition = Condition.parse(name)
    if condition == Condition.CP_FVF:
        return AgentModel(
            condition=condition,
            movement=MovementModel(VelocityLaw("affine", 0.71, 13.0)),
            latency=LatencyModel(320.0, 60.0, 410.0, 80.0),
            gaze_script="none",
            seed=seed,
        )
    if condition == Condition.SP_SIMPVL:
        return AgentModel(
            condition=condition,
            movement=MovementModel(VelocityLaw("constant", constant_deg_per_s=12.0),
                                   heading_gain=0.3),
            latency=LatencyModel(390.0, 60.0, 500.0, 80.0),
            perception=PerceptionModel(),
            gaze_script="target_locked",
            seed=seed,
        )
    if condition == Condition.SP_PVL:
        return AgentModel(
            condition=condition,
            movement=MovementModel(VelocityLaw("constant", constant_deg_per_s=12.0),
                                   heading_gain=0.3),
            latency=LatencyModel(500.0, 100.0, 500.0, 100.0),
            perception=PerceptionModel(exact_radius_deg=3.5),
            gaze_script="target_locked",
            seed=seed,
            vf_radius_deg=3.5,
        )
    if condition == Condition.CP_PVL:
        return AgentModel(
            condition=condition,
            movement=MovementModel(VelocityLaw("constant", constant_deg_per_s=12.0)),
            latency=LatencyModel(1500.0, 500.0, 500.0, 100.0, search=SearchModel()),
            gaze_script="four_phase_search",
            seed=seed,
            vf_radius_deg=2.5,
        )
    raise SimulationError(f"no preset for condition {condition.value!r}")


def make_profile(agent: AgentModel, index: int = 0) -> ParticipantProfile:
    return ParticipantProfile(
        participant_id=f"sim-{agent.condition.value}-{index:03d}",
        kind="synthetic",
        vf_radius_deg=agent.vf_radius_deg,
        laterality="right",
        vision_disorder="rp" if agent.vf_radius_deg is not None else "none",
        self_rated_mouse_skill=8.0,
    )


def _t_ms(k: int, rate: int) -> int:
    # Round half up of k*1000/rate; exact integers, no accumulated drift.
    return (2000 * k + rate) // (2 * rate)


def _positive_normal(rng: np.random.Generator, mean: float, sd: float) -> float:
    for _ in range(100):
        v = float(rng.normal(mean, sd))
        if v > 0.0:
            return v
    return max(1.0, mean)


def _wrap_angle(a: float) -> float:
    return math.atan2(math.sin(a), math.cos(a))


def _bearing_to_target(pos: PointDeg) -> float:
    return math.atan2(-pos.y, -pos.x)


def _draw_acquisition_ms(agent: AgentModel, spec: TrialSpec,
                         rng: np.random.Generator) -> float:
    lat = agent.latency
    if lat.search is not None:
        ratio = spec.distance_deg / (agent.vf_radius_deg or 2.5)
        mean = lat.search.base_ms + lat.search.per_ratio_ms * ratio
        return _positive_normal(rng, mean, lat.search.spread_frac * mean)
    return _positive_normal(rng, lat.acquisition_mean_ms, lat.acquisition_sd_ms)


def _plan(agent: AgentModel, pos: PointDeg, rng: np.random.Generator,
          first: bool = False) -> tuple[float, float]:
    """One sub-movement plan: (arc budget, heading). Exact perceivers and
    looks inside the aperture plan the true remaining distance. The first
    plan of a trial carries the full static estimation bias; in-flight
    re-plans see it damped (the moving ray field adds parallax)."""
    r = pos.norm()
    perception = agent.perception
    if perception is None or r <= perception.exact_radius_deg:
        return max(r, 1e-6), _bearing_to_target(pos)
    noise = float(rng.normal(0.0, perception.execution_noise_frac * perception.noise_sd(r)))
    if perception.distance_model == "raw":
        d_hat = perception.estimate_mean(r) + noise
    else:
        bias_frac = 1.0 if first else perception.replan_bias_frac
        d_hat = r + bias_frac * perception.bias(r) + noise
    budget = perception.plan_shrink * max(d_hat, 0.25)
    heading = _bearing_to_target(pos) + float(rng.normal(0.0, perception.direction_sd(r)))
    return budget, heading


def simulate_trial(agent: AgentModel, spec: TrialSpec,
                   geometry: ScreenGeometry = DEFAULT_GEOMETRY,
                   clip: Optional[ClipRegion] = None,
                   metrics_cfg: MetricsConfig = MetricsConfig()) -> TrialRecord:
    """One trial on the sample grid, deterministic in (agent.seed, trial_id)."""
    if clip is None:
        clip = default_clip(agent)
    rng = stream(agent.seed, "trial", spec.trial_id, "pointer")
    rate = agent.sample_rate_hz
    dt = 1.0 / rate
    p0 = initial_cursor_position(spec)
    v = agent.movement.velocity_law.velocity(spec.distance_deg)
    step = v * dt
    thr = first_move_threshold_deg(geometry, metrics_cfg)
    twitch = min(1.1 * thr, 0.85 * step)

    positions: list[PointDeg] = [p0]
    acq_ms = _draw_acquisition_ms(agent, spec, rng)
    hold = max(1, round(acq_ms * rate / 1000.0))
    positions.extend([p0] * hold)

    perception = agent.perception
    reper_samples = max(1, round(
        (perception.reperception_interval_ms if perception else 150.0) * rate / 1000.0))
    # Perceptual sampling is not locked to movement onset; a random cadence
    # phase keeps look instants from resonating with the travel distances.
    look_offset = int(rng.integers(0, reper_samples))
    # Zero-mean per-trial dither of the arc schedule so landing positions do
    # not resonate with the distance grid (phased in over a few steps).
    phase = float(rng.uniform(-0.5, 0.5)) * step
    heading_sd = (perception.direction_sd if perception
                  else lambda _r: agent.movement.heading_noise_sd_rad)
    exact_radius = perception.exact_radius_deg if perception else math.inf
    sees_cursor = perception is None  # full-vision agents react per sample
    react_arc = v * reper_samples * dt  # distance covered in one visuomotor cycle

    pos = p0
    arc = 0.0
    nseg = 0
    k_move = 0
    budget, heading = _plan(agent, pos, rng, first=True)
    max_samples = int(ABORT_AFTER_S * rate)
    stopped = False

    while len(positions) < max_samples:
        nseg += 1
        if nseg == 1:
            target_arc = twitch
        else:
            target_arc = v * dt * (nseg - 1) + phase * min(1.0, max(0.0, (nseg - 2) / 4.0))
        if nseg >= 3 and agent.movement.jitter_frac > 0:
            target_arc += float(rng.normal(0.0, agent.movement.jitter_frac * step))
        seg = max(1e-6, target_arc - arc)
        if k_move > 0 and k_move % reper_samples == look_offset:
            desired = _bearing_to_target(pos) + float(rng.normal(0.0, heading_sd(pos.norm())))
            heading += agent.movement.heading_gain * _wrap_angle(desired - heading)
        nxt = clamp_to_area(
            PointDeg(pos.x + seg * math.cos(heading), pos.y + seg * math.sin(heading)), clip)
        seg_actual = nxt.dist(pos)
        arc += seg_actual
        budget -= seg_actual
        pos = nxt
        positions.append(pos)
        k_move += 1

        if sees_cursor and pos.norm() <= CLICK_RADIUS_DEG:
            stopped = True
            break
        if budget <= 1e-9:
            # Plan complete: a full look. Stopping needs certainty, which
            # only exists when the cursor is visible through the aperture.
            if pos.norm() <= min(exact_radius, CLICK_RADIUS_DEG):
                stopped = True
                break
            budget, heading = _plan(agent, pos, rng)
        elif (k_move % reper_samples == look_offset
              and pos.norm() <= exact_radius
              and budget > react_arc):
            # Mid-plan sighting of the cursor in the aperture: braking takes
            # one visuomotor cycle, so truncate the remaining plan to it.
            budget = react_arc

    if not stopped:
        samples = tuple(PointerSample(_t_ms(k, rate), p) for k, p in enumerate(positions))
        return TrialRecord(spec=spec, pointer_samples=samples, click_events=(),
                           outcome="aborted")

    # The keystroke latency runs from target entry (the start of the final
    # in-target run), which is exactly what the KT metric measures.
    r_target = metrics_cfg.target_radius_deg
    stop_k = len(positions) - 1
    reach_k = stop_k
    while reach_k > 0 and positions[reach_k - 1].norm() <= r_target + 1e-12:
        reach_k -= 1
    key_ms = _positive_normal(rng, agent.latency.keystroke_mean_ms,
                              agent.latency.keystroke_sd_ms)
    click_k = max(stop_k + 1, reach_k + max(1, round(key_ms * rate / 1000.0)))
    positions.extend([pos] * (click_k - stop_k))
    samples = tuple(PointerSample(_t_ms(k, rate), p) for k, p in enumerate(positions))
    click = ClickEvent(t_ms=samples[-1].t_ms, pos=pos, button="left")
    trial = TrialRecord(spec=spec, pointer_samples=samples, click_events=(click,))
    if agent.gaze_script != "none":
        trial = replace(trial, gaze_samples=emit_gaze(agent, trial))
    return trial


def default_clip(agent: AgentModel) -> ClipRegion:
    """Simulated PVL masks everything outside the aperture at the target;
    the other conditions use the bare moving area."""
    if agent.condition == Condition.SP_SIMPVL and agent.perception is not None:
        return ClipRegion(aperture=Aperture(ORIGIN, agent.perception.exact_radius_deg))
    return DEFAULT_CLIP


def emit_gaze(agent: AgentModel, trial: TrialRecord) -> tuple[GazeSample, ...]:
    """Scripted gaze on the pointer sample grid."""
    if agent.gaze_script == "none":
        raise SimulationError("agent has no gaze script")
    samples = trial.pointer_samples
    if agent.gaze_script == "target_locked":
        return tuple(GazeSample(s.t_ms, ORIGIN, True) for s in samples)

    # four_phase_search: proximity spiral (A), wide scan (B), dwell at the
    # cursor (C) during acquisition, then tracking the cursor (D).
    p0 = samples[0].pos
    move_idx = next((i for i, s in enumerate(samples) if s.pos.dist(p0) > 1e-12),
                    len(samples) - 1)
    t_move = max(1.0, float(samples[move_idx].t_ms))
    b_frac = 0.2 + 0.5 * (trial.spec.distance_deg - 3.5) / 10.5
    a_end = 0.2 * t_move
    b_end = (0.2 + b_frac) * t_move
    out = []
    for s in samples:
        t = float(s.t_ms)
        if t >= t_move:
            gaze = s.pos  # tracking the cursor in toward the target
        elif t < a_end:
            u = t / a_end
            r = 1.2 + 2.2 * u
            ang = 4.0 * math.pi * u
            gaze = PointDeg(r * math.cos(ang), r * math.sin(ang))
        elif t < b_end:
            u = (t - a_end) / max(1.0, b_end - a_end)
            r = 4.0 + 8.0 * u
            ang = 3.0 * math.pi * u
            gaze = PointDeg(r * math.cos(ang), r * math.sin(ang))
        else:
            gaze = p0
        out.append(GazeSample(s.t_ms, gaze, True))
    return tuple(out)


def simulate_session(agent: AgentModel, schedule: TrialSchedule,
                     profile: Optional[ParticipantProfile] = None,
                     geometry: ScreenGeometry = DEFAULT_GEOMETRY,
                     clip: Optional[ClipRegion] = None) -> SessionLog:
    if schedule.condition != agent.condition:
        raise SimulationError(
            f"schedule condition {schedule.condition.value} does not match "
            f"agent condition {agent.condition.value}")
    if clip is None:
        clip = default_clip(agent)
    trials = tuple(simulate_trial(agent, spec, geometry, clip) for spec in schedule.trials)
    return SessionLog(
        profile=profile or make_profile(agent),
        geometry=geometry,
        ray_config=DEFAULT_RAY_CONFIG,
        clip=clip,
        schedule_seed=schedule.seed,
        trials=trials,
        created_at=SIM_CREATED_AT,
    )


def simulate_estimation_trial(agent: AgentModel, spec: TrialSpec) -> EstimationResult:
    """One static convergence-point estimation: where the agent would click
    after seeing the frozen ray field through the aperture. Draw order is
    distance then direction."""
    if agent.perception is None:
        raise SimulationError("estimation requires a perception model")
    rng = stream(agent.seed, "estimate", spec.trial_id)
    perception = agent.perception
    d = spec.distance_deg
    d_hat = perception.estimate_mean(d) + float(rng.normal(0.0, perception.noise_sd(d)))
    theta = spec.angle_rad + float(rng.normal(0.0, perception.direction_sd(d)))
    return EstimationResult(
        true_pos=initial_cursor_position(spec),
        estimated_pos=PointDeg(d_hat * math.cos(theta), d_hat * math.sin(theta)),
    )


# ---------------------------------------------------------------------------
# agent parameter files

def agent_to_dict(agent: AgentModel) -> dict:
    d: dict = {
        "condition": agent.condition.value,
        "movement": {
            "velocity_law": {
                "kind": agent.movement.velocity_law.kind,
                "slope": agent.movement.velocity_law.slope,
                "intercept_deg_per_s": agent.movement.velocity_law.intercept_deg_per_s,
                "constant_deg_per_s": agent.movement.velocity_law.constant_deg_per_s,
            },
            "jitter_frac": agent.movement.jitter_frac,
            "heading_gain": agent.movement.heading_gain,
            "heading_noise_sd_rad": agent.movement.heading_noise_sd_rad,
        },
        "latency": {
            "acquisition_mean_ms": agent.latency.acquisition_mean_ms,
            "acquisition_sd_ms": agent.latency.acquisition_sd_ms,
            "keystroke_mean_ms": agent.latency.keystroke_mean_ms,
            "keystroke_sd_ms": agent.latency.keystroke_sd_ms,
            "search": None if agent.latency.search is None else {
                "base_ms": agent.latency.search.base_ms,
                "per_ratio_ms": agent.latency.search.per_ratio_ms,
                "spread_frac": agent.latency.search.spread_frac,
            },
        },
        "perception": None,
        "gaze_script": agent.gaze_script,
        "sample_rate_hz": agent.sample_rate_hz,
        "seed": agent.seed,
        "vf_radius_deg": agent.vf_radius_deg,
    }
    if agent.perception is not None:
        p = agent.perception
        d["perception"] = {
            "distance_bias_slope": p.distance_bias_slope,
            "distance_bias_intercept_deg": p.distance_bias_intercept_deg,
            "distance_noise_anchors": [list(a) for a in p.distance_noise_anchors],
            "direction_noise_sd_rad": p.direction_noise_sd_rad,
            "direction_noise_far_sd_rad": p.direction_noise_far_sd_rad,
            "direction_noise_far_threshold_deg": p.direction_noise_far_threshold_deg,
            "reperception_interval_ms": p.reperception_interval_ms,
            "exact_radius_deg": p.exact_radius_deg,
            "plan_shrink": p.plan_shrink,
            "execution_noise_frac": p.execution_noise_frac,
            "distance_model": p.distance_model,
        }
    return d


def agent_from_dict(d: dict) -> AgentModel:
    vl = d["movement"]["velocity_law"]
    perception = None
    if d.get("perception") is not None:
        p = d["perception"]
        perception = PerceptionModel(
            distance_bias_slope=p["distance_bias_slope"],
            distance_bias_intercept_deg=p["distance_bias_intercept_deg"],
            distance_noise_anchors=tuple(tuple(a) for a in p["distance_noise_anchors"]),
            direction_noise_sd_rad=p["direction_noise_sd_rad"],
            direction_noise_far_sd_rad=p["direction_noise_far_sd_rad"],
            direction_noise_far_threshold_deg=p["direction_noise_far_threshold_deg"],
            reperception_interval_ms=p["reperception_interval_ms"],
            exact_radius_deg=p["exact_radius_deg"],
            plan_shrink=p["plan_shrink"],
            execution_noise_frac=p["execution_noise_frac"],
            distance_model=p.get("distance_model", "bias"),
        )
    search = None
    if d["latency"].get("search") is not None:
        s = d["latency"]["search"]
        search = SearchModel(s["base_ms"], s["per_ratio_ms"], s["spread_frac"])
    return AgentModel(
        condition=Condition.parse(d["condition"]),
        movement=MovementModel(
            velocity_law=VelocityLaw(
                kind=vl["kind"], slope=vl["slope"],
                intercept_deg_per_s=vl["intercept_deg_per_s"],
                constant_deg_per_s=vl["constant_deg_per_s"]),
            jitter_frac=d["movement"]["jitter_frac"],
            heading_gain=d["movement"]["heading_gain"],
            heading_noise_sd_rad=d["movement"]["heading_noise_sd_rad"],
        ),
        latency=LatencyModel(
            acquisition_mean_ms=d["latency"]["acquisition_mean_ms"],
            acquisition_sd_ms=d["latency"]["acquisition_sd_ms"],
            keystroke_mean_ms=d["latency"]["keystroke_mean_ms"],
            keystroke_sd_ms=d["latency"]["keystroke_sd_ms"],
            search=search,
        ),
        perception=perception,
        gaze_script=d.get("gaze_script", "none"),
        sample_rate_hz=d.get("sample_rate_hz", 33),
        seed=d.get("seed", 0),
        vf_radius_deg=d.get("vf_radius_deg"),
    )


def generate_session_name(agent: AgentModel, index: int) -> str:
    return f"{agent.condition.value}-{index:03d}.session.json"


def load_agent(name_or_path: str, seed: int = 0) -> AgentModel:
    """Resolve a preset name or read an agent parameter JSON file."""
    if name_or_path.lower() in PRESET_NAMES:
        return preset(name_or_path, seed=seed)
    path = Path(name_or_path)
    if not path.exists():
        raise SimulationError(
            f"unknown agent {name_or_path!r}: not a preset "
            f"({', '.join(PRESET_NAMES)}) and no such file")
    agent = agent_from_dict(json.loads(path.read_text(encoding="utf-8")))
    return replace(agent, seed=seed) if seed else agent
