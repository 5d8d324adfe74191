"""Session log data model, JSON serialization, and validation.

One session = one participant running one 24-trial exercise. Logs are the
single exchange format between the UI, the simulator, and the analysis, so
parsing is strict: the first violated invariant is reported with its JSON
path. Positions are stored in degrees; the screen geometry travels with the
log for pixel-threshold conversions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .geometry import (
    Aperture,
    ClipRegion,
    Condition,
    GeometryError,
    PointDeg,
    RayConfig,
    ScreenGeometry,
    TARGET_RADIUS_DEG,
    TrialSpec,
    generate_schedule,
    initial_cursor_position,
)

SCHEMA_VERSION = "1"
LATERALITIES = ("right", "left", "ambidextrous", "unknown")
VISION_DISORDERS = ("rp", "gl", "none", "other")
PARTICIPANT_KINDS = ("human", "synthetic")
OUTCOMES = ("completed", "aborted")
BUTTONS = ("left", "right", "middle")


class SessionValidationError(ValueError):
    """Invalid session document; `path` locates the first violation."""

    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.message = message
        self.path = path


@dataclass(frozen=True)
class ParticipantProfile:
    participant_id: str
    kind: str = "human"
    vf_radius_deg: Optional[float] = None
    acuity: Optional[float] = None
    laterality: str = "unknown"
    vision_disorder: str = "none"
    self_rated_mouse_skill: Optional[float] = None


@dataclass(frozen=True)
class PointerSample:
    t_ms: float
    pos: PointDeg


@dataclass(frozen=True)
class GazeSample:
    t_ms: float
    pos: PointDeg
    valid: bool = True


@dataclass(frozen=True)
class ClickEvent:
    t_ms: float
    pos: PointDeg
    button: str = "left"


@dataclass(frozen=True)
class TrialRecord:
    spec: TrialSpec
    pointer_samples: tuple[PointerSample, ...]
    click_events: tuple[ClickEvent, ...]
    gaze_samples: Optional[tuple[GazeSample, ...]] = None
    outcome: str = "completed"


@dataclass(frozen=True)
class SessionLog:
    profile: ParticipantProfile
    geometry: ScreenGeometry
    ray_config: RayConfig
    clip: ClipRegion
    schedule_seed: int
    trials: tuple[TrialRecord, ...]
    created_at: str = "1970-01-01T00:00:00Z"
    schema_version: str = SCHEMA_VERSION

    def condition(self) -> Optional[Condition]:
        return self.trials[0].spec.condition if self.trials else None


# ---------------------------------------------------------------------------
# validation

def _check(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise SessionValidationError(message, path)


def _is_num(v: object) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def validate(log: SessionLog) -> None:
    """Raise SessionValidationError at the first violated invariant."""
    _check(log.schema_version == SCHEMA_VERSION,
           f"unknown schema_version {log.schema_version!r}", "$.schema_version")

    p = log.profile
    _check(bool(p.participant_id), "participant_id must be non-empty", "$.profile.participant_id")
    _check(p.kind in PARTICIPANT_KINDS, f"kind must be one of {PARTICIPANT_KINDS}", "$.profile.kind")
    if p.vf_radius_deg is not None:
        _check(0.0 < p.vf_radius_deg <= 90.0,
               "vf_radius_deg must lie in (0, 90]", "$.profile.vf_radius_deg")
    if p.acuity is not None:
        _check(0.0 < p.acuity <= 2.0, "acuity must lie in (0, 2]", "$.profile.acuity")
    _check(p.laterality in LATERALITIES,
           f"laterality must be one of {LATERALITIES}", "$.profile.laterality")
    _check(p.vision_disorder in VISION_DISORDERS,
           f"vision_disorder must be one of {VISION_DISORDERS}", "$.profile.vision_disorder")
    if p.self_rated_mouse_skill is not None:
        _check(0.0 <= p.self_rated_mouse_skill <= 10.0,
               "self_rated_mouse_skill must lie in [0, 10]", "$.profile.self_rated_mouse_skill")

    conditions = {t.spec.condition for t in log.trials}
    _check(len(conditions) <= 1, "all trials must share one condition", "$.trials")
    schedule = None
    if log.trials:
        schedule = generate_schedule(next(iter(conditions)), log.schedule_seed)
        _check(len(log.trials) <= len(schedule.trials),
               f"more trials than the {len(schedule.trials)}-trial schedule", "$.trials")

    for i, trial in enumerate(log.trials):
        tp = f"$.trials[{i}]"
        spec = trial.spec
        planned = schedule.trials[i]
        _check(spec.trial_id == planned.trial_id
               and spec.distance_deg == planned.distance_deg
               and abs(spec.angle_rad - planned.angle_rad) <= 1e-9
               and spec.seed == planned.seed,
               "trial spec does not match the schedule regenerated from "
               f"(condition, schedule_seed={log.schedule_seed})", f"{tp}.spec")
        _check(trial.outcome in OUTCOMES, f"outcome must be one of {OUTCOMES}", f"{tp}.outcome")
        _check(len(trial.pointer_samples) >= 1, "trial has no pointer samples",
               f"{tp}.pointer_samples")

        first = trial.pointer_samples[0]
        _check(first.t_ms == 0, "first pointer sample must be at t=0",
               f"{tp}.pointer_samples[0].t_ms")
        start = initial_cursor_position(spec)
        _check(first.pos.dist(start) <= 1e-6,
               "first pointer sample must equal the spec's initial cursor position",
               f"{tp}.pointer_samples[0].pos")
        prev = None
        for j, s in enumerate(trial.pointer_samples):
            sp = f"{tp}.pointer_samples[{j}]"
            _check(_is_num(s.t_ms) and s.t_ms >= 0, "t_ms must be a finite number >= 0",
                   f"{sp}.t_ms")
            if prev is not None:
                _check(s.t_ms > prev, "pointer sample times must strictly increase",
                       f"{sp}.t_ms")
            prev = s.t_ms
        if trial.gaze_samples is not None:
            prev = None
            for j, gs in enumerate(trial.gaze_samples):
                gp = f"{tp}.gaze_samples[{j}]"
                _check(_is_num(gs.t_ms) and gs.t_ms >= 0, "t_ms must be a finite number >= 0",
                       f"{gp}.t_ms")
                if prev is not None:
                    _check(gs.t_ms > prev, "gaze sample times must strictly increase",
                           f"{gp}.t_ms")
                prev = gs.t_ms
        for j, c in enumerate(trial.click_events):
            _check(_is_num(c.t_ms) and c.t_ms >= 0, "t_ms must be a finite number >= 0",
                   f"{tp}.click_events[{j}].t_ms")
            _check(c.button in BUTTONS, f"button must be one of {BUTTONS}",
                   f"{tp}.click_events[{j}].button")
        if trial.outcome == "completed":
            _check(len(trial.click_events) >= 1, "completed trial has no click",
                   f"{tp}.click_events")
            final = trial.click_events[-1]
            _check(final.pos.norm() <= TARGET_RADIUS_DEG + 1e-9,
                   f"final click at radius {final.pos.norm():.4f} deg lies outside the "
                   f"{TARGET_RADIUS_DEG} deg target (click off target)",
                   f"{tp}.click_events[{len(trial.click_events) - 1}].pos")


# ---------------------------------------------------------------------------
# serialization

def _profile_dict(p: ParticipantProfile) -> dict:
    return {
        "participant_id": p.participant_id,
        "kind": p.kind,
        "vf_radius_deg": p.vf_radius_deg,
        "acuity": p.acuity,
        "laterality": p.laterality,
        "vision_disorder": p.vision_disorder,
        "self_rated_mouse_skill": p.self_rated_mouse_skill,
    }


def _geometry_dict(g: ScreenGeometry) -> dict:
    return {
        "width_px": g.width_px,
        "height_px": g.height_px,
        "width_cm": g.width_cm,
        "height_cm": g.height_cm,
        "viewing_distance_cm": g.viewing_distance_cm,
        "half_height_deg": g.half_height_deg,
    }


def _ray_config_dict(rc: RayConfig) -> dict:
    return {
        "num_rays": rc.num_rays,
        "start_offset_deg": rc.start_offset_deg,
        "outer_color": list(rc.outer_color),
        "inner_color": list(rc.inner_color),
        "outer_width_px": rc.outer_width_px,
        "inner_width_px": rc.inner_width_px,
        "opacity": rc.opacity,
        "max_length_deg": rc.max_length_deg,
    }


def _clip_dict(c: ClipRegion) -> dict:
    return {
        "moving_area_radius_deg": c.moving_area_radius_deg,
        "aperture": None if c.aperture is None else {
            "center": [c.aperture.center.x, c.aperture.center.y],
            "radius_deg": c.aperture.radius_deg,
        },
    }


def _trial_dict(t: TrialRecord) -> dict:
    d = {
        "spec": {
            "trial_id": t.spec.trial_id,
            "condition": t.spec.condition.value,
            "distance_deg": t.spec.distance_deg,
            "angle_rad": t.spec.angle_rad,
            "seed": t.spec.seed,
        },
        "outcome": t.outcome,
        "pointer_samples": [[s.t_ms, s.pos.x, s.pos.y] for s in t.pointer_samples],
        "click_events": [
            {"t_ms": c.t_ms, "pos": [c.pos.x, c.pos.y], "button": c.button}
            for c in t.click_events
        ],
        "gaze_samples": None if t.gaze_samples is None else [
            [s.t_ms, s.pos.x, s.pos.y, s.valid] for s in t.gaze_samples
        ],
    }
    return d


def to_dict(log: SessionLog) -> dict:
    return {
        "schema_version": log.schema_version,
        "created_at": log.created_at,
        "profile": _profile_dict(log.profile),
        "geometry": _geometry_dict(log.geometry),
        "ray_config": _ray_config_dict(log.ray_config),
        "clip": _clip_dict(log.clip),
        "schedule_seed": log.schedule_seed,
        "trials": [_trial_dict(t) for t in log.trials],
    }


def serialize(log: SessionLog) -> bytes:
    """Canonical UTF-8 JSON (fixed key order, lossless floats, one line)."""
    validate(log)
    text = json.dumps(to_dict(log), ensure_ascii=False, allow_nan=False,
                      separators=(",", ":"))
    return (text + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# parsing

def _want(obj: dict, key: str, path: str) -> object:
    if not isinstance(obj, dict):
        raise SessionValidationError("expected a JSON object", path)
    if key not in obj:
        raise SessionValidationError(f"missing required field {key!r}", path)
    return obj[key]


def _num(v: object, path: str, *, optional: bool = False) -> Optional[float]:
    if v is None and optional:
        return None
    if not _is_num(v):
        raise SessionValidationError("expected a finite number", path)
    return float(v)


def _int(v: object, path: str) -> int:
    # Seeds are full-width integers; routing them through float would lose
    # precision beyond 2**53.
    if isinstance(v, bool) or not isinstance(v, int):
        raise SessionValidationError("expected an integer", path)
    return v


def _time(v: object, path: str) -> float:
    # Keep the JSON numeric type so canonical documents re-serialize
    # byte-identically (integer milliseconds stay integers).
    if not _is_num(v):
        raise SessionValidationError("expected a finite number", path)
    return v  # type: ignore[return-value]


def _point(v: object, path: str) -> PointDeg:
    if not (isinstance(v, list) and len(v) == 2 and all(_is_num(c) for c in v)):
        raise SessionValidationError("expected [x, y] with finite numbers", path)
    try:
        return PointDeg(float(v[0]), float(v[1]))
    except GeometryError as exc:
        raise SessionValidationError(str(exc), path) from None


def _parse_profile(d: object, path: str) -> ParticipantProfile:
    pid = _want(d, "participant_id", path)
    if not isinstance(pid, str):
        raise SessionValidationError("participant_id must be a string", f"{path}.participant_id")
    return ParticipantProfile(
        participant_id=pid,
        kind=str(d.get("kind", "human")),
        vf_radius_deg=_num(d.get("vf_radius_deg"), f"{path}.vf_radius_deg", optional=True),
        acuity=_num(d.get("acuity"), f"{path}.acuity", optional=True),
        laterality=str(d.get("laterality", "unknown")),
        vision_disorder=str(d.get("vision_disorder", "none")),
        self_rated_mouse_skill=_num(d.get("self_rated_mouse_skill"),
                                    f"{path}.self_rated_mouse_skill", optional=True),
    )


def _parse_geometry(d: object, path: str) -> ScreenGeometry:
    try:
        return ScreenGeometry(
            width_px=int(_num(_want(d, "width_px", path), f"{path}.width_px")),
            height_px=int(_num(_want(d, "height_px", path), f"{path}.height_px")),
            width_cm=_num(_want(d, "width_cm", path), f"{path}.width_cm"),
            height_cm=_num(_want(d, "height_cm", path), f"{path}.height_cm"),
            viewing_distance_cm=_num(_want(d, "viewing_distance_cm", path),
                                     f"{path}.viewing_distance_cm"),
            half_height_deg=_num(d.get("half_height_deg", 15.0), f"{path}.half_height_deg"),
        )
    except GeometryError as exc:
        raise SessionValidationError(str(exc), path) from None


def _parse_ray_config(d: object, path: str) -> RayConfig:
    def color(key: str) -> tuple[int, int, int, int]:
        v = d.get(key, [0, 0, 0, 255])
        if not (isinstance(v, list) and len(v) == 4):
            raise SessionValidationError("expected an RGBA list of 4 ints", f"{path}.{key}")
        return tuple(int(c) for c in v)  # type: ignore[return-value]

    max_len = d.get("max_length_deg")
    try:
        return RayConfig(
            num_rays=int(_num(_want(d, "num_rays", path), f"{path}.num_rays")),
            start_offset_deg=_num(_want(d, "start_offset_deg", path),
                                  f"{path}.start_offset_deg"),
            outer_color=color("outer_color"),
            inner_color=color("inner_color"),
            outer_width_px=int(_num(d.get("outer_width_px", 2), f"{path}.outer_width_px")),
            inner_width_px=int(_num(d.get("inner_width_px", 1), f"{path}.inner_width_px")),
            opacity=_num(d.get("opacity", 1.0), f"{path}.opacity"),
            max_length_deg=None if max_len is None else _num(max_len, f"{path}.max_length_deg"),
        )
    except GeometryError as exc:
        raise SessionValidationError(str(exc), path) from None


def _parse_clip(d: object, path: str) -> ClipRegion:
    ap = d.get("aperture")
    try:
        aperture = None
        if ap is not None:
            aperture = Aperture(
                center=_point(_want(ap, "center", f"{path}.aperture"), f"{path}.aperture.center"),
                radius_deg=_num(_want(ap, "radius_deg", f"{path}.aperture"),
                                f"{path}.aperture.radius_deg"),
            )
        return ClipRegion(
            moving_area_radius_deg=_num(_want(d, "moving_area_radius_deg", path),
                                        f"{path}.moving_area_radius_deg"),
            aperture=aperture,
        )
    except GeometryError as exc:
        raise SessionValidationError(str(exc), path) from None


def _parse_spec(d: object, path: str) -> TrialSpec:
    try:
        condition = Condition.parse(str(_want(d, "condition", path)))
    except ValueError as exc:
        raise SessionValidationError(str(exc), f"{path}.condition") from None
    try:
        return TrialSpec(
            trial_id=_int(_want(d, "trial_id", path), f"{path}.trial_id"),
            condition=condition,
            distance_deg=_num(_want(d, "distance_deg", path), f"{path}.distance_deg"),
            angle_rad=_num(_want(d, "angle_rad", path), f"{path}.angle_rad"),
            seed=_int(_want(d, "seed", path), f"{path}.seed"),
        )
    except GeometryError as exc:
        raise SessionValidationError(str(exc), path) from None


def _parse_trial(d: object, path: str) -> TrialRecord:
    spec = _parse_spec(_want(d, "spec", path), f"{path}.spec")
    raw_samples = _want(d, "pointer_samples", path)
    if not isinstance(raw_samples, list):
        raise SessionValidationError("expected a list", f"{path}.pointer_samples")
    samples = []
    for j, row in enumerate(raw_samples):
        sp = f"{path}.pointer_samples[{j}]"
        if not (isinstance(row, list) and len(row) == 3):
            raise SessionValidationError("expected [t_ms, x, y]", sp)
        samples.append(PointerSample(t_ms=_time(row[0], f"{sp}[0]"),
                                     pos=_point(row[1:3], sp)))
    gaze = None
    raw_gaze = d.get("gaze_samples")
    if raw_gaze is not None:
        if not isinstance(raw_gaze, list):
            raise SessionValidationError("expected a list or null", f"{path}.gaze_samples")
        gaze = []
        for j, row in enumerate(raw_gaze):
            gp = f"{path}.gaze_samples[{j}]"
            if not (isinstance(row, list) and len(row) == 4 and isinstance(row[3], bool)):
                raise SessionValidationError("expected [t_ms, x, y, valid]", gp)
            gaze.append(GazeSample(t_ms=_time(row[0], f"{gp}[0]"),
                                   pos=_point(row[1:3], gp), valid=row[3]))
    raw_clicks = _want(d, "click_events", path)
    if not isinstance(raw_clicks, list):
        raise SessionValidationError("expected a list", f"{path}.click_events")
    clicks = []
    for j, row in enumerate(raw_clicks):
        cp = f"{path}.click_events[{j}]"
        clicks.append(ClickEvent(
            t_ms=_time(_want(row, "t_ms", cp), f"{cp}.t_ms"),
            pos=_point(_want(row, "pos", cp), f"{cp}.pos"),
            button=str(row.get("button", "left")),
        ))
    return TrialRecord(
        spec=spec,
        pointer_samples=tuple(samples),
        click_events=tuple(clicks),
        gaze_samples=None if gaze is None else tuple(gaze),
        outcome=str(_want(d, "outcome", path)),
    )


def parse(data: bytes | str) -> SessionLog:
    """Parse and fully validate a session document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SessionValidationError(f"malformed JSON: {exc}", "$") from None
    if not isinstance(doc, dict):
        raise SessionValidationError("top-level value must be an object", "$")
    if "schema_version" not in doc:
        raise SessionValidationError("missing required field 'schema_version'", "$")
    version = doc["schema_version"]
    if version != SCHEMA_VERSION:
        raise SessionValidationError(f"unknown schema_version {version!r}", "$.schema_version")

    trials_raw = _want(doc, "trials", "$")
    if not isinstance(trials_raw, list):
        raise SessionValidationError("expected a list", "$.trials")
    log = SessionLog(
        schema_version=version,
        created_at=str(doc.get("created_at", "1970-01-01T00:00:00Z")),
        profile=_parse_profile(_want(doc, "profile", "$"), "$.profile"),
        geometry=_parse_geometry(_want(doc, "geometry", "$"), "$.geometry"),
        ray_config=_parse_ray_config(_want(doc, "ray_config", "$"), "$.ray_config"),
        clip=_parse_clip(_want(doc, "clip", "$"), "$.clip"),
        schedule_seed=_int(_want(doc, "schedule_seed", "$"), "$.schedule_seed"),
        trials=tuple(_parse_trial(t, f"$.trials[{i}]") for i, t in enumerate(trials_raw)),
    )
    validate(log)
    return log


# ---------------------------------------------------------------------------
# resampling and file helpers

def resample_uniform(samples: Sequence[PointerSample], rate_hz: int = 33) -> list[PointerSample]:
    """Linearly interpolate onto the uniform rate grid.

    Stored timestamps are drift-free integer milliseconds (round half up of
    k*1000/rate); positions are taken at the exact grid instants. Inputs
    already on that grid are returned unchanged, and the final input sample
    is preserved when it falls off-grid.
    """
    if len(samples) < 2:
        raise SessionValidationError("resampling needs at least 2 samples")
    times = [float(s.t_ms) for s in samples]
    t_last = times[-1]

    def grid_ms(k: int) -> int:
        return (2000 * k + rate_hz) // (2 * rate_hz)

    n_grid = int(math.floor(t_last * rate_hz / 1000.0 + 1e-9)) + 1
    on_grid = len(samples) == n_grid and all(
        float(s.t_ms) == grid_ms(k) for k, s in enumerate(samples))
    if on_grid:
        return list(samples)

    xs = [s.pos.x for s in samples]
    ys = [s.pos.y for s in samples]

    def interp(t: float) -> PointDeg:
        if t <= times[0]:
            return samples[0].pos
        if t >= times[-1]:
            return samples[-1].pos
        lo, hi = 0, len(times) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if times[mid] <= t:
                lo = mid
            else:
                hi = mid
        w = (t - times[lo]) / (times[hi] - times[lo])
        return PointDeg(xs[lo] + w * (xs[hi] - xs[lo]), ys[lo] + w * (ys[hi] - ys[lo]))

    out: list[PointerSample] = []
    for k in range(n_grid):
        t_real = k * 1000.0 / rate_hz
        out.append(PointerSample(t_ms=grid_ms(k), pos=interp(t_real)))
    if out[-1].t_ms < t_last:
        out.append(samples[-1])
    return out


def save_session(log: SessionLog, path: Path | str) -> Path:
    path = Path(path)
    path.write_bytes(serialize(log))
    return path


def load_session(path: Path | str) -> SessionLog:
    return parse(Path(path).read_bytes())


def iter_corpus(path: Path | str) -> Iterator[SessionLog]:
    """Yield sessions from a newline-delimited .sessions.jsonl corpus."""
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield parse(line)
