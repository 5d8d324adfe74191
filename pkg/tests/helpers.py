"""Shared builders for hand-constructed and fuzzed trial logs."""
from __future__ import annotations

import math

import numpy as np

from sunlab.geometry import Condition, PointDeg, TrialSpec, generate_schedule
from sunlab.session import ClickEvent, PointerSample, TrialRecord


def spec_for(distance: float, angle: float = 0.0,
             condition: Condition = Condition.CP_FVF, seed: int = 7) -> TrialSpec:
    """A TrialSpec whose (distance, angle) we control, with a real schedule
    seed so the record can still be embedded in ad-hoc tests."""
    return TrialSpec(trial_id=0, condition=condition, distance_deg=distance,
                     angle_rad=angle % (2 * math.pi), seed=seed)


def trial_from_path(points: list[tuple[int, float, float]],
                    distance: float = 7.0, angle: float = 0.0,
                    click_t: int | None = None) -> TrialRecord:
    """Build a completed trial from explicit (t_ms, x, y) rows. The click
    lands at the final sample unless click_t overrides it."""
    samples = tuple(PointerSample(t, PointDeg(x, y)) for t, x, y in points)
    t_click = click_t if click_t is not None else points[-1][0]
    return TrialRecord(
        spec=spec_for(distance, angle),
        pointer_samples=samples,
        click_events=(ClickEvent(t_click, samples[-1].pos, "left"),),
    )


def straight_trial(distance: float = 7.0, speed: float = 12.0,
                   rate: int = 33, kt_ms: int = 500) -> TrialRecord:
    """Constant-speed, straight analytic path from (distance, 0) to the
    target with a click kt_ms after the first in-target sample."""
    samples: list[tuple[int, float, float]] = []
    k = 0
    reach_t = None
    while True:
        t_real = k / rate
        t_ms = (2000 * k + rate) // (2 * rate)
        x = max(0.0, distance - speed * t_real)
        samples.append((t_ms, x, 0.0))
        if x <= 0.5 and reach_t is None:
            reach_t = t_ms
            break
        k += 1
    click_t = reach_t + kt_ms
    samples.append((click_t, samples[-1][1], 0.0))
    return trial_from_path(samples, distance=distance, click_t=click_t)


def fuzz_trial(rng: np.random.Generator) -> TrialRecord:
    """A random valid-shaped completed trial: integer times, start at the
    spec position, a wandering (or occasionally dead-straight) path, and a
    final click inside the target. Straight variants land just inside the
    target boundary, probing the trajectory-excess lower bound."""
    distance = float(rng.choice([3.5, 7.0, 10.5, 14.0]))
    angle = float(rng.uniform(0, 2 * math.pi))
    start = (distance * math.cos(angle), distance * math.sin(angle))
    t = 0
    points = [(0, start[0], start[1])]
    if rng.uniform() < 0.2:
        # direct approach stopping at a radius close to the 0.5 deg edge
        r_land = float(rng.uniform(0.05, 0.49))
        for frac in (0.5, 1.0):
            t += int(rng.integers(10, 60))
            k = 1.0 - frac * (distance - r_land) / distance
            points.append((t, start[0] * k, start[1] * k))
    else:
        pos = np.array(start)
        for _ in range(int(rng.integers(3, 60))):
            t += int(rng.integers(10, 60))
            pos = pos + rng.normal(0.0, 1.2, size=2)
            pos = np.clip(pos, -14.9, 14.9)
            points.append((t, float(pos[0]), float(pos[1])))
        t += int(rng.integers(10, 60))
        end = rng.normal(0.0, 0.15, size=2)
        while math.hypot(*end) > 0.45:
            end = rng.normal(0.0, 0.15, size=2)
        points.append((t, float(end[0]), float(end[1])))
    t += int(rng.integers(10, 400))
    points.append((t, points[-1][1], points[-1][2]))
    return trial_from_path(points, distance=distance, angle=angle, click_t=t)


def overshoot_oracle(trial: TrialRecord, target_radius: float = 0.5) -> float:
    """Independent half-space oracle: build the dividing line through the
    target center explicitly, rotate each segment endpoint into a frame
    whose +x axis points at the initial cursor, and count segments whose
    endpoint has negative x. Evaluated over the same span as path_length
    (trial start through the last target reach)."""
    samples = trial.pointer_samples
    click_t = trial.click_events[-1].t_ms
    reach = None
    inside_prev = False
    for i, s in enumerate(samples):
        if s.t_ms > click_t:
            break
        inside = s.pos.norm() <= target_radius + 1e-12
        if inside and not inside_prev:
            reach = i
        inside_prev = inside
    assert reach is not None
    theta = math.atan2(samples[0].pos.y, samples[0].pos.x)
    cos_t, sin_t = math.cos(-theta), math.sin(-theta)
    total = 0.0
    for i in range(reach):
        b = samples[i + 1].pos
        bx = b.x * cos_t - b.y * sin_t
        if bx < 0.0:
            total += samples[i].pos.dist(b)
    return total


def schedule_trial(condition: Condition, seed: int, index: int = 0):
    """A (spec, schedule) pair drawn from a real generated schedule."""
    schedule = generate_schedule(condition, seed)
    return schedule.trials[index], schedule
