from __future__ import annotations

import json
import math

import numpy as np
import pytest

from sunlab.geometry import Condition, PointDeg, generate_schedule
from sunlab.session import (
    PointerSample,
    SessionLog,
    SessionValidationError,
    iter_corpus,
    parse,
    resample_uniform,
    serialize,
    to_dict,
    validate,
)
from sunlab.simulator import make_profile, preset, simulate_session


@pytest.fixture(scope="module")
def sim_log() -> SessionLog:
    agent = preset("sp-simpvl", seed=11)
    schedule = generate_schedule(Condition.SP_SIMPVL, 4)
    return simulate_session(agent, schedule, profile=make_profile(agent, 0))


def test_round_trip_identity(sim_log):
    assert parse(serialize(sim_log)) == sim_log


def test_serialize_is_canonical(sim_log):
    data = serialize(sim_log)
    assert serialize(parse(data)) == data


def test_empty_trials_log_valid(sim_log):
    from dataclasses import replace

    empty = replace(sim_log, trials=())
    validate(empty)
    assert parse(serialize(empty)).trials == ()


def test_missing_version_is_schema_error(sim_log):
    doc = to_dict(sim_log)
    del doc["schema_version"]
    with pytest.raises(SessionValidationError, match="schema_version"):
        parse(json.dumps(doc))


def test_unknown_version_rejected(sim_log):
    doc = to_dict(sim_log)
    doc["schema_version"] = "99"
    with pytest.raises(SessionValidationError, match="unknown schema_version"):
        parse(json.dumps(doc))


def test_malformed_json():
    with pytest.raises(SessionValidationError, match="malformed JSON"):
        parse(b"{nope")


def test_decreasing_times_cite_trial_and_sample(sim_log):
    doc = to_dict(sim_log)
    doc["trials"][3]["pointer_samples"][6][0] = (
        doc["trials"][3]["pointer_samples"][5][0] - 1)
    with pytest.raises(SessionValidationError) as err:
        parse(json.dumps(doc))
    assert "trials[3]" in str(err.value)
    assert "pointer_samples[6]" in str(err.value)


def test_click_off_target(sim_log):
    doc = to_dict(sim_log)
    doc["trials"][0]["click_events"][-1]["pos"] = [0.6, 0.0]
    with pytest.raises(SessionValidationError, match="click off target"):
        parse(json.dumps(doc))


def test_spec_must_match_schedule(sim_log):
    doc = to_dict(sim_log)
    doc["trials"][0]["spec"]["angle_rad"] += 0.2
    with pytest.raises(SessionValidationError, match="schedule"):
        parse(json.dumps(doc))
    doc = to_dict(sim_log)
    doc["schedule_seed"] += 1
    with pytest.raises(SessionValidationError, match="schedule"):
        parse(json.dumps(doc))


def test_first_sample_must_sit_at_initial_position(sim_log):
    doc = to_dict(sim_log)
    doc["trials"][0]["pointer_samples"][0][1] += 0.01
    with pytest.raises(SessionValidationError, match="initial cursor position"):
        parse(json.dumps(doc))


@pytest.mark.parametrize("mutate, needle", [
    (lambda d: d["profile"].__setitem__("vf_radius_deg", -1.0), "vf_radius_deg"),
    (lambda d: d["profile"].__setitem__("kind", "robot"), "kind"),
    (lambda d: d["geometry"].__setitem__("height_px", -4), "positive"),
    (lambda d: d["clip"].__setitem__("moving_area_radius_deg", -2.0), "positive"),
    (lambda d: d["ray_config"].__setitem__("num_rays", 2), "num_rays"),
    (lambda d: d["trials"][0].__setitem__("outcome", "maybe"), "outcome"),
])
def test_single_field_mutations_each_raise(sim_log, mutate, needle):
    doc = to_dict(sim_log)
    mutate(doc)
    with pytest.raises(SessionValidationError, match=needle):
        parse(json.dumps(doc))


def test_corpus_round_trip(tmp_path, sim_log):
    path = tmp_path / "two.sessions.jsonl"
    path.write_bytes(serialize(sim_log) + serialize(sim_log))
    logs = list(iter_corpus(path))
    assert len(logs) == 2 and logs[0] == sim_log


class TestResample:
    def test_on_grid_unchanged(self, sim_log):
        samples = list(sim_log.trials[0].pointer_samples)
        assert resample_uniform(samples, 33) == samples

    def test_midpoint_interpolation(self):
        samples = [PointerSample(0, PointDeg(0.0, 0.0)),
                   PointerSample(60.606, PointDeg(1.0, 0.0))]
        out = resample_uniform(samples, 33)
        assert [s.t_ms for s in out] == [0, 30, 60.606]
        assert out[1].pos.x == pytest.approx(0.5, abs=1e-6)
        assert out[1].pos.y == 0.0

    def test_needs_two_samples(self):
        with pytest.raises(SessionValidationError):
            resample_uniform([PointerSample(0, PointDeg(0, 0))], 33)

    def test_interpolation_error_against_analytic_path(self):
        # 12 deg/s travel along a circle of radius 3, captured at 120 Hz
        radius, speed = 3.0, 12.0
        omega = speed / radius

        def pos(t_s: float) -> tuple[float, float]:
            return (radius * math.cos(omega * t_s), radius * math.sin(omega * t_s))

        capture = []
        for k in range(241):  # 2 s at 120 Hz
            t_s = k / 120.0
            x, y = pos(t_s)
            capture.append(PointerSample(round(t_s * 1000), PointDeg(x, y)))
        out = resample_uniform(capture, 33)
        worst = 0.0
        for s in out:
            x, y = pos(s.t_ms / 1000.0)
            worst = max(worst, math.hypot(s.pos.x - x, s.pos.y - y))
        assert worst < 0.02

    def test_path_length_preserved_within_one_percent(self):
        # smooth low-frequency motion captured at twice the target rate
        def pos(t_s: float) -> tuple[float, float]:
            return (6.0 * math.sin(2 * math.pi * 1.1 * t_s),
                    4.0 * math.cos(2 * math.pi * 0.7 * t_s))

        samples = []
        for k in range(200):
            t_s = k * 0.015  # ~66 Hz
            x, y = pos(t_s)
            samples.append(PointerSample(round(t_s * 1000), PointDeg(x, y)))

        def length(seq):
            return sum(seq[i + 1].pos.dist(seq[i].pos) for i in range(len(seq) - 1))

        out = resample_uniform(samples, 33)
        assert length(out) == pytest.approx(length(samples), rel=0.01)
