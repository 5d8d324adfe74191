from __future__ import annotations

import json
import math
import statistics as st
from dataclasses import replace

import pytest

from sunlab.geometry import Condition, DEFAULT_GEOMETRY, generate_schedule
from sunlab.metrics import MetricsConfig, compute_trial_metrics, gaze_profile
from sunlab.rng import derive_seed
from sunlab.session import parse, serialize, validate
from sunlab.simulator import (
    AgentModel,
    LatencyModel,
    MovementModel,
    PerceptionModel,
    SimulationError,
    VelocityLaw,
    agent_from_dict,
    agent_to_dict,
    emit_gaze,
    load_agent,
    make_profile,
    preset,
    simulate_estimation_trial,
    simulate_session,
    simulate_trial,
)

CFG = MetricsConfig()


def _quiet_cp_agent(seed: int = 0) -> AgentModel:
    return AgentModel(
        condition=Condition.CP_FVF,
        movement=MovementModel(VelocityLaw("affine", 0.71, 13.0),
                               jitter_frac=0.0, heading_noise_sd_rad=0.0),
        latency=LatencyModel(320.0, 60.0, 410.0, 80.0),
        seed=seed,
    )


def _near_noiseless_perception(**overrides) -> PerceptionModel:
    params = dict(
        distance_noise_anchors=((3.5, 1e-9), (7.0, 1e-9), (10.5, 1e-9), (14.0, 1e-9)),
        direction_noise_sd_rad=1e-12,
        direction_noise_far_sd_rad=1e-12,
    )
    params.update(overrides)
    return PerceptionModel(**params)


class TestDeterminism:
    def test_same_seed_byte_identical(self):
        schedule = generate_schedule(Condition.SP_SIMPVL, 21)
        a = simulate_session(preset("sp-simpvl", seed=5), schedule)
        b = simulate_session(preset("sp-simpvl", seed=5), schedule)
        assert serialize(a) == serialize(b)

    def test_different_seed_differs(self):
        schedule = generate_schedule(Condition.SP_SIMPVL, 21)
        a = simulate_session(preset("sp-simpvl", seed=5), schedule)
        b = simulate_session(preset("sp-simpvl", seed=6), schedule)
        assert serialize(a) != serialize(b)

    def test_gaze_does_not_perturb_pointer_stream(self):
        schedule = generate_schedule(Condition.SP_SIMPVL, 21)
        agent = preset("sp-simpvl", seed=5)
        with_gaze = simulate_trial(agent, schedule.trials[0])
        muted = replace(agent, gaze_script="none")
        without = simulate_trial(muted, schedule.trials[0])
        assert with_gaze.pointer_samples == without.pointer_samples


class TestTrialShape:
    def test_sessions_validate_and_round_trip(self):
        for name in ("cp-fvf", "sp-simpvl", "sp-pvl", "cp-pvl"):
            agent = preset(name, seed=3)
            schedule = generate_schedule(agent.condition, 17)
            log = simulate_session(agent, schedule, profile=make_profile(agent, 0))
            assert len(log.trials) == 24
            assert all(t.outcome == "completed" for t in log.trials)
            assert parse(serialize(log)) == log

    def test_sample_grid_is_drift_free(self):
        schedule = generate_schedule(Condition.CP_FVF, 8)
        trial = simulate_trial(preset("cp-fvf", seed=1), schedule.trials[0])
        times = [s.t_ms for s in trial.pointer_samples]
        assert times[0] == 0
        assert all(isinstance(t, int) for t in times)
        diffs = {b - a for a, b in zip(times, times[1:])}
        assert diffs <= {30, 31}
        for k, t in enumerate(times):
            assert t == (2000 * k + 33) // 66
        # a full minute lands exactly on 60 s
        assert (2000 * (33 * 60) + 33) // 66 == 60_000

    def test_click_inside_target(self):
        schedule = generate_schedule(Condition.SP_SIMPVL, 9)
        for spec in schedule.trials[:6]:
            trial = simulate_trial(preset("sp-simpvl", seed=2), spec)
            assert trial.click_events[-1].pos.norm() <= 0.5

    def test_condition_mismatch_rejected(self):
        schedule = generate_schedule(Condition.CP_FVF, 1)
        with pytest.raises(SimulationError, match="does not match"):
            simulate_session(preset("sp-simpvl"), schedule)

    def test_model_pairing_enforced(self):
        with pytest.raises(SimulationError, match="perception"):
            AgentModel(condition=Condition.SP_SIMPVL,
                       movement=MovementModel(VelocityLaw("constant")),
                       latency=LatencyModel(390, 60, 500, 80))
        with pytest.raises(SimulationError, match="directly"):
            AgentModel(condition=Condition.CP_FVF,
                       movement=MovementModel(VelocityLaw("affine")),
                       latency=LatencyModel(320, 60, 410, 80),
                       perception=PerceptionModel())


class TestZeroNoiseKinematics:
    def test_straight_path_within_one_sample_step(self):
        schedule = generate_schedule(Condition.CP_FVF, 30)
        for spec in schedule.trials[:8]:
            trial = simulate_trial(_quiet_cp_agent(seed=4), spec)
            a = trial.pointer_samples[0].pos
            for s in trial.pointer_samples:
                # perpendicular distance from the straight start->target line
                perp = abs(a.x * s.pos.y - a.y * s.pos.x) / a.norm()
                assert perp < 1e-9

    def test_movement_time_matches_model_law(self):
        schedule = generate_schedule(Condition.CP_FVF, 30)
        spec = next(t for t in schedule.trials if t.distance_deg == 7.0)
        trial = simulate_trial(_quiet_cp_agent(seed=4), spec)
        _, mt, _, _ = __import__("sunlab.metrics", fromlist=["decompose_times"]).decompose_times(
            trial, DEFAULT_GEOMETRY, CFG)
        expected = (7.0 - 0.5) / (0.71 * 7.0 + 13.0) * 1000.0
        assert mt == pytest.approx(expected, abs=2 * 1000 / 33)

    def test_measured_velocity_equals_commanded(self):
        # per-trial values carry the zero-mean arc-phase dither (at most
        # half a step over MT); per-distance means recover the law tightly
        by_distance: dict[float, list[float]] = {}
        for seed in range(10):
            schedule = generate_schedule(Condition.CP_FVF, 30 + seed)
            for spec in schedule.trials:
                trial = simulate_trial(_quiet_cp_agent(seed=seed), spec)
                m = compute_trial_metrics(trial, DEFAULT_GEOMETRY, CFG)
                v = 0.71 * spec.distance_deg + 13.0
                assert m.mean_velocity_deg_per_s == pytest.approx(v, rel=0.10)
                by_distance.setdefault(spec.distance_deg, []).append(
                    m.mean_velocity_deg_per_s)
        for d, values in by_distance.items():
            assert st.mean(values) == pytest.approx(0.71 * d + 13.0, rel=0.01)


class TestEstimation:
    def test_noise_free_bias_values(self):
        agent = AgentModel(
            condition=Condition.ESTIMATION,
            movement=MovementModel(VelocityLaw("constant")),
            latency=LatencyModel(390, 60, 500, 80),
            perception=_near_noiseless_perception(),
            seed=1,
        )
        schedule = generate_schedule(Condition.ESTIMATION, 2)
        for spec, want in ((next(t for t in schedule.trials if t.distance_deg == 14.0), 10.37),
                           (next(t for t in schedule.trials if t.distance_deg == 3.5), 4.805)):
            result = simulate_estimation_trial(agent, spec)
            assert result.true_pos.norm() == pytest.approx(spec.distance_deg, abs=1e-9)
            assert result.estimated_pos.norm() == pytest.approx(want, abs=1e-6)

    def test_monte_carlo_spread_matches_model(self):
        agent = replace(preset("sp-simpvl", seed=11), condition=Condition.ESTIMATION)
        schedule = generate_schedule(Condition.ESTIMATION, 3)
        spec = next(t for t in schedule.trials if t.distance_deg == 7.0)
        dists = []
        for i in range(10_000):
            result = simulate_estimation_trial(replace(agent, seed=i), spec)
            dists.append(result.estimated_pos.norm())
        assert st.mean(dists) == pytest.approx(7.0 - 0.47 * 7.0 + 2.95, abs=3 * 2.4 / 100)
        assert st.stdev(dists) == pytest.approx(2.4, abs=0.1)

    def test_requires_perception(self):
        schedule = generate_schedule(Condition.ESTIMATION, 2)
        with pytest.raises(SimulationError):
            simulate_estimation_trial(_quiet_cp_agent(), schedule.trials[0])


@pytest.fixture(scope="module")
def sp_rows():
    rows = []
    for i in range(12):
        agent = preset("sp-simpvl", seed=derive_seed(77, "agent", i))
        schedule = generate_schedule(Condition.SP_SIMPVL, derive_seed(77, "sched", i))
        log = simulate_session(agent, schedule)
        for trial in log.trials:
            rows.append((trial.spec.distance_deg,
                         compute_trial_metrics(trial, log.geometry, CFG)))
    return rows


class TestBehaviouralPatterns:
    def test_overshoot_larger_at_shortest_distance(self, sp_rows):
        def mean_overshoot(d):
            vals = [m.overshoot_path_deg for dist, m in sp_rows if dist == d]
            return st.mean(vals)

        assert mean_overshoot(3.5) > mean_overshoot(7.0)

    def test_flat_velocity(self, sp_rows):
        vels = [m.mean_velocity_deg_per_s for _, m in sp_rows]
        assert st.mean(vels) == pytest.approx(12.0, abs=1.0)


class TestGazeScripts:
    def test_target_locked_profile(self):
        agent = preset("sp-simpvl", seed=13)
        schedule = generate_schedule(Condition.SP_SIMPVL, 31)
        trials = [simulate_trial(agent, s) for s in schedule.trials[:6]]
        profile = gaze_profile(trials, DEFAULT_GEOMETRY, CFG)
        for b, n in enumerate(profile.bin_trials):
            if n:
                assert profile.on_target[b] == 1.0

    def test_four_phase_longer_search_at_distance(self):
        agent = preset("cp-pvl", seed=13)
        schedule = generate_schedule(Condition.CP_PVL, 31)

        def elsewhere_fraction(distance):
            trials = [simulate_trial(agent, s) for s in schedule.trials
                      if s.distance_deg == distance]
            profile = gaze_profile(trials, DEFAULT_GEOMETRY, CFG)
            weights = profile.bin_trials
            total = sum(weights)
            return sum(e * w for e, w in zip(profile.elsewhere, weights)) / total

        assert elsewhere_fraction(14.0) > elsewhere_fraction(3.5)

    def test_no_script_raises(self):
        agent = preset("cp-fvf", seed=1)
        schedule = generate_schedule(Condition.CP_FVF, 1)
        trial = simulate_trial(agent, schedule.trials[0])
        assert trial.gaze_samples is None
        with pytest.raises(SimulationError):
            emit_gaze(agent, trial)


class TestAgentFiles:
    def test_round_trip(self):
        agent = preset("sp-pvl", seed=9)
        assert agent_from_dict(agent_to_dict(agent)) == agent

    def test_load_from_file(self, tmp_path):
        agent = preset("cp-pvl", seed=9)
        path = tmp_path / "agent.json"
        path.write_text(json.dumps(agent_to_dict(agent)), encoding="utf-8")
        assert load_agent(str(path)) == agent

    def test_unknown_preset(self):
        with pytest.raises(SimulationError, match="unknown agent"):
            load_agent("nope-model")

    def test_perception_convergence_of_draws(self):
        # law of large numbers at n = 10^4 within 3 standard errors
        from sunlab.rng import stream

        p = PerceptionModel()
        rng = stream(5, "lln")
        draws = p.estimate_mean(7.0) + rng.normal(0.0, p.noise_sd(7.0), 10_000)
        assert abs(float(draws.mean()) - p.estimate_mean(7.0)) < 3 * p.noise_sd(7.0) / 100
        assert float(draws.std(ddof=1)) == pytest.approx(p.noise_sd(7.0), abs=0.1)
