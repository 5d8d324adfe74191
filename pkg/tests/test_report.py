from __future__ import annotations

import json
from dataclasses import replace

import pytest

from sunlab.geometry import Condition, generate_schedule
from sunlab.metrics import MetricsConfig
from sunlab.plots import render_report
from sunlab.report import (
    ReportError,
    analyze_paths,
    analyze_sessions,
    bundle_to_json_bytes,
    collect_session_files,
    write_bundle,
)
from sunlab.rng import derive_seed
from sunlab.session import save_session, serialize
from sunlab.simulator import make_profile, preset, simulate_session


def _small_corpus(tmp_path, names=("cp-fvf", "sp-simpvl"), n=3, base=55):
    paths = []
    for name in names:
        for i in range(n):
            agent = preset(name, seed=derive_seed(base, name, "agent", i))
            schedule = generate_schedule(agent.condition, derive_seed(base, name, "s", i))
            log = simulate_session(agent, schedule, profile=make_profile(agent, i))
            paths.append(save_session(log, tmp_path / f"{name}-{i}.session.json"))
    return paths


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("corpus")
    _small_corpus(tmp)
    return tmp


@pytest.fixture(scope="module")
def bundle(corpus_dir):
    return analyze_paths([corpus_dir])


def test_bundle_shape(bundle):
    assert bundle["n_sessions"] == 6
    assert bundle["n_trials"] == 6 * 24
    assert bundle["conditions"] == ["cp-fvf", "sp-simpvl"]
    assert bundle["distances_deg"] == [3.5, 7.0, 10.5, 14.0]
    assert len(bundle["fitts_fits"]) == 2  # one entry per condition present
    assert len(bundle["velocity_fits"]) == 2
    assert len(bundle["delay_decomposition"]) == 4


def test_aggregates_recomputable_from_per_trial(bundle):
    for agg in bundle["aggregates"]:
        rows = [r for r in bundle["per_trial"]
                if r["condition"] == agg["condition"]
                and r["distance_deg"] == agg["distance_deg"]]
        assert agg["n"] == len(rows)
        mean = sum(r["tct_ms"] for r in rows) / len(rows)
        assert agg["tct_ms_mean"] == pytest.approx(mean, rel=1e-12)


def test_comparisons_have_u_tests_per_distance(bundle):
    rows = [c for c in bundle["comparisons"] if c["metric"] == "tct_ms"]
    assert {(c["condition_a"], c["condition_b"]) for c in rows} == {("cp-fvf", "sp-simpvl")}
    assert sorted(c["distance"] for c in rows) == [3.5, 7.0, 10.5, 14.0]
    for c in rows:
        assert 0.0 < c["p"] <= 1.0
        assert c["method"] in ("exact", "normal_approx")


def test_csv_and_json_numbers_identical(bundle, tmp_path):
    files = write_bundle(bundle, tmp_path)
    per_trial = (tmp_path / "per_trial.csv").read_text(encoding="utf-8").splitlines()
    header = per_trial[0].split(",")
    for line, row in zip(per_trial[1:], bundle["per_trial"]):
        cells = line.split(",")
        for key, cell in zip(header, cells):
            value = row[key]
            if isinstance(value, float):
                assert float(cell) == value
            elif isinstance(value, int):
                assert int(cell) == value
            else:
                assert cell == str(value)
    assert {f.name for f in files} == {"bundle.json", "per_trial.csv",
                                       "aggregates.csv", "comparisons.csv"}


def test_end_to_end_determinism(corpus_dir):
    a = bundle_to_json_bytes(analyze_paths([corpus_dir]))
    b = bundle_to_json_bytes(analyze_paths([corpus_dir]))
    assert a == b


def test_invalid_file_listed_and_skipped(tmp_path):
    _small_corpus(tmp_path, names=("cp-fvf",), n=1)
    bad = tmp_path / "broken.session.json"
    bad.write_text("{not json", encoding="utf-8")
    bundle = analyze_paths([tmp_path])
    assert bundle["n_sessions"] == 1
    assert len(bundle["skipped_files"]) == 1
    assert "broken.session.json" in bundle["skipped_files"][0]["file"]


def test_strict_mode_raises(tmp_path):
    _small_corpus(tmp_path, names=("cp-fvf",), n=1)
    (tmp_path / "broken.session.json").write_text("{not json", encoding="utf-8")
    from sunlab.session import SessionValidationError

    with pytest.raises(SessionValidationError):
        analyze_paths([tmp_path], strict=True)


def test_empty_inputs_rejected(tmp_path):
    with pytest.raises(ReportError):
        analyze_paths([tmp_path])
    with pytest.raises(ReportError):
        analyze_paths([tmp_path / "missing.session.json"])


def test_aborted_trials_excluded_by_default():
    agent = preset("cp-fvf", seed=2)
    schedule = generate_schedule(Condition.CP_FVF, 12)
    log = simulate_session(agent, schedule, profile=make_profile(agent, 0))
    aborted_first = replace(
        log, trials=(replace(log.trials[0], outcome="aborted", click_events=()),
                     *log.trials[1:]))
    bundle = analyze_sessions([("mem", aborted_first)])
    assert bundle["n_trials"] == 23


def test_corpus_jsonl_ingested(tmp_path):
    agent = preset("sp-simpvl", seed=2)
    schedule = generate_schedule(Condition.SP_SIMPVL, 12)
    log = simulate_session(agent, schedule, profile=make_profile(agent, 0))
    corpus = tmp_path / "all.sessions.jsonl"
    corpus.write_bytes(serialize(log) + serialize(log))
    assert len(collect_session_files([tmp_path])) == 1
    bundle = analyze_paths([corpus])
    assert bundle["n_sessions"] == 2


def test_gaze_profiles_present_for_sp(bundle):
    assert bundle["gaze_profiles"], "sp-simpvl logs carry scripted gaze"
    entry = bundle["gaze_profiles"][0]
    assert entry["condition"] == "sp-simpvl"
    assert len(entry["on_target"]) == MetricsConfig().gaze_bins


def test_render_report_writes_figures(bundle, tmp_path):
    files = render_report(bundle, tmp_path, fmt="svg")
    names = {f.name for f in files}
    assert "times_vs_distance.svg" in names
    assert "velocity.svg" in names
    assert "fitts.svg" in names
    assert "delay_decomposition.svg" in names
    assert any(n.startswith("gaze_sp-simpvl") for n in names)
    for f in files:
        assert f.stat().st_size > 500
