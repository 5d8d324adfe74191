from __future__ import annotations

import json

import pytest

from sunlab.cli import main


def test_schedule_deterministic_files(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["schedule", "--condition", "sp-simpvl", "--seed", "42",
                 "--out", str(out1)]) == 0
    assert main(["schedule", "--condition", "sp-simpvl", "--seed", "42",
                 "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert len(doc["trials"]) == 24


def test_schedule_bad_condition_exit_code(tmp_path, capsys):
    assert main(["schedule", "--condition", "wonky", "--seed", "1",
                 "--out", str(tmp_path / "x.json")]) == 1
    err = capsys.readouterr().err
    assert "sp-simpvl" in err and "cp-fvf" in err  # names the valid values


def test_schedule_unwritable_path(tmp_path, capsys):
    target = tmp_path / "file.json"
    target.write_text("occupied")
    assert main(["schedule", "--condition", "cp-fvf", "--seed", "1",
                 "--out", str(target / "nested.json")]) == 2


def test_simulate_corpus_and_determinism(tmp_path, capsys):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    args = ["simulate", "--agent", "cp-fvf", "--participants", "2", "--seed", "9"]
    assert main(args + ["--out-dir", str(out_a)]) == 0
    assert main(args + ["--out-dir", str(out_b)]) == 0
    files_a = sorted(out_a.glob("*.session.json"))
    files_b = sorted(out_b.glob("*.session.json"))
    assert len(files_a) == 2
    for fa, fb in zip(files_a, files_b):
        assert fa.read_bytes() == fb.read_bytes()


def test_simulate_zero_participants(tmp_path, capsys):
    out = tmp_path / "none"
    assert main(["simulate", "--agent", "cp-fvf", "--participants", "0",
                 "--seed", "1", "--out-dir", str(out)]) == 0
    assert "warning" in capsys.readouterr().err
    assert not list(out.glob("*.session.json")) if out.exists() else True


def test_simulate_unknown_agent(tmp_path, capsys):
    assert main(["simulate", "--agent", "griffin", "--participants", "1",
                 "--seed", "1", "--out-dir", str(tmp_path)]) == 1
    assert "unknown agent" in capsys.readouterr().err


def test_analyze_report_validate_flow(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    assert main(["simulate", "--agent", "sp-simpvl", "--participants", "2",
                 "--seed", "3", "--out-dir", str(corpus)]) == 0
    out = tmp_path / "report"
    assert main(["analyze", str(corpus), "--out-dir", str(out)]) == 0
    assert (out / "bundle.json").exists()
    assert (out / "per_trial.csv").exists()

    figures = tmp_path / "figures"
    assert main(["report", "--bundle", str(out / "bundle.json"),
                 "--out-dir", str(figures), "--format", "svg"]) == 0
    assert (figures / "times_vs_distance.svg").exists()
    assert (figures / "per_trial.csv").exists()  # delimited output alongside

    capsys.readouterr()
    files = sorted(corpus.glob("*.session.json"))
    assert main(["validate", str(files[0])]) == 0
    assert "ok:" in capsys.readouterr().out


def test_analyze_empty_input(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["analyze", str(empty), "--out-dir", str(tmp_path / "out")]) == 1


def test_analyze_plot_flag(tmp_path):
    corpus = tmp_path / "corpus"
    main(["simulate", "--agent", "cp-fvf", "--participants", "1",
          "--seed", "5", "--out-dir", str(corpus)])
    out = tmp_path / "report"
    assert main(["analyze", str(corpus), "--out-dir", str(out), "--plot"]) == 0
    assert (out / "velocity.svg").exists()


def test_validate_rejects_tampered(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    main(["simulate", "--agent", "cp-fvf", "--participants", "1",
          "--seed", "5", "--out-dir", str(corpus)])
    path = next(corpus.glob("*.session.json"))
    doc = json.loads(path.read_text())
    doc["trials"][0]["click_events"][-1]["pos"] = [2.0, 2.0]
    path.write_text(json.dumps(doc))
    assert main(["validate", str(path)]) == 1
    assert "click off target" in capsys.readouterr().err
