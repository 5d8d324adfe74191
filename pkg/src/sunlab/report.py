"""Analysis pipeline: ingest session logs, derive per-trial metrics,
aggregate, test, fit, and emit the report bundle (JSON + CSV tables).

Bundles contain no timestamps and use fixed key/row ordering, so a fixed
set of inputs reproduces byte-identical output.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .geometry import Condition, DISTANCES_DEG, ScreenGeometry
from .metrics import (
    MetricsConfig,
    MetricsError,
    compute_trial_metrics,
    delay_decomposition,
    gaze_profile,
    vf_idt_ratio,
)
from .session import SessionLog, SessionValidationError, iter_corpus, load_session
from .stats import StatsError, fitts_fit, index_of_difficulty, linear_fit, mann_whitney

BUNDLE_SCHEMA_VERSION = "1"
METRIC_COLUMNS = (
    "tct_ms", "at_ms", "mt_ms", "kt_ms",
    "path_length_deg", "trajectory_excess_deg", "overshoot_path_deg",
    "mean_velocity_deg_per_s",
)
TIME_METRICS = ("tct_ms", "at_ms", "mt_ms", "kt_ms")
CONDITION_ORDER = tuple(c.value for c in Condition)


class ReportError(ValueError):
    pass


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _sd(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    m = _mean(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / (len(values) - 1))


def collect_session_files(paths: Iterable[Path | str]) -> list[Path]:
    """Expand files and directories into a sorted list of session sources."""
    out: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            out.extend(sorted(p.glob("*.session.json")))
            out.extend(sorted(p.glob("*.sessions.jsonl")))
        elif p.exists():
            out.append(p)
        else:
            raise ReportError(f"no such input: {p}")
    return sorted(set(out))


def load_sessions(files: Sequence[Path], strict: bool = False
                  ) -> tuple[list[tuple[str, SessionLog]], list[dict]]:
    loaded: list[tuple[str, SessionLog]] = []
    skipped: list[dict] = []
    for path in files:
        try:
            if path.name.endswith(".sessions.jsonl"):
                for i, log in enumerate(iter_corpus(path)):
                    loaded.append((f"{path.name}#{i}", log))
            else:
                loaded.append((path.name, load_session(path)))
        except SessionValidationError as exc:
            if strict:
                raise
            skipped.append({"file": str(path), "error": str(exc)})
    return loaded, skipped


def analyze_sessions(named_logs: Sequence[tuple[str, SessionLog]],
                     cfg: MetricsConfig = MetricsConfig(),
                     include_aborted: bool = False,
                     skipped_files: Optional[list[dict]] = None) -> dict:
    """Build the full report bundle from parsed sessions."""
    if not named_logs:
        raise ReportError("no sessions to analyze")

    per_trial: list[dict] = []
    skipped_trials: list[dict] = []
    gaze_groups: dict[tuple[str, float], list] = {}
    gaze_geometry: dict[tuple[str, float], ScreenGeometry] = {}
    vf_points: dict[str, list[tuple[float, float]]] = {}

    for name, log in named_logs:
        for trial in log.trials:
            if trial.outcome != "completed" and not include_aborted:
                continue
            cond = trial.spec.condition.value
            try:
                m = compute_trial_metrics(trial, log.geometry, cfg)
            except MetricsError as exc:
                skipped_trials.append({"file": name, "trial_id": trial.spec.trial_id,
                                       "error": str(exc)})
                continue
            per_trial.append({
                "participant": log.profile.participant_id,
                "condition": cond,
                "trial_id": trial.spec.trial_id,
                "distance_deg": trial.spec.distance_deg,
                "angle_rad": trial.spec.angle_rad,
                "tct_ms": m.tct_ms,
                "at_ms": m.at_ms,
                "mt_ms": m.mt_ms,
                "kt_ms": m.kt_ms,
                "path_length_deg": m.path_length_deg,
                "trajectory_excess_deg": m.trajectory_excess_deg,
                "overshoot_path_deg": m.overshoot_path_deg,
                "mean_velocity_deg_per_s": m.mean_velocity_deg_per_s,
            })
            if trial.gaze_samples:
                key = (cond, trial.spec.distance_deg)
                gaze_groups.setdefault(key, []).append(trial)
                gaze_geometry.setdefault(key, log.geometry)
            if log.profile.vf_radius_deg is not None:
                vf_points.setdefault(cond, []).append(
                    (vf_idt_ratio(log.profile, trial.spec), m.tct_ms / 1000.0))

    if not per_trial:
        raise ReportError("no completed trials produced metrics")

    per_trial.sort(key=lambda r: (CONDITION_ORDER.index(r["condition"]),
                                  r["participant"], r["trial_id"]))
    conditions = sorted({r["condition"] for r in per_trial},
                        key=CONDITION_ORDER.index)
    distances = sorted({r["distance_deg"] for r in per_trial})

    def rows_for(cond: str, distance: Optional[float] = None) -> list[dict]:
        return [r for r in per_trial if r["condition"] == cond
                and (distance is None or r["distance_deg"] == distance)]

    aggregates = []
    for cond in conditions:
        for distance in distances:
            rows = rows_for(cond, distance)
            if not rows:
                continue
            entry: dict = {"condition": cond, "distance_deg": distance, "n": len(rows)}
            for col in METRIC_COLUMNS:
                values = [float(r[col]) for r in rows]
                entry[f"{col}_mean"] = _mean(values)
                entry[f"{col}_sd"] = _sd(values)
            aggregates.append(entry)

    comparisons = []
    for i, cond_a in enumerate(conditions):
        for cond_b in conditions[i + 1:]:
            for distance in distances:
                rows_a = rows_for(cond_a, distance)
                rows_b = rows_for(cond_b, distance)
                if not rows_a or not rows_b:
                    continue
                for metric in TIME_METRICS:
                    res = mann_whitney([float(r[metric]) for r in rows_a],
                                       [float(r[metric]) for r in rows_b])
                    comparisons.append({
                        "condition_a": cond_a,
                        "condition_b": cond_b,
                        "distance": distance,
                        "metric": metric,
                        "u": res.u_statistic,
                        "p": res.p_two_sided,
                        "method": res.method,
                        "n_a": res.n_a,
                        "n_b": res.n_b,
                    })

    velocity_fits = []
    fitts_fits = []
    for cond in conditions:
        rows = rows_for(cond)
        try:
            fit = linear_fit([r["distance_deg"] for r in rows],
                             [r["mean_velocity_deg_per_s"] for r in rows])
            velocity_fits.append({"condition": cond, "slope": fit.slope,
                                  "intercept": fit.intercept,
                                  "r_squared": fit.r_squared, "n": fit.n})
        except StatsError:
            pass
        try:
            ff = fitts_fit([(index_of_difficulty(r["distance_deg"]), r["mt_ms"] / 1000.0)
                            for r in rows])
            fitts_fits.append({"condition": cond, "b": ff.b,
                               "ip": ff.index_of_performance,
                               "r_squared": ff.r_squared, "n": ff.n})
        except StatsError:
            pass

    delay_rows = []
    base, sim = Condition.CP_FVF.value, Condition.SP_SIMPVL.value
    if base in conditions and sim in conditions:
        for distance in distances:
            rows_b = rows_for(base, distance)
            rows_s = rows_for(sim, distance)
            if not rows_b or not rows_s:
                continue
            dd = delay_decomposition(
                _mean([r["path_length_deg"] for r in rows_s]),
                _mean([r["mean_velocity_deg_per_s"] for r in rows_s]),
                _mean([r["path_length_deg"] for r in rows_b]),
                _mean([r["mean_velocity_deg_per_s"] for r in rows_b]),
            )
            delay_rows.append({
                "distance_deg": distance,
                "delta_mt_ms": dd.delta_mt_ms,
                "delay_length_ms": dd.delay_length_ms,
                "delay_velocity_ms": dd.delay_velocity_ms,
                "length_fraction": dd.length_fraction,
                "velocity_fraction": dd.velocity_fraction,
                "degenerate": dd.degenerate,
            })

    gaze_entries = []
    for (cond, distance) in sorted(gaze_groups,
                                   key=lambda k: (CONDITION_ORDER.index(k[0]), k[1])):
        trials = gaze_groups[(cond, distance)]
        profile = gaze_profile(trials, gaze_geometry[(cond, distance)], cfg)
        gaze_entries.append({
            "condition": cond,
            "distance_deg": distance,
            "n_trials": profile.n_trials,
            "mean_first_move_norm": profile.mean_first_move_norm,
            "on_target": list(profile.on_target),
            "on_cursor": list(profile.on_cursor),
            "elsewhere": list(profile.elsewhere),
            "bin_trials": list(profile.bin_trials),
        })

    series: dict = {}
    for col in METRIC_COLUMNS:
        entries = []
        for cond in conditions:
            xs, ys, errs = [], [], []
            for distance in distances:
                rows = rows_for(cond, distance)
                if not rows:
                    continue
                values = [float(r[col]) for r in rows]
                xs.append(distance)
                ys.append(_mean(values))
                errs.append(_sd(values))
            entries.append({"condition": cond, "x": xs, "y": ys, "err": errs})
        series[f"{col}_vs_distance"] = entries

    fitts_series = []
    for cond in conditions:
        xs, ys, errs = [], [], []
        for distance in distances:
            rows = rows_for(cond, distance)
            if not rows:
                continue
            mts = [r["mt_ms"] / 1000.0 for r in rows]
            xs.append(index_of_difficulty(distance))
            ys.append(_mean(mts))
            errs.append(_sd(mts))
        fit_b = next((f["b"] for f in fitts_fits if f["condition"] == cond), None)
        fitts_series.append({"condition": cond, "x": xs, "y": ys, "err": errs,
                             "fit_b": fit_b})
    series["fitts"] = fitts_series

    vf_series = []
    for cond in sorted(vf_points, key=CONDITION_ORDER.index):
        pts = vf_points[cond]
        entry = {"condition": cond,
                 "x": [p[0] for p in pts],
                 "y": [p[1] for p in pts],
                 "fit": None}
        try:
            fit = linear_fit(entry["x"], entry["y"])
            entry["fit"] = {"slope": fit.slope, "intercept": fit.intercept,
                            "r_squared": fit.r_squared}
        except StatsError:
            pass
        vf_series.append(entry)
    series["vf_idt"] = vf_series

    return {
        "schema_version": BUNDLE_SCHEMA_VERSION,
        "metrics_config": {
            "first_move_threshold_px": cfg.first_move_threshold_px,
            "target_radius_deg": cfg.target_radius_deg,
            "gaze_radius_deg": cfg.gaze_radius_deg,
            "gaze_bins": cfg.gaze_bins,
        },
        "n_sessions": len(named_logs),
        "n_trials": len(per_trial),
        "conditions": conditions,
        "distances_deg": distances,
        "skipped_files": skipped_files or [],
        "skipped_trials": skipped_trials,
        "per_trial": per_trial,
        "aggregates": aggregates,
        "comparisons": comparisons,
        "velocity_fits": velocity_fits,
        "fitts_fits": fitts_fits,
        "delay_decomposition": delay_rows,
        "gaze_profiles": gaze_entries,
        "series": series,
    }


def analyze_paths(paths: Iterable[Path | str],
                  cfg: MetricsConfig = MetricsConfig(),
                  include_aborted: bool = False,
                  strict: bool = False) -> dict:
    files = collect_session_files(paths)
    if not files:
        raise ReportError("no session files found in the given inputs")
    named, skipped = load_sessions(files, strict=strict)
    if not named:
        raise ReportError("all input files were invalid: "
                          + "; ".join(s["error"] for s in skipped))
    return analyze_sessions(named, cfg, include_aborted, skipped_files=skipped)


# ---------------------------------------------------------------------------
# emission

def bundle_to_json_bytes(bundle: dict) -> bytes:
    return (json.dumps(bundle, ensure_ascii=False, allow_nan=False, indent=2) + "\n"
            ).encode("utf-8")


def _csv_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_bundle(bundle: dict, out_dir: Path | str) -> list[Path]:
    """bundle.json plus the delimited per-trial / aggregate / comparison views.

    CSV cells use the same float repr as the JSON encoder, so the two views
    carry identical numbers.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    bundle_path = out_dir / "bundle.json"
    bundle_path.write_bytes(bundle_to_json_bytes(bundle))
    written.append(bundle_path)

    per_trial_header = ["participant", "condition", "trial_id", "distance_deg",
                        "angle_rad", *METRIC_COLUMNS]
    per_trial_path = out_dir / "per_trial.csv"
    _write_csv(per_trial_path, per_trial_header,
               ([r[h] for h in per_trial_header] for r in bundle["per_trial"]))
    written.append(per_trial_path)

    agg_header = ["condition", "distance_deg", "n"]
    for col in METRIC_COLUMNS:
        agg_header += [f"{col}_mean", f"{col}_sd"]
    agg_path = out_dir / "aggregates.csv"
    _write_csv(agg_path, agg_header,
               ([r[h] for h in agg_header] for r in bundle["aggregates"]))
    written.append(agg_path)

    cmp_header = ["condition_a", "condition_b", "distance", "metric", "u", "p",
                  "method", "n_a", "n_b"]
    cmp_path = out_dir / "comparisons.csv"
    _write_csv(cmp_path, cmp_header,
               ([r[h] for h in cmp_header] for r in bundle["comparisons"]))
    written.append(cmp_path)
    return written
