"""Figure rendering for report bundles.

Regenerates the study's figure family from a bundle's plot-ready series:
time decomposition vs distance, trajectory excess and overshoot, velocity
with fitted laws, movement time vs index of difficulty with zero-intercept
fits, gaze profiles, and the movement-time delay split.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

CONDITION_COLORS = {
    "cp-pvl": "#1f77b4",
    "sp-pvl": "#d62728",
    "cp-fvf": "#2ca02c",
    "sp-simpvl": "#ff7f0e",
}
_TIME_PANELS = (
    ("tct_ms_vs_distance", "TCT (ms)"),
    ("at_ms_vs_distance", "AT (ms)"),
    ("mt_ms_vs_distance", "MT (ms)"),
    ("kt_ms_vs_distance", "KT (ms)"),
)


def _color(condition: str) -> str:
    return CONDITION_COLORS.get(condition, "#7f7f7f")


def _errorbar_panel(ax, entries, ylabel: str) -> None:
    for entry in entries:
        if not entry["x"]:
            continue
        ax.errorbar(entry["x"], entry["y"], yerr=entry["err"], marker="o",
                    capsize=3, label=entry["condition"],
                    color=_color(entry["condition"]))
    ax.set_xlabel("initial distance (deg)")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)


def _fig_times(bundle: dict, path: Path) -> None:
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for ax, (key, label) in zip(axes.flat, _TIME_PANELS):
        _errorbar_panel(ax, bundle["series"][key], label)
    axes[0][0].legend(fontsize=8)
    fig.suptitle("Task time decomposition vs initial distance")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_trajectory(bundle: dict, path: Path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    _errorbar_panel(ax1, bundle["series"]["trajectory_excess_deg_vs_distance"],
                    "trajectory excess (deg)")
    _errorbar_panel(ax2, bundle["series"]["overshoot_path_deg_vs_distance"],
                    "overshoot path (deg)")
    ax1.legend(fontsize=8)
    fig.suptitle("Trajectory excess and overshoot")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_velocity(bundle: dict, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    _errorbar_panel(ax, bundle["series"]["mean_velocity_deg_per_s_vs_distance"],
                    "mean velocity (deg/s)")
    for fit in bundle["velocity_fits"]:
        xs = bundle["distances_deg"]
        ax.plot(xs, [fit["slope"] * x + fit["intercept"] for x in xs], "--",
                color=_color(fit["condition"]), alpha=0.7,
                label=f"{fit['condition']}: {fit['slope']:.2f}D+{fit['intercept']:.1f}")
    ax.legend(fontsize=8)
    ax.set_title("Mean movement velocity")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_fitts(bundle: dict, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for entry in bundle["series"]["fitts"]:
        if not entry["x"]:
            continue
        color = _color(entry["condition"])
        ax.errorbar(entry["x"], entry["y"], yerr=entry["err"], marker="o",
                    capsize=3, linestyle="none", color=color,
                    label=entry["condition"])
        if entry["fit_b"] is not None:
            xs = [0.0, max(entry["x"])]
            ax.plot(xs, [entry["fit_b"] * x for x in xs], "--", color=color, alpha=0.7)
    ax.set_xlabel("index of difficulty (bits)")
    ax.set_ylabel("movement time (s)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    ax.set_title("Movement time vs index of difficulty (zero-intercept fits)")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_gaze(entry: dict, path: Path) -> None:
    bins = len(entry["on_target"])
    xs = [(b + 0.5) / bins for b in range(bins)]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.stackplot(xs, entry["on_target"], entry["on_cursor"], entry["elsewhere"],
                 labels=["on target", "on cursor", "elsewhere"],
                 colors=["#2ca02c", "#1f77b4", "#bbbbbb"], alpha=0.85)
    ax.axvline(entry["mean_first_move_norm"], color="blue", linestyle=":",
               label="mean first move")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("normalized trial time")
    ax.set_ylabel("proportion of gaze samples")
    ax.legend(fontsize=8, loc="center right")
    ax.set_title(f"Gaze profile: {entry['condition']} at {entry['distance_deg']} deg")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_delay(bundle: dict, path: Path) -> None:
    rows = [r for r in bundle["delay_decomposition"] if not r["degenerate"]]
    if not rows:
        return
    xs = [r["distance_deg"] for r in rows]
    length = [r["delay_length_ms"] for r in rows]
    velocity = [r["delay_velocity_ms"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(xs, length, width=1.4, label="length delay", color="#1f77b4")
    ax.bar(xs, velocity, width=1.4, bottom=length, label="velocity delay",
           color="#ff7f0e")
    ax.set_xlabel("initial distance (deg)")
    ax.set_ylabel("movement-time difference (ms)")
    ax.legend(fontsize=8)
    ax.set_title("MT delay split: simulated PVL vs full vision")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _fig_vf_idt(bundle: dict, path: Path) -> None:
    entries = [e for e in bundle["series"]["vf_idt"] if e["x"]]
    if not entries:
        return
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for entry in entries:
        color = _color(entry["condition"])
        ax.scatter(entry["x"], entry["y"], s=12, alpha=0.6, color=color,
                   label=entry["condition"])
        if entry["fit"]:
            lo, hi = min(entry["x"]), max(entry["x"])
            ax.plot([lo, hi],
                    [entry["fit"]["slope"] * x + entry["fit"]["intercept"]
                     for x in (lo, hi)],
                    "--", color=color, alpha=0.8)
    ax.set_xlabel("visual field radius / initial distance")
    ax.set_ylabel("TCT (s)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    ax.set_title("Completion time vs VF/IDT ratio")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_report(bundle: dict, out_dir: Path | str, fmt: str = "svg") -> list[Path]:
    """Render every figure the bundle supports; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, renderer, *args) -> None:
        path = out_dir / f"{name}.{fmt}"
        renderer(*args, path)
        if path.exists():
            written.append(path)

    emit("times_vs_distance", _fig_times, bundle)
    emit("trajectory", _fig_trajectory, bundle)
    emit("velocity", _fig_velocity, bundle)
    emit("fitts", _fig_fitts, bundle)
    emit("delay_decomposition", _fig_delay, bundle)
    emit("vf_idt", _fig_vf_idt, bundle)
    for entry in bundle["gaze_profiles"]:
        name = f"gaze_{entry['condition']}_{entry['distance_deg']:g}deg".replace(".", "_")
        emit(name, _fig_gaze, entry)
    return written
