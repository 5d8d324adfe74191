"""Command-line interface: schedule | simulate | analyze | report | serve | validate."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .geometry import Condition, generate_schedule, schedule_to_dict
from .metrics import MetricsConfig
from .plots import render_report
from .report import ReportError, analyze_paths, write_bundle
from .rng import derive_seed
from .service import serve as run_server
from .session import SessionValidationError, load_session, save_session
from .simulator import (
    PRESET_NAMES,
    SimulationError,
    generate_session_name,
    load_agent,
    make_profile,
    simulate_session,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _cmd_schedule(args: argparse.Namespace) -> int:
    try:
        condition = Condition.parse(args.condition)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(schedule_to_dict(generate_schedule(condition, args.seed)),
                      ensure_ascii=False, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        _write_text(Path(args.out), text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.participants < 0:
        print("error: --participants must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if args.participants == 0:
        print("warning: --participants 0, nothing to simulate", file=sys.stderr)
        return EXIT_OK
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO
    for i in range(args.participants):
        try:
            agent = load_agent(args.agent, seed=derive_seed(args.seed, "agent", i))
        except (SimulationError, ValueError, OSError, json.JSONDecodeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        schedule = generate_schedule(agent.condition, derive_seed(args.seed, "schedule", i))
        log = simulate_session(agent, schedule, profile=make_profile(agent, i))
        path = out_dir / generate_session_name(agent, i)
        try:
            save_session(log, path)
        except OSError as exc:
            print(f"error: cannot write {path}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(path)
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = MetricsConfig(first_move_threshold_px=args.first_move_threshold_px)
    try:
        bundle = analyze_paths(args.inputs, cfg=cfg,
                               include_aborted=args.include_aborted,
                               strict=args.strict)
    except (ReportError, SessionValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        written = write_bundle(bundle, args.out_dir)
        if args.plot:
            written += render_report(bundle, args.out_dir, fmt=args.format)
    except OSError as exc:
        print(f"error: cannot write {args.out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    if bundle["skipped_files"]:
        for item in bundle["skipped_files"]:
            print(f"warning: skipped {item['file']}: {item['error']}", file=sys.stderr)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    try:
        bundle = json.loads(Path(args.bundle).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read bundle {args.bundle}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        written = write_bundle(bundle, args.out_dir)
        written += render_report(bundle, args.out_dir, fmt=args.format)
    except OSError as exc:
        print(f"error: cannot write {args.out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    data_dir = Path(args.data_dir or os.environ.get("SUNLAB_DATA_DIR", "sunlab-data"))
    static_dir = Path(args.static_dir) if args.static_dir else None
    try:
        run_server(args.port, data_dir, static_dir)
    except OSError as exc:
        print(f"error: cannot serve on port {args.port}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    failures = 0
    for raw in args.paths:
        path = Path(raw)
        try:
            log = load_session(path)
            print(f"ok: {path} ({len(log.trials)} trials)")
        except (OSError, SessionValidationError) as exc:
            failures += 1
            print(f"invalid: {path}: {exc}", file=sys.stderr)
    return EXIT_USAGE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunlab",
        description="Radial-cue pointer laboratory: schedules, simulation, "
                    "analysis, reports, and the experiment service.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule", help="generate a seeded 24-trial exercise plan")
    p.add_argument("--condition", required=True,
                   help=f"one of: {', '.join(c.value for c in Condition)}")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("simulate", help="emit synthetic participant session logs")
    p.add_argument("--agent", required=True,
                   help=f"preset ({', '.join(PRESET_NAMES)}) or agent JSON file")
    p.add_argument("--participants", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analyze", help="run the metrics/stats pipeline over session logs")
    p.add_argument("inputs", nargs="+", help="session files, corpora, or directories")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--include-aborted", action="store_true")
    p.add_argument("--strict", action="store_true",
                   help="abort on the first invalid session file")
    p.add_argument("--plot", action="store_true", help="also render figures")
    p.add_argument("--format", default="svg", choices=("svg", "png"))
    p.add_argument("--first-move-threshold-px", type=float, default=10.0)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("report", help="re-emit tables and render figures from a bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", default="svg", choices=("svg", "png"))
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="host the experiment API and UI assets")
    p.add_argument("--port", type=int, default=8756)
    p.add_argument("--data-dir", help="session storage (default: $SUNLAB_DATA_DIR)")
    p.add_argument("--static-dir", help="UI asset directory to serve")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("validate", help="parse session logs and report violations")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
