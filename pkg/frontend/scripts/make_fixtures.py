#!/usr/bin/env python3
"""Regenerate the shared fixtures that pin the UI to the core geometry.

Run from anywhere with the sunlab package installed:
    python3 frontend/scripts/make_fixtures.py
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from sunlab.geometry import (
    Aperture,
    ClipRegion,
    Condition,
    PointDeg,
    RayConfig,
    clamp_to_area,
    generate_rays,
    generate_schedule,
    schedule_to_dict,
)
from sunlab.service import settings_payload

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def ray_cases() -> list[dict]:
    cursors = [
        (0.0, 0.0), (7.0, 0.0), (14.0, 0.0), (-10.0, 2.0), (3.0, 4.0),
        (0.5, -0.5), (-3.5, -3.5), (11.2, -6.1), (0.0, 14.5), (-14.9, 0.0),
    ]
    configs = [
        {"num_rays": 128, "start_offset_deg": 2.0, "max_length_deg": None},
        {"num_rays": 64, "start_offset_deg": 1.0, "max_length_deg": None},
        {"num_rays": 32, "start_offset_deg": 0.0, "max_length_deg": 6.0},
    ]
    clips = [
        {"moving_area_radius_deg": 15.0, "aperture": None},
        {"moving_area_radius_deg": 15.0,
         "aperture": {"center": [0.0, 0.0], "radius_deg": 1.5}},
        {"moving_area_radius_deg": 15.0,
         "aperture": {"center": [1.0, -2.0], "radius_deg": 3.5}},
    ]
    cases = []
    for i, (cx, cy) in enumerate(cursors):
        for j, cfg in enumerate(configs):
            for k, clip in enumerate(clips):
                if len(cases) >= 50:
                    break
                aperture = None
                if clip["aperture"] is not None:
                    aperture = Aperture(PointDeg(*clip["aperture"]["center"]),
                                        clip["aperture"]["radius_deg"])
                segments = generate_rays(
                    PointDeg(cx, cy),
                    RayConfig(num_rays=cfg["num_rays"],
                              start_offset_deg=cfg["start_offset_deg"],
                              max_length_deg=cfg["max_length_deg"]),
                    ClipRegion(moving_area_radius_deg=clip["moving_area_radius_deg"],
                               aperture=aperture),
                )
                cases.append({
                    "cursor": [cx, cy],
                    "ray_config": cfg,
                    "clip": clip,
                    "segments": [[s.a.x, s.a.y, s.b.x, s.b.y] for s in segments],
                })
    return cases[:50]


def clamp_cases() -> list[dict]:
    points = [(0, 0), (3, 4), (9, 12), (15, 0), (30, 0), (-20, 20),
              (0.1, -16), (14.999, 0.001), (-40, -1), (7, -7)]
    clip = ClipRegion()
    out = []
    for x, y in points:
        c = clamp_to_area(PointDeg(float(x), float(y)), clip)
        out.append({"point": [float(x), float(y)], "clamped": [c.x, c.y]})
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "ray_cases.json").write_text(
        json.dumps({"cases": ray_cases(), "tolerance_deg": 0.01}, indent=1) + "\n",
        encoding="utf-8")
    (OUT / "clamp_cases.json").write_text(
        json.dumps({"moving_area_radius_deg": 15.0, "cases": clamp_cases()},
                   indent=1) + "\n", encoding="utf-8")
    (OUT / "schedule_sp-simpvl_seed7.json").write_text(
        json.dumps(schedule_to_dict(generate_schedule(Condition.SP_SIMPVL, 7)),
                   indent=1) + "\n", encoding="utf-8")
    (OUT / "settings.json").write_text(
        json.dumps(settings_payload(), indent=1) + "\n", encoding="utf-8")
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
