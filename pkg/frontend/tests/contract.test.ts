import assert from "node:assert/strict";
import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

import { ExerciseRunner } from "../src/exercise.js";
import { serializeSession } from "../src/session.js";
import type { ScheduleJson, TrialSpecJson } from "../src/session.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");

function corePythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import sunlab"], { encoding: "utf-8" });
  return probe.status === 0;
}

/** Drive one trial: frames at 120 Hz, moving ~12 deg/s toward the target. */
function runTrial(runner: ExerciseRunner, spec: TrialSpecJson, clock: { t: number }): void {
  runner.armStart();
  runner.beginTrial();
  const gain = 30 / 1050;
  const frameMs = 1000 / 120;
  const speed = 12; // deg/s
  // a human-ish reaction hold before the first move
  for (let i = 0; i < 40; i++) {
    clock.t += frameMs;
    runner.sample();
  }
  for (let guard = 0; guard < 5000; guard++) {
    const pos = runner.cursorPos;
    const dist = Math.hypot(pos.x, pos.y);
    if (dist <= 0.3) break;
    const step = Math.min((speed * frameMs) / 1000, dist);
    const dxDeg = (-pos.x / dist) * step;
    const dyDeg = (-pos.y / dist) * step;
    runner.pointerDelta(dxDeg / gain, -dyDeg / gain);
    clock.t += frameMs;
    runner.sample();
  }
  // keystroke pause, then the validating click
  for (let i = 0; i < 60; i++) {
    clock.t += frameMs;
    runner.sample();
  }
  assert.equal(runner.click(), "completed");
  runner.advance();
}

test("headless 3-trial exercise produces a log the core parser accepts", (t) => {
  if (!corePythonAvailable()) {
    t.skip("python3 with the sunlab package is not available");
    return;
  }
  const schedule = JSON.parse(
    readFileSync(join(FIXTURES, "schedule_sp-simpvl_seed7.json"), "utf-8"),
  ) as ScheduleJson;
  const settings = JSON.parse(
    readFileSync(join(FIXTURES, "settings.json"), "utf-8"),
  ) as Record<string, any>;

  const clock = { t: 0 };
  const runner = new ExerciseRunner(schedule, {
    gainDegPerCount: 30 / 1050,
    interTrialMs: 0,
    now: () => clock.t,
  });
  for (let i = 0; i < 3; i++) {
    runTrial(runner, schedule.trials[i], clock);
    clock.t += 500;
  }
  assert.equal(runner.completedCount, 3);

  const log = runner.exportLog({
    profile: {
      participant_id: "ui-headless",
      kind: "human",
      laterality: "right",
      vision_disorder: "none",
    },
    geometry: {
      width_px: settings.geometry.width_px,
      height_px: settings.geometry.height_px,
      width_cm: 52.0,
      height_cm: 32.0,
      viewing_distance_cm: 59.7,
      half_height_deg: settings.geometry.half_height_deg,
    },
    ray_config: {
      num_rays: settings.ray_config.num_rays,
      start_offset_deg: settings.ray_config.start_offset_deg,
      outer_color: settings.ray_config.outer_color,
      inner_color: settings.ray_config.inner_color,
      outer_width_px: settings.ray_config.outer_width_px,
      inner_width_px: settings.ray_config.inner_width_px,
      opacity: settings.ray_config.opacity,
      max_length_deg: settings.ray_config.max_length_deg,
    },
    clip: {
      moving_area_radius_deg: settings.clip.moving_area_radius_deg,
      aperture: { center: [0, 0], radius_deg: settings.simpvl_aperture_radius_deg },
    },
    created_at: "2024-01-01T00:00:00Z",
  });

  // every export carries integral, strictly increasing sample times
  for (const trial of log.trials) {
    let prev = -1;
    for (const [tms] of trial.pointer_samples) {
      assert.ok(Number.isInteger(tms) && tms > prev);
      prev = tms;
    }
  }

  const dir = mkdtempSync(join(tmpdir(), "sunlab-ui-"));
  const path = join(dir, "headless.session.json");
  writeFileSync(path, serializeSession(log), "utf-8");

  const result = spawnSync("python3", ["-m", "sunlab.cli", "validate", path],
                           { encoding: "utf-8" });
  assert.equal(result.status, 0,
    `core parser rejected the log:\n${result.stderr}\n${result.stdout}`);
  assert.match(result.stdout, /^ok: /);
  assert.match(result.stdout, /3 trials/);
});
