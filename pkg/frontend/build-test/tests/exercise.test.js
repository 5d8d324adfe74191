import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";
import { ExerciseRunner, StateError } from "../src/exercise.js";
import { gridMs, resampleCapture } from "../src/session.js";
const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");
function loadSchedule() {
    return JSON.parse(readFileSync(join(FIXTURES, "schedule_sp-simpvl_seed7.json"), "utf-8"));
}
function makeRunner(now) {
    return new ExerciseRunner(loadSchedule(), {
        gainDegPerCount: 30 / 1050,
        interTrialMs: 0,
        now: () => now.t,
    });
}
test("state machine never skips states", () => {
    const now = { t: 0 };
    const runner = makeRunner(now);
    assert.equal(runner.phase, "inter_trial");
    assert.throws(() => runner.beginTrial(), StateError); // must arm first
    assert.throws(() => runner.click(), StateError);
    runner.armStart();
    assert.equal(runner.phase, "await_start");
    runner.beginTrial();
    assert.equal(runner.phase, "active");
    assert.throws(() => runner.beginTrial(), StateError);
});
test("only on-target clicks complete a trial", () => {
    const now = { t: 0 };
    const runner = makeRunner(now);
    runner.armStart();
    runner.beginTrial();
    const spec = loadSchedule().trials[0];
    now.t = 100;
    runner.sample();
    assert.equal(runner.click(), "continue"); // cursor still at the start
    assert.equal(runner.phase, "active");
    // walk the cursor onto the target: counts = degrees / gain, y inverted
    const gain = 30 / 1050;
    const sx = spec.distance_deg * Math.cos(spec.angle_rad);
    const sy = spec.distance_deg * Math.sin(spec.angle_rad);
    runner.pointerDelta(-sx / gain, sy / gain);
    now.t = 600;
    runner.sample();
    assert.equal(runner.click(), "completed");
    assert.equal(runner.phase, "completed");
    runner.advance();
    assert.equal(runner.phase, "inter_trial");
    assert.equal(runner.completedCount, 1);
});
test("pointer capture loss aborts and flags the trial", () => {
    const now = { t: 0 };
    const runner = makeRunner(now);
    runner.armStart();
    runner.beginTrial();
    now.t = 250;
    runner.sample();
    runner.abortTrial();
    assert.equal(runner.phase, "completed");
    runner.advance();
    const log = runner.exportLog({
        profile: { participant_id: "x", kind: "human" },
        geometry: {}, ray_config: {}, clip: {},
    });
    assert.equal(log.trials[0].outcome, "aborted");
    assert.equal(log.trials[0].click_events.length, 0);
});
test("cursor never exits the moving area", () => {
    const now = { t: 0 };
    const runner = makeRunner(now);
    runner.armStart();
    runner.beginTrial();
    runner.pointerDelta(100000, 0);
    const pos = runner.cursorPos;
    assert.ok(Math.hypot(pos.x, pos.y) <= 15 + 1e-9);
});
test("export resamples onto the drift-free 33 Hz integer grid", () => {
    assert.equal(gridMs(0), 0);
    assert.equal(gridMs(1), 30);
    assert.equal(gridMs(2), 61);
    assert.equal(gridMs(33), 1000); // exactly one second after 33 samples
    const rows = resampleCapture([
        { t: 0, x: 0, y: 0 },
        { t: 60.606, x: 1, y: 0 },
    ]);
    assert.deepEqual(rows.map((r) => r[0]), [0, 30, 61]);
    assert.ok(Math.abs(rows[1][1] - 0.5) < 1e-6);
    for (let i = 1; i < rows.length; i++) {
        assert.ok(rows[i][0] > rows[i - 1][0]);
        assert.ok(Number.isInteger(rows[i][0]));
    }
});
