/**
 * Trial state machine and capture pipeline.
 *
 * Phases cycle InterTrial -> AwaitStart -> Active -> Completed -> InterTrial.
 * During Active the virtual cursor integrates raw device counts times the
 * configured gain (degrees per count), clamped to the moving area, and is
 * sampled at the display rate. A click finishes the trial only when the
 * cursor sits inside the target disk; losing pointer capture aborts the
 * trial and flags it.
 */
import { clampToArea } from "./geometry.js";
import { initialCursorPosition, resampleCapture, } from "./session.js";
export class StateError extends Error {
}
export class ExerciseRunner {
    schedule;
    phase = "inter_trial";
    gain;
    areaRadius;
    targetRadius;
    interTrialMs;
    now;
    trialIndex = 0;
    interTrialEntered;
    cursor = { x: 0, y: 0 };
    t0 = 0;
    buffer = [];
    clicks = [];
    done = [];
    constructor(schedule, opts) {
        if (opts.gainDegPerCount <= 0)
            throw new StateError("gain must be positive");
        this.schedule = schedule;
        this.gain = opts.gainDegPerCount;
        this.areaRadius = opts.movingAreaRadiusDeg ?? 15;
        this.targetRadius = opts.targetRadiusDeg ?? 0.5;
        this.interTrialMs = opts.interTrialMs ?? 1500;
        this.now = opts.now ?? (() => performance.now());
        this.interTrialEntered = this.now();
    }
    get currentSpec() {
        return this.trialIndex < this.schedule.trials.length
            ? this.schedule.trials[this.trialIndex]
            : null;
    }
    get cursorPos() {
        return this.cursor;
    }
    get completedCount() {
        return this.done.length;
    }
    /** InterTrial is a timed recentering pause before the start click arms. */
    interTrialRemainingMs() {
        if (this.phase !== "inter_trial")
            return 0;
        return Math.max(0, this.interTrialMs - (this.now() - this.interTrialEntered));
    }
    armStart() {
        if (this.phase !== "inter_trial")
            throw new StateError(`cannot arm from ${this.phase}`);
        if (this.interTrialRemainingMs() > 0)
            return; // still recentering
        if (this.trialIndex >= this.schedule.trials.length) {
            this.phase = "finished";
            return;
        }
        this.phase = "await_start";
    }
    /** The start click: places the cursor and begins capture at t = 0. */
    beginTrial() {
        if (this.phase !== "await_start") {
            throw new StateError(`cannot begin a trial from ${this.phase}`);
        }
        const spec = this.currentSpec;
        if (!spec)
            throw new StateError("no trials left");
        this.cursor = initialCursorPosition(spec);
        this.t0 = this.now();
        this.buffer = [{ t: 0, x: this.cursor.x, y: this.cursor.y }];
        this.clicks = [];
        this.phase = "active";
    }
    /** Raw relative device counts; y counts grow downward on devices. */
    pointerDelta(dxCounts, dyCounts) {
        if (this.phase !== "active")
            return;
        this.cursor = clampToArea({
            x: this.cursor.x + dxCounts * this.gain,
            y: this.cursor.y - dyCounts * this.gain,
        }, this.areaRadius);
    }
    /** Display-rate sampling tick (call once per rendered frame). */
    sample() {
        if (this.phase !== "active")
            return;
        const t = this.now() - this.t0;
        const last = this.buffer[this.buffer.length - 1];
        if (t > last.t) {
            this.buffer.push({ t, x: this.cursor.x, y: this.cursor.y });
        }
    }
    /** A click during Active completes the trial only on target. */
    click() {
        if (this.phase !== "active")
            throw new StateError(`cannot click from ${this.phase}`);
        const t = this.now() - this.t0;
        this.clicks.push({ t, x: this.cursor.x, y: this.cursor.y });
        if (Math.hypot(this.cursor.x, this.cursor.y) > this.targetRadius) {
            return "continue"; // off-target clicks do not end the trial
        }
        const last = this.buffer[this.buffer.length - 1];
        if (t > last.t)
            this.buffer.push({ t, x: this.cursor.x, y: this.cursor.y });
        this.finishTrial("completed");
        return "completed";
    }
    /** Pointer-capture loss (or operator abort) flags the trial. */
    abortTrial() {
        if (this.phase !== "active")
            return;
        this.finishTrial("aborted");
    }
    finishTrial(outcome) {
        const spec = this.currentSpec;
        if (!spec)
            throw new StateError("no current trial");
        this.done.push({
            spec,
            outcome,
            samples: this.buffer,
            clicks: outcome === "completed" ? this.clicks : [],
        });
        this.trialIndex += 1;
        this.phase = "completed";
    }
    /** Completed -> InterTrial (recentering pause) or Finished. */
    advance() {
        if (this.phase !== "completed")
            throw new StateError(`cannot advance from ${this.phase}`);
        this.interTrialEntered = this.now();
        this.phase = this.trialIndex >= this.schedule.trials.length ? "finished" : "inter_trial";
    }
    exportLog(meta) {
        const trials = this.done.map((t) => ({
            spec: t.spec,
            outcome: t.outcome,
            pointer_samples: resampleCapture(t.samples),
            click_events: t.clicks.map((c) => ({
                t_ms: Math.round(c.t),
                pos: [c.x, c.y],
                button: "left",
            })),
            gaze_samples: null,
        }));
        return {
            schema_version: "1",
            created_at: meta.created_at ?? new Date().toISOString().replace(/\.\d+Z$/, "Z"),
            profile: meta.profile,
            geometry: meta.geometry,
            ray_config: meta.ray_config,
            clip: meta.clip,
            schedule_seed: this.schedule.seed,
            trials,
        };
    }
}
