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
import type { Point } from "./geometry.js";
import {
  CaptureSample,
  ScheduleJson,
  SessionExport,
  TrialExport,
  TrialSpecJson,
  initialCursorPosition,
  resampleCapture,
} from "./session.js";

export type Phase = "inter_trial" | "await_start" | "active" | "completed" | "finished";

export interface RunnerOptions {
  gainDegPerCount: number;
  movingAreaRadiusDeg?: number;
  targetRadiusDeg?: number;
  interTrialMs?: number;
  now?: () => number;
}

export class StateError extends Error {}

interface FinishedTrial {
  spec: TrialSpecJson;
  outcome: "completed" | "aborted";
  samples: CaptureSample[];
  clicks: { t: number; x: number; y: number }[];
}

export class ExerciseRunner {
  readonly schedule: ScheduleJson;
  phase: Phase = "inter_trial";
  private readonly gain: number;
  private readonly areaRadius: number;
  private readonly targetRadius: number;
  private readonly interTrialMs: number;
  private readonly now: () => number;
  private trialIndex = 0;
  private interTrialEntered: number;
  private cursor: Point = { x: 0, y: 0 };
  private t0 = 0;
  private buffer: CaptureSample[] = [];
  private clicks: { t: number; x: number; y: number }[] = [];
  private done: FinishedTrial[] = [];

  constructor(schedule: ScheduleJson, opts: RunnerOptions) {
    if (opts.gainDegPerCount <= 0) throw new StateError("gain must be positive");
    this.schedule = schedule;
    this.gain = opts.gainDegPerCount;
    this.areaRadius = opts.movingAreaRadiusDeg ?? 15;
    this.targetRadius = opts.targetRadiusDeg ?? 0.5;
    this.interTrialMs = opts.interTrialMs ?? 1500;
    this.now = opts.now ?? (() => performance.now());
    this.interTrialEntered = this.now();
  }

  get currentSpec(): TrialSpecJson | null {
    return this.trialIndex < this.schedule.trials.length
      ? this.schedule.trials[this.trialIndex]
      : null;
  }

  get cursorPos(): Point {
    return this.cursor;
  }

  get completedCount(): number {
    return this.done.length;
  }

  /** InterTrial is a timed recentering pause before the start click arms. */
  interTrialRemainingMs(): number {
    if (this.phase !== "inter_trial") return 0;
    return Math.max(0, this.interTrialMs - (this.now() - this.interTrialEntered));
  }

  armStart(): void {
    if (this.phase !== "inter_trial") throw new StateError(`cannot arm from ${this.phase}`);
    if (this.interTrialRemainingMs() > 0) return; // still recentering
    if (this.trialIndex >= this.schedule.trials.length) {
      this.phase = "finished";
      return;
    }
    this.phase = "await_start";
  }

  /** The start click: places the cursor and begins capture at t = 0. */
  beginTrial(): void {
    if (this.phase !== "await_start") {
      throw new StateError(`cannot begin a trial from ${this.phase}`);
    }
    const spec = this.currentSpec;
    if (!spec) throw new StateError("no trials left");
    this.cursor = initialCursorPosition(spec);
    this.t0 = this.now();
    this.buffer = [{ t: 0, x: this.cursor.x, y: this.cursor.y }];
    this.clicks = [];
    this.phase = "active";
  }

  /** Raw relative device counts; y counts grow downward on devices. */
  pointerDelta(dxCounts: number, dyCounts: number): void {
    if (this.phase !== "active") return;
    this.cursor = clampToArea(
      {
        x: this.cursor.x + dxCounts * this.gain,
        y: this.cursor.y - dyCounts * this.gain,
      },
      this.areaRadius,
    );
  }

  /** Display-rate sampling tick (call once per rendered frame). */
  sample(): void {
    if (this.phase !== "active") return;
    const t = this.now() - this.t0;
    const last = this.buffer[this.buffer.length - 1];
    if (t > last.t) {
      this.buffer.push({ t, x: this.cursor.x, y: this.cursor.y });
    }
  }

  /** A click during Active completes the trial only on target. */
  click(): "completed" | "continue" {
    if (this.phase !== "active") throw new StateError(`cannot click from ${this.phase}`);
    const t = this.now() - this.t0;
    this.clicks.push({ t, x: this.cursor.x, y: this.cursor.y });
    if (Math.hypot(this.cursor.x, this.cursor.y) > this.targetRadius) {
      return "continue"; // off-target clicks do not end the trial
    }
    const last = this.buffer[this.buffer.length - 1];
    if (t > last.t) this.buffer.push({ t, x: this.cursor.x, y: this.cursor.y });
    this.finishTrial("completed");
    return "completed";
  }

  /** Pointer-capture loss (or operator abort) flags the trial. */
  abortTrial(): void {
    if (this.phase !== "active") return;
    this.finishTrial("aborted");
  }

  private finishTrial(outcome: "completed" | "aborted"): void {
    const spec = this.currentSpec;
    if (!spec) throw new StateError("no current trial");
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
  advance(): void {
    if (this.phase !== "completed") throw new StateError(`cannot advance from ${this.phase}`);
    this.interTrialEntered = this.now();
    this.phase = this.trialIndex >= this.schedule.trials.length ? "finished" : "inter_trial";
  }

  exportLog(meta: {
    profile: Record<string, unknown>;
    geometry: Record<string, unknown>;
    ray_config: Record<string, unknown>;
    clip: Record<string, unknown>;
    created_at?: string;
  }): SessionExport {
    const trials: TrialExport[] = this.done.map((t) => ({
      spec: t.spec,
      outcome: t.outcome,
      pointer_samples: resampleCapture(t.samples),
      click_events: t.clicks.map((c) => ({
        t_ms: Math.round(c.t),
        pos: [c.x, c.y] as [number, number],
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
