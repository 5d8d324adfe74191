/**
 * Session log assembly for exported exercises: the same JSON schema the
 * core parser validates (schema_version "1"), with capture resampled onto
 * the drift-free 33 Hz integer-millisecond grid.
 */
import type { Point } from "./geometry.js";

export interface TrialSpecJson {
  trial_id: number;
  condition: string;
  distance_deg: number;
  angle_rad: number;
  seed: number;
}

export interface ScheduleJson {
  exercise_id: string;
  condition: string;
  seed: number;
  trials: TrialSpecJson[];
}

export interface CaptureSample {
  t: number; // milliseconds since trial display, sub-millisecond allowed
  x: number;
  y: number;
}

export interface TrialExport {
  spec: TrialSpecJson;
  outcome: "completed" | "aborted";
  pointer_samples: [number, number, number][];
  click_events: { t_ms: number; pos: [number, number]; button: string }[];
  gaze_samples: null;
}

export interface SessionExport {
  schema_version: "1";
  created_at: string;
  profile: Record<string, unknown>;
  geometry: Record<string, unknown>;
  ray_config: Record<string, unknown>;
  clip: Record<string, unknown>;
  schedule_seed: number;
  trials: TrialExport[];
}

export function initialCursorPosition(spec: TrialSpecJson): Point {
  return {
    x: spec.distance_deg * Math.cos(spec.angle_rad),
    y: spec.distance_deg * Math.sin(spec.angle_rad),
  };
}

export const SAMPLE_RATE_HZ = 33;

/** Integer milliseconds of grid index k: round half up of k*1000/rate. */
export function gridMs(k: number, rateHz: number = SAMPLE_RATE_HZ): number {
  return Math.floor((2000 * k + rateHz) / (2 * rateHz));
}

/**
 * Linear interpolation of a display-rate capture onto the 33 Hz grid.
 * Positions are taken at the exact grid instants; stored times are the
 * rounded integer milliseconds, so exports always carry integral,
 * strictly increasing timestamps.
 */
export function resampleCapture(
  samples: CaptureSample[], rateHz: number = SAMPLE_RATE_HZ,
): [number, number, number][] {
  if (samples.length < 2) {
    return samples.map((s) => [Math.round(s.t), s.x, s.y]);
  }
  const tLast = samples[samples.length - 1].t;
  const nGrid = Math.floor((tLast * rateHz) / 1000 + 1e-9) + 1;

  const interp = (t: number): [number, number] => {
    if (t <= samples[0].t) return [samples[0].x, samples[0].y];
    if (t >= tLast) {
      const last = samples[samples.length - 1];
      return [last.x, last.y];
    }
    let lo = 0;
    let hi = samples.length - 1;
    while (hi - lo > 1) {
      const mid = (lo + hi) >> 1;
      if (samples[mid].t <= t) lo = mid;
      else hi = mid;
    }
    const a = samples[lo];
    const b = samples[hi];
    const w = (t - a.t) / (b.t - a.t);
    return [a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)];
  };

  const out: [number, number, number][] = [];
  for (let k = 0; k < nGrid; k++) {
    const [x, y] = interp((k * 1000) / rateHz);
    out.push([gridMs(k, rateHz), x, y]);
  }
  // preserve the final captured position when it falls past the grid
  const lastGridT = out[out.length - 1][0];
  const tail = Math.round(tLast);
  if (tail > lastGridT) {
    const last = samples[samples.length - 1];
    out.push([tail, last.x, last.y]);
  }
  return out;
}

export function serializeSession(log: SessionExport): string {
  return `${JSON.stringify(log)}\n`;
}
