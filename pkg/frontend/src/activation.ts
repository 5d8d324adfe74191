/**
 * Ray-field visibility rules.
 *
 * always_on: rays follow the cursor whenever the pointer tool is enabled.
 * auto: rays appear on motion and vanish once the cursor has been static
 *       for vanish_after_static_ms (default 50 ms).
 * manual: rays are visible only while the configured key chord is held.
 */

export type ActivationMode = "always_on" | "auto" | "manual";

export interface ActivationOptions {
  vanishAfterStaticMs?: number;
}

export class RayActivation {
  readonly mode: ActivationMode;
  readonly vanishAfterStaticMs: number;
  private lastMoveAt = Number.NEGATIVE_INFINITY;
  private chordHeld = false;

  constructor(mode: ActivationMode, opts: ActivationOptions = {}) {
    this.mode = mode;
    this.vanishAfterStaticMs = opts.vanishAfterStaticMs ?? 50;
    if (this.vanishAfterStaticMs <= 0) {
      throw new Error("vanish_after_static_ms must be positive");
    }
  }

  onPointerMove(nowMs: number): void {
    this.lastMoveAt = nowMs;
  }

  onChordChange(held: boolean): void {
    this.chordHeld = held;
  }

  visible(nowMs: number): boolean {
    switch (this.mode) {
      case "always_on":
        return true;
      case "manual":
        return this.chordHeld;
      case "auto":
        return nowMs - this.lastMoveAt < this.vanishAfterStaticMs;
    }
  }
}
