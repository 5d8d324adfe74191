/**
 * Ray-field visibility rules.
 *
 * always_on: rays follow the cursor whenever the pointer tool is enabled.
 * auto: rays appear on motion and vanish once the cursor has been static
 *       for vanish_after_static_ms (default 50 ms).
 * manual: rays are visible only while the configured key chord is held.
 */
export class RayActivation {
    mode;
    vanishAfterStaticMs;
    lastMoveAt = Number.NEGATIVE_INFINITY;
    chordHeld = false;
    constructor(mode, opts = {}) {
        this.mode = mode;
        this.vanishAfterStaticMs = opts.vanishAfterStaticMs ?? 50;
        if (this.vanishAfterStaticMs <= 0) {
            throw new Error("vanish_after_static_ms must be positive");
        }
    }
    onPointerMove(nowMs) {
        this.lastMoveAt = nowMs;
    }
    onChordChange(held) {
        this.chordHeld = held;
    }
    visible(nowMs) {
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
