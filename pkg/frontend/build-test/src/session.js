export function initialCursorPosition(spec) {
    return {
        x: spec.distance_deg * Math.cos(spec.angle_rad),
        y: spec.distance_deg * Math.sin(spec.angle_rad),
    };
}
export const SAMPLE_RATE_HZ = 33;
/** Integer milliseconds of grid index k: round half up of k*1000/rate. */
export function gridMs(k, rateHz = SAMPLE_RATE_HZ) {
    return Math.floor((2000 * k + rateHz) / (2 * rateHz));
}
/**
 * Linear interpolation of a display-rate capture onto the 33 Hz grid.
 * Positions are taken at the exact grid instants; stored times are the
 * rounded integer milliseconds, so exports always carry integral,
 * strictly increasing timestamps.
 */
export function resampleCapture(samples, rateHz = SAMPLE_RATE_HZ) {
    if (samples.length < 2) {
        return samples.map((s) => [Math.round(s.t), s.x, s.y]);
    }
    const tLast = samples[samples.length - 1].t;
    const nGrid = Math.floor((tLast * rateHz) / 1000 + 1e-9) + 1;
    const interp = (t) => {
        if (t <= samples[0].t)
            return [samples[0].x, samples[0].y];
        if (t >= tLast) {
            const last = samples[samples.length - 1];
            return [last.x, last.y];
        }
        let lo = 0;
        let hi = samples.length - 1;
        while (hi - lo > 1) {
            const mid = (lo + hi) >> 1;
            if (samples[mid].t <= t)
                lo = mid;
            else
                hi = mid;
        }
        const a = samples[lo];
        const b = samples[hi];
        const w = (t - a.t) / (b.t - a.t);
        return [a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)];
    };
    const out = [];
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
export function serializeSession(log) {
    return `${JSON.stringify(log)}\n`;
}
