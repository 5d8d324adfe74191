/**
 * Degree-space geometry mirrored from the core service: ray-field
 * construction, moving-area clamping, and the linear degree<->pixel
 * projection. A shared fixture suite keeps this implementation within
 * 0.01 deg of the core's output.
 *
 * Coordinates: x rightward, y upward, origin at the screen center where
 * the target sits.
 */
const TAU = 2 * Math.PI;
/** Positive parameter where the ray cursor + t*u exits the centered disk. */
function areaExit(cursor, ux, uy, radius) {
    const b = cursor.x * ux + cursor.y * uy;
    const c = cursor.x * cursor.x + cursor.y * cursor.y - radius * radius;
    const disc = b * b - c;
    if (disc <= 0)
        return 0;
    return -b + Math.sqrt(disc);
}
/** Parameter interval of the line cursor + t*u inside an arbitrary disk. */
function diskInterval(cursor, ux, uy, center, radius) {
    const rx = cursor.x - center.x;
    const ry = cursor.y - center.y;
    const b = rx * ux + ry * uy;
    const c = rx * rx + ry * ry - radius * radius;
    const disc = b * b - c;
    if (disc <= 0)
        return null;
    const root = Math.sqrt(disc);
    return [-b - root, -b + root];
}
export function generateRays(cursor, cfg, clip) {
    const out = [];
    const eps = 1e-12;
    for (let k = 0; k < cfg.num_rays; k++) {
        const theta = (TAU * k) / cfg.num_rays;
        const ux = Math.cos(theta);
        const uy = Math.sin(theta);
        let hi = areaExit(cursor, ux, uy, clip.moving_area_radius_deg);
        if (cfg.max_length_deg !== null && cfg.max_length_deg !== undefined) {
            hi = Math.min(hi, cfg.max_length_deg);
        }
        let lo = cfg.start_offset_deg;
        if (clip.aperture) {
            const window = diskInterval(cursor, ux, uy, { x: clip.aperture.center[0], y: clip.aperture.center[1] }, clip.aperture.radius_deg);
            if (!window)
                continue;
            lo = Math.max(lo, window[0]);
            hi = Math.min(hi, window[1]);
        }
        if (hi - lo <= eps)
            continue;
        out.push({
            ax: cursor.x + lo * ux,
            ay: cursor.y + lo * uy,
            bx: cursor.x + hi * ux,
            by: cursor.y + hi * uy,
        });
    }
    return out;
}
export function clampToArea(p, movingAreaRadius) {
    const r = Math.hypot(p.x, p.y);
    if (r <= movingAreaRadius)
        return p;
    const k = movingAreaRadius / r;
    return { x: p.x * k, y: p.y * k };
}
/** Linear projection; pixel y grows downward while degree y grows upward. */
export function degToPx(p, proj) {
    return [proj.centerXPx + p.x * proj.pxPerDeg, proj.centerYPx - p.y * proj.pxPerDeg];
}
export function pxToDeg(xPx, yPx, proj) {
    return {
        x: (xPx - proj.centerXPx) / proj.pxPerDeg,
        y: (proj.centerYPx - yPx) / proj.pxPerDeg,
    };
}
