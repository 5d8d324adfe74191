import { serializeSession } from "./session.js";
export async function fetchSchedule(condition, seed) {
    const resp = await fetch(`/api/v1/schedule?condition=${encodeURIComponent(condition)}&seed=${seed}`);
    if (!resp.ok)
        throw new Error(`schedule request failed: ${resp.status}`);
    return (await resp.json());
}
export async function fetchServiceSettings() {
    const resp = await fetch("/api/v1/settings");
    if (!resp.ok)
        throw new Error(`settings request failed: ${resp.status}`);
    return await resp.json();
}
export async function uploadSession(log) {
    const body = serializeSession(log);
    const resp = await fetch("/api/v1/sessions", {
        method: "POST",
        headers: { "Content-Type": "application/json; charset=utf-8" },
        body,
    });
    const payload = await resp.json().catch(() => ({}));
    if (resp.status === 201) {
        return { ok: true, status: 201, stored: payload.stored };
    }
    return { ok: false, status: resp.status, error: payload.error, path: payload.path };
}
/** Identical bytes whether uploaded or downloaded. */
export function downloadSession(log, filename) {
    const blob = new Blob([serializeSession(log)], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    anchor.click();
    URL.revokeObjectURL(url);
}
