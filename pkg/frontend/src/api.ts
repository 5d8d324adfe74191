/** Service endpoints plus the offline download fallback. */
import type { ScheduleJson, SessionExport } from "./session.js";
import { serializeSession } from "./session.js";

export interface UploadResult {
  ok: boolean;
  status: number;
  error?: string;
  path?: string;
  stored?: string;
}

export async function fetchSchedule(condition: string, seed: number): Promise<ScheduleJson> {
  const resp = await fetch(
    `/api/v1/schedule?condition=${encodeURIComponent(condition)}&seed=${seed}`,
  );
  if (!resp.ok) throw new Error(`schedule request failed: ${resp.status}`);
  return (await resp.json()) as ScheduleJson;
}

export async function fetchServiceSettings(): Promise<Record<string, any>> {
  const resp = await fetch("/api/v1/settings");
  if (!resp.ok) throw new Error(`settings request failed: ${resp.status}`);
  return await resp.json();
}

export async function uploadSession(log: SessionExport): Promise<UploadResult> {
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
export function downloadSession(log: SessionExport, filename: string): void {
  const blob = new Blob([serializeSession(log)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}
