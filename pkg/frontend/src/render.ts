/**
 * Canvas renderer: gray moving-area disk, 1-degree red target, black cross
 * cursor, clipped ray field, and the simulated-PVL mask with its aperture
 * at the target.
 */
import {
  ClipJson,
  Point,
  Projection,
  RayConfigJson,
  Segment,
  degToPx,
  generateRays,
} from "./geometry.js";
import type { UiSettings } from "./settings.js";

export interface FrameState {
  cursor: Point;
  raysVisible: boolean;
  maskOn: boolean;
  trialActive: boolean;
}

export function projectionFor(canvas: { width: number; height: number }): Projection {
  return {
    centerXPx: canvas.width / 2,
    centerYPx: canvas.height / 2,
    pxPerDeg: canvas.height / 2 / 15,
  };
}

export function rayConfigFromSettings(s: UiSettings): RayConfigJson {
  return {
    num_rays: s.num_rays,
    start_offset_deg: s.start_offset_deg,
    max_length_deg: s.max_length_deg,
    outer_width_px: s.outer_width_px,
    inner_width_px: s.inner_width_px,
    opacity: s.opacity,
  };
}

export function clipFromSettings(s: UiSettings, maskOn: boolean): ClipJson {
  return {
    moving_area_radius_deg: 15,
    aperture: maskOn ? { center: [0, 0], radius_deg: s.aperture_radius_deg } : null,
  };
}

function drawSegments(
  ctx: CanvasRenderingContext2D, proj: Projection, segments: Segment[],
  color: string, widthPx: number, opacity: number,
): void {
  ctx.save();
  ctx.strokeStyle = color;
  ctx.lineWidth = widthPx;
  ctx.globalAlpha = opacity;
  ctx.beginPath();
  for (const seg of segments) {
    const [ax, ay] = degToPx({ x: seg.ax, y: seg.ay }, proj);
    const [bx, by] = degToPx({ x: seg.bx, y: seg.by }, proj);
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
  }
  ctx.stroke();
  ctx.restore();
}

export function renderFrame(
  ctx: CanvasRenderingContext2D, settings: UiSettings, state: FrameState,
): void {
  const canvas = ctx.canvas;
  const proj = projectionFor(canvas);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  // moving area: gray disk with the height of the screen
  const [cx, cy] = degToPx({ x: 0, y: 0 }, proj);
  ctx.fillStyle = "#d4d4d4";
  ctx.beginPath();
  ctx.arc(cx, cy, 15 * proj.pxPerDeg, 0, 2 * Math.PI);
  ctx.fill();

  if (!state.trialActive) return;

  // target: 1 deg diameter red disk at the center
  ctx.fillStyle = "#d62728";
  ctx.beginPath();
  ctx.arc(cx, cy, 0.5 * proj.pxPerDeg, 0, 2 * Math.PI);
  ctx.fill();

  if (state.raysVisible) {
    const segments = generateRays(
      state.cursor, rayConfigFromSettings(settings),
      clipFromSettings(settings, state.maskOn),
    );
    drawSegments(ctx, proj, segments, settings.outer_color,
                 settings.outer_width_px, settings.opacity);
    drawSegments(ctx, proj, segments, settings.inner_color,
                 settings.inner_width_px, settings.opacity);
  }

  // cursor: black cross, same 1 deg extent as the target, visible only
  // when inside the aperture while the mask is on
  const inAperture =
    Math.hypot(state.cursor.x, state.cursor.y) <= settings.aperture_radius_deg;
  if (!state.maskOn || inAperture) {
    const [px, py] = degToPx(state.cursor, proj);
    const arm = 0.5 * proj.pxPerDeg;
    ctx.strokeStyle = "#000000";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(px - arm, py);
    ctx.lineTo(px + arm, py);
    ctx.moveTo(px, py - arm);
    ctx.lineTo(px, py + arm);
    ctx.stroke();
  }

  if (state.maskOn) {
    // opaque mask over everything except the aperture at the target
    ctx.save();
    ctx.beginPath();
    ctx.rect(0, 0, canvas.width, canvas.height);
    ctx.arc(cx, cy, settings.aperture_radius_deg * proj.pxPerDeg, 0, 2 * Math.PI, true);
    ctx.fillStyle = "#1a1a1a";
    ctx.fill("evenodd");
    ctx.restore();
  }
}
