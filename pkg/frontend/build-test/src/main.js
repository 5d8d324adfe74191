/**
 * Browser entry point: fetches the schedule and service settings, runs the
 * pointing exercise under pointer lock, and uploads (or downloads) the
 * session log when the 24 trials are done.
 */
import { RayActivation } from "./activation.js";
import { downloadSession, fetchSchedule, fetchServiceSettings, uploadSession } from "./api.js";
import { ExerciseRunner } from "./exercise.js";
import { renderFrame } from "./render.js";
import { loadSettings, saveSettings } from "./settings.js";
function query(name, fallback) {
    return new URLSearchParams(window.location.search).get(name) ?? fallback;
}
async function boot() {
    const canvas = document.getElementById("stage");
    const banner = document.getElementById("banner");
    const ctx = canvas.getContext("2d");
    if (!ctx)
        throw new Error("canvas unavailable");
    const settings = loadSettings(window.localStorage);
    const condition = query("condition", settings.condition);
    const seed = Number.parseInt(query("seed", "7"), 10);
    settings.condition = condition;
    const raysOn = condition.startsWith("sp-");
    const maskOn = settings.mask_enabled && condition === "sp-simpvl";
    let service = null;
    try {
        service = await fetchServiceSettings();
    }
    catch {
        banner.textContent = "service unreachable; offline mode (download only)";
    }
    const schedule = await fetchSchedule(condition, seed).catch(() => null);
    if (!schedule) {
        banner.textContent = "cannot fetch schedule; is the sunlab service running?";
        return;
    }
    const runner = new ExerciseRunner(schedule, {
        gainDegPerCount: settings.gain_deg_per_count,
    });
    const activation = new RayActivation(settings.activation, {
        vanishAfterStaticMs: settings.vanish_after_static_ms,
    });
    const resize = () => {
        canvas.width = window.innerWidth;
        canvas.height = window.innerHeight;
    };
    window.addEventListener("resize", resize);
    resize();
    let captureLost = false;
    document.addEventListener("pointerlockchange", () => {
        if (document.pointerLockElement !== canvas && runner.phase === "active") {
            captureLost = true;
            runner.abortTrial();
            banner.textContent = "pointer capture lost: trial aborted and flagged";
        }
    });
    canvas.addEventListener("mousemove", (ev) => {
        if (document.pointerLockElement === canvas && runner.phase === "active") {
            runner.pointerDelta(ev.movementX, ev.movementY);
            activation.onPointerMove(performance.now());
        }
    });
    window.addEventListener("keydown", (ev) => {
        if (ev.key === settings.manual_chord)
            activation.onChordChange(true);
    });
    window.addEventListener("keyup", (ev) => {
        if (ev.key === settings.manual_chord)
            activation.onChordChange(false);
    });
    canvas.addEventListener("mousedown", async (ev) => {
        if (ev.button !== 0)
            return;
        if (document.pointerLockElement !== canvas) {
            // blocking instruction screen until capture is granted
            await canvas.requestPointerLock();
            return;
        }
        if (runner.phase === "inter_trial") {
            runner.armStart();
        }
        const phase = runner.phase;
        if (phase === "await_start") {
            runner.beginTrial();
        }
        else if (phase === "active") {
            if (runner.click() === "completed") {
                runner.advance();
                if (runner.phase === "finished") {
                    await finish();
                }
            }
        }
    });
    async function finish() {
        const log = runner.exportLog({
            profile: {
                participant_id: query("participant", "ui-participant"),
                kind: "human",
                laterality: "right",
                vision_disorder: "none",
            },
            geometry: service?.geometry
                ? {
                    width_px: service.geometry.width_px,
                    height_px: service.geometry.height_px,
                    width_cm: 52.0,
                    height_cm: 32.0,
                    viewing_distance_cm: 59.7,
                    half_height_deg: service.geometry.half_height_deg,
                }
                : {
                    width_px: 1680, height_px: 1050, width_cm: 52.0, height_cm: 32.0,
                    viewing_distance_cm: 59.7, half_height_deg: 15.0,
                },
            ray_config: {
                num_rays: settings.num_rays,
                start_offset_deg: settings.start_offset_deg,
                outer_color: [0, 0, 0, 255],
                inner_color: [255, 255, 255, 255],
                outer_width_px: settings.outer_width_px,
                inner_width_px: settings.inner_width_px,
                opacity: settings.opacity,
                max_length_deg: settings.max_length_deg,
            },
            clip: {
                moving_area_radius_deg: 15.0,
                aperture: maskOn ? { center: [0, 0], radius_deg: settings.aperture_radius_deg } : null,
            },
        });
        const name = `${condition}-${seed}.session.json`;
        const result = service ? await uploadSession(log).catch(() => null) : null;
        if (result?.ok) {
            banner.textContent = `uploaded: ${result.stored}`;
        }
        else if (result) {
            banner.textContent = `rejected (${result.status}) at ${result.path}: ${result.error}; downloading instead`;
            downloadSession(log, name);
        }
        else {
            banner.textContent = "offline: session downloaded";
            downloadSession(log, name);
        }
        saveSettings(window.localStorage, settings);
        document.exitPointerLock();
    }
    const frame = () => {
        runner.sample();
        const phaseText = {
            inter_trial: "replace the mouse at the center of its area, then click",
            await_start: "click to start the next trial",
            active: "",
            completed: "",
            finished: "exercise complete",
        };
        if (runner.phase === "completed")
            runner.advance();
        if (!captureLost)
            banner.textContent = phaseText[runner.phase] ?? "";
        captureLost = false;
        renderFrame(ctx, settings, {
            cursor: runner.cursorPos,
            raysVisible: raysOn && activation.visible(performance.now()),
            maskOn,
            trialActive: runner.phase === "active",
        });
        window.requestAnimationFrame(frame);
    };
    window.requestAnimationFrame(frame);
}
boot().catch((err) => {
    const banner = document.getElementById("banner");
    if (banner)
        banner.textContent = String(err);
});
