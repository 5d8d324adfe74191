export const SETTINGS_KEY = "sunlab.settings.v1";
export const DEFAULT_SETTINGS = {
    num_rays: 128,
    start_offset_deg: 2.0,
    outer_color: "#000000",
    inner_color: "#ffffff",
    outer_width_px: 2,
    inner_width_px: 1,
    opacity: 1.0,
    max_length_deg: null,
    activation: "always_on",
    vanish_after_static_ms: 50,
    manual_chord: "Alt",
    condition: "sp-simpvl",
    gain_deg_per_count: 30 / 1050, // reference: screen height (30 deg) per 1050 counts
    mask_enabled: true,
    aperture_radius_deg: 1.5,
};
export function validateSettings(s) {
    if (s.vanish_after_static_ms <= 0)
        throw new Error("vanish_after_static_ms must be > 0");
    if (s.gain_deg_per_count <= 0)
        throw new Error("gain must be > 0");
    if (s.num_rays < 3)
        throw new Error("num_rays must be at least 3");
    if (s.opacity < 0 || s.opacity > 1)
        throw new Error("opacity must lie in [0, 1]");
}
export function loadSettings(storage) {
    const raw = storage.getItem(SETTINGS_KEY);
    if (!raw)
        return { ...DEFAULT_SETTINGS };
    try {
        const merged = { ...DEFAULT_SETTINGS, ...JSON.parse(raw) };
        validateSettings(merged);
        return merged;
    }
    catch {
        return { ...DEFAULT_SETTINGS };
    }
}
export function saveSettings(storage, settings) {
    validateSettings(settings);
    storage.setItem(SETTINGS_KEY, JSON.stringify(settings));
}
