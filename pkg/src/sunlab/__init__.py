"""sunlab: radial-cue pointer laboratory.

Generates the pointer's ray field and trial protocol, simulates synthetic
participants under each condition, and analyzes session logs with the full
metric and statistical pipeline. See the CLI (`sunlab --help`) and the
HTTP service for the external surfaces.
"""
from .geometry import (
    Aperture,
    ClipRegion,
    Condition,
    PointDeg,
    RayConfig,
    ScreenGeometry,
    Segment,
    TrialSchedule,
    TrialSpec,
    clamp_to_area,
    deg_to_px,
    generate_rays,
    generate_schedule,
    initial_cursor_position,
    mouse_gain,
    px_to_deg,
)
from .metrics import (
    GazeProfile,
    MetricsConfig,
    TrialMetrics,
    classify_gaze,
    compute_trial_metrics,
    decompose_times,
    delay_decomposition,
    gaze_profile,
    mean_velocity,
    overshoot_path,
    path_length,
    vf_idt_ratio,
)
from .session import (
    ParticipantProfile,
    PointerSample,
    GazeSample,
    SessionLog,
    SessionValidationError,
    TrialRecord,
    parse,
    resample_uniform,
    serialize,
)
from .simulator import (
    AgentModel,
    LatencyModel,
    MovementModel,
    PerceptionModel,
    VelocityLaw,
    preset,
    simulate_estimation_trial,
    simulate_session,
    simulate_trial,
)
from .stats import (
    FittsFit,
    LinearFit,
    MannWhitneyResult,
    fitts_fit,
    index_of_difficulty,
    linear_fit,
    mann_whitney,
)

__version__ = "0.1.0"
