"""Anticipatory buffer control and resource allocation for wireless video streaming."""

from ._core import (  # noqa: F401
    AdmissionConfig,
    AllocationPlan,
    BufferTimeline,
    ChannelTrace,
    ConfigError,
    LinkBudget,
    LpSolution,
    LpStatus,
    PlannerKind,
    ScenarioConfig,
    ShadowingParams,
    VideoSpec,
    __version__,
    build_buffer_matrix,
    default_config_text,
    path_loss_db,
    per_prb_bits,
    plan_anticipatory,
    plan_baseline,
    run_buffer_sweep,
    run_multiuser,
    run_single_user,
    scenario_trace,
    shadowing_db,
    simulate_playback,
    solve_lp,
    step_buffer,
)
