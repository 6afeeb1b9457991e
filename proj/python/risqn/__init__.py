"""Entanglement distribution over RIS-assisted free-space optical links."""

from ._risqn import (
    BellDiagonalState,
    EnvironmentParams,
    NoFeasibleSolution,
    Point3D,
    ProblemInstance,
    QuadratureError,
    alpha_from_rate,
    atmospheric_loss,
    distance,
    e2e_state,
    environment,
    evaluate,
    exhaustive_search,
    experiment_names,
    gamma_gamma_pdf,
    instance_from_config,
    jfi,
    optimize,
    phase_damp_prob,
    prob_success,
    prob_success_mc,
    rate_from_alpha,
    run_experiment,
    rytov_variance,
    specfun,
    storage_time,
    turbulence_params,
    werner_from_alpha,
    wfi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
