"""Numerical laboratory for Fourier partial-sum divergence phenomena.

The package builds explicit trigonometric polynomials whose partial sums
grow at prescribed rates on dyadic-approximation and comb sets, certifies
the supporting inequalities on exact grids, and estimates divergence
indices, level sets, and box dimensions at finite scale. Everything is
seeded; rerunning any entry point reproduces its output byte for byte.
"""

from .analysis import (
    DivergenceEstimate,
    LevelSetOracle,
    ProbeConfig,
    ProbeResult,
    divergence_index,
    divergence_profile,
    dyadic_schedule,
    dyadic_test_points,
    level_set,
    partial_sums_at,
    prevalence_probe,
    spectrum_curve,
)
from .construct import (
    HoloKernelParams,
    LogSaturator,
    SaturatorFamily,
    bump_chi,
    chi_coefficients,
    disjoint_family,
    eps_floor,
    holo_boundary,
    holo_kernel,
    holo_log_derivative,
    log_lift,
    log_saturator,
    logsat_certificate,
    negative_frequency_ratio,
    residual_witness,
    saturator_certificate,
    saturator_pj,
    saturator_scale,
)
from .sets import (
    BoxDimEstimate,
    CombParams,
    DyadicFamily,
    DyadicFamilyParams,
    GaugeSpec,
    box_dimension,
    comb_membership,
    count_occupied_boxes,
    dyadic_approx_exponent,
    dyadic_family,
    gauge_eval,
    limsup_membership,
    middle_thirds_cantor,
    scale_matched_dyadic_counts,
    smallest_admissible_level,
)
from .trig import (
    AliasingError,
    GridSignal,
    SpectrumInterval,
    TrigPoly,
    dirichlet_eval,
    fejer_mean,
    grid_for_degree,
    lp_norm,
    modulate,
    partial_sum,
    poly_norm,
)
from .util import DEFAULT_SEED, loglog_fit, round_sig, trial_rng
from .verify import (
    HoloBounds,
    VerificationReport,
    check_derivative_bound,
    check_holo_bounds,
    check_localization,
    check_nikolsky,
    check_variable_dirichlet,
    check_weak_maximal,
    dirichlet_rows,
    holo_sweep,
    maximal_rows,
    rademacher_poly,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "BoxDimEstimate",
    "CombParams",
    "DEFAULT_SEED",
    "DivergenceEstimate",
    "DyadicFamily",
    "DyadicFamilyParams",
    "GaugeSpec",
    "GridSignal",
    "HoloBounds",
    "HoloKernelParams",
    "LevelSetOracle",
    "LogSaturator",
    "ProbeConfig",
    "ProbeResult",
    "SaturatorFamily",
    "SpectrumInterval",
    "TrigPoly",
    "VerificationReport",
    "box_dimension",
    "bump_chi",
    "check_derivative_bound",
    "check_holo_bounds",
    "check_localization",
    "check_nikolsky",
    "check_variable_dirichlet",
    "check_weak_maximal",
    "chi_coefficients",
    "comb_membership",
    "count_occupied_boxes",
    "dirichlet_eval",
    "dirichlet_rows",
    "disjoint_family",
    "divergence_index",
    "divergence_profile",
    "dyadic_approx_exponent",
    "dyadic_family",
    "dyadic_schedule",
    "dyadic_test_points",
    "eps_floor",
    "fejer_mean",
    "gauge_eval",
    "grid_for_degree",
    "holo_boundary",
    "holo_kernel",
    "holo_log_derivative",
    "holo_sweep",
    "level_set",
    "limsup_membership",
    "log_lift",
    "log_saturator",
    "loglog_fit",
    "logsat_certificate",
    "lp_norm",
    "maximal_rows",
    "middle_thirds_cantor",
    "modulate",
    "negative_frequency_ratio",
    "partial_sum",
    "partial_sums_at",
    "poly_norm",
    "prevalence_probe",
    "rademacher_poly",
    "residual_witness",
    "round_sig",
    "saturator_certificate",
    "saturator_pj",
    "saturator_scale",
    "scale_matched_dyadic_counts",
    "smallest_admissible_level",
    "spectrum_curve",
    "trial_rng",
]
