"""Gaussian channel algebra, entanglement-breaking tests and amendability."""

from .channels import (
    GaussianChannel,
    UnitaryGaussian,
    adjoint_unitary,
    apply,
    compose,
    is_cpt,
    make_asym_attenuation,
    make_attenuation,
    make_phase_noise,
    make_phase_shift,
    make_squeezer,
    one_sided,
    rotate_mode,
)
from .eb import (
    AmendabilityReport,
    EBVerdict,
    ThetaWindow,
    amendability_c,
    amendable_check,
    attenuation_boundary,
    bisect_threshold,
    eb_order,
    eta_bar,
    eta_tilde,
    is_eb_choi,
    is_eb_diagonal,
    prp_channel,
    r_tilde,
    theta_window,
)
from .entanglement import (
    TwoModeBlocks,
    WitnessResult,
    block_decompose,
    is_entangled,
    log_negativity,
    nu_squared,
    optimal_product_witness,
    product_witness,
    tmsv_covariance,
)
from .symplectic import (
    GaussianState,
    build_symplectic_form,
    hermitian_min_eigenvalue,
    is_valid_covariance,
    partial_transpose_two_mode,
    symplectic_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "adjoint_unitary",
    "amendability_c",
    "AmendabilityReport",
    "amendable_check",
    "apply",
    "attenuation_boundary",
    "bisect_threshold",
    "block_decompose",
    "build_symplectic_form",
    "compose",
    "eb_order",
    "EBVerdict",
    "eta_bar",
    "eta_tilde",
    "GaussianChannel",
    "GaussianState",
    "hermitian_min_eigenvalue",
    "is_cpt",
    "is_eb_choi",
    "is_eb_diagonal",
    "is_entangled",
    "is_valid_covariance",
    "log_negativity",
    "make_asym_attenuation",
    "make_attenuation",
    "make_phase_noise",
    "make_phase_shift",
    "make_squeezer",
    "nu_squared",
    "one_sided",
    "optimal_product_witness",
    "partial_transpose_two_mode",
    "product_witness",
    "prp_channel",
    "r_tilde",
    "rotate_mode",
    "symplectic_eigenvalues",
    "theta_window",
    "ThetaWindow",
    "tmsv_covariance",
    "TwoModeBlocks",
    "UnitaryGaussian",
    "WitnessResult",
]
