from .tensor import Tensor, symmetrize, apply_to_slots, outer_power, permutation_identity
from .polarized import (
    CauchyQuadConfig,
    PolarizedFn,
    QuadratureResult,
    Z_SLOT,
    W_SLOT,
    bergman_guard,
    combine_guards,
    constant_fn,
    holomorphic_fn,
    q_polarized,
    h_polarized,
    log_det_bergman_polarized,
    tensor_power,
    combine,
    cauchy_derivative,
    directional_derivatives,
    basis_directions,
    gradient_lift,
    directional_lift,
    evaluate_with_error,
    wirtinger_dbar,
    wirtinger_partial,
    wirtinger_d,
    wirtinger_dbar_along,
)
from .cr_operator import (
    cr_apply,
    cr_power,
    disk_cr_formula,
    pi_nu_pplus,
    q_via_potential,
    differentiation_of_q_residuals,
)
from .mobius import MobiusElement, mobius_action, mobius_intertwining_residual
from .adjoint import adjoint_D_ball, first_frame_power, adjoint_power_constant, constant_readings

__all__ = [
    'Tensor', 'symmetrize', 'apply_to_slots', 'outer_power', 'permutation_identity',
    'CauchyQuadConfig', 'PolarizedFn', 'QuadratureResult', 'Z_SLOT', 'W_SLOT',
    'bergman_guard', 'combine_guards', 'constant_fn', 'holomorphic_fn',
    'q_polarized', 'h_polarized', 'log_det_bergman_polarized', 'tensor_power',
    'combine', 'cauchy_derivative', 'directional_derivatives', 'basis_directions',
    'gradient_lift', 'directional_lift', 'evaluate_with_error',
    'wirtinger_dbar', 'wirtinger_partial', 'wirtinger_d', 'wirtinger_dbar_along',
    'cr_apply', 'cr_power', 'disk_cr_formula', 'pi_nu_pplus', 'q_via_potential',
    'differentiation_of_q_residuals',
    'MobiusElement', 'mobius_action', 'mobius_intertwining_residual',
    'adjoint_D_ball', 'first_frame_power', 'adjoint_power_constant', 'constant_readings',
]
