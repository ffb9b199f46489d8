"""
Ball Adjoint Operator
The formal adjoint D of D̄ on the ball with respect to h^α dm, and the constant of D^m(⊗^m e_1)
"""

import math
from typing import Dict

import numpy as np

from src.calculus.polarized import (
    Z_SLOT,
    CauchyQuadConfig,
    PolarizedFn,
    constant_fn,
    evaluate_with_error,
    gradient_lift,
)
from src.calculus.tensor import apply_to_slots, outer_power
from src.domains.descriptor import DomainDescriptor
from src.utils.errors import UnsupportedDomain
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _h_power_guard(dom: DomainDescriptor, floor: float):
    kernel = dom.kernel

    def guard(z, w):
        return np.real(kernel.kernel_h(z, w)) > floor

    return guard


def _weighted_inner(F: PolarizedFn, alpha: float, floor: float) -> PolarizedFn:
    """h^α (I ⊗ ⊗^{m-1} B^{-1}) F"""
    dom = F.dom
    kernel = dom.kernel
    m = F.order

    def evaluator(z, w):
        values = F.evaluator(z, w)
        if m > 1:
            b_inv = np.linalg.inv(kernel.bergman_matrix(z, w))
            values = apply_to_slots(b_inv, values, range(2, m + 1))
        weight = np.exp(alpha * np.log(kernel.kernel_h(z, w)))
        return weight.reshape((-1,) + (1,) * m) * values

    guard = _h_power_guard(dom, floor)
    return PolarizedFn(dom, evaluator, order=m, guard=guard, name=f"h^a{F.name}")


def _adjoint_raw(F: PolarizedFn, alpha: float, cfg: CauchyQuadConfig) -> PolarizedFn:
    dom = F.dom
    kernel = dom.kernel
    m = F.order
    grad = gradient_lift(_weighted_inner(F, alpha, cfg.guard_floor), Z_SLOT, cfg)

    def evaluator(z, w):
        # derivative slot is axis 1, first factor of F is axis 2
        traced = np.trace(grad.evaluator(z, w), axis1=1, axis2=2)
        if m > 1:
            traced = apply_to_slots(kernel.bergman_matrix(z, w), traced, range(1, m))
        weight = np.exp(-alpha * np.log(kernel.kernel_h(z, w)))
        return weight.reshape((-1,) + (1,) * (m - 1)) * traced

    return PolarizedFn(dom, evaluator, order=m - 1, guard=grad.guard, name=f"D*{F.name}")


def adjoint_D_ball(F: PolarizedFn, alpha: float, cfg: CauchyQuadConfig) -> PolarizedFn:
    """
    Df = h^{-α} ⊗^{m-1}B(z, z̄) Tr ∂[h^α (I ⊗ ⊗^{m-1}B(z, z̄)^{-1}) f]

    Args:
        F: polarized tensor function of order m >= 1 on a ball
        alpha: weight of the measure h^α dm
        cfg: quadrature settings

    Returns:
        PolarizedFn of order m - 1

    Raises:
        UnsupportedDomain: for matrix domains
    """
    if not F.dom.is_ball:
        raise UnsupportedDomain(f"The adjoint operator is implemented on the ball only, got {F.dom.label}")
    if F.order < 1:
        raise ValueError("adjoint_D_ball needs a tensor of order at least 1")
    raw = _adjoint_raw(F, alpha, cfg)
    return raw.with_reference(_adjoint_raw(F.twin, alpha, cfg.halved()))


def first_frame_power(dom: DomainDescriptor, m: int) -> PolarizedFn:
    """Constant function ⊗^m e_1"""
    e1 = np.zeros(dom.dim, dtype=complex)
    e1[0] = 1.0
    return constant_fn(dom, outer_power(e1[None, :], m)[0], name=f"e1^{m}")


def adjoint_power_constant(dom: DomainDescriptor, m: int, alpha: float, z, cfg: CauchyQuadConfig) -> np.ndarray:
    """
    Pointwise ratio D^m(⊗^m e_1)(z) / [(1-|z|^2)^{-m} z̄_1^m]

    Returns:
        One measured constant per point; points with z_1 = 0 are rejected
    """
    z = dom.as_points(z).reshape(-1, dom.dim)
    if np.any(np.abs(z[:, 0]) < 1e-3):
        raise ValueError("adjoint_power_constant needs points with z_1 away from 0")

    G = first_frame_power(dom, m)
    for _ in range(m):
        G = adjoint_D_ball(G, alpha, cfg)
    value = evaluate_with_error(G, z, cfg.tolerance).value

    profile = (1.0 - np.sum(np.abs(z) ** 2, axis=-1)) ** (-m) * np.conj(z[:, 0]) ** m
    constants = value / profile
    logger.debug(f"Adjoint constant m={m}, alpha={alpha}: mean {np.mean(constants):.6g}")
    return constants


def constant_readings(m: int, alpha: float) -> Dict[str, float]:
    """
    Candidate values of C in D^m(⊗^m e_1) = C (1-|z|^2)^{-m} z̄_1^m

    ``uniform`` runs one index through both factors, which is also the value
    obtained by applying the m = 1 computation repeatedly; ``frozen`` fixes
    the stray index at 0.
    """
    uniform = math.prod(2 * (m - 1 - l) - alpha + l for l in range(m))
    frozen = (2 * (m - 1) - alpha) ** m
    return {'uniform': float(uniform), 'frozen': float(frozen)}
