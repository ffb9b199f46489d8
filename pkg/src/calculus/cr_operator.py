"""
Invariant Cauchy-Riemann Operator
D̄ = B(z, z̄)∂̄, its iterates, the disk closed form, the π_ν(v) action and q(z) certificates
"""

from typing import Dict

import numpy as np

from src.calculus.polarized import (
    W_SLOT,
    Z_SLOT,
    CauchyQuadConfig,
    PolarizedFn,
    basis_directions,
    directional_derivatives,
    evaluate_with_error,
    log_det_bergman_polarized,
    q_polarized,
    wirtinger_d,
    wirtinger_dbar_along,
    wirtinger_partial,
)
from src.calculus.tensor import symmetrize
from src.domains.descriptor import DomainDescriptor
from src.domains.jordan import q_closed
from src.utils.errors import ConfigInvalid, NonConvergent, UnsupportedDomain
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _cr_raw(F: PolarizedFn, cfg: CauchyQuadConfig) -> PolarizedFn:
    dom = F.dom
    kernel = dom.kernel

    def evaluator(z, w):
        grad = directional_derivatives(F, z, w, W_SLOT, basis_directions(z.shape[0], dom.dim), cfg)
        bergman = kernel.bergman_matrix(z, w)
        out = bergman @ grad.reshape(z.shape[0], dom.dim, -1)
        return out.reshape(grad.shape)

    return PolarizedFn(dom, evaluator, order=F.order + 1, guard=F.guard, name=f"D̄{F.name}")


def cr_apply(F: PolarizedFn, cfg: CauchyQuadConfig) -> PolarizedFn:
    """
    Polarized lift of D̄: (z, w) -> B(z, w) ∂_w F(z, w)

    Args:
        F: polarized function of order m
        cfg: quadrature settings

    Returns:
        PolarizedFn of order m + 1 whose restriction is D̄f; the new slot
        is the first tensor axis
    """
    return _cr_raw(F, cfg).with_reference(_cr_raw(F.twin, cfg.halved()))


def cr_power(F: PolarizedFn, m: int, cfg: CauchyQuadConfig, symmetrize_slots: bool = False) -> PolarizedFn:
    """
    m-fold D̄, optionally symmetrized over the m new slots

    Raises:
        ConfigInvalid: if m exceeds cfg.max_order
    """
    if m < 0 or m > cfg.max_order:
        raise ConfigInvalid(f"cr_power order {m} outside 0..{cfg.max_order}")

    G = F
    for _ in range(m):
        G = cr_apply(G, cfg)

    if not symmetrize_slots or m < 2:
        return G

    def symmetrized(inner: PolarizedFn) -> PolarizedFn:
        return PolarizedFn(
            inner.dom,
            lambda z, w: symmetrize(inner.evaluator(z, w), range(1, m + 1)),
            order=inner.order,
            guard=inner.guard,
            name=f"Sym{inner.name}",
        )

    return symmetrized(G).with_reference(symmetrized(G.twin))


def disk_cr_formula(F: PolarizedFn, m: int, z, cfg: CauchyQuadConfig) -> np.ndarray:
    """
    Disk closed form D̄^m f = (1-|z|²)^{m+1} ∂̄^m [(1-|z|²)^{m-1} f]

    The inner function is polarized as (1 - z w)^{m-1} F(z, w) and
    differentiated m times in w with a single contour.

    Raises:
        UnsupportedDomain: outside the disk
        NonConvergent: if the two contour radii disagree
    """
    dom = F.dom
    if not dom.is_disk:
        raise UnsupportedDomain(f"disk_cr_formula needs the disk, got {dom.label}")
    if m < 1:
        raise ConfigInvalid("disk_cr_formula needs m >= 1")

    z = dom.as_points(z)
    single = z.ndim == 1
    z = z.reshape(-1, 1)
    extra = (1,) * F.order

    def weighted(zz, ww):
        factor = (1.0 - zz[:, 0] * ww[:, 0]) ** (m - 1)
        return factor.reshape((-1,) + extra) * F.evaluator(zz, ww)

    G = PolarizedFn(dom, weighted, order=F.order, guard=F.guard, name=f"(1-zw)^{m - 1}{F.name}")
    ones = np.ones((z.shape[0], 1, 1), dtype=complex)
    w = np.conj(z)

    value = directional_derivatives(G, z, w, W_SLOT, ones, cfg, order=m)[:, 0]
    check = directional_derivatives(G, z, w, W_SLOT, ones, cfg.halved(), order=m)[:, 0]
    error = float(np.max(np.abs(value - check)))
    if error > cfg.tolerance * max(1.0, float(np.max(np.abs(value)))):
        raise NonConvergent(f"disk_cr_formula: two-radius estimates differ by {error:.3e}")

    weight = (1.0 - np.abs(z[:, 0]) ** 2) ** (m + 1)
    result = weight.reshape((-1,) + extra) * value
    return result[0] if single else result


def _pi_nu_raw(F: PolarizedFn, v: np.ndarray, cfg: CauchyQuadConfig) -> PolarizedFn:
    dom = F.dom
    kernel = dom.kernel

    def evaluator(z, w):
        n_points = z.shape[0]
        along_v = np.broadcast_to(v, (n_points, dom.dim))[:, None, :]
        # Q(z̄)v polarized: 1/2 T(w, v, w)
        q_dir = np.einsum('nij,j->ni', kernel.q_matrix(w), v)[:, None, :]
        holo = directional_derivatives(F, z, w, Z_SLOT, along_v, cfg)[:, 0]
        anti = directional_derivatives(F, z, w, W_SLOT, q_dir, cfg)[:, 0]
        return holo - anti

    return PolarizedFn(dom, evaluator, order=F.order, guard=F.guard, name=f"π(v){F.name}")


def pi_nu_pplus(F: PolarizedFn, v, cfg: CauchyQuadConfig) -> PolarizedFn:
    """π_ν(v)f = ∂_v f - ∂_{Q(z̄)v} f, applied componentwise to tensor values"""
    v = F.dom.as_points(v)
    return _pi_nu_raw(F, v, cfg).with_reference(_pi_nu_raw(F.twin, v, cfg.halved()))


def q_via_potential(z, dom: DomainDescriptor, cfg: CauchyQuadConfig) -> np.ndarray:
    """
    q(z) = (1/p) ∂ log det B(z, z̄)^{-1} computed from the polarized potential

    Returns:
        Covector value coordinates, comparable with q_closed
    """
    potential = log_det_bergman_polarized(dom, cfg.guard_floor)
    return -wirtinger_partial(potential, z, cfg) / dom.genus


def differentiation_of_q_residuals(z, v, eta, dom: DomainDescriptor, cfg: CauchyQuadConfig) -> Dict[str, float]:
    """
    Residuals of the differentiation formulas for q

    Args:
        z: points of the domain (N, dim)
        v: direction in V
        eta: direction in V̄ (value coordinates)
        dom: domain descriptor
        cfg: quadrature settings

    Returns:
        Max residual of ∂_v q = Q(q)v, ∂_η̄ q = B(z̄, z)^{-1}η̄,
        B(z̄, z)^{-1}Q(z̄)v = Q(q)v and (∂_v - ∂_{Q(z̄)v})q = 0
    """
    kernel = dom.kernel
    z = dom.as_points(z).reshape(-1, dom.dim)
    v = dom.as_points(v)
    eta = dom.as_points(eta)

    q_fn = q_polarized(dom, cfg.guard_floor)
    q = q_closed(z, dom)
    q_of_q_v = np.einsum('nij,j->ni', kernel.q_matrix(q), v)
    b_conj = kernel.bergman_matrix(np.conj(z), z)

    d_v = wirtinger_d(q_fn, z, v, cfg)
    d_eta = wirtinger_dbar_along(q_fn, z, eta, cfg)
    b_inv_eta = np.linalg.solve(b_conj, np.broadcast_to(eta, z.shape)[..., None])[..., 0]
    q_conj_v = np.einsum('nij,j->ni', kernel.q_matrix(np.conj(z)), v)
    b_inv_q = np.linalg.solve(b_conj, q_conj_v[..., None])[..., 0]
    vanishing = evaluate_with_error(pi_nu_pplus(q_fn, v, cfg), z, cfg.tolerance).value

    return {
        'd_v_q': float(np.max(np.abs(d_v - q_of_q_v))),
        'd_wbar_q': float(np.max(np.abs(d_eta - b_inv_eta))),
        'b_inverse_q': float(np.max(np.abs(b_inv_q - q_of_q_v))),
        'vanishing': float(np.max(np.abs(vanishing))),
    }

