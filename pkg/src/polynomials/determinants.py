"""
Determinant Polynomials
Fundamental minors Δ_j, highest-weight polynomials Δ_m and their composition with q(z)
"""

from typing import Dict, Optional, Sequence

import numpy as np

from src.calculus.polarized import PolarizedFn, bergman_guard
from src.domains.descriptor import DomainDescriptor
from src.domains.jordan import q_closed
from src.polynomials.signature import Signature
from src.polynomials.sym_tensor import SymTensor
from src.quadrature.sampler import draw_directions
from src.utils.errors import InvalidSignature
from src.utils.logger import get_logger

logger = get_logger(__name__)

BOUNDARY_MARGINS = (1e-3, 1e-4)
BOUNDARY_STABILITY = 0.05


def delta_fundamental(j: int, v, dom: DomainDescriptor) -> np.ndarray:
    """
    Δ_j(v): leading principal j x j minor in the frame E_11 ... E_rr

    Args:
        j: 1..rank
        v: coordinates (..., dim); a ball point is read as a 1 x n row
        dom: domain descriptor

    Returns:
        Complex array of shape (...)
    """
    if not 1 <= j <= dom.rank:
        raise InvalidSignature(f"Minor index {j} outside 1..{dom.rank} for {dom.label}")
    mat = dom.as_matrix(dom.as_points(v))
    return np.linalg.det(mat[..., :j, :j])


def delta_signature(sig: Signature, v, dom: DomainDescriptor) -> np.ndarray:
    """Δ_m(v) = Δ_1(v)^{m_1-m_2} ... Δ_r(v)^{m_r}"""
    sig = sig.padded(dom.rank)
    v = dom.as_points(v)
    out = np.ones(v.shape[:-1], dtype=complex)
    for j, power in enumerate(sig.exponents, start=1):
        if power == 0:
            continue
        out = out * delta_fundamental(j, v, dom) ** power
    return out


def delta_signature_bar(sig: Signature, w, dom: DomainDescriptor) -> np.ndarray:
    """Δ̄_m(w̄) = conj(Δ_m(w)) for a point w"""
    return delta_signature(sig, np.conj(dom.as_points(w)), dom)


def compose_with_q(sig: Signature, z, dom: DomainDescriptor) -> np.ndarray:
    """
    Δ̄_m(q(z))

    q(z) is stored in value coordinates, so Δ_m applies to it directly.

    Raises:
        PointOutsideDomain: if z is not in the domain
    """
    return delta_signature(sig, q_closed(z, dom), dom)


def compose_with_q_polarized(sig: Signature, dom: DomainDescriptor, guard_floor: float = 1e-8) -> PolarizedFn:
    """Δ̄_m(q) as a polarized evaluator (z, w) -> Δ_m(w^z)"""
    kernel = dom.kernel
    sig = sig.padded(dom.rank)

    def evaluator(z, w):
        return delta_signature(sig, kernel.quasi_inverse(w, z), dom)

    return PolarizedFn(dom, evaluator, order=0, guard=bergman_guard(dom, guard_floor), name=f"Δ{sig}(q)")


def highest_weight_tensor(sig: Signature, dom: DomainDescriptor) -> SymTensor:
    """The symmetric tensor of order |m| whose polynomial on V' is Δ_m"""
    sig = sig.padded(dom.rank)
    return SymTensor.from_polynomial(lambda eta: delta_signature(sig, eta, dom), sig.size, dom.dim)


def del_n_2_residual(z, dom: DomainDescriptor) -> np.ndarray:
    """|Δ̄_r(q(z)) - Δ̄_r(z)/h(z, z̄)| for the top minor Δ_r"""
    z = dom.as_points(z)
    lhs = delta_fundamental(dom.rank, q_closed(z, dom), dom)
    rhs = np.conj(delta_fundamental(dom.rank, z, dom)) / dom.kernel.kernel_h(z, np.conj(z))
    return np.abs(lhs - rhs)


def loos_h_identity_check(v, z, dom: DomainDescriptor) -> np.ndarray:
    """
    Residual of h(v, z̄^z) = h(v + z, z̄) / h(z, z̄)

    Returns:
        |LHS - RHS| per point pair
    """
    kernel = dom.kernel
    v, z = dom.as_points(v), dom.as_points(z)
    lhs = kernel.kernel_h(v, q_closed(z, dom))
    rhs = kernel.kernel_h(v + z, np.conj(z)) / kernel.kernel_h(z, np.conj(z))
    return np.abs(lhs - rhs)


def del_n_boundary_probe(sig: Signature, dom: DomainDescriptor, rng: np.random.Generator,
                         directions: int = 64, margins: Sequence[float] = BOUNDARY_MARGINS,
                         unit_points: Optional[np.ndarray] = None) -> Dict:
    """
    Boundedness of h(z, z̄)^{m_1} Δ̄_m(q(z)) along rays to the boundary

    The points (1 - ε)u with ‖u‖_op = 1 are evaluated for each margin ε; the
    supremum must stay finite and change by at most 5% between the two
    finest margins.

    Returns:
        Dict with the supremum per margin, the relative change and 'stable'
    """
    sig = sig.padded(dom.rank)
    units = draw_directions(dom, directions, rng) if unit_points is None else dom.as_points(unit_points)
    kernel = dom.kernel

    sups = []
    for eps in margins:
        z = (1.0 - eps) * units
        h = np.real(kernel.kernel_h(z, np.conj(z)))
        values = h ** sig.m1 * compose_with_q(sig, z, dom)
        sups.append(float(np.max(np.abs(values))))

    coarse, fine = sups[-2], sups[-1]
    change = abs(fine - coarse) / max(abs(coarse), 1e-300)
    stable = bool(np.all(np.isfinite(sups)) and change <= BOUNDARY_STABILITY)
    if not stable:
        logger.warning(f"Boundary probe for {sig} on {dom.label}: relative change {change:.3e}")
    return {'margins': list(margins), 'sup': sups, 'relative_change': change, 'stable': stable}
