"""
Jordan Triple Operations
Triple product, D, Q, B, the kernel h, quasi-inverses, q(z) and the inner product

Conventions
-----------
* A point of V is its coordinate vector. A covector (element of V' = V̄)
  is stored by its value coordinates, so ``covector_of(w) = conj(w)`` and the
  pairing [eta, v] = sum_i eta_i v_i is bilinear on stored arrays while being
  conjugate-linear in the underlying point w.
* Conjugate-linear maps such as Q(z): V̄ -> V are ``LinOpV`` objects with
  ``conjugate_linear=True``; they act as ``matrix @ conj(v)`` on a point v,
  equivalently ``matrix @ eta`` on value coordinates eta.
* Composition rules (L = linear, C = conjugate-linear, M = matrix):
  L∘L -> L with M1 M2;  L∘C -> C with M1 M2;
  C∘L -> C with M1 conj(M2);  C∘C -> L with M1 conj(M2).
  Inversion: L -> L with M^{-1}; C -> C with conj(M^{-1}).
"""

from dataclasses import dataclass

import numpy as np

from src.domains.descriptor import DomainDescriptor
from src.utils.errors import PointOutsideDomain, SingularB
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_MAX_CONDITION = 1e12


@dataclass(frozen=True)
class LinOpV:
    """Dense (possibly conjugate-linear) operator on V in the orthonormal basis"""

    matrix: np.ndarray
    conjugate_linear: bool = False

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        if self.conjugate_linear:
            v = np.conj(v)
        return np.einsum('...ij,...j->...i', self.matrix, v)

    def apply_values(self, eta) -> np.ndarray:
        """Apply to value coordinates (no conjugation for either kind)"""
        return np.einsum('...ij,...j->...i', self.matrix, np.asarray(eta, dtype=complex))

    def __matmul__(self, other: 'LinOpV') -> 'LinOpV':
        right = np.conj(other.matrix) if self.conjugate_linear else other.matrix
        return LinOpV(
            matrix=self.matrix @ right,
            conjugate_linear=self.conjugate_linear != other.conjugate_linear,
        )

    def inverse(self) -> 'LinOpV':
        inv = np.linalg.inv(self.matrix)
        return LinOpV(np.conj(inv) if self.conjugate_linear else inv, self.conjugate_linear)

    def det(self):
        return np.linalg.det(self.matrix)

    def trace(self):
        return np.trace(self.matrix, axis1=-2, axis2=-1)

    def norm(self):
        return np.linalg.norm(self.matrix, ord=2, axis=(-2, -1))

    @property
    def dim(self) -> int:
        return self.matrix.shape[-1]


def _check(dom: DomainDescriptor, *points) -> list:
    return [dom.as_points(p) for p in points]


def covector_of(w) -> np.ndarray:
    """Value coordinates of the covector <., w> in V'"""
    return np.conj(np.asarray(w, dtype=complex))


def pairing(eta, v) -> np.ndarray:
    """[eta, v] for a covector eta (value coordinates) and a point v"""
    return np.sum(np.asarray(eta) * np.asarray(v), axis=-1)


def triple_product(x, y, z, dom: DomainDescriptor) -> np.ndarray:
    """
    Jordan triple product {x ȳ z}

    Args:
        x, y, z: points of V (batched over leading axes)
        dom: domain descriptor

    Returns:
        {x ȳ z}, linear in x and z, conjugate-linear in y
    """
    x, y, z = _check(dom, x, y, z)
    return dom.kernel.triple(x, np.conj(y), z)


def operator_D(z, w, dom: DomainDescriptor) -> LinOpV:
    """D(z, w̄): v -> {z w̄ v}"""
    z, w = _check(dom, z, w)
    return LinOpV(dom.kernel.d_matrix(z, np.conj(w)))


def operator_Q(z, dom: DomainDescriptor) -> LinOpV:
    """Q(z): V̄ -> V, ȳ -> 1/2 {z ȳ z}, stored conjugate-linear in y"""
    (z,) = _check(dom, z)
    return LinOpV(dom.kernel.q_matrix(z), conjugate_linear=True)


def operator_Q2(x, z, dom: DomainDescriptor) -> LinOpV:
    """Polarized Q(x, z): ȳ -> {x ȳ z}; Q2(z, z) = 2 Q(z)"""
    x, z = _check(dom, x, z)
    return LinOpV(dom.kernel.q2_matrix(x, z), conjugate_linear=True)


def bergman_operator(z, w, dom: DomainDescriptor) -> LinOpV:
    """B(z, w̄) = I - D(z, w̄) + Q(z)Q(w̄)"""
    z, w = _check(dom, z, w)
    return LinOpV(dom.kernel.bergman_matrix(z, np.conj(w)))


def kernel_h(z, w, dom: DomainDescriptor) -> np.ndarray:
    """
    Generic norm h(z, w̄): 1 - <z, w> on the ball, det(I - z w*) on matrices

    Values outside the domain are still returned; a warning marks them as
    extrapolated.
    """
    z, w = _check(dom, z, w)
    if not (np.all(dom.contains(z)) and np.all(dom.contains(w))):
        logger.warning(f"kernel_h evaluated outside {dom.label}; value is extrapolated")
    return dom.kernel.kernel_h(z, np.conj(w))


def quasi_inverse(z, w, dom: DomainDescriptor, max_condition: float = DEFAULT_MAX_CONDITION) -> np.ndarray:
    """
    Quasi-inverse z^{w̄} = B(z, w̄)^{-1}(z - Q(z)w̄)

    Args:
        z, w: points of V
        dom: domain descriptor
        max_condition: largest accepted condition number of B(z, w̄)

    Returns:
        z^{w̄} as a point of V

    Raises:
        SingularB: when B(z, w̄) is numerically singular
    """
    z, w = _check(dom, z, w)
    bergman = dom.kernel.bergman_matrix(z, np.conj(w))
    condition = np.linalg.cond(bergman)
    if np.any(~np.isfinite(condition)) or np.any(condition > max_condition):
        raise SingularB(f"B(z, w̄) condition number {np.max(condition):.3e} exceeds {max_condition:.1e}")
    return dom.kernel.quasi_inverse_generic(z, np.conj(w))


def q_closed(z, dom: DomainDescriptor) -> np.ndarray:
    """
    Potential q(z) = z̄^z as a covector (value coordinates)

    Raises:
        PointOutsideDomain: if z is not in the domain
    """
    (z,) = _check(dom, z)
    if not np.all(dom.contains(z)):
        raise PointOutsideDomain(f"q(z) requires z in {dom.label}")
    return dom.kernel.quasi_inverse(np.conj(z), z)


def inner_product(z, w, dom: DomainDescriptor) -> np.ndarray:
    """Normalized inner product <z, w> = tr(z w*) = Tr D(z, w̄) / genus"""
    z, w = _check(dom, z, w)
    return np.sum(z * np.conj(w), axis=-1)


def inner_product_via_trace(z, w, dom: DomainDescriptor) -> np.ndarray:
    return operator_D(z, w, dom).trace() / dom.genus
