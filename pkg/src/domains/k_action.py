"""
K-Action
Maximal compact subgroup acting linearly on V and dually on V'
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from src.domains.descriptor import DomainDescriptor
from src.utils.errors import NotUnitary

UNITARY_TOL = 1e-10


def _check_unitary(u: np.ndarray, label: str, tol: float):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary(f"{label} must be a square matrix, got shape {u.shape}")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > tol:
        raise NotUnitary(f"{label} fails unitarity: |U*U - I| = {defect:.3e}")
    return u


@dataclass(frozen=True)
class KElement:
    """
    Triple automorphism of V

    Ball: a unitary U acting z -> U z. Matrix: a pair (U, W) acting
    z -> U z W*, which on row-major coordinates is kron(U, conj(W)).
    """

    dom: DomainDescriptor
    left: np.ndarray
    right: Optional[np.ndarray] = None

    @classmethod
    def from_unitaries(cls, dom: DomainDescriptor, left, right=None, tol: float = UNITARY_TOL) -> 'KElement':
        u = _check_unitary(np.atleast_2d(left), 'U', tol)
        if dom.is_ball:
            if u.shape != (dom.n, dom.n):
                raise NotUnitary(f"Expected U {dom.n}x{dom.n}, got {u.shape}")
            return cls(dom, u)
        w = _check_unitary(np.eye(dom.q) if right is None else right, 'W', tol)
        if u.shape != (dom.p, dom.p) or w.shape != (dom.q, dom.q):
            raise NotUnitary(f"Expected U {dom.p}x{dom.p} and W {dom.q}x{dom.q}")
        return cls(dom, u, w)

    @classmethod
    def identity(cls, dom: DomainDescriptor) -> 'KElement':
        if dom.is_ball:
            return cls(dom, np.eye(dom.n, dtype=complex))
        return cls(dom, np.eye(dom.p, dtype=complex), np.eye(dom.q, dtype=complex))

    @property
    def matrix(self) -> np.ndarray:
        """Unitary matrix of the action on coordinates"""
        if self.dom.is_ball:
            return self.left
        return np.kron(self.left, np.conj(self.right))

    def inverse(self) -> 'KElement':
        if self.dom.is_ball:
            return KElement(self.dom, self.left.conj().T)
        return KElement(self.dom, self.left.conj().T, self.right.conj().T)


def random_k(dom: DomainDescriptor, rng: np.random.Generator) -> KElement:
    """Haar-random element of K"""
    if dom.is_ball:
        return KElement(dom, _haar(dom.n, rng))
    return KElement(dom, _haar(dom.p, rng), _haar(dom.q, rng))


def _haar(size: int, rng: np.random.Generator) -> np.ndarray:
    if size == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(size, random_state=rng)


def k_transform(k: KElement, z, dom: DomainDescriptor) -> np.ndarray:
    """k z"""
    z = dom.as_points(z)
    return np.einsum('ij,...j->...i', k.matrix, z)


def k_transform_dual(k: KElement, eta, dom: DomainDescriptor) -> np.ndarray:
    """
    Dual action (k^{-1})' on a covector in value coordinates

    Under V' = V̄ this is the conjugate action eta -> conj(K) eta.
    """
    eta = dom.as_points(eta)
    return np.einsum('ij,...j->...i', np.conj(k.matrix), eta)
