"""
Symmetric Tensors
Identification of S_m(V) with homogeneous degree-m polynomials on V'
"""

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from src.calculus.tensor import Tensor, outer_power, symmetrize


@dataclass(frozen=True)
class SymTensor(Tensor):
    """Symmetric tensor φ with polynomial view φ(η) = [φ, η ⊗ ... ⊗ η]"""

    @classmethod
    def from_polynomial(cls, polynomial: Callable[[np.ndarray], np.ndarray], m: int, dim: int) -> 'SymTensor':
        """
        Recover the symmetric tensor of a homogeneous degree-m polynomial

        Uses the polarization identity
        φ(v_1, ..., v_m) = 1/(m! 2^m) Σ_ε ε_1...ε_m P(ε_1 v_1 + ... + ε_m v_m)
        on every multi-index of basis vectors.

        Args:
            polynomial: vectorized P taking (..., dim) to (...)
            m: degree
            dim: dimension of V

        Returns:
            SymTensor of order m
        """
        if m == 0:
            value = polynomial(np.zeros((1, dim), dtype=complex))
            return cls(np.asarray(value, dtype=complex).reshape(()))

        eye = np.eye(dim, dtype=complex)
        indices = np.array(list(product(range(dim), repeat=m)))
        signs = np.array(list(product((1.0, -1.0), repeat=m)))

        # arguments[i, s] = Σ_j signs[s, j] e_{indices[i, j]}
        arguments = np.einsum('sj,ijd->isd', signs, eye[indices])
        values = np.asarray(polynomial(arguments.reshape(-1, dim))).reshape(len(indices), len(signs))
        weights = np.prod(signs, axis=1)
        data = values @ weights / (math.factorial(m) * 2 ** m)
        return cls(data.reshape((dim,) * m))

    @classmethod
    def symmetric_part(cls, data) -> 'SymTensor':
        arr = np.asarray(data, dtype=complex)
        return cls(symmetrize(arr, range(arr.ndim)))

    def pair(self, other) -> np.ndarray:
        """Full contraction with a batch of order-m tensors (..., dim, ..., dim)"""
        other = np.asarray(other)
        m = self.order
        if m == 0:
            return self.data * np.ones(other.shape, dtype=complex)
        axes = tuple(range(other.ndim - m, other.ndim))
        return np.tensordot(other, self.data, axes=(axes, tuple(range(m))))

    def polynomial(self, eta) -> np.ndarray:
        """φ(η) for covectors η of shape (..., dim)"""
        eta = np.asarray(eta, dtype=complex)
        if self.order == 0:
            return self.data * np.ones(eta.shape[:-1], dtype=complex)
        return self.pair(outer_power(eta, self.order))
