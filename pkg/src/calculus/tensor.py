"""
Tensor Helpers
Dense tensors over V with explicit symmetrization and slot-wise operator action
"""

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Tensor:
    """Dense tensor of order m; order-0 tensors are scalars"""

    data: np.ndarray

    @property
    def order(self) -> int:
        return np.ndim(self.data)

    @property
    def dim(self) -> int:
        return np.shape(self.data)[0] if self.order else 0

    def symmetrized(self) -> 'Tensor':
        return Tensor(symmetrize(np.asarray(self.data), range(self.order)))

    def is_symmetric(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.data, self.symmetrized().data, rtol=0.0, atol=atol))


def symmetrize(arr: np.ndarray, axes: Iterable[int]) -> np.ndarray:
    """
    Average of ``arr`` over all permutations of the given axes

    Args:
        arr: array of any shape
        axes: axes to symmetrize (they must have equal length)

    Returns:
        Array of the same shape, symmetric in ``axes``
    """
    axes = list(axes)
    if len(axes) < 2:
        return np.array(arr, copy=True)
    total = np.zeros_like(arr, dtype=complex)
    for perm in permutations(axes):
        order = list(range(arr.ndim))
        for src, dst in zip(axes, perm):
            order[src] = dst
        total = total + np.transpose(arr, order)
    return total / math.factorial(len(axes))


def apply_to_slots(matrices: np.ndarray, arr: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """
    Apply a batch of matrices to selected tensor slots

    Args:
        matrices: (N, d, d)
        arr: (N, d, ..., d) batched tensors
        axes: axes of ``arr`` (batch axis is 0) the matrices act on

    Returns:
        Array of the same shape as ``arr``
    """
    out = arr
    for ax in axes:
        moved = np.moveaxis(out, ax, -1)
        moved = np.einsum('nij,n...j->n...i', matrices, moved)
        out = np.moveaxis(moved, -1, ax)
    return out


def outer_power(v: np.ndarray, m: int) -> np.ndarray:
    """Batched v ⊗ ... ⊗ v (m factors); m = 0 gives ones"""
    v = np.asarray(v)
    batch, dim = v.shape[:-1], v.shape[-1]
    out = np.ones(batch, dtype=complex)
    for k in range(m):
        out = out[..., None] * v.reshape(batch + (1,) * k + (dim,))
    return out


def permutation_identity(dim: int, m: int) -> np.ndarray:
    """
    Sum over permutations s of prod_j delta(l_j, k_s(j))

    The result has shape (dim,)*2m with the first m axes paired against the
    last m; it equals m! times the symmetrizer of ⊗^m V.
    """
    if m == 0:
        return np.array(1.0 + 0j)
    eye = np.eye(dim, dtype=complex)
    base = eye
    for _ in range(m - 1):
        base = np.multiply.outer(base, eye)
    # base axes are (l1, k1, l2, k2, ...); reorder to (l1..lm, k1..km)
    base = np.transpose(base, [2 * j for j in range(m)] + [2 * j + 1 for j in range(m)])
    return math.factorial(m) * symmetrize(base, range(m, 2 * m))
