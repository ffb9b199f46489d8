"""
Triple Kernels
Bilinear coordinate form of the Hermitian Jordan triple of each supported domain

Conjugate-slot arguments are passed as *value coordinates*: the element
ȳ of V̄ is stored as the array conj(y). With that storage the triple
T(x, eta, z) = {x ȳ z} (eta = conj(y)) is complex bilinear in every slot,
and the same kernel serves both V and V̄. Everything here is batched over
leading axes and never conjugates, which keeps polarized evaluators
holomorphic in each argument.
"""

from abc import ABC, abstractmethod

import numpy as np


class TripleKernel(ABC):
    """Algebraic maps of a Jordan triple in bilinear (value-coordinate) form"""

    def __init__(self, dom):
        self.dom = dom
        self.dim = dom.dim
        self._basis = np.eye(dom.dim, dtype=complex)

    @abstractmethod
    def triple(self, x: np.ndarray, eta: np.ndarray, z: np.ndarray) -> np.ndarray:
        """T(x, eta, z), bilinear, symmetric in x and z"""

    @abstractmethod
    def kernel_h(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """Generic norm h(x, eta), a polynomial in both arguments"""

    def _columns(self, apply) -> np.ndarray:
        # apply maps the basis batch (..., dim_j, dim) to images (..., dim_j, dim_i)
        images = apply(self._basis)
        return np.swapaxes(images, -1, -2)

    def d_matrix(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """Matrix of v -> T(x, eta, v)"""
        x = np.asarray(x)[..., None, :]
        eta = np.asarray(eta)[..., None, :]
        return self._columns(lambda basis: self.triple(x, eta, basis))

    def q_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix M with Q(x)eta = 1/2 T(x, eta, x) = M @ eta"""
        x = np.asarray(x)[..., None, :]
        return self._columns(lambda basis: 0.5 * self.triple(x, basis, x))

    def q2_matrix(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Matrix of eta -> T(x, eta, z), the polarized quadratic map"""
        x = np.asarray(x)[..., None, :]
        z = np.asarray(z)[..., None, :]
        return self._columns(lambda basis: self.triple(x, basis, z))

    def bergman_generic(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """B(x, eta) = I - D(x, eta) + Q(x)Q(eta) assembled from the triple"""
        return (
            self._basis
            - self.d_matrix(x, eta)
            + self.q_matrix(x) @ self.q_matrix(eta)
        )

    def bergman_matrix(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.bergman_generic(x, eta)

    def quasi_inverse_generic(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """B(x, eta)^{-1} (x - Q(x) eta) by a dense solve"""
        rhs = np.asarray(x) - np.einsum('...ij,...j->...i', self.q_matrix(x), eta)
        return np.linalg.solve(self.bergman_generic(x, eta), rhs[..., None])[..., 0]

    def quasi_inverse(self, x: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.quasi_inverse_generic(x, eta)

    def inner(self, z: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """Bilinear pairing sum_i z_i eta_i"""
        return np.sum(np.asarray(z) * np.asarray(eta), axis=-1)


class BallKernel(TripleKernel):
    """Ball(n): T(x, eta, z) = (x.eta) z + (z.eta) x"""

    def triple(self, x, eta, z):
        x, eta, z = np.asarray(x), np.asarray(eta), np.asarray(z)
        return self.inner(x, eta)[..., None] * z + self.inner(z, eta)[..., None] * x

    def kernel_h(self, x, eta):
        return 1.0 - self.inner(x, eta)

    def q_matrix(self, x):
        x = np.asarray(x)
        return x[..., :, None] * x[..., None, :]

    def bergman_matrix(self, x, eta):
        # closed form of I - D(x, eta) + Q(x)Q(eta)
        x, eta = np.asarray(x), np.asarray(eta)
        h = self.kernel_h(x, eta)[..., None, None]
        return h * (self._basis - x[..., :, None] * eta[..., None, :])

    def quasi_inverse(self, x, eta):
        x = np.asarray(x)
        return x / self.kernel_h(x, eta)[..., None]


class MatrixKernel(TripleKernel):
    """MatrixI(p, q): T(x, eta, z) = x eta^T z + z eta^T x on row-major coordinates"""

    def __init__(self, dom):
        super().__init__(dom)
        self.p, self.q = dom.p, dom.q
        self._eye_p = np.eye(self.p, dtype=complex)
        self._eye_q = np.eye(self.q, dtype=complex)

    def _mat(self, a):
        a = np.asarray(a)
        return a.reshape(a.shape[:-1] + (self.p, self.q))

    def _vec(self, a):
        return a.reshape(a.shape[:-2] + (self.p * self.q,))

    def triple(self, x, eta, z):
        x, eta, z = self._mat(x), self._mat(eta), self._mat(z)
        eta_t = np.swapaxes(eta, -1, -2)
        return self._vec(x @ eta_t @ z + z @ eta_t @ x)

    def kernel_h(self, x, eta):
        x, eta = self._mat(x), self._mat(eta)
        return np.linalg.det(self._eye_p - x @ np.swapaxes(eta, -1, -2))

    def bergman_matrix(self, x, eta):
        # v -> (I - x eta^T) v (I - eta^T x), a Kronecker product on rows
        x, eta = self._mat(x), self._mat(eta)
        left = self._eye_p - x @ np.swapaxes(eta, -1, -2)
        right = self._eye_q - np.swapaxes(x, -1, -2) @ eta
        kron = np.einsum('...ac,...bd->...abcd', left, right)
        return kron.reshape(kron.shape[:-4] + (self.dim, self.dim))

    def quasi_inverse(self, x, eta):
        x_m, eta_m = self._mat(x), self._mat(eta)
        left = self._eye_p - x_m @ np.swapaxes(eta_m, -1, -2)
        return self._vec(np.linalg.solve(left, x_m))
