"""
Mobius Action
SU(n,1) acting on the ball by fractional-linear maps, and the representation π_ν on polarized functions
"""

from dataclasses import dataclass

import numpy as np

from src.calculus.cr_operator import cr_apply
from src.calculus.polarized import CauchyQuadConfig, PolarizedFn, combine_guards
from src.domains.descriptor import DomainDescriptor
from src.utils.errors import BranchAmbiguity, NotUnitary, PointOutsideDomain, UnsupportedDomain
from src.utils.logger import get_logger

logger = get_logger(__name__)

PSEUDO_UNITARY_TOL = 1e-10


def _signature_form(n: int) -> np.ndarray:
    return np.diag([1.0] * n + [-1.0]).astype(complex)


@dataclass(frozen=True)
class MobiusElement:
    """
    Block matrix g = [[A, b], [c, d]] with g* J g = J, J = diag(I_n, -1)

    Acts on the n-ball by z -> (A z + b) / (c.z + d).
    """

    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, tol: float = PSEUDO_UNITARY_TOL) -> 'MobiusElement':
        g = np.asarray(matrix, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 2:
            raise NotUnitary(f"Expected an (n+1)x(n+1) matrix, got shape {g.shape}")
        form = _signature_form(g.shape[0] - 1)
        defect = np.max(np.abs(g.conj().T @ form @ g - form))
        if defect > tol:
            raise NotUnitary(f"g is not in U(n,1): |g*Jg - J| = {defect:.3e}")
        return cls(g)

    @classmethod
    def identity(cls, n: int) -> 'MobiusElement':
        return cls(np.eye(n + 1, dtype=complex))

    @classmethod
    def rotation(cls, unitary) -> 'MobiusElement':
        """z -> U z for a unitary U (a unimodular scalar on the disk)"""
        u = np.atleast_2d(np.asarray(unitary, dtype=complex))
        n = u.shape[0]
        g = np.eye(n + 1, dtype=complex)
        g[:n, :n] = u
        return cls.from_matrix(g)

    @classmethod
    def transvection(cls, a) -> 'MobiusElement':
        """The boost sending 0 to the point a of the ball"""
        a = np.atleast_1d(np.asarray(a, dtype=complex))
        n = a.shape[0]
        radius = np.linalg.norm(a)
        if radius >= 1.0:
            raise PointOutsideDomain(f"Transvection target must lie in the ball, |a| = {radius:.6f}")
        if radius == 0.0:
            return cls.identity(n)
        u = a / radius
        t = np.arctanh(radius)
        g = np.eye(n + 1, dtype=complex)
        g[:n, :n] += (np.cosh(t) - 1.0) * np.outer(u, u.conj())
        g[:n, n] = np.sinh(t) * u
        g[n, :n] = np.sinh(t) * u.conj()
        g[n, n] = np.cosh(t)
        return cls.from_matrix(g)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def blocks(self):
        n = self.n
        g = self.matrix
        return g[:n, :n], g[:n, n], g[n, :n], g[n, n]

    def inverse(self) -> 'MobiusElement':
        form = _signature_form(self.n)
        return MobiusElement(form @ self.matrix.conj().T @ form)

    def compose(self, other: 'MobiusElement') -> 'MobiusElement':
        return MobiusElement(self.matrix @ other.matrix)

    def _denominator(self, z):
        _, _, c, d = self.blocks
        return z @ c + d

    def act(self, z) -> np.ndarray:
        a_blk, b, _, _ = self.blocks
        z = np.asarray(z, dtype=complex)
        return (z @ a_blk.T + b) / self._denominator(z)[..., None]

    def act_conjugate(self, w) -> np.ndarray:
        """conj(g(conj(w))), the action on value coordinates of V̄"""
        a_blk, b, c, d = self.blocks
        w = np.asarray(w, dtype=complex)
        return (w @ a_blk.conj().T + b.conj()) / (w @ c.conj() + np.conj(d))[..., None]

    def act_checked(self, z, dom: DomainDescriptor) -> np.ndarray:
        image = self.act(dom.as_points(z))
        if not np.all(dom.contains(image)):
            raise PointOutsideDomain("Mobius image leaves the ball")
        return image

    def differential(self, z) -> np.ndarray:
        """dg(z) = [A (c.z + d) - (A z + b) c^T] / (c.z + d)^2"""
        a_blk, b, c, _ = self.blocks
        z = np.asarray(z, dtype=complex)
        denom = self._denominator(z)[..., None, None]
        numer = (z @ a_blk.T + b)[..., :, None] * c[None, :]
        return (a_blk * denom - numer) / denom ** 2

    def log_jacobian(self, z) -> np.ndarray:
        """
        log det dg(z) = log det g - (n+1) log(c.z + d)

        The logarithm is continued from the principal branch at z = 0 as
        Log d + log1p(c.z / d), valid while |c.z / d| < 1.

        Raises:
            BranchAmbiguity: when the continuation leaves its disk of validity
        """
        _, _, c, d = self.blocks
        z = np.asarray(z, dtype=complex)
        ratio = (z @ c) / d
        if np.any(np.abs(ratio) >= 1.0):
            raise BranchAmbiguity("Jacobian power cannot be continued along the segment from 0")
        log_det = np.log(np.linalg.det(self.matrix))
        return log_det - (self.n + 1) * (np.log(d) + np.log1p(ratio))


def _require_ball(dom: DomainDescriptor, g: MobiusElement):
    if not dom.is_ball:
        raise UnsupportedDomain(f"Mobius actions are implemented on the ball, got {dom.label}")
    if g.n != dom.n:
        raise UnsupportedDomain(f"Group element acts on C^{g.n}, domain is {dom.label}")


def mobius_action(g: MobiusElement, F: PolarizedFn, nu: float) -> PolarizedFn:
    """
    π_ν(g)f(z) = f(g^{-1}z) J_{g^{-1}}(z)^{ν/p}, polarized

    The w slot transforms by the conjugated map, so the result stays
    holomorphic in each argument.
    """
    dom = F.dom
    _require_ball(dom, g)
    if F.order != 0:
        raise ValueError("mobius_action acts on scalar-valued functions")

    phi = g.inverse()
    exponent = nu / dom.genus

    def evaluator(z, w):
        weight = np.exp(exponent * phi.log_jacobian(z))
        return weight * F.evaluator(phi.act(z), phi.act_conjugate(w))

    def inner_guard(z, w):
        if F.guard is None:
            return np.ones(z.shape[0], dtype=bool)
        return F.guard(phi.act(z), phi.act_conjugate(w))

    def branch_guard(z, w):
        _, _, c, d = phi.blocks
        return np.abs((z @ c) / d) < 1.0

    return PolarizedFn(
        dom,
        evaluator,
        order=0,
        guard=combine_guards(inner_guard, branch_guard),
        name=f"π(g){F.name}",
    )


def mobius_intertwining_residual(g: MobiusElement, F: PolarizedFn, nu: float, z,
                                 cfg: CauchyQuadConfig) -> float:
    """
    Max residual of D̄(π_ν(g)f)(z) = J_φ(z)^{ν/p} dφ(z)^{-1} (D̄f)(φ z), φ = g^{-1}
    """
    dom = F.dom
    z = dom.as_points(z).reshape(-1, dom.dim)
    phi = g.inverse()
    image = phi.act_checked(z, dom)

    lhs = cr_apply(mobius_action(g, F, nu), cfg).restrict(z)
    inner = cr_apply(F, cfg).restrict(image)
    weight = np.exp(nu / dom.genus * phi.log_jacobian(z))
    rhs = weight[:, None] * np.linalg.solve(phi.differential(z), inner[..., None])[..., 0]
    residual = float(np.max(np.abs(lhs - rhs)))
    logger.debug(f"Mobius intertwining residual {residual:.3e} at {z.shape[0]} points")
    return residual
