"""
Polarized Calculus
Polarized evaluators F(z, w) and spectrally accurate Cauchy-quadrature derivatives

A real-analytic f on the domain is handled through an evaluator F(z, w),
holomorphic in z and in w separately, with f(z) = F(z, conj(z)). The w slot
carries value coordinates of V̄, so ∂̄f is the ordinary derivative of F in w.
Every derivative is a one-variable contour integral along a direction:

    d^k/dt^k F(.. + t d ..)|_0 ≈ k!/(M ρ^k) Σ_j F(.. + ρ ω_j d ..) ω_j^{-k},

with ω_j the M-th roots of unity. Evaluators take 2D arrays (N, dim) and
return (N,) + (dim,)*order.
"""

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Callable, Dict, Optional

import numpy as np

from src.calculus.tensor import outer_power
from src.domains.descriptor import DomainDescriptor
from src.utils.errors import ConfigInvalid, GuardViolation, NonConvergent
from src.utils.logger import get_logger

logger = get_logger(__name__)

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]
Guard = Callable[[np.ndarray, np.ndarray], np.ndarray]

Z_SLOT = 'z'
W_SLOT = 'w'


@dataclass(frozen=True)
class CauchyQuadConfig:
    """
    Contour quadrature settings

    Attributes:
        points: nodes M per circle
        radius_fraction: circle radius as a fraction of the boundary distance
        max_order: highest iterate of D̄ accepted by cr_power
        max_halvings: radius halvings tried before GuardViolation
        tolerance: relative two-radius disagreement that raises NonConvergent
        guard_floor: |h(z, w)| below this value counts as a guard violation
        min_scale: floor for the boundary distance used to size circles
        chunk_nodes: evaluator batch size bound (points x directions x nodes)
    """

    points: int = 32
    radius_fraction: float = 0.05
    max_order: int = 4
    max_halvings: int = 30
    tolerance: float = 1e-6
    guard_floor: float = 1e-8
    min_scale: float = 1e-3
    chunk_nodes: int = 1 << 15

    def __post_init__(self):
        if self.points < 8:
            raise ConfigInvalid(f"Cauchy quadrature needs at least 8 nodes, got {self.points}")
        if not 0.0 < self.radius_fraction < 1.0:
            raise ConfigInvalid(f"radius_fraction must lie in (0, 1), got {self.radius_fraction}")
        if self.max_order < 4:
            raise ConfigInvalid(f"max_order must be at least 4, got {self.max_order}")
        if self.tolerance <= 0 or self.guard_floor <= 0 or self.min_scale <= 0:
            raise ConfigInvalid("tolerance, guard_floor and min_scale must be positive")
        if self.chunk_nodes < self.points:
            raise ConfigInvalid("chunk_nodes must be at least the number of nodes per circle")

    @classmethod
    def from_dict(cls, record: Optional[Dict]) -> 'CauchyQuadConfig':
        record = dict(record or {})
        known = {f.name for f in fields(cls)}
        unknown = set(record) - known
        if unknown:
            raise ConfigInvalid(f"Unknown quadrature settings: {sorted(unknown)}")
        try:
            return cls(**record)
        except TypeError as e:
            raise ConfigInvalid(f"Invalid quadrature settings: {e}") from e

    def to_dict(self) -> Dict:
        return asdict(self)

    def halved(self) -> 'CauchyQuadConfig':
        return replace(self, radius_fraction=self.radius_fraction / 2)

    @property
    def roots(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.points) / self.points)


@dataclass(frozen=True)
class PolarizedFn:
    """
    Polarized evaluator with tensor-valued output

    Attributes:
        dom: domain the function lives on
        evaluator: (z, w) -> values of shape (N,) + (dim,)*order
        order: tensor order of the values
        guard: (z, w) -> boolean mask, True where the evaluator is analytic
        name: label used in logs
        reference: the same construction at half the contour radius, used
            for two-radius error estimates of lifted functions
    """

    dom: DomainDescriptor
    evaluator: Evaluator
    order: int = 0
    guard: Optional[Guard] = None
    name: str = 'f'
    reference: Optional['PolarizedFn'] = None

    @property
    def value_shape(self):
        return (self.dom.dim,) * self.order

    @property
    def twin(self) -> 'PolarizedFn':
        return self.reference if self.reference is not None else self

    def __call__(self, z, w) -> np.ndarray:
        z, w = np.broadcast_arrays(self.dom.as_points(z), self.dom.as_points(w))
        batch = z.shape[:-1]
        flat_z = np.ascontiguousarray(z.reshape(-1, self.dom.dim))
        flat_w = np.ascontiguousarray(w.reshape(-1, self.dom.dim))
        values = np.asarray(self.evaluator(flat_z, flat_w))
        return values.reshape(batch + self.value_shape)

    def restrict(self, z) -> np.ndarray:
        """f(z) = F(z, conj(z))"""
        z = self.dom.as_points(z)
        return self(z, np.conj(z))

    def admissible(self, z, w) -> np.ndarray:
        z, w = np.broadcast_arrays(self.dom.as_points(z), self.dom.as_points(w))
        if self.guard is None:
            return np.ones(z.shape[:-1], dtype=bool)
        flat = self.guard(z.reshape(-1, self.dom.dim), w.reshape(-1, self.dom.dim))
        return np.asarray(flat).reshape(z.shape[:-1])

    def with_reference(self, reference: 'PolarizedFn') -> 'PolarizedFn':
        return replace(self, reference=reference)


@dataclass(frozen=True)
class QuadratureResult:
    value: np.ndarray
    error: float


def bergman_guard(dom: DomainDescriptor, floor: float = 1e-8) -> Guard:
    """Default analyticity guard: B(z, w) invertible, i.e. |h(z, w)| > floor"""
    kernel = dom.kernel

    def guard(z, w):
        return np.abs(kernel.kernel_h(z, w)) > floor

    return guard


def combine_guards(*guards: Optional[Guard]) -> Optional[Guard]:
    active = [g for g in guards if g is not None]
    if not active:
        return None
    if len(active) == 1:
        return active[0]

    def guard(z, w):
        mask = active[0](z, w)
        for g in active[1:]:
            mask = mask & g(z, w)
        return mask

    return guard


# ---------------------------------------------------------------------------
# constructors

def constant_fn(dom: DomainDescriptor, tensor, name: str = 'const') -> PolarizedFn:
    tensor = np.asarray(tensor, dtype=complex)

    def evaluator(z, w):
        return np.broadcast_to(tensor, (z.shape[0],) + tensor.shape).copy()

    return PolarizedFn(dom, evaluator, order=tensor.ndim, name=name)


def holomorphic_fn(dom: DomainDescriptor, fn: Callable[[np.ndarray], np.ndarray], order: int = 0,
                   name: str = 'g') -> PolarizedFn:
    """Function with no w dependence"""
    return PolarizedFn(dom, lambda z, w: fn(z), order=order, name=name)


def q_polarized(dom: DomainDescriptor, guard_floor: float = 1e-8) -> PolarizedFn:
    """q(z) = z̄^z polarized as the quasi-inverse of w with respect to z"""
    kernel = dom.kernel
    return PolarizedFn(
        dom,
        lambda z, w: kernel.quasi_inverse(w, z),
        order=1,
        guard=bergman_guard(dom, guard_floor),
        name='q',
    )


def h_polarized(dom: DomainDescriptor) -> PolarizedFn:
    kernel = dom.kernel
    return PolarizedFn(dom, lambda z, w: kernel.kernel_h(z, w), order=0, name='h')


def log_det_bergman_polarized(dom: DomainDescriptor, guard_floor: float = 1e-8) -> PolarizedFn:
    """log det B(z, w); det B is positive on the diagonal, so the principal log is continuous nearby"""
    kernel = dom.kernel

    def evaluator(z, w):
        sign, logabs = np.linalg.slogdet(kernel.bergman_matrix(z, w))
        return np.log(sign) + logabs

    return PolarizedFn(dom, evaluator, order=0, guard=bergman_guard(dom, guard_floor), name='logdetB')


def tensor_power(F: PolarizedFn, m: int) -> PolarizedFn:
    """⊗^m F for a vector-valued F"""
    if F.order != 1:
        raise ValueError(f"tensor_power needs a vector-valued function, got order {F.order}")

    def evaluator(z, w):
        return outer_power(F.evaluator(z, w), m)

    return PolarizedFn(F.dom, evaluator, order=m, guard=F.guard, name=f"⊗^{m}{F.name}")


def combine(op: Callable[..., np.ndarray], *parts: PolarizedFn, order: int, name: str) -> PolarizedFn:
    """Pointwise combination op(values_1, values_2, ...) of polarized functions"""
    dom = parts[0].dom

    def evaluator(z, w):
        return op(*(part.evaluator(z, w) for part in parts))

    return PolarizedFn(dom, evaluator, order=order,
                       guard=combine_guards(*(part.guard for part in parts)), name=name)


# ---------------------------------------------------------------------------
# contour quadrature

def _cauchy_formula(values: np.ndarray, roots: np.ndarray, radius, order: int) -> np.ndarray:
    """k! mean(F(a + ρζ) ζ^{-k}) / ρ^k over the roots of unity ζ, nodes on the last axis"""
    return math.factorial(order) * np.mean(values * roots ** (-order), axis=-1) / radius ** order


def _shrink_radius(radius, admissible: Callable, cfg: CauchyQuadConfig, label: str):
    """
    Halve the radii whose contours fail the guard

    Args:
        radius: scalar or array of contour radii
        admissible: maps radii to a bool (or bool array shaped like radius)
        cfg: quadrature settings
        label: used in messages

    Raises:
        GuardViolation: when a contour is still rejected after cfg.max_halvings halvings
    """
    for attempt in range(cfg.max_halvings + 1):
        ok = np.asarray(admissible(radius))
        if ok.all():
            return radius
        logger.debug(f"{label}: halving contour radius on {int((~ok).sum())} circles (attempt {attempt + 1})")
        radius = np.where(ok, radius, np.asarray(radius) / 2)
    raise GuardViolation(f"{label}: contour nodes leave the analyticity region after "
                         f"{cfg.max_halvings} halvings")


def cauchy_derivative(F: Callable[[np.ndarray], np.ndarray], a, order: int,
                      cfg: Optional[CauchyQuadConfig] = None, radius: Optional[float] = None,
                      guard: Optional[Callable[[np.ndarray], np.ndarray]] = None):
    """
    k-th derivative of a one-variable analytic function by contour quadrature

    Args:
        F: vectorized analytic function of one complex variable
        a: expansion point (scalar or array)
        order: derivative order k >= 0
        cfg: quadrature settings
        radius: contour radius; defaults to cfg.radius_fraction
        guard: optional predicate on contour nodes

    Returns:
        F^(k)(a), same shape as ``a``

    Raises:
        GuardViolation: when nodes violate the guard after all halvings
        NonConvergent: when the estimates at ρ and ρ/2 disagree
    """
    cfg = cfg or CauchyQuadConfig()
    a = np.asarray(a, dtype=complex)
    rho = cfg.radius_fraction if radius is None else float(radius)
    roots = cfg.roots

    def admissible(r):
        return guard is None or bool(np.all(guard(a[..., None] + r * roots)))

    rho = float(_shrink_radius(rho, admissible, cfg, f"contour around {a}"))

    def estimate(r):
        return _cauchy_formula(np.asarray(F(a[..., None] + r * roots)), roots, r, order)

    value = estimate(rho)
    check = estimate(rho / 2)
    error = np.max(np.abs(value - check))
    if error > cfg.tolerance * max(1.0, float(np.max(np.abs(value)))):
        raise NonConvergent(f"Two-radius estimates differ by {error:.3e}")
    return value


def directional_derivatives(F: PolarizedFn, z: np.ndarray, w: np.ndarray, slot: str,
                            directions: np.ndarray, cfg: CauchyQuadConfig, order: int = 1) -> np.ndarray:
    """
    Derivatives of F along directions in one slot

    Args:
        F: polarized function
        z, w: base points (N, dim)
        slot: 'z' or 'w'
        directions: (N, K, dim), fixed at the base point
        cfg: quadrature settings
        order: derivative order along each direction

    Returns:
        (N, K) + F.value_shape
    """
    dom = F.dom
    n_points, n_dirs = directions.shape[:2]
    scale = np.minimum(dom.boundary_distance(z), dom.boundary_distance(np.conj(w)))
    scale = np.maximum(scale, cfg.min_scale)
    lengths = np.linalg.norm(directions, axis=-1)
    safe = np.where(lengths > 0, lengths, 1.0)
    radius = cfg.radius_fraction * scale[:, None] / safe

    out = np.empty((n_points, n_dirs) + F.value_shape, dtype=complex)
    per_chunk = max(1, cfg.chunk_nodes // (n_dirs * cfg.points))
    for start in range(0, n_points, per_chunk):
        sl = slice(start, start + per_chunk)
        out[sl] = _contour_chunk(F, z[sl], w[sl], slot, directions[sl], radius[sl], cfg, order)

    out[lengths == 0] = 0.0
    return out


def _contour_chunk(F, z, w, slot, directions, radius, cfg, order):
    n_points, n_dirs, dim = directions.shape
    roots = cfg.roots
    moving_base, fixed_base = (w, z) if slot == W_SLOT else (z, w)

    def nodes(r):
        shift = r[:, :, None, None] * roots[None, None, :, None] * directions[:, :, None, :]
        moving = (moving_base[:, None, None, :] + shift).reshape(-1, dim)
        fixed = np.broadcast_to(fixed_base[:, None, None, :], shift.shape).reshape(-1, dim)
        return (fixed, moving) if slot == W_SLOT else (moving, fixed)

    def admissible(r):
        if F.guard is None:
            return True
        return np.asarray(F.guard(*nodes(r))).reshape(n_points, n_dirs, cfg.points).all(axis=-1)

    radius = _shrink_radius(radius, admissible, cfg, F.name)
    values = np.asarray(F.evaluator(*nodes(radius))).reshape(n_points, n_dirs, cfg.points, -1)
    deriv = _cauchy_formula(np.moveaxis(values, 2, -1), roots, radius[..., None], order)
    return deriv.reshape((n_points, n_dirs) + F.value_shape)


def basis_directions(n_points: int, dim: int) -> np.ndarray:
    return np.broadcast_to(np.eye(dim, dtype=complex), (n_points, dim, dim))


# ---------------------------------------------------------------------------
# lifts

def _gradient_raw(F: PolarizedFn, slot: str, cfg: CauchyQuadConfig) -> PolarizedFn:
    dim = F.dom.dim

    def evaluator(z, w):
        return directional_derivatives(F, z, w, slot, basis_directions(z.shape[0], dim), cfg)

    label = '∂̄' if slot == W_SLOT else '∂'
    return PolarizedFn(F.dom, evaluator, order=F.order + 1, guard=F.guard, name=f"{label}{F.name}")


def gradient_lift(F: PolarizedFn, slot: str, cfg: CauchyQuadConfig) -> PolarizedFn:
    """Full gradient in one slot; the new tensor slot comes first"""
    raw = _gradient_raw(F, slot, cfg)
    return raw.with_reference(_gradient_raw(F.twin, slot, cfg.halved()))


def _directional_raw(F: PolarizedFn, slot: str, direction: Callable, cfg: CauchyQuadConfig) -> PolarizedFn:
    def evaluator(z, w):
        dirs = np.asarray(direction(z, w), dtype=complex)
        dirs = np.broadcast_to(dirs, z.shape)[:, None, :]
        return directional_derivatives(F, z, w, slot, dirs, cfg)[:, 0]

    return PolarizedFn(F.dom, evaluator, order=F.order, guard=F.guard, name=f"∂_{slot}{F.name}")


def directional_lift(F: PolarizedFn, slot: str, direction: Callable, cfg: CauchyQuadConfig) -> PolarizedFn:
    """
    Directional derivative in one slot along direction(z, w)

    The direction may depend on the base point; it is frozen while
    differentiating.
    """
    raw = _directional_raw(F, slot, direction, cfg)
    return raw.with_reference(_directional_raw(F.twin, slot, direction, cfg.halved()))


def evaluate_with_error(G: PolarizedFn, z, tolerance: float) -> QuadratureResult:
    """
    Restrict a lifted function and compare against its half-radius twin

    Raises:
        NonConvergent: when the relative disagreement exceeds ``tolerance``
    """
    value = G.restrict(z)
    if G.reference is None:
        return QuadratureResult(value, 0.0)
    check = G.reference.restrict(z)
    error = float(np.max(np.abs(value - check))) if value.size else 0.0
    scale = max(1.0, float(np.max(np.abs(value)))) if value.size else 1.0
    if error > tolerance * scale:
        raise NonConvergent(f"{G.name}: two-radius estimates differ by {error:.3e}")
    return QuadratureResult(value, error)


def wirtinger_dbar(F: PolarizedFn, z, cfg: CauchyQuadConfig) -> np.ndarray:
    """∂̄f at z: new slot j holds ∂_{w_j} F(z, w) at w = conj(z)"""
    return evaluate_with_error(gradient_lift(F, W_SLOT, cfg), z, cfg.tolerance).value


def wirtinger_partial(F: PolarizedFn, z, cfg: CauchyQuadConfig) -> np.ndarray:
    """∂f at z: new slot j holds ∂_{z_j} F(z, w) at w = conj(z)"""
    return evaluate_with_error(gradient_lift(F, Z_SLOT, cfg), z, cfg.tolerance).value


def wirtinger_d(F: PolarizedFn, z, v, cfg: CauchyQuadConfig) -> np.ndarray:
    """∂_v f at z: derivative of the z slot along the point v"""
    v = F.dom.as_points(v)
    G = directional_lift(F, Z_SLOT, lambda zz, ww: v, cfg)
    return evaluate_with_error(G, z, cfg.tolerance).value


def wirtinger_dbar_along(F: PolarizedFn, z, eta, cfg: CauchyQuadConfig) -> np.ndarray:
    """∂_η̄ f at z: derivative of the w slot along the covector eta (value coordinates)"""
    eta = F.dom.as_points(eta)
    G = directional_lift(F, W_SLOT, lambda zz, ww: eta, cfg)
    return evaluate_with_error(G, z, cfg.tolerance).value
