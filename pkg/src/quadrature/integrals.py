"""
Weighted Integrals
Monte-Carlo and radial quadrature for ∫ |f|^2 h^α dm and Bergman tensor norms
"""

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict

import numpy as np
from scipy import integrate, special

from src.calculus.tensor import apply_to_slots
from src.domains.descriptor import DomainDescriptor
from src.quadrature.sampler import RADIAL_STRATIFIED, REJECTION_BOX, SamplerConfig, box_volume, iter_sample_chunks
from src.utils.errors import AcceptanceTooLow, ConfigInvalid, NegativeIntegrand, UnsupportedDomain
from src.utils.logger import get_logger

logger = get_logger(__name__)

PointFn = Callable[[np.ndarray], np.ndarray]

NEGATIVE_TOL = 1e-12

# largest t = |z|^2 fed to a radial integrand; sqrt of it is still < 1
RADIAL_EDGE = 1.0 - 1e-15


@dataclass(frozen=True)
class IntegralEstimate:
    """
    Integral estimate with diagnostics

    Attributes:
        value: estimate of the integral (raw Lebesgue normalization)
        stderr: standard error (MC) or absolute error bound (radial rule)
        samples_used: proposals (MC) or integrand evaluations (radial rule)
        acceptance_rate: fraction of proposals inside Ω (1.0 for the radial rule)
        method: 'rejection-box' or 'radial-stratified'
    """

    value: float
    stderr: float
    samples_used: int
    acceptance_rate: float
    method: str

    def to_dict(self) -> Dict:
        return asdict(self)

    def agrees_with(self, other: float, n_sigma: float = 3.0, other_stderr: float = 0.0) -> bool:
        return abs(self.value - other) <= n_sigma * math.hypot(self.stderr, other_stderr)


def weight_h(dom: DomainDescriptor, z: np.ndarray) -> np.ndarray:
    """h(z, z̄), real and positive on Ω"""
    return np.real(dom.kernel.kernel_h(z, np.conj(z)))


def mc_integrate(integrand: PointFn, dom: DomainDescriptor, cfg: SamplerConfig) -> IntegralEstimate:
    """
    ∫_Ω g dm by rejection Monte Carlo

    The estimator is box_volume * mean over all proposals, with rejected
    proposals contributing 0. Chunks are reduced in order, so the result is
    deterministic for fixed (seed, samples, chunk_size).

    Raises:
        AcceptanceTooLow: when fewer than cfg.min_acceptance of the proposals land in Ω
    """
    total = 0.0
    total_sq = 0.0
    proposals = 0
    accepted_count = 0
    for accepted, count in iter_sample_chunks(dom, cfg):
        proposals += count
        accepted_count += accepted.shape[0]
        if accepted.shape[0] == 0:
            continue
        values = np.asarray(integrand(accepted), dtype=float)
        total += float(np.sum(values))
        total_sq += float(np.sum(values ** 2))

    rate = accepted_count / proposals
    if rate < cfg.min_acceptance:
        raise AcceptanceTooLow(f"Acceptance rate {rate:.2e} on {dom.label} below {cfg.min_acceptance:.1e}")

    volume = box_volume(dom)
    mean = total / proposals
    variance = max(total_sq / proposals - mean ** 2, 0.0)
    stderr = volume * math.sqrt(variance / (proposals - 1))
    return IntegralEstimate(volume * mean, stderr, proposals, rate, REJECTION_BOX)


def radial_disk_integrate(integrand: PointFn, alpha: float, cfg: SamplerConfig) -> IntegralEstimate:
    """
    ∫_disk g (1-|z|^2)^α dm = π ∫_0^1 avg_θ g(√t e^{iθ}) (1-t)^α dt

    The angle is averaged on cfg.angular_nodes equispaced nodes. The radial
    integral uses scipy's adaptive Gauss-Kronrod rule, whose nodes are interior,
    so g may blow up at |z| = 1 as long as g (1-t)^α stays integrable. Nodes
    that round onto the circle are pulled back to RADIAL_EDGE.
    """
    if alpha <= -1:
        raise ConfigInvalid(f"The weight (1-t)^α needs α > -1, got {alpha}")
    angles = np.exp(2j * np.pi * np.arange(cfg.angular_nodes) / cfg.angular_nodes)
    calls = 0

    def radial(t):
        nonlocal calls
        calls += cfg.angular_nodes
        z = (math.sqrt(min(t, RADIAL_EDGE)) * angles)[:, None]
        return float(np.mean(np.asarray(integrand(z), dtype=float))) * (1.0 - t) ** alpha

    value, abserr = integrate.quad(radial, 0.0, 1.0, epsabs=0.0, epsrel=1e-10, limit=200)
    return IntegralEstimate(math.pi * value, math.pi * abserr, calls, 1.0, RADIAL_STRATIFIED)


def weighted_norm(f: PointFn, alpha: float, dom: DomainDescriptor, cfg: SamplerConfig) -> IntegralEstimate:
    """
    ∫_Ω |f|^2 h(z, z̄)^α dm

    Args:
        f: scalar function of points (N, dim)
        alpha: weight exponent, α > -1
        dom: domain descriptor
        cfg: sampler settings; 'radial-stratified' is available on the disk

    Returns:
        IntegralEstimate
    """
    if alpha <= -1:
        raise ConfigInvalid(f"The measure h^α dm needs α > -1, got {alpha}")

    if cfg.method == RADIAL_STRATIFIED:
        if not dom.is_disk:
            raise UnsupportedDomain(f"Radial-stratified quadrature is disk only, got {dom.label}")
        return radial_disk_integrate(lambda z: np.abs(f(z)) ** 2, alpha, cfg)

    def integrand(z):
        return np.abs(f(z)) ** 2 * weight_h(dom, z) ** alpha

    return mc_integrate(integrand, dom, cfg)


def bergman_tensor_norm(f: PointFn, m: int, alpha: float, dom: DomainDescriptor,
                        cfg: SamplerConfig) -> IntegralEstimate:
    """
    ∫_Ω <(⊗^m B(z, z̄)^{-1}) f(z), f(z)> h^α dm

    Args:
        f: maps points (N, dim) to tensors (N,) + (dim,)*m
        m: tensor order
        alpha: weight exponent
        dom: domain descriptor
        cfg: sampler settings

    Raises:
        NegativeIntegrand: if the integrand is negative at an accepted sample
    """
    kernel = dom.kernel

    def integrand(z):
        values = np.asarray(f(z), dtype=complex).reshape((z.shape[0],) + (dom.dim,) * m)
        if m:
            b_inv = np.linalg.inv(kernel.bergman_matrix(z, np.conj(z)))
            transformed = apply_to_slots(b_inv, values, range(1, m + 1))
        else:
            transformed = values
        pairing = np.sum((transformed * np.conj(values)).reshape(z.shape[0], -1), axis=-1)
        scale = np.sum(np.abs(values.reshape(z.shape[0], -1)) ** 2, axis=-1)
        if np.any(np.real(pairing) < -NEGATIVE_TOL * np.maximum(scale, 1.0)):
            raise NegativeIntegrand(f"⊗^{m}B^-1 pairing negative on {dom.label}; B is not positive there")
        return np.real(pairing) * weight_h(dom, z) ** alpha

    return mc_integrate(integrand, dom, cfg)


def disk_q_power_norm(alpha: float, m: int) -> float:
    """
    ‖q^m‖^2 in L^2(disk, (1-|z|^2)^α dm) = π B(m + 1, α - 2m + 1)

    Returns:
        The closed form, or inf when α - 2m <= -1
    """
    if alpha - 2 * m + 1 <= 0:
        return math.inf
    return math.pi * float(special.beta(m + 1, alpha - 2 * m + 1))
