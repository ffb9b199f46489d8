"""
Domain Sampler
Seeded rejection sampling of Ω, interior test points and boundary directions
"""

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from src.domains.descriptor import DomainDescriptor
from src.utils.errors import AcceptanceTooLow, ConfigInvalid
from src.utils.logger import get_logger

logger = get_logger(__name__)

REJECTION_BOX = 'rejection-box'
RADIAL_STRATIFIED = 'radial-stratified'
METHODS = (REJECTION_BOX, RADIAL_STRATIFIED)


@dataclass(frozen=True)
class SamplerConfig:
    """
    Sampling settings

    Attributes:
        seed: base seed; chunk streams are spawned from it
        samples: number of proposals N
        boundary_margin: minimum boundary distance of accepted points
        method: 'rejection-box' or 'radial-stratified' (disk only)
        chunk_size: proposals per chunk
        min_acceptance: acceptance rate below which sampling is refused
        angular_nodes: angle nodes of the radial-stratified rule
    """

    seed: int = 42
    samples: int = 100_000
    boundary_margin: float = 1e-6
    method: str = REJECTION_BOX
    chunk_size: int = 65_536
    min_acceptance: float = 1e-4
    angular_nodes: int = 64

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigInvalid(f"Unknown sampling method {self.method!r}; expected one of {METHODS}")
        if self.samples < 2:
            raise ConfigInvalid(f"samples must be at least 2, got {self.samples}")
        if self.chunk_size < 1 or self.angular_nodes < 1:
            raise ConfigInvalid("chunk_size and angular_nodes must be positive")
        if not 0.0 <= self.boundary_margin < 1.0:
            raise ConfigInvalid(f"boundary_margin must lie in [0, 1), got {self.boundary_margin}")

    @classmethod
    def from_dict(cls, record: Optional[Dict]) -> 'SamplerConfig':
        record = dict(record or {})
        unknown = set(record) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigInvalid(f"Unknown sampler settings: {sorted(unknown)}")
        return cls(**record)

    def to_dict(self) -> Dict:
        return asdict(self)

    def with_seed(self, seed: int) -> 'SamplerConfig':
        return replace(self, seed=seed)

    @property
    def n_chunks(self) -> int:
        return math.ceil(self.samples / self.chunk_size)


@dataclass(frozen=True)
class DomainSample:
    """Accepted points together with the rejection diagnostics"""

    points: np.ndarray
    proposals: int
    box_volume: float

    @property
    def acceptance_rate(self) -> float:
        return self.points.shape[0] / self.proposals


def box_volume(dom: DomainDescriptor) -> float:
    """Lebesgue volume of the box of unit squares, one per complex coordinate"""
    return float(4 ** dom.dim)


def domain_volume(dom: DomainDescriptor) -> float:
    """
    Lebesgue volume of Ω

    Ball: π^n / n!. MatrixI(p, q): π^{pq} Π_{j<p} j! Π_{j<q} j! / Π_{j<p+q} j!.
    """
    if dom.is_ball:
        return math.pi ** dom.n / math.factorial(dom.n)
    p, q = dom.p, dom.q
    numer = math.prod(math.factorial(j) for j in range(p)) * math.prod(math.factorial(j) for j in range(q))
    denom = math.prod(math.factorial(j) for j in range(p + q))
    return math.pi ** (p * q) * numer / denom


def _propose(dom: DomainDescriptor, count: int, rng: np.random.Generator) -> np.ndarray:
    real = rng.uniform(-1.0, 1.0, size=(count, dom.dim))
    imag = rng.uniform(-1.0, 1.0, size=(count, dom.dim))
    return real + 1j * imag


def iter_sample_chunks(dom: DomainDescriptor, cfg: SamplerConfig) -> Iterator[Tuple[np.ndarray, int]]:
    """
    Yield (accepted points, proposals) per chunk

    Every chunk draws from its own stream spawned from cfg.seed, so the
    sequence depends only on (seed, samples, chunk_size).
    """
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.n_chunks)
    remaining = cfg.samples
    for child in children:
        count = min(cfg.chunk_size, remaining)
        remaining -= count
        rng = np.random.default_rng(child)
        proposals = _propose(dom, count, rng)
        accepted = proposals[dom.contains(proposals, cfg.boundary_margin)]
        yield accepted, count


def sample_domain(dom: DomainDescriptor, cfg: SamplerConfig) -> DomainSample:
    """
    Uniform Lebesgue samples of Ω by rejection from the box

    Raises:
        AcceptanceTooLow: when fewer than cfg.min_acceptance of the proposals land in Ω
    """
    points, total = [], 0
    for accepted, count in iter_sample_chunks(dom, cfg):
        points.append(accepted)
        total += count

    sample = DomainSample(np.concatenate(points, axis=0), total, box_volume(dom))
    if sample.acceptance_rate < cfg.min_acceptance:
        raise AcceptanceTooLow(
            f"Acceptance rate {sample.acceptance_rate:.2e} on {dom.label} below {cfg.min_acceptance:.1e}"
        )
    logger.debug(f"Sampled {sample.points.shape[0]} of {total} proposals on {dom.label}")
    return sample


def _gaussian(dom: DomainDescriptor, count: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((count, dom.dim)) + 1j * rng.standard_normal((count, dom.dim))


def draw_directions(dom: DomainDescriptor, count: int, rng: np.random.Generator) -> np.ndarray:
    """Boundary points u with ‖u‖_op = 1 along Gaussian directions"""
    g = _gaussian(dom, count, rng)
    return g / dom.operator_norm(g)[:, None]


def cone_directions(dom: DomainDescriptor, count: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """
    Boundary points with weights realizing the cone measure of Ω

    Gaussian directions are uniform on the Euclidean sphere; the cone measure
    has density ‖θ‖_op^{-2 dim} there, so weights are that density
    normalized to mean 1. On the disk the nodes are equispaced and exact.

    Returns:
        (units (count, dim), weights (count,))
    """
    if dom.is_disk:
        angles = 2 * np.pi * np.arange(count) / count
        return np.exp(1j * angles)[:, None], np.ones(count)
    g = _gaussian(dom, count, rng)
    theta = g / np.linalg.norm(g, axis=-1, keepdims=True)
    op = dom.operator_norm(theta)
    weights = op ** (-dom.real_dim)
    return theta / op[:, None], weights / np.mean(weights)


def draw_points(dom: DomainDescriptor, count: int, rng: np.random.Generator,
                max_norm: float = 0.9, min_norm: float = 0.05) -> np.ndarray:
    """
    Interior test points with operator norm in [min_norm, max_norm]

    Not uniform; meant for pointwise identity checks.
    """
    if not 0.0 <= min_norm < max_norm < 1.0:
        raise ConfigInvalid(f"Need 0 <= min_norm < max_norm < 1, got {min_norm}, {max_norm}")
    radius = rng.uniform(min_norm, max_norm, size=count)
    return draw_directions(dom, count, rng) * radius[:, None]
