"""
Check Registry
Named verification checks, their execution context and outcome
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.calculus.polarized import CauchyQuadConfig
from src.domains.descriptor import DomainDescriptor
from src.polynomials.signature import Signature
from src.quadrature.sampler import SamplerConfig, draw_points
from src.utils.errors import UnknownCheck
from src.utils.logger import get_logger

logger = get_logger(__name__)

DISK = 'disk'
ALL_DOMAINS = ('ball', 'matrix')
BALL_ONLY = ('ball',)
DISK_ONLY = (DISK,)


@dataclass
class CheckContext:
    """
    Everything a check needs to run

    Attributes:
        domain: domain the check runs on
        tolerance: pass threshold for max_error (strict)
        samples: number of points or Monte-Carlo proposals
        seed: seed of ctx.rng and of any sampler
        params: check-specific parameters from the suite
        quad: Cauchy quadrature settings
        alpha: weight exponent
        signature: signature, or None for the check's default
    """

    domain: DomainDescriptor
    tolerance: float
    samples: int
    seed: int = 42
    params: Dict = field(default_factory=dict)
    quad: CauchyQuadConfig = field(default_factory=CauchyQuadConfig)
    alpha: float = 4.0
    signature: Optional[Signature] = None

    def __post_init__(self):
        self.rng = np.random.default_rng(self.seed)

    def points(self, count: Optional[int] = None, max_norm: Optional[float] = None) -> np.ndarray:
        """Interior test points drawn from ctx.rng"""
        count = self.samples if count is None else count
        max_norm = self.params.get('max_norm', 0.9) if max_norm is None else max_norm
        return draw_points(self.domain, count, self.rng, max_norm=max_norm)

    def sampler(self, samples: Optional[int] = None, seed: Optional[int] = None, **overrides) -> SamplerConfig:
        return SamplerConfig(
            seed=self.seed if seed is None else seed,
            samples=self.samples if samples is None else samples,
            **overrides,
        )

    def signature_or(self, default: Signature) -> Signature:
        return (self.signature or default).padded(self.domain.rank)


@dataclass
class CheckOutcome:
    """
    Result reported by a check function

    Attributes:
        max_error: the measured error compared against the tolerance
        points: number of points or samples used
        notes: free text for the report
        secondary_ok: additional pass condition (verdicts, sign patterns)
        inconclusive: the check could not decide
    """

    max_error: float
    points: int
    notes: str = ''
    secondary_ok: bool = True
    inconclusive: bool = False


CheckFn = Callable[[CheckContext], CheckOutcome]


@dataclass(frozen=True)
class CheckDefinition:
    id: str
    fn: CheckFn
    paper_ref: str
    module: str
    domains: Tuple[str, ...]
    default_tolerance: float
    default_samples: int

    def supports(self, dom: DomainDescriptor) -> bool:
        if dom.kind in self.domains:
            return True
        return DISK in self.domains and dom.is_disk


REGISTRY: Dict[str, CheckDefinition] = {}


def register_check(check_id: str, paper_ref: str, module: str, domains: Sequence[str] = ALL_DOMAINS,
                   default_tolerance: float = 1e-10, default_samples: int = 50):
    """
    Decorator adding a check function to the registry

    Args:
        check_id: unique id used in suites
        paper_ref: citation of the identity being checked
        module: library module the check exercises
        domains: supported domain kinds ('ball', 'matrix', 'disk')
        default_tolerance: tolerance when the suite gives none
        default_samples: sample count when the suite gives none
    """
    def decorator(fn: CheckFn) -> CheckFn:
        if check_id in REGISTRY:
            raise ValueError(f"Duplicate check id: {check_id}")
        REGISTRY[check_id] = CheckDefinition(
            id=check_id,
            fn=fn,
            paper_ref=paper_ref,
            module=module,
            domains=tuple(domains),
            default_tolerance=default_tolerance,
            default_samples=default_samples,
        )
        return fn

    return decorator


def get_check(check_id: str) -> CheckDefinition:
    """
    Raises:
        UnknownCheck: if the id is not registered
    """
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise UnknownCheck(f"Unknown check id: {check_id}") from None


def list_checks(module: Optional[str] = None) -> List[CheckDefinition]:
    checks = sorted(REGISTRY.values(), key=lambda c: (c.module, c.id))
    if module is not None:
        checks = [c for c in checks if c.module == module]
    return checks
