"""
Integrability Probes
Boundary-refinement diagnosis of ∫ |Δ̄_m(q)|^2 h^α dm as finite or divergent
"""

from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.domains.descriptor import DomainDescriptor
from src.domains.jordan import q_closed
from src.quadrature.integrals import disk_q_power_norm, weight_h
from src.quadrature.sampler import cone_directions, domain_volume
from src.utils.errors import ConfigInvalid, InconclusiveProbe
from src.utils.logger import get_logger

logger = get_logger(__name__)

FINITE = 'finite'
DIVERGENT = 'divergent'
INCONCLUSIVE = 'inconclusive'

DEFAULT_MARGINS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
MATRIX_MARGINS = (1e-2, 1e-3, 1e-4)

# predicted exponents this close to 0 are the logarithmic threshold
THRESHOLD_ATOL = 1e-9


@dataclass(frozen=True)
class ProbeConfig:
    """
    Refinement schedule of an integrability probe

    Attributes:
        margins: decreasing boundary distances ε_k
        directions: boundary directions averaged per shell
        gauss_nodes: Gauss-Legendre nodes per shell in log(1 - s)
        seed: seed of the direction sample
        finite_rtol: last increment relative to the total below which the integral counts as converged
        rate_rtol: relative tolerance between fitted and predicted growth exponents
    """

    margins: Tuple[float, ...] = DEFAULT_MARGINS
    directions: int = 64
    gauss_nodes: int = 48
    seed: int = 42
    finite_rtol: float = 1e-2
    rate_rtol: float = 0.2

    def __post_init__(self):
        margins = tuple(float(m) for m in self.margins)
        if len(margins) < 3:
            raise ConfigInvalid("An integrability probe needs at least three margins")
        if any(not 0.0 < m < 1.0 for m in margins) or any(a <= b for a, b in zip(margins, margins[1:])):
            raise ConfigInvalid(f"Margins must decrease inside (0, 1): {margins}")
        object.__setattr__(self, 'margins', margins)

    @classmethod
    def for_domain(cls, dom: DomainDescriptor, **overrides) -> 'ProbeConfig':
        """Default schedule; matrix domains stop at 1e-4"""
        if not dom.is_ball:
            overrides.setdefault('margins', MATRIX_MARGINS)
        return cls(**overrides)

    def to_dict(self) -> Dict:
        record = asdict(self)
        record['margins'] = list(self.margins)
        return record


@dataclass(frozen=True)
class ProbeResult:
    """
    Verdict with its evidence

    Attributes:
        verdict: 'finite', 'divergent' or 'inconclusive'
        predicted_exponent: predicted power of ε in the shell increments
        fitted_exponent: least-squares slope of log increment against log ε
        partial_integrals: integral over ‖z‖_op <= 1 - ε_k for each margin
        increments: shell integrals between consecutive margins
        margins: the refinement schedule
    """

    verdict: str
    predicted_exponent: float
    fitted_exponent: float
    partial_integrals: List[float] = field(default_factory=list)
    increments: List[float] = field(default_factory=list)
    margins: List[float] = field(default_factory=list)

    def require_verdict(self) -> str:
        """
        Raises:
            InconclusiveProbe: if the schedule supports neither verdict
        """
        if self.verdict == INCONCLUSIVE:
            raise InconclusiveProbe(
                f"Increments {self.increments} fit exponent {self.fitted_exponent:.3f}, "
                f"predicted {self.predicted_exponent:.3f}"
            )
        return self.verdict

    def to_dict(self) -> Dict:
        return asdict(self)


def first_minor_integrand(dom: DomainDescriptor, m1: int, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """|Δ̄_1(q)|^{2 m_1} h^α, the integrand of the signature (m_1, 0, ..., 0)"""

    def integrand(z):
        q = q_closed(z, dom)
        return np.abs(q[..., 0]) ** (2 * m1) * weight_h(dom, z) ** alpha

    return integrand


def _shell_integrals(integrand, dom: DomainDescriptor, cfg: ProbeConfig) -> np.ndarray:
    """
    Integrals over {1 - ε_{k-1} < ‖z‖_op <= 1 - ε_k}, with ε_{-1} = 1

    Uses ∫_Ω g dm = vol(Ω) d E_u ∫_0^1 g(s u) s^{d-1} ds (d the real dimension)
    with u distributed by the cone measure, and Gauss-Legendre nodes in
    τ = log(1 - s) on every shell.
    """
    rng = np.random.default_rng(cfg.seed)
    units, weights = cone_directions(dom, cfg.directions, rng)
    nodes, gl_weights = np.polynomial.legendre.leggauss(cfg.gauss_nodes)
    d = dom.real_dim
    scale = domain_volume(dom) * d

    taus = np.log(np.array((1.0,) + cfg.margins))
    shells = []
    for upper, lower in zip(taus[:-1], taus[1:]):
        half = (upper - lower) / 2
        tau = lower + half * (nodes + 1.0)
        s = 1.0 - np.exp(tau)
        z = s[None, :, None] * units[:, None, :]
        values = np.asarray(integrand(z.reshape(-1, dom.dim)), dtype=float).reshape(units.shape[0], -1)
        radial = values * (s ** (d - 1) * np.exp(tau))[None, :]
        per_direction = half * radial @ gl_weights
        shells.append(scale * float(np.mean(weights * per_direction)))
    return np.array(shells)


def integrability_probe(dom: DomainDescriptor, alpha: float, m1: int, cfg: Optional[ProbeConfig] = None,
                        integrand: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                        predicted_exponent: Optional[float] = None) -> ProbeResult:
    """
    Decide whether ∫ |Δ̄_m(q)|^2 h^α dm is finite

    The integrand behaves like h^{α - 2 m_1} at the boundary, so the shell
    increments scale like ε^{α - 2 m_1 + 1}. Finite: increments decrease,
    the last one is small against the total and the fitted exponent is
    positive. Divergent: increments increase and the fitted exponent matches
    the prediction within cfg.rate_rtol. At the threshold α - 2 m_1 + 1 = 0
    the integral diverges logarithmically: increments stay level, so the
    fitted exponent is within cfg.rate_rtol of 0 and the last increment is
    not small against the total. Anything else is inconclusive.

    Args:
        dom: domain descriptor
        alpha: weight exponent
        m1: leading signature part
        cfg: refinement schedule
        integrand: defaults to the (m_1, 0, ..., 0) integrand
        predicted_exponent: defaults to α - 2 m_1 + 1

    Returns:
        ProbeResult
    """
    cfg = cfg or ProbeConfig.for_domain(dom)
    integrand = integrand or first_minor_integrand(dom, m1, alpha)
    predicted = alpha - 2 * m1 + 1 if predicted_exponent is None else predicted_exponent

    shells = _shell_integrals(integrand, dom, cfg)
    partial = np.cumsum(shells)
    increments = shells[1:]
    margins = np.array(cfg.margins)

    positive = increments > 0
    if positive.all():
        slope = float(np.polyfit(np.log(margins[1:]), np.log(increments), 1)[0])
    else:
        slope = float('nan')

    diffs = np.diff(increments)
    if positive.all() and np.all(diffs < 0) and increments[-1] <= cfg.finite_rtol * partial[-1] and slope > 0:
        verdict = FINITE
    elif (positive.all() and np.all(diffs > 0) and slope < 0
          and abs(slope - predicted) <= cfg.rate_rtol * abs(predicted)):
        verdict = DIVERGENT
    elif (abs(predicted) <= THRESHOLD_ATOL and positive.all() and abs(slope) <= cfg.rate_rtol
          and increments[-1] > cfg.finite_rtol * partial[-1]):
        # equal increments per decade of ε: the partial integrals grow like log(1/ε)
        verdict = DIVERGENT
    else:
        verdict = INCONCLUSIVE

    logger.debug(f"Probe on {dom.label}, alpha={alpha}, m1={m1}: {verdict} (slope {slope:.3f}, "
                 f"predicted {predicted:.3f})")
    return ProbeResult(
        verdict=verdict,
        predicted_exponent=float(predicted),
        fitted_exponent=slope,
        partial_integrals=partial.tolist(),
        increments=increments.tolist(),
        margins=margins.tolist(),
    )


def threshold_table(dom: DomainDescriptor, alpha: float, m1_values: Sequence[int],
                    cfg: Optional[ProbeConfig] = None) -> pd.DataFrame:
    """
    Integrability threshold table for fixed α

    Returns:
        DataFrame with one row per m_1: admissibility (α + 1)/2 > m_1, the
        boundary exponent α - 2 m_1, the disk closed form (disk only), the
        probe verdict and fitted exponent
    """
    rows = []
    for m1 in m1_values:
        try:
            result = integrability_probe(dom, alpha, m1, cfg)
            verdict, fitted = result.verdict, result.fitted_exponent
        except Exception as e:
            logger.error(f"Probe failed for m1={m1}: {e}")
            verdict, fitted = INCONCLUSIVE, float('nan')

        rows.append({
            'm1': m1,
            'admissible': (alpha + 1) / 2 > m1,
            'boundary_exponent': alpha - 2 * m1,
            'closed_form': disk_q_power_norm(alpha, m1) if dom.is_disk else float('nan'),
            'verdict': verdict,
            'fitted_exponent': fitted,
            'predicted_exponent': alpha - 2 * m1 + 1,
        })
    return pd.DataFrame(rows)


def with_margins(cfg: ProbeConfig, margins: Sequence[float]) -> ProbeConfig:
    return replace(cfg, margins=tuple(margins))
