"""
Nearly Holomorphic Functions
f(z) = Σ_k [g_k(z), ⊗^k q(z)] with holomorphic symmetric-tensor coefficients
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from src.calculus.cr_operator import cr_power
from src.calculus.polarized import CauchyQuadConfig, PolarizedFn, bergman_guard, evaluate_with_error
from src.calculus.tensor import outer_power
from src.domains.descriptor import DomainDescriptor
from src.utils.logger import get_logger

logger = get_logger(__name__)

Coefficient = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class NearlyHolo:
    """
    Element of N_m

    Attributes:
        dom: domain descriptor
        coefficients: g_0 ... g_m; g_k maps points (N, dim) to (N,) + (dim,)*k
    """

    dom: DomainDescriptor
    coefficients: List[Coefficient]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_polarized(self, guard_floor: float = 1e-8) -> PolarizedFn:
        dom = self.dom
        kernel = dom.kernel
        coefficients = list(self.coefficients)

        def evaluator(z, w):
            q = kernel.quasi_inverse(w, z)
            total = np.zeros(z.shape[0], dtype=complex)
            for k, g in enumerate(coefficients):
                values = np.asarray(g(z), dtype=complex).reshape(z.shape[0], -1)
                total = total + np.sum(values * outer_power(q, k).reshape(z.shape[0], -1), axis=-1)
            return total

        return PolarizedFn(dom, evaluator, order=0, guard=bergman_guard(dom, guard_floor), name=f"N{self.degree}")

    def __call__(self, z) -> np.ndarray:
        return self.to_polarized().restrict(z)


def nearly_holo_builder(coefficients: Sequence[Coefficient], dom: DomainDescriptor) -> NearlyHolo:
    """
    Build f = Σ g_k(q) from holomorphic coefficient evaluators

    Raises:
        ValueError: if no coefficient is given
    """
    if not coefficients:
        raise ValueError("A nearly holomorphic function needs at least g_0")
    return NearlyHolo(dom, list(coefficients))


def nearly_holo_kernel_check(f: NearlyHolo, points, cfg: CauchyQuadConfig) -> Dict[str, float]:
    """
    D̄^{m+1} f must vanish while D̄^m f is its (constant in w̄) top part

    Returns:
        {'kernel_residual': max |D̄^{m+1} f|, 'top_norm': max |D̄^m f|}
    """
    F = f.to_polarized(cfg.guard_floor)
    m = f.degree
    points = f.dom.as_points(points).reshape(-1, f.dom.dim)

    kernel_value = evaluate_with_error(cr_power(F, m + 1, cfg), points, cfg.tolerance).value
    top_value = evaluate_with_error(cr_power(F, m, cfg), points, cfg.tolerance).value
    result = {
        'kernel_residual': float(np.max(np.abs(kernel_value))),
        'top_norm': float(np.max(np.abs(top_value))),
    }
    logger.debug(f"Nearly holomorphic kernel check (m={m}): {result}")
    return result
