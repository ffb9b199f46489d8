"""
Kernel Expansion
Expansion of h(v, w̄) into minor-sum kernels with numerically fitted constants
"""

from itertools import combinations
from typing import Dict

import numpy as np

from src.domains.descriptor import DomainDescriptor
from src.utils.logger import get_logger

logger = get_logger(__name__)


def minor_kernels(v, w, dom: DomainDescriptor) -> np.ndarray:
    """
    K_s(v, w̄) = Σ_{|I| = |J| = s} det v_IJ conj(det w_IJ), s = 0..rank

    Returns:
        Array (..., rank + 1); column 0 is identically 1
    """
    v = dom.as_matrix(dom.as_points(v))
    w = dom.as_matrix(dom.as_points(w))
    rows, cols = dom.matrix_shape
    batch = np.broadcast_shapes(v.shape[:-2], w.shape[:-2])

    columns = [np.ones(batch, dtype=complex)]
    for s in range(1, dom.rank + 1):
        total = np.zeros(batch, dtype=complex)
        for row_idx in combinations(range(rows), s):
            for col_idx in combinations(range(cols), s):
                sub_v = v[..., row_idx, :][..., :, col_idx]
                sub_w = w[..., row_idx, :][..., :, col_idx]
                total = total + np.linalg.det(sub_v) * np.conj(np.linalg.det(sub_w))
        columns.append(total)
    return np.stack(columns, axis=-1)


def fk_expansion_check(dom: DomainDescriptor, v, w) -> Dict:
    """
    Fit h(v, w̄) = Σ_s a_s K_s(v, w̄) by least squares over the sample pairs

    Args:
        dom: domain descriptor
        v, w: sample points (N, dim)

    Returns:
        Dict with constants c_s = |a_s|, measured signs, whether the signs
        follow (-1)^s, and the max residual of the fitted expansion
    """
    kernel = dom.kernel
    v = dom.as_points(v).reshape(-1, dom.dim)
    w = dom.as_points(w).reshape(-1, dom.dim)

    design = minor_kernels(v, w, dom)
    target = kernel.kernel_h(v, np.conj(w))
    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.max(np.abs(design @ coef - target)))

    constants = np.abs(coef)
    signs = [int(np.sign(np.real(a))) if abs(a) > 1e-9 else 0 for a in coef]
    expected = [(-1) ** s for s in range(len(coef))]
    pattern_ok = all(sign in (0, exp) for sign, exp in zip(signs, expected))

    logger.debug(f"fk expansion on {dom.label}: constants {constants.round(12)}, residual {residual:.3e}")
    return {
        'constants': constants.tolist(),
        'signs': signs,
        'sign_pattern_ok': pattern_ok,
        'residual': residual,
        'design_rank': int(rank),
    }
