"""Importing this package fills the check registry"""

from . import jordan_checks, calculus_checks, hwv_checks, quadrature_checks, meta_checks

__all__ = ['jordan_checks', 'calculus_checks', 'hwv_checks', 'quadrature_checks', 'meta_checks']
