from .descriptor import DomainDescriptor, BALL, MATRIX
from .jordan import (
    LinOpV,
    covector_of,
    pairing,
    triple_product,
    operator_D,
    operator_Q,
    operator_Q2,
    bergman_operator,
    kernel_h,
    quasi_inverse,
    q_closed,
    inner_product,
    inner_product_via_trace,
)
from .k_action import KElement, random_k, k_transform, k_transform_dual

__all__ = [
    'DomainDescriptor', 'BALL', 'MATRIX',
    'LinOpV', 'covector_of', 'pairing', 'triple_product', 'operator_D',
    'operator_Q', 'operator_Q2', 'bergman_operator', 'kernel_h',
    'quasi_inverse', 'q_closed', 'inner_product', 'inner_product_via_trace',
    'KElement', 'random_k', 'k_transform', 'k_transform_dual',
]
