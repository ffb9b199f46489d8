from .signature import Signature, enumerate_signatures
from .sym_tensor import SymTensor
from .determinants import (
    delta_fundamental,
    delta_signature,
    delta_signature_bar,
    compose_with_q,
    compose_with_q_polarized,
    highest_weight_tensor,
    del_n_2_residual,
    loos_h_identity_check,
    del_n_boundary_probe,
)
from .expansion import minor_kernels, fk_expansion_check
from .nearly_holo import NearlyHolo, nearly_holo_builder, nearly_holo_kernel_check

__all__ = [
    'Signature', 'enumerate_signatures', 'SymTensor',
    'delta_fundamental', 'delta_signature', 'delta_signature_bar',
    'compose_with_q', 'compose_with_q_polarized', 'highest_weight_tensor',
    'del_n_2_residual', 'loos_h_identity_check', 'del_n_boundary_probe',
    'minor_kernels', 'fk_expansion_check',
    'NearlyHolo', 'nearly_holo_builder', 'nearly_holo_kernel_check',
]
