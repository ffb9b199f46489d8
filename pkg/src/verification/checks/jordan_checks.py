"""
Jordan Triple Checks
Algebraic identities of the triple, the Bergman operator and the quasi-inverse
"""

import numpy as np

from src.domains.descriptor import MAX_MATRIX_SIDE, DomainDescriptor
from src.domains.jordan import (
    inner_product,
    inner_product_via_trace,
    operator_D,
    q_closed,
    quasi_inverse,
    triple_product,
)
from src.domains.k_action import k_transform, k_transform_dual, random_k
from src.verification.registry import CheckContext, CheckOutcome, register_check

MODULE = 'jts-core'


def _op_norm(a: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a, ord=2, axis=(-2, -1))


@register_check('frame-tripotent', '§3, "bounded symmetric domain of rank $r$"', MODULE,
                default_tolerance=1e-12, default_samples=1)
def check_frame_tripotent(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    errors = []
    for e in dom.frame:
        errors.append(np.max(np.abs(triple_product(e, e, e, dom) - 2 * e)))
        errors.append(abs(inner_product(e, e, dom) - 1.0))
    e1 = dom.frame[0]
    genus = np.real(operator_D(e1, e1, dom).trace()) / np.real(inner_product(e1, e1, dom))
    errors.append(abs(genus - dom.genus))
    return CheckOutcome(float(max(errors)), len(dom.frame), notes=f"rank {dom.rank}, genus {dom.genus}")


@register_check('det-b-genus', '§3, "\\operatorname{det} B(z, \\bar z)= h(z, \\bar z)^p"', MODULE,
                default_tolerance=1e-10, default_samples=100)
def check_det_b_genus(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z = ctx.points()
    det_b = np.linalg.det(kernel.bergman_matrix(z, np.conj(z)))
    h_power = kernel.kernel_h(z, np.conj(z)) ** dom.genus
    rel = np.abs(det_b - h_power) / np.abs(h_power)
    return CheckOutcome(float(np.max(rel)), z.shape[0])


@register_check('quasi-inverse-defining', '§3, "z^{\\bar w}=B(z, \\bar w)^{-1}(z-Q(z)\\bar w)"', MODULE,
                default_tolerance=1e-12, default_samples=100)
def check_quasi_inverse_defining(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z, w = ctx.points(), ctx.points()
    eta = np.conj(w)
    qi = quasi_inverse(z, w, dom)
    lhs = np.einsum('nij,nj->ni', kernel.bergman_matrix(z, eta), qi)
    rhs = z - np.einsum('nij,nj->ni', kernel.q_matrix(z), eta)
    fast = kernel.quasi_inverse(z, eta)
    error = max(np.max(np.abs(lhs - rhs)), np.max(np.abs(fast - qi)))
    return CheckOutcome(float(error), z.shape[0])


@register_check('quasi-inverse-addition', '§4 proof, eq. (q-i-1), "\\bar z^{z+t v} = (\\bar z^{z})^{tv}"',
                MODULE, default_tolerance=1e-10, default_samples=100)
def check_quasi_inverse_addition(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z = ctx.points(max_norm=0.7)
    v = ctx.points(max_norm=0.2)
    lhs = kernel.quasi_inverse(np.conj(z), z + v)
    rhs = kernel.quasi_inverse(q_closed(z, dom), v)
    return CheckOutcome(float(np.max(np.abs(lhs - rhs))), z.shape[0])


@register_check('jp30', '§3 proof, "B(z, \\bar z)D(z^{\\bar z}, v)=D(z, \\bar v)- Q(z)Q(\\bar z, \\bar v)"',
                MODULE, default_tolerance=1e-10, default_samples=100)
def check_jp30(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z, v = ctx.points(), ctx.points()
    zc, vc = np.conj(z), np.conj(v)
    z_quasi = kernel.quasi_inverse(z, zc)
    lhs = kernel.bergman_matrix(z, zc) @ kernel.d_matrix(z_quasi, vc)
    rhs = kernel.d_matrix(z, vc) - kernel.q_matrix(z) @ kernel.q2_matrix(zc, vc)
    return CheckOutcome(float(np.max(_op_norm(lhs - rhs))), z.shape[0])


@register_check('b-inverse-q', '§4 proof, "B(\\bar z, z)^{-1}Q(\\bar z)=Q(\\bar z^z)"', MODULE,
                default_tolerance=1e-10, default_samples=100)
def check_b_inverse_q(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z = ctx.points()
    lhs = np.linalg.solve(kernel.bergman_matrix(np.conj(z), z), kernel.q_matrix(np.conj(z)))
    rhs = kernel.q_matrix(q_closed(z, dom))
    return CheckOutcome(float(np.max(_op_norm(lhs - rhs))), z.shape[0])


@register_check('k-equivariance', 'eq. (k-N), "q(kz)=(k^{-1})^\\prime q(z)"', MODULE,
                default_tolerance=1e-10, default_samples=50)
def check_k_equivariance(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z, w = ctx.points(), ctx.points()
    errors, invariants = [], []
    for j in range(z.shape[0]):
        k = random_k(dom, ctx.rng)
        kz, kw = k_transform(k, z[j], dom), k_transform(k, w[j], dom)
        errors.append(np.max(np.abs(q_closed(kz, dom) - k_transform_dual(k, q_closed(z[j], dom), dom))))
        invariants.append(abs(kernel.kernel_h(kz, np.conj(kw)) - kernel.kernel_h(z[j], np.conj(w[j]))))
        invariants.append(abs(inner_product(kz, kw, dom) - inner_product(z[j], w[j], dom)))
    invariant_error = float(max(invariants))
    return CheckOutcome(
        float(max(errors)),
        z.shape[0],
        notes=f"h and <,> invariance error {invariant_error:.2e}",
        secondary_ok=invariant_error < 1e-10,
    )


@register_check('inner-product-trace', 'eq. (normal-V), "\\frac 1p \\operatorname{Tr} D(z, \\bar w)"', MODULE,
                default_tolerance=1e-12, default_samples=100)
def check_inner_product_trace(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z, w = ctx.points(), ctx.points()
    error = np.abs(inner_product(z, w, dom) - inner_product_via_trace(z, w, dom))
    return CheckOutcome(float(np.max(error)), z.shape[0])


@register_check('bergman-closed-form', '§3, "B(z, \\bar w)=I-D(z, \\bar w)+Q(z)Q(\\bar w)"', MODULE,
                default_tolerance=1e-12, default_samples=100)
def check_bergman_closed_form(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    kernel = dom.kernel
    z, w = ctx.points(), ctx.points()
    eta = np.conj(w)
    errors = [
        np.max(_op_norm(kernel.bergman_matrix(z, eta) - kernel.bergman_generic(z, eta))),
        np.max(np.abs(kernel.quasi_inverse(z, eta) - kernel.quasi_inverse_generic(z, eta))),
    ]
    notes = ''
    if dom.is_ball and dom.n <= MAX_MATRIX_SIDE:
        # Ball(n) and MatrixI(1, n) carry the same triple
        row = DomainDescriptor.matrix(1, dom.n).kernel
        x = ctx.points()
        errors.append(np.max(np.abs(kernel.triple(x, eta, z) - row.triple(x, eta, z))))
        notes = f"compared with matrix1x{dom.n}"
    return CheckOutcome(float(max(errors)), z.shape[0], notes=notes)
