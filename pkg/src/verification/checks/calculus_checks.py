"""
Polarized Calculus Checks
The invariant Cauchy-Riemann operator, q(z) certificates, π_ν and the ball adjoint
"""

import math

import numpy as np

from src.calculus.adjoint import adjoint_power_constant, constant_readings
from src.calculus.cr_operator import (
    cr_apply,
    cr_power,
    differentiation_of_q_residuals,
    disk_cr_formula,
    pi_nu_pplus,
    q_via_potential,
)
from src.calculus.mobius import MobiusElement, mobius_intertwining_residual
from src.calculus.polarized import (
    combine,
    evaluate_with_error,
    h_polarized,
    holomorphic_fn,
    q_polarized,
    tensor_power,
)
from src.calculus.tensor import permutation_identity, symmetrize
from src.domains.jordan import q_closed
from src.polynomials.determinants import compose_with_q_polarized, highest_weight_tensor
from src.polynomials.nearly_holo import nearly_holo_builder, nearly_holo_kernel_check
from src.polynomials.signature import Signature, enumerate_signatures
from src.verification.registry import (
    BALL_ONLY,
    DISK_ONLY,
    CheckContext,
    CheckOutcome,
    register_check,
)

MODULE = 'polarized-calculus'

# point variance of D̄^{|m|}Δ̄_m(q), which is constant
CONSTANCY_TOL = 1e-6
FIRST_ORDER_TOL = 1e-8


def _orders(ctx: CheckContext, default=(1, 2, 3)):
    return [m for m in ctx.params.get('orders', default) if m <= ctx.quad.max_order]


@register_check('cr-q-identity', 'eq. (dn), "\\bar D q(z)= \\text{Id}"', MODULE,
                default_tolerance=1e-8, default_samples=50)
def check_cr_q_identity(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points()
    value = evaluate_with_error(cr_apply(q_polarized(dom, ctx.quad.guard_floor), ctx.quad), z, ctx.quad.tolerance)
    error = np.max(np.abs(value.value - np.eye(dom.dim)))
    return CheckOutcome(float(error), z.shape[0], notes=f"two-radius error {value.error:.2e}")


@register_check('cr-power-tensor-q', 'Lemma 2.2, "\\bar D^m (\\otimes^m q(z))= m!\\text{Id}"', MODULE,
                default_tolerance=1e-5, default_samples=5)
def check_cr_power_tensor_q(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.6)
    q_fn = q_polarized(dom, ctx.quad.guard_floor)
    errors = {}
    for m in _orders(ctx):
        G = cr_power(tensor_power(q_fn, m), m, ctx.quad)
        value = evaluate_with_error(G, z, ctx.quad.tolerance).value
        errors[m] = float(np.max(np.abs(value - permutation_identity(dom.dim, m))))
    notes = ', '.join(f"m={m}: {e:.2e}" for m, e in errors.items())
    return CheckOutcome(max(errors.values()), z.shape[0], notes=notes)


@register_check('cr-holomorphic-kernel', 'Lemma 2.4, "Ker \\bar D"', MODULE,
                default_tolerance=1e-10, default_samples=50)
def check_cr_holomorphic_kernel(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points()
    F = holomorphic_fn(dom, lambda zz: np.exp(np.sum(zz, axis=-1)) * (1.0 + zz[:, 0] ** 3), name='exp')
    value = evaluate_with_error(cr_apply(F, ctx.quad), z, ctx.quad.tolerance).value
    return CheckOutcome(float(np.max(np.abs(value))), z.shape[0])


@register_check('cr-symmetric-slots', 'Lemma 2.1(2), "maps $C^{\\infty}(\\Omega, W)$"', MODULE,
                default_tolerance=1e-6, default_samples=10)
def check_cr_symmetric_slots(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.6)
    inverse_h = combine(lambda h: 1.0 / h, h_polarized(dom), order=0, name='1/h')
    value = evaluate_with_error(cr_power(inverse_h, 2, ctx.quad), z, ctx.quad.tolerance).value
    error = np.max(np.abs(value - symmetrize(value, (1, 2))))
    return CheckOutcome(float(error), z.shape[0])


@register_check('disk-operator-formula',
                '§2 Example, "\\bar D^m= (1-|z|^2)^{m+1} (\\frac{\\partial}{\\partial \\bar z})^m (1-|z|^2)^{m-1}"',
                MODULE, domains=DISK_ONLY, default_tolerance=1e-6, default_samples=20)
def check_disk_operator_formula(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.8)
    q_fn = q_polarized(dom, ctx.quad.guard_floor)
    errors, factorial_errors = [], []
    for m in _orders(ctx):
        F = combine(lambda q, m=m: q[:, 0] ** m, q_fn, order=0, name=f"q^{m}")
        closed = disk_cr_formula(F, m, z, ctx.quad).reshape(z.shape[0])
        iterated = evaluate_with_error(cr_power(F, m, ctx.quad), z, ctx.quad.tolerance).value.reshape(z.shape[0])
        errors.append(np.max(np.abs(closed - iterated)))
        factorial_errors.append(np.max(np.abs(iterated - math.factorial(m))))
    return CheckOutcome(
        float(max(errors)),
        z.shape[0],
        notes=f"max |D^m q^m - m!| = {max(factorial_errors):.2e}",
        secondary_ok=max(factorial_errors) < max(ctx.tolerance, 1e-6),
    )


@register_check('q-via-potential',
                'Prop 3.1, eq. (N-bsd), "q(z)=\\frac 1p \\partial \\log \\operatorname{det} B(z, \\bar z)^{-1}"',
                MODULE, default_tolerance=1e-8, default_samples=50)
def check_q_via_potential(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points()
    error = np.abs(q_via_potential(z, dom, ctx.quad) - q_closed(z, dom))
    return CheckOutcome(float(np.max(error)), z.shape[0])


@register_check('differentiation-of-q',
                'Lemma 4.3, eqs. (d-v-q)/(d-v-q-1)/(van-q), "\\partial_v q(z) =Q(q(z))v"',
                MODULE, default_tolerance=1e-8, default_samples=50)
def check_differentiation_of_q(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.8)
    worst = {}
    for _ in range(int(ctx.params.get('directions', 5))):
        v = ctx.points(1, max_norm=0.9)[0]
        eta = np.conj(ctx.points(1, max_norm=0.9)[0])
        residuals = differentiation_of_q_residuals(z, v, eta, dom, ctx.quad)
        for key, value in residuals.items():
            worst[key] = max(worst.get(key, 0.0), value)
    notes = ', '.join(f"{k}: {v:.2e}" for k, v in worst.items())
    return CheckOutcome(max(worst.values()), z.shape[0], notes=notes)


@register_check('pi-nu-annihilation',
                '§4, "\\pi_\\nu(v)\\bar\\Delta_{\\underline{\\bold m}}(q(z))=0"', MODULE,
                default_tolerance=1e-7, default_samples=10)
def check_pi_nu_annihilation(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.7)
    v = ctx.points(1)[0]
    errors = {}
    for sig in enumerate_signatures(dom.rank, int(ctx.params.get('max_size', 3))):
        F = compose_with_q_polarized(sig, dom, ctx.quad.guard_floor)
        value = evaluate_with_error(pi_nu_pplus(F, v, ctx.quad), z, ctx.quad.tolerance).value
        errors[str(sig)] = float(np.max(np.abs(value)))
    worst = max(errors, key=errors.get)
    return CheckOutcome(errors[worst], z.shape[0], notes=f"{len(errors)} signatures, worst {worst}")


@register_check('hwv-intertwiner',
                'Theorem 4.6, "\\bar D^m (\\bar \\Delta_{\\underline{\\bold m}}(q(z)))=m! \\bar\\Delta_{\\underline{\\bold m}}"',
                MODULE, default_tolerance=1e-5, default_samples=10)
def check_hwv_intertwiner(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    m = sig.size
    z = ctx.points(max_norm=0.6)
    G = cr_power(compose_with_q_polarized(sig, dom, ctx.quad.guard_floor), m, ctx.quad)
    value = evaluate_with_error(G, z, ctx.quad.tolerance).value
    expected = math.factorial(m) * highest_weight_tensor(sig, dom).data
    value_error = float(np.max(np.abs(value - expected)))
    variance = float(np.max(np.var(value, axis=0)))
    return CheckOutcome(
        value_error,
        z.shape[0],
        notes=f"signature {sig}, value error {value_error:.2e}, variance {variance:.2e}",
        secondary_ok=variance <= CONSTANCY_TOL,
    )


@register_check('nearly-holo-kernel', 'Lemma 2.4, "Ker \\bar D^{m+1} =\\mathcal N_m"; Prop 4.1', MODULE,
                default_tolerance=1e-5, default_samples=5)
def check_nearly_holo_kernel(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    m = sig.size
    z = ctx.points(max_norm=0.6)
    phi = highest_weight_tensor(sig, dom).data

    coefficients = [lambda zz: np.zeros(zz.shape[0], dtype=complex)] * m
    coefficients.append(lambda zz: np.broadcast_to(phi, (zz.shape[0],) + phi.shape))
    highest = nearly_holo_kernel_check(nearly_holo_builder(coefficients, dom), z, ctx.quad)

    # 1 + [z, q], a degree-one element with non-constant coefficient
    linear = nearly_holo_builder([lambda zz: np.ones(zz.shape[0], dtype=complex), lambda zz: zz], dom)
    mixed = nearly_holo_kernel_check(linear, z, ctx.quad)

    error = max(highest['kernel_residual'], mixed['kernel_residual'])
    return CheckOutcome(
        error,
        z.shape[0],
        notes=f"signature {sig}; |D f| for 1 + <z, q> is {mixed['top_norm']:.3f}",
        secondary_ok=mixed['top_norm'] > 0.0,
    )


@register_check('mobius-intertwining', 'Lemma 2.1, "\\bar D(g_W f)=((dg)^{-1}\\otimes g_W) Df"', MODULE,
                domains=BALL_ONLY, default_tolerance=1e-6, default_samples=20)
def check_mobius_intertwining(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points(max_norm=0.5)
    a = ctx.points(1, max_norm=0.4)[0]
    phase = np.exp(1j * ctx.rng.uniform(0, 2 * np.pi))
    g = MobiusElement.transvection(a).compose(MobiusElement.rotation(phase * np.eye(dom.n)))
    nu = ctx.alpha + dom.genus
    F = compose_with_q_polarized(Signature((2,)), dom, ctx.quad.guard_floor)
    F = combine(lambda f, h: f * h, F, h_polarized(dom), order=0, name='Δ(q)h')
    error = mobius_intertwining_residual(g, F, nu, z, ctx.quad)
    return CheckOutcome(error, z.shape[0], notes=f"nu = {nu}")


@register_check('adjoint-ball-constant',
                '§5, "D^m e_1^m =C(1-|z|^2)^{-m}\\bar z_1^m", "(2(m-1)-\\alpha)"', MODULE,
                domains=BALL_ONLY, default_tolerance=1e-6, default_samples=10)
def check_adjoint_ball_constant(ctx: CheckContext) -> CheckOutcome:
    """
    The ratio C of D^m(⊗^m e_1) to (1-|z|^2)^{-m} z̄_1^m is the same at every
    point. The spread is relative to max(|C|, 1) since C vanishes for some
    (m, α). For m = 1, |C + α| must stay below FIRST_ORDER_TOL.
    """
    dom = ctx.domain
    alpha = ctx.alpha
    z = ctx.points(max_norm=0.6)
    z[:, 0] = np.where(np.abs(z[:, 0]) < 0.1, 0.1, z[:, 0])
    z = z / np.maximum(1.0, dom.operator_norm(z) / 0.6)[:, None]

    errors, notes = [], []
    first_order_ok = True
    for m in _orders(ctx):
        constants = adjoint_power_constant(dom, m, alpha, z, ctx.quad)
        mean = complex(np.mean(constants))
        errors.append(float(np.max(np.abs(constants - mean)) / max(abs(mean), 1.0)))
        if m == 1:
            first_order_ok = abs(mean + alpha) < FIRST_ORDER_TOL
        readings = constant_readings(m, alpha)
        notes.append(f"m={m}: C={mean.real:.8g} (uniform {readings['uniform']:g}, frozen {readings['frozen']:g})")
    return CheckOutcome(max(errors), z.shape[0], notes='; '.join(notes), secondary_ok=first_order_ok)
