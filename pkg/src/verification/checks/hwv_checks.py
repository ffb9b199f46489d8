"""
Highest-Weight Polynomial Checks
Symmetric tensors, determinant polynomials Δ_m and their composition with q(z)
"""

import math

import numpy as np

from src.calculus.tensor import apply_to_slots, outer_power, symmetrize
from src.domains.jordan import q_closed
from src.domains.k_action import k_transform, random_k
from src.polynomials.determinants import (
    compose_with_q,
    del_n_2_residual,
    del_n_boundary_probe,
    delta_fundamental,
    delta_signature,
    highest_weight_tensor,
    loos_h_identity_check,
)
from src.polynomials.expansion import fk_expansion_check
from src.polynomials.signature import Signature, enumerate_signatures
from src.polynomials.sym_tensor import SymTensor
from src.quadrature.integrals import weight_h, weighted_norm
from src.quadrature.probes import FINITE, ProbeConfig, integrability_probe
from src.verification.registry import CheckContext, CheckOutcome, register_check

MODULE = 'hwv-polys'


def _pair_with_q(phi: np.ndarray, z: np.ndarray, dom) -> np.ndarray:
    """f_φ(z) = [φ, ⊗^m q(z)]"""
    m = phi.ndim
    q = q_closed(z, dom)
    return np.sum((outer_power(q, m) * phi).reshape(z.shape[0], -1), axis=-1)


@register_check('pol-sym-identification',
                'eq. (pol-sym-iden), "[\\phi, v^\\prime\\otimes v^\\prime\\otimes \\cdots v^\\prime]=\\phi(v^\\prime)"',
                MODULE, default_tolerance=1e-10, default_samples=20)
def check_pol_sym_identification(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    eta = ctx.points()
    errors, count = [], 0
    for sig in enumerate_signatures(dom.rank, int(ctx.params.get('max_size', 3))):
        phi = highest_weight_tensor(sig, dom)
        scale = max(1.0, float(np.max(np.abs(delta_signature(sig, eta, dom)))))
        errors.append(np.max(np.abs(phi.polynomial(eta) - delta_signature(sig, eta, dom))) / scale)
        errors.append(np.max(np.abs(phi.data - symmetrize(phi.data, range(phi.order)))))
        count += 1

    # a random symmetric tensor survives polynomial -> tensor -> polynomial
    raw = ctx.rng.standard_normal((dom.dim,) * 2) + 1j * ctx.rng.standard_normal((dom.dim,) * 2)
    phi = SymTensor.symmetric_part(raw)
    recovered = SymTensor.from_polynomial(phi.polynomial, 2, dom.dim)
    errors.append(np.max(np.abs(recovered.data - phi.data)))
    return CheckOutcome(float(max(errors)), eta.shape[0], notes=f"{count} signatures")


@register_check('k-covariance-composition', '§4, "f_{k\\phi}(z)=f_\\phi(k^{-1}z)"', MODULE,
                default_tolerance=1e-9, default_samples=20)
def check_k_covariance_composition(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    phi = highest_weight_tensor(sig, dom).data
    z = ctx.points()
    errors = []
    for j in range(z.shape[0]):
        k = random_k(dom, ctx.rng)
        point = z[j:j + 1]
        k_phi = apply_to_slots(k.matrix[None], phi[None], range(1, phi.ndim + 1))[0]
        lhs = _pair_with_q(k_phi, point, dom)
        rhs = _pair_with_q(phi, k_transform(k.inverse(), point, dom), dom)
        errors.append(float(np.max(np.abs(lhs - rhs))))
    return CheckOutcome(max(errors), z.shape[0], notes=f"signature {sig}")


@register_check('loos-h-h', 'eq. (loos-h-h), "h(v, \\bar z^{z}) =\\frac{h(v+z, \\bar z)}{h(z, \\bar z)}"', MODULE,
                default_tolerance=1e-12, default_samples=100)
def check_loos_h_h(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    v, z = ctx.points(), ctx.points()
    return CheckOutcome(float(np.max(loos_h_identity_check(v, z, dom))), z.shape[0])


@register_check('del-n-2', 'eq. (del-n-2), "\\bar\\Delta(q(z))= \\frac{\\bar \\Delta(z)}{h(z, \\bar z)}"', MODULE,
                default_tolerance=1e-12, default_samples=100)
def check_del_n_2(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    z = ctx.points()
    expected = np.abs(delta_fundamental(dom.rank, z, dom) / dom.kernel.kernel_h(z, np.conj(z)))
    relative = del_n_2_residual(z, dom) / np.maximum(expected, 1e-300)
    return CheckOutcome(float(np.max(relative)), z.shape[0])


@register_check('fk-expansion', 'eq. (fk-h), "h(z, \\bar w)=\\sum_{s=0}^r (-1)^s"', MODULE,
                default_tolerance=1e-12, default_samples=50)
def check_fk_expansion(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    v, w = ctx.points(), ctx.points()
    fit = fk_expansion_check(dom, v, w)
    constants_error = max(abs(c - 1.0) for c in fit['constants'])
    full_rank = fit['design_rank'] == dom.rank + 1
    return CheckOutcome(
        fit['residual'],
        v.shape[0],
        notes=f"|c_s| = {np.round(fit['constants'], 12).tolist()}, signs {fit['signs']}",
        secondary_ok=bool(fit['sign_pattern_ok'] and constants_error < 1e-9 and full_rank),
    )


@register_check('del-n-boundary', 'Corollary (del-n), "\\frac{P(z, \\bar z)}{h(z, \\bar z)^{m_1}}"', MODULE,
                default_tolerance=0.05, default_samples=64)
def check_del_n_boundary(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    signatures = [ctx.signature] if ctx.signature else list(enumerate_signatures(dom.rank, 2))
    changes, finite = {}, True
    for sig in signatures:
        sig = sig.padded(dom.rank)
        probe = del_n_boundary_probe(sig, dom, ctx.rng, directions=ctx.samples)
        changes[str(sig)] = probe['relative_change']
        finite = finite and bool(np.all(np.isfinite(probe['sup'])))
    worst = max(changes, key=changes.get)
    return CheckOutcome(
        changes[worst],
        ctx.samples,
        notes=f"worst relative change at {worst}",
        secondary_ok=finite,
    )


@register_check('prop-4-1-membership', 'Prop 4.1, "is in $L^2(\\Omega, \\mu_{\\alpha})$"', MODULE,
                default_tolerance=1.0, default_samples=100_000)
def check_prop_4_1_membership(ctx: CheckContext) -> CheckOutcome:
    """
    Two independent Monte-Carlo norms agree (error is the z-score over 3)
    and the boundary probe calls the integral finite
    """
    dom = ctx.domain
    alpha = ctx.alpha
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    if not sig.admissible(alpha):
        return CheckOutcome(math.nan, 0, notes=f"{sig} is not admissible for alpha={alpha}", inconclusive=True)

    def f(z):
        return compose_with_q(sig, z, dom)

    first = weighted_norm(f, alpha, dom, ctx.sampler())
    second = weighted_norm(f, alpha, dom, ctx.sampler(seed=ctx.seed + 1))
    z_score = abs(first.value - second.value) / max(math.hypot(first.stderr, second.stderr), 1e-300)

    def integrand(z):
        return np.abs(f(z)) ** 2 * weight_h(dom, z) ** alpha

    probe = integrability_probe(dom, alpha, sig.m1, ProbeConfig.for_domain(dom, seed=ctx.seed),
                                integrand=integrand)
    return CheckOutcome(
        z_score / 3.0,
        first.samples_used,
        notes=f"norm {first.value:.6g} ± {first.stderr:.2g}, probe {probe.verdict}",
        secondary_ok=probe.verdict == FINITE,
    )
