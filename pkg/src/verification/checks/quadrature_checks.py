"""
Quadrature Checks
Sampler diagnostics, Monte-Carlo against closed forms and integrability verdicts
"""

import math

import numpy as np

from src.domains.jordan import q_closed
from src.polynomials.determinants import compose_with_q, highest_weight_tensor
from src.polynomials.signature import Signature
from src.quadrature.integrals import (
    bergman_tensor_norm,
    disk_q_power_norm,
    weight_h,
    weighted_norm,
)
from src.quadrature.probes import DIVERGENT, FINITE, ProbeConfig, integrability_probe, threshold_table
from src.quadrature.sampler import RADIAL_STRATIFIED, box_volume, domain_volume, sample_domain
from src.verification.registry import DISK_ONLY, CheckContext, CheckOutcome, register_check

MODULE = 'quadrature'


def _z_score(a, b) -> float:
    return abs(a.value - b.value) / max(math.hypot(a.stderr, b.stderr), 1e-300)


def _q_power(m: int, dom):
    def f(z):
        return q_closed(z, dom)[:, 0] ** m if m else np.ones(z.shape[0], dtype=complex)
    return f


def _signature_fn(ctx: CheckContext):
    dom = ctx.domain
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    return sig, (lambda z: compose_with_q(sig, z, dom))


@register_check('acceptance-rate', '§1, "Lebesgue measure $dm(z)$"', MODULE,
                default_tolerance=0.01, default_samples=200_000)
def check_acceptance_rate(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    sample = sample_domain(dom, ctx.sampler())
    expected = domain_volume(dom) / box_volume(dom)
    inside = bool(np.all(dom.contains(sample.points)))
    return CheckOutcome(
        abs(sample.acceptance_rate - expected),
        sample.proposals,
        notes=f"rate {sample.acceptance_rate:.5f}, volume ratio {expected:.5f}",
        secondary_ok=inside,
    )


@register_check('mc-seed-halves', '§4, "d\\mu_{\\alpha}(z)=h(z, \\bar z)^{\\alpha}dm(z)"', MODULE,
                default_tolerance=1.0, default_samples=100_000)
def check_mc_seed_halves(ctx: CheckContext) -> CheckOutcome:
    """Disjoint seeds agree within 3 combined standard errors (error is the z-score over 3)"""
    sig, f = _signature_fn(ctx)
    first = weighted_norm(f, ctx.alpha, ctx.domain, ctx.sampler())
    second = weighted_norm(f, ctx.alpha, ctx.domain, ctx.sampler(seed=ctx.seed + 1))
    return CheckOutcome(
        _z_score(first, second) / 3.0,
        first.samples_used + second.samples_used,
        notes=f"signature {sig}: {first.value:.6g} vs {second.value:.6g}",
    )


@register_check('radial-vs-mc', '§4, "d\\mu_{\\alpha}(z)=h(z, \\bar z)^{\\alpha}dm(z)"', MODULE,
                domains=DISK_ONLY, default_tolerance=1.0, default_samples=200_000)
def check_radial_vs_mc(ctx: CheckContext) -> CheckOutcome:
    dom = ctx.domain
    errors, closed_errors = [], []
    for m in ctx.params.get('powers', [0, 1, 2]):
        if ctx.alpha - 2 * m + 1 <= 0:
            continue
        f = _q_power(m, dom)
        mc = weighted_norm(f, ctx.alpha, dom, ctx.sampler())
        radial = weighted_norm(f, ctx.alpha, dom, ctx.sampler(method=RADIAL_STRATIFIED))
        errors.append(abs(mc.value - radial.value) / (3.0 * max(mc.stderr, 1e-300)))
        closed = disk_q_power_norm(ctx.alpha, m)
        if math.isfinite(closed):
            closed_errors.append(abs(radial.value - closed) / closed)
    return CheckOutcome(
        max(errors),
        ctx.samples,
        notes=f"radial vs beta max relative error {max(closed_errors, default=0.0):.2e}",
        secondary_ok=max(closed_errors, default=0.0) < 1e-3,
    )


@register_check('stderr-scaling', 'invented: estimator diagnostics', MODULE,
                default_tolerance=0.15, default_samples=50_000)
def check_stderr_scaling(ctx: CheckContext) -> CheckOutcome:
    """Quadrupling N halves the standard error"""
    _, f = _signature_fn(ctx)
    small = weighted_norm(f, ctx.alpha, ctx.domain, ctx.sampler())
    large = weighted_norm(f, ctx.alpha, ctx.domain, ctx.sampler(samples=4 * ctx.samples, seed=ctx.seed + 1))
    ratio = small.stderr / max(large.stderr, 1e-300)
    return CheckOutcome(abs(ratio / 2.0 - 1.0), 5 * ctx.samples, notes=f"stderr ratio {ratio:.4f}")


@register_check('disk-q-norms', '§4, "(1-|z|^2)^{\\alpha}"; beta integral', MODULE,
                domains=DISK_ONLY, default_tolerance=1e-3, default_samples=200_000)
def check_disk_q_norms(ctx: CheckContext) -> CheckOutcome:
    """
    ‖q^m‖² = π B(m+1, α-2m+1) by radial quadrature (relative error) and
    Monte Carlo (3 stderr); (α, m) = (4, 3) lies past the threshold and
    must probe as divergent
    """
    dom = ctx.domain
    cases = [tuple(c) for c in ctx.params.get('cases', [(4, 1), (6, 2)])]
    divergent_case = tuple(ctx.params.get('divergent', (4, 3)))

    errors, mc_ok, notes = [], True, []
    for alpha, m in cases:
        closed = disk_q_power_norm(alpha, m)
        radial = weighted_norm(_q_power(m, dom), alpha, dom, ctx.sampler(method=RADIAL_STRATIFIED))
        mc = weighted_norm(_q_power(m, dom), alpha, dom, ctx.sampler())
        errors.append(abs(radial.value - closed) / closed)
        mc_ok = mc_ok and mc.agrees_with(closed)
        notes.append(f"({alpha},{m}): beta {closed:.6f}, radial {radial.value:.6f}, mc {mc.value:.4f}±{mc.stderr:.1g}")

    alpha, m = divergent_case
    probe = integrability_probe(dom, alpha, m, ProbeConfig.for_domain(dom, seed=ctx.seed))
    notes.append(f"({alpha},{m}) probe {probe.verdict}")
    return CheckOutcome(
        max(errors),
        ctx.samples,
        notes='; '.join(notes),
        secondary_ok=mc_ok and probe.verdict == DIVERGENT and math.isinf(disk_q_power_norm(alpha, m)),
    )


@register_check('norm-beta-ordering', '§4, "(1-|z|^2)^{\\alpha}"; beta integral', MODULE,
                domains=DISK_ONLY, default_tolerance=0.5, default_samples=200_000)
def check_norm_beta_ordering(ctx: CheckContext) -> CheckOutcome:
    """Monte-Carlo norms of q^m, m admissible, order like their beta closed forms"""
    dom = ctx.domain
    alpha = ctx.alpha
    powers = [m for m in range(0, int(ctx.params.get('max_power', 3)) + 1) if alpha - 2 * m + 1 > 0]
    closed = [disk_q_power_norm(alpha, m) for m in powers]
    estimates = [weighted_norm(_q_power(m, dom), alpha, dom, ctx.sampler()).value for m in powers]
    mismatch = float(np.sum(np.argsort(closed) != np.argsort(estimates)))
    return CheckOutcome(
        mismatch,
        ctx.samples * len(powers),
        notes=f"powers {powers}, closed order {np.argsort(closed).tolist()}",
    )


@register_check('threshold-sweep', 'eq. (con-rds), "\\frac{\\alpha+1}2>m_1\\ge m_2 \\ge \\cdots"', MODULE,
                default_tolerance=0.2, default_samples=64)
def check_threshold_sweep(ctx: CheckContext) -> CheckOutcome:
    """
    Verdicts follow admissibility; the error is the mismatch of the fitted and
    predicted exponent on the divergent rows, relative once |predicted| > 1
    """
    dom = ctx.domain
    alpha = float(ctx.params.get('alpha', ctx.alpha))
    m1_values = ctx.params.get('m1_values', [1, 2])
    cfg = ProbeConfig.for_domain(dom, seed=ctx.seed, directions=ctx.samples)
    table = threshold_table(dom, alpha, m1_values, cfg)

    expected = np.where(table['admissible'], FINITE, DIVERGENT)
    verdicts_ok = bool(np.all(table['verdict'].to_numpy() == expected))
    divergent = table[~table['admissible']]
    if divergent.empty:
        error = 0.0
    else:
        error = float(np.max(np.abs(divergent['fitted_exponent'] - divergent['predicted_exponent'])
                             / np.maximum(np.abs(divergent['predicted_exponent']), 1.0)))
    notes = ', '.join(f"m1={row.m1}: {row.verdict}" for row in table.itertuples())
    return CheckOutcome(error, len(m1_values), notes=notes, secondary_ok=verdicts_ok)


@register_check('integrability-verdict', 'eq. (con-rds), "\\frac{\\alpha+1}2>m_1"; Prop 4.1 proof, '
                '"h(z, \\bar z)^{\\alpha-2m_1}"', MODULE, default_tolerance=0.5, default_samples=64)
def check_integrability_verdict(ctx: CheckContext) -> CheckOutcome:
    """
    The probe verdict for |Δ̄_m(q)|² h^α matches params['expect'] (default:
    finite iff admissible). Error is 0 on a match, 1 otherwise.
    """
    dom = ctx.domain
    alpha = ctx.alpha
    sig, f = _signature_fn(ctx)
    expect = ctx.params.get('expect', FINITE if sig.admissible(alpha) else DIVERGENT)

    def integrand(z):
        return np.abs(f(z)) ** 2 * weight_h(dom, z) ** alpha

    cfg = ProbeConfig.for_domain(dom, seed=ctx.seed, directions=ctx.samples)
    result = integrability_probe(dom, alpha, sig.m1, cfg, integrand=integrand)
    verdict = result.require_verdict()
    return CheckOutcome(
        0.0 if verdict == expect else 1.0,
        ctx.samples,
        notes=(f"signature {sig}, alpha={alpha}: {verdict} (expected {expect}), fitted exponent "
               f"{result.fitted_exponent:.3f}, predicted {result.predicted_exponent:.3f}"),
    )


@register_check('hwv-bergman-norm',
                '§4, "\\int_{\\Omega} \\langle (\\otimes^m B(z, \\bar z)^{-1}) f(z), f(z)\\rangle d\\mu_{\\alpha}(z)"',
                MODULE, default_tolerance=1.0, default_samples=100_000)
def check_hwv_bergman_norm(ctx: CheckContext) -> CheckOutcome:
    """
    Bergman tensor norm of the constant m!Δ̄_m: seed halves agree, and on the
    disk the value matches π (m!)² / (α - 2m + 1)
    """
    dom = ctx.domain
    alpha = ctx.alpha
    sig = ctx.signature_or(Signature.full(dom.rank, 1))
    m = sig.size
    if not sig.admissible(alpha):
        return CheckOutcome(math.nan, 0, notes=f"{sig} is not admissible for alpha={alpha}", inconclusive=True)

    phi = math.factorial(m) * highest_weight_tensor(sig, dom).data

    def f(z):
        return np.broadcast_to(phi, (z.shape[0],) + phi.shape)

    first = bergman_tensor_norm(f, m, alpha, dom, ctx.sampler())
    second = bergman_tensor_norm(f, m, alpha, dom, ctx.sampler(seed=ctx.seed + 1))
    error = _z_score(first, second) / 3.0
    notes = f"signature {sig}: {first.value:.6g} ± {first.stderr:.2g}"
    if dom.is_disk:
        closed = math.pi * math.factorial(m) ** 2 / (alpha - 2 * m + 1)
        error = max(error, abs(first.value - closed) / (3.0 * max(first.stderr, 1e-300)))
        notes += f", closed form {closed:.6g}"
    return CheckOutcome(error, first.samples_used + second.samples_used, notes=notes)
