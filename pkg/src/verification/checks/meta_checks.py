"""
Harness Checks
Properties of the suite runner itself
"""

from src.verification.registry import CheckContext, CheckOutcome, register_check

MODULE = 'verify-cli'

DEFAULT_PROBE_CHECKS = ('det-b-genus', 'quasi-inverse-defining', 'mc-seed-halves')


@register_check('suite-determinism', 'invented: identical (config, seed) gives identical outcomes', MODULE,
                default_tolerance=0.5, default_samples=20)
def check_suite_determinism(ctx: CheckContext) -> CheckOutcome:
    """Run a small suite twice and count records that differ (timestamps excluded)"""
    # deferred: the runner imports this package through the registry
    from src.verification.config import CheckSpec, SuiteSpec
    from src.verification.suite import run_suite

    check_ids = ctx.params.get('checks', DEFAULT_PROBE_CHECKS)
    spec = SuiteSpec(
        id='determinism-probe',
        description='rerun probe',
        domain=ctx.domain,
        quad=ctx.quad,
        alpha=ctx.alpha,
        checks=[CheckSpec(id=c, samples=ctx.samples if c != 'mc-seed-halves' else 1000 * ctx.samples)
                for c in check_ids],
    )
    first = [record.to_dict() for record in run_suite(spec, seed=ctx.seed).checks]
    second = [record.to_dict() for record in run_suite(spec, seed=ctx.seed).checks]
    differing = sum(a != b for a, b in zip(first, second)) + abs(len(first) - len(second))
    return CheckOutcome(float(differing), len(first), notes=f"{len(first)} records compared")
