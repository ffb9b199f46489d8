"""
Suite Runner
Resolves per-check settings, runs checks and assembles reports
"""

import math
from datetime import datetime, timezone
from typing import Dict, Iterable, List, Optional, Tuple

from src.reporting.report import FAIL, INCONCLUSIVE, PASS, CheckRecord, Report
from src.utils.errors import GuardViolation, InconclusiveProbe, NonConvergent
from src.utils.logger import SuiteLogger, get_logger
from src.verification.config import CheckSpec, RunConfig, SuiteSpec, config_hash
from src.verification.registry import CheckContext, CheckDefinition, get_check

logger = get_logger(__name__)

UNDECIDED = (GuardViolation, NonConvergent, InconclusiveProbe)


def resolve_check(definition: CheckDefinition, check: CheckSpec, suite: SuiteSpec, run: RunConfig,
                  base_seed: int) -> Tuple[CheckContext, float]:
    """
    Build the context of one check

    Explicit run settings win over check settings, which win over suite
    settings, which win over registry defaults.

    Returns:
        (context, tolerance)
    """
    domain = run.domain if run.overrides('domain') else suite.domain
    if run.overrides('alpha'):
        alpha = run.alpha
    else:
        alpha = check.alpha if check.alpha is not None else suite.alpha
    if run.overrides('signature'):
        signature = run.signature
    else:
        signature = check.signature or suite.signature
    if run.overrides('tol'):
        tolerance = run.tol
    else:
        tolerance = check.tolerance if check.tolerance is not None else definition.default_tolerance
    if run.overrides('samples'):
        samples = run.samples
    else:
        samples = check.samples if check.samples is not None else definition.default_samples
    if run.overrides('seed'):
        seed = run.seed
    else:
        seed = check.seed if check.seed is not None else base_seed

    ctx = CheckContext(
        domain=domain,
        tolerance=tolerance,
        samples=samples,
        seed=seed,
        params=dict(check.params),
        quad=suite.quad,
        alpha=alpha,
        signature=signature,
    )
    return ctx, tolerance


def run_check(definition: CheckDefinition, ctx: CheckContext) -> CheckRecord:
    """
    Run one check and classify it

    pass: finite max_error strictly below the tolerance and secondary
    conditions hold. Guard, convergence and probe failures are inconclusive;
    any other exception is a fail with the message in notes.
    """
    def record(status, max_error, points, notes):
        return CheckRecord(definition.id, definition.paper_ref, status, max_error, ctx.tolerance, points, notes)

    if not definition.supports(ctx.domain):
        return record(INCONCLUSIVE, None, 0, f"not applicable to {ctx.domain.label}")

    try:
        outcome = definition.fn(ctx)
    except UNDECIDED as e:
        logger.warning(f"{definition.id} inconclusive: {e}")
        return record(INCONCLUSIVE, None, 0, f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.error(f"{definition.id} raised: {e}")
        return record(FAIL, None, 0, f"{type(e).__name__}: {e}")

    max_error = float(outcome.max_error)
    if outcome.inconclusive:
        return record(INCONCLUSIVE, max_error, outcome.points, outcome.notes)

    passed = math.isfinite(max_error) and max_error < ctx.tolerance and outcome.secondary_ok
    notes = outcome.notes
    if math.isfinite(max_error) and max_error < ctx.tolerance and not outcome.secondary_ok:
        notes = f"secondary condition failed; {notes}" if notes else 'secondary condition failed'
    if not passed:
        logger.warning(f"{definition.id} failed: max_error {max_error:.3e}, tolerance {ctx.tolerance:.1e}")
    return record(PASS if passed else FAIL, max_error, outcome.points, notes)


def run_suite(spec: SuiteSpec, run: Optional[RunConfig] = None, seed: Optional[int] = None,
              timestamp: Optional[str] = None) -> Report:
    """
    Execute every check of a suite

    Args:
        spec: validated suite
        run: run-level settings; explicit ones override the suite
        seed: base seed when neither the run nor the check sets one
        timestamp: recorded in env (defaults to now, UTC)

    Returns:
        Report with one record per check, in suite order
    """
    run = run or RunConfig()
    base_seed = run.seed if seed is None or run.overrides('seed') else seed

    records: List[CheckRecord] = []
    resolved: List[Dict] = []
    with SuiteLogger(spec.id, base_seed) as suite_logger:
        for check in spec.checks:
            definition = get_check(check.id)
            ctx, tolerance = resolve_check(definition, check, spec, run, base_seed)
            suite_logger.info(f"Running {check.id} on {ctx.domain.label} "
                              f"(samples={ctx.samples}, tol={tolerance:.1e}, seed={ctx.seed})")
            result = run_check(definition, ctx)
            suite_logger.info(f"{check.id}: {result.status}")
            records.append(result)
            resolved.append({
                'id': check.id,
                'domain': ctx.domain.to_config(),
                'tolerance': tolerance,
                'samples': ctx.samples,
                'seed': ctx.seed,
                'alpha': ctx.alpha,
                'signature': ctx.signature.to_config() if ctx.signature else None,
                'params': ctx.params,
            })

    env = {
        'seed': base_seed,
        'config_hash': config_hash({'suite': spec.id, 'quad': spec.quad.to_dict(), 'checks': resolved}),
        'timestamp': timestamp or datetime.now(timezone.utc).isoformat(),
    }
    return Report(suite=spec.id, checks=records, env=env)


def run_suites(specs: Iterable[SuiteSpec], run: Optional[RunConfig] = None) -> List[Report]:
    return [run_suite(spec, run) for spec in specs]


def exit_code(reports: Iterable[Report]) -> int:
    """0 when no check failed, 1 otherwise"""
    return 0 if all(report.passed for report in reports) else 1
