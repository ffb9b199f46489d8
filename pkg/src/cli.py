"""
Verification CLI
Runs verification suites, weighted-norm integrations and threshold tables
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

import numpy as np
from dotenv import load_dotenv

from src.domains.descriptor import DomainDescriptor
from src.polynomials.determinants import compose_with_q
from src.polynomials.signature import Signature
from src.quadrature.integrals import disk_q_power_norm, weighted_norm
from src.quadrature.probes import ProbeConfig, threshold_table
from src.quadrature.sampler import RADIAL_STRATIFIED, SamplerConfig
from src.reporting.report import emit_report
from src.reporting.report_store import ReportStore
from src.reporting.report_validator import ReportValidator
from src.utils.errors import ConfigInvalid, InvalidSignature, UnsupportedDomain
from src.utils.logger import get_logger, set_level
from src.verification import exit_code, load_run_config, load_suite_catalogue, run_suite
from src.verification.config import RunConfig

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2

CONFIG_ERRORS = (ConfigInvalid, InvalidSignature, UnsupportedDomain)

FLAG_KEYS = ('domain', 'n', 'p', 'q', 'alpha', 'signature', 'seed', 'samples', 'tol', 'format', 'out', 'log_level')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--domain', choices=['disk', 'ball', 'matrix'], help='Domain kind (default: disk)')
    common.add_argument('--n', type=int, help='Ball dimension')
    common.add_argument('--p', type=int, help='Matrix rows')
    common.add_argument('--q', type=int, help='Matrix columns')
    common.add_argument('--alpha', type=float, help='Weight exponent (default: 4)')
    common.add_argument('--signature', help='Signature m1,m2,...')
    common.add_argument('--seed', type=int, help='Base seed (default: 42)')
    common.add_argument('--samples', type=int, help='Sample count, overrides every check')
    common.add_argument('--tol', type=float, help='Tolerance, overrides every check')
    common.add_argument('--out', help='Output file (default: stdout)')
    common.add_argument('--format', choices=['json', 'text'], help='Output format (default: json)')
    common.add_argument('--config', help='Flat YAML run configuration')
    common.add_argument('--suites-file', help='Suite catalogue (default: config/suites.yaml)')
    common.add_argument('--log-level', dest='log_level', help='DEBUG, INFO, WARNING or ERROR')

    parser = argparse.ArgumentParser(description='Numerical verification of bounded symmetric domain identities')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', parents=[common], help='Run a suite or all suites')
    verify.add_argument('target', help="Suite id or 'all'")

    sub.add_parser('integrate', parents=[common], help='Weighted norm of the highest-weight vector')

    table = sub.add_parser('table', parents=[common], help='Integrability threshold table')
    table.add_argument('--m1-max', dest='m1_max', type=int, default=3, help='Largest m1 in the table')
    return parser


def _run_config(args) -> RunConfig:
    flags = {key: getattr(args, key, None) for key in FLAG_KEYS}
    return load_run_config(args.config).merged(flags)


def _domain(run: RunConfig) -> DomainDescriptor:
    return run.domain or DomainDescriptor.disk()


def _write(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        ReportStore().write_text(text, out)


def cmd_verify(args, run: RunConfig) -> int:
    catalogue = load_suite_catalogue(args.suites_file)
    if args.target == 'all':
        names = run.suites or list(catalogue)
    else:
        names = [args.target]
    unknown = [name for name in names if name not in catalogue]
    if unknown:
        raise ConfigInvalid(f"Unknown suite(s): {unknown}; available: {sorted(catalogue)}")

    reports = [run_suite(catalogue[name], run) for name in names]
    emit_report(reports, run.format, run.out)
    code = exit_code(reports)

    schema = ReportValidator().validate([report.to_dict() for report in reports])
    if not schema['passed']:
        logger.error(f"Report failed schema validation: {schema['failures']}")
        code = 1
    logger.info(f"Verified {len(reports)} suite(s), exit code {code}")
    return code


def integrate_record(dom: DomainDescriptor, alpha: float, sig: Signature, samples: int, seed: int) -> Dict:
    """Monte-Carlo norm of Δ̄_m(q), with radial quadrature and the beta closed form on the disk"""
    sig = sig.padded(dom.rank)

    def f(z):
        return compose_with_q(sig, z, dom)

    cfg = SamplerConfig(seed=seed, samples=samples)
    record = {
        'domain': dom.label,
        'alpha': alpha,
        'signature': sig.to_config(),
        'admissible': sig.admissible(alpha),
        'monte_carlo': weighted_norm(f, alpha, dom, cfg).to_dict(),
    }
    if dom.is_disk:
        closed = disk_q_power_norm(alpha, sig.m1)
        record['closed_form'] = closed if np.isfinite(closed) else None
        if sig.admissible(alpha):
            record['radial'] = weighted_norm(f, alpha, dom, SamplerConfig(seed=seed, method=RADIAL_STRATIFIED)).to_dict()
    return record


def cmd_integrate(args, run: RunConfig) -> int:
    dom = _domain(run)
    sig = run.signature or Signature.full(dom.rank, 1)
    record = integrate_record(dom, run.alpha, sig, run.samples or 100_000, run.seed)
    if run.format == 'json':
        text = json.dumps(record, indent=2) + '\n'
    else:
        lines = [f"{key}: {value}" for key, value in record.items()]
        text = '\n'.join(lines) + '\n'
    _write(text, run.out)
    return EXIT_OK


def cmd_table(args, run: RunConfig) -> int:
    dom = _domain(run)
    cfg = ProbeConfig.for_domain(dom, seed=run.seed, **({'directions': run.samples} if run.samples else {}))
    df = threshold_table(dom, run.alpha, list(range(0, args.m1_max + 1)), cfg)
    if run.format == 'json':
        text = df.to_json(orient='records', indent=2) + '\n'
    else:
        text = f"domain {dom.label}, alpha={run.alpha}\n{df.to_string(index=False)}\n"
    _write(text, run.out)
    return EXIT_OK


COMMANDS = {'verify': cmd_verify, 'integrate': cmd_integrate, 'table': cmd_table}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the verification CLI"""
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        run = _run_config(args)
        set_level(run.log_level)
        return COMMANDS[args.command](args, run)
    except CONFIG_ERRORS as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
