from .registry import (
    CheckContext,
    CheckOutcome,
    CheckDefinition,
    REGISTRY,
    register_check,
    get_check,
    list_checks,
)
from . import checks
from .config import (
    CheckSpec,
    SuiteSpec,
    RunConfig,
    parse_suite,
    load_suite_catalogue,
    load_run_config,
    config_hash,
)
from .suite import resolve_check, run_check, run_suite, run_suites, exit_code

__all__ = [
    'CheckContext', 'CheckOutcome', 'CheckDefinition', 'REGISTRY', 'register_check', 'get_check',
    'list_checks', 'checks', 'CheckSpec', 'SuiteSpec', 'RunConfig', 'parse_suite',
    'load_suite_catalogue', 'load_run_config', 'config_hash', 'resolve_check', 'run_check',
    'run_suite', 'run_suites', 'exit_code',
]
