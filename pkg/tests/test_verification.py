"""
Unit tests for the check registry, suite configuration and the suite runner
"""

import logging
import math
from dataclasses import replace

import pytest

from src.domains.descriptor import DomainDescriptor
from src.polynomials.signature import Signature
from src.reporting.report import FAIL, INCONCLUSIVE, PASS, CheckRecord, Report
from src.utils.errors import ConfigInvalid, InvalidSignature, NonConvergent, UnknownCheck
from src.utils.logger import SuiteLogger, set_level
from src.verification import (
    REGISTRY,
    CheckContext,
    CheckOutcome,
    exit_code,
    get_check,
    list_checks,
    load_run_config,
    load_suite_catalogue,
    run_suite,
)
from src.verification.config import DEFAULT_SUITES_PATH, CheckSpec, RunConfig, SuiteSpec, config_hash, parse_suite
from src.verification.registry import ALL_DOMAINS, DISK_ONLY, CheckDefinition, register_check
from src.verification.suite import resolve_check, run_check

MODULES = ('jts-core', 'polarized-calculus', 'hwv-polys', 'quadrature', 'verify-cli')

BALL2 = DomainDescriptor.ball(2)


def _definition(fn, domains=ALL_DOMAINS, check_id='probe'):
    return CheckDefinition(check_id, fn, 'test reference', 'verify-cli', tuple(domains), 1e-6, 5)


def _context(tolerance=1e-6, domain=BALL2):
    return CheckContext(domain=domain, tolerance=tolerance, samples=5)


class TestRegistry:
    """Test the check registry"""

    def test_every_module_has_checks(self):
        """Test each library module is covered by at least one check"""
        for module in MODULES:
            assert list_checks(module), f"no checks registered for {module}"

    def test_definitions_are_complete(self):
        """Test every definition carries a reference and positive defaults"""
        for definition in REGISTRY.values():
            assert definition.paper_ref
            assert definition.module in MODULES
            assert definition.default_tolerance > 0
            assert definition.default_samples > 0

    def test_catalogue_covers_registry(self):
        """Test every registered check is run by some catalogue suite"""
        catalogue = load_suite_catalogue()
        used = {check.id for suite in catalogue.values() for check in suite.checks}
        assert set(REGISTRY) <= used

    def test_headline_suites(self):
        """Test the catalogue carries the headline suites"""
        catalogue = load_suite_catalogue()
        assert {'prop3.1', 'con-rds-boundary', 'determinism'} <= set(catalogue)
        assert catalogue['con-rds-boundary'].signature == Signature((2,))

    def test_unknown_check(self):
        """Test unknown ids raise UnknownCheck"""
        with pytest.raises(UnknownCheck):
            get_check('no-such-check')

    def test_duplicate_registration(self):
        """Test an id cannot be registered twice"""
        with pytest.raises(ValueError):
            register_check('det-b-genus', 'ref', 'jts-core')(lambda ctx: CheckOutcome(0.0, 0))

    def test_supports(self):
        """Test domain support of disk-only and general checks"""
        disk_only = _definition(lambda ctx: None, DISK_ONLY)
        assert disk_only.supports(DomainDescriptor.disk())
        assert not disk_only.supports(BALL2)
        assert _definition(lambda ctx: None).supports(DomainDescriptor.matrix(2, 3))


class TestSuiteConfig:
    """Test suite and run configuration"""

    def test_parse_suite(self):
        """Test a suite record with overrides"""
        spec = parse_suite({
            'id': 'mini',
            'domain': {'kind': 'ball', 'n': 2},
            'quad': {'points': 16},
            'checks': ['det-b-genus', {'id': 'frame-tripotent', 'tolerance': 1e-9, 'signature': '1'}],
        })
        assert spec.domain == BALL2
        assert spec.quad.points == 16
        assert [c.id for c in spec.checks] == ['det-b-genus', 'frame-tripotent']
        assert spec.checks[1].tolerance == 1e-9
        assert spec.checks[1].signature == Signature((1,))

    def test_unsupported_domain(self):
        """Test a disk-only check in a ball suite is rejected"""
        with pytest.raises(ConfigInvalid):
            parse_suite({'id': 'bad', 'domain': {'kind': 'ball', 'n': 2}, 'checks': ['disk-operator-formula']})

    def test_unknown_keys(self):
        """Test unknown suite and check keys are rejected"""
        with pytest.raises(ConfigInvalid):
            parse_suite({'id': 'bad', 'domian': {'kind': 'disk'}})
        with pytest.raises(ConfigInvalid):
            parse_suite({'id': 'bad', 'checks': [{'id': 'det-b-genus', 'tol': 1e-3}]})

    def test_unknown_check_in_suite(self):
        """Test suites naming unregistered checks are rejected"""
        with pytest.raises(UnknownCheck):
            parse_suite({'id': 'bad', 'checks': ['no-such-check']})

    def test_duplicate_suite_ids(self, tmp_path):
        """Test duplicate suite ids are rejected"""
        path = tmp_path / 'suites.yaml'
        path.write_text("suites:\n  - id: a\n    checks: [det-b-genus]\n  - id: a\n    checks: [det-b-genus]\n")
        with pytest.raises(ConfigInvalid):
            load_suite_catalogue(path)

    def test_unreadable_catalogue(self, tmp_path):
        """Test a missing file is a configuration error"""
        with pytest.raises(ConfigInvalid):
            load_suite_catalogue(tmp_path / 'missing.yaml')

    def test_run_config_from_flat(self):
        """Test flat keys build a run configuration"""
        run = RunConfig.from_flat({'domain': 'matrix', 'p': 2, 'q': 3, 'tol': 1e-4, 'signature': '2,1', 'seed': None})
        assert run.domain == DomainDescriptor.matrix(2, 3)
        assert run.signature == Signature((2, 1))
        assert run.explicit == frozenset({'domain', 'tol', 'signature'})
        assert run.seed == 42

    @pytest.mark.parametrize('record,error', [
        ({'colour': 'red'}, ConfigInvalid),
        ({'format': 'xml'}, ConfigInvalid),
        ({'tol': -1}, ConfigInvalid),
        ({'seed': 'abc'}, ConfigInvalid),
        ({'signature': '1,2'}, InvalidSignature),
    ])
    def test_run_config_invalid(self, record, error):
        """Test invalid run settings"""
        with pytest.raises(error):
            RunConfig.from_flat(record)

    def test_merged_flags(self):
        """Test CLI flags overlay the file configuration"""
        base = RunConfig.from_flat({'seed': 7, 'format': 'text'})
        merged = base.merged({'seed': None, 'samples': 100, 'format': None})
        assert merged.seed == 7
        assert merged.samples == 100
        assert merged.format == 'text'
        assert merged.overrides('samples') and merged.overrides('seed')
        assert not merged.overrides('tol')

    def test_load_run_config(self, tmp_path, monkeypatch):
        """Test the file given by the environment is loaded"""
        path = tmp_path / 'verify.yaml'
        path.write_text("seed: 11\nformat: text\nsuites: [prop3.1]\n")
        monkeypatch.setenv('BSD_VERIFY_CONFIG', str(path))
        run = load_run_config()
        assert run.seed == 11
        assert run.format == 'text'
        assert run.suites == ['prop3.1']

    def test_load_run_config_default(self, monkeypatch):
        """Test defaults apply without a file"""
        monkeypatch.delenv('BSD_VERIFY_CONFIG', raising=False)
        run = load_run_config()
        assert run.seed == 42
        assert run.explicit == frozenset()

    def test_config_hash(self):
        """Test the hash ignores key order"""
        assert config_hash({'a': 1, 'b': [1, 2]}) == config_hash({'b': [1, 2], 'a': 1})
        assert config_hash({'a': 1}) != config_hash({'a': 2})


class TestRunCheck:
    """Test check classification"""

    def test_pass(self):
        """Test an error below the tolerance passes"""
        record = run_check(_definition(lambda ctx: CheckOutcome(1e-9, 3)), _context())
        assert record.status == PASS
        assert record.max_error == 1e-9
        assert record.points == 3

    def test_zero_tolerance_fails(self):
        """Test the comparison is strict"""
        record = run_check(_definition(lambda ctx: CheckOutcome(0.0, 3)), _context(tolerance=0.0))
        assert record.status == FAIL

    def test_secondary_condition(self):
        """Test a failed secondary condition fails the check"""
        record = run_check(_definition(lambda ctx: CheckOutcome(0.0, 3, secondary_ok=False)), _context())
        assert record.status == FAIL
        assert 'secondary condition failed' in record.notes

    def test_non_finite_error(self):
        """Test NaN errors fail and are reported as null"""
        record = run_check(_definition(lambda ctx: CheckOutcome(math.nan, 3)), _context())
        assert record.status == FAIL
        assert record.max_error is None

    def test_undecided_is_inconclusive(self):
        """Test convergence failures are inconclusive"""
        def fn(ctx):
            raise NonConvergent('radii disagree')

        record = run_check(_definition(fn), _context())
        assert record.status == INCONCLUSIVE
        assert record.notes == 'NonConvergent: radii disagree'

    def test_other_exception_fails(self):
        """Test unexpected exceptions fail with their message"""
        def fn(ctx):
            raise RuntimeError('boom')

        record = run_check(_definition(fn), _context())
        assert record.status == FAIL
        assert record.notes == 'RuntimeError: boom'

    def test_outcome_inconclusive(self):
        """Test a check may declare itself inconclusive"""
        record = run_check(_definition(lambda ctx: CheckOutcome(math.nan, 0, inconclusive=True)), _context())
        assert record.status == INCONCLUSIVE

    def test_unsupported_domain(self):
        """Test checks not applicable to the domain are inconclusive"""
        record = run_check(_definition(lambda ctx: CheckOutcome(0.0, 1), DISK_ONLY), _context())
        assert record.status == INCONCLUSIVE
        assert record.notes == 'not applicable to ball2'


class TestSuiteRunner:
    """Test suite execution and reports"""

    @pytest.fixture
    def mini_suite(self):
        return SuiteSpec(
            id='mini',
            domain=BALL2,
            checks=[CheckSpec('det-b-genus', samples=10), CheckSpec('frame-tripotent'),
                    CheckSpec('quasi-inverse-defining', tolerance=1e-9, samples=10)],
        ).validate()

    def test_resolve_precedence(self, mini_suite):
        """Test explicit run settings beat check settings, which beat registry defaults"""
        definition = get_check('quasi-inverse-defining')
        check = mini_suite.checks[2]

        ctx, tol = resolve_check(definition, check, mini_suite, RunConfig(), 42)
        assert tol == 1e-9
        assert ctx.samples == 10

        ctx, tol = resolve_check(definition, mini_suite.checks[1], mini_suite, RunConfig(), 42)
        assert tol == get_check('frame-tripotent').default_tolerance

        run = RunConfig.from_flat({'tol': 1e-3, 'samples': 3, 'seed': 5})
        ctx, tol = resolve_check(definition, check, mini_suite, run, 42)
        assert (tol, ctx.samples, ctx.seed) == (1e-3, 3, 5)

    def test_run_suite(self, mini_suite):
        """Test every record passes and env is populated"""
        report = run_suite(mini_suite)
        assert [r.id for r in report.checks] == ['det-b-genus', 'frame-tripotent', 'quasi-inverse-defining']
        assert all(r.status == PASS for r in report.checks)
        assert set(report.env) == {'seed', 'config_hash', 'timestamp'}
        assert report.env['seed'] == 42

    def test_determinism(self, mini_suite):
        """Test identical configurations give identical reports apart from the timestamp"""
        first = run_suite(mini_suite, seed=3, timestamp='t').to_dict()
        second = run_suite(mini_suite, seed=3, timestamp='t').to_dict()
        assert first == second

    def test_config_hash_tracks_settings(self, mini_suite):
        """Test the hash changes with the resolved configuration"""
        base = run_suite(mini_suite, seed=3).env['config_hash']
        changed = run_suite(mini_suite, seed=4).env['config_hash']
        assert base != changed

    def test_explicit_domain_override(self, mini_suite):
        """Test a run-level domain replaces the suite domain"""
        run = RunConfig.from_flat({'domain': 'matrix', 'p': 2, 'q': 2})
        report = run_suite(mini_suite, run)
        assert all(r.status == PASS for r in report.checks)

    def test_exit_code(self):
        """Test any failure gives exit code 1"""
        ok = Report('a', [CheckRecord('x', 'ref', PASS, 0.0, 1.0, 1),
                          CheckRecord('y', 'ref', INCONCLUSIVE, None, 1.0, 0)])
        bad = Report('b', [CheckRecord('z', 'ref', FAIL, 2.0, 1.0, 1)])
        assert exit_code([ok]) == 0
        assert exit_code([ok, bad]) == 1


class TestSuiteLogging:
    """Test suite loggers follow the package log level"""

    def test_suite_logger_level(self):
        """Test set_level reaches a suite logger"""
        suite_logger = SuiteLogger('level-check', 1)
        assert suite_logger.logger.name.startswith('src.')
        try:
            set_level('DEBUG')
            assert suite_logger.logger.level == logging.DEBUG
        finally:
            set_level('INFO')


CATALOGUE = load_suite_catalogue(DEFAULT_SUITES_PATH)
REDUCED_SAMPLES = 50_000


class TestConfiguredSuites:
    """Test every suite shipped in config/suites.yaml"""

    @pytest.mark.parametrize('suite_id', list(CATALOGUE))
    def test_no_failures(self, suite_id):
        """Test no check of the suite fails at reduced Monte-Carlo sample counts"""
        spec = CATALOGUE[suite_id]
        checks = [replace(check, samples=min(check.samples or get_check(check.id).default_samples, REDUCED_SAMPLES))
                  for check in spec.checks]
        report = run_suite(replace(spec, checks=checks), seed=42, timestamp='t')
        failures = [(r.id, r.max_error, r.notes) for r in report.checks if r.status == FAIL]
        assert failures == []

    def test_odd_alpha_threshold_suite(self):
        """Test the catalogue covers the exact threshold at an odd weight"""
        spec = CATALOGUE['threshold-alpha3']
        assert spec.alpha == 3.0
        assert spec.checks[0].params['m1_values'] == [1, 2]


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
