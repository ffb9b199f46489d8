"""
Unit tests for the verification CLI
"""

import json
import math

import pytest

from src.cli import build_parser, integrate_record, main
from src.domains.descriptor import DomainDescriptor
from src.polynomials.signature import Signature
from src.reporting.report import FAIL, PASS, CheckRecord, Report

SUITES = """\
suites:
  - id: mini-disk
    domain: {kind: disk}
    checks:
      - id: det-b-genus
        samples: 10
      - id: quasi-inverse-defining
        samples: 10
  - id: mini-ball
    domain: {kind: ball, n: 2}
    checks:
      - id: frame-tripotent
"""


@pytest.fixture
def suites_file(tmp_path):
    path = tmp_path / 'suites.yaml'
    path.write_text(SUITES)
    return str(path)


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv('BSD_VERIFY_CONFIG', raising=False)
    monkeypatch.delenv('BSD_VERIFY_SUITES', raising=False)


class TestParser:
    """Test argument parsing"""

    def test_verify_arguments(self):
        """Test verify takes a target and the common flags"""
        args = build_parser().parse_args(['verify', 'prop3.1', '--seed', '7', '--tol', '1e-3', '--format', 'text'])
        assert args.command == 'verify'
        assert args.target == 'prop3.1'
        assert (args.seed, args.tol, args.format) == (7, 1e-3, 'text')

    def test_defaults_are_unset(self):
        """Test unset flags stay None so config files can supply them"""
        args = build_parser().parse_args(['integrate'])
        assert args.seed is None
        assert args.alpha is None

    def test_command_required(self):
        """Test a subcommand is required"""
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args([])
        assert exc.value.code == 2

    def test_invalid_choice(self):
        """Test argparse rejects unknown formats with exit code 2"""
        with pytest.raises(SystemExit) as exc:
            main(['verify', 'all', '--format', 'xml'])
        assert exc.value.code == 2


class TestVerifyCommand:
    """Test the verify command"""

    def test_single_suite(self, suites_file, capsys):
        """Test a passing suite exits 0 and prints one JSON object"""
        code = main(['verify', 'mini-disk', '--suites-file', suites_file])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload['suite'] == 'mini-disk'
        assert [r['status'] for r in payload['checks']] == [PASS, PASS]
        assert payload['env']['seed'] == 42

    def test_all_suites(self, suites_file, capsys):
        """Test 'all' runs the whole catalogue"""
        code = main(['verify', 'all', '--suites-file', suites_file])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert [p['suite'] for p in payload] == ['mini-disk', 'mini-ball']

    def test_text_output_to_file(self, suites_file, tmp_path):
        """Test --out and --format text"""
        out = tmp_path / 'report.txt'
        code = main(['verify', 'mini-ball', '--suites-file', suites_file, '--format', 'text', '--out', str(out)])
        assert code == 0
        assert 'suite mini-ball' in out.read_text()

    def test_failure_exit_code(self, suites_file, mocker, capsys):
        """Test a failing check gives exit code 1"""
        failing = Report('mini-disk', [CheckRecord('det-b-genus', 'ref', FAIL, 1.0, 1e-10, 10)],
                         env={'seed': 42, 'config_hash': 'x', 'timestamp': 't'})
        run_suite = mocker.patch('src.cli.run_suite', return_value=failing)
        assert main(['verify', 'mini-disk', '--suites-file', suites_file]) == 1
        run_suite.assert_called_once()

    def test_zero_tolerance_fails(self, suites_file, capsys):
        """Test --tol 0 overrides every check and fails them"""
        assert main(['verify', 'mini-disk', '--suites-file', suites_file, '--tol', '0']) == 1
        payload = json.loads(capsys.readouterr().out)
        assert all(r['status'] == FAIL for r in payload['checks'])
        assert all(r['tolerance'] == 0.0 for r in payload['checks'])

    def test_unknown_suite(self, suites_file):
        """Test unknown suites are configuration errors"""
        assert main(['verify', 'no-such-suite', '--suites-file', suites_file]) == 2

    def test_invalid_signature(self, suites_file):
        """Test malformed signatures are configuration errors"""
        assert main(['verify', 'mini-disk', '--suites-file', suites_file, '--signature', '1,2']) == 2

    def test_unsupported_domain(self, suites_file):
        """Test out-of-range domains are configuration errors"""
        assert main(['verify', 'mini-disk', '--suites-file', suites_file, '--domain', 'ball', '--n', '9']) == 2

    def test_config_file(self, suites_file, tmp_path, capsys):
        """Test a flat config file supplies the seed"""
        config = tmp_path / 'verify.yaml'
        config.write_text('seed: 9\n')
        assert main(['verify', 'mini-disk', '--suites-file', suites_file, '--config', str(config)]) == 0
        assert json.loads(capsys.readouterr().out)['env']['seed'] == 9

    def test_invalid_config_file(self, suites_file, tmp_path):
        """Test unknown config keys are configuration errors"""
        config = tmp_path / 'verify.yaml'
        config.write_text('colour: red\n')
        assert main(['verify', 'mini-disk', '--suites-file', suites_file, '--config', str(config)]) == 2


class TestIntegrateCommand:
    """Test the integrate command"""

    def test_integrate_record_disk(self):
        """Test the disk record carries the closed form and radial value"""
        record = integrate_record(DomainDescriptor.disk(), 4.0, Signature((1,)), 20_000, 1)
        assert record['admissible']
        assert record['closed_form'] == pytest.approx(math.pi / 12)
        assert record['radial']['value'] == pytest.approx(math.pi / 12, rel=1e-6)
        assert record['monte_carlo']['samples_used'] == 20_000

    def test_integrate_divergent(self):
        """Test past the threshold the closed form is null and no radial value is given"""
        record = integrate_record(DomainDescriptor.disk(), 4.0, Signature((3,)), 20_000, 1)
        assert not record['admissible']
        assert record['closed_form'] is None
        assert 'radial' not in record

    def test_integrate_command(self, tmp_path):
        """Test the command writes a JSON record"""
        out = tmp_path / 'norm.json'
        code = main(['integrate', '--domain', 'ball', '--n', '2', '--alpha', '4', '--samples', '20000',
                     '--out', str(out)])
        assert code == 0
        record = json.loads(out.read_text())
        assert record['domain'] == 'ball2'
        assert record['signature'] == '1'
        assert record['monte_carlo']['value'] > 0


class TestTableCommand:
    """Test the threshold table command"""

    def test_table_json(self, capsys):
        """Test verdicts follow admissibility at α = 2"""
        code = main(['table', '--domain', 'disk', '--alpha', '2', '--m1-max', '2', '--samples', '32'])
        assert code == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row['m1'] for row in rows] == [0, 1, 2]
        assert [row['verdict'] for row in rows] == ['finite', 'finite', 'divergent']

    def test_table_text(self, capsys):
        """Test the text table header"""
        assert main(['table', '--domain', 'disk', '--alpha', '4', '--m1-max', '1', '--format', 'text']) == 0
        assert 'domain disk, alpha=4.0' in capsys.readouterr().out


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
