"""
Test Suite for the Verification Harness

Tests for the subcommands, serialization, configuration and exit codes.
"""

import pytest
import os
import json
import tempfile
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.harness import DEFAULT_EPS, DEFAULT_TAU_GRID, VerificationHarness, main
from src.gauss.report import RECORD_FIELDS
from src.utils.errors import ConfigError
from src.utils.helpers import (
    format_number,
    load_config,
    parse_int_range,
    parse_number_list,
    parse_tolerance,
    resolve_config,
)
from src.utils.runner import RunSummary, SweepConfig, run_cases


QUIET = {'runner': {'progress': False}}


def _write_config(text):
    with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
        f.write(text)
        return f.name


class TestHelpers:
    """Tests for parsing and formatting helpers."""

    def test_parse_int_range(self):
        """Test inclusive ranges and single values."""
        assert parse_int_range('1..10') == (1, 10)
        assert parse_int_range('7') == (7, 7)
        with pytest.raises(ConfigError):
            parse_int_range('5..1')
        with pytest.raises(ConfigError):
            parse_int_range('a..b')

    def test_parse_number_list(self):
        """Test that numbers stay strings and garbage is refused."""
        assert parse_number_list('0.1, 0.01') == ['0.1', '0.01']
        with pytest.raises(ConfigError):
            parse_number_list('0.1,x')
        with pytest.raises(ConfigError):
            parse_number_list('')

    def test_parse_tolerance(self):
        """Test that tolerances must be finite decimals and negatives are kept."""
        assert parse_tolerance(None) is None
        assert parse_tolerance(' 1e-30 ') == '1e-30'
        assert parse_tolerance('-1') == '-1'
        for bad in ('abc', '1e-3x', 'nan', '-inf'):
            with pytest.raises(ConfigError):
                parse_tolerance(bad)
        harness = VerificationHarness(overrides=QUIET, environ={})
        with pytest.raises(ConfigError):
            harness.sweep_config('1', '1', 'abc')

    def test_format_number(self):
        """Test pass-through of ints and strings."""
        assert format_number(3) == 3
        assert format_number('0.1') == '0.1'
        assert format_number(True) is True

    def test_run_cases_order(self):
        """Test that results keep case order, serially and on a pool."""
        cases = [(n, 2) for n in range(20)]
        assert run_cases(pow, cases) == [n * n for n in range(20)]
        assert run_cases(pow, cases, jobs=2) == [n * n for n in range(20)]


class TestConfiguration:
    """Tests for configuration layering."""

    def test_defaults(self):
        """Test the built-in defaults."""
        harness = VerificationHarness(environ={})
        assert harness.precision_bits == 256
        assert harness.enumeration_budget == 10_000_000
        assert harness.output_format == 'json'
        assert harness.jobs == 1

    def test_precedence(self):
        """Test defaults < file < environment < explicit overrides."""
        path = _write_config("precision:\n  default_bits: 128\noutput:\n  digits: 20\n")
        try:
            from_file = VerificationHarness(path, environ={})
            assert from_file.precision_bits == 128
            assert from_file.digits == 20

            env = {'TORUSGAUSS_PRECISION_DEFAULT_BITS': '192'}
            from_env = VerificationHarness(path, environ=env)
            assert from_env.precision_bits == 192

            explicit = VerificationHarness(path, overrides={'precision': {'default_bits': 320}},
                                           environ=env)
            assert explicit.precision_bits == 320
            assert explicit.digits == 20
        finally:
            os.unlink(path)

    def test_missing_file(self):
        """Test that a missing config file falls back to defaults."""
        assert load_config('/nonexistent/torusgauss.yaml') == {}
        assert resolve_config('/nonexistent/torusgauss.yaml', {})['precision']['default_bits'] == 256

    def test_invalid_files(self):
        """Test rejection of non-mapping and unparsable files."""
        for text in ("- a\n- b\n", "precision: [1, 2\n"):
            path = _write_config(text)
            try:
                with pytest.raises(ConfigError):
                    load_config(path)
            finally:
                os.unlink(path)

    def test_invalid_values(self):
        """Test rejection of unknown formats and low sweep precision."""
        with pytest.raises(ConfigError):
            VerificationHarness(overrides={'output': {'format': 'xml'}}, environ={})
        with pytest.raises(ConfigError):
            SweepConfig((1, 2), (1, 2), precision_bits=32)
        with pytest.raises(ConfigError):
            SweepConfig((0, 2), (1, 2))
        with pytest.raises(ConfigError):
            SweepConfig((1, 2), (1, 2), parallelism=0)

    def test_sweep_order(self):
        """Test that p is the outer loop."""
        cfg = SweepConfig((1, 2), (3, 4))
        assert cfg.pairs() == [(1, 3), (1, 4), (2, 3), (2, 4)]


class TestCommands:
    """Tests for the harness subcommands."""

    def setup_method(self):
        """Set up test fixtures."""
        self.harness = VerificationHarness(overrides=QUIET, environ={})

    def test_verify_ls_grid(self):
        """Test the 10 x 10 default sweep."""
        summary = self.harness.cmd_verify_ls(self.harness.sweep_config('1..10', '1..10'))
        assert summary.total == 100
        assert summary.passed == 100
        assert summary.ok

    def test_verify_ls_single_cases(self):
        """Test p = q = 1 and p = 2, q = 1."""
        for p, q in (('1', '1'), ('2', '1')):
            summary = self.harness.cmd_verify_ls(self.harness.sweep_config(p, q))
            assert summary.total == 1
            assert summary.ok

    def test_negative_tolerance_fails(self):
        """Test that a tolerance override below zero fails every case."""
        summary = self.harness.cmd_verify_ls(self.harness.sweep_config('1..2', '1..2', '-1'))
        assert summary.failed == 4
        assert not summary.ok

    def test_parallel_matches_serial(self):
        """Test that two workers produce the same output as one."""
        serial = self.harness.cmd_verify_ls(self.harness.sweep_config('1..4', '1..5'))
        pooled = VerificationHarness(
            overrides={'runner': {'jobs': 2, 'progress': False}}, environ={}
        )
        parallel = pooled.cmd_verify_ls(pooled.sweep_config('1..4', '1..5'))
        assert self.harness.export(serial, 'json') == pooled.export(parallel, 'json')

    def test_trace_compare(self):
        """Test every pair of the four trace computations for a small system."""
        summary = self.harness.cmd_trace_compare(2, 3)
        pairs = [r.params['pair'] for r in summary.reports]
        assert pairs == [
            'method1/method2', 'method1/matrix_power', 'method1/brute_force',
            'method2/matrix_power', 'method2/brute_force', 'matrix_power/brute_force',
        ]
        assert summary.ok
        assert summary.skipped == []

    def test_trace_compare_budget_skip(self):
        """Test that a refused enumeration is skipped, not failed."""
        summary = self.harness.cmd_trace_compare(2, 3, budget=10)
        assert summary.total == 3
        assert summary.ok
        assert len(summary.skipped) == 1
        assert summary.skipped[0].startswith('brute_force')
        assert 'skipped' in summary.to_dict()

    def test_path_oracle(self):
        """Test every kernel entry both ways for N = 4, p = 2."""
        summary = self.harness.cmd_path_oracle(2, 2)
        assert summary.total == 2 * 16
        assert summary.ok
        pairs = {r.params['pair'] for r in summary.reports}
        assert pairs == {'power/spectral', 'brute/power'}

    def test_path_oracle_budget_skip(self):
        """Test that only the enumeration pairs are dropped over budget."""
        summary = self.harness.cmd_path_oracle(2, 3, budget=2)
        assert summary.total == 16
        assert summary.ok
        assert len(summary.skipped) == 1

    def test_appendix(self):
        """Test 5 values of r, two signs and seven shifts."""
        summary = self.harness.cmd_appendix(5)
        assert summary.total == 70
        assert summary.ok
        with pytest.raises(ConfigError):
            self.harness.cmd_appendix(0)

    def test_reciprocity(self):
        """Test all ordered pairs of distinct odd primes below 100."""
        summary = self.harness.cmd_reciprocity(100)
        assert summary.total == 24 * 23
        assert summary.ok
        assert summary.worst_abs_diff == 0

    def test_jacobi(self):
        """Test the default grid plus seeded random points."""
        summary = self.harness.cmd_jacobi(DEFAULT_TAU_GRID, random_count=5, seed=3)
        assert summary.total == len(DEFAULT_TAU_GRID) + 5
        assert summary.ok
        again = self.harness.cmd_jacobi(DEFAULT_TAU_GRID, random_count=5, seed=3)
        assert self.harness.export(summary, 'csv') == self.harness.export(again, 'csv')

    def test_limit(self):
        """Test the regularized limit with the default eps list."""
        summary = self.harness.cmd_limit(1, 3, DEFAULT_EPS)
        assert summary.total == 3
        assert summary.ok
        assert [r.extra.get('monotone') for r in summary.reports] == [None, True, True]
        assert summary.violations == []


class TestExport:
    """Tests for json, csv and text output."""

    def setup_method(self):
        """Set up test fixtures."""
        self.harness = VerificationHarness(overrides=QUIET, environ={})
        self.summary = self.harness.cmd_verify_ls(self.harness.sweep_config('1..2', '1..3'))

    def test_json_layout(self):
        """Test key order and summary fields."""
        data = json.loads(self.harness.export(self.summary, 'json'))
        assert list(data) == ['cases', 'summary']
        assert list(data['cases'][0]) == ['p', 'q'] + RECORD_FIELDS
        assert data['summary']['total'] == 6
        assert data['summary']['passed'] == 6
        assert 'elapsed' not in data['summary']

    def test_json_deterministic(self):
        """Test that two identical runs serialize byte for byte."""
        again = self.harness.cmd_verify_ls(self.harness.sweep_config('1..2', '1..3'))
        assert self.harness.export(self.summary, 'json') == self.harness.export(again, 'json')

    def test_csv(self):
        """Test the header row and boolean spelling."""
        lines = self.harness.export(self.summary, 'csv').splitlines()
        assert lines[0] == 'p,q,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tolerance,pass'
        assert len(lines) == 7
        assert all(line.endswith(',true') for line in lines[1:])

    def test_text(self):
        """Test one line per case plus a totals line."""
        lines = self.harness.export(self.summary, 'text').splitlines()
        assert len(lines) == 7
        assert lines[0].startswith('PASS landsberg_schaar p=1 q=1 ')
        assert lines[-1].startswith('total=6 passed=6 failed=0')

    def test_output_file(self):
        """Test writing to a file."""
        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            temp_path = f.name
        try:
            output = self.harness.export(self.summary, 'json', temp_path)
            with open(temp_path) as f:
                assert f.read() == output
        finally:
            os.unlink(temp_path)

    def test_unknown_format(self):
        """Test that exporting to an unknown format raises."""
        with pytest.raises(ConfigError):
            self.harness.export(self.summary, 'xml')

    def test_summary_totals(self):
        """Test RunSummary arithmetic on an empty run."""
        empty = RunSummary.from_reports([])
        assert empty.total == 0 and empty.ok
        assert empty.to_dict()['worst_abs_diff'] == '0.0'

    def test_violations_fail_run(self):
        """Test that a run-level violation fails the run without touching the reports."""
        summary = RunSummary.from_reports(self.summary.reports,
                                          violations=['gap not decreasing at eps=0.01'])
        assert summary.failed == 0
        assert not summary.ok
        assert summary.to_dict()['violations'] == ['gap not decreasing at eps=0.01']
        lines = self.harness.export(summary, 'text').splitlines()
        assert lines[-1] == 'violation gap not decreasing at eps=0.01'
        assert 'violations' not in self.summary.to_dict()


class TestMain:
    """Tests for the command line entry point and exit codes."""

    def test_success(self, capsys):
        """Test exit 0 and JSON on stdout."""
        code = main(['verify-ls', '--p', '1..3', '--q', '1..2', '--no-progress'])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data['summary']['total'] == 6

    def test_failure_exit(self, capsys):
        """Test exit 1 when a case fails."""
        code = main(['verify-ls', '--p', '1', '--q', '1', '--tolerance=-1', '--no-progress'])
        assert code == 1
        data = json.loads(capsys.readouterr().out)
        assert data['summary']['failed'] == 1

    def test_usage_errors(self):
        """Test exit 2 for bad ranges, eps lists and tolerances and a missing command."""
        assert main(['verify-ls', '--p', 'x', '--no-progress']) == 2
        assert main(['verify-ls', '--p', '0..3', '--no-progress']) == 2
        assert main(['limit', '--q', '1', '--p', '3', '--eps', '0.01,0.1']) == 2
        assert main(['verify-ls', '--p', '1', '--q', '1', '--tolerance', 'abc',
                     '--no-progress']) == 2
        assert main(['trace-compare', '--q', '1', '--p', '1', '--tolerance', 'inf']) == 2
        assert main([]) == 2

    def test_argparse_errors(self):
        """Test that unknown subcommands and missing arguments exit through argparse."""
        with pytest.raises(SystemExit):
            main(['frobnicate'])
        with pytest.raises(SystemExit):
            main(['trace-compare', '--q', '1'])

    def test_other_commands(self, capsys):
        """Test csv and text output from the smaller subcommands."""
        assert main(['reciprocity', '--bound', '10', '--format', 'csv', '--no-progress']) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == 'p,q,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tolerance,pass'
        assert len(out.splitlines()) == 1 + 6

        assert main(['trace-compare', '--q', '3', '--p', '4', '--budget', '10',
                     '--format', 'text']) == 0
        out = capsys.readouterr().out
        assert 'skipped brute_force' in out

    def test_output_option(self, capsys):
        """Test that --output leaves stdout empty."""
        with tempfile.NamedTemporaryFile(mode='w', suffix='.csv', delete=False) as f:
            temp_path = f.name
        try:
            code = main(['jacobi', '--tau', '1,2', '--format', 'csv', '-o', temp_path,
                         '--no-progress'])
            assert code == 0
            assert capsys.readouterr().out == ''
            with open(temp_path) as f:
                assert f.readline().strip() == 'tau,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tolerance,pass'
        finally:
            os.unlink(temp_path)
