"""
Torus Gauss - Verification Harness

This module provides the main entry point, coordinating the Gauss sum,
torus path integral and cylinder theta function verifications.
"""

import argparse
import csv
import json
import logging
import random
import sys
import time
from io import StringIO
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cylinder.limit import gap_violations, regularized_ls_limit
from src.cylinder.theta import ThetaParams, verify_jacobi
from src.gauss.gauss_sums import verify_appendix, verify_landsberg_schaar
from src.gauss.reciprocity import odd_primes_below, verify_reciprocity
from src.gauss.report import RECORD_FIELDS, VerificationReport
from src.phasecalc.precision import cyclosum_eval
from src.torus.kernels import evolve_by_power, spectral_kernel_matrix
from src.torus.paths import brute_force_path_sum
from src.torus.system import TorusSystem
from src.torus.traces import (
    trace_by_enumeration,
    trace_by_matrix_power,
    trace_method1,
    trace_method2,
)
from src.utils.errors import (
    ConfigError,
    DomainError,
    EnumerationBudgetError,
    TorusGaussError,
)
from src.utils.helpers import (
    format_number,
    format_real,
    merge_config,
    parse_int_range,
    parse_number_list,
    parse_tolerance,
    resolve_config,
)
from src.utils.runner import OUTPUT_FORMATS, RunSummary, SweepConfig, run_cases


logger = logging.getLogger(__name__)

DEFAULT_TAU_GRID = ['0.25', '0.5', '1', '1.5', '2', '4']
DEFAULT_EPS = ['0.1', '0.01', '0.001']


def appendix_shifts(r: int) -> List[int]:
    """Seven distinct shifts per r."""
    return [0, 1, -1, 2, -5, r + 3, 4 * r + 7]


def _jacobi_case(tau: Any, precision_bits: int, tolerance: Any = None) -> VerificationReport:
    return verify_jacobi(ThetaParams.auto(tau, precision_bits), tolerance)


def _compare(check: str, params: Dict[str, Any], lhs, rhs, tolerance: Any) -> VerificationReport:
    tol = lhs.err_bound + rhs.err_bound if tolerance is None else tolerance
    return VerificationReport.compare(check, params, lhs, rhs, tol)


class VerificationHarness:
    """
    Main harness class that runs identity checks and collects their reports.

    Example usage:
        harness = VerificationHarness()
        summary = harness.cmd_verify_ls(SweepConfig((1, 10), (1, 10)))
        print(harness.export(summary, 'csv'))
    """

    def __init__(self, config_path: Optional[str] = None,
                 overrides: Optional[Dict[str, Any]] = None,
                 environ: Optional[Dict[str, str]] = None):
        """
        Initialize the harness.

        Args:
            config_path: Optional path to configuration file
            overrides: Values taking precedence over file and environment
            environ: Environment mapping (defaults to os.environ)
        """
        config = resolve_config(config_path, environ)
        self.config = merge_config(config, overrides or {})

        precision = self.config.get('precision', {})
        self.precision_bits = int(precision.get('default_bits', 256))
        self.sweep_min_bits = int(precision.get('sweep_min_bits', 64))
        self.enumeration_budget = int(self.config.get('torus', {}).get('enumeration_budget',
                                                                        10_000_000))
        self.limit_max_bits = int(self.config.get('cylinder', {}).get('limit_max_bits', 16384))

        output = self.config.get('output', {})
        self.output_format = output.get('format', 'json')
        self.digits = int(output.get('digits', 40))

        runner = self.config.get('runner', {})
        self.jobs = int(runner.get('jobs', 1))
        self.progress = bool(runner.get('progress', False))
        self.seed = int(runner.get('seed', 0))

        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.precision_bits < 16:
            raise ConfigError("precision must be at least 16 bits",
                              {'precision_bits': self.precision_bits})

    def _run(self, func, cases, desc: str) -> List[Any]:
        return run_cases(func, cases, self.jobs, self.progress, desc)

    def sweep_config(self, p_text: str, q_text: str,
                     tolerance: Optional[str] = None) -> SweepConfig:
        """Build a SweepConfig from range strings and the harness settings."""
        return SweepConfig(
            p_range=parse_int_range(p_text),
            q_range=parse_int_range(q_text),
            precision_bits=self.precision_bits,
            tolerance_override=parse_tolerance(tolerance),
            output_format=self.output_format,
            parallelism=self.jobs,
            min_precision_bits=self.sweep_min_bits,
        )

    def cmd_verify_ls(self, cfg: SweepConfig) -> RunSummary:
        """
        Run the Landsberg-Schaar check over a (p, q) grid.

        Args:
            cfg: Sweep ranges, precision and tolerance

        Returns:
            RunSummary, cases ordered by p then q
        """
        start = time.perf_counter()
        cases = [(q, p, cfg.precision_bits, cfg.tolerance_override) for p, q in cfg.pairs()]
        reports = run_cases(verify_landsberg_schaar, cases, cfg.parallelism,
                            self.progress, 'verify-ls')
        return RunSummary.from_reports(reports, time.perf_counter() - start)

    def cmd_trace_compare(self, q: int, p: int, precision_bits: Optional[int] = None,
                          tolerance: Optional[str] = None,
                          budget: Optional[int] = None) -> RunSummary:
        """
        Compare Method 1, Method 2, the matrix-power trace and, when the
        enumeration budget allows, the brute-force path sum, pairwise.

        A refused enumeration is listed under ``skipped`` and does not fail
        the run.
        """
        start = time.perf_counter()
        bits = precision_bits or self.precision_bits
        budget = self.enumeration_budget if budget is None else budget
        sys_ = TorusSystem(q, p, bits)

        traces = {
            'method1': cyclosum_eval(trace_method1(sys_), bits),
            'method2': trace_method2(sys_),
            'matrix_power': trace_by_matrix_power(sys_),
        }
        skipped = []
        try:
            traces['brute_force'] = trace_by_enumeration(sys_, budget)
        except EnumerationBudgetError as e:
            skipped.append(f"brute_force: {e}")

        reports = [
            _compare('trace', {'q': q, 'p': p, 'pair': f"{a}/{b}"},
                     traces[a], traces[b], tolerance)
            for a, b in combinations(traces, 2)
        ]
        return RunSummary.from_reports(reports, time.perf_counter() - start, skipped)

    def cmd_path_oracle(self, q: int, p: int, precision_bits: Optional[int] = None,
                        tolerance: Optional[str] = None,
                        budget: Optional[int] = None) -> RunSummary:
        """Every kernel entry three ways: enumeration, matrix power, spectral form."""
        start = time.perf_counter()
        bits = precision_bits or self.precision_bits
        budget = self.enumeration_budget if budget is None else budget
        sys_ = TorusSystem(q, p, bits)
        power = evolve_by_power(sys_)
        spectral = spectral_kernel_matrix(sys_)

        reports, skipped = [], []
        enumerate_paths = True
        for r in range(sys_.N):
            for s in range(sys_.N):
                params = {'q': q, 'p': p, 'r': r, 's': s}
                reports.append(_compare('path_oracle', dict(params, pair='power/spectral'),
                                        power.entry(r, s), spectral.entry(r, s), tolerance))
                if not enumerate_paths:
                    continue
                try:
                    brute = brute_force_path_sum(sys_, r, s, budget)
                except EnumerationBudgetError as e:
                    skipped.append(f"brute_force: {e}")
                    enumerate_paths = False
                    continue
                reports.append(_compare('path_oracle', dict(params, pair='brute/power'),
                                        brute, power.entry(r, s), tolerance))

        return RunSummary.from_reports(reports, time.perf_counter() - start, skipped)

    def cmd_appendix(self, r_max: int, precision_bits: Optional[int] = None,
                     tolerance: Optional[str] = None) -> RunSummary:
        """Both appendix sums for r = 1..r_max and seven shifts each."""
        start = time.perf_counter()
        if r_max < 1:
            raise ConfigError("r_max must be positive", {'r_max': r_max})
        bits = precision_bits or self.precision_bits
        cases = [
            (r, s, sign, bits, tolerance)
            for r in range(1, r_max + 1)
            for sign in (1, -1)
            for s in appendix_shifts(r)
        ]
        reports = self._run(verify_appendix, cases, 'appendix')
        return RunSummary.from_reports(reports, time.perf_counter() - start)

    def cmd_reciprocity(self, bound: int) -> RunSummary:
        """All ordered pairs of distinct odd primes below ``bound``."""
        start = time.perf_counter()
        primes = odd_primes_below(bound)
        cases = [(p, q) for p in primes for q in primes if p != q]
        reports = self._run(verify_reciprocity, cases, 'reciprocity')
        return RunSummary.from_reports(reports, time.perf_counter() - start)

    def cmd_jacobi(self, tau_grid: Sequence[Any], random_count: int = 0,
                   seed: Optional[int] = None, precision_bits: Optional[int] = None,
                   tolerance: Optional[str] = None) -> RunSummary:
        """
        Jacobi identity on a fixed grid plus seeded random tau with
        Re(tau) in [0.1, 10] and |Im(tau)| <= Re(tau)/2.
        """
        start = time.perf_counter()
        bits = precision_bits or self.precision_bits
        rng = random.Random(self.seed if seed is None else seed)
        taus = list(tau_grid)
        for _ in range(random_count):
            re = rng.uniform(0.1, 10)
            taus.append(complex(re, rng.uniform(-re / 2, re / 2)))
        reports = self._run(_jacobi_case, [(tau, bits, tolerance) for tau in taus], 'jacobi')
        return RunSummary.from_reports(reports, time.perf_counter() - start)

    def cmd_limit(self, q: int, p: int, eps_list: Sequence[Any],
                  precision_bits: Optional[int] = None) -> RunSummary:
        """
        Regularized limit along ``eps_list``. A gap that does not drop below
        the previous one is a run-level violation and fails the summary.
        """
        start = time.perf_counter()
        bits = precision_bits or self.precision_bits
        reports = regularized_ls_limit(q, p, eps_list, bits, self.limit_max_bits)
        violations = gap_violations(reports)
        return RunSummary.from_reports(reports, time.perf_counter() - start,
                                       violations=violations)

    def export(self, summary: RunSummary, format: Optional[str] = None,
               output_path: Optional[str] = None) -> str:
        """
        Serialize a summary.

        Args:
            summary: Run to export
            format: 'json', 'csv' or 'text'
            output_path: Optional output file path

        Returns:
            Exported data as string
        """
        format = format or self.output_format
        records = [r.to_record(self.digits) for r in summary.reports]

        if format == 'json':
            output = json.dumps({'cases': records, 'summary': summary.to_dict()}, indent=2) + "\n"
        elif format == 'csv':
            buffer = StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            param_keys: List[str] = []
            for report in summary.reports:
                for key in report.params:
                    if key not in param_keys:
                        param_keys.append(key)
            header = param_keys + RECORD_FIELDS
            writer.writerow(header)
            for record in records:
                writer.writerow([_csv_value(record.get(k, '')) for k in header])
            output = buffer.getvalue()
        elif format == 'text':
            output = self._to_text(summary)
        else:
            raise ConfigError(f"unsupported format: {format}")

        if output_path:
            with open(output_path, 'w') as f:
                f.write(output)

        return output

    def _to_text(self, summary: RunSummary) -> str:
        """Human-readable report, one line per case."""
        lines = []
        for report in summary.reports:
            params = " ".join(f"{k}={format_number(v, 12)}" for k, v in report.params.items())
            lines.append(
                f"{'PASS' if report.passed else 'FAIL'} {report.check} {params} "
                f"abs_diff={format_real(report.abs_diff, 6)} "
                f"tolerance={format_real(report.tolerance, 6)}"
            )
        totals = summary.to_dict()
        lines.append(
            f"total={totals['total']} passed={totals['passed']} failed={totals['failed']} "
            f"worst_abs_diff={totals['worst_abs_diff']}"
        )
        for note in summary.skipped:
            lines.append(f"skipped {note}")
        for note in summary.violations:
            lines.append(f"violation {note}")
        return "\n".join(lines) + "\n"

    def run(self, args: argparse.Namespace) -> RunSummary:
        """Dispatch a parsed command line."""
        bits = args.precision or self.precision_bits
        tol = parse_tolerance(args.tolerance)

        if args.command == 'verify-ls':
            cfg = self.sweep_config(args.p, args.q, tol)
            return self.cmd_verify_ls(cfg)
        elif args.command == 'trace-compare':
            return self.cmd_trace_compare(args.q, args.p, bits, tol)
        elif args.command == 'path-oracle':
            return self.cmd_path_oracle(args.q, args.p, bits, tol)
        elif args.command == 'appendix':
            return self.cmd_appendix(args.r_max, bits, tol)
        elif args.command == 'reciprocity':
            return self.cmd_reciprocity(args.bound)
        elif args.command == 'jacobi':
            return self.cmd_jacobi(parse_number_list(args.tau), args.random,
                                   args.seed, bits, tol)
        elif args.command == 'limit':
            return self.cmd_limit(args.q, args.p, parse_number_list(args.eps), bits)
        raise ConfigError(f"unknown command {args.command!r}")


def _csv_value(value: Any) -> Any:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return value


def _cli_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """CLI flags that were given, in config layout."""
    overrides: Dict[str, Dict[str, Any]] = {}
    flags = [
        ('precision', 'default_bits', args.precision),
        ('output', 'format', args.format),
        ('runner', 'jobs', args.jobs),
        ('runner', 'seed', args.seed),
        ('torus', 'enumeration_budget', args.budget),
    ]
    for section, key, value in flags:
        if value is not None:
            overrides.setdefault(section, {})[key] = value
    if args.no_progress:
        overrides.setdefault('runner', {})['progress'] = False
    return overrides


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per verification."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--precision', type=int, help='Working precision in bits')
    common.add_argument('--tolerance', help='Override the pass tolerance (decimal)')
    common.add_argument('--format', choices=list(OUTPUT_FORMATS), help='Output format')
    common.add_argument('--jobs', type=int, help='Worker processes')
    common.add_argument('--budget', type=int, help='Largest number of enumerated paths')
    common.add_argument('--seed', type=int, help='Seed for randomized sweeps')
    common.add_argument('--config', help='Path to configuration file')
    common.add_argument('--output', '-o', help='Write data to this file instead of stdout')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')
    common.add_argument('--no-progress', action='store_true', help='Hide progress bars')

    parser = argparse.ArgumentParser(
        description="Torus Gauss - verify Gauss sum identities from discrete path integrals"
    )
    subparsers = parser.add_subparsers(dest='command', help='Commands')

    ls_parser = subparsers.add_parser('verify-ls', parents=[common],
                                      help='Landsberg-Schaar sweep')
    ls_parser.add_argument('--p', default='1..10', help='Inclusive range, e.g. 1..10')
    ls_parser.add_argument('--q', default='1..10', help='Inclusive range, e.g. 1..10')

    for name, help_text in (('trace-compare', 'Compare trace computations'),
                            ('path-oracle', 'Three-way kernel agreement')):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('--q', type=int, required=True)
        sub.add_argument('--p', type=int, required=True)

    appendix_parser = subparsers.add_parser('appendix', parents=[common],
                                            help='Appendix Gauss sum closed forms')
    appendix_parser.add_argument('--r-max', type=int, default=50)

    reciprocity_parser = subparsers.add_parser('reciprocity', parents=[common],
                                               help='Quadratic reciprocity over odd primes')
    reciprocity_parser.add_argument('--bound', type=int, default=100)

    jacobi_parser = subparsers.add_parser('jacobi', parents=[common],
                                          help='Jacobi theta identity')
    jacobi_parser.add_argument('--tau', default=",".join(DEFAULT_TAU_GRID),
                               help='Comma separated tau values (complex as 1.5+0.3j)')
    jacobi_parser.add_argument('--random', type=int, default=0,
                               help='Number of extra seeded random tau')

    limit_parser = subparsers.add_parser('limit', parents=[common],
                                         help='Regularized limit eps -> 0')
    limit_parser.add_argument('--q', type=int, required=True)
    limit_parser.add_argument('--p', type=int, required=True)
    limit_parser.add_argument('--eps', default=",".join(DEFAULT_EPS),
                              help='Comma separated decreasing eps values')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line interface. Exit status: 0 all pass, 1 failure, 2 usage error."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        harness = VerificationHarness(args.config, overrides=_cli_overrides(args))
        summary = harness.run(args)
    except (ConfigError, DomainError) as e:
        logger.error("%s", e)
        return 2
    except TorusGaussError as e:
        logger.error("%s", e)
        return 1

    output = harness.export(summary, output_path=args.output)
    if not args.output:
        sys.stdout.write(output)
    logger.info("%s finished in %.3fs", args.command, summary.elapsed)

    return 0 if summary.ok else 1


if __name__ == '__main__':
    sys.exit(main())
