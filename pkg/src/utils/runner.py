"""
Sweep Runner Module

Ordered execution of independent verification cases, serially or on a
process pool, plus the sweep configuration and summary records.
"""

import logging
import sys
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
from tqdm import tqdm

from src.utils.errors import ConfigError
from src.utils.helpers import format_real


logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ('json', 'csv', 'text')


@dataclass
class SweepConfig:
    """A rectangular (p, q) sweep."""
    p_range: Tuple[int, int]
    q_range: Tuple[int, int]
    precision_bits: int = 256
    tolerance_override: Optional[str] = None
    output_format: str = 'json'
    parallelism: int = 1
    min_precision_bits: int = 64

    def __post_init__(self):
        for name in ('p_range', 'q_range'):
            lo, hi = getattr(self, name)
            if lo < 1 or lo > hi:
                raise ConfigError(f"{name} must be a nonempty range of positive integers",
                                  {name: f"{lo}..{hi}"})
        if self.precision_bits < self.min_precision_bits:
            raise ConfigError(
                f"sweeps need at least {self.min_precision_bits} bits of precision",
                {'precision_bits': self.precision_bits}
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1",
                              {'parallelism': self.parallelism})

    def pairs(self) -> List[Tuple[int, int]]:
        """(p, q) pairs, p outermost."""
        return [
            (p, q)
            for p in range(self.p_range[0], self.p_range[1] + 1)
            for q in range(self.q_range[0], self.q_range[1] + 1)
        ]


@dataclass
class RunSummary:
    """Totals over the reports of one command, in case order."""
    total: int
    passed: int
    failed: int
    worst_abs_diff: mpmath.mpf
    elapsed: float = 0.0
    reports: List[Any] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @classmethod
    def from_reports(cls, reports: Sequence[Any], elapsed: float = 0.0,
                     skipped: Optional[List[str]] = None,
                     violations: Optional[List[str]] = None) -> 'RunSummary':
        passed = sum(1 for r in reports if r.passed)
        worst = max((r.abs_diff for r in reports), default=mpmath.mpf(0))
        return cls(
            total=len(reports),
            passed=passed,
            failed=len(reports) - passed,
            worst_abs_diff=worst,
            elapsed=elapsed,
            reports=list(reports),
            skipped=list(skipped or []),
            violations=list(violations or []),
        )

    @property
    def ok(self) -> bool:
        """No failed report and no run-level violation."""
        return self.failed == 0 and not self.violations

    def to_dict(self) -> Dict[str, Any]:
        """Totals without ``elapsed``, so identical runs serialize identically."""
        result = {
            'total': self.total,
            'passed': self.passed,
            'failed': self.failed,
            'worst_abs_diff': format_real(self.worst_abs_diff, 6),
        }
        if self.skipped:
            result['skipped'] = list(self.skipped)
        if self.violations:
            result['violations'] = list(self.violations)
        return result


def _invoke(payload: Tuple[Callable, Tuple]) -> Any:
    func, args = payload
    return func(*args)


def run_cases(func: Callable, cases: Iterable[Tuple], jobs: int = 1,
              progress: bool = False, desc: Optional[str] = None) -> List[Any]:
    """
    Apply ``func`` to every argument tuple, returning results in case order.

    Args:
        func: Module-level callable (it is pickled when jobs > 1)
        cases: Argument tuples
        jobs: Worker processes; 1 runs in-process
        progress: Show a tqdm bar on stderr
        desc: Progress bar label

    Returns:
        Results in the order of ``cases``
    """
    payloads = [(func, tuple(args)) for args in cases]
    bar = dict(total=len(payloads), desc=desc, disable=not progress, file=sys.stderr)

    if jobs <= 1 or len(payloads) <= 1:
        return [_invoke(p) for p in tqdm(payloads, **bar)]

    chunksize = max(1, len(payloads) // (jobs * 4))
    logger.debug("running %d cases on %d workers (chunksize %d)",
                 len(payloads), jobs, chunksize)
    with Pool(processes=jobs) as pool:
        return list(tqdm(pool.imap(_invoke, payloads, chunksize=chunksize), **bar))
