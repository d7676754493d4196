"""
Gauss Sums Module

Quadratic Gauss sums as exact phase sums, the appendix closed forms and
the Landsberg-Schaar verifier.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Any, Optional, Tuple

import mpmath

from src.gauss.report import VerificationReport
from src.phasecalc.phases import CycloSum
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    ComplexHP,
    cyclosum_eval,
    exp_i_pi_quarter,
    real_sqrt,
)
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or value < 1:
            raise DomainError(f"{name} must be a positive integer", {name: value})


@dataclass(frozen=True)
class GaussSumSpec:
    """
    Summand data of sum_{n=0}^{count-1} exp(sign * 2*pi*i * coeff * (n - shift)^2 / modulus).

    These fields are never normalised behind the caller's back: ``reduce`` only
    divides out gcd(coeff, modulus) when the summation range is a whole
    number of periods of the reduced summand.
    """
    coeff: int
    modulus: int
    shift: int = 0
    sign: int = 1
    count: int = 1

    def __post_init__(self):
        if self.count < 1 or self.modulus < 1:
            raise DomainError("count and modulus must be positive",
                              {'count': self.count, 'modulus': self.modulus})
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1", {'sign': self.sign})

    def to_cyclosum(self) -> CycloSum:
        """Accumulate the exact sum by bucketing residues mod ``modulus``."""
        counts: Counter = Counter()
        for n in range(self.count):
            counts[(self.sign * self.coeff * (n - self.shift) ** 2) % self.modulus] += 1
        return CycloSum.from_residues(counts, self.modulus)

    def reduce(self) -> Optional[Tuple['GaussSumSpec', int]]:
        """
        Divide out d = gcd(coeff, modulus) when it provably preserves the sum.

        The reduced summand has period modulus/d in n, so the reduction is
        exact iff that period divides ``count``.

        Returns:
            (reduced summand data, multiplicity) or None when the reduction is unsafe
        """
        d = gcd(self.coeff, self.modulus)
        period = self.modulus // d
        if d == 1 or self.count % period:
            return None
        reduced = GaussSumSpec(self.coeff // d, period, self.shift, self.sign, period)
        return reduced, self.count // period


def quad_gauss_sum(q: int, p: int) -> CycloSum:
    """
    Exact sum_{n=0}^{p-1} exp(2*pi*i * n^2 * q / p).

    Args:
        q: Positive integer
        p: Positive integer (number of terms)

    Returns:
        CycloSum
    """
    _require_positive(q=q, p=p)
    return GaussSumSpec(coeff=q, modulus=p, sign=1, count=p).to_cyclosum()


def dual_gauss_sum(q: int, p: int) -> CycloSum:
    """
    Exact sum_{n=0}^{2q-1} exp(-pi*i * n^2 * p / (2q)).

    The exponent is -n^2 p / (4q) in units of 2*pi.
    """
    _require_positive(q=q, p=p)
    return GaussSumSpec(coeff=p, modulus=4 * q, sign=-1, count=2 * q).to_cyclosum()


def appendix_sum_plus(r: int, s: int) -> CycloSum:
    """Exact sum_{n=0}^{2r-1} exp(2*pi*i * (n - s)^2 / (4r)); evaluates to sqrt(2r*i)."""
    _require_positive(r=r)
    return GaussSumSpec(coeff=1, modulus=4 * r, shift=s, sign=1, count=2 * r).to_cyclosum()


def appendix_sum_minus(r: int, s: int) -> CycloSum:
    """Exact sum_{k=0}^{2r-1} exp(-2*pi*i * (k - s)^2 / (4r)); evaluates to sqrt(2r/i)."""
    _require_positive(r=r)
    return GaussSumSpec(coeff=1, modulus=4 * r, shift=s, sign=-1, count=2 * r).to_cyclosum()


def gauss_sum_magnitude(m: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """
    Classical |sum_{n<m} exp(2*pi*i*n^2/m)|.

    sqrt(m) for odd m, 0 for m = 2 mod 4, sqrt(2m) for m = 0 mod 4.
    """
    _require_positive(m=m)
    with mpmath.workprec(precision_bits):
        if m % 2:
            return mpmath.sqrt(m)
        if m % 4 == 2:
            return mpmath.mpf(0)
        return mpmath.sqrt(2 * m)


def coprime_reduction(p: int, q: int) -> Tuple[int, int, int]:
    """Write p = m*p', q = m*q' with gcd(p', q') = 1; returns (p', q', m)."""
    _require_positive(p=p, q=q)
    m = gcd(p, q)
    return p // m, q // m, m


def default_tolerance(p: int, q: int, precision_bits: int) -> mpmath.mpf:
    """2^(8 - bits) * (p + 2q): scales with the number of summed terms."""
    return mpmath.ldexp(mpmath.mpf(p + 2 * q), 8 - precision_bits)


def landsberg_schaar_sides(q: int, p: int,
                           precision_bits: int = DEFAULT_PRECISION_BITS
                           ) -> Tuple[ComplexHP, ComplexHP, CycloSum, CycloSum]:
    """
    Both sides of the Landsberg-Schaar identity, computed independently.

    Returns:
        (lhs, rhs, exact quadratic sum, exact dual sum) where
        lhs = G(q, p) / sqrt(p) and rhs = exp(i*pi/4) / sqrt(2q) * D(q, p)
    """
    _require_positive(q=q, p=p)
    quad = quad_gauss_sum(q, p)
    dual = dual_gauss_sum(q, p)
    lhs = cyclosum_eval(quad, precision_bits) / real_sqrt(p, precision_bits)
    rhs = (exp_i_pi_quarter(1, precision_bits) * cyclosum_eval(dual, precision_bits)
           / real_sqrt(2 * q, precision_bits))
    return lhs, rhs, quad, dual


def verify_landsberg_schaar(q: int, p: int,
                            precision_bits: int = DEFAULT_PRECISION_BITS,
                            tolerance: Optional[Any] = None) -> VerificationReport:
    """
    Check (1/sqrt p) sum_{n<p} e(n^2 q/p) = e^{i pi/4}/sqrt(2q) sum_{n<2q} e(-n^2 p/(4q)).

    Args:
        q: Positive integer
        p: Positive integer
        precision_bits: Working precision
        tolerance: Override of the default 2^(8-bits)(p+2q)

    Returns:
        VerificationReport with params {p, q} and the coprime reduction in extra
    """
    lhs, rhs, quad, dual = landsberg_schaar_sides(q, p, precision_bits)
    p_red, q_red, m = coprime_reduction(p, q)
    tol = default_tolerance(p, q, precision_bits) if tolerance is None else tolerance
    report = VerificationReport.compare(
        'landsberg_schaar', {'p': p, 'q': q}, lhs, rhs, tol,
        exact_lhs=quad, exact_rhs=dual,
        extra={'p_reduced': p_red, 'q_reduced': q_red, 'm': m},
    )
    if not report.passed:
        logger.warning("Landsberg-Schaar mismatch at p=%d q=%d: %s", p, q, report.abs_diff)
    return report


def verify_appendix(r: int, s: int, sign: int = 1,
                    precision_bits: int = DEFAULT_PRECISION_BITS,
                    tolerance: Optional[Any] = None) -> VerificationReport:
    """
    Compare an appendix sum with its closed form sqrt(2r) * exp(sign * i*pi/4).

    Args:
        r: Positive integer
        s: Shift
        sign: +1 for the plus sum, -1 for the minus sum
        precision_bits: Working precision
        tolerance: Override of 2^(8-bits) * 2r

    Returns:
        VerificationReport
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1", {'sign': sign})
    exact = appendix_sum_plus(r, s) if sign == 1 else appendix_sum_minus(r, s)
    lhs = cyclosum_eval(exact, precision_bits)
    rhs = real_sqrt(2 * r, precision_bits) * exp_i_pi_quarter(sign, precision_bits)
    tol = mpmath.ldexp(mpmath.mpf(2 * r), 8 - precision_bits) if tolerance is None else tolerance
    return VerificationReport.compare(
        'appendix_plus' if sign == 1 else 'appendix_minus',
        {'r': r, 's': s, 'sign': sign}, lhs, rhs, tol, exact_lhs=exact,
    )
