"""
Theta Function Module

Truncated Jacobi theta sums theta(tau) = sum_n exp(-pi n^2 tau) with a
certified Gaussian tail bound, and the Jacobi identity
theta(tau) = theta(1/tau) / sqrt(tau).
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

import mpmath

from src.gauss.report import VerificationReport
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    GUARD_BITS,
    ComplexHP,
    principal_sqrt,
    rounding_term,
)
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)

MAX_TRUNCATION = 1_000_000


def gaussian_tail_bound(c: Any, start: int) -> mpmath.mpf:
    """
    Majorant of sum_{n >= start} exp(-c n^2) for c > 0, start >= 1.

    With n = start + j, n^2 >= start^2 + 2*start*j, so the tail is bounded
    by the geometric series exp(-c start^2) / (1 - exp(-2 c start)).
    """
    c = mpmath.mpmathify(c)
    if c <= 0 or start < 1:
        raise DomainError("tail bound needs c > 0 and start >= 1",
                          {'c': mpmath.nstr(c, 8), 'start': start})
    return mpmath.exp(-c * start * start) / (1 - mpmath.exp(-2 * c * start))


def smallest_truncation(c: Any, target: Any, offset: int = 1, scale: Any = 1) -> int:
    """
    Smallest M >= 1 with scale * gaussian_tail_bound(c, M + offset) <= target.

    Raises:
        DomainError: If no M below MAX_TRUNCATION is enough
    """
    c = mpmath.mpmathify(c)
    # first guess from exp(-c M^2) = target / scale, then walk up
    guess = mpmath.sqrt(max(mpmath.log(mpmath.mpf(scale) / target), 0) / c)
    M = max(1, int(guess) - offset)
    while scale * gaussian_tail_bound(c, M + offset) > target:
        M += 1
        if M > MAX_TRUNCATION:
            raise DomainError("Gaussian decay too slow for the requested precision",
                              {'c': mpmath.nstr(c, 8)})
    return M


def _to_complex(value: Any) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpmathify(value))


@dataclass(frozen=True)
class ThetaParams:
    """
    Argument and truncation of a theta sum.

    ``tail_bound`` majorises 2 * sum_{n > M} exp(-pi n^2 Re tau), which
    bounds the discarded terms on both sides of n = 0.
    """
    tau: mpmath.mpc
    truncation: int
    tail_bound: Optional[mpmath.mpf] = None
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            tau = _to_complex(self.tau)
            object.__setattr__(self, 'tau', tau)
            if tau.real <= 0:
                raise DomainError("theta sum needs Re(tau) > 0",
                                  {'tau': mpmath.nstr(tau, 10)})
            if not isinstance(self.truncation, int) or self.truncation < 1:
                raise DomainError("truncation must be a positive integer",
                                  {'truncation': self.truncation})
            bound = 2 * gaussian_tail_bound(mpmath.pi * tau.real, self.truncation + 1)
            if self.tail_bound is None:
                object.__setattr__(self, 'tail_bound', bound)
            elif self.tail_bound < bound:
                raise DomainError("tail_bound is below the Gaussian majorant",
                                  {'tail_bound': mpmath.nstr(self.tail_bound, 5)})

    @classmethod
    def auto(cls, tau: Any, precision_bits: int = DEFAULT_PRECISION_BITS) -> 'ThetaParams':
        """Pick the smallest truncation whose tail bound is below 2^-precision_bits."""
        with mpmath.workprec(precision_bits + GUARD_BITS):
            tau = _to_complex(tau)
            if tau.real <= 0:
                raise DomainError("theta sum needs Re(tau) > 0",
                                  {'tau': mpmath.nstr(tau, 10)})
            target = mpmath.ldexp(1, -precision_bits)
            M = smallest_truncation(mpmath.pi * tau.real, target, offset=1, scale=2)
        return cls(tau, M, None, precision_bits)


def theta_truncated(params: ThetaParams) -> ComplexHP:
    """
    sum_{n=-M}^{M} exp(-pi n^2 tau); the error bound includes the tail.

    Terms are generated by the recurrence x^{(n+1)^2} = x^{n^2} x^{2n+1}
    with x = exp(-pi tau).
    """
    bits = params.precision_bits
    M = params.truncation
    with mpmath.workprec(bits + GUARD_BITS):
        x = mpmath.exp(-mpmath.pi * params.tau)
        x2 = x * x
        term, ratio = mpmath.mpc(1), x
        total, magnitude = mpmath.mpc(0), mpmath.mpf(0)
        for _ in range(M):
            term *= ratio
            ratio *= x2
            total += term
            magnitude += abs(term)
        value = 1 + 2 * total
        err = params.tail_bound + rounding_term(4 * (M + 1) * (1 + 2 * magnitude), bits)
        return ComplexHP(value.real, value.imag, bits, err)


def theta_at(tau: Any, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """theta(tau) with automatic truncation."""
    return theta_truncated(ThetaParams.auto(tau, precision_bits))


def jacobi_sides(tau: Any, precision_bits: int = DEFAULT_PRECISION_BITS):
    """
    Both sides of the Jacobi identity, summed independently.

    Returns:
        (theta(tau), theta(1/tau) / sqrt(tau))
    """
    with mpmath.workprec(precision_bits + GUARD_BITS):
        tau = _to_complex(tau)
        inverse = 1 / tau
    lhs = theta_at(tau, precision_bits)
    tau_hp = ComplexHP.from_value(tau, precision_bits, exact=True)
    rhs = theta_at(inverse, precision_bits) / principal_sqrt(tau_hp)
    return lhs, rhs


def verify_jacobi(params: ThetaParams, tolerance: Any = None) -> VerificationReport:
    """
    Compare theta(tau) with theta(1/tau) / sqrt(tau) (principal root).

    The left side uses ``params`` as given; the right side picks its own
    truncation. The default tolerance is the sum of both error bounds,
    tails included.
    """
    bits = params.precision_bits
    with mpmath.workprec(bits + GUARD_BITS):
        inverse = 1 / params.tau
    lhs = theta_truncated(params)
    tau_hp = ComplexHP.from_value(params.tau, bits, exact=True)
    rhs = theta_at(inverse, bits) / principal_sqrt(tau_hp)
    tol = lhs.err_bound + rhs.err_bound if tolerance is None else tolerance
    return VerificationReport.compare(
        'jacobi', {'tau': params.tau}, lhs, rhs, tol,
        extra={'truncation': params.truncation},
    )
