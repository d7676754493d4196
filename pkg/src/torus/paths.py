"""
Discrete Path Integral Module

Cyclic path sums over the grid: brute-force enumeration of intermediate
positions, the winding-number double sum and its closed forms.
"""

import itertools
import logging
from collections import Counter
from math import gcd
from typing import Optional

import mpmath

from src.gauss.gauss_sums import quad_gauss_sum
from src.gauss.report import VerificationReport
from src.phasecalc.phases import CycloSum
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    ComplexHP,
    cyclosum_eval,
    principal_sqrt,
)
from src.torus.kernels import inverse_sqrt_iN
from src.torus.system import TorusSystem, _require_even
from src.utils.errors import DomainError, EnumerationBudgetError


logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BUDGET = 10_000_000


def _check_budget(required: int, budget: int) -> None:
    if required > budget:
        logger.warning("refusing path enumeration: %d paths exceed budget %d", required, budget)
        raise EnumerationBudgetError(required, budget)


def _action_residue(path, N: int) -> int:
    """sum_i (s_i - s_{i-1})^2 mod 2N."""
    return sum((b - a) ** 2 for a, b in zip(path, path[1:])) % (2 * N)


def path_phase_sum(sys: TorusSystem, r: int, s: int,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> CycloSum:
    """
    Exact sum over all N^(p-1) paths r -> s_1 -> ... -> s_{p-1} -> s of
    exp(2*pi*i * sum_i (s_i - s_{i-1})^2 / (2N)).

    Raises:
        EnumerationBudgetError: If N^(p-1) exceeds ``budget``
    """
    N, p = sys.N, sys.p
    _check_budget(N ** (p - 1), budget)

    counts: Counter = Counter()
    for middle in itertools.product(range(N), repeat=p - 1):
        counts[_action_residue((r, *middle, s), N)] += 1
    return CycloSum.from_residues(counts, 2 * N)


def normalization(N: int, p: int, precision_bits: int) -> ComplexHP:
    """(iN)^(-p/2), taken as the p-th power of the principal 1/sqrt(iN)."""
    return inverse_sqrt_iN(N, precision_bits) ** p


def brute_force_path_sum(sys: TorusSystem, r: int, s: int,
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> ComplexHP:
    """
    Kernel entry <r|U^p|s> by enumerating every intermediate path.

    Args:
        sys: Torus system
        r: Final grid index
        s: Initial grid index
        budget: Largest number of paths allowed

    Returns:
        ComplexHP
    """
    bits = sys.precision_bits
    phases = path_phase_sum(sys, r % sys.N, s % sys.N, budget)
    return normalization(sys.N, sys.p, bits) * cyclosum_eval(phases, bits)


def winding_sum(N: int, p: int) -> CycloSum:
    """
    sum_{l<N} sum_{k<p} exp(2*pi*i*(kN + lp)^2 / (2Np)), exactly.

    The cross term 2klNp/(2Np) is an integer, so the sum factorises into
    sum_k exp(2*pi*i*k^2 N/(2p)) times sum_l exp(2*pi*i*l^2 p/(2N)).
    """
    _require_even(N)
    if not isinstance(p, int) or p < 1:
        raise DomainError("p must be a positive integer", {'p': p})
    counts: Counter = Counter()
    for k in range(p):
        for l in range(N):
            counts[(k * N + l * p) ** 2 % (2 * N * p)] += 1
    return CycloSum.from_residues(counts, 2 * N * p)


def winding_closed_form(N: int, p: int,
                        precision_bits: int = DEFAULT_PRECISION_BITS) -> Optional[ComplexHP]:
    """
    Closed form of ``winding_sum`` where one is known.

    p odd, gcd(p, N) = 1:           sqrt(i N p)
    p = 2r, gcd(r, N/2) = 1:        0 if r and N/2 are both odd, else sqrt(4 i N p)

    For N/2 odd the even case reads sqrt(2 (1 + (-1)^r) i N p).

    Returns:
        ComplexHP, or None outside these hypotheses
    """
    _require_even(N)
    q = N // 2
    if p % 2:
        if gcd(p, N) != 1:
            return None
        factor = 1
    else:
        r = p // 2
        if gcd(r, q) != 1:
            return None
        if r % 2 and q % 2:
            return ComplexHP.exact_int(0, precision_bits)
        factor = 4
    arg = ComplexHP.from_value(mpmath.mpc(0, factor * N * p), precision_bits, exact=True)
    return principal_sqrt(arg)


def verify_winding(N: int, p: int, precision_bits: int = DEFAULT_PRECISION_BITS,
                   tolerance=None) -> Optional[VerificationReport]:
    """Compare ``winding_sum`` with its closed form; None when no closed form applies."""
    closed = winding_closed_form(N, p, precision_bits)
    if closed is None:
        return None
    exact = winding_sum(N, p)
    lhs = cyclosum_eval(exact, precision_bits)
    tol = mpmath.ldexp(mpmath.mpf(N * p), 8 - precision_bits) if tolerance is None else tolerance
    return VerificationReport.compare('winding', {'N': N, 'p': p}, lhs, closed, tol,
                                      exact_lhs=exact)


def winding_path_sum(sys: TorusSystem, r: int,
                     budget: int = DEFAULT_ENUMERATION_BUDGET) -> ComplexHP:
    """
    Diagonal kernel entry through the winding-number insertion.

    Computes (iN)^(-p/2) / W * sum_{s_1..s_{p-1}} sum_{l<N}
    exp(2*pi*i * sum_i (s_i - s_{i-1} + l)^2 / (2N)) * sum_{k<p} exp(2*pi*i*k^2 q/p)
    with s_0 = s_p = r and W = winding_sum(N, p). Because the increments of
    a closed path sum to zero, this equals <r|U^p|r> whenever W != 0.

    Raises:
        EnumerationBudgetError: If N^p exceeds ``budget``
        PrecisionExhaustedError: If W evaluates to zero
    """
    N, p, q = sys.N, sys.p, sys.q
    bits = sys.precision_bits
    _check_budget(N ** p, budget)

    counts: Counter = Counter()
    for middle in itertools.product(range(N), repeat=p - 1):
        path = (r, *middle, r)
        for l in range(N):
            action = sum((b - a + l) ** 2 for a, b in zip(path, path[1:]))
            counts[action % (2 * N)] += 1
    shifted = CycloSum.from_residues(counts, 2 * N) * quad_gauss_sum(q, p)

    numerator = normalization(N, p, bits) * cyclosum_eval(shifted, bits)
    return numerator / cyclosum_eval(winding_sum(N, p), bits)


def shifted_gauss_power(N: int, p: int,
                        precision_bits: int = DEFAULT_PRECISION_BITS) -> VerificationReport:
    """
    Compare (sum_{u<N} exp(2*pi*i*u^2/(2N)))^p with (iN)^(p/2).

    This is the collapse of the p-fold sum over shifted variables u_i,
    each of which runs over a full period.
    """
    _require_even(N)
    base = CycloSum.from_residues(Counter(u * u % (2 * N) for u in range(N)), 2 * N)
    lhs = cyclosum_eval(base, precision_bits) ** p
    root = principal_sqrt(ComplexHP.from_value(mpmath.mpc(0, N), precision_bits, exact=True))
    rhs = root ** p
    tol = lhs.err_bound + rhs.err_bound
    return VerificationReport.compare('shifted_gauss_power', {'N': N, 'p': p}, lhs, rhs, tol,
                                      exact_lhs=base)
