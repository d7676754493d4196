"""
Regularized Limit Module

Approach the Landsberg-Schaar identity from the Jacobi identity at
tau = 2iq/p + eps, eps -> 0+.
"""

import logging
from math import ceil, log
from typing import Any, List, Sequence

import mpmath

from src.cylinder.theta import jacobi_sides
from src.gauss.gauss_sums import landsberg_schaar_sides, quad_gauss_sum
from src.gauss.report import VerificationReport
from src.phasecalc.phases import CycloSum
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    GUARD_BITS,
    ComplexHP,
    cyclosum_eval,
    principal_sqrt,
    real_sqrt,
)
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)

DEFAULT_MAX_BITS = 16384


def _shifted_sum(q: int, p: int, m: int) -> CycloSum:
    """sum_{a<p} exp(2*pi*i*(a*m - q*a^2)/p)."""
    counts = {}
    for a in range(p):
        residue = (a * m - q * a * a) % p
        counts[residue] = counts.get(residue, 0) + 1
    return CycloSum.from_residues(counts, p)


def leading_correction_index(q: int, p: int) -> int:
    """
    Smallest m >= 1 whose term survives in the Poisson expansion
    sqrt(eps) theta(2iq/p + eps) = (1/p) sum_m exp(-pi m^2/(p^2 eps)) S(m).

    The correction to the eps -> 0 limit is of size exp(-pi m^2/(p^2 eps)).
    """
    for m in range(1, p + 1):
        if abs(cyclosum_eval(_shifted_sum(q, p, m), 64).to_complex()) > 1e-6:
            return m
    return p


def working_bits(q: int, p: int, eps: Any, precision_bits: int,
                 max_bits: int = DEFAULT_MAX_BITS) -> int:
    """
    Precision at which the eps-correction is resolved with margin:
    precision_bits + 1.5 * log2(exp(pi m^2/(p^2 eps))) + 64, capped at max_bits.
    """
    m = leading_correction_index(q, p)
    decay_bits = ceil(1.5 * mpmath.pi * m * m / (p * p * float(mpmath.mpmathify(eps)) * log(2)))
    bits = precision_bits + decay_bits + 64
    if bits > max_bits:
        logger.warning("limit at eps=%s needs %d bits, capped at %d", eps, bits, max_bits)
        return max_bits
    return bits


def regularized_ls_limit(q: int, p: int, eps_list: Sequence[Any],
                         precision_bits: int = DEFAULT_PRECISION_BITS,
                         max_bits: int = DEFAULT_MAX_BITS) -> List[VerificationReport]:
    """
    Evaluate both sides of the Jacobi identity at tau = 2iq/p + eps.

    With L(eps) = sqrt(p) conj(sqrt(eps) theta(tau)) and
    R(eps) = sqrt(p) conj(sqrt(eps) theta(1/tau) / sqrt(tau)), L tends to
    the left side of the Landsberg-Schaar identity and R to its right side.
    Each report compares L with R and records
    gap = |L(eps) - G(q, p)/sqrt(p)|, which decreases to 0 like
    exp(-pi m^2/(p^2 eps)).

    Args:
        q: Positive integer
        p: Positive integer
        eps_list: Strictly decreasing positive regularizers
        precision_bits: Requested precision; raised per eps as needed
        max_bits: Cap for the raised precision

    Returns:
        One VerificationReport per eps, in order

    Raises:
        DomainError: For eps <= 0 or a list that is not strictly decreasing
    """
    for name, value in (('q', q), ('p', p)):
        if not isinstance(value, int) or value < 1:
            raise DomainError(f"{name} must be a positive integer", {name: value})

    with mpmath.workprec(precision_bits + GUARD_BITS):
        values = [mpmath.mpf(mpmath.mpmathify(e)) for e in eps_list]
    if not values:
        raise DomainError("eps_list is empty")
    for eps in values:
        if eps <= 0:
            raise DomainError(
                "eps must be positive; at eps = 0 the theta series only "
                "converges in the distribution sense",
                {'eps': mpmath.nstr(eps, 10)}
            )
    for prev, cur in zip(values, values[1:]):
        if not cur < prev:
            raise DomainError("eps_list must be strictly decreasing",
                              {'eps': [mpmath.nstr(v, 10) for v in values]})

    reports = []
    for raw, eps in zip(eps_list, values):
        bits = working_bits(q, p, eps, precision_bits, max_bits)
        logger.info("limit q=%d p=%d eps=%s at %d bits", q, p, raw, bits)
        with mpmath.workprec(bits + GUARD_BITS):
            eps_hp = mpmath.mpmathify(raw) if isinstance(raw, str) else mpmath.mpf(raw)
            tau = mpmath.mpc(eps_hp, mpmath.mpf(2 * q) / p)

        theta_lhs, theta_rhs = jacobi_sides(tau, bits)
        scale = (real_sqrt(p, bits)
                 * principal_sqrt(ComplexHP.from_value(eps_hp, bits, exact=True)))
        lhs = (scale * theta_lhs).conjugate()
        rhs = (scale * theta_rhs).conjugate()
        exact_lhs, exact_rhs, _, _ = landsberg_schaar_sides(q, p, bits)

        report = VerificationReport.compare(
            'regularized_limit', {'q': q, 'p': p, 'eps': raw if isinstance(raw, str) else eps},
            lhs, rhs, lhs.err_bound + rhs.err_bound,
            exact_lhs=quad_gauss_sum(q, p),
            extra={
                'gap': lhs.distance(exact_lhs),
                'gap_rhs': rhs.distance(exact_rhs),
                'working_bits': bits,
            },
        )
        reports.append(report)
    return reports


def gaps_decreasing(reports: Sequence[VerificationReport]) -> bool:
    """True when the recorded gaps decrease strictly along the list."""
    gaps = [r.extra['gap'] for r in reports]
    return all(b < a for a, b in zip(gaps, gaps[1:]))


def gap_violations(reports: Sequence[VerificationReport]) -> List[str]:
    """
    Tag each report after the first with ``extra['monotone']``.

    Report pass flags are left alone; a gap that fails to shrink is
    returned as a note for the run summary instead.

    Returns:
        One note per eps whose gap is not below the previous one
    """
    notes = []
    for prev, cur in zip(reports, reports[1:]):
        monotone = bool(cur.extra['gap'] < prev.extra['gap'])
        cur.extra['monotone'] = monotone
        if not monotone:
            logger.warning("gap did not decrease at eps=%s", cur.params['eps'])
            notes.append(f"gap not decreasing at eps={cur.params['eps']}")
    return notes
