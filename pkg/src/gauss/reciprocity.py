"""
Quadratic Reciprocity Module

Legendre symbols and integer-exact reciprocity checks over odd primes.
"""

import logging
from typing import List, Tuple

from src.gauss.report import VerificationReport
from src.phasecalc.precision import ComplexHP
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_DIVISION_LIMIT = 10 ** 6


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """
    Primality test.

    Trial division below 10^6, otherwise trial division by small primes
    followed by Miller-Rabin with the first twelve prime bases, which is
    deterministic far beyond 64 bits.
    """
    if not isinstance(n, int) or n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _TRIAL_DIVISION_LIMIT:
        f = 41
        while f * f <= n:
            if n % f == 0 or n % (f + 2) == 0:
                return False
            f += 6
        return True
    return _miller_rabin(n)


def odd_primes_below(limit: int) -> List[int]:
    """Odd primes p with 3 <= p < limit, by sieve."""
    if limit <= 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b'\x00\x00'
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(3, limit) if sieve[i]]


def _require_odd_prime(p: int, name: str = 'p') -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise DomainError(f"{name} must be an odd prime", {name: p})


def legendre_symbol(a: int, p: int) -> int:
    """
    Legendre symbol (a|p) for an odd prime p, by Euler's criterion.

    Returns:
        0 if p divides a, otherwise +1 or -1

    Raises:
        DomainError: If p is not an odd prime
    """
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def verify_reciprocity(p: int, q: int, precision_bits: int = 64) -> VerificationReport:
    """
    Check (p|q)(q|p) = (-1)^((p-1)/2 * (q-1)/2) for distinct odd primes.

    Both sides are integers, so the report is exact with tolerance 0.

    Args:
        p: Odd prime
        q: Odd prime different from p
        precision_bits: Precision tag of the two report sides

    Returns:
        VerificationReport with both Legendre symbols in ``extra``

    Raises:
        DomainError: If p or q is not an odd prime, or p == q
    """
    _require_odd_prime(p, 'p')
    _require_odd_prime(q, 'q')
    if p == q:
        raise DomainError("reciprocity needs distinct primes", {'p': p, 'q': q})

    pq = legendre_symbol(p, q)
    qp = legendre_symbol(q, p)
    sign = -1 if ((p - 1) // 2 * ((q - 1) // 2)) % 2 else 1
    report = VerificationReport.compare(
        'reciprocity', {'p': p, 'q': q},
        ComplexHP.exact_int(pq * qp, precision_bits),
        ComplexHP.exact_int(sign, precision_bits),
        0,
        extra={'legendre_p_q': pq, 'legendre_q_p': qp},
    )
    if not report.passed:
        logger.warning("reciprocity fails for p=%d q=%d", p, q)
    return report


def reciprocity_supplements(p: int) -> Tuple[bool, bool]:
    """
    Check the two supplementary laws for an odd prime p.

    (-1|p) = (-1)^((p-1)/2) and (2|p) = (-1)^((p^2-1)/8).

    Returns:
        (first law holds, second law holds)
    """
    _require_odd_prime(p)
    first = legendre_symbol(-1, p) == (-1) ** ((p - 1) // 2)
    second = legendre_symbol(2, p) == (-1) ** ((p * p - 1) // 8)
    return first, second
