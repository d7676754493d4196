"""
Controlled Precision Module

Arbitrary precision complex values that carry an a priori error bound,
plus evaluation of exact phase sums into them.

Error propagation rule (asserted by the test suite):
    err(a + b) = err(a) + err(b)
    err(a * b) = |a| err(b) + |b| err(a) + err(a) err(b)
    err(a / b) = (err(a) + |a/b| err(b)) / (|b| - err(b))
    err(sqrt z) = err(z) / sqrt(|z| - err(z))
and every operation adds one rounding term 2^(1 - bits) * |result|.
Computations run with GUARD_BITS extra bits so the rounding terms are
conservative.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Tuple, Union

import mpmath

from src.phasecalc.phases import CycloSum, PhaseRational
from src.utils.errors import DomainError, PrecisionExhaustedError


logger = logging.getLogger(__name__)

DEFAULT_PRECISION_BITS = 256
GUARD_BITS = 32
MIN_EVAL_BITS = 16

Number = Union[int, float, complex, str, mpmath.mpf, mpmath.mpc]


def rounding_term(magnitude: Any, precision_bits: int) -> mpmath.mpf:
    """One rounding unit, 2^(1 - bits) * magnitude."""
    return mpmath.ldexp(mpmath.mpf(magnitude), 1 - precision_bits)


@dataclass(frozen=True)
class ComplexHP:
    """
    A complex number at ``precision_bits`` nominal precision.

    ``err_bound`` is a rigorous-by-construction upper bound on the distance
    between the stored value and the exact quantity it approximates.
    """
    re: mpmath.mpf
    im: mpmath.mpf
    precision_bits: int
    err_bound: mpmath.mpf = mpmath.mpf(0)

    def __post_init__(self):
        if self.precision_bits < 1:
            raise DomainError("precision_bits must be positive",
                              {'precision_bits': self.precision_bits})
        if self.err_bound < 0:
            raise DomainError("err_bound must be nonnegative",
                              {'err_bound': self.err_bound})

    @classmethod
    def from_value(cls, value: Number, precision_bits: int = DEFAULT_PRECISION_BITS,
                   err_bound: Any = None, exact: bool = False) -> 'ComplexHP':
        """
        Wrap a number.

        Args:
            value: Anything mpmath can convert (ints, floats, strings, mpc)
            precision_bits: Nominal precision
            err_bound: Explicit error bound; defaults to one rounding unit
            exact: Declare the value exact (err_bound = 0)

        Returns:
            ComplexHP
        """
        with mpmath.workprec(precision_bits + GUARD_BITS):
            z = mpmath.mpc(mpmath.mpmathify(value))
            if exact:
                err = mpmath.mpf(0)
            elif err_bound is not None:
                err = mpmath.mpf(err_bound)
            else:
                err = rounding_term(abs(z), precision_bits)
            return cls(z.real, z.imag, precision_bits, err)

    @classmethod
    def exact_int(cls, value: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> 'ComplexHP':
        return cls.from_value(int(value), precision_bits, exact=True)

    @property
    def value(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)

    def magnitude(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return abs(self.value)

    def __abs__(self) -> mpmath.mpf:
        return self.magnitude()

    def to_complex(self) -> complex:
        return complex(self.value)

    def _coerce(self, other: Any) -> 'ComplexHP':
        if isinstance(other, ComplexHP):
            return other
        if isinstance(other, int):
            return ComplexHP.exact_int(other, self.precision_bits)
        return ComplexHP.from_value(other, self.precision_bits)

    def __add__(self, other: Any) -> 'ComplexHP':
        other = self._coerce(other)
        bits = min(self.precision_bits, other.precision_bits)
        with mpmath.workprec(bits + GUARD_BITS):
            z = self.value + other.value
            err = self.err_bound + other.err_bound + rounding_term(abs(z), bits)
            return ComplexHP(z.real, z.imag, bits, err)

    __radd__ = __add__

    def __neg__(self) -> 'ComplexHP':
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return ComplexHP(-self.re, -self.im, self.precision_bits, self.err_bound)

    def __sub__(self, other: Any) -> 'ComplexHP':
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> 'ComplexHP':
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> 'ComplexHP':
        other = self._coerce(other)
        bits = min(self.precision_bits, other.precision_bits)
        with mpmath.workprec(bits + GUARD_BITS):
            z = self.value * other.value
            err = (abs(self.value) * other.err_bound
                   + abs(other.value) * self.err_bound
                   + self.err_bound * other.err_bound
                   + rounding_term(abs(z), bits))
            return ComplexHP(z.real, z.imag, bits, err)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'ComplexHP':
        other = self._coerce(other)
        bits = min(self.precision_bits, other.precision_bits)
        with mpmath.workprec(bits + GUARD_BITS):
            denom = abs(other.value)
            if denom <= other.err_bound:
                raise PrecisionExhaustedError(
                    "divisor indistinguishable from zero",
                    {'precision_bits': bits}
                )
            z = self.value / other.value
            err = ((self.err_bound + abs(z) * other.err_bound) / (denom - other.err_bound)
                   + rounding_term(abs(z), bits))
            return ComplexHP(z.real, z.imag, bits, err)

    def __rtruediv__(self, other: Any) -> 'ComplexHP':
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> 'ComplexHP':
        """Integer power by repeated multiplication (negative exponents invert)."""
        if not isinstance(exponent, int):
            raise DomainError("only integer powers are supported", {'exponent': exponent})
        result = ComplexHP.exact_int(1, self.precision_bits)
        for _ in range(abs(exponent)):
            result = result * self
        if exponent < 0:
            result = ComplexHP.exact_int(1, self.precision_bits) / result
        return result

    def conjugate(self) -> 'ComplexHP':
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return ComplexHP(self.re, -self.im, self.precision_bits, self.err_bound)

    def with_precision(self, precision_bits: int) -> 'ComplexHP':
        """Relabel the nominal precision, adding a rounding unit when lowering it."""
        if precision_bits >= self.precision_bits:
            return ComplexHP(self.re, self.im, precision_bits, self.err_bound)
        with mpmath.workprec(precision_bits + GUARD_BITS):
            err = self.err_bound + rounding_term(abs(self.value), precision_bits)
            return ComplexHP(+self.re, +self.im, precision_bits, err)

    def distance(self, other: Any) -> mpmath.mpf:
        """|self - other| computed at working precision (bounds not added)."""
        other = self._coerce(other)
        bits = max(self.precision_bits, other.precision_bits)
        with mpmath.workprec(bits + GUARD_BITS):
            return abs(self.value - other.value)

    def is_close(self, other: Any, tolerance: Any) -> bool:
        return self.distance(other) <= mpmath.mpf(tolerance)

    def __repr__(self) -> str:
        return (f"ComplexHP({mpmath.nstr(self.value, 20)}, bits={self.precision_bits}, "
                f"err<={mpmath.nstr(self.err_bound, 3)})")


@lru_cache(maxsize=65536)
def _unit_phase_parts(num: int, den: int, bits: int) -> Tuple[mpmath.mpf, mpmath.mpf]:
    with mpmath.workprec(bits):
        z = mpmath.expjpi(mpmath.mpf(2 * num) / den)
        return z.real, z.imag


def unit_phase(phase: PhaseRational, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """exp(2*pi*i*phase) as a ComplexHP with one rounding unit of error."""
    re, im = _unit_phase_parts(phase.num, phase.den, precision_bits + GUARD_BITS)
    return ComplexHP(re, im, precision_bits, rounding_term(1, precision_bits))


def cyclosum_eval(s: CycloSum, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """
    Evaluate an exact phase sum once, at the requested precision.

    Args:
        s: Exact sum
        precision_bits: Nominal precision, at least MIN_EVAL_BITS

    Returns:
        ComplexHP with err_bound = terms * total|coeff| * 2^(3 - bits)

    Raises:
        DomainError: If precision_bits is below the minimum
    """
    if precision_bits < MIN_EVAL_BITS:
        raise DomainError(
            f"precision_bits must be at least {MIN_EVAL_BITS}",
            {'precision_bits': precision_bits}
        )

    work = precision_bits + GUARD_BITS
    with mpmath.workprec(work):
        parts = [_unit_phase_parts(phase.num, phase.den, work) for phase, _ in s.terms]
        re = mpmath.fsum(coeff * p[0] for (_, coeff), p in zip(s.terms, parts))
        im = mpmath.fsum(coeff * p[1] for (_, coeff), p in zip(s.terms, parts))
        err = mpmath.ldexp(mpmath.mpf(len(s) * s.total_weight), 3 - precision_bits)
        return ComplexHP(re, im, precision_bits, err)


def principal_sqrt(z: ComplexHP) -> ComplexHP:
    """
    Principal square root, argument in (-pi/2, pi/2].

    sqrt(i*x) = exp(i*pi/4)*sqrt(x) for real x > 0 and sqrt(-x) = i*sqrt(x).

    Raises:
        PrecisionExhaustedError: If z cannot be distinguished from zero
    """
    bits = z.precision_bits
    with mpmath.workprec(bits + GUARD_BITS):
        size = abs(z.value)
        if size == 0 or size <= z.err_bound:
            raise PrecisionExhaustedError(
                "precision exhausted: argument of sqrt indistinguishable from 0",
                {'precision_bits': bits, 'err_bound': mpmath.nstr(z.err_bound, 5)}
            )
        if z.re < 0 and abs(z.im) <= z.err_bound:
            logger.debug("sqrt argument within error of the branch cut: %s", z)
        root = mpmath.sqrt(z.value)
        err = z.err_bound / mpmath.sqrt(size - z.err_bound) + rounding_term(abs(root), bits)
        return ComplexHP(root.real, root.imag, bits, err)


def real_sqrt(x: Number, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """Square root of an exact nonnegative integer or rational string."""
    return principal_sqrt(ComplexHP.from_value(x, precision_bits, exact=isinstance(x, int)))


def exp_i_pi_quarter(sign: int = 1, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """exp(+-i*pi/4)."""
    return unit_phase(PhaseRational.of(sign, 8), precision_bits)
