"""
Exact Phase Module

Rational phases exp(2*pi*i*r) and exact integer-weighted sums of them.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from src.utils.errors import DomainError


@dataclass(frozen=True)
class PhaseRational:
    """
    The unit phase exp(2*pi*i*num/den) with num/den reduced into [0, 1).

    Instances are canonical, so equal phases compare and hash equal.
    Use ``PhaseRational.of`` to build from arbitrary integers.
    """
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise DomainError("phase denominator must be positive", {'den': self.den})
        if not 0 <= self.num < self.den or gcd(self.num, self.den) != 1:
            raise DomainError("non-canonical phase; use PhaseRational.of",
                              {'num': self.num, 'den': self.den})

    @classmethod
    def of(cls, num: int, den: int = 1) -> 'PhaseRational':
        """Reduce ``num/den`` mod 1 into canonical form."""
        if den == 0:
            raise DomainError("phase denominator must be nonzero", {'num': num})
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        return cls(num // g, den // g)

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> 'PhaseRational':
        value = Fraction(value)
        return cls.of(value.numerator, value.denominator)

    @classmethod
    def zero(cls) -> 'PhaseRational':
        return cls(0, 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: 'PhaseRational') -> 'PhaseRational':
        return phase_add(self, other)

    def __neg__(self) -> 'PhaseRational':
        return phase_neg(self)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def phase_add(a: PhaseRational, b: PhaseRational) -> PhaseRational:
    """
    Add two phases mod 1 (multiply the unit complex numbers they stand for).

    Args:
        a: First phase
        b: Second phase

    Returns:
        Canonical phase (a + b) mod 1
    """
    return PhaseRational.of(a.num * b.den + b.num * a.den, a.den * b.den)


def phase_neg(a: PhaseRational) -> PhaseRational:
    """Additive inverse mod 1, i.e. the complex conjugate phase."""
    return PhaseRational.of(-a.num, a.den)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class CycloSum:
    """
    Exact sum of unit phases with integer multiplicities.

    ``terms`` maps canonical phases to nonzero integer coefficients and is
    stored as a tuple sorted by phase value, so two sums with the same
    value-by-bucket are equal regardless of how they were accumulated.
    """
    terms: Tuple[Tuple[PhaseRational, int], ...] = ()
    order: int = field(default=1)

    @classmethod
    def from_mapping(cls, mapping: Mapping[PhaseRational, int]) -> 'CycloSum':
        """Build a canonical sum, dropping zero coefficients."""
        items = sorted(
            ((phase, coeff) for phase, coeff in mapping.items() if coeff != 0),
            key=lambda item: item[0].as_fraction()
        )
        order = 1
        for phase, _ in items:
            order = _lcm(order, phase.den)
        return cls(tuple(items), order)

    @classmethod
    def from_phases(cls, phases: Iterable[PhaseRational]) -> 'CycloSum':
        """Sum each phase with coefficient one."""
        return cls.from_mapping(Counter(phases))

    @classmethod
    def from_residues(cls, counts: Mapping[int, int], modulus: int) -> 'CycloSum':
        """
        Build from integer residues: ``counts[a]`` copies of exp(2*pi*i*a/modulus).

        This is the fast path for long sums whose exponents share one
        denominator; residues are bucketed before any reduction happens.
        """
        buckets: Dict[PhaseRational, int] = {}
        for residue, count in counts.items():
            phase = PhaseRational.of(residue, modulus)
            buckets[phase] = buckets.get(phase, 0) + count
        return cls.from_mapping(buckets)

    @classmethod
    def single(cls, phase: PhaseRational, coeff: int = 1) -> 'CycloSum':
        return cls.from_mapping({phase: coeff})

    def as_dict(self) -> Dict[PhaseRational, int]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[PhaseRational, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def total_weight(self) -> int:
        """Sum of absolute coefficients."""
        return sum(abs(c) for _, c in self.terms)

    def coefficient(self, phase: PhaseRational) -> int:
        return self.as_dict().get(phase, 0)

    def __add__(self, other: 'CycloSum') -> 'CycloSum':
        merged = self.as_dict()
        for phase, coeff in other.terms:
            merged[phase] = merged.get(phase, 0) + coeff
        return CycloSum.from_mapping(merged)

    def __neg__(self) -> 'CycloSum':
        return self.scale(-1)

    def __sub__(self, other: 'CycloSum') -> 'CycloSum':
        return self + (-other)

    def scale(self, k: int) -> 'CycloSum':
        """Multiply every coefficient by the integer ``k``."""
        return CycloSum.from_mapping({phase: coeff * k for phase, coeff in self.terms})

    def __mul__(self, other: 'CycloSum') -> 'CycloSum':
        product: Dict[PhaseRational, int] = {}
        for pa, ca in self.terms:
            for pb, cb in other.terms:
                phase = phase_add(pa, pb)
                product[phase] = product.get(phase, 0) + ca * cb
        return CycloSum.from_mapping(product)

    def rotate(self, phase: PhaseRational) -> 'CycloSum':
        """Multiply the whole sum by one unit phase."""
        return CycloSum.from_mapping({phase_add(p, phase): c for p, c in self.terms})

    def conjugate(self) -> 'CycloSum':
        return CycloSum.from_mapping({phase_neg(p): c for p, c in self.terms})

    def is_zero(self) -> bool:
        """True when the stored form is empty (exact cancellation of equal buckets)."""
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*e({p})" for p, c in self.terms)
