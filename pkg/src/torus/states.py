"""
State Vector Module

Wave functions on the N-point angle grid and the two orthonormal bases:
angular momentum states f_k and position states b_r.
"""

from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple

import mpmath

from src.phasecalc.phases import PhaseRational
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    ComplexHP,
    real_sqrt,
    unit_phase,
)
from src.utils.errors import DomainError


BASES = ('position', 'momentum')


@dataclass(frozen=True)
class StateVector:
    """
    A vector in the N-dimensional Hilbert space.

    In the ``position`` basis the coefficients are the grid samples
    psi(0), ..., psi(N-1), which are also the expansion coefficients in
    the b_r basis. In the ``momentum`` basis they are the a_k of
    psi = sum_k a_k f_k. Indices are always read mod N.
    """
    coefficients: Tuple[ComplexHP, ...]
    basis: str = 'position'

    def __post_init__(self):
        if self.basis not in BASES:
            raise DomainError(f"unknown basis {self.basis!r}", {'basis': self.basis})
        if not self.coefficients:
            raise DomainError("state vector needs at least one coefficient")

    @classmethod
    def from_values(cls, values: Sequence[Any], basis: str = 'position',
                    precision_bits: int = DEFAULT_PRECISION_BITS) -> 'StateVector':
        coeffs = tuple(
            v if isinstance(v, ComplexHP)
            else ComplexHP.from_value(v, precision_bits, exact=isinstance(v, int))
            for v in values
        )
        return cls(coeffs, basis)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    @property
    def precision_bits(self) -> int:
        return min(c.precision_bits for c in self.coefficients)

    def __getitem__(self, index: int) -> ComplexHP:
        return self.coefficients[index % self.dim]

    def _check_compatible(self, other: 'StateVector') -> None:
        if self.dim != other.dim or self.basis != other.basis:
            raise DomainError(
                "state vectors live in different spaces or bases",
                {'dims': (self.dim, other.dim), 'bases': (self.basis, other.basis)}
            )

    def __add__(self, other: 'StateVector') -> 'StateVector':
        self._check_compatible(other)
        return StateVector(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)), self.basis
        )

    def scale(self, factor: Any) -> 'StateVector':
        return StateVector(tuple(c * factor for c in self.coefficients), self.basis)

    def distance(self, other: 'StateVector') -> mpmath.mpf:
        """Largest coefficientwise distance, after bringing both to one basis."""
        other = change_basis(other, self.basis)
        self._check_compatible(other)
        return max(a.distance(b) for a, b in zip(self.coefficients, other.coefficients))


def overlap(r: int, k: int, N: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> ComplexHP:
    """<r|k> = exp(2*pi*i*k*r/N) / sqrt(N)."""
    return unit_phase(PhaseRational.of(k * r, N), precision_bits) / real_sqrt(N, precision_bits)


def momentum_basis(N: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> List[StateVector]:
    """
    Angular momentum states f_k(theta) = exp(2*pi*i*k*theta/N) / sqrt(N), k = 0..N-1.

    Returned as grid samples (position representation).
    """
    if N < 1:
        raise DomainError("N must be positive", {'N': N})
    return [
        StateVector(tuple(overlap(theta, k, N, precision_bits) for theta in range(N)))
        for k in range(N)
    ]


def position_basis(N: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> List[StateVector]:
    """
    Position states b_r = (1/sqrt N) sum_k <k|r> f_k, which collapse to the
    indicator of grid point r.
    """
    if N < 1:
        raise DomainError("N must be positive", {'N': N})
    return [
        StateVector(tuple(ComplexHP.exact_int(int(j == r), precision_bits) for j in range(N)))
        for r in range(N)
    ]


def inner_product(u: StateVector, v: StateVector) -> ComplexHP:
    """<u|v> = sum_theta conj(u(theta)) v(theta), on grid samples."""
    u = change_basis(u, 'position')
    v = change_basis(v, 'position')
    u._check_compatible(v)
    total = ComplexHP.exact_int(0, min(u.precision_bits, v.precision_bits))
    for a, b in zip(u.coefficients, v.coefficients):
        total = total + a.conjugate() * b
    return total


def change_basis(v: StateVector, target: str) -> StateVector:
    """
    Re-express a state in the ``target`` basis.

    position -> momentum: a_k = <f_k|psi> = sum_theta <k|theta> psi(theta).
    momentum -> position: psi(theta) = sum_k a_k <theta|k>.
    """
    if target not in BASES:
        raise DomainError(f"unknown basis {target!r}", {'basis': target})
    if v.basis == target:
        return v

    N = v.dim
    bits = v.precision_bits
    sign = -1 if target == 'momentum' else 1
    coeffs = []
    for out in range(N):
        total = ComplexHP.exact_int(0, bits)
        for idx, c in enumerate(v.coefficients):
            total = total + c * overlap(sign * out, idx, N, bits)
        coeffs.append(total)
    return StateVector(tuple(coeffs), target)


def position_op_apply(v: StateVector) -> StateVector:
    """
    Apply the exponentiated position operator: b_r -> exp(2*pi*i*r/N) b_r.

    The result is in the position basis.
    """
    v = change_basis(v, 'position')
    N = v.dim
    return StateVector(tuple(
        c * unit_phase(PhaseRational.of(r, N), c.precision_bits)
        for r, c in enumerate(v.coefficients)
    ))
