"""
Torus System Module

Parameters of the discrete cyclic quantum system on the toroidal phase space.
"""

from dataclasses import dataclass
from typing import Any, List

import mpmath

from src.phasecalc.precision import DEFAULT_PRECISION_BITS
from src.utils.errors import DomainError


def _require_even(N: int) -> None:
    if not isinstance(N, int) or N < 2 or N % 2:
        raise DomainError(
            "N must be a positive even integer (the derivation proceeds assuming N is even)",
            {'N': N}
        )


def allowed_times(N: int, I: Any = 1, m_max: int = 1,
                  precision_bits: int = DEFAULT_PRECISION_BITS) -> List[mpmath.mpf]:
    """
    Times at which the system may be looked at: t_m = 2*pi*m*I / (N*hbar), hbar = 1.

    Args:
        N: Even number of grid points
        I: Moment of inertia (positive)
        m_max: Largest m (inclusive)
        precision_bits: Working precision

    Returns:
        [t_1, ..., t_{m_max}]

    Raises:
        DomainError: For odd N or nonpositive I
    """
    _require_even(N)
    with mpmath.workprec(precision_bits):
        inertia = mpmath.mpmathify(I)
        if inertia <= 0:
            raise DomainError("moment of inertia must be positive", {'I': I})
        unit = 2 * mpmath.pi * inertia / N
        return [unit * m for m in range(1, m_max + 1)]


@dataclass(frozen=True)
class TorusSystem:
    """
    The N = 2q dimensional system evolved for p time steps.

    Units have hbar = 1 and I = 1, so the evolution time is the allowed
    time with m = p.
    """
    q: int
    p: int
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        for name in ('q', 'p'):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DomainError(f"{name} must be a positive integer", {name: value})

    @classmethod
    def from_dimension(cls, N: int, p: int,
                       precision_bits: int = DEFAULT_PRECISION_BITS) -> 'TorusSystem':
        _require_even(N)
        return cls(N // 2, p, precision_bits)

    @property
    def N(self) -> int:
        return 2 * self.q

    @property
    def I(self) -> int:
        return 1

    @property
    def hbar(self) -> int:
        return 1

    @property
    def t(self) -> mpmath.mpf:
        return allowed_times(self.N, self.I, self.p, self.precision_bits)[-1]

    @property
    def dt(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision_bits):
            return self.t / self.p
