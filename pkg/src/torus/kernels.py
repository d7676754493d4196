"""
Evolution Kernel Module

Matrix elements <s|exp(-iH dt)|s'> of the free evolution on the grid, in
closed form and in spectral form, and their composition over p steps.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

import mpmath
import numpy as np

from src.phasecalc.phases import CycloSum, PhaseRational
from src.phasecalc.precision import (
    GUARD_BITS,
    ComplexHP,
    cyclosum_eval,
    principal_sqrt,
    rounding_term,
    unit_phase,
)
from src.torus.system import TorusSystem, _require_even
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)


@dataclass
class KernelMatrix:
    """
    N x N kernel in the position basis.

    ``entries`` is a numpy object array of mpmath mpc values;
    ``err_bound`` bounds the error of every entry.
    """
    dim: int
    entries: np.ndarray
    precision_bits: int
    err_bound: mpmath.mpf
    steps: int = 1
    basis: str = 'position'

    def entry(self, r: int, s: int) -> ComplexHP:
        z = self.entries[r % self.dim, s % self.dim]
        return ComplexHP(z.real, z.imag, self.precision_bits, self.err_bound)

    def _max_abs(self) -> mpmath.mpf:
        return max(abs(z) for z in self.entries.flat)

    def __matmul__(self, other: 'KernelMatrix') -> 'KernelMatrix':
        """
        Matrix product with entrywise error
        N (|A| err(B) + |B| err(A) + err(A) err(B)) plus one rounding term per entry.
        """
        if self.dim != other.dim:
            raise DomainError("dimension mismatch", {'left': self.dim, 'right': other.dim})
        bits = min(self.precision_bits, other.precision_bits)
        n = self.dim
        with mpmath.workprec(bits + GUARD_BITS):
            product = self.entries @ other.entries
            max_a, max_b = self._max_abs(), other._max_abs()
            err = n * (max_a * other.err_bound + max_b * self.err_bound
                       + self.err_bound * other.err_bound)
            err += rounding_term(2 * n * max_a * max_b, bits)
        return KernelMatrix(n, product, bits, err, self.steps + other.steps, self.basis)

    def conjugate_transpose(self) -> 'KernelMatrix':
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            entries = np.vectorize(mpmath.conj, otypes=[object])(self.entries.T)
        return KernelMatrix(self.dim, entries, self.precision_bits, self.err_bound,
                            self.steps, self.basis)

    def trace(self) -> ComplexHP:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            total = mpmath.fsum(self.entries[i, i] for i in range(self.dim))
            err = self.dim * self.err_bound + rounding_term(abs(total) + self.dim,
                                                           self.precision_bits)
            return ComplexHP(total.real, total.imag, self.precision_bits, err)

    def unitarity_defect(self) -> mpmath.mpf:
        """max_ij |(U U^dagger)_ij - delta_ij|."""
        gram = self @ self.conjugate_transpose()
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return max(
                abs(gram.entries[i, j] - (1 if i == j else 0))
                for i in range(self.dim) for j in range(self.dim)
            )

    def max_modulus_deviation(self) -> mpmath.mpf:
        """max_ij ||U_ij| - 1/sqrt(N)|."""
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            target = 1 / mpmath.sqrt(self.dim)
            return max(abs(abs(z) - target) for z in self.entries.flat)

    def max_distance(self, other: 'KernelMatrix') -> mpmath.mpf:
        with mpmath.workprec(max(self.precision_bits, other.precision_bits) + GUARD_BITS):
            return max(abs(a - b) for a, b in zip(self.entries.flat, other.entries.flat))

    def is_translation_invariant(self, tolerance: Optional[mpmath.mpf] = None) -> bool:
        """True when entry (r, s) depends on (r - s) mod N only, within ``tolerance``."""
        tol = 2 * self.err_bound if tolerance is None else tolerance
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return all(
                abs(self.entries[r, s] - self.entries[(r - s) % self.dim, 0]) <= tol
                for r in range(self.dim) for s in range(self.dim)
            )

    def to_numpy(self) -> np.ndarray:
        """complex128 copy, for inspection."""
        return np.array([[complex(z) for z in row] for row in self.entries], dtype=complex)


def single_step_phase(N: int, s: int, s_prev: int) -> CycloSum:
    """Exact phase exp(2*pi*i*(s - s')^2 / (2N)) of one closed-form kernel entry."""
    return CycloSum.single(PhaseRational.of((s - s_prev) ** 2, 2 * N))


def is_circulant_exact(N: int) -> bool:
    """Check that every single-step phase key depends on (s - s') mod N only."""
    _require_even(N)
    return all(
        single_step_phase(N, s, s_prev) == single_step_phase(N, (s - s_prev) % N, 0)
        for s in range(N) for s_prev in range(N)
    )


def inverse_sqrt_iN(N: int, precision_bits: int) -> ComplexHP:
    """1/sqrt(iN), principal branch."""
    iN = ComplexHP.from_value(mpmath.mpc(0, N), precision_bits, exact=True)
    return 1 / principal_sqrt(iN)


def _circulant(N: int, column: Dict[int, ComplexHP], steps: int,
               precision_bits: int) -> KernelMatrix:
    entries = np.empty((N, N), dtype=object)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        values = {d: v.value for d, v in column.items()}
    for r in range(N):
        for s in range(N):
            entries[r, s] = values[(r - s) % N]
    err = max(v.err_bound for v in column.values())
    return KernelMatrix(N, entries, precision_bits, err, steps)


def single_step_kernel(sys: TorusSystem) -> KernelMatrix:
    """
    One time step: entry(s, s') = exp(2*pi*i*(s - s')^2/(2N)) / sqrt(iN).

    Raises:
        DomainError: For odd N
    """
    N = sys.N
    _require_even(N)
    bits = sys.precision_bits
    norm = inverse_sqrt_iN(N, bits)
    column = {
        d: norm * unit_phase(PhaseRational.of(d * d, 2 * N), bits) for d in range(N)
    }
    return _circulant(N, column, 1, bits)


def spectral_kernel_entry(N: int, steps: int, r: int, s: int) -> CycloSum:
    """
    N * <r|U^steps|s> = sum_k exp(2*pi*i*(k(r - s)/N - k^2 steps/(2N))), exactly.
    """
    counts: Dict[int, int] = {}
    for k in range(N):
        residue = (2 * k * (r - s) - k * k * steps) % (2 * N)
        counts[residue] = counts.get(residue, 0) + 1
    return CycloSum.from_residues(counts, 2 * N)


def spectral_kernel_matrix(sys: TorusSystem, steps: Optional[int] = None) -> KernelMatrix:
    """
    Kernel from the momentum basis, where H is diagonal:
    <r|U^steps|s> = (1/N) sum_k <r|k><k|s> exp(-i*pi*k^2*steps/N).

    Args:
        sys: Torus system
        steps: Number of time steps (defaults to sys.p)

    Returns:
        KernelMatrix
    """
    N = sys.N
    steps = sys.p if steps is None else steps
    bits = sys.precision_bits
    column = {
        d: cyclosum_eval(spectral_kernel_entry(N, steps, d, 0), bits) / N
        for d in range(N)
    }
    return _circulant(N, column, steps, bits)


def evolve_by_power(sys: TorusSystem) -> KernelMatrix:
    """The full-time kernel as the p-fold product of the single-step kernel."""
    step = single_step_kernel(sys)
    result = step
    for _ in range(sys.p - 1):
        result = result @ step
    logger.debug("composed %d steps for N=%d, err<=%s", sys.p, sys.N,
                 mpmath.nstr(result.err_bound, 5))
    return result
