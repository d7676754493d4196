"""
Trace Module

The trace of the full-time evolution operator computed two ways:
in the momentum basis (Method 1) and through the discrete path integral
(Method 2). Their agreement is the Landsberg-Schaar identity.
"""

from collections import Counter

from src.gauss.gauss_sums import coprime_reduction, quad_gauss_sum
from src.phasecalc.phases import CycloSum
from src.phasecalc.precision import ComplexHP, cyclosum_eval, principal_sqrt, real_sqrt
from src.torus.kernels import evolve_by_power
from src.torus.paths import DEFAULT_ENUMERATION_BUDGET, _check_budget, brute_force_path_sum
from src.torus.system import TorusSystem


def trace_method1(sys: TorusSystem) -> CycloSum:
    """
    Tr U^p = sum_{k<N} exp(-i*pi*k^2*p/N), exactly.

    H is diagonal in the momentum basis with E_k t = pi k^2 p / N.
    """
    N = sys.N
    counts = Counter((-k * k * sys.p) % (2 * N) for k in range(N))
    return CycloSum.from_residues(counts, 2 * N)


def trace_method2(sys: TorusSystem) -> ComplexHP:
    """
    Tr U^p from the path integral: (sqrt(2q) / sqrt(ip)) * sum_{k<p} exp(2*pi*i*k^2*q/p).

    The closed form is applied to the coprime pair (p', q') with
    p = m p', q = m q'; the trace of the original system is m times the
    trace of the reduced one.
    """
    bits = sys.precision_bits
    p_red, q_red, m = coprime_reduction(sys.p, sys.q)
    gauss = cyclosum_eval(quad_gauss_sum(q_red, p_red), bits)
    ip = principal_sqrt(ComplexHP.from_value(complex(0, p_red), bits, exact=True))
    return m * real_sqrt(2 * q_red, bits) / ip * gauss


def trace_by_matrix_power(sys: TorusSystem) -> ComplexHP:
    """Trace of the p-fold product of the single-step kernel."""
    return evolve_by_power(sys).trace()


def trace_by_enumeration(sys: TorusSystem, budget: int = DEFAULT_ENUMERATION_BUDGET) -> ComplexHP:
    """
    Sum of brute-force diagonal entries over all N starting points.

    Raises:
        EnumerationBudgetError: If the N^p closed paths exceed ``budget``
    """
    _check_budget(sys.N ** sys.p, budget)
    total = ComplexHP.exact_int(0, sys.precision_bits)
    for r in range(sys.N):
        total = total + brute_force_path_sum(sys, r, r, budget)
    return total
