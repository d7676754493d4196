#!/usr/bin/env python3
"""
Demonstration Script for Torus Gauss

This script walks through the main verifications:
1. The Landsberg-Schaar identity for a few (p, q)
2. The trace of the torus evolution operator computed four ways
3. The Jacobi identity and the regularized limit on the cylinder
"""

import os
import sys
from pathlib import Path

import mpmath

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cylinder import regularized_ls_limit, theta_at, ThetaParams, verify_jacobi
from src.gauss import verify_landsberg_schaar
from src.harness import VerificationHarness
from src.phasecalc import cyclosum_eval
from src.torus import (
    TorusSystem,
    trace_by_enumeration,
    trace_by_matrix_power,
    trace_method1,
    trace_method2,
)


def print_header(title: str):
    """Print a formatted header."""
    print("\n" + "=" * 70)
    print(f"  {title}")
    print("=" * 70 + "\n")


def print_subheader(title: str):
    """Print a formatted subheader."""
    print(f"\n--- {title} ---\n")


def demo_landsberg_schaar():
    """
    EXAMPLE 1: Landsberg-Schaar identity.

    Both sides are exact phase sums evaluated once at 256 bits.
    """
    print_header("EXAMPLE 1: Landsberg-Schaar Identity")

    for q, p in ((1, 1), (1, 2), (3, 7), (6, 4), (5, 12)):
        report = verify_landsberg_schaar(q, p, 256)
        print(f"q={q:<2} p={p:<2}  lhs={mpmath.nstr(report.lhs.value, 15):<36} "
              f"|lhs-rhs|={mpmath.nstr(report.abs_diff, 3):<10} "
              f"{'PASS' if report.passed else 'FAIL'}")


def demo_trace(q: int = 2, p: int = 3):
    """
    EXAMPLE 2: Trace of the evolution operator on the torus.

    Method 1 sums eigenvalues, Method 2 is the path-integral closed form;
    the matrix power and the brute-force path sum are independent checks.
    """
    print_header("EXAMPLE 2: Trace of U^p on the Torus")

    system = TorusSystem(q, p)
    print(f"N = {system.N}, p = {p}, t = {mpmath.nstr(system.t, 12)}")

    print_subheader("Four Computations")
    method1 = cyclosum_eval(trace_method1(system))
    values = {
        'method 1 (spectral)': method1,
        'method 2 (path integral)': trace_method2(system),
        'matrix power': trace_by_matrix_power(system),
        'path enumeration': trace_by_enumeration(system),
    }
    for name, value in values.items():
        print(f"  {name:<26} {mpmath.nstr(value.value, 20):<44} "
              f"diff={mpmath.nstr(method1.distance(value), 3)}")


def demo_cylinder():
    """
    EXAMPLE 3: Jacobi identity and the regularized limit.
    """
    print_header("EXAMPLE 3: Cylinder")

    print_subheader("Jacobi Identity")
    for tau in ('0.25', '1', '4'):
        report = verify_jacobi(ThetaParams.auto(tau))
        print(f"  tau={tau:<5} theta={mpmath.nstr(report.lhs.value, 20):<26} "
              f"|diff|={mpmath.nstr(report.abs_diff, 3)}")
    print(f"\n  theta(1) = {mpmath.nstr(theta_at(1).value, 30)}")

    print_subheader("Regularized Limit (q=1, p=3)")
    for report in regularized_ls_limit(1, 3, ['0.1', '0.01', '0.001']):
        print(f"  eps={report.params['eps']:<6} gap={mpmath.nstr(report.extra['gap'], 5):<12} "
              f"bits={report.extra['working_bits']}")


def demo_harness():
    """
    BONUS: Harness sweep with CSV output.
    """
    print_header("BONUS: Harness Sweep")

    harness = VerificationHarness(overrides={'runner': {'progress': False}})
    summary = harness.cmd_verify_ls(harness.sweep_config('1..3', '1..3'))
    print(harness.export(summary, 'text'))


def main():
    """Run all demonstrations."""
    print("\n" + "=" * 70)
    print("       TORUS GAUSS - DEMONSTRATION")
    print("=" * 70)

    # Change to project directory
    script_dir = Path(__file__).parent
    os.chdir(script_dir)

    try:
        demo_landsberg_schaar()
        demo_trace()
        demo_cylinder()
        demo_harness()
    except Exception as e:
        print(f"Error during demonstration: {e}")
        import traceback
        traceback.print_exc()

    print_header("DEMONSTRATION COMPLETE")
    print("Run the full sweeps from the command line, e.g.:")
    print("  $ python -m src.harness verify-ls --p 1..50 --q 1..50 --jobs 4")
    print()


if __name__ == "__main__":
    main()
