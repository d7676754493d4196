"""
Cylinder Module

Theta functions, rotor propagators on the circle and the regularized
approach to the Landsberg-Schaar identity.
"""

from src.cylinder.theta import (
    ThetaParams,
    gaussian_tail_bound,
    smallest_truncation,
    theta_truncated,
    theta_at,
    jacobi_sides,
    verify_jacobi,
)
from src.cylinder.propagators import (
    CylinderKernelParams,
    spectral_kernel,
    image_kernel,
    verify_kernel_jacobi,
    spectral_trace,
    image_trace,
    verify_trace_identity,
    kernel_normalization,
)
from src.cylinder.limit import (
    regularized_ls_limit,
    leading_correction_index,
    working_bits,
    gaps_decreasing,
    gap_violations,
)

__all__ = [
    'ThetaParams', 'gaussian_tail_bound', 'smallest_truncation',
    'theta_truncated', 'theta_at', 'jacobi_sides', 'verify_jacobi',
    'CylinderKernelParams', 'spectral_kernel', 'image_kernel',
    'verify_kernel_jacobi', 'spectral_trace', 'image_trace',
    'verify_trace_identity', 'kernel_normalization',
    'regularized_ls_limit', 'leading_correction_index', 'working_bits',
    'gaps_decreasing', 'gap_violations',
]
