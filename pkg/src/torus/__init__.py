"""
Torus Module

Finite-dimensional quantum mechanics on the toroidal phase space.
"""

from src.torus.system import TorusSystem, allowed_times
from src.torus.states import (
    StateVector,
    momentum_basis,
    position_basis,
    inner_product,
    change_basis,
    position_op_apply,
    overlap,
)
from src.torus.kernels import (
    KernelMatrix,
    single_step_kernel,
    single_step_phase,
    spectral_kernel_entry,
    spectral_kernel_matrix,
    evolve_by_power,
    is_circulant_exact,
)
from src.torus.paths import (
    DEFAULT_ENUMERATION_BUDGET,
    path_phase_sum,
    brute_force_path_sum,
    winding_sum,
    winding_closed_form,
    verify_winding,
    winding_path_sum,
    shifted_gauss_power,
)
from src.torus.traces import (
    trace_method1,
    trace_method2,
    trace_by_matrix_power,
    trace_by_enumeration,
)

__all__ = [
    'TorusSystem', 'allowed_times',
    'StateVector', 'momentum_basis', 'position_basis', 'inner_product',
    'change_basis', 'position_op_apply', 'overlap',
    'KernelMatrix', 'single_step_kernel', 'single_step_phase',
    'spectral_kernel_entry', 'spectral_kernel_matrix', 'evolve_by_power',
    'is_circulant_exact',
    'DEFAULT_ENUMERATION_BUDGET', 'path_phase_sum', 'brute_force_path_sum',
    'winding_sum', 'winding_closed_form', 'verify_winding', 'winding_path_sum',
    'shifted_gauss_power',
    'trace_method1', 'trace_method2', 'trace_by_matrix_power', 'trace_by_enumeration',
]
