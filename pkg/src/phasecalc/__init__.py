"""
Phasecalc Module

Exact rational-phase arithmetic and controlled-precision evaluation.
"""

from src.phasecalc.phases import PhaseRational, CycloSum, phase_add, phase_neg
from src.phasecalc.precision import (
    ComplexHP,
    DEFAULT_PRECISION_BITS,
    GUARD_BITS,
    MIN_EVAL_BITS,
    cyclosum_eval,
    principal_sqrt,
    real_sqrt,
    unit_phase,
    exp_i_pi_quarter,
    rounding_term,
)

__all__ = [
    'PhaseRational', 'CycloSum', 'phase_add', 'phase_neg',
    'ComplexHP', 'DEFAULT_PRECISION_BITS', 'GUARD_BITS', 'MIN_EVAL_BITS',
    'cyclosum_eval', 'principal_sqrt', 'real_sqrt', 'unit_phase',
    'exp_i_pi_quarter', 'rounding_term',
]
