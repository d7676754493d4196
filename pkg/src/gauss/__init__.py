"""
Gauss Module

Quadratic Gauss sums, the Landsberg-Schaar identity and quadratic reciprocity.
"""

from src.gauss.report import VerificationReport, RECORD_FIELDS
from src.gauss.gauss_sums import (
    GaussSumSpec,
    quad_gauss_sum,
    dual_gauss_sum,
    appendix_sum_plus,
    appendix_sum_minus,
    gauss_sum_magnitude,
    coprime_reduction,
    default_tolerance,
    landsberg_schaar_sides,
    verify_landsberg_schaar,
    verify_appendix,
)
from src.gauss.reciprocity import (
    is_prime,
    odd_primes_below,
    legendre_symbol,
    verify_reciprocity,
    reciprocity_supplements,
)

__all__ = [
    'VerificationReport', 'RECORD_FIELDS',
    'GaussSumSpec', 'quad_gauss_sum', 'dual_gauss_sum',
    'appendix_sum_plus', 'appendix_sum_minus', 'gauss_sum_magnitude',
    'coprime_reduction', 'default_tolerance', 'landsberg_schaar_sides',
    'verify_landsberg_schaar', 'verify_appendix',
    'is_prime', 'odd_primes_below', 'legendre_symbol',
    'verify_reciprocity', 'reciprocity_supplements',
]
