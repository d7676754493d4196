"""
Verification Report Module

Uniform result record for every identity check.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import mpmath

from src.phasecalc.phases import CycloSum
from src.phasecalc.precision import ComplexHP
from src.utils.helpers import format_number, format_real


RECORD_FIELDS: List[str] = [
    'lhs_re', 'lhs_im', 'rhs_re', 'rhs_im', 'abs_diff', 'tolerance', 'pass'
]


@dataclass
class VerificationReport:
    """
    Outcome of comparing two independently computed sides of an identity.

    ``passed`` is always ``abs_diff <= tolerance``; ``abs_diff`` is the
    computed distance |lhs - rhs|, so it never exceeds that distance plus
    the two error bounds. The tolerance used is stored alongside so a
    failure can be diagnosed from the report alone.
    """
    check: str
    params: Dict[str, Any]
    lhs: ComplexHP
    rhs: ComplexHP
    abs_diff: mpmath.mpf
    tolerance: mpmath.mpf
    passed: bool
    exact_lhs: Optional[CycloSum] = None
    exact_rhs: Optional[CycloSum] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(cls, check: str, params: Dict[str, Any], lhs: ComplexHP, rhs: ComplexHP,
                tolerance: Any, exact_lhs: Optional[CycloSum] = None,
                exact_rhs: Optional[CycloSum] = None,
                extra: Optional[Dict[str, Any]] = None) -> 'VerificationReport':
        """
        Build a report from two evaluated sides.

        Args:
            check: Name of the identity being checked
            params: Case parameters (serialized ahead of the value columns)
            lhs: Left side
            rhs: Right side
            tolerance: Pass threshold for |lhs - rhs|
            exact_lhs: Optional exact form of the left side
            exact_rhs: Optional exact form of the right side
            extra: Additional diagnostics

        Returns:
            VerificationReport
        """
        abs_diff = lhs.distance(rhs)
        tolerance = mpmath.mpf(tolerance)
        return cls(
            check=check,
            params=dict(params),
            lhs=lhs,
            rhs=rhs,
            abs_diff=abs_diff,
            tolerance=tolerance,
            passed=bool(abs_diff <= tolerance),
            exact_lhs=exact_lhs,
            exact_rhs=exact_rhs,
            extra=dict(extra or {}),
        )

    def to_record(self, digits: int = 40) -> Dict[str, Any]:
        """Flat record: params first, then the fixed value columns."""
        record: Dict[str, Any] = {}
        for key, value in self.params.items():
            record[key] = format_number(value, digits)
        record.update({
            'lhs_re': format_real(self.lhs.re, digits),
            'lhs_im': format_real(self.lhs.im, digits),
            'rhs_re': format_real(self.rhs.re, digits),
            'rhs_im': format_real(self.rhs.im, digits),
            'abs_diff': format_real(self.abs_diff, 6),
            'tolerance': format_real(self.tolerance, 6),
            'pass': self.passed,
        })
        return record

    def to_dict(self, digits: int = 40) -> Dict[str, Any]:
        record = self.to_record(digits)
        record['check'] = self.check
        if self.exact_lhs is not None:
            record['exact_lhs'] = str(self.exact_lhs)
        if self.exact_rhs is not None:
            record['exact_rhs'] = str(self.exact_rhs)
        for key, value in self.extra.items():
            record[key] = format_number(value, digits)
        return record
