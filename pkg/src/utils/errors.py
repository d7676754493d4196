"""
Errors Module

Exception hierarchy shared by every verification component.
"""

from typing import Any, Dict, Optional


class TorusGaussError(Exception):
    """
    Base exception for the package.

    Carries an optional context dictionary that is rendered into the
    message so CLI diagnostics show the offending parameters.
    """

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        if self.context:
            ctx_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            return f"{self.message} [context: {ctx_str}]"
        return self.message


class DomainError(TorusGaussError, ValueError):
    """An operation was called outside its mathematical domain."""
    pass


class PrecisionExhaustedError(TorusGaussError, ArithmeticError):
    """A value cannot be told apart from zero at the working precision."""
    pass


class EnumerationBudgetError(TorusGaussError, RuntimeError):
    """Brute-force path enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"path enumeration needs {required} paths, budget is {budget}",
            {'required': required, 'budget': budget}
        )
        self.required = required
        self.budget = budget


class ConfigError(TorusGaussError):
    """Invalid configuration or sweep definition."""
    pass
