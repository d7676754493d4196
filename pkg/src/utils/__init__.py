"""
Utils Module

Configuration, errors, formatting and the sweep runner for Torus Gauss.
"""

from src.utils.errors import (
    TorusGaussError,
    DomainError,
    PrecisionExhaustedError,
    EnumerationBudgetError,
    ConfigError,
)
from src.utils.helpers import (
    DEFAULT_CONFIG,
    load_config,
    merge_config,
    apply_env_overrides,
    resolve_config,
    format_real,
    format_number,
    parse_int_range,
    parse_number_list,
    parse_tolerance,
)

__all__ = [
    'TorusGaussError',
    'DomainError',
    'PrecisionExhaustedError',
    'EnumerationBudgetError',
    'ConfigError',
    'DEFAULT_CONFIG',
    'load_config',
    'merge_config',
    'apply_env_overrides',
    'resolve_config',
    'format_real',
    'format_number',
    'parse_int_range',
    'parse_number_list',
    'parse_tolerance',
]
