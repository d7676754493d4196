"""
Utility Helpers Module

Configuration loading, environment overrides and number formatting.
"""

import copy
import os
import re
from typing import Any, Dict, List, Mapping, Optional, Tuple

import mpmath
import yaml

from src.utils.errors import ConfigError


ENV_PREFIX = 'TORUSGAUSS_'

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    'precision': {
        'default_bits': 256,
        'sweep_min_bits': 64,
    },
    'torus': {
        'enumeration_budget': 10_000_000,
    },
    'cylinder': {
        'limit_max_bits': 16384,
    },
    'output': {
        'format': 'json',
        'digits': 40,
    },
    'runner': {
        'jobs': 1,
        'progress': True,
        'seed': 0,
    },
}


def load_config(config_path: str) -> Dict[str, Any]:
    """
    Load configuration from a YAML file.

    Args:
        config_path: Path to configuration file

    Returns:
        Configuration dictionary ({} when the file does not exist)

    Raises:
        ConfigError: If the file exists but is not a YAML mapping
    """
    if not os.path.exists(config_path):
        return {}

    try:
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse config file: {e}", {'path': config_path})

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError("config file must contain a mapping", {'path': config_path})
    return config


def merge_config(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``override`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def apply_env_overrides(config: Dict[str, Any],
                        environ: Optional[Mapping[str, str]] = None,
                        prefix: str = ENV_PREFIX) -> Dict[str, Any]:
    """
    Apply ``TORUSGAUSS_<SECTION>_<KEY>`` environment overrides.

    Values are parsed as YAML scalars, so ``512`` becomes an int and
    ``true`` a bool.

    Args:
        config: Configuration to start from
        environ: Environment mapping (defaults to os.environ)
        prefix: Variable name prefix

    Returns:
        New configuration dictionary with overrides applied
    """
    environ = os.environ if environ is None else environ
    result = copy.deepcopy(config)

    for name in sorted(environ):
        if not name.startswith(prefix):
            continue
        rest = name[len(prefix):].lower()
        if '_' not in rest:
            continue
        section, key = rest.split('_', 1)
        try:
            value = yaml.safe_load(environ[name])
        except yaml.YAMLError:
            value = environ[name]
        result.setdefault(section, {})[key] = value

    return result


def resolve_config(config_path: Optional[str] = None,
                   environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    """
    Build the effective configuration.

    Precedence: built-in defaults < config file < environment.
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if config_path:
        config = merge_config(config, load_config(config_path))
    return apply_env_overrides(config, environ)


def format_real(value: Any, digits: int = 40) -> str:
    """
    Format an mpmath real as a deterministic decimal string.

    Args:
        value: mpf, int or float
        digits: Significant digits

    Returns:
        Decimal string (exponent notation for very small/large values)
    """
    x = mpmath.mpmathify(value)
    return mpmath.nstr(x, digits, min_fixed=-4, max_fixed=digits)


def parse_int_range(text: str) -> Tuple[int, int]:
    """
    Parse an inclusive integer range such as ``1..10`` or ``7``.

    Raises:
        ConfigError: On malformed or empty ranges
    """
    match = re.fullmatch(r'\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?', text or '')
    if not match:
        raise ConfigError(f"malformed range: {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if lo > hi:
        raise ConfigError(f"empty range: {text!r}")
    return lo, hi


def parse_number_list(text: str) -> List[str]:
    """Split a comma separated list of decimal numbers, keeping them as strings."""
    items = [item.strip() for item in (text or '').split(',') if item.strip()]
    if not items:
        raise ConfigError(f"empty number list: {text!r}")
    for item in items:
        try:
            mpmath.mpmathify(item)
        except (ValueError, TypeError):
            raise ConfigError(f"not a number: {item!r}")
    return items


def parse_tolerance(text: Optional[str]) -> Optional[str]:
    """
    Validate a tolerance override given as a decimal string.

    Negative values are accepted and fail every case.

    Returns:
        The stripped string, or None when no override was given

    Raises:
        ConfigError: If the text is not a finite decimal number
    """
    if text is None:
        return None
    text = text.strip()
    try:
        value = mpmath.mpf(text)
    except (ValueError, TypeError):
        raise ConfigError(f"tolerance is not a number: {text!r}")
    if not mpmath.isfinite(value):
        raise ConfigError(f"tolerance must be finite: {text!r}")
    return text


def format_number(value: Any, digits: int = 40) -> Any:
    """
    Serialize a parameter value: ints, strings and bools pass through,
    reals become decimal strings and complex values ``re+imj`` strings.
    """
    if isinstance(value, (bool, int, str)):
        return value
    z = mpmath.mpmathify(value)
    if isinstance(z, mpmath.mpc):
        re = format_real(z.real, digits)
        im = format_real(z.imag, digits)
        sign = '' if im.startswith('-') else '+'
        return f"{re}{sign}{im}j"
    return format_real(z, digits)
