"""Run settings: JSON settings file plus 3-level parameter fallback."""

import json
import logging
import os

from graded_goldie.constants import (
    CONFIG_PATH_ENV,
    DEFAULT_COEFF_BOUND,
    DEFAULT_M_MAX,
    DEFAULT_MAX_DEGREE,
    DEFAULT_N_MAX,
    DEFAULT_ORDER_BOUND,
    DEFAULT_SEED,
    RATIONAL_FIELD_FLAG,
)
from graded_goldie.exceptions import ConfigError

logger = logging.getLogger(__name__)

# Built-in value of every tunable parameter
PARAMETER_DEFAULTS = {
    "group": None,
    "g": None,
    "h": None,
    "n_max": DEFAULT_N_MAX,
    "m_max": DEFAULT_M_MAX,
    "max_degree": DEFAULT_MAX_DEGREE,
    "coeff_bound": DEFAULT_COEFF_BOUND,
    "order_bound": DEFAULT_ORDER_BOUND,
    "samples": None,
    "seed": DEFAULT_SEED,
    "field": RATIONAL_FIELD_FLAG,
}

# Parameters that must be positive integers
POSITIVE_PARAMETERS = ("n_max", "m_max", "max_degree", "coeff_bound", "order_bound", "samples")


def load_settings(path=None):
    """Read the settings file named by ``path`` or the GRADED_GOLDIE_CONFIG variable.

    Args:
        path: Optional path to a JSON settings file.

    Returns:
        dict: Settings with ``defaults`` and ``suites`` keys (empty without a file).

    Raises:
        ConfigError: If the file cannot be read or has the wrong shape.
    """
    path = path or os.environ.get(CONFIG_PATH_ENV)
    if not path:
        return {"defaults": {}, "suites": {}}
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read settings file {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"settings file {path} must hold a JSON object")
    for key in set(raw) - {"defaults", "suites"}:
        logger.warning("Ignoring unknown settings key: %s", key)
    defaults = _clean(raw.get("defaults", {}), "defaults")
    suites = raw.get("suites", {})
    if not isinstance(suites, dict):
        raise ConfigError("'suites' must be a JSON object")
    logger.info("Loaded settings from %s", path)
    return {"defaults": defaults, "suites": {name: _clean(v, f"suites.{name}") for name, v in suites.items()}}


def _clean(section, where):
    if not isinstance(section, dict):
        raise ConfigError(f"'{where}' must be a JSON object")
    cleaned = {}
    for key, value in section.items():
        if key not in PARAMETER_DEFAULTS:
            logger.warning("Ignoring unknown parameter %s in %s", key, where)
            continue
        cleaned[key] = value
    return cleaned


def resolve_parameter(name, cli_value, suite, settings):
    """Resolve a run parameter using 3-level fallback.

    Priority (high → low):
        1. Explicit command-line flag
        2. Suite entry of the settings file
        3. ``defaults`` entry of the settings file
    falling back to the built-in constant.

    Raises:
        ConfigError: If a bound resolves to a non-positive value.
    """
    if cli_value is not None:
        value = cli_value
    elif name in settings["suites"].get(suite, {}):
        value = settings["suites"][suite][name]
    elif name in settings["defaults"]:
        value = settings["defaults"][name]
    else:
        value = PARAMETER_DEFAULTS[name]
    positive = isinstance(value, int) and not isinstance(value, bool) and value >= 1
    if name in POSITIVE_PARAMETERS and value is not None and not positive:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    if name == "seed" and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"seed must be an integer, got {value!r}")
    return value


def resolve_parameters(suite, cli_values, settings):
    """All parameters for ``suite``; ``cli_values`` maps names to flags (None when absent)."""
    return {name: resolve_parameter(name, cli_values.get(name), suite, settings) for name in PARAMETER_DEFAULTS}
