from collections import OrderedDict
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .errors import ConfigError

TOLERANCES_PATH = Path(__file__).resolve().parent / "resources" / "tolerances.yml"
SWEEP_KEYS = {"n", "lambda_min", "lambda_max", "roots", "convention", "threads", "format", "fit_method"}
SWEEP_INT_KEYS = ("n", "lambda_min", "lambda_max", "threads")
SWEEP_CHOICES = {
    "convention": ("plus", "paper-sign", "complementary"),
    "format": ("json", "csv"),
    "fit_method": ("leading", "loglog"),
}


class _OrderedLoader(yaml.SafeLoader):
    pass


def _construct_odict(loader, node):
    return OrderedDict(loader.construct_pairs(node))


_OrderedLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_odict)


def load_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    """Load a YAML mapping, keeping key order."""
    p = Path(path)
    try:
        with p.open("r", encoding="utf-8") as f:
            config = yaml.load(f, Loader=_OrderedLoader)
    except OSError as e:
        raise ConfigError(f"cannot read {p}: {e}")
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {p}: {e}")

    if config is None:
        return OrderedDict()
    if not isinstance(config, dict):
        raise ConfigError(f"{p} must contain a mapping at top level")
    return config


def load_sweep_config(path: Union[str, Path]) -> Dict[str, Any]:
    """Sweep parameters from YAML.

    Parameters
    ----------
    path : :obj:`str` or :obj:`Path`
        File with any of the keys ``n``, ``lambda_min``, ``lambda_max``,
        ``roots`` (two ``"i,j"`` strings), ``convention``, ``threads``,
        ``format`` and ``fit_method``.

    Returns
    -------
    :obj:`dict`
        The parsed mapping. Invalid keys or values raise :class:`ConfigError`.
    """
    config = load_yaml(path)
    unknown = set(config) - SWEEP_KEYS
    if unknown:
        raise ConfigError(f"unknown sweep keys in {path}: {', '.join(sorted(unknown))}")

    for key in SWEEP_INT_KEYS:
        value = config.get(key)
        # bool is an int subclass
        if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
            raise ConfigError(f"{key} must be an integer, got {value!r}")

    for key, choices in SWEEP_CHOICES.items():
        value = config.get(key)
        if value is not None and value not in choices:
            raise ConfigError(f"{key} must be one of {', '.join(choices)}, got {value!r}")

    roots = config.get("roots")
    if roots is not None and (not isinstance(roots, list) or len(roots) != 2
                              or not all(isinstance(r, str) for r in roots)):
        raise ConfigError("roots must be a list of two 'i,j' strings")
    return config


def load_tolerances(path: Optional[Union[str, Path]] = None) -> Dict[str, float]:
    """Tolerance table; a user file may override individual packaged entries."""
    tolerances = {k: float(v) for k, v in load_yaml(TOLERANCES_PATH).items()}
    if path is None:
        return tolerances

    overrides = load_yaml(path)
    unknown = set(overrides) - set(tolerances)
    if unknown:
        raise ConfigError(f"unknown tolerance keys in {path}: {', '.join(sorted(unknown))}")
    try:
        tolerances.update({k: float(v) for k, v in overrides.items()})
    except (TypeError, ValueError) as e:
        raise ConfigError(f"tolerances must be numbers: {e}")
    return tolerances
