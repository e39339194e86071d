from copy import deepcopy
from typing import Any, Dict, Iterable, Tuple

from deepmerge import always_merger

from e4surf.errors import ConfigError


def deep_merge(*dicts: Dict[Any, Any]) -> Dict[Any, Any]:
    """Merges dictionaries, later ones win

    Returns:
        dict: Merged dictionary
    """
    merged: Dict[Any, Any] = {}
    for d in dicts:
        tmp = deepcopy(d)
        merged = always_merger.merge(merged, tmp)
    return merged


def format_float(value: float) -> str:
    """Formats a float in fixed scientific notation with 17 significant digits

    Args:
        value (float): Value to format

    Returns:
        str: Formatted value, e.g. 1.0000000000000000e+00
    """
    return f"{float(value):.16e}"


def parse_key_value(text: str) -> Tuple[str, float]:
    """Parses a `key=value` binding with a real value

    Args:
        text (str): Binding text

    Returns:
        tuple: Identifier and value
    """
    if "=" not in text:
        raise ConfigError(f"expected key=value, got '{text}'")
    key, _, value = text.partition("=")
    key = key.strip()
    if not key.isidentifier():
        raise ConfigError(f"invalid parameter name '{key}'")
    try:
        return key, float(value)
    except ValueError as ex:
        raise ConfigError(f"parameter '{key}' needs a real value, got '{value}'") from ex


def parse_bindings(items: Iterable[str]) -> Dict[str, float]:
    """Parses repeated `key=value` bindings into a dictionary"""
    return dict(parse_key_value(item) for item in items)
