"""Surface definition files"""

import json
import logging
import os
from typing import Any, Dict, Mapping

from e4surf.errors import ConfigError
from e4surf.patch.catalog import make_rotation_surface
from e4surf.patch.patch import SurfacePatch, make_expression_surface
from e4surf.utils.grid import Domain

_logger: logging.Logger = logging.getLogger(__name__)


def _domain(spec: Mapping[str, Any]) -> Domain:
    try:
        (u_min, u_max), (v_min, v_max) = spec["u"], spec["v"]
        return Domain(float(u_min), float(u_max), float(v_min), float(v_max))
    except (KeyError, TypeError, ValueError) as ex:
        raise ConfigError(f'domain must look like {{"u": [a, b], "v": [a, b]}}, got {spec!r}') from ex


def surface_from_dict(definition: Mapping[str, Any]) -> SurfacePatch:
    """Builds a patch from a parsed surface definition

    Either `components` (four expressions) or `profile` (a rotation profile r(v)) must be given.

    Args:
        definition (dict): Parsed definition

    Returns:
        SurfacePatch: Patch
    """
    name = str(definition.get("name", "expression"))
    raw_params: Dict[str, Any] = dict(definition.get("params", {}))
    try:
        params = {key: float(value) for key, value in raw_params.items()}
    except (TypeError, ValueError) as ex:
        raise ConfigError(f"parameters of {name} must be numbers: {raw_params}") from ex
    domain = _domain(definition["domain"]) if "domain" in definition else None
    if ("components" in definition) == ("profile" in definition):
        raise ConfigError(f"surface {name} needs exactly one of 'components' or 'profile'")
    if "profile" in definition:
        return make_rotation_surface(str(definition["profile"]), params, domain, name)
    components = definition["components"]
    if not isinstance(components, list) or not all(isinstance(c, str) for c in components):
        raise ConfigError(f"components of {name} must be a list of 4 expression strings")
    return make_expression_surface(components, params, domain, name)


def load_surface_file(path: str) -> SurfacePatch:
    """Loads a JSON surface definition

    Args:
        path (str): Path to the file

    Returns:
        SurfacePatch: Patch
    """
    if not os.path.isfile(path):
        raise ConfigError(f"surface file {path} does not exist")
    with open(path) as f:
        try:
            definition = json.load(f)
        except json.JSONDecodeError as ex:
            raise ConfigError(f"surface file {path} is not valid JSON: {ex}") from ex
    if not isinstance(definition, dict):
        raise ConfigError(f"surface file {path} must hold a JSON object")
    _logger.debug("Loaded surface definition %s from %s", definition.get("name"), path)
    return surface_from_dict(definition)
