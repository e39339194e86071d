"""Built-in surfaces with closed-form jets and analytic normal frames"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from e4surf.errors import ConfigError
from e4surf.expr.calculus import differentiate, evaluate
from e4surf.expr.nodes import Expression, depends_on, identifiers
from e4surf.expr.parser import parse_expression
from e4surf.patch.patch import AnalyticFrame, Jet2, SurfacePatch
from e4surf.utils.grid import Domain

_logger: logging.Logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# r(v) -> (r, r', r'')
Profile = Callable[[float], Tuple[float, float, float]]


def exponential_profile(lam: float, mu: float) -> Profile:
    """Radial profile r(v) = lam * exp(mu * v) and its derivatives"""

    def _profile(v: float) -> Tuple[float, float, float]:
        r = lam * math.exp(mu * v)
        return r, mu * r, mu * mu * r

    return _profile


def expression_profile(profile: Expression, params: Mapping[str, float]) -> Profile:
    """Radial profile from an expression in v

    Args:
        profile (Expression): r(v)
        params (Mapping): Parameter bindings

    Returns:
        Profile: Callable returning r, r' and r''
    """
    if depends_on(profile, "u"):
        raise ConfigError("a rotation profile r(v) cannot depend on u")
    unbound = identifiers(profile) - {"v"} - set(params)
    if unbound:
        raise ConfigError(f"profile uses unbound identifiers {sorted(unbound)}")
    first = differentiate(profile, "v")
    second = differentiate(first, "v")
    params = dict(params)

    def _profile(v: float) -> Tuple[float, float, float]:
        bindings = {**params, "v": v}
        return evaluate(profile, bindings), evaluate(first, bindings), evaluate(second, bindings)

    return _profile


class VranceanuSurface(SurfacePatch):
    """Rotation surface x = (r cos v cos u, r cos v sin u, r sin v cos u, r sin v sin u)"""

    def __init__(self, name: str, profile: Profile, params: Mapping[str, float], domain: Domain) -> None:
        super().__init__(name, params, domain)
        self.profile = profile

    def _coefficients(self, v: float) -> Tuple[float, float, float, float, float, float, float]:
        r, r1, r2 = self.profile(v)
        cv, sv = math.cos(v), math.sin(v)
        a, b = r * cv, r * sv
        big_b = r1 * cv - r * sv
        big_c = r1 * sv + r * cv
        a2 = r2 * cv - 2 * r1 * sv - r * cv
        b2 = r2 * sv + 2 * r1 * cv - r * sv
        return r, a, b, big_b, big_c, a2, b2

    def _position(self, u: float, v: float) -> np.ndarray:
        r, _, _ = self.profile(v)
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        return np.array([r * cv * cu, r * cv * su, r * sv * cu, r * sv * su])

    def _jet(self, u: float, v: float) -> Jet2:
        _, a, b, big_b, big_c, a2, b2 = self._coefficients(v)
        cu, su = math.cos(u), math.sin(u)
        return Jet2(
            x=np.array([a * cu, a * su, b * cu, b * su]),
            xu=np.array([-a * su, a * cu, -b * su, b * cu]),
            xv=np.array([big_b * cu, big_b * su, big_c * cu, big_c * su]),
            xuu=np.array([-a * cu, -a * su, -b * cu, -b * su]),
            xuv=np.array([-big_b * su, big_b * cu, -big_c * su, big_c * cu]),
            xvv=np.array([a2 * cu, a2 * su, b2 * cu, b2 * su]),
        )

    @property
    def has_analytic_frame(self) -> bool:
        return True

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        r, r1, _ = self.profile(v)
        _, _, _, big_b, big_c, _, _ = self._coefficients(v)
        big_a = math.hypot(r, r1)
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        n1 = np.array([-big_c * cu, -big_c * su, big_b * cu, big_b * su]) / big_a
        n2 = np.array([-sv * su, sv * cu, cv * su, -cv * cu])
        return n1, n2

    def ode_residual(self, v: float) -> float:
        """r r'' - (r')^2, which vanishes exactly for exponential profiles"""
        r, r1, r2 = self.profile(v)
        return r * r2 - r1 * r1

    def evolute_closed_form(self, u: float, v: float) -> np.ndarray:
        """x + sqrt(r^2 + r'^2) N1, i.e. r'(v) (-sin v cos u, -sin v sin u, cos v cos u, cos v sin u)"""
        _, r1, _ = self.profile(v)
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        return r1 * np.array([-sv * cu, -sv * su, cv * cu, cv * su])


class TranslationParabola(SurfacePatch):
    """Translation surface of two parabolas, (u, u^2/2, v, v^2/2)"""

    def _jet(self, u: float, v: float) -> Jet2:
        return Jet2(
            x=np.array([u, 0.5 * u * u, v, 0.5 * v * v]),
            xu=np.array([1.0, u, 0.0, 0.0]),
            xv=np.array([0.0, 0.0, 1.0, v]),
            xuu=np.array([0.0, 1.0, 0.0, 0.0]),
            xuv=np.zeros(4),
            xvv=np.array([0.0, 0.0, 0.0, 1.0]),
        )

    @property
    def has_analytic_frame(self) -> bool:
        return True

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        n1 = np.array([-u, 1.0, 0.0, 0.0]) / math.sqrt(1.0 + u * u)
        n2 = np.array([0.0, 0.0, -v, 1.0]) / math.sqrt(1.0 + v * v)
        return n1, n2

    @staticmethod
    def curvature(t: float) -> float:
        """Curvature of the parabola (t, t^2/2)"""
        return float((1.0 + t * t) ** -1.5)


class CliffordTorus(SurfacePatch):
    """Flat torus s (cos u, sin u, cos v, sin v)"""

    def _jet(self, u: float, v: float) -> Jet2:
        s = self.params["scale"]
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        return Jet2(
            x=s * np.array([cu, su, cv, sv]),
            xu=s * np.array([-su, cu, 0.0, 0.0]),
            xv=s * np.array([0.0, 0.0, -sv, cv]),
            xuu=s * np.array([-cu, -su, 0.0, 0.0]),
            xuv=np.zeros(4),
            xvv=s * np.array([0.0, 0.0, -cv, -sv]),
        )

    @property
    def has_analytic_frame(self) -> bool:
        return True

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        return (
            np.array([-math.cos(u), -math.sin(u), 0.0, 0.0]),
            np.array([0.0, 0.0, -math.cos(v), -math.sin(v)]),
        )


class ComplexCurve(SurfacePatch):
    """Graph of z -> z^2, (u, v, u^2 - v^2, 2uv)"""

    def _jet(self, u: float, v: float) -> Jet2:
        return Jet2(
            x=np.array([u, v, u * u - v * v, 2 * u * v]),
            xu=np.array([1.0, 0.0, 2 * u, 2 * v]),
            xv=np.array([0.0, 1.0, -2 * v, 2 * u]),
            xuu=np.array([0.0, 0.0, 2.0, 0.0]),
            xuv=np.array([0.0, 0.0, 0.0, 2.0]),
            xvv=np.array([0.0, 0.0, -2.0, 0.0]),
        )

    @property
    def has_analytic_frame(self) -> bool:
        return True

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        s = math.sqrt(1.0 + 4 * u * u + 4 * v * v)
        return np.array([-2 * u, 2 * v, 1.0, 0.0]) / s, np.array([-2 * v, -2 * u, 0.0, 1.0]) / s


class Plane(SurfacePatch):
    """Coordinate plane (u, v, 0, 0)"""

    def _jet(self, u: float, v: float) -> Jet2:
        return Jet2(
            x=np.array([u, v, 0.0, 0.0]),
            xu=np.array([1.0, 0.0, 0.0, 0.0]),
            xv=np.array([0.0, 1.0, 0.0, 0.0]),
            xuu=np.zeros(4),
            xuv=np.zeros(4),
            xvv=np.zeros(4),
        )


class Sphere(SurfacePatch):
    """Round sphere of radius R in the hyperplane x4 = 0"""

    def _jet(self, u: float, v: float) -> Jet2:
        radius = self.params["radius"]
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        x = radius * np.array([cv * cu, cv * su, sv, 0.0])
        return Jet2(
            x=x,
            xu=radius * np.array([-cv * su, cv * cu, 0.0, 0.0]),
            xv=radius * np.array([-sv * cu, -sv * su, cv, 0.0]),
            xuu=radius * np.array([-cv * cu, -cv * su, 0.0, 0.0]),
            xuv=radius * np.array([sv * su, -sv * cu, 0.0, 0.0]),
            xvv=-x,
        )

    @property
    def has_analytic_frame(self) -> bool:
        return True

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        cu, su, cv, sv = math.cos(u), math.sin(u), math.cos(v), math.sin(v)
        return -np.array([cv * cu, cv * su, sv, 0.0]), np.array([0.0, 0.0, 0.0, 1.0])


def _vranceanu_domain(params: Mapping[str, float]) -> Domain:
    v_max = TWO_PI if abs(params["mu"]) < 0.5 else 0.5 * math.pi
    return Domain(0.0, TWO_PI, 0.0, v_max)


def _build_vranceanu(params: Mapping[str, float], domain: Domain) -> SurfacePatch:
    if params["lambda"] == 0:
        raise ConfigError("vranceanu needs a non-zero lambda: r(v) must not vanish")
    return VranceanuSurface("vranceanu", exponential_profile(params["lambda"], params["mu"]), params, domain)


def _build_sphere(params: Mapping[str, float], domain: Domain) -> SurfacePatch:
    if params["radius"] <= 0:
        raise ConfigError(f"sphere radius must be positive, got {params['radius']}")
    return Sphere("sphere", params, domain)


def _build_clifford(params: Mapping[str, float], domain: Domain) -> SurfacePatch:
    if params["scale"] <= 0:
        raise ConfigError(f"clifford_torus scale must be positive, got {params['scale']}")
    return CliffordTorus("clifford_torus", params, domain)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[[Mapping[str, float], Domain], SurfacePatch]
    default_domain: Callable[[Mapping[str, float]], Domain]
    required: Tuple[str, ...] = ()
    defaults: Dict[str, float] = field(default_factory=dict)

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.required + tuple(self.defaults)


_UNIT_SQUARE = Domain(-1.0, 1.0, -1.0, 1.0)

CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry(
            "vranceanu",
            "rotation surface with r(v) = lambda*exp(mu*v)",
            _build_vranceanu,
            _vranceanu_domain,
            required=("lambda", "mu"),
        ),
        CatalogEntry(
            "translation_parabola",
            "translation surface (u, u^2/2, v, v^2/2)",
            lambda params, domain: TranslationParabola("translation_parabola", params, domain),
            lambda params: _UNIT_SQUARE,
        ),
        CatalogEntry(
            "clifford_torus",
            "flat torus scale*(cos u, sin u, cos v, sin v)",
            _build_clifford,
            lambda params: Domain(0.0, TWO_PI, 0.0, TWO_PI),
            defaults={"scale": 1.0},
        ),
        CatalogEntry(
            "complex_curve",
            "minimal graph (u, v, u^2 - v^2, 2uv)",
            lambda params, domain: ComplexCurve("complex_curve", params, domain),
            lambda params: _UNIT_SQUARE,
        ),
        CatalogEntry(
            "plane",
            "coordinate plane (u, v, 0, 0)",
            lambda params, domain: Plane("plane", params, domain),
            lambda params: _UNIT_SQUARE,
        ),
        CatalogEntry(
            "sphere",
            "sphere of given radius in the hyperplane x4 = 0",
            _build_sphere,
            lambda params: Domain(0.0, TWO_PI, -1.2, 1.2),
            defaults={"radius": 1.0},
        ),
    )
}


def make_catalog_surface(
    name: str, params: Optional[Mapping[str, float]] = None, domain: Optional[Domain] = None
) -> SurfacePatch:
    """Builds a catalog surface

    Args:
        name (str): Catalog id
        params (Mapping): Parameter bindings, merged over the entry defaults
        domain (Domain): Domain override

    Returns:
        SurfacePatch: Patch with closed-form jets
    """
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ConfigError(f"unknown catalog surface '{name}', expected one of {sorted(CATALOG)}") from None
    params = dict(params or {})
    unknown = set(params) - set(entry.parameters)
    if unknown:
        raise ConfigError(f"{name} does not take parameters {sorted(unknown)}")
    missing = [p for p in entry.required if p not in params]
    if missing:
        raise ConfigError(f"{name} needs parameters {missing}")
    merged = {**entry.defaults, **params}
    patch = entry.build(merged, domain or entry.default_domain(merged))
    _logger.debug("Built catalog surface %s with %s over %s", name, merged, patch.domain)
    return patch


def make_rotation_surface(
    profile: Union[str, Expression],
    params: Optional[Mapping[str, float]] = None,
    domain: Optional[Domain] = None,
    name: str = "rotation",
) -> VranceanuSurface:
    """Builds a rotation surface of the Vranceanu family from a radial profile r(v)

    Args:
        profile (str): Expression for r(v)
        params (Mapping): Parameter bindings
        domain (Domain): Domain box, [0, 2pi] x [0, pi/2] by default
        name (str): Surface name

    Returns:
        VranceanuSurface: Patch with symbolic r, r', r''
    """
    params = dict(params or {})
    tree = parse_expression(profile, frozenset(params)) if isinstance(profile, str) else profile
    return VranceanuSurface(
        name, expression_profile(tree, params), params, domain or Domain(0.0, TWO_PI, 0.0, 0.5 * math.pi)
    )


def list_catalog() -> List[Dict[str, object]]:
    """Describes every catalog entry with its parameters and default domain"""
    described = []
    for entry in CATALOG.values():
        sample = {**{p: 1.0 for p in entry.required}, **entry.defaults}
        described.append(
            {
                "name": entry.name,
                "description": entry.description,
                "required": list(entry.required),
                "defaults": dict(entry.defaults),
                "domain": entry.default_domain(sample).to_dict(),
            }
        )
    return described
