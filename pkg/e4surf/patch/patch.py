"""Surface patches in E4 with exact second-order jets"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from e4surf.errors import ConfigError, OutOfDomainError
from e4surf.expr.calculus import differentiate, evaluate
from e4surf.expr.nodes import VARIABLES, Expression, identifiers
from e4surf.expr.parser import parse_expression
from e4surf.utils.grid import Domain

_logger: logging.Logger = logging.getLogger(__name__)

REGULARITY_EPS = 1e-12
FD_STEP = 1e-5
FD_SECOND_STEP = 2e-4


@dataclass(frozen=True, eq=False)
class Jet2:
    """Point and first/second partial derivatives at one parameter point"""

    x: np.ndarray
    xu: np.ndarray
    xv: np.ndarray
    xuu: np.ndarray
    xuv: np.ndarray
    xvv: np.ndarray

    @property
    def tangents(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.xu, self.xv

    def second(self, i: int, j: int) -> np.ndarray:
        """x_{u^i u^j} with 0-based indices"""
        if i == 0 and j == 0:
            return self.xuu
        if i == 1 and j == 1:
            return self.xvv
        return self.xuv

    @property
    def gram(self) -> float:
        g11 = float(self.xu @ self.xu)
        g12 = float(self.xu @ self.xv)
        g22 = float(self.xv @ self.xv)
        return g11 * g22 - g12 * g12

    @property
    def regular(self) -> bool:
        return self.gram > REGULARITY_EPS

    @property
    def finite(self) -> bool:
        return bool(all(np.all(np.isfinite(a)) for a in (self.x, self.xu, self.xv, self.xuu, self.xuv, self.xvv)))

    def max_difference(self, other: "Jet2") -> float:
        """Largest componentwise difference to another jet"""
        return float(
            max(
                np.max(np.abs(a - b))
                for a, b in zip(
                    (self.x, self.xu, self.xv, self.xuu, self.xuv, self.xvv),
                    (other.x, other.xu, other.xv, other.xuu, other.xuv, other.xvv),
                )
            )
        )


AnalyticFrame = Tuple[np.ndarray, np.ndarray]


class SurfacePatch(ABC):
    """Parametric map (u, v) -> E4 over a domain box"""

    def __init__(self, name: str, params: Mapping[str, float], domain: Domain) -> None:
        self.name = name
        self.params: Dict[str, float] = dict(params)
        self.domain = domain

    @abstractmethod
    def _jet(self, u: float, v: float) -> Jet2:
        """Closed-form or symbolic jet, without domain checks"""

    def _position(self, u: float, v: float) -> np.ndarray:
        return self._jet(u, v).x

    def analytic_frame(self, u: float, v: float) -> Optional[AnalyticFrame]:
        """Analytic normal frame (N1, N2), or None when the patch has none"""
        return None

    @property
    def has_analytic_frame(self) -> bool:
        return False

    def _check_domain(self, u: float, v: float, pad: float = 0.0) -> None:
        if not self.domain.contains(u, v, pad):
            raise OutOfDomainError(
                f"({u:.6g}, {v:.6g}) with reach {pad:.1e} is outside the domain of {self.name}: {self.domain}"
            )

    def position(self, u: float, v: float) -> np.ndarray:
        self._check_domain(u, v)
        return self._position(u, v)

    def jet(self, u: float, v: float) -> Jet2:
        self._check_domain(u, v)
        return self._jet(u, v)

    def describe(self) -> Dict[str, object]:
        return {"name": self.name, "params": dict(self.params), "domain": self.domain.to_dict()}


class ExpressionSurface(SurfacePatch):
    """Patch whose four components are expressions in u, v and parameters"""

    def __init__(
        self, name: str, components: Sequence[Expression], params: Mapping[str, float], domain: Domain
    ) -> None:
        super().__init__(name, params, domain)
        if len(components) != 4:
            raise ConfigError(f"a surface in E4 needs 4 components, got {len(components)}")
        allowed = set(VARIABLES) | set(self.params)
        for index, component in enumerate(components):
            unbound = identifiers(component) - allowed
            if unbound:
                raise ConfigError(f"component {index + 1} uses unbound identifiers {sorted(unbound)}")
        self.components = tuple(components)
        self._du = tuple(differentiate(c, "u") for c in self.components)
        self._dv = tuple(differentiate(c, "v") for c in self.components)
        self._duu = tuple(differentiate(c, "u") for c in self._du)
        self._duv = tuple(differentiate(c, "v") for c in self._du)
        self._dvv = tuple(differentiate(c, "v") for c in self._dv)

    def _bindings(self, u: float, v: float) -> Dict[str, float]:
        bindings = dict(self.params)
        bindings["u"] = u
        bindings["v"] = v
        return bindings

    def _position(self, u: float, v: float) -> np.ndarray:
        bindings = self._bindings(u, v)
        return np.array([evaluate(c, bindings) for c in self.components])

    def _jet(self, u: float, v: float) -> Jet2:
        bindings = self._bindings(u, v)

        def _vector(trees: Sequence[Expression]) -> np.ndarray:
            return np.array([evaluate(tree, bindings) for tree in trees])

        return Jet2(
            x=_vector(self.components),
            xu=_vector(self._du),
            xv=_vector(self._dv),
            xuu=_vector(self._duu),
            xuv=_vector(self._duv),
            xvv=_vector(self._dvv),
        )


def make_expression_surface(
    components: Sequence[Union[str, Expression]],
    params: Optional[Mapping[str, float]] = None,
    domain: Optional[Domain] = None,
    name: str = "expression",
) -> ExpressionSurface:
    """Builds a patch from four component expressions

    Args:
        components (list): Four expressions, as text or parsed trees
        params (dict): Parameter bindings
        domain (Domain): Domain box, [-1, 1]^2 by default
        name (str): Surface name

    Returns:
        ExpressionSurface: Patch with symbolic jets
    """
    params = dict(params or {})
    trees = [
        parse_expression(component, frozenset(params)) if isinstance(component, str) else component
        for component in components
    ]
    return ExpressionSurface(name, trees, params, domain or Domain(-1.0, 1.0, -1.0, 1.0))


def jet(s: SurfacePatch, u: float, v: float) -> Jet2:
    """Exact jet of a patch at (u, v)"""
    return s.jet(u, v)


def jet_fd(s: SurfacePatch, u: float, v: float, h: float = FD_STEP, h2: float = FD_SECOND_STEP) -> Jet2:
    """Finite-difference jet, used as an independent oracle

    First partials use central differences with step `h`; second partials use the 3-point and
    4-point cross stencils with step `h2`, large enough to keep rounding below truncation error.

    Args:
        s (SurfacePatch): Patch
        u (float): u parameter
        v (float): v parameter
        h (float): First-derivative step
        h2 (float): Second-derivative step

    Returns:
        Jet2: Finite-difference jet
    """
    if h <= 0 or h2 <= 0:
        raise ConfigError(f"finite-difference steps must be positive, got h={h}, h2={h2}")
    s._check_domain(u, v, pad=max(2 * h, h2))
    f = s._position
    x = f(u, v)
    xu = (f(u + h, v) - f(u - h, v)) / (2 * h)
    xv = (f(u, v + h) - f(u, v - h)) / (2 * h)
    xuu = (f(u + h2, v) - 2 * x + f(u - h2, v)) / (h2 * h2)
    xvv = (f(u, v + h2) - 2 * x + f(u, v - h2)) / (h2 * h2)
    xuv = (f(u + h2, v + h2) - f(u + h2, v - h2) - f(u - h2, v + h2) + f(u - h2, v - h2)) / (4 * h2 * h2)
    return Jet2(x=x, xu=xu, xv=xv, xuu=xuu, xuv=xuv, xvv=xvv)


class SampledSurface(SurfacePatch):
    """Patch known only through its position map; jets come from finite differences"""

    def __init__(
        self,
        name: str,
        position: Callable[[float, float], np.ndarray],
        domain: Domain,
        h: float = FD_STEP,
        h2: float = FD_SECOND_STEP,
    ) -> None:
        super().__init__(name, {}, domain)
        self._position_fn = position
        self.h = h
        self.h2 = h2

    def _position(self, u: float, v: float) -> np.ndarray:
        return np.asarray(self._position_fn(u, v), dtype=float)

    def _jet(self, u: float, v: float) -> Jet2:
        return jet_fd(self, u, v, self.h, self.h2)
