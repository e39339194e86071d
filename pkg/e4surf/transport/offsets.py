"""Offset fields (f1, f2) driving normal transports"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from e4surf.classify.evolute import NoSolution, solve_evolute_offsets
from e4surf.errors import ConfigError, NoEvoluteError
from e4surf.expr.calculus import differentiate, evaluate, to_text
from e4surf.expr.nodes import Expression
from e4surf.expr.parser import parse_expression
from e4surf.frame.frame import FRAME_FD_STEP, FrameFunction, frame_function
from e4surf.invariants.invariants import invariant_report
from e4surf.patch.patch import SurfacePatch
from e4surf.utils.numeric import derivative

_logger: logging.Logger = logging.getLogger(__name__)

OFFSET_KINDS = ("constant", "htype", "ktype", "evolute", "custom")


class OffsetField(ABC):
    """Offsets f1, f2 over the base domain with their first partials"""

    kind: str = ""

    @abstractmethod
    def values(self, u: float, v: float) -> np.ndarray:
        """(f1, f2)"""

    @abstractmethod
    def derivatives(self, u: float, v: float) -> np.ndarray:
        """2x2 array, row alpha holds ((f_alpha)_u, (f_alpha)_v)"""

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind}


class ConstantOffsets(OffsetField):
    kind = "constant"

    def __init__(self, f1: float, f2: float) -> None:
        self._values = np.array([float(f1), float(f2)])

    def values(self, u: float, v: float) -> np.ndarray:
        return self._values.copy()

    def derivatives(self, u: float, v: float) -> np.ndarray:
        return np.zeros((2, 2))

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "f1": float(self._values[0]), "f2": float(self._values[1])}


class ExpressionOffsets(OffsetField):
    kind = "custom"

    def __init__(self, f1: Expression, f2: Expression, params: Mapping[str, float]) -> None:
        self.expressions = (f1, f2)
        self.params = dict(params)
        self._partials = tuple((differentiate(e, "u"), differentiate(e, "v")) for e in self.expressions)

    def _bindings(self, u: float, v: float) -> Dict[str, float]:
        return {**self.params, "u": u, "v": v}

    def values(self, u: float, v: float) -> np.ndarray:
        bindings = self._bindings(u, v)
        return np.array([evaluate(e, bindings) for e in self.expressions])

    def derivatives(self, u: float, v: float) -> np.ndarray:
        bindings = self._bindings(u, v)
        return np.array([[evaluate(d, bindings) for d in pair] for pair in self._partials])

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "f1": to_text(self.expressions[0]), "f2": to_text(self.expressions[1])}


class _NumericOffsets(OffsetField):
    """Offsets read from the base geometry; partials by finite differences inside the domain"""

    def __init__(self, base: SurfacePatch, frame: FrameFunction, h: float = FRAME_FD_STEP) -> None:
        self.base = base
        self.frame = frame
        self.h = h

    def derivatives(self, u: float, v: float) -> np.ndarray:
        d = self.base.domain
        du = derivative(lambda t: self.values(t, v), u, self.h, d.u_min, d.u_max)
        dv = derivative(lambda t: self.values(u, t), v, self.h, d.v_min, d.v_max)
        return np.column_stack([du, dv])


class MeanCurvatureOffsets(_NumericOffsets):
    kind = "htype"

    def values(self, u: float, v: float) -> np.ndarray:
        c = invariant_report(self.base, u, v, self.frame).curvature
        return np.array([c.H1, c.H2])


class GaussianCurvatureOffsets(_NumericOffsets):
    kind = "ktype"

    def values(self, u: float, v: float) -> np.ndarray:
        c = invariant_report(self.base, u, v, self.frame).curvature
        return np.array([c.K1, c.K2])


class EvoluteOffsets(_NumericOffsets):
    kind = "evolute"

    def values(self, u: float, v: float) -> np.ndarray:
        result = solve_evolute_offsets(self.base, u, v, self.frame)
        if isinstance(result, NoSolution):
            raise NoEvoluteError(f"{self.base.name} has no evolute offsets at (u={u:.6g}, v={v:.6g}): {result.reason}")
        return np.array([result.f1, result.f2])


def parse_offset_spec(text: str) -> Tuple[str, Dict[str, Any]]:
    """Parses `constant:f1,f2`, `htype`, `ktype`, `evolute` or `custom:<expr1>;<expr2>`

    Args:
        text (str): Offset spec

    Returns:
        tuple: Kind and its parameters
    """
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip()
    if kind not in OFFSET_KINDS:
        raise ConfigError(f"unknown offset kind '{kind}', expected one of {OFFSET_KINDS}")
    if kind == "constant":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ConfigError(f"constant offsets look like constant:f1,f2, got '{text}'")
        try:
            return kind, {"f1": float(parts[0]), "f2": float(parts[1])}
        except ValueError as ex:
            raise ConfigError(f"constant offsets must be real numbers, got '{rest}'") from ex
    if kind == "custom":
        parts = rest.split(";")
        if len(parts) != 2:
            raise ConfigError(f"custom offsets look like custom:<expr1>;<expr2>, got '{text}'")
        return kind, {"f1": parts[0].strip(), "f2": parts[1].strip()}
    if rest.strip():
        raise ConfigError(f"offset kind '{kind}' takes no arguments, got '{rest}'")
    return kind, {}


def offset_field(
    kind: str,
    params: Optional[Mapping[str, Any]],
    base: SurfacePatch,
    frame: Optional[FrameFunction] = None,
    offset_params: Optional[Mapping[str, float]] = None,
) -> OffsetField:
    """Builds an offset field

    Args:
        kind (str): One of constant, htype, ktype, evolute, custom
        params (Mapping): f1, f2 for constant (numbers) and custom (expression text)
        base (SurfacePatch): Base surface
        frame (FrameFunction): Frame the curvature-driven offsets are read in
        offset_params (Mapping): Parameter bindings for custom expressions

    Returns:
        OffsetField: Offsets
    """
    params = dict(params or {})
    if kind == "constant":
        try:
            return ConstantOffsets(float(params["f1"]), float(params["f2"]))
        except KeyError as ex:
            raise ConfigError(f"constant offsets need f1 and f2, got {params}") from ex
    if kind == "custom":
        bindings = dict(offset_params or {})
        try:
            f1, f2 = (parse_expression(str(params[key]), frozenset(bindings)) for key in ("f1", "f2"))
        except KeyError as ex:
            raise ConfigError(f"custom offsets need f1 and f2 expressions, got {params}") from ex
        return ExpressionOffsets(f1, f2, bindings)
    frame = frame or frame_function(base)
    if kind == "htype":
        return MeanCurvatureOffsets(base, frame)
    if kind == "ktype":
        return GaussianCurvatureOffsets(base, frame)
    if kind == "evolute":
        return EvoluteOffsets(base, frame)
    raise ConfigError(f"unknown offset kind '{kind}', expected one of {OFFSET_KINDS}")
