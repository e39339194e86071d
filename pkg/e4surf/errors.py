"""Exception hierarchy"""

from typing import Any, Optional, Tuple


class E4SurfError(Exception):
    """Base class for every error raised by the toolkit"""


class ConfigError(E4SurfError, ValueError):
    """Invalid configuration, catalog id, parameters or grid"""


class ExpressionSyntaxError(ConfigError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ConfigError):
    def __init__(self, name: str, offset: int) -> None:
        super().__init__(f"unknown identifier '{name}' at offset {offset}")
        self.name = name
        self.offset = offset


class UnknownFunctionError(ConfigError):
    def __init__(self, name: str, offset: int) -> None:
        super().__init__(f"unknown function '{name}' at offset {offset}")
        self.name = name
        self.offset = offset


class NumericError(E4SurfError, ArithmeticError):
    """Numeric or domain failure while evaluating geometry"""


class EvaluationDomainError(NumericError):
    def __init__(self, message: str, node: Any = None) -> None:
        super().__init__(message)
        self.node = node


class IrregularPointError(NumericError):
    def __init__(self, gram: float, point: Optional[Tuple[float, float]] = None) -> None:
        where = f" at (u={point[0]:.6g}, v={point[1]:.6g})" if point is not None else ""
        super().__init__(f"irregular point{where}: Gram determinant {gram:.3e}")
        self.point = point
        self.gram = gram


class OutOfDomainError(NumericError):
    """Parameter point or finite-difference stencil outside the domain box"""


class FrameBranchError(NumericError):
    """Normal frame jumps between branches on a finite-difference stencil"""


class FlatnessError(NumericError):
    def __init__(self, kn: float, node: Tuple[float, float], tol: float) -> None:
        super().__init__(
            f"normal bundle is not flat: |K_N| = {abs(kn):.6g} > {tol:.1e} at (u={node[0]:.6g}, v={node[1]:.6g})"
        )
        self.kn = kn
        self.node = node


class NoEvoluteError(NumericError):
    """Evolute offsets requested at a point where the evolute equations have no solution"""


class MetricConditionError(NumericError):
    """Evolute solver called where g12 does not vanish"""


def exit_code_for(exc: Optional[BaseException]) -> int:
    """Maps an exception to the CLI exit code

    Args:
        exc (BaseException): Raised exception

    Returns:
        int: 1 for configuration errors, 2 for numeric/domain errors
    """
    if isinstance(exc, ConfigError):
        return 1
    return 2
