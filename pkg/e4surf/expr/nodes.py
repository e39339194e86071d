"""Expression tree nodes"""

from dataclasses import dataclass
from typing import FrozenSet, Union

FUNCTIONS: FrozenSet[str] = frozenset({"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"})
VARIABLES: FrozenSet[str] = frozenset({"u", "v"})
BINARY_OPERATORS: FrozenSet[str] = frozenset({"+", "-", "*", "/", "^"})


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: "Expression"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class FunctionCall:
    name: str
    argument: "Expression"


Expression = Union[Number, Variable, Parameter, Negate, BinaryOp, FunctionCall]


def Add(left: Expression, right: Expression) -> BinaryOp:  # noqa: N802
    return BinaryOp("+", left, right)


def Sub(left: Expression, right: Expression) -> BinaryOp:  # noqa: N802
    return BinaryOp("-", left, right)


def Mul(left: Expression, right: Expression) -> BinaryOp:  # noqa: N802
    return BinaryOp("*", left, right)


def Div(left: Expression, right: Expression) -> BinaryOp:  # noqa: N802
    return BinaryOp("/", left, right)


def Pow(left: Expression, right: Expression) -> BinaryOp:  # noqa: N802
    return BinaryOp("^", left, right)


def identifiers(e: Expression) -> FrozenSet[str]:
    """Collects every variable and parameter name in the tree"""
    if isinstance(e, (Variable, Parameter)):
        return frozenset({e.name})
    if isinstance(e, Negate):
        return identifiers(e.operand)
    if isinstance(e, BinaryOp):
        return identifiers(e.left) | identifiers(e.right)
    if isinstance(e, FunctionCall):
        return identifiers(e.argument)
    return frozenset()


def depends_on(e: Expression, var: str) -> bool:
    """True when the variable `var` occurs in the tree"""
    if isinstance(e, Variable):
        return e.name == var
    if isinstance(e, Negate):
        return depends_on(e.operand, var)
    if isinstance(e, BinaryOp):
        return depends_on(e.left, var) or depends_on(e.right, var)
    if isinstance(e, FunctionCall):
        return depends_on(e.argument, var)
    return False
