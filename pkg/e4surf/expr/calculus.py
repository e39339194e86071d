"""Evaluation, symbolic differentiation and printing of expressions"""

import math
from typing import Callable, Dict, Mapping

from e4surf.errors import ConfigError, EvaluationDomainError
from e4surf.expr.nodes import (
    VARIABLES,
    Add,
    BinaryOp,
    Div,
    Expression,
    FunctionCall,
    Mul,
    Negate,
    Number,
    Parameter,
    Pow,
    Sub,
    Variable,
    depends_on,
)

ZERO = Number(0.0)
ONE = Number(1.0)
TWO = Number(2.0)


def _log(x: float) -> float:
    if x <= 0:
        raise ValueError("log of non-positive value")
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0:
        raise ValueError("sqrt of negative value")
    return math.sqrt(x)


_FUNCTIONS: Dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": _log,
    "sqrt": _sqrt,
    "sinh": math.sinh,
    "cosh": math.cosh,
}


def _power(base: float, exponent: float, node: Expression) -> float:
    if base == 0.0 and exponent < 0:
        raise EvaluationDomainError("division by zero in negative power of zero", node)
    if base < 0 and not float(exponent).is_integer():
        raise EvaluationDomainError("non-integer power of a negative base", node)
    return math.pow(base, exponent)


def _checked(value: float, node: Expression) -> float:
    if not math.isfinite(value):
        raise EvaluationDomainError("non-finite intermediate value", node)
    return value


def evaluate(e: Expression, bindings: Mapping[str, float]) -> float:
    """Evaluates the tree in IEEE double precision, left to right

    Args:
        e (Expression): Expression tree
        bindings (Mapping): Values of u, v and every parameter in the tree

    Returns:
        float: Value
    """
    if isinstance(e, Number):
        return e.value
    if isinstance(e, (Variable, Parameter)):
        try:
            return float(bindings[e.name])
        except KeyError as ex:
            raise ConfigError(f"unbound identifier '{e.name}'") from ex
    if isinstance(e, Negate):
        return -evaluate(e.operand, bindings)
    if isinstance(e, BinaryOp):
        left = evaluate(e.left, bindings)
        right = evaluate(e.right, bindings)
        try:
            if e.op == "+":
                return _checked(left + right, e)
            if e.op == "-":
                return _checked(left - right, e)
            if e.op == "*":
                return _checked(left * right, e)
            if e.op == "/":
                if right == 0.0:
                    raise EvaluationDomainError("division by zero", e)
                return _checked(left / right, e)
            return _checked(_power(left, right, e), e)
        except OverflowError as ex:
            raise EvaluationDomainError(f"overflow in '{e.op}'", e) from ex
    if isinstance(e, FunctionCall):
        argument = evaluate(e.argument, bindings)
        try:
            return _checked(_FUNCTIONS[e.name](argument), e)
        except (ValueError, OverflowError) as ex:
            raise EvaluationDomainError(f"{e.name}({argument!r}): {ex}", e) from ex
    raise TypeError(f"not an expression node: {e!r}")


def _mul(a: Expression, b: Expression) -> Expression:
    if a == ONE:
        return b
    if b == ONE:
        return a
    return Mul(a, b)


def _derivative_of_call(e: FunctionCall) -> Expression:
    """Outer derivative f'(a) of a one-argument function call f(a)"""
    a = e.argument
    if e.name == "sin":
        return FunctionCall("cos", a)
    if e.name == "cos":
        return Negate(FunctionCall("sin", a))
    if e.name == "tan":
        return Div(ONE, Pow(FunctionCall("cos", a), TWO))
    if e.name == "exp":
        return e
    if e.name == "log":
        return Div(ONE, a)
    if e.name == "sqrt":
        return Div(ONE, Mul(TWO, e))
    if e.name == "sinh":
        return FunctionCall("cosh", a)
    if e.name == "cosh":
        return FunctionCall("sinh", a)
    raise ConfigError(f"no derivative rule for '{e.name}'")


def differentiate(e: Expression, var: str) -> Expression:
    """Exact symbolic derivative, unsimplified

    Subtrees that do not contain `var` differentiate to zero without being expanded.

    Args:
        e (Expression): Expression tree
        var (str): `u` or `v`

    Returns:
        Expression: Derivative tree
    """
    if var not in VARIABLES:
        raise ConfigError(f"can only differentiate with respect to u or v, got '{var}'")
    if not depends_on(e, var):
        return ZERO
    if isinstance(e, Variable):
        return ONE
    if isinstance(e, Negate):
        return Negate(differentiate(e.operand, var))
    if isinstance(e, FunctionCall):
        return _mul(_derivative_of_call(e), differentiate(e.argument, var))
    if isinstance(e, BinaryOp):
        a, b = e.left, e.right
        da_needed, db_needed = depends_on(a, var), depends_on(b, var)
        if e.op in ("+", "-"):
            if not db_needed:
                return differentiate(a, var)
            db = differentiate(b, var)
            if not da_needed:
                return db if e.op == "+" else Negate(db)
            return BinaryOp(e.op, differentiate(a, var), db)
        if e.op == "*":
            if not da_needed:
                return _mul(a, differentiate(b, var))
            if not db_needed:
                return _mul(differentiate(a, var), b)
            return Add(_mul(differentiate(a, var), b), _mul(a, differentiate(b, var)))
        if e.op == "/":
            if not db_needed:
                return Div(differentiate(a, var), b)
            numerator = Negate(_mul(a, differentiate(b, var)))
            if da_needed:
                numerator = Sub(_mul(differentiate(a, var), b), _mul(a, differentiate(b, var)))
            return Div(numerator, Pow(b, TWO))
        if e.op == "^":
            if not db_needed:
                exponent: Expression = Sub(b, ONE)
                if isinstance(b, Number):
                    exponent = Number(b.value - 1.0)
                return _mul(_mul(b, Pow(a, exponent)), differentiate(a, var))
            if not da_needed:
                return _mul(Mul(e, FunctionCall("log", a)), differentiate(b, var))
            return Mul(
                e,
                Add(
                    _mul(differentiate(b, var), FunctionCall("log", a)),
                    Div(_mul(b, differentiate(a, var)), a),
                ),
            )
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e: Expression) -> str:
    """Prints a fully parenthesized form that parses back to an equivalent tree"""
    if isinstance(e, Number):
        text = repr(float(e.value))
        return f"({text})" if math.copysign(1.0, e.value) < 0 else text
    if isinstance(e, (Variable, Parameter)):
        return e.name
    if isinstance(e, Negate):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, BinaryOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, FunctionCall):
        return f"{e.name}({to_text(e.argument)})"
    raise TypeError(f"not an expression node: {e!r}")
