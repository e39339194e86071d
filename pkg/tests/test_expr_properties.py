import unittest

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from e4surf.errors import EvaluationDomainError
from e4surf.expr.calculus import ONE, TWO, differentiate, evaluate, to_text
from e4surf.expr.nodes import Add, BinaryOp, Div, FunctionCall, Mul, Negate, Number, Parameter, Pow, Variable
from e4surf.expr.parser import parse_expression

MAX_DEPTH = 6
PARAMS = {"a": 0.5}
STEP = 1e-6

_leaves = st.one_of(
    st.sampled_from([Variable("u"), Variable("v"), Parameter("a")]),
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False).map(Number),
)


def _extend(children):
    # every construction maps arguments in [-1, 1] back into [-1, 1]
    return st.one_of(
        st.tuples(children, children).map(lambda t: Mul(*t)),
        st.tuples(st.sampled_from(["+", "-"]), children, children).map(lambda t: Div(BinaryOp(*t), TWO)),
        children.map(Negate),
        st.tuples(st.sampled_from(["sin", "cos"]), children).map(lambda t: FunctionCall(*t)),
        children.map(lambda e: Div(FunctionCall("exp", FunctionCall("sin", e)), Number(3.0))),
        children.map(lambda e: Div(FunctionCall("sqrt", Add(ONE, Mul(e, e))), TWO)),
        children.map(lambda e: Div(FunctionCall("log", Add(TWO, FunctionCall("sin", e))), TWO)),
        st.tuples(children, children).map(lambda t: Div(t[0], Add(TWO, FunctionCall("cos", t[1])))),
        st.tuples(children, st.sampled_from([2.0, 3.0])).map(lambda t: Pow(t[0], Number(t[1]))),
    )


def _expressions(depth):
    strategy = _leaves
    for _ in range(depth):
        strategy = st.one_of(_leaves, _extend(strategy))
    return strategy


_points = st.lists(
    st.tuples(st.floats(min_value=-1.0, max_value=1.0), st.floats(min_value=-1.0, max_value=1.0)),
    min_size=20,
    max_size=20,
)


_numerals = st.one_of(
    st.integers(min_value=0, max_value=20).map(str),
    st.integers(min_value=0, max_value=99).map(lambda i: f".{i:02d}"),
    st.floats(min_value=0.0, max_value=10.0).map(repr),
)
_spaces = st.sampled_from(["", " ", "  ", "\t"])


def _extend_text(children):
    return st.one_of(
        st.tuples(children, _spaces, st.sampled_from(["+", "-", "*", "/"]), _spaces, children).map("".join),
        children.map(lambda t: f"({t})"),
        children.map(lambda t: f"-{t}"),
        st.tuples(children, st.sampled_from(["^2", "^3", " ^ 2"])).map("".join),
        st.tuples(st.sampled_from(["sin", "cos", "exp"]), _spaces, children).map(lambda t: f"{t[0]}({t[1]}{t[2]})"),
    )


_texts = st.recursive(st.one_of(st.sampled_from(["u", "v", "a"]), _numerals), _extend_text, max_leaves=12)


def _at(e, u, v):
    return evaluate(e, {**PARAMS, "u": u, "v": v})


def _value_or_error(e, u, v):
    try:
        return _at(e, u, v)
    except EvaluationDomainError:
        return EvaluationDomainError


class TestExpressionProperties(unittest.TestCase):
    @settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
    @given(_expressions(MAX_DEPTH), _points)
    def test_differentiate_matches_central_difference(self, e, points):
        du, dv = differentiate(e, "u"), differentiate(e, "v")
        for u, v in points:
            for d, (up, down) in ((du, ((u + STEP, v), (u - STEP, v))), (dv, ((u, v + STEP), (u, v - STEP)))):
                exact = _at(d, u, v)
                approx = (_at(e, *up) - _at(e, *down)) / (2 * STEP)
                self.assertLessEqual(abs(exact - approx), 1e-5 * (1 + abs(exact)))

    @settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
    @given(_expressions(MAX_DEPTH), _points)
    def test_mixed_partials_agree(self, e, points):
        duv = differentiate(differentiate(e, "u"), "v")
        dvu = differentiate(differentiate(e, "v"), "u")
        for u, v in points[:5]:
            # unsimplified derivative trees accumulate rounding in different orders
            a, b = _at(duv, u, v), _at(dvu, u, v)
            self.assertLessEqual(abs(a - b), 1e-8 * (1 + abs(a) + abs(b)))

    @settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
    @given(_expressions(MAX_DEPTH), _points)
    def test_to_text_evaluates_identically(self, e, points):
        reparsed = parse_expression(to_text(e), set(PARAMS))
        for u, v in points:
            self.assertEqual(_at(reparsed, u, v), _at(e, u, v))

    @settings(max_examples=300, deadline=None, suppress_health_check=list(HealthCheck))
    @given(_texts, _points)
    def test_parse_to_text_is_idempotent(self, text, points):
        first = parse_expression(text, set(PARAMS))
        printed = to_text(first)
        second = parse_expression(printed, set(PARAMS))
        self.assertEqual(second, first)
        self.assertEqual(to_text(second), printed)
        for u, v in points:
            self.assertEqual(_value_or_error(second, u, v), _value_or_error(first, u, v))
