"""Parsing, printing, spans, and elaboration with domain discharge."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from certreal import lang
from certreal.errors import (DomainUnverifiable, DomainViolation, ParseError,
                             RelationUnsupported)
from certreal.lang import (BinOp, Call, DecLit, DomainBudget, IntLit, Neg,
                           PiConst, Query, elaborate, format_expr, parse,
                           parse_expression, parse_query, same_tree)

S = (0, 0)  # spans are ignored by same_tree


def _dec(num, den):
    return DecLit(num, den, S)


exprs = st.deferred(lambda: st.one_of(
    st.integers(0, 10 ** 6).map(lambda n: IntLit(n, S)),
    st.sampled_from([_dec(1, 2), _dec(5, 4), _dec(1, 8), _dec(3, 10),
                     _dec(7, 100), _dec(123, 1000)]),
    st.just(PiConst(S)),
    st.builds(lambda a: Neg(a, S), exprs),
    st.builds(lambda op, a, b: BinOp(op, a, b, S),
              st.sampled_from("+-*/"), exprs, exprs),
    st.builds(lambda f, a: Call(f, a, S),
              st.sampled_from(lang.FUNCTIONS), exprs),
))


@given(exprs)
def test_print_parse_round_trip(e):
    text = format_expr(e)
    back = parse_expression(text)
    assert same_tree(e, back), text


@given(exprs, exprs, st.sampled_from("<>"))
def test_query_round_trip(a, b, rel):
    q = Query(a, rel, b, S)
    back = parse(format_expr(q))
    assert isinstance(back, Query)
    assert back.relation == rel
    assert same_tree(q, back)


def test_parse_basics():
    e = parse_expression("1 + 2 * 3")
    assert isinstance(e, BinOp) and e.op == "+"
    assert isinstance(e.rhs, BinOp) and e.rhs.op == "*"
    # left associativity
    e2 = parse_expression("1 - 2 - 3")
    assert e2.op == "-" and isinstance(e2.lhs, BinOp)
    assert e2.lhs.rhs.value == 2 and e2.rhs.value == 3
    e3 = parse_expression("-sin(pi)")
    assert isinstance(e3, Neg) and isinstance(e3.arg, Call)


def test_decimal_literals():
    d = parse_expression("0.50")
    assert isinstance(d, DecLit) and (d.num, d.den) == (1, 2)
    assert isinstance(parse_expression("1.25"), DecLit)
    assert parse_expression("1.25").num == 5
    # a decimal denoting an integer is the integer node
    two = parse_expression("2.0")
    assert isinstance(two, IntLit) and two.value == 2
    assert format_expr(two) == "2"


def test_spans_cover_source():
    text = "sin(pi) + 1.5"
    e = parse_expression(text)
    assert text[slice(*e.span)] == text
    assert text[slice(*e.lhs.span)] == "sin(pi)"
    assert text[slice(*e.lhs.arg.span)] == "pi"
    assert text[slice(*e.rhs.span)] == "1.5"


def test_same_tree_ignores_spans():
    a = parse_expression("1+2")
    b = parse_expression("  1 +   2 ")
    assert a.span != b.span or a.lhs.span != b.lhs.span
    assert same_tree(a, b)
    assert not same_tree(a, parse_expression("2+1"))


@pytest.mark.parametrize("text,frag", [
    ("", "expected"),
    ("1 +", "expected"),
    ("(1", "expected ')'"),
    ("1.", "digit expected after decimal point"),
    ("foo(1)", "unknown name"),
    ("sin 1", "expected '('"),
    ("sin(1, 2)", "unexpected character"),
    ("1 @ 2", "unexpected character"),
    ("1 < 2 < 3", "only one comparison per query"),
])
def test_parse_errors(text, frag):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert frag in str(exc.value)


def test_error_positions_are_byte_offsets():
    with pytest.raises(ParseError) as exc:
        parse_expression("12 + $")
    assert exc.value.position == 5
    assert "(at byte 5)" in str(exc.value)


@pytest.mark.parametrize("text", ["1 <= 2", "1 >= 2", "1 = 2", "1 == 2"])
def test_nonstrict_relations_rejected(text):
    with pytest.raises(RelationUnsupported) as exc:
        parse(text)
    assert "only strict < and > are supported" in str(exc.value)


def test_parse_query_requires_relation():
    with pytest.raises(ParseError):
        parse_query("1 + 2")
    q = parse_query("1 < 2")
    assert isinstance(q, Query)
    # and parse_expression refuses queries
    with pytest.raises(ParseError):
        parse_expression("1 < 2")


def test_format_query():
    q = parse("exp(pi) - pi < 20")
    assert format_expr(q) == "exp(pi) - pi < 20"


def test_printer_parenthesizes_only_when_needed():
    t = parse_expression("(1 + 2) * 3")
    assert format_expr(t) == "(1 + 2) * 3"
    t2 = parse_expression("1 + 2 * 3")
    assert format_expr(t2) == "1 + 2 * 3"
    t3 = BinOp("+", IntLit(1, S),
               BinOp("+", IntLit(2, S), IntLit(3, S), S), S)
    assert format_expr(t3) == "1 + (2 + 3)"
    t4 = parse_expression("-(1 + 2)")
    assert format_expr(t4) == "-(1 + 2)"


@pytest.mark.parametrize("text", [
    "1 + 2 * 3",
    "exp(1) - ln(7)",
    "sin(pi / 6) * 2",
    "tan(1) / exp(2)",
    "0.125 * (pi - 3)",
])
def test_elaborate_matches_oracle(text):
    e = parse_expression(text)
    x = elaborate(e)
    lo, hi = oracles.eval_expr_bounds(e, 80)
    q = x.approx(60).as_fraction()
    assert lo - Fraction(1, 2 ** 60) <= q <= hi + Fraction(1, 2 ** 60)


def test_elaborate_domain_unverifiable():
    with pytest.raises(DomainUnverifiable) as exc:
        elaborate(parse_expression("1 / (1 - 1)"))
    assert "may be zero or merely too close to call" in str(exc.value)
    with pytest.raises(DomainUnverifiable):
        elaborate(parse_expression("ln(sin(pi))"))
    with pytest.raises(DomainUnverifiable):
        elaborate(parse_expression("tan(pi / 2)"))


def test_elaborate_domain_violation_negative_ln():
    with pytest.raises(DomainViolation) as exc:
        elaborate(parse_expression("ln(0 - 2)"))
    assert "provably negative" in str(exc.value)
    assert exc.value.evidence.sign == -1


def test_elaborate_budget_controls_search_depth():
    deep = parse_expression("1 / 0.0000001")  # needs k around 24
    assert elaborate(deep) is not None
    with pytest.raises(DomainUnverifiable) as exc:
        elaborate(deep, DomainBudget(max_precision=8))
    assert exc.value.max_precision == 8


def test_elaborate_rejects_queries():
    with pytest.raises(TypeError):
        elaborate(parse("1 < 2"))


def test_domain_budget_validation():
    with pytest.raises(ValueError):
        DomainBudget(start_precision=0)
    with pytest.raises(ValueError):
        DomainBudget(start_precision=9, max_precision=3)
