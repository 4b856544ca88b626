"""Transcendental nodes against the exact-rational oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from certreal import functions, lang
from certreal.creal import ApartnessCertificate, const, find_apart
from certreal.errors import InvalidCertificate, ResourceExhausted
from certreal.functions import atan_rat, cos, exp, ln, pi, sin, tan


def _tol(k):
    return Fraction(1, 2 ** k)


def _check(node, k, lo, hi):
    q = node.approx(k).as_fraction()
    assert lo - _tol(k) <= q <= hi + _tol(k), (float(q), float(lo), float(hi))


@settings(max_examples=60)
@given(st.fractions(min_value=-10, max_value=10, max_denominator=10 ** 6),
       st.integers(2, 120))
def test_exp_honest(v, k):
    lo, hi = oracles.exp_bounds(v, k + 10)
    _check(exp(const(v)), k, lo, hi)


@settings(max_examples=60)
@given(st.fractions(min_value=-40, max_value=40, max_denominator=10 ** 6),
       st.integers(2, 120))
def test_sin_cos_honest(v, k):
    slo, shi = oracles.sin_bounds(v, k + 10)
    _check(sin(const(v)), k, slo, shi)
    clo, chi = oracles.cos_bounds(v, k + 10)
    _check(cos(const(v)), k, clo, chi)


@settings(max_examples=60)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000,
                    max_denominator=10 ** 6),
       st.integers(2, 120))
def test_ln_honest(v, k):
    cert = find_apart(const(v))
    assert cert is not None
    lo, hi = oracles.ln_bounds(v, k + 10)
    _check(ln(const(v), cert), k, lo, hi)


@settings(max_examples=40)
@given(st.integers(1, 10 ** 6), st.integers(-500, 500), st.integers(2, 100))
def test_atan_rat_honest(q, p2, k):
    p = int(Fraction(p2 * q, 1000))  # truncation keeps |p/q| <= 1/2
    lo, hi = oracles.atan_bounds(p, q, k + 10)
    _check(atan_rat(p, q), k, lo, hi)


def test_atan_rat_rejects_out_of_range():
    with pytest.raises(ValueError):
        atan_rat(2, 3)
    with pytest.raises(ValueError):
        atan_rat(1, 0)
    # negative denominators are normalized
    assert atan_rat(1, -5).approx(20) == -atan_rat(1, 5).approx(20)


def test_tan_at_one():
    cert = find_apart(cos(const(1)))
    assert cert is not None
    t = tan(const(1), cert)
    slo, shi = oracles.sin_bounds(Fraction(1), 80)
    clo, chi = oracles.cos_bounds(Fraction(1), 80)
    _check(t, 60, slo / chi, shi / clo)


def test_ln_certificate_errors():
    neg_cert = find_apart(const(-2))
    assert neg_cert is not None and neg_cert.sign == -1
    with pytest.raises(InvalidCertificate):
        ln(const(-2), neg_cert)
    fake = ApartnessCertificate(2, 1)
    with pytest.raises(InvalidCertificate):
        ln(const(-2), fake)
    with pytest.raises(InvalidCertificate):
        ln(const(0), fake)


def test_pi_machin_against_oracle():
    lo, hi = oracles.pi_bounds(220)
    _check(pi(), 200, lo, hi)


def test_pi_routes_agree():
    k = 100
    a = pi().approx(k)
    b = pi("cos_iteration").approx(k)
    assert abs((a - b).as_fraction()) <= 2 * _tol(k)
    c = pi("leibniz").approx(10)
    assert abs(c.as_fraction() - a.as_fraction()) <= _tol(10) + _tol(100)


def test_pi_leibniz_cap():
    assert pi("leibniz", leibniz_cap=30) is not pi("leibniz")
    with pytest.raises(ResourceExhausted):
        pi("leibniz").approx(functions.DEFAULT_LEIBNIZ_CAP + 1)
    small = functions._PiLeibniz(6)
    with pytest.raises(ResourceExhausted):
        small.approx(7)
    assert small.approx(6) is not None


def test_pi_argument_validation():
    with pytest.raises(ValueError):
        pi("archimedes")
    with pytest.raises(ValueError):
        pi("machin", leibniz_cap=10)
    with pytest.raises(ValueError):
        functions._PiLeibniz(-1)


def test_pi_nodes_cached():
    assert pi() is pi()
    assert pi("cos_iteration") is pi("cos_iteration")
    assert pi("leibniz") is pi("leibniz", leibniz_cap=24)


def test_cos_iteration_modulus_table():
    mod = functions._PiCosIter._modulus
    # contraction exponents 0, 4, 14, 44, 134: t(n+1) = 3 t(n) + 2
    assert mod(1) == 2
    assert mod(4) == 2
    assert mod(5) == 3
    assert mod(14) == 3
    assert mod(15) == 4
    assert mod(44) == 4
    assert mod(104) == 5
    assert mod(134) == 5


def test_cos_iteration_uses_few_sequence_elements():
    node = functions._PiCosIter()
    node.approx(100)
    # includes the starting element; precision 2**-100 needs five steps
    assert len(node._seq_nodes) <= 7


def test_sin_of_large_argument():
    slo, shi = oracles.sin_bounds(Fraction(50), 90)
    _check(sin(const(50)), 80, slo, shi)
    clo, chi = oracles.cos_bounds(Fraction(-63), 90)
    _check(cos(const(-63)), 80, clo, chi)


def test_exp_of_composite_argument():
    # a non-constant argument exercises the coarse-probe magnitude logic
    x = exp(pi())
    lo, hi = oracles.eval_expr_bounds(lang.parse_expression("exp(pi)"), 80)
    _check(x, 60, lo, hi)


def test_function_results_deterministic():
    a = exp(const(1, 3)).approx(90)
    b = exp(const(1, 3)).approx(90)
    assert a == b
    c = sin(pi()).approx(90)
    d = sin(pi()).approx(90)
    assert c == d
