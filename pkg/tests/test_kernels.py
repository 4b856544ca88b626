"""Series kernels: ulp-level honesty against the rational oracles, and
bit-equivalence of the pure and compiled implementations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from certreal import _kernels_py, kernels

try:
    from certreal import _kernels_c
except ImportError:
    _kernels_c = None

widths = st.integers(20, 400)
caps = st.integers(1, 80)


def _blanket(cap: int, w: int) -> Fraction:
    return Fraction(8 * cap + 16, 1 << w)


@settings(max_examples=60)
@given(widths, caps, st.fractions(min_value=Fraction(-5, 8),
                                  max_value=Fraction(5, 8),
                                  max_denominator=1 << 24))
def test_exp_kernel_honest(w, cap, x):
    r = round(x * (1 << w))
    s = _kernels_py.exp_series(r, w, cap)
    rr = Fraction(r, 1 << w)
    lo, hi = oracles.exp_bounds(rr, w + 10)
    # tail after cap terms: |r|**cap / cap! / (1 - 5/8), rounded up to 3
    fact = 1
    for i in range(2, cap + 1):
        fact *= i
    tail = 3 * abs(rr) ** cap / fact
    err = _blanket(cap, w) + tail + (hi - lo)
    assert abs(Fraction(s, 1 << w) - (lo + hi) / 2) <= err


@settings(max_examples=60)
@given(widths, caps, st.fractions(min_value=Fraction(-9, 8),
                                  max_value=Fraction(9, 8),
                                  max_denominator=1 << 24))
def test_sin_cos_kernels_honest(w, cap, x):
    r = round(x * (1 << w))
    rr = Fraction(r, 1 << w)
    fact = 1
    for i in range(2, 2 * cap + 2):
        fact *= i
    tail_sin = abs(rr) ** (2 * cap + 1) / fact
    tail_cos = abs(rr) ** (2 * cap) * (2 * cap + 1) / fact
    for series, bounds, tail in (
            (_kernels_py.sin_series, oracles.sin_bounds, tail_sin),
            (_kernels_py.cos_series, oracles.cos_bounds, tail_cos)):
        s = series(r, w, cap)
        lo, hi = bounds(rr, w + 10)
        err = _blanket(cap, w) + tail + (hi - lo)
        assert abs(Fraction(s, 1 << w) - (lo + hi) / 2) <= err


@settings(max_examples=60)
@given(widths, caps, st.integers(1, 1 << 16))
def test_atan_kernel_honest(w, cap, q):
    for p in (-(q // 2), q // 3, q // 2):
        s = _kernels_py.atan_series(p, q, w, cap)
        lo, hi = oracles.atan_bounds(p, q, w + 10)
        x = Fraction(abs(p), q)
        tail = x ** (2 * cap + 1) / (2 * cap + 1)
        err = _blanket(cap, w) + tail + (hi - lo)
        assert abs(Fraction(s, 1 << w) - (lo + hi) / 2) <= err


@settings(max_examples=60)
@given(widths, caps, st.fractions(min_value=Fraction(-5, 8),
                                  max_value=Fraction(5, 8),
                                  max_denominator=1 << 24))
def test_ln1p_kernel_honest(w, cap, x):
    t = round(x * (1 << w))
    tt = Fraction(t, 1 << w)
    s = _kernels_py.ln1p_series(t, w, cap)
    lo, hi = oracles._ln_series(tt, w + 10)
    tail = 3 * abs(tt) ** (cap + 1) / (cap + 1)
    err = _blanket(cap, w) + tail + (hi - lo)
    assert abs(Fraction(s, 1 << w) - (lo + hi) / 2) <= err


def test_selected_backend_is_a_known_twin():
    assert kernels.BACKEND in ("python", "compiled")
    src = _kernels_py if kernels.BACKEND == "python" else _kernels_c
    for name in ("exp_series", "sin_series", "cos_series",
                 "atan_series", "ln1p_series"):
        assert getattr(kernels, name) is getattr(src, name)


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
@settings(max_examples=40)
@given(widths, caps, st.integers(-(5 << 60), 5 << 60), st.data())
def test_backends_bit_identical(w, cap, seed, data):
    scale = data.draw(st.integers(-60, max(0, w - 1)))
    r = seed >> max(0, -scale) if scale < 0 else seed << scale
    # clamp into the widest accepted range (|arg| <= 9/8 * 2**w)
    limit = (9 << w) // 8
    r = max(-limit, min(limit, r))
    assert _kernels_py.exp_series(r // 2, w, cap) == \
        _kernels_c.exp_series(r // 2, w, cap)
    assert _kernels_py.sin_series(r, w, cap) == \
        _kernels_c.sin_series(r, w, cap)
    assert _kernels_py.cos_series(r, w, cap) == \
        _kernels_c.cos_series(r, w, cap)
    assert _kernels_py.ln1p_series(r // 2, w, cap) == \
        _kernels_c.ln1p_series(r // 2, w, cap)
    q = abs(seed) % (1 << 20) + 2
    p = data.draw(st.integers(-(q // 2), q // 2))
    assert _kernels_py.atan_series(p, q, w, cap) == \
        _kernels_c.atan_series(p, q, w, cap)


def test_kernels_deterministic():
    w = 128
    r = (3 << w) // 5
    a = _kernels_py.exp_series(r, w, 40)
    b = _kernels_py.exp_series(r, w, 40)
    assert a == b


def test_pure_override_env(monkeypatch):
    # the env switch is read at import time; just confirm it is honored
    # in a fresh interpreter
    import subprocess
    import sys
    out = subprocess.run(
        [sys.executable, "-c",
         "import certreal.kernels as k; print(k.BACKEND)"],
        env={"CERTREAL_PURE_KERNELS": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True)
    assert out.stdout.strip() == "python"
