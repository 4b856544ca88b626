"""Transcendental functions as computable-real nodes.

Each node follows the same recipe: derive coarse magnitude bounds from
a cheap approximation of the argument, reduce the argument into the
convergence range of a fixed-point series kernel, run the kernel with
an explicit term cap and working width, and undo the reduction while
accounting for every rounding in an error budget that lands the final
result within 2**-j of the true value.

Everything is integer arithmetic; there is no float anywhere on these
paths, so results are deterministic bit for bit.
"""

from __future__ import annotations

import threading

from . import creal as _cr
from . import kernels
from .creal import (ApartnessCertificate, CReal, PRECISION_LIMIT, _Scale2,
                    _Sub, const, lim, series_sum)
from .dyadic import BigDyadic, ONE, div_nearest, dyadic
from .errors import InvalidCertificate, ResourceExhausted

_MINUS_ONE = dyadic(-1)


def _budget(t: int) -> int:
    if t > PRECISION_LIMIT:
        raise ResourceExhausted(f"working precision {t} over the limit")
    return t


# -- term caps ------------------------------------------------------------
#
# Each cap is the number of series iterations after which the exact
# remainder is at most 2**-(t+1); the kernels may stop earlier on term
# decay.  All searches are exact integer loops.

def _cap_exp(t: int) -> int:
    # remainder after n terms at |r| <= 5/8 is < 2 * (5/8)**n / n!
    n, p5, p8 = 0, 1, 1
    bound = 1 << (t + 2)
    while p5 * bound > p8:
        n += 1
        p5 *= 5
        p8 *= 8 * n
    return n


def _cap_sin(t: int) -> int:
    # first omitted term at |r| <= 9/8 is (9/8)**(2n+1) / (2n+1)!
    n, p9, pf = 0, 9, 8
    bound = 1 << (t + 1)
    while p9 * bound > pf:
        n += 1
        p9 *= 81
        pf *= 64 * (2 * n) * (2 * n + 1)
    return n


def _cap_cos(t: int) -> int:
    n, p9, pf = 0, 1, 1
    bound = 1 << (t + 1)
    while p9 * bound > pf:
        n += 1
        p9 *= 81
        pf *= 64 * (2 * n - 1) * (2 * n)
    return n


def _cap_atan(t: int, p: int, q: int) -> int:
    pa = abs(p)
    if pa == 0:
        return 1
    n, pn, pd = 0, pa, q
    bound = 1 << (t + 1)
    while pn * bound > pd * (2 * n + 1):
        n += 1
        pn *= pa * pa
        pd *= q * q
    return n + 1


def _cap_ln1p(t: int) -> int:
    # remainder after n terms at |v| <= 5/8 is < (5/8)**(n+1) * 8/3 / (n+1)
    n, p5, p8 = 0, 5, 8
    bound = 1 << (t + 4)
    while p5 * bound > p8 * 3 * (n + 1):
        n += 1
        p5 *= 5
        p8 *= 8
    return n + 1


def _to_scaled(d: BigDyadic, w: int) -> int:
    m, e = d.mantissa, d.exponent
    shift = e + w
    if shift >= 0:
        return m << shift
    return div_nearest(m, 1 << -shift)


# -- kernel wrappers: dyadic in, dyadic out, error <= 2**-t ---------------

def _eval_exp_series(r: BigDyadic, t: int) -> BigDyadic:
    cap = _cap_exp(t)
    w = _budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.exp_series(_to_scaled(r, w), w, cap), -w)


def _eval_sin_series(r: BigDyadic, t: int) -> BigDyadic:
    cap = _cap_sin(t)
    w = _budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.sin_series(_to_scaled(r, w), w, cap), -w)


def _eval_cos_series(r: BigDyadic, t: int) -> BigDyadic:
    cap = _cap_cos(t)
    w = _budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.cos_series(_to_scaled(r, w), w, cap), -w)


def _eval_atan_series(p: int, q: int, t: int) -> BigDyadic:
    cap = _cap_atan(t, p, q)
    w = _budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.atan_series(p, q, w, cap), -w)


def _eval_ln1p_series(v: BigDyadic, t: int) -> BigDyadic:
    cap = _cap_ln1p(t)
    w = _budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.ln1p_series(_to_scaled(v, w), w, cap), -w)


class _Exp(CReal):
    __slots__ = ("x",)

    def __init__(self, x: CReal):
        super().__init__()
        self.x = x

    def _compute(self, j: int) -> BigDyadic:
        q0 = self.x.approx(0)
        # 2**eb bounds exp(x): exp(h) <= 2**(1.5 h) for integer h >= x
        h = q0.ceil() + 1
        eb = max(0, (3 * h + 1) // 2)
        # halvings until |x| / 2**m <= 1/2 (|x| <= |q0| + 1 <= 2**a)
        a = (abs(q0) + ONE).ceil_log2()
        m = a + 1
        amp = m + eb + 1
        ts = _budget(j + 4 + amp)
        xv = self.x._raw(ts)
        r = xv.scale2(-m)
        v = _eval_exp_series(r, ts)
        # |v - exp(true r)| <= 2**-ts + 2 * 2**-(ts+m) <= 2**-(ts-2).
        # Each squaring at grid ts adds half an ulp; the total error
        # after m squarings is below 2**amp * (2**-(ts-2) + 2**-ts)
        # <= 2**-(j+1), because products of the 2|v_i| telescope to at
        # most 2**(m + eb + 1).
        for _ in range(m):
            v = _cr.grid_round(v * v, ts)
        return _cr.grid_round(v, j + 1)


class _SinCos(CReal):
    __slots__ = ("x", "want_sin")

    def __init__(self, x: CReal, want_sin: bool):
        super().__init__()
        self.x = x
        self.want_sin = want_sin

    def _compute(self, j: int) -> BigDyadic:
        q0 = self.x.approx(0)
        bound = abs(q0) + ONE
        m, p3 = 0, 1
        while bound > dyadic(p3):
            m += 1
            p3 *= 3
        # per untripling step the error grows by at most 2**4 (the
        # triple-angle maps have derivative bounded by 9 on [-1, 1],
        # slightly more before clamping) plus half an ulp
        amp = 4 * m + 1
        ts = _budget(j + 4 + amp)
        xv = self.x._raw(ts)
        if m == 0:
            r = xv
        else:
            mm, ee = xv.mantissa, xv.exponent
            g = ts + 2
            shift = ee + g
            if shift >= 0:
                r = dyadic(div_nearest(mm << shift, p3), -g)
            else:
                r = dyadic(div_nearest(mm, p3 << -shift), -g)
        if self.want_sin:
            v = _eval_sin_series(r, ts)
        else:
            v = _eval_cos_series(r, ts)
        for _ in range(m):
            v = _clamp_unit(v)
            v3 = v * v * v
            if self.want_sin:
                v = _cr.grid_round(v.mul_int(3) - v3.mul_int(4), ts)
            else:
                v = _cr.grid_round(v3.mul_int(4) - v.mul_int(3), ts)
        return _cr.grid_round(_clamp_unit(v), j + 1)


def _clamp_unit(v: BigDyadic) -> BigDyadic:
    # true sine/cosine values lie in [-1, 1], so clamping the iterate
    # can only move it toward the true value
    if v > ONE:
        return ONE
    if v < _MINUS_ONE:
        return _MINUS_ONE
    return v


class _Ln(CReal):
    __slots__ = ("x", "cert")

    def __init__(self, x: CReal, cert: ApartnessCertificate):
        super().__init__()
        if cert.sign < 0:
            raise InvalidCertificate(
                "ln needs its argument certified positive; this "
                "certificate proves it negative")
        if not cert.revalidate(x):
            raise InvalidCertificate(
                f"apartness certificate (k={cert.witness_precision}) "
                f"does not hold for the ln argument")
        self.x, self.cert = x, cert

    def _compute(self, j: int) -> BigDyadic:
        c = self.cert.witness_precision
        # with x > 2**-c, an approximation at c+6 has relative error
        # at most 1/63, so the power-of-two window chosen from it keeps
        # the series argument u - 1 within [-0.33, 0.40]
        x0 = self.x.approx(c + 6)
        mb = x0.mantissa.bit_length()
        e = x0.exponent + mb - 1
        if x0.scale2(-e) >= dyadic(11, -3):
            e += 1
        p2 = _budget(j + 6 + max(0, -e))
        xv = self.x._raw(p2)
        tv = xv.scale2(-e) - ONE
        # series argument error <= 2**-(j+6); d ln(1+t)/dt <= 4 on the
        # window, so the argument contributes at most 2**-(j+4)
        v = _eval_ln1p_series(tv, j + 5)
        if e != 0:
            tl = _budget(j + 4 + abs(e).bit_length())
            v = v + _ln2()._raw(tl).mul_int(e)
        return _cr.grid_round(v, j + 1)


class _Ln2(CReal):
    """ln 2 = -ln(1/2), evaluated directly from the series kernel."""

    __slots__ = ()

    def _compute(self, j: int) -> BigDyadic:
        return -_eval_ln1p_series(dyadic(-1, -1), j)


_LN2_LOCK = threading.Lock()
_LN2_NODE = None


def _ln2() -> CReal:
    global _LN2_NODE
    with _LN2_LOCK:
        if _LN2_NODE is None:
            _LN2_NODE = _Ln2()
        return _LN2_NODE


class _AtanRat(CReal):
    """arctan(p/q) for an exact rational with |p/q| <= 1/2."""

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int):
        super().__init__()
        if q == 0:
            raise ValueError("zero denominator")
        if q < 0:
            p, q = -p, -q
        if 2 * abs(p) > q:
            raise ValueError("atan_rat needs |p/q| <= 1/2")
        self.p, self.q = p, q

    def _compute(self, j: int) -> BigDyadic:
        return _cr.grid_round(_eval_atan_series(self.p, self.q, j + 2),
                              j + 1)


class _PiLeibniz(CReal):
    """pi as four times the alternating odd-reciprocal series.

    Deliberately evaluated through the generic series combinator: the
    partial sum for precision k needs about 2**k terms, which is why
    construction takes a feasibility cap and approx() raises
    ResourceExhausted beyond it.  This route exists for cross-checking
    the fast routes at low precision, not for production use.
    """

    __slots__ = ("cap", "series")

    def __init__(self, cap: int):
        super().__init__()
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.cap = cap
        self.series = series_sum(
            lambda n: const(1 if n % 2 == 0 else -1, 2 * n + 1),
            lambda k: 1 << k,
        )

    def _compute(self, j: int) -> BigDyadic:
        if j - 2 > self.cap:
            raise ResourceExhausted(
                f"the alternating-series pi route is capped at precision "
                f"2^-{self.cap}; requested 2^-{j - 2}")
        return self.series._raw(j + 2).scale2(2)


class _PiCosIter(CReal):
    """pi as twice the limit of p <- p + cos(p), started at p = 1.

    Writing p_n = pi/2 + u_n, the step gives u_{n+1} = u_n - sin(u_n),
    and |u - sin u| <= |u|**3 / 6, so the iteration contracts cubically
    once |u| < 1.  Verified deviation bounds: |u_1| <= 0.6 and
    |u_2| <= 2**-4, and from B**3/6 <= B**3/4 the exponents then follow
    t(n+1) = 3 t(n) + 2, i.e. 4, 14, 44, 134, 404, ...  The modulus
    below simply walks that table, so precision 2**-100 needs only five
    sequence elements.
    """

    __slots__ = ("_seq_nodes", "_seq_lock", "_lim")

    def __init__(self):
        super().__init__()
        self._seq_nodes = [const(0)]
        self._seq_lock = threading.Lock()
        self._lim = lim(self._p, self._modulus)

    def _p(self, n: int) -> CReal:
        with self._seq_lock:
            while len(self._seq_nodes) <= n:
                prev = self._seq_nodes[-1]
                self._seq_nodes.append(prev + _SinCos(prev, want_sin=False))
            return self._seq_nodes[n]

    @staticmethod
    def _modulus(k: int) -> int:
        n, t = 1, 0
        while t < k:
            n += 1
            t = 4 if n == 2 else 3 * t + 2
        return n

    def _compute(self, j: int) -> BigDyadic:
        return self._lim._raw(j + 1).scale2(1)


# -- public constructors --------------------------------------------------

def exp(x) -> CReal:
    """The exponential of a real."""
    return _Exp(_cr._coerce(x))


def sin(x) -> CReal:
    return _SinCos(_cr._coerce(x), want_sin=True)


def cos(x) -> CReal:
    return _SinCos(_cr._coerce(x), want_sin=False)


def tan(x, cert: ApartnessCertificate) -> CReal:
    """tan(x) = sin(x) / cos(x); cert must certify cos(x) apart from 0.

    The certificate is revalidated against a fresh cos(x) node, which
    is sound because approximations are deterministic.
    """
    xc = _cr._coerce(x)
    return _cr._Mul(sin(xc), _cr._Recip(cos(xc), cert))


def ln(x, cert: ApartnessCertificate) -> CReal:
    """The natural logarithm; cert must certify x > 0."""
    return _Ln(_cr._coerce(x), cert)


def atan_rat(p: int, q: int) -> CReal:
    """arctan(p/q) for an exact rational argument with |p/q| <= 1/2."""
    return _AtanRat(p, q)


DEFAULT_LEIBNIZ_CAP = 24

_PI_LOCK = threading.Lock()
_PI_CACHE: dict = {}


def pi(method: str = "machin", *, leibniz_cap: int | None = None) -> CReal:
    """The circle constant, by one of three routes.

    "machin": 16 atan(1/5) - 4 atan(1/239); the production route.
    "cos_iteration": twice the limit of p <- p + cos(p).
    "leibniz": four times the alternating odd-reciprocal series, capped
    at ``leibniz_cap`` (default 24) bits of precision because its cost
    grows as 2**k.

    Nodes are cached, so repeated calls share approximation work.
    """
    if method == "leibniz":
        cap = DEFAULT_LEIBNIZ_CAP if leibniz_cap is None else leibniz_cap
        key = ("leibniz", cap)
    elif method in ("machin", "cos_iteration"):
        if leibniz_cap is not None:
            raise ValueError("leibniz_cap only applies to the leibniz route")
        key = (method,)
    else:
        raise ValueError(f"unknown pi method {method!r}")
    with _PI_LOCK:
        node = _PI_CACHE.get(key)
        if node is None:
            if method == "machin":
                node = _Sub(_Scale2(_AtanRat(1, 5), 4),
                            _Scale2(_AtanRat(1, 239), 2))
            elif method == "cos_iteration":
                node = _PiCosIter()
            else:
                node = _PiLeibniz(key[1])
            _PI_CACHE[key] = node
        return node
