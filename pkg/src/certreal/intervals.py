"""Outward-rounded dyadic interval arithmetic.

This is the package's second, independent evaluation backend.  It
shares the raw series kernels with the approximation backend but none
of the surrounding plumbing: arguments here are exact dyadic interval
endpoints, reductions work on exact values, and all rounding is
directed outward, so every produced interval provably contains the
exact value of the expression.

The point of having two backends is cross-checking: conformance_check
compares an interval enclosure against the approximation backend's
certified enclosure of the same expression and fails loudly if they
are disjoint, which would mean one of the two is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .dyadic import (BigDyadic, ZERO, ONE, dyadic, div_nearest, power_of_two,
                     round_ceil, round_floor)
from .errors import DomainUndetermined, DomainViolation, ResourceExhausted

_MINUS_ONE = dyadic(-1)

# Hard cap on working precision, mirroring the approximation backend.
_PRECISION_LIMIT = 1 << 22


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] with exact dyadic endpoints."""

    lo: BigDyadic
    hi: BigDyadic

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    def width(self) -> BigDyadic:
        return self.hi - self.lo

    def midpoint(self) -> BigDyadic:
        """Exact midpoint (dyadics are closed under halving)."""
        return (self.lo + self.hi).scale2(-1)

    def radius(self) -> BigDyadic:
        return (self.hi - self.lo).scale2(-1)

    def contains(self, v: BigDyadic) -> bool:
        return self.lo <= v <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo.sign() > 0

    def strictly_negative(self) -> bool:
        return self.hi.sign() < 0

    def contains_zero(self) -> bool:
        return self.lo.sign() <= 0 <= self.hi.sign()

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def point(v: BigDyadic) -> Interval:
    return Interval(v, v)


def from_point_err(v: BigDyadic, err: BigDyadic, w: int) -> Interval:
    """Enclosure of a point known to within +-err, on the 2**-w grid."""
    return Interval(round_floor(v - err, w), round_ceil(v + err, w))


# -- outward-rounded interval operations ---------------------------------

def iadd(a: Interval, b: Interval, w: int) -> Interval:
    return Interval(round_floor(a.lo + b.lo, w), round_ceil(a.hi + b.hi, w))


def ineg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def isub(a: Interval, b: Interval, w: int) -> Interval:
    return iadd(a, ineg(b), w)


def imul(a: Interval, b: Interval, w: int) -> Interval:
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(round_floor(min(products), w),
                    round_ceil(max(products), w))


def _recip_floor(d: BigDyadic, w: int) -> BigDyadic:
    # floor(2**w / d) / 2**w, exact directed rounding for d != 0
    m, e = d.mantissa, d.exponent
    num_shift = w - e
    if num_shift >= 0:
        return dyadic((1 << num_shift) // m, -w)
    return dyadic(1 // (m << -num_shift), -w)


def _recip_ceil(d: BigDyadic, w: int) -> BigDyadic:
    return -_recip_floor(-d, w)


def irecip(a: Interval, w: int) -> Interval:
    """Reciprocal; the operand interval must not contain zero."""
    if a.contains_zero():
        raise DomainUndetermined(w, "reciprocal of an interval containing 0")
    return Interval(_recip_floor(a.hi, w), _recip_ceil(a.lo, w))


def idiv(a: Interval, b: Interval, w: int) -> Interval:
    return imul(a, irecip(b, w + 2), w)


# -- certified point evaluations of the transcendental functions ---------
#
# Each _*_point helper takes an exact dyadic argument and a target t and
# returns a value within 2**-t of the true function value.  They use the
# same series kernels as the approximation backend but carry their own
# reduction and budget logic over exact arguments.

def _term_cap_exp(t: int) -> int:
    # remainder after N terms of exp at |r| <= 5/8 is < 2 * (5/8)**N / N!
    n, p5, p8 = 0, 1, 1
    bound = 1 << (t + 2)
    while p5 * bound > p8:
        n += 1
        p5 *= 5
        p8 *= 8 * n
    return n


def _term_cap_sin(t: int) -> int:
    # first omitted term at |r| <= 9/8 is (9/8)**(2N+1) / (2N+1)!
    n, p9, p8f = 0, 9, 8
    bound = 1 << (t + 1)
    while p9 * bound > p8f:
        n += 1
        p9 *= 81
        p8f *= 64 * (2 * n) * (2 * n + 1)
    return n


def _term_cap_cos(t: int) -> int:
    n, p9, p8f = 0, 1, 1
    bound = 1 << (t + 1)
    while p9 * bound > p8f:
        n += 1
        p9 *= 81
        p8f *= 64 * (2 * n - 1) * (2 * n)
    return n


def _term_cap_atan(t: int, p: int, q: int) -> int:
    # first omitted term is |u|**(2N+1) / (2N+1), u = p/q
    pa = abs(p)
    if pa == 0:
        return 1
    n = 0
    pn, pd = pa, q
    bound = 1 << (t + 1)
    while pn * bound > pd * (2 * n + 1):
        n += 1
        pn *= pa * pa
        pd *= q * q
    return n + 1


def _term_cap_ln1p(t: int) -> int:
    # remainder after N terms at |t| <= 5/8 is < (5/8)**(N+1) * 8/3 / (N+1)
    n, p5, p8 = 0, 5, 8
    bound = 1 << (t + 4)
    while p5 * bound > p8 * 3 * (n + 1):
        n += 1
        p5 *= 5
        p8 *= 8
    return n + 1


def _to_scaled(d: BigDyadic, w: int) -> int:
    """Nearest integer to d * 2**w; error at most half an ulp."""
    m, e = d.mantissa, d.exponent
    shift = e + w
    if shift >= 0:
        return m << shift
    return div_nearest(m, 1 << -shift)


def _check_budget(t: int) -> int:
    if t > _PRECISION_LIMIT:
        raise ResourceExhausted(f"interval working precision {t} over limit")
    return t


def _series_exp(r: BigDyadic, t: int) -> BigDyadic:
    """exp(r) within 2**-t for |r| <= 5/8."""
    cap = _term_cap_exp(t)
    w = _check_budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.exp_series(_to_scaled(r, w), w, cap), -w)

def _series_sin(r: BigDyadic, t: int) -> BigDyadic:
    cap = _term_cap_sin(t)
    w = _check_budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.sin_series(_to_scaled(r, w), w, cap), -w)

def _series_cos(r: BigDyadic, t: int) -> BigDyadic:
    cap = _term_cap_cos(t)
    w = _check_budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.cos_series(_to_scaled(r, w), w, cap), -w)

def _series_atan(p: int, q: int, t: int) -> BigDyadic:
    cap = _term_cap_atan(t, p, q)
    w = _check_budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.atan_series(p, q, w, cap), -w)

def _series_ln1p(v: BigDyadic, t: int) -> BigDyadic:
    cap = _term_cap_ln1p(t)
    w = _check_budget(t + 2 + (8 * cap + 16).bit_length())
    return dyadic(kernels.ln1p_series(_to_scaled(v, w), w, cap), -w)


def _exp_point(d: BigDyadic, t: int) -> BigDyadic:
    """exp(d) within 2**-t, for an exact dyadic d."""
    if d.is_zero():
        return ONE
    # 2**E bounds exp(d) from above: exp(H) <= 2**(1.5 H) for integer H >= d
    h = d.ceil()
    e_bits = max(0, (3 * h + 1) // 2)
    # halve until the reduced argument is at most 1/2 (exactly: d is exact)
    m = max(0, d.ceil_log2() + 1)
    amp = m + e_bits + 1
    ts = _check_budget(t + 3 + amp)
    v = _series_exp(d.scale2(-m), ts)
    # m squarings; total amplification of the series error plus the
    # per-squaring roundings stays under 2**amp ulps of 2**-ts
    for _ in range(m):
        v = _round_mid(v * v, ts)
    return v


def _round_mid(a: BigDyadic, k: int) -> BigDyadic:
    # nearest rounding used inside point pipelines (not outward: the
    # rounding error is accounted in the error budget instead)
    m, e = a.mantissa, a.exponent
    if m == 0 or e >= -k:
        return a
    return dyadic(div_nearest(m, 1 << (-k - e)), -k)


def _clamp_unit(v: BigDyadic) -> BigDyadic:
    # sin/cos iterates have true values in [-1, 1]; clamping the
    # approximation can only shrink its error
    if v > ONE:
        return ONE
    if v < _MINUS_ONE:
        return _MINUS_ONE
    return v


def _sin_point(d: BigDyadic, t: int) -> BigDyadic:
    return _sincos_point(d, t, want_sin=True)


def _cos_point(d: BigDyadic, t: int) -> BigDyadic:
    return _sincos_point(d, t, want_sin=False)


def _sincos_point(d: BigDyadic, t: int, want_sin: bool) -> BigDyadic:
    # reduce |d| under 1 by dividing by 3**m, evaluate the series, then
    # walk back up with the triple-angle identities
    m = 0
    p3 = 1
    ad = abs(d)
    while ad > dyadic(p3):
        m += 1
        p3 *= 3
    amp = 4 * m + 1
    ts = _check_budget(t + 3 + amp)
    if m == 0:
        r = d
    else:
        # nearest division by 3**m on a fine grid; the residue is budgeted
        mm, ee = d.mantissa, d.exponent
        g = ts + 2
        shift = ee + g
        if shift >= 0:
            r = dyadic(div_nearest(mm << shift, p3), -g)
        else:
            r = dyadic(div_nearest(mm, p3 << -shift), -g)
    v = _series_sin(r, ts) if want_sin else _series_cos(r, ts)
    for _ in range(m):
        v = _clamp_unit(v)
        v3 = v * v * v
        if want_sin:
            v = _round_mid(v.mul_int(3) - v3.mul_int(4), ts)
        else:
            v = _round_mid(v3.mul_int(4) - v.mul_int(3), ts)
    return _clamp_unit(v)


_LN2_CACHE: dict = {}


def _ln2_point(t: int) -> BigDyadic:
    """ln 2 within 2**-t."""
    v = _LN2_CACHE.get(t)
    if v is None:
        v = -_series_ln1p(dyadic(-1, -1), t)
        _LN2_CACHE[t] = v
    return v


def _ln_point(d: BigDyadic, t: int) -> BigDyadic:
    """ln(d) within 2**-t, for an exact dyadic d > 0."""
    if d.sign() <= 0:
        raise ValueError("ln point evaluation needs a positive argument")
    m, e = d.mantissa, d.exponent
    # u = d / 2**ebase lies in [1, 2); shift one more when u >= 3/2 so the
    # series argument u - 1 satisfies |u - 1| <= 1/2 exactly
    ebase = e + m.bit_length() - 1
    u = d.scale2(-ebase)
    if u >= dyadic(3, -1):
        ebase += 1
        u = u.scale2(-1)
    tv = u - ONE
    if ebase == 0:
        return _series_ln1p(tv, t + 1)
    tl = t + 2 + abs(ebase).bit_length()
    return _series_ln1p(tv, t + 2) + _ln2_point(tl).mul_int(ebase)


def _pi_point(t: int) -> BigDyadic:
    """pi = 16 atan(1/5) - 4 atan(1/239), within 2**-t."""
    a = _series_atan(1, 5, t + 5)
    b = _series_atan(1, 239, t + 5)
    return a.scale2(4) - b.scale2(2)


# -- expression evaluation ------------------------------------------------

def _eval(e, w: int) -> Interval:
    from . import lang

    r = power_of_two(-(w + 2))
    if isinstance(e, lang.IntLit):
        return point(dyadic(e.value))
    if isinstance(e, lang.DecLit):
        num, den = e.num, e.den
        scaled = num << w if w >= 0 else num >> -w
        return Interval(dyadic(scaled // den, -w),
                        dyadic(-((-scaled) // den), -w))
    if isinstance(e, lang.PiConst):
        return from_point_err(_pi_point(w + 2), r, w)
    if isinstance(e, lang.Neg):
        return ineg(_eval(e.arg, w))
    if isinstance(e, lang.BinOp):
        a = _eval(e.lhs, w)
        b = _eval(e.rhs, w)
        if e.op == "+":
            return iadd(a, b, w)
        if e.op == "-":
            return isub(a, b, w)
        if e.op == "*":
            return imul(a, b, w)
        if e.op == "/":
            return idiv(a, b, w)
        raise AssertionError(f"unknown operator {e.op!r}")
    if isinstance(e, lang.Call):
        a = _eval(e.arg, w)
        if e.fn == "exp":
            return Interval(
                round_floor(_exp_point(a.lo, w + 2) - r, w),
                round_ceil(_exp_point(a.hi, w + 2) + r, w))
        if e.fn == "ln":
            if a.strictly_negative():
                raise DomainViolation(
                    e.arg.span, a,
                    f"ln argument enclosed by {a}, which is negative")
            if not a.strictly_positive():
                raise DomainUndetermined(
                    w, "ln argument interval does not exclude 0")
            return Interval(
                round_floor(_ln_point(a.lo, w + 2) - r, w),
                round_ceil(_ln_point(a.hi, w + 2) + r, w))
        if e.fn in ("sin", "cos"):
            mid = a.midpoint()
            rad = a.radius()
            f = _sin_point if e.fn == "sin" else _cos_point
            v = f(mid, w + 2)
            raw = Interval(round_floor(v - rad - r, w),
                           round_ceil(v + rad + r, w))
            # |sin|, |cos| <= 1: clipping is sound and keeps tan stable
            lo = max(raw.lo, _MINUS_ONE)
            hi = min(raw.hi, ONE)
            return Interval(lo, hi)
        if e.fn == "tan":
            # quotient of the sine and cosine enclosures; contains tan
            si = _eval(lang.Call("sin", e.arg, e.span), w + 4)
            co = _eval(lang.Call("cos", e.arg, e.span), w + 4)
            if co.contains_zero():
                raise DomainUndetermined(
                    w, "cos enclosure for tan does not exclude 0")
            return idiv(si, co, w)
        raise AssertionError(f"unknown function {e.fn!r}")
    if isinstance(e, lang.Query):
        raise TypeError("cannot evaluate a comparison query as a value")
    raise TypeError(f"not an expression node: {e!r}")


@dataclass(frozen=True, slots=True)
class IntervalResult:
    interval: Interval
    converged: bool
    requested_precision: int


def eval_interval(e, k: int) -> IntervalResult:
    """Enclosure of the expression, refined until its width is at most
    2**(1-k) or the internal retry schedule runs out.

    An unconverged result is still a sound enclosure; it is only wider
    than requested.  DomainUndetermined propagates if a domain sign
    condition stays undecided at every retry precision.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError("precision must be a nonnegative integer")
    target = power_of_two(1 - k)
    last = None
    failure = None
    for w in (k + 12, 2 * k + 24, 4 * k + 48):
        try:
            iv = _eval(e, w)
        except DomainUndetermined as exc:
            failure = exc
            continue
        if iv.width() <= target:
            return IntervalResult(iv, True, k)
        last = iv
    if last is not None:
        return IntervalResult(last, False, k)
    raise DomainUndetermined(k) from failure


@dataclass(frozen=True, slots=True)
class ConformanceReport:
    passed: bool
    precision: int
    approx_enclosure: Interval
    interval_enclosure: Interval
    converged: bool
    expression: object

    def __str__(self) -> str:
        verdict = "ok" if self.passed else "DISJOINT"
        return (f"conformance {verdict} at 2^-{self.precision}: "
                f"approx {self.approx_enclosure} vs "
                f"interval {self.interval_enclosure}")


def conformance_check(e, k: int, budget=None) -> ConformanceReport:
    """Cross-check the two backends on one expression.

    The approximation backend's enclosure [q - 2**-k, q + 2**-k] and the
    interval backend's enclosure both contain the exact value, so they
    must intersect; a disjoint pair means an engine bug.  Domain errors
    from elaboration propagate to the caller.
    """
    from . import lang

    c = lang.elaborate(e, budget)
    q = c.approx(k)
    rad = power_of_two(-k)
    approx_encl = Interval(q - rad, q + rad)
    res = eval_interval(e, k)
    return ConformanceReport(
        passed=approx_encl.intersects(res.interval),
        precision=k,
        approx_enclosure=approx_encl,
        interval_enclosure=res.interval,
        converged=res.converged,
        expression=e,
    )
