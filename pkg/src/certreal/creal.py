"""Computable reals with an explicit approximation contract.

A CReal is a node in a dag of exact rational constants, ring
operations, certified reciprocals, limits and series.  The one public
entry point is ``approx(x, k)``, which returns a dyadic q with

    |x - q| <= 2**-k        and        q on the 2**-(k+2) grid

(in fact always on the 2**-(k+1) grid).  Together with the triangle
inequality this gives the regularity property

    |approx(x, k1) - approx(x, k2)| <= 2**-k1 + 2**-k2

for every pair of precisions, with no shared state needed.  Every
computation is integer arithmetic, so approximations are deterministic
and bit-identical across runs and platforms.

Internally each node computes a slightly better "raw" approximation
(error at most 2**-j for requested j) and the public method rounds it
onto a fixed grid.  Results are memoized per precision under a
per-node lock; since recomputation is deterministic, a lost race can
only store the identical value, and caching is observation-transparent.

Strict comparisons are only semi-decidable: cmp_semidecide deepens
precision along an exponential schedule and reports Proved or Refuted
with an exact enclosure certificate, or Exhausted when the budget ends
before the enclosures separate (which is what happens, forever, for
equal numbers).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import dyadic as _dy
from .dyadic import (BigDyadic, ONE, ZERO, div_nearest, dyadic,
                     power_of_two, round_to)
from .errors import InvalidCertificate, ResourceExhausted
from .intervals import Interval

# Hard ceiling on internal raw precision requests.  Anything over this
# is a runaway budget, not a legitimate computation.
PRECISION_LIMIT = 1 << 22


def grid_round(a: BigDyadic, k: int) -> BigDyadic:
    """Single rounding chokepoint for this backend.

    Every grid rounding in the approximation backend goes through here
    (the interval backend does not), so conformance fault tests can
    corrupt it in one place and watch the cross-check catch it.
    """
    return round_to(a, k)


def _checked_precision(j: int) -> int:
    if not isinstance(j, int):
        raise TypeError("precision must be an int")
    if j < 0:
        raise ValueError("precision must be nonnegative")
    if j > PRECISION_LIMIT:
        raise ResourceExhausted(f"precision request 2^-{j} over the limit")
    return j


class CReal:
    """Base class; concrete nodes implement _compute(j).

    _compute(j) must return a dyadic within 2**-j of the exact value.
    It has no grid obligation; the public approx() does the final
    rounding.
    """

    __slots__ = ("_lock", "_raw_memo", "_approx_memo")

    def __init__(self):
        self._lock = threading.Lock()
        self._raw_memo: dict = {}
        self._approx_memo: dict = {}

    def approx(self, k: int) -> BigDyadic:
        """Dyadic approximation with |x - approx(x, k)| <= 2**-k."""
        _checked_precision(k)
        with self._lock:
            q = self._approx_memo.get(k)
        if q is None:
            # raw error 2**-(k+2) plus half a 2**-(k+1) grid step
            q = grid_round(self._raw(k + 2), k + 1)
            with self._lock:
                q = self._approx_memo.setdefault(k, q)
        return q

    def _raw(self, j: int) -> BigDyadic:
        _checked_precision(j)
        with self._lock:
            v = self._raw_memo.get(j)
        if v is None:
            v = self._compute(j)
            with self._lock:
                v = self._raw_memo.setdefault(j, v)
        return v

    def _compute(self, j: int) -> BigDyadic:
        raise NotImplementedError

    # Convenience operators for ring operations.  Division is not an
    # operator: it needs an apartness certificate, see recip().

    def __add__(self, other):
        return _Add(self, _coerce(other))

    def __radd__(self, other):
        return _Add(_coerce(other), self)

    def __sub__(self, other):
        return _Sub(self, _coerce(other))

    def __rsub__(self, other):
        return _Sub(_coerce(other), self)

    def __mul__(self, other):
        return _Mul(self, _coerce(other))

    def __rmul__(self, other):
        return _Mul(_coerce(other), self)

    def __neg__(self):
        return _Neg(self)


def _coerce(v) -> CReal:
    if isinstance(v, CReal):
        return v
    if isinstance(v, bool):
        raise TypeError("cannot interpret a bool as a real")
    if isinstance(v, int):
        return const(v)
    if isinstance(v, Fraction):
        return const(v)
    if isinstance(v, BigDyadic):
        return const(Fraction(v.mantissa, 1) * Fraction(2) ** v.exponent)
    raise TypeError(f"cannot interpret {v!r} as a real")


class _Const(CReal):
    __slots__ = ("value",)

    def __init__(self, value: Fraction):
        super().__init__()
        self.value = value

    def _compute(self, j: int) -> BigDyadic:
        p, q = self.value.numerator, self.value.denominator
        v = dyadic(div_nearest(p << (j + 3), q), -(j + 3))
        return grid_round(v, j + 1)


def const(num, den=1) -> CReal:
    """The exact rational num/den as a real."""
    return _Const(Fraction(num, den))


class _Add(CReal):
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        super().__init__()
        self.x, self.y = x, y

    def _compute(self, j: int) -> BigDyadic:
        return grid_round(self.x._raw(j + 2) + self.y._raw(j + 2), j + 1)


class _Sub(CReal):
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        super().__init__()
        self.x, self.y = x, y

    def _compute(self, j: int) -> BigDyadic:
        return grid_round(self.x._raw(j + 2) - self.y._raw(j + 2), j + 1)


class _Neg(CReal):
    __slots__ = ("x",)

    def __init__(self, x):
        super().__init__()
        self.x = x

    def _compute(self, j: int) -> BigDyadic:
        return -self.x._raw(j)


class _Scale2(CReal):
    """Exact multiplication by 2**s."""

    __slots__ = ("x", "s")

    def __init__(self, x, s: int):
        super().__init__()
        self.x, self.s = x, s

    def _compute(self, j: int) -> BigDyadic:
        return self.x._raw(max(0, j + self.s)).scale2(self.s)


class _Mul(CReal):
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        super().__init__()
        self.x, self.y = x, y

    def _compute(self, j: int) -> BigDyadic:
        # magnitude bounds from coarse approximations drive the operand
        # precisions:  |x| <= |approx(x,0)| + 1 <= 2**ax
        ax = (abs(self.x.approx(0)) + ONE).ceil_log2()
        ay = (abs(self.y.approx(0)) + ONE).ceil_log2()
        xv = self.x._raw(j + 2 + ay)
        yv = self.y._raw(j + 3 + ax)
        return grid_round(xv * yv, j + 1)


@dataclass(frozen=True, slots=True)
class ApartnessCertificate:
    """Witness that a real is boundedly away from zero.

    witness_precision is a k with |approx(x, k)| > 2 * 2**-k, which
    implies |x| > 2**-k and fixes the sign.  The certificate pins down
    nothing else; in particular it carries no upper bound.
    """

    witness_precision: int
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("certificate sign must be -1 or +1")
        if not isinstance(self.witness_precision, int) or \
                self.witness_precision < 0:
            raise ValueError("witness precision must be a nonnegative int")

    def revalidate(self, x: CReal) -> bool:
        """Recheck the witness against x by one approximation call."""
        k = self.witness_precision
        q = x.approx(k)
        return q.sign() == self.sign and abs(q) > power_of_two(1 - k)

    def lower_bound(self) -> BigDyadic:
        """|x| exceeds this bound whenever the certificate is valid."""
        return power_of_two(-self.witness_precision)


class _Recip(CReal):
    __slots__ = ("x", "cert")

    def __init__(self, x, cert: ApartnessCertificate):
        super().__init__()
        if not cert.revalidate(x):
            raise InvalidCertificate(
                f"apartness certificate (k={cert.witness_precision}, "
                f"sign={cert.sign:+d}) does not hold for this real")
        self.x, self.cert = x, cert

    def _compute(self, j: int) -> BigDyadic:
        c = self.cert.witness_precision
        # |x| > 2**-c, so at operand precision p the relative setup gives
        # |1/x - 1/xv| <= 2**(2c - p + 1); p = j + 2c + 3 puts that at
        # 2**-(j+2)
        xv = self.x._raw(j + 2 * c + 3)
        assert not xv.is_zero()
        g = j + 2
        m, e = xv.mantissa, xv.exponent
        sgn = 1 if m > 0 else -1
        ma = abs(m)
        shift = g - e
        if shift >= 0:
            n = div_nearest(1 << shift, ma)
        else:
            n = div_nearest(1, ma << -shift)
        return dyadic(sgn * n, -g)


def recip(x: CReal, cert: ApartnessCertificate) -> CReal:
    """1/x, justified by an apartness certificate (revalidated here)."""
    return _Recip(x, cert)


def div(x, y: CReal, cert: ApartnessCertificate) -> CReal:
    """x/y as x * recip(y); cert must certify y apart from zero."""
    return _Mul(_coerce(x), _Recip(y, cert))


def scale2(x: CReal, s: int) -> CReal:
    """x * 2**s, exactly."""
    return _Scale2(x, s)


class _Lim(CReal):
    __slots__ = ("seq", "modulus")

    def __init__(self, seq, modulus):
        super().__init__()
        self.seq, self.modulus = seq, modulus

    def _compute(self, j: int) -> BigDyadic:
        n = self.modulus(j + 1)
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"modulus returned {n!r}, want an int >= 0")
        u = self.seq(n)
        if not isinstance(u, CReal):
            raise TypeError("sequence must produce CReal values")
        # |L - seq(n)| <= 2**-(j+1) by the modulus contract, plus the
        # approximation error of seq(n) itself
        return u._raw(j + 1)


def lim(seq: Callable[[int], CReal], modulus: Callable[[int], int]) -> CReal:
    """Limit of a sequence with an explicit convergence modulus.

    Contract: |seq(m) - L| <= 2**-k for every m >= modulus(k).  Both
    callables must be pure; they are invoked lazily and their results
    enter the per-node cache.
    """
    return _Lim(seq, modulus)


class _Series(CReal):
    __slots__ = ("terms", "tail_bound")

    def __init__(self, terms, tail_bound):
        super().__init__()
        self.terms, self.tail_bound = terms, tail_bound

    def _compute(self, j: int) -> BigDyadic:
        n = self.tail_bound(j + 1)
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"tail_bound returned {n!r}, want an int >= 0")
        if n == 0:
            return ZERO
        # split the 2**-j budget: 2**-(j+1) tail, 2**-(j+2) across the
        # partial sum, 2**-(j+2) for the final rounding
        q = j + 2 + (n - 1).bit_length()
        acc = ZERO
        for i in range(n):
            t = self.terms(i)
            if not isinstance(t, CReal):
                raise TypeError("terms must produce CReal values")
            acc = acc + t._raw(q)
        return grid_round(acc, j + 1)


def series_sum(terms: Callable[[int], CReal],
               tail_bound: Callable[[int], int]) -> CReal:
    """Sum of a series with an explicit tail bound.

    Contract: |sum_{n >= tail_bound(k)} terms(n)| <= 2**-k.  The partial
    sum is evaluated to tail_bound(k+1) terms at matching per-term
    precision.  Both callables must be pure.
    """
    return _Series(terms, tail_bound)


# -- apartness search and comparison -------------------------------------

def deepening_schedule(start_k: int, max_k: int):
    """Yields start_k, then roughly doubles, always ending exactly at
    max_k so the last probe runs at full budget."""
    if not (0 <= start_k <= max_k):
        raise ValueError("need 0 <= start_k <= max_k")
    k = start_k
    yield k
    while k < max_k:
        k = min(max(k + 1, 2 * k), max_k)
        yield k


def find_apart(x: CReal, start_k: int = 1, max_k: int = 60):
    """Search for an apartness-from-zero certificate for x.

    Returns an ApartnessCertificate, or None when every probe up to
    max_k was inconclusive.  None is NOT a proof that x == 0; it only
    means |x| <= 2 * 2**-max_k could not be excluded within the budget.
    """
    for k in deepening_schedule(start_k, max_k):
        q = x.approx(k)
        if abs(q) > power_of_two(1 - k):
            return ApartnessCertificate(k, q.sign())
    return None


@dataclass(frozen=True, slots=True)
class TraceStep:
    """One probe of a comparison: both enclosures at one precision."""

    precision: int
    lhs: Interval
    rhs: Interval
    backend: str = "approx"


@dataclass(frozen=True, slots=True)
class Proved:
    """The strict inequality holds; the enclosures separate.

    For relation '<' the certificate property is
    lhs_enclosure.hi < rhs_enclosure.lo (exact dyadic comparison); for
    '>' it is lhs_enclosure.lo > rhs_enclosure.hi.
    """

    precision: int
    lhs_enclosure: Interval
    rhs_enclosure: Interval
    trace: tuple
    relation: str = "<"

    def __str__(self):
        return f"Proved at precision 2^-{self.precision}"


@dataclass(frozen=True, slots=True)
class Refuted:
    """The reverse strict inequality holds (so the query is false)."""

    precision: int
    lhs_enclosure: Interval
    rhs_enclosure: Interval
    trace: tuple
    relation: str = "<"

    def __str__(self):
        return f"Refuted at precision 2^-{self.precision}"


@dataclass(frozen=True, slots=True)
class Exhausted:
    """No decision within the precision budget.

    Not a verdict: the sides may be equal (in which case no budget would
    ever decide) or merely closer than 2**-max_precision.
    """

    max_precision: int
    trace: tuple
    relation: str = "<"

    def __str__(self):
        return f"Exhausted at precision 2^-{self.max_precision}"


ProofOutcome = Proved | Refuted | Exhausted


def _enclosure(q: BigDyadic, k: int) -> Interval:
    r = power_of_two(-k)
    return Interval(q - r, q + r)


def cmp_semidecide(x: CReal, y: CReal,
                   start_k: int = 1, max_k: int = 4096) -> ProofOutcome:
    """Semi-decide the strict inequality x < y.

    Probes both numbers along the deepening schedule; at each precision
    the enclosures [approx +- 2**-k] either separate (Proved/Refuted
    with the separating enclosures as a re-checkable certificate) or
    overlap, in which case precision deepens.  Equal numbers always end
    Exhausted; that outcome proves nothing.
    """
    trace = []
    for k in deepening_schedule(start_k, max_k):
        ex = _enclosure(x.approx(k), k)
        ey = _enclosure(y.approx(k), k)
        trace.append(TraceStep(k, ex, ey))
        if ex.hi < ey.lo:
            return Proved(k, ex, ey, tuple(trace))
        if ey.hi < ex.lo:
            return Refuted(k, ex, ey, tuple(trace))
    return Exhausted(max_k, tuple(trace))


def archimedean_bound(x: CReal) -> int:
    """An integer n with x < n <= x + 9/4, from one coarse probe.

    n = floor(approx(x, 2)) + 2: with q = approx(x, 2) and |x - q| <=
    1/4 this gives x <= q + 1/4 < floor(q) + 2 = n and
    n <= q + 2 <= x + 9/4.
    """
    return x.approx(2).floor() + 2
