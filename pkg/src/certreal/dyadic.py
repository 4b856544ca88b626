"""Exact dyadic rationals: arbitrary-precision values of the form m * 2**e.

This is the carrier type for every approximation in the package.  All
operations are exact except the explicit rounding helpers, and every
operation preserves the canonical form (mantissa odd or zero, exponent
zero when the mantissa is zero), so equal values always have equal
representations and can be compared, hashed and serialized bit-exactly.

Exponents are bounded; exceeding the bound raises ExponentOverflow
rather than silently producing a number the rest of the engine cannot
budget for.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExponentOverflow

# Generous but hard limit on |exponent|.  Precision budgets in the rest
# of the package stay in the low tens of thousands; anything near this
# bound is a bug, not a value.
EXPONENT_LIMIT = 1 << 40

# Cap on the bit distance spanned when aligning two operands.  Protects
# against memory blowups from adding numbers of wildly different scale.
_ALIGN_LIMIT = 1 << 26


def _check_exponent(e: int) -> int:
    if -EXPONENT_LIMIT <= e <= EXPONENT_LIMIT:
        return e
    raise ExponentOverflow(f"dyadic exponent {e} out of range")


@dataclass(frozen=True, slots=True)
class BigDyadic:
    """m * 2**e in canonical form.  Construct via dyadic(), not directly."""

    mantissa: int
    exponent: int

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def sign(self) -> int:
        m = self.mantissa
        return (m > 0) - (m < 0)

    def as_fraction(self) -> Fraction:
        e = self.exponent
        if e >= 0:
            return Fraction(self.mantissa << e, 1)
        return Fraction(self.mantissa, 1 << -e)

    def bit_size(self) -> int:
        """Bits in the mantissa; a rough cost measure."""
        return self.mantissa.bit_length()

    def ceil_log2(self) -> int:
        """Smallest t with |self| <= 2**t.  Requires self != 0."""
        if self.mantissa == 0:
            raise ValueError("ceil_log2 of zero")
        m = abs(self.mantissa)
        # m has bit_length() b, so 2**(b-1) <= m <= 2**b - 1; m is a
        # power of two exactly when m == 1 thanks to canonical form.
        b = m.bit_length()
        if m == 1:
            return self.exponent
        return self.exponent + b

    # -- arithmetic (exact) -----------------------------------------------

    def __neg__(self) -> "BigDyadic":
        return BigDyadic(-self.mantissa, self.exponent)

    def __abs__(self) -> "BigDyadic":
        return BigDyadic(abs(self.mantissa), self.exponent)

    def __add__(self, other: "BigDyadic") -> "BigDyadic":
        if not isinstance(other, BigDyadic):
            return NotImplemented
        ma, ea = self.mantissa, self.exponent
        mb, eb = other.mantissa, other.exponent
        if ma == 0:
            return other
        if mb == 0:
            return self
        if ea == eb:
            return dyadic(ma + mb, ea)
        if ea > eb:
            shift = ea - eb
            if shift > _ALIGN_LIMIT:
                raise ExponentOverflow(f"alignment span {shift} too large")
            return dyadic((ma << shift) + mb, eb)
        shift = eb - ea
        if shift > _ALIGN_LIMIT:
            raise ExponentOverflow(f"alignment span {shift} too large")
        return dyadic(ma + (mb << shift), ea)

    def __sub__(self, other: "BigDyadic") -> "BigDyadic":
        if not isinstance(other, BigDyadic):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "BigDyadic") -> "BigDyadic":
        if not isinstance(other, BigDyadic):
            return NotImplemented
        return dyadic(self.mantissa * other.mantissa,
                      self.exponent + other.exponent)

    def scale2(self, s: int) -> "BigDyadic":
        """Exact multiplication by 2**s (s may be negative)."""
        if self.mantissa == 0:
            return self
        return dyadic(self.mantissa, self.exponent + s)

    def mul_int(self, n: int) -> "BigDyadic":
        """Exact multiplication by an integer."""
        return dyadic(self.mantissa * n, self.exponent)

    # -- comparisons (exact, total order) ---------------------------------

    def compare(self, other: "BigDyadic") -> int:
        d = self - other
        return d.sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- integer parts ----------------------------------------------------

    def floor(self) -> int:
        m, e = self.mantissa, self.exponent
        if e >= 0:
            return m << e
        return m >> -e

    def ceil(self) -> int:
        return -((-self).floor())

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self) -> str:
        return f"BigDyadic({self.mantissa}, {self.exponent})"


def dyadic(mantissa: int, exponent: int = 0) -> BigDyadic:
    """Canonicalizing constructor: strips factors of 2 into the exponent."""
    if mantissa == 0:
        return _ZERO
    if mantissa & 1 == 0:
        shift = (mantissa & -mantissa).bit_length() - 1
        mantissa >>= shift
        exponent += shift
    return BigDyadic(mantissa, _check_exponent(exponent))


_ZERO = BigDyadic(0, 0)
ZERO = _ZERO
ONE = BigDyadic(1, 0)
TWO = BigDyadic(1, 1)


def from_int(n: int) -> BigDyadic:
    return dyadic(n, 0)


def power_of_two(e: int) -> BigDyadic:
    """The value 2**e."""
    return dyadic(1, e)


def div_nearest(a: int, b: int) -> int:
    """Round a/b to the nearest integer, ties to the even integer.

    b must be positive; a may have either sign.
    """
    if b <= 0:
        raise ValueError("div_nearest needs a positive divisor")
    q, r = divmod(a, b)
    r2 = r << 1
    if r2 > b or (r2 == b and q & 1):
        q += 1
    return q


def round_to(a: BigDyadic, k: int) -> BigDyadic:
    """Round to the grid of spacing 2**-k, nearest, ties to even mantissa.

    The result q satisfies |q - a| <= 2**-(k+1) and has exponent >= -k.
    """
    m, e = a.mantissa, a.exponent
    if m == 0 or e >= -k:
        return a
    shift = -k - e
    if shift > _ALIGN_LIMIT:
        raise ExponentOverflow(f"rounding span {shift} too large")
    return dyadic(div_nearest(m, 1 << shift), -k)


def round_floor(a: BigDyadic, k: int) -> BigDyadic:
    """Round down (toward -inf) to the grid of spacing 2**-k."""
    m, e = a.mantissa, a.exponent
    if m == 0 or e >= -k:
        return a
    shift = -k - e
    if shift > _ALIGN_LIMIT:
        raise ExponentOverflow(f"rounding span {shift} too large")
    return dyadic(m >> shift, -k)


def round_ceil(a: BigDyadic, k: int) -> BigDyadic:
    """Round up (toward +inf) to the grid of spacing 2**-k."""
    return -round_floor(-a, k)


def to_decimal_string(a: BigDyadic, digits: int) -> str:
    """Exact decimal rendering with the given number of fractional digits.

    The printed value is the nearest decimal with ``digits`` fractional
    digits (ties to even in the last digit), so it differs from the true
    value by at most half a unit in the last printed place.  A value
    that rounds to zero is printed without a sign.
    """
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    neg = a.mantissa < 0
    m, e = abs(a.mantissa), a.exponent
    p = 10 ** digits
    if e >= 0:
        scaled = (m << e) * p
    else:
        scaled = div_nearest(m * p, 1 << -e)
    sign = "-" if (neg and scaled != 0) else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, p)
    return f"{sign}{whole}.{frac:0{digits}d}"


def from_fraction_nearest(f: Fraction, k: int) -> BigDyadic:
    """Nearest point of the 2**-k grid to an exact rational."""
    num, den = f.numerator, f.denominator
    return dyadic(div_nearest(num << k, den), -k)
