"""Pure-Python fixed-point series kernels.

These are the inner loops behind every transcendental function in the
package.  All arguments and results are plain integers denoting values
scaled by 2**w ("ulp" below means 2**-w).  The compiled twin in
_kernels_c.pyx implements exactly the same algorithms; the two must
produce bit-identical results.

Shared error contract
---------------------
Each kernel runs at most ``cap`` iterations and may stop earlier, once
the running term has decayed to at most one ulp.  Let m be the number
of iterations actually executed.  The returned integer S satisfies

    |S * 2**-w  -  f(args)|  <=  (8*m + 16) * 2**-w  +  T

where T is the exact tail of the series after ``cap`` terms (zero if
the kernel stopped on term decay, in which case the remaining tail is
already inside the ulp blanket).  Callers choose ``cap`` so that the
analytic tail after cap terms is below their target, and choose w so
that (8*cap + 16) ulps are below it too.

Argument ranges are preconditions, not checked here: exp needs
|r| <= 5/8, sin and cos need |r| <= 9/8, atan needs |p/q| <= 1/2 with
q > 0, and ln1p needs |t| <= 5/8.  The range bounds make every term
ratio at most ~2/3, which is what justifies stopping on term decay.
"""


def exp_series(r: int, w: int, cap: int) -> int:
    # sum of r**i / i!, signed term recurrence; floor steps cost <= 2 ulps
    # per iteration, covered by the shared blanket.
    acc = 1 << w
    term = 1 << w
    i = 0
    while i < cap:
        i += 1
        term = ((term * r) >> w) // i
        if -1 <= term <= 1:
            break
        acc += term
    return acc


def sin_series(r: int, w: int, cap: int) -> int:
    # sin is odd: work on |r| and put the sign back at the end.
    if r < 0:
        return -sin_series(-r, w, cap)
    r2 = (r * r) >> w
    term = r
    acc = r
    i = 0
    sign = 1
    while i < cap:
        term = (term * r2) >> w
        term //= (2 * i + 2) * (2 * i + 3)
        i += 1
        sign = -sign
        if term <= 1:
            break
        acc += sign * term
    return acc


def cos_series(r: int, w: int, cap: int) -> int:
    # cos is even: drop the sign of r up front.
    if r < 0:
        r = -r
    r2 = (r * r) >> w
    term = 1 << w
    acc = term
    i = 0
    sign = 1
    while i < cap:
        term = (term * r2) >> w
        term //= (2 * i + 1) * (2 * i + 2)
        i += 1
        sign = -sign
        if term <= 1:
            break
        acc += sign * term
    return acc


def atan_series(p: int, q: int, w: int, cap: int) -> int:
    # arctan(p/q) for an exact rational argument: powers are carried as
    # scaled integers divided by the exact q**2, so no per-term rational
    # blowup and still one floor per operation.
    if p < 0:
        return -atan_series(-p, q, w, cap)
    num2 = p * p
    den2 = q * q
    power = (p << w) // q
    acc = power
    i = 0
    sign = 1
    while i < cap:
        power = (power * num2) // den2
        i += 1
        sign = -sign
        if power <= 1:
            break
        acc += sign * (power // (2 * i + 1))
    return acc


def ln1p_series(t: int, w: int, cap: int) -> int:
    # log(1 + t) = sum of (-1)**(i+1) t**i / i.  Worked on |t| with the
    # per-term sign reconstructed from the sign of t.
    ta = abs(t)
    st = 1 if t >= 0 else -1
    power = ta
    acc = st * ta
    i = 1
    while i < cap:
        power = (power * ta) >> w
        i += 1
        if power <= 1:
            break
        if st > 0:
            contrib = power // i
            acc += -contrib if (i % 2 == 0) else contrib
        else:
            acc -= power // i
    return acc
