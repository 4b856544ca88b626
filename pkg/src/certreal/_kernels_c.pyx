# cython: language_level=3
"""Compiled twin of the fixed-point series kernels.

Same algorithms, same floor steps, same stopping rules as
_kernels_py.py, so results are bit-identical; see that module for the
shared error contract.

Only loop counters carry C types.  Mantissas, shift widths, and every
value derived from them stay Python objects on purpose: they routinely
exceed 64 bits, and C inference on any of them would overflow silently
instead of staying arbitrary-precision.
"""


def exp_series(r, w, long cap):
    cdef long i = 0
    acc = 1 << w
    term = acc
    while i < cap:
        i += 1
        term = ((term * r) >> w) // i
        if -1 <= term <= 1:
            break
        acc += term
    return acc


def sin_series(r, w, long cap):
    cdef long i = 0
    cdef long sign = 1
    if r < 0:
        return -sin_series(-r, w, cap)
    r2 = (r * r) >> w
    term = r
    acc = r
    while i < cap:
        term = (term * r2) >> w
        term = term // ((2 * i + 2) * (2 * i + 3))
        i += 1
        sign = -sign
        if term <= 1:
            break
        acc += sign * term
    return acc


def cos_series(r, w, long cap):
    cdef long i = 0
    cdef long sign = 1
    if r < 0:
        r = -r
    r2 = (r * r) >> w
    term = 1 << w
    acc = term
    while i < cap:
        term = (term * r2) >> w
        term = term // ((2 * i + 1) * (2 * i + 2))
        i += 1
        sign = -sign
        if term <= 1:
            break
        acc += sign * term
    return acc


def atan_series(p, q, w, long cap):
    cdef long i = 0
    cdef long sign = 1
    if p < 0:
        return -atan_series(-p, q, w, cap)
    num2 = p * p
    den2 = q * q
    power = (p << w) // q
    acc = power
    while i < cap:
        power = (power * num2) // den2
        i += 1
        sign = -sign
        if power <= 1:
            break
        acc += sign * (power // (2 * i + 1))
    return acc


def ln1p_series(t, w, long cap):
    cdef long i = 1
    cdef long st = 1 if t >= 0 else -1
    ta = abs(t)
    power = ta
    acc = st * ta
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
