# cython: language_level=3
"""Compiled arithmetic kernels; see _pykernels.py for the contracts."""

BACKEND = "compiled"


def ext_gcd_raw(a, b):
    cdef object old_r = a, r = b
    cdef object old_s = 1, s = 0
    cdef object old_t = 0, t = 1
    cdef object q
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def euclid_quotients_raw(a, b):
    cdef list out = []
    cdef object q, r
    while b:
        q, r = divmod(a, b)
        out.append(q)
        a, b = b, r
    return out, a


def cf_eval_raw(components):
    cdef object num = 1, den = 0
    cdef object q
    for q in reversed(components):
        if q < 1:
            raise ValueError("continued-fraction terms must be >= 1")
        num, den = q * num + den, num
    if den == 0:
        raise ValueError("empty continued fraction has no value")
    return num, den


def path_to_matrix_raw(components):
    cdef object a = 1, b = 0, c = 0, d = 1
    cdef object q
    for q in components:
        if q < 1:
            raise ValueError("path components must be >= 1")
        a, b = a * q + b, a
        c, d = c * q + d, c
    return a, b, c, d


def matrix_to_path_raw(a, b, c, d):
    if a < 0 or b < 0 or c < 0 or d < 0:
        raise ValueError("not a path matrix: negative entry")
    cdef object det = a * d - b * c
    if det != 1 and det != -1:
        raise ValueError("not a path matrix: determinant %d" % det)
    cdef list out = []
    cdef object q, qc, qd
    while not (a == 1 and b == 0 and c == 0 and d == 1):
        if c == 0:
            raise ValueError("not a path matrix: no factor left")
        if d == 0:
            q = a // c
        else:
            q = a // c
            qd = b // d
            if qd < q:
                q = qd
        if q < 1:
            raise ValueError("not a path matrix: zero quotient")
        a, b, c, d = c, d, a - q * c, b - q * d
        if c < 0 or d < 0:
            raise ValueError("not a path matrix: negative remainder")
        out.append(q)
    return out


def mat_mul_raw(a1, b1, c1, d1, a2, b2, c2, d2):
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )


def cmp_raw(pn, pd, qn, qd):
    cdef object lhs = pn * qd
    cdef object rhs = qn * pd
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0
