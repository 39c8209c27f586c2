# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit kernels; mirrors ``_kernels_py`` bit for bit.

Complex values are handled as pairs of doubles with the same operation
order as CPython's complexobject.c, including its scaled division.
"""

import numpy as np
cimport numpy as cnp

from libc.math cimport hypot, NAN

cnp.import_array()


cdef struct cplx:
    double re
    double im


cdef inline cplx mk(double re, double im) noexcept nogil:
    cdef cplx r
    r.re = re
    r.im = im
    return r


cdef inline cplx add(cplx a, cplx b) noexcept nogil:
    return mk(a.re + b.re, a.im + b.im)


cdef inline cplx sub(cplx a, cplx b) noexcept nogil:
    return mk(a.re - b.re, a.im - b.im)


cdef inline cplx mul(cplx a, cplx b) noexcept nogil:
    return mk(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


cdef inline cplx quot(cplx a, cplx b) noexcept nogil:
    cdef double abs_re = -b.re if b.re < 0 else b.re
    cdef double abs_im = -b.im if b.im < 0 else b.im
    cdef double ratio, denom
    if abs_re >= abs_im:
        if abs_re == 0.0:
            return mk(0.0, 0.0)
        ratio = b.im / b.re
        denom = b.re + b.im * ratio
        return mk((a.re + a.im * ratio) / denom, (a.im - a.re * ratio) / denom)
    elif abs_im >= abs_re:
        ratio = b.re / b.im
        denom = b.re * ratio + b.im
        return mk((a.re * ratio + a.im) / denom, (a.im * ratio - a.re) / denom)
    return mk(NAN, NAN)


cdef inline double cabs_(cplx a) noexcept nogil:
    return hypot(a.re, a.im)


cdef inline bint is_singular(cplx num, cplx den, double singular) noexcept nogil:
    cdef double n = cabs_(num)
    cdef double m = n if n > 1.0 else 1.0
    return cabs_(den) <= singular * m


cdef inline cplx fromc(double complex z) noexcept nogil:
    return mk(z.real, z.imag)


cdef inline double complex toc(cplx z) noexcept nogil:
    cdef double complex r
    r.real = z.re
    r.imag = z.im
    return r


cdef Py_ssize_t _riccati(cplx alpha, cplx beta, cplx A, cplx B, cplx x0, Py_ssize_t n_max,
                         double singular, double complex[::1] out) noexcept nogil:
    cdef cplx x = x0, num, den
    cdef Py_ssize_t k
    out[0] = toc(x)
    for k in range(1, n_max + 1):
        num = add(alpha, mul(beta, x))
        den = add(A, mul(B, x))
        if is_singular(num, den, singular):
            return k
        x = quot(num, den)
        out[k] = toc(x)
    return 0


cdef Py_ssize_t _so(int eq, cplx B, cplx z0, cplx zm1, Py_ssize_t n_max,
                    double singular, double complex[::1] out) noexcept nogil:
    cdef cplx a = zm1, b = z0, num, den
    cdef cplx one = mk(1.0, 0.0)
    cdef Py_ssize_t k
    out[0] = toc(a)
    out[1] = toc(b)
    for k in range(1, n_max + 1):
        if eq == 4:
            num = b
            den = sub(add(one, mul(B, a)), mul(B, b))
        elif eq == 5:
            num = a
            den = sub(add(one, mul(B, b)), mul(B, a))
        elif eq == 6:
            num = sub(add(mul(b, b), mul(B, b)), mul(B, a))
            den = a
        elif eq == 7:
            num = add(mul(b, b), mul(B, b))
            den = add(a, B)
        elif eq == 8:
            num = add(mul(b, a), mul(B, b))
            den = add(B, b)
        else:
            num = sub(add(mul(b, a), mul(B, a)), mul(B, b))
            den = b
        if is_singular(num, den, singular):
            return k
        a = b
        b = quot(num, den)
        out[k + 1] = toc(b)
    return 0


def riccati_orbit(alpha, beta, A, B, x0, Py_ssize_t n_max, double singular):
    cdef cnp.ndarray arr = np.full(n_max + 1, complex(NAN, NAN), dtype=np.complex128)
    cdef double complex[::1] out = arr
    cdef Py_ssize_t step = _riccati(fromc(complex(alpha)), fromc(complex(beta)), fromc(complex(A)),
                                    fromc(complex(B)), fromc(complex(x0)), n_max, singular, out)
    return (arr if step == 0 else arr[:step]), step


def so_orbit(eq, B, z0, zm1, Py_ssize_t n_max, double singular):
    cdef cnp.ndarray arr = np.full(n_max + 2, complex(NAN, NAN), dtype=np.complex128)
    cdef double complex[::1] out = arr
    cdef Py_ssize_t step = _so(int(eq), fromc(complex(B)), fromc(complex(z0)), fromc(complex(zm1)),
                               n_max, singular, out)
    return (arr if step == 0 else arr[:step + 1]), step


def riccati_orbits(params, x0, Py_ssize_t n_max, double singular):
    cdef double complex[:, ::1] p = np.ascontiguousarray(params, dtype=np.complex128)
    cdef double complex[::1] x = np.ascontiguousarray(x0, dtype=np.complex128)
    cdef Py_ssize_t m = x.shape[0], i
    values = np.full((m, n_max + 1), complex(NAN, NAN), dtype=np.complex128)
    steps = np.zeros(m, dtype=np.int64)
    cdef double complex[:, ::1] v = values
    cdef long long[::1] s = steps
    with nogil:
        for i in range(m):
            s[i] = _riccati(fromc(p[i, 0]), fromc(p[i, 1]), fromc(p[i, 2]), fromc(p[i, 3]),
                            fromc(x[i]), n_max, singular, v[i])
    return values, steps


def so_orbits(int eq, B, z0, zm1, Py_ssize_t n_max, double singular):
    cdef double complex[::1] b = np.ascontiguousarray(B, dtype=np.complex128)
    cdef double complex[::1] a0 = np.ascontiguousarray(z0, dtype=np.complex128)
    cdef double complex[::1] am = np.ascontiguousarray(zm1, dtype=np.complex128)
    cdef Py_ssize_t m = a0.shape[0], i
    values = np.full((m, n_max + 2), complex(NAN, NAN), dtype=np.complex128)
    steps = np.zeros(m, dtype=np.int64)
    cdef double complex[:, ::1] v = values
    cdef long long[::1] s = steps
    with nogil:
        for i in range(m):
            s[i] = _so(eq, fromc(b[i]), fromc(a0[i]), fromc(am[i]), n_max, singular, v[i])
    return values, steps
