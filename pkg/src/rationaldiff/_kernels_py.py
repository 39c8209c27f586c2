"""Pure-Python orbit kernels.

Reference implementation for the compiled ``_kernels`` module. Both use
CPython's complex arithmetic (same operation order, same division
algorithm), so their outputs agree bit for bit.

Orbit arrays hold every computed value; for batches, entries past the
singular step are NaN. A step of 0 means the orbit completed.
"""

from __future__ import annotations

import numpy as np

NAN = complex(float("nan"), float("nan"))


def _riccati(alpha, beta, A, B, x0, n_max, singular, out):
    x = x0
    out[0] = x
    for k in range(1, n_max + 1):
        num = alpha + beta * x
        den = A + B * x
        if abs(den) <= singular * max(1.0, abs(num)):
            return k
        x = num / den
        out[k] = x
    return 0


def _so(eq, B, z0, zm1, n_max, singular, out):
    a, b = zm1, z0
    out[0] = a
    out[1] = b
    for k in range(1, n_max + 1):
        if eq == 4:
            num, den = b, 1 + B * a - B * b
        elif eq == 5:
            num, den = a, 1 + B * b - B * a
        elif eq == 6:
            num, den = b * b + B * b - B * a, a
        elif eq == 7:
            num, den = b * b + B * b, a + B
        elif eq == 8:
            num, den = b * a + B * b, B + b
        else:
            num, den = b * a + B * a - B * b, b
        if abs(den) <= singular * max(1.0, abs(num)):
            return k
        a, b = b, num / den
        out[k + 1] = b
    return 0


def riccati_orbit(alpha, beta, A, B, x0, n_max, singular):
    out = [NAN] * (n_max + 1)
    step = _riccati(complex(alpha), complex(beta), complex(A), complex(B), complex(x0), n_max, singular, out)
    size = n_max + 1 if step == 0 else step
    return np.array(out[:size], dtype=np.complex128), step


def so_orbit(eq, B, z0, zm1, n_max, singular):
    out = [NAN] * (n_max + 2)
    step = _so(int(eq), complex(B), complex(z0), complex(zm1), n_max, singular, out)
    size = n_max + 2 if step == 0 else step + 1
    return np.array(out[:size], dtype=np.complex128), step


def riccati_orbits(params, x0, n_max, singular):
    params = np.asarray(params, dtype=np.complex128)
    x0 = np.asarray(x0, dtype=np.complex128)
    m = x0.shape[0]
    values = np.full((m, n_max + 1), NAN, dtype=np.complex128)
    steps = np.zeros(m, dtype=np.int64)
    for i in range(m):
        out = [NAN] * (n_max + 1)
        al, be, A, B = (complex(v) for v in params[i])
        steps[i] = _riccati(al, be, A, B, complex(x0[i]), n_max, singular, out)
        values[i] = out
    return values, steps


def so_orbits(eq, B, z0, zm1, n_max, singular):
    B = np.asarray(B, dtype=np.complex128)
    z0 = np.asarray(z0, dtype=np.complex128)
    zm1 = np.asarray(zm1, dtype=np.complex128)
    m = z0.shape[0]
    values = np.full((m, n_max + 2), NAN, dtype=np.complex128)
    steps = np.zeros(m, dtype=np.int64)
    for i in range(m):
        out = [NAN] * (n_max + 2)
        steps[i] = _so(int(eq), complex(B[i]), complex(z0[i]), complex(zm1[i]), n_max, singular, out)
        values[i] = out
    return values, steps
