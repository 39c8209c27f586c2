"""First-order linear fractional recurrence x -> (alpha + beta x) / (A + B x).

Classification into the seven parameter regimes, closed-form orbits, and the
forbidden set (initial values whose orbit reaches the pole -A/B).

Index convention for forbidden points: point ``n`` (n >= 1) is the initial
value for which ``x_{n-1} = -A/B``, so computing ``x_n`` is the first
singular step. Point 1 is the pole itself.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import SingularStep, Undefined
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    approx_eq,
    approx_zero,
    csqrt_principal,
    is_real,
)

__all__ = [
    "RiccatiParams",
    "RiccatiClassification",
    "Forbidden",
    "classify_riccati",
    "riccati_step",
    "riccati_closed_form",
    "riccati_closed_orbit",
    "riccati_forbidden_point",
    "riccati_forbidden_contains",
]


@dataclass(frozen=True)
class RiccatiParams:
    alpha: complex
    beta: complex
    A: complex
    B: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "A", "B"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"parameter {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def pole(self) -> complex:
        return -self.A / self.B


@dataclass(frozen=True)
class RiccatiClassification:
    """One of the seven regimes, with the derived constants it needs.

    ``R = (beta A - alpha B) / (beta + A)^2`` is set for cases 5-7 (real for
    6 and 7). ``w_minus``/``w_plus`` are the roots of ``w^2 - w + R`` for case 5,
    ``phi = arccos(1 / (2 sqrt R))`` for case 7.
    """

    case: int
    params: RiccatiParams
    R: complex | float | None = None
    w_minus: complex | None = None
    w_plus: complex | None = None
    phi: float | None = None

    @property
    def tag(self) -> str:
        return f"case{self.case}"


class Forbidden(enum.Enum):
    """Non-point answers of :func:`riccati_forbidden_point`."""

    WHOLE_PLANE = "whole-plane"
    EMPTY = "empty"
    AT_INFINITY = "at-infinity"


def classify_riccati(p: RiccatiParams, tol: Tolerances = DEFAULT_TOL) -> RiccatiClassification:
    """Return the regime, testing the hypotheses in order 1 through 7."""
    a, b, A, B = p.alpha, p.beta, p.A, p.B
    if approx_zero(A, tol) and approx_zero(B, tol):
        return RiccatiClassification(1, p)
    if approx_zero(B, tol):
        return RiccatiClassification(2, p)
    if approx_zero(a * B - b * A, tol):
        return RiccatiClassification(3, p)
    if approx_zero(b + A, tol):
        return RiccatiClassification(4, p)
    R = (b * A - a * B) / (b + A) ** 2
    if approx_eq(R, 0.25, tol):
        return RiccatiClassification(6, p, R=0.25)
    if is_real(R, tol) and R.real > 0.25:
        r = R.real
        return RiccatiClassification(7, p, R=r, phi=math.acos(0.5 * math.sqrt(1.0 / r)))
    s = csqrt_principal(1 - 4 * R)
    return RiccatiClassification(5, p, R=R, w_minus=(1 - s) / 2, w_plus=(1 + s) / 2)


def _is_singular(num: complex, den: complex, tol: Tolerances) -> bool:
    return abs(den) <= tol.singular * max(1.0, abs(num))


def riccati_step(p: RiccatiParams, x: complex, tol: Tolerances = DEFAULT_TOL) -> complex:
    """One application of the map; raises :class:`SingularStep` at the pole."""
    num = p.alpha + p.beta * x
    den = p.A + p.B * x
    if _is_singular(num, den, tol):
        raise SingularStep(den=den)
    return num / den


def _geometric_sum(r: complex, n: int) -> complex:
    """sum_{i=0}^{n-1} r^i."""
    if n <= 0:
        return 0j
    if abs(1 - r) < 1e-4:
        total, term = 0j, 1 + 0j
        for _ in range(n):
            total += term
            term *= r
        return total
    return (1 - r**n) / (1 - r)


def _value(c: RiccatiClassification, x0: complex, n: int) -> complex:
    """Closed-form x_n without any pole bookkeeping."""
    if n == 0:
        return x0
    p = c.params
    a, b, A, B = p.alpha, p.beta, p.A, p.B
    case = c.case
    if case == 1:
        raise Undefined(1, "A = B = 0: every orbit is singular at step 1")
    if case == 2:
        r = b / A
        return r**n * x0 + (a / A) * _geometric_sum(r, n)
    if case == 3:
        return b / B
    if case == 4:
        return x0 if n % 2 == 0 else (a + b * x0) / (A + B * x0)
    scale = (b + A) / B
    if case == 5:
        wm, wp = c.w_minus, c.w_plus
        y0 = (B * x0 + A) / (b + A)
        cp, cm = y0 - wm, wp - y0
        num = cp * wp ** (n + 1) + cm * wm ** (n + 1)
        den = cp * wp**n + cm * wm**n
        return scale * (num / den) - A / B
    t = (2 * B * x0 + 2 * A) / (b + A) - 1
    if case == 6:
        return scale * ((1 + t * (n + 1)) / (2 + 2 * t * n)) - A / B
    # case 7
    R, phi = c.R, c.phi
    q = math.sqrt(4 * R - 1)
    num = q * math.cos((n + 1) * phi) + t * math.sin((n + 1) * phi)
    den = q * math.cos(n * phi) + t * math.sin(n * phi)
    return scale * math.sqrt(R) * (num / den) - A / B


def riccati_closed_orbit(
    c: RiccatiClassification, x0: complex, n_max: int, tol: Tolerances = DEFAULT_TOL
) -> tuple[list[complex], int | None]:
    """Closed-form values x_0..x_{n_max}.

    Returns ``(values, step)``; ``step`` is the first index whose recurrence
    denominator vanishes at the closed-form predecessor (values then stop at
    ``step - 1``), or ``None`` when all requested values exist.
    """
    x0 = complex(x0)
    p = c.params
    values = [x0]
    for n in range(1, n_max + 1):
        prev = values[-1]
        if _is_singular(p.alpha + p.beta * prev, p.A + p.B * prev, tol):
            return values, n
        try:
            values.append(_value(c, x0, n))
        except ZeroDivisionError:
            return values, n
        except Undefined as exc:
            return values, exc.step if exc.step is not None else n
    return values, None


def riccati_closed_form(
    c: RiccatiClassification, x0: complex, n: int, tol: Tolerances = DEFAULT_TOL
) -> complex:
    """x_n from the closed form; raises :class:`Undefined` if the orbit dies by step n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    values, step = riccati_closed_orbit(c, x0, n, tol)
    if step is not None:
        raise Undefined(step)
    return values[n]


def riccati_forbidden_point(c: RiccatiClassification, n: int) -> complex | Forbidden:
    """The n-th element (n >= 1) of the forbidden sequence."""
    if n < 1:
        raise ValueError("forbidden-set indices start at 1")
    p = c.params
    b, A, B = p.beta, p.A, p.B
    if c.case == 1:
        return Forbidden.WHOLE_PLANE
    if c.case == 2:
        return Forbidden.EMPTY
    if c.case in (3, 4) or n == 1:
        return -A / B
    if c.case == 5:
        wm, wp = c.w_minus, c.w_plus
        den = wp**n - wm**n
        if den == 0:
            return Forbidden.AT_INFINITY
        return (b + A) / B * ((wp ** (n - 1) - wm ** (n - 1)) / den) * wp * wm - A / B
    if c.case == 6:
        return (b + A) / B * ((n - 1) / (2 * n)) - A / B
    s = math.sin(n * c.phi)
    if abs(s) < 1e-15:
        return Forbidden.AT_INFINITY
    cot = math.cos(n * c.phi) / s
    return (b + A) / (2 * B) * (1 - math.sqrt(4 * c.R - 1) * cot) - A / B


def riccati_forbidden_contains(
    c: RiccatiClassification, x0: complex, max_n: int, tol: Tolerances = DEFAULT_TOL
) -> int | None:
    """Smallest n <= max_n whose forbidden point matches x0, else ``None``."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if c.case == 1:
        return 1
    if c.case == 2:
        return None
    last = 1 if c.case in (3, 4) else max_n
    for n in range(1, last + 1):
        pt = riccati_forbidden_point(c, n)
        if isinstance(pt, Forbidden):
            continue
        if approx_eq(x0, pt, tol):
            return n
    return None
