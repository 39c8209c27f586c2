"""Six second-order rational recurrences with algebraic invariants.

===  =============================================  ==============================
eq   z_{n+1}                                        invariant I(z_n, z_{n-1})
===  =============================================  ==============================
4    z_n / (1 + B z_{n-1} - B z_n)                  (1/z_n + B)(1 + B z_{n-1})
5    z_{n-1} / (1 + B z_n - B z_{n-1})              (1/z_n + B)(1/z_{n-1})
6    (z_n^2 + B z_n - B z_{n-1}) / z_{n-1}          (z_n + B) / z_{n-1}
7    (z_n^2 + B z_n) / (z_{n-1} + B)                (z_{n-1} + B) / z_n
8    (z_n z_{n-1} + B z_n) / (B + z_n)              z_n (z_{n-1} + B)
9    (z_n z_{n-1} + B z_{n-1} - B z_n) / z_n        z_{n-1} (z_n + B)
===  =============================================  ==============================

Fixing the invariant at its initial value C reduces each equation to a
first-order linear fractional map (see :func:`reduced_map`), which is how
both the closed forms and the forbidden sets are obtained. Initial
conditions are the ordered pair ``(z0, zm1)`` = (z_0, z_{-1}).

Forbidden points carry two indices: ``n`` is the position inside the
branch's own enumeration (starting at 1) and ``step`` is the first step of
the second-order iteration that is singular. They coincide on the generic
branches; the interleaved branches of equations 4 and 5 die at step 2n or
2n-1, and the linear equations 6 and 7 at step n+2.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyGrid, InvalidInstance, SingularStep, Undefined
from .numerics import DEFAULT_TOL, Tolerances, approx_eq, approx_zero, csqrt_principal, is_real
from .riccati import (
    Forbidden,
    RiccatiParams,
    _geometric_sum,
    classify_riccati,
    riccati_forbidden_contains,
    riccati_forbidden_point,
)

__all__ = [
    "Equation",
    "SecondOrderInstance",
    "InitialPair",
    "SecondOrderClassification",
    "ForbiddenPoint2D",
    "ForbiddenHit",
    "ForbiddenLine",
    "num_den",
    "so_step",
    "so_invariant",
    "so_classify",
    "so_closed_form",
    "so_closed_orbit",
    "so_forbidden_contains",
    "so_forbidden_sample",
    "so_forbidden_lines",
    "reduced_map",
    "SUBCASES",
]


class Equation(enum.IntEnum):
    EQ4 = 4
    EQ5 = 5
    EQ6 = 6
    EQ7 = 7
    EQ8 = 8
    EQ9 = 9

    @property
    def theorem(self) -> int:
        return int(self) - 2

    @classmethod
    def parse(cls, text: str | int) -> "Equation":
        if isinstance(text, int):
            return cls(text)
        t = text.strip().lower()
        if t.startswith("eq"):
            t = t[2:]
        return cls(int(t))


SUBCASES: dict[Equation, tuple[str, ...]] = {
    Equation.EQ4: ("i", "ii", "iii", "iv-a", "iv-b", "iv-c"),
    Equation.EQ5: ("i", "ii", "iii", "iv-a", "iv-b", "iv-c"),
    Equation.EQ6: ("linear",),
    Equation.EQ7: ("i", "ii"),
    Equation.EQ8: ("a", "b", "c", "d"),
    Equation.EQ9: ("a", "b", "c", "d"),
}


@dataclass(frozen=True)
class SecondOrderInstance:
    eq: Equation
    B: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "eq", Equation(self.eq))
        B = complex(self.B)
        if not (math.isfinite(B.real) and math.isfinite(B.imag)):
            raise InvalidInstance(f"B must be finite, got {B!r}")
        if B == 0 and self.eq is not Equation.EQ6:
            raise InvalidInstance(f"{self.eq.name} requires B != 0")
        object.__setattr__(self, "B", B)


@dataclass(frozen=True)
class InitialPair:
    z0: complex
    zm1: complex

    def __post_init__(self) -> None:
        for name in ("z0", "zm1"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class SecondOrderClassification:
    """Closed-form subcase plus the constants its formula uses."""

    instance: SecondOrderInstance
    init: InitialPair
    subcase: str
    C: complex | None = None
    lam1: complex | None = None
    lam2: complex | None = None
    M1: complex | None = None
    M2: complex | None = None
    D: complex | None = None
    rho: float | None = None
    w0: complex | None = None

    @property
    def theorem(self) -> int:
        return self.instance.eq.theorem

    @property
    def tag(self) -> str:
        return f"thm{self.theorem}-{self.subcase}"


@dataclass(frozen=True)
class ForbiddenPoint2D:
    z0: complex
    zm1: complex
    branch: str
    n: int
    step: int


@dataclass(frozen=True)
class ForbiddenHit:
    branch: str
    n: int
    step: int


@dataclass(frozen=True)
class ForbiddenLine:
    """A whole coordinate line ``{fixed = value}`` inside the forbidden set."""

    branch: str
    fixed: str
    value: complex
    step: int


# -- stepping and invariants -------------------------------------------------


def num_den(eq: Equation, B: complex, zn: complex, znm1: complex) -> tuple[complex, complex]:
    """Numerator and denominator of the recurrence at (z_n, z_{n-1})."""
    if eq == 4:
        return zn, 1 + B * znm1 - B * zn
    if eq == 5:
        return znm1, 1 + B * zn - B * znm1
    if eq == 6:
        return zn * zn + B * zn - B * znm1, znm1
    if eq == 7:
        return zn * zn + B * zn, znm1 + B
    if eq == 8:
        return zn * znm1 + B * zn, B + zn
    if eq == 9:
        return zn * znm1 + B * znm1 - B * zn, zn
    raise ValueError(f"unknown equation {eq!r}")


def _singular(num: complex, den: complex, tol: Tolerances) -> bool:
    return abs(den) <= tol.singular * max(1.0, abs(num))


def so_step(
    inst: SecondOrderInstance, zn: complex, znm1: complex, tol: Tolerances = DEFAULT_TOL
) -> complex:
    num, den = num_den(inst.eq, inst.B, zn, znm1)
    if _singular(num, den, tol):
        raise SingularStep(den=den)
    return num / den


def so_invariant(inst: SecondOrderInstance, zn: complex, znm1: complex) -> complex:
    """Conserved quantity at the ordered pair (z_n, z_{n-1})."""
    B, eq = inst.B, inst.eq
    if eq in (4, 5, 7) and zn == 0:
        raise Undefined(reason=f"{eq.name} invariant needs z_n != 0")
    if eq in (5, 6) and znm1 == 0:
        raise Undefined(reason=f"{eq.name} invariant needs z_(n-1) != 0")
    if eq == 4:
        return (1 / zn + B) * (1 + B * znm1)
    if eq == 5:
        return (1 / zn + B) * (1 / znm1)
    if eq == 6:
        return (zn + B) / znm1
    if eq == 7:
        return (znm1 + B) / zn
    if eq == 8:
        return zn * (znm1 + B)
    return znm1 * (zn + B)


def reduced_map(inst: SecondOrderInstance, C: complex) -> RiccatiParams:
    """First-order map z_n -> z_{n+1} on the invariant level ``I = C``."""
    B = inst.B
    eq = inst.eq
    if eq == 4:
        return RiccatiParams(1, B, C - B, -B * B)
    if eq == 5:
        return RiccatiParams(1, 0, -B, C)
    if eq == 6:
        return RiccatiParams(-B, C, 1, 0)
    if eq == 7:
        return RiccatiParams(B, 1, C, 0)
    if eq == 8:
        return RiccatiParams(C, 0, B, 1)
    return RiccatiParams(C, -B, 0, 1)


def _partner(inst: SecondOrderInstance, C: complex, a: complex) -> complex:
    """z_{-1} on the level ``I = C`` given z_0 = a."""
    B = inst.B
    eq = inst.eq
    if eq == 4:
        return (C * a - B * a - 1) / (B * B * a + B)
    if eq == 5:
        return (B * a + 1) / (C * a)
    if eq == 6:
        return (a + B) / C
    if eq == 7:
        return C * a - B
    if eq == 8:
        return C / a - B
    return C / (a + B)


def _interleaved_map(inst: SecondOrderInstance) -> RiccatiParams:
    """Map followed by the live parity of the interleaved subcases of eqs 4 and 5."""
    B = inst.B
    if inst.eq == 4:
        return RiccatiParams(-1, 0, 2 * B, B * B)
    if inst.eq == 5:
        return RiccatiParams(0, 1, 1, -B)
    raise ValueError("only equations 4 and 5 have interleaved subcases")


# -- classification ------------------------------------------------------------


def _quadratic_payload(R: complex) -> tuple[complex, complex]:
    s = csqrt_principal(1 - 4 * R)
    return (1 - s) / 2, (1 + s) / 2


def _is_quarter(R: complex, tol: Tolerances) -> bool:
    return approx_eq(R, 0.25, tol)


def _beyond_quarter(R: complex, tol: Tolerances) -> bool:
    return is_real(R, tol) and R.real > 0.25


def so_classify(
    inst: SecondOrderInstance, init: InitialPair, tol: Tolerances = DEFAULT_TOL
) -> SecondOrderClassification:
    """Select the closed-form subcase whose hypotheses the initial pair meets."""
    if inst.B == 0 and inst.eq != Equation.EQ6:
        raise InvalidInstance(f"{inst.eq.name} requires B != 0")
    B = inst.B
    z0, zm1 = init.z0, init.zm1
    eq = inst.eq
    mk = lambda sub, **kw: SecondOrderClassification(inst, init, sub, **kw)  # noqa: E731

    if eq == 4:
        if approx_zero(z0, tol):
            return mk("i")
        if approx_eq(z0, -1 / B, tol):
            return mk("iii")
        if approx_eq(zm1, -1 / B, tol):
            return mk("ii")
        C = (1 / z0 + B) * (1 + B * zm1)
        q = B / C
        if _is_quarter(q, tol):
            return mk("iv-b", C=C)
        if _beyond_quarter(q, tol):
            rho = math.acos(math.sqrt((C / (4 * B)).real))
            return mk("iv-c", C=C, rho=rho, w0=(-B * B * z0 + C - B) / C)
        l1, l2 = _quadratic_payload(q)
        M1 = C - B - B * B * z0 - C * l1
        M2 = C * l2 + B + B * B * z0 - C
        return mk("iv-a", C=C, lam1=l1, lam2=l2, M1=M1, M2=M2)

    if eq == 5:
        if approx_eq(z0, -1 / B, tol):
            return mk("iii")
        if approx_zero(z0, tol):
            return mk("i")
        if approx_zero(zm1, tol):
            return mk("ii")
        C = (1 / z0 + B) / zm1
        R = -C / (B * B)
        if _is_quarter(R, tol):
            return mk("iv-b", C=C)
        if _beyond_quarter(R, tol):
            r = R.real
            return mk("iv-c", C=C, D=B * math.sqrt(4 * r - 1), rho=math.acos(math.sqrt(1 / (4 * r))))
        l1, l2 = _quadratic_payload(R)
        return mk("iv-a", C=C, lam1=l1, lam2=l2)

    if eq == 6:
        C = None if approx_zero(zm1, tol) else (z0 + B) / zm1
        return mk("linear", C=C)

    if eq == 7:
        if approx_zero(z0, tol):
            return mk("i")
        return mk("ii", C=(zm1 + B) / z0)

    C = z0 * (zm1 + B) if eq == 8 else zm1 * (z0 + B)
    if approx_zero(C, tol):
        return mk("a", C=C)
    R = -C / (B * B)
    if _is_quarter(R, tol):
        return mk("c", C=C)
    if _beyond_quarter(R, tol):
        r = R.real
        return mk("d", C=C, D=B * math.sqrt(4 * r - 1), rho=math.acos(math.sqrt(1 / (4 * r))))
    l1, l2 = _quadratic_payload(R)
    return mk("b", C=C, lam1=l1, lam2=l2)


# -- closed forms ----------------------------------------------------------------


def _value(c: SecondOrderClassification, k: int) -> complex:
    """Closed-form z_k for k >= 1."""
    B = c.instance.B
    z0, zm1 = c.init.z0, c.init.zm1
    eq = c.instance.eq
    sub = c.subcase
    C = c.C

    if eq == 4:
        if sub == "i":
            return 0j
        if sub == "ii":
            if k % 2:
                return -1 / B
            n = k // 2
            return (n + 2 + n * B * z0 + B * z0) / (n * B + B + n * B * B * z0) - 2 / B
        if sub == "iii":
            if k % 2 == 0:
                return -1 / B
            n = (k - 1) // 2
            return (n + 3 + n * B * zm1 + 2 * B * zm1) / (
                n * B + 2 * B + n * B * B * zm1 + B * B * zm1
            ) - 2 / B
        if sub == "iv-a":
            l1, l2, M1, M2 = c.lam1, c.lam2, c.M1, c.M2
            ratio = (M2 * l1 ** (k + 1) + M1 * l2 ** (k + 1)) / (M2 * l1**k + M1 * l2**k)
            return (-C / (B * B)) * ratio + C / (B * B) - 1 / B
        if sub == "iv-b":
            return (4 + (k + 1) * (2 - 2 * B * z0)) / (k * B * B * z0 - 2 * B - k * B) + 3 / B
        # iv-c
        q = (C / B).real
        s = math.sqrt(4 / q - 1)
        t = 2 * c.w0 - 1
        rho = c.rho
        ratio = (s * math.cos((k + 1) * rho) + t * math.sin((k + 1) * rho)) / (
            s * math.cos(k * rho) + t * math.sin(k * rho)
        )
        return (-math.sqrt(q) / B) * ratio + (C - B) / (B * B)

    if eq == 5:
        if sub == "iii":
            return -1 / B
        if sub == "i":
            if k % 2 == 0:
                return 0j
            n = (k - 1) // 2
            return (1 / -B) * ((1 - (n + 2) * B * zm1) / (1 - (n + 1) * B * zm1)) + 1 / B
        if sub == "ii":
            if k % 2:
                return 0j
            n = k // 2
            return (1 / -B) * ((1 - (n + 1) * B * z0) / (1 - n * B * z0)) + 1 / B
        if sub == "iv-a":
            l1, l2 = c.lam1, c.lam2
            P = B * l2 + C * z0 - B
            Q = B - C * z0 - B * l1
            return (-B / C) * ((P * l1 ** (k + 1) + Q * l2 ** (k + 1)) / (P * l1**k + Q * l2**k)) + B / C
        if sub == "iv-b":
            return (-B / C) * ((-B + (k + 1) * (2 * C * z0 - B)) / (-2 * B + 4 * k * C * z0 - 2 * k * B)) + B / C
        # iv-c
        D, rho = c.D, c.rho
        r = (-C / (B * B)).real
        num = D * math.cos((k + 1) * rho) + (B - 2 * C * z0) * math.sin((k + 1) * rho)
        den = B * D * math.cos(k * rho) + (B * B - 2 * C * B * z0) * math.sin(k * rho)
        return math.sqrt(1 / r) * (num / den) + B / C

    if eq == 6:
        if C is None:
            raise Undefined(1, "z_{-1} = 0")
        return C**k * z0 - _geometric_sum(C, k) * B

    if eq == 7:
        if sub == "i":
            return 0j
        inv = 1 / C
        return z0 * inv**k + B * inv * _geometric_sum(inv, k)

    if sub == "a":
        return 0j if eq == 8 else -B
    if sub == "b":
        l1, l2 = c.lam1, c.lam2
        if eq == 8:
            P = B * l2 - z0 - B
            Q = z0 + B - B * l1
            return B * ((P * l1 ** (k + 1) + Q * l2 ** (k + 1)) / (P * l1**k + Q * l2**k)) - B
        P = B * l2 + z0
        Q = z0 + B * l1
        return -B * ((P * l1 ** (k + 1) - Q * l2 ** (k + 1)) / (P * l1**k - Q * l2**k))
    if sub == "c":
        if eq == 8:
            return B * ((B + (k + 1) * (2 * z0 + B)) / (2 * B + 4 * k * z0 + 2 * k * B)) - B
        return -B * ((-B + (k + 1) * (2 * z0 + B)) / (-2 * B + 4 * k * z0 + 2 * k * B))
    # d
    D, rho = c.D, c.rho
    sr = math.sqrt((-C / (B * B)).real)
    if eq == 8:
        w = B + 2 * z0
        return B * sr * (
            (D * math.cos((k + 1) * rho) + w * math.sin((k + 1) * rho))
            / (D * math.cos(k * rho) + w * math.sin(k * rho))
        ) - B
    w = -2 * z0 - B
    return -B * sr * (
        (D * math.cos((k + 1) * rho) + w * math.sin((k + 1) * rho))
        / (D * math.cos(k * rho) + w * math.sin(k * rho))
    )


def so_closed_orbit(
    c: SecondOrderClassification, n_max: int, tol: Tolerances = DEFAULT_TOL
) -> tuple[list[complex], int | None]:
    """Closed-form values ``[z_{-1}, z_0, z_1, ..., z_{n_max}]``.

    Returns ``(values, step)`` where ``step`` is the first index whose
    recurrence denominator vanishes at the closed-form predecessors (the
    list then ends at ``z_{step-1}``), or ``None``.
    """
    inst = c.instance
    values = [c.init.zm1, c.init.z0]
    for k in range(1, n_max + 1):
        num, den = num_den(inst.eq, inst.B, values[-1], values[-2])
        if _singular(num, den, tol):
            return values, k
        try:
            values.append(complex(_value(c, k)))
        except ZeroDivisionError:
            return values, k
        except Undefined as exc:
            return values, exc.step if exc.step is not None else k
    return values, None


def so_closed_form(c: SecondOrderClassification, n: int, tol: Tolerances = DEFAULT_TOL) -> complex:
    """z_n from the closed form (n >= -1); raises :class:`Undefined` past a singular step."""
    if n < -1:
        raise ValueError("n must be >= -1")
    if n == -1:
        return c.init.zm1
    if n == 0:
        return c.init.z0
    values, step = so_closed_orbit(c, n, tol)
    if step is not None:
        raise Undefined(step)
    return values[n + 1]


# -- forbidden sets --------------------------------------------------------------


def _quarter_level(inst: SecondOrderInstance) -> complex:
    """Invariant level at which the reduced map has a double fixed point."""
    B = inst.B
    return 4 * B if inst.eq == 4 else -B * B / 4


def _generic_excluded(inst: SecondOrderInstance, a: complex, tol: Tolerances) -> bool:
    B = inst.B
    eq = inst.eq
    if eq in (4, 5):
        return approx_zero(a, tol) or approx_eq(a, -1 / B, tol)
    if eq == 8:
        return approx_zero(a, tol)
    if eq == 9:
        return approx_eq(a, -B, tol)
    return False


def _generic_hit(
    inst: SecondOrderInstance, z0: complex, C: complex, max_n: int, tol: Tolerances
) -> ForbiddenHit | None:
    rc = classify_riccati(reduced_map(inst, C), tol)
    n = riccati_forbidden_contains(rc, z0, max_n, tol)
    if n is None:
        return None
    branch = "seed" if rc.case == 3 else f"case{rc.case}"
    return ForbiddenHit(branch, n, n)


def so_forbidden_contains(
    inst: SecondOrderInstance, init: InitialPair, max_n: int, tol: Tolerances = DEFAULT_TOL
) -> ForbiddenHit | None:
    """Membership of ``init`` in the forbidden set, up to branch index ``max_n``.

    Degenerate lines and seed pairs are dispatched first; otherwise the
    pair's own invariant level C selects the reduced map and the question
    becomes first-order.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    B = inst.B
    z0, zm1 = init.z0, init.zm1
    eq = inst.eq

    if eq in (4, 5):
        if eq == 4:
            seed = approx_zero(z0, tol) and approx_eq(zm1, -1 / B, tol)
            safe = approx_zero(z0, tol)
            odd = approx_eq(z0, -1 / B, tol)
            even = approx_eq(zm1, -1 / B, tol)
        else:
            seed = approx_eq(z0, -1 / B, tol) and approx_zero(zm1, tol)
            safe = approx_eq(z0, -1 / B, tol)
            odd = approx_zero(z0, tol)
            even = approx_zero(zm1, tol)
        if seed:
            return ForbiddenHit("seed", 1, 1)
        if safe:
            return None
        if odd or even:
            rc = classify_riccati(_interleaved_map(inst), tol)
            x = zm1 if odd else z0
            n = riccati_forbidden_contains(rc, x, max_n, tol)
            if n is None:
                return None
            return ForbiddenHit("odd", n, 2 * n - 1) if odd else ForbiddenHit("even", n, 2 * n)
        C = so_invariant(inst, z0, zm1)
        return _generic_hit(inst, z0, C, max_n, tol)

    if eq in (6, 7):
        line = 0j if eq == 6 else -B
        if approx_eq(zm1, line, tol):
            return ForbiddenHit("axis", 1, 1)
        if approx_eq(z0, line, tol):
            return ForbiddenHit("axis", 1, 2)
        if eq == 7 and approx_zero(z0, tol):
            return None
        C = so_invariant(inst, z0, zm1)
        if approx_zero(C, tol):
            return None
        if approx_eq(C, 1, tol):
            if approx_zero(B, tol):
                return None
            k = z0 / B if eq == 6 else -z0 / B - 1
            n = round(k.real)
            if 1 <= n <= max_n and approx_eq(k, n, tol):
                return ForbiddenHit("arithmetic", n, n + 2)
            return None
        for n in range(1, max_n + 1):
            if eq == 6:
                pt = (B - B * C**n) / (C**n - C ** (n + 1))
            else:
                pt = (B - B * C ** (n + 1)) / (C - 1)
            if approx_eq(z0, pt, tol):
                return ForbiddenHit("geometric", n, n + 2)
        return None

    # eqs 8 and 9
    if eq == 8 and approx_zero(z0, tol):
        return None
    if eq == 9 and approx_eq(z0, -B, tol):
        return None
    C = so_invariant(inst, z0, zm1)
    return _generic_hit(inst, z0, C, max_n, tol)


def so_forbidden_lines(inst: SecondOrderInstance) -> list[ForbiddenLine]:
    """Whole coordinate lines contained in the forbidden set."""
    B = inst.B
    eq = inst.eq
    if eq == 6:
        return [ForbiddenLine("axis", "zm1", 0j, 1), ForbiddenLine("axis", "z0", 0j, 2)]
    if eq == 7:
        return [ForbiddenLine("axis", "zm1", -B, 1), ForbiddenLine("axis", "z0", -B, 2)]
    if eq == 8:
        return [ForbiddenLine("pole", "z0", -B, 1)]
    if eq == 9:
        return [ForbiddenLine("pole", "z0", 0j, 1)]
    return []


def _finite(z: complex) -> bool:
    return cmath.isfinite(z)


def so_forbidden_sample(
    inst: SecondOrderInstance,
    n_max: int,
    c_grid: Iterable[complex],
    tol: Tolerances = DEFAULT_TOL,
) -> list[ForbiddenPoint2D]:
    """Concrete points of the forbidden set.

    Countable branches are enumerated for ``n <= n_max``. Branches
    parameterized by the invariant level are sampled at each C of
    ``c_grid`` (the double-root level is always included); coordinate lines
    are sampled with the grid values as the free coordinate.
    """
    grid: Sequence[complex] = [complex(c) for c in c_grid]
    if not grid or n_max < 1:
        raise EmptyGrid("sampling plan needs at least one grid value and n_max >= 1")
    B = inst.B
    eq = inst.eq
    out: list[ForbiddenPoint2D] = []

    def generic(levels: Iterable[complex]) -> None:
        for C in levels:
            if approx_zero(C, tol):
                continue
            rc = classify_riccati(reduced_map(inst, C), tol)
            branch = "seed" if rc.case == 3 else f"case{rc.case}"
            seen: list[complex] = []
            for n in range(1, n_max + 1):
                a = riccati_forbidden_point(rc, n)
                if isinstance(a, Forbidden):
                    continue
                # a periodic reduced map revisits earlier points, which die sooner
                if any(approx_eq(a, s, tol) for s in seen):
                    continue
                seen.append(a)
                if _generic_excluded(inst, a, tol):
                    continue
                try:
                    b = _partner(inst, C, a)
                except ZeroDivisionError:
                    continue
                if _finite(a) and _finite(b):
                    out.append(ForbiddenPoint2D(a, b, branch, n, n))
                if rc.case in (3, 4):
                    break

    if eq in (4, 5):
        m = -1 / B
        if eq == 4:
            out.append(ForbiddenPoint2D(0j, m, "seed", 1, 1))
        else:
            out.append(ForbiddenPoint2D(m, 0j, "seed", 1, 1))
        rc = classify_riccati(_interleaved_map(inst), tol)
        fixed = m if eq == 4 else 0j
        for n in range(1, n_max + 1):
            x = riccati_forbidden_point(rc, n)
            out.append(ForbiddenPoint2D(x, fixed, "even", n, 2 * n))
        for n in range(1, n_max + 1):
            x = riccati_forbidden_point(rc, n)
            out.append(ForbiddenPoint2D(fixed, x, "odd", n, 2 * n - 1))
        generic([*grid, _quarter_level(inst)])
        return out

    if eq in (6, 7):
        line = 0j if eq == 6 else -B
        for v in grid:
            out.append(ForbiddenPoint2D(v, line, "axis", 1, 1))
        for v in grid:
            if not approx_eq(v, line, tol):
                out.append(ForbiddenPoint2D(line, v, "axis", 1, 2))
        for C in grid:
            if approx_zero(C, tol) or approx_eq(C, 1, tol):
                continue
            seen = []
            for n in range(1, n_max + 1):
                if eq == 6:
                    a = (B - B * C**n) / (C**n - C ** (n + 1))
                    b = (B - B * C ** (n + 1)) / (C ** (n + 1) - C ** (n + 2))
                else:
                    a = (B - B * C ** (n + 1)) / (C - 1)
                    b = (B - B * C ** (n + 2)) / (C - 1)
                if any(approx_eq(a, s, tol) for s in seen):
                    continue
                seen.append(a)
                if approx_eq(a, line, tol) or approx_eq(b, line, tol):
                    continue
                if _finite(a) and _finite(b):
                    out.append(ForbiddenPoint2D(a, b, "geometric", n, n + 2))
        if not approx_zero(B, tol):
            for n in range(1, n_max + 1):
                if eq == 6:
                    a, b = n * B, n * B + B
                else:
                    a, b = -n * B - B, -n * B - 2 * B
                out.append(ForbiddenPoint2D(a, b, "arithmetic", n, n + 2))
        return out

    if eq == 8:
        out.append(ForbiddenPoint2D(-B, -B, "seed", 1, 1))
    else:
        out.append(ForbiddenPoint2D(0j, 0j, "seed", 1, 1))
    generic([*grid, _quarter_level(inst)])
    return out
