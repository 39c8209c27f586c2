"""Brute-force verification by direct iteration.

Everything here only ever steps the recurrences forward; closed forms are
consulted only to be compared against the iterated orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath

from . import kernels
from .errors import SingularStep, Undefined, ZeroEntry
from .numerics import DEFAULT_TOL, Tolerances
from .riccati import RiccatiClassification, RiccatiParams, riccati_closed_orbit
from .second_order import (
    InitialPair,
    SecondOrderClassification,
    SecondOrderInstance,
    num_den,
    so_closed_orbit,
    so_invariant,
)

Stepper = Callable[[Sequence[complex], Tolerances], complex]
Fraction = Callable[[Sequence[complex]], tuple[complex, complex]]

__all__ = [
    "Trajectory",
    "VerificationReport",
    "iterate_orbit",
    "riccati_stepper",
    "second_order_stepper",
    "lyness_stepper",
    "riccati_fraction",
    "second_order_fraction",
    "riccati_orbit",
    "so_orbit",
    "verify_closed_form",
    "invariant_drift",
    "lyness_invariant",
    "lyness_step",
    "min_denominator",
    "singularity_noise",
    "riccati_preimage",
    "check_singular_at",
]


@dataclass(frozen=True)
class Trajectory:
    """Iterated values including the initial window, oldest first.

    ``singular_at`` is the first step that hit a vanishing denominator, in
    which case ``values`` ends at index ``singular_at - 1``.
    """

    values: tuple[complex, ...]
    order: int
    singular_at: int | None = None

    @property
    def completed(self) -> bool:
        return self.singular_at is None

    @property
    def steps(self) -> int:
        return len(self.values) - self.order

    def at(self, n: int) -> complex:
        """Term with index n, where index 0 is the newest initial value."""
        return self.values[n + self.order - 1]


@dataclass(frozen=True)
class VerificationReport:
    max_rel_error: float
    first_disagreement: int | None
    oracle_outcome: int | None
    closed_form_outcome: int | None
    rtol: float

    @property
    def passed(self) -> bool:
        return self.first_disagreement is None


def iterate_orbit(
    stepper: Stepper, init: Sequence[complex], n_max: int, tol: Tolerances = DEFAULT_TOL
) -> Trajectory:
    """Apply ``stepper`` up to ``n_max`` times to a sliding window.

    ``init`` is the initial window oldest first; its length is the order of
    the recurrence. A :class:`SingularStep` ends the orbit.
    """
    values = [complex(v) for v in init]
    order = len(values)
    if order < 1:
        raise ValueError("init must hold at least one value")
    for k in range(1, n_max + 1):
        try:
            values.append(complex(stepper(values[-order:], tol)))
        except SingularStep:
            return Trajectory(tuple(values), order, k)
    return Trajectory(tuple(values), order)


def _singular(num: complex, den: complex, tol: Tolerances) -> bool:
    return abs(den) <= tol.singular * max(1.0, abs(num))


def riccati_fraction(p: RiccatiParams) -> Fraction:
    return lambda w: (p.alpha + p.beta * w[-1], p.A + p.B * w[-1])


def second_order_fraction(inst: SecondOrderInstance) -> Fraction:
    return lambda w: num_den(inst.eq, inst.B, w[-1], w[-2])


def _from_fraction(frac: Fraction) -> Stepper:
    def step(window: Sequence[complex], tol: Tolerances) -> complex:
        num, den = frac(window)
        if _singular(num, den, tol):
            raise SingularStep(den=den)
        return num / den

    return step


def riccati_stepper(p: RiccatiParams) -> Stepper:
    return _from_fraction(riccati_fraction(p))


def second_order_stepper(inst: SecondOrderInstance) -> Stepper:
    return _from_fraction(second_order_fraction(inst))


def lyness_stepper(k: int, alpha: complex) -> Stepper:
    return lambda w, tol: lyness_step(k, alpha, w, tol)


def riccati_orbit(p: RiccatiParams, x0: complex, n_max: int, tol: Tolerances = DEFAULT_TOL) -> Trajectory:
    """Same result as ``iterate_orbit(riccati_stepper(p), [x0], ...)``, via the kernels."""
    vals, step = kernels.riccati_orbit(p.alpha, p.beta, p.A, p.B, x0, n_max, tol.singular)
    return Trajectory(tuple(complex(v) for v in vals), 1, step or None)


def so_orbit(
    inst: SecondOrderInstance, init: InitialPair, n_max: int, tol: Tolerances = DEFAULT_TOL
) -> Trajectory:
    """Same result as ``iterate_orbit(second_order_stepper(inst), [zm1, z0], ...)``, via the kernels."""
    vals, step = kernels.so_orbit(int(inst.eq), inst.B, init.z0, init.zm1, n_max, tol.singular)
    return Trajectory(tuple(complex(v) for v in vals), 2, step or None)


def verify_closed_form(
    c: RiccatiClassification | SecondOrderClassification,
    n_max: int,
    tol: Tolerances = DEFAULT_TOL,
    *,
    x0: complex | None = None,
    rtol: float = 1e-8,
) -> VerificationReport:
    """Compare a closed form against the iterated orbit for indices up to ``n_max``.

    Riccati classifications carry no initial value, so ``x0`` is required
    for them. Errors are relative to ``max(1, |oracle value|)``; an outcome
    mismatch (one side singular, the other not, or at different steps)
    counts as a disagreement with infinite error.
    """
    if isinstance(c, RiccatiClassification):
        if x0 is None:
            raise ValueError("x0 is required for a Riccati classification")
        orbit = iterate_orbit(riccati_stepper(c.params), [x0], n_max, tol)
        closed, cstep = riccati_closed_orbit(c, x0, n_max, tol)
    else:
        init = [c.init.zm1, c.init.z0]
        orbit = iterate_orbit(second_order_stepper(c.instance), init, n_max, tol)
        closed, cstep = so_closed_orbit(c, n_max, tol)

    max_err = 0.0
    first = None
    for i, (a, b) in enumerate(zip(closed, orbit.values)):
        err = abs(a - b) / max(1.0, abs(b))
        if math.isnan(err):
            err = math.inf
        if err > max_err:
            max_err = err
        if first is None and err > rtol:
            first = i - orbit.order + 1
    if cstep != orbit.singular_at:
        max_err = math.inf
        if first is None:
            steps = [s for s in (cstep, orbit.singular_at) if s is not None]
            first = min(steps)
    return VerificationReport(max_err, first, orbit.singular_at, cstep, rtol)


def invariant_drift(
    inst: SecondOrderInstance, init: InitialPair, n_max: int, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Largest ``|I(z_{n+1}, z_n) - I(z_0, z_{-1})|`` along the orbit.

    Stops at a singular step, or where the invariant itself stops being
    defined. Raises :class:`Undefined` if it is undefined at ``init``.
    """
    c0 = so_invariant(inst, init.z0, init.zm1)
    orbit = so_orbit(inst, init, n_max, tol)
    drift = 0.0
    vals = orbit.values
    for i in range(2, len(vals)):
        try:
            c = so_invariant(inst, vals[i], vals[i - 1])
        except Undefined:
            break
        drift = max(drift, abs(c - c0))
    return drift


def lyness_invariant(k: int, alpha: complex, window: Sequence[complex]) -> complex:
    """``(alpha + sum x) * prod(1 + 1/x)`` over a window of ``k + 1`` terms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(window) != k + 1:
        raise ValueError(f"window must hold k + 1 = {k + 1} values")
    if any(x == 0 for x in window):
        raise ZeroEntry("lyness invariant needs nonzero entries")
    prod = 1 + 0j
    for x in window:
        prod *= 1 / x + 1
    return prod * (alpha + sum(window))


def lyness_step(k: int, alpha: complex, window: Sequence[complex], tol: Tolerances = DEFAULT_TOL) -> complex:
    """Next term of ``x_{n+1} = (alpha + x_n + ... + x_{n-k+1}) / x_{n-k}``.

    ``window`` is oldest first, so ``window[0]`` is the divisor.
    """
    if len(window) != k + 1:
        raise ValueError(f"window must hold k + 1 = {k + 1} values")
    num = alpha + sum(window[1:])
    den = window[0]
    if _singular(num, den, tol):
        raise SingularStep(den=den)
    return num / den


def min_denominator(
    frac: Fraction, init: Sequence[complex], n_max: int, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Smallest ``|den| / max(1, |num|)`` over the first ``n_max`` steps.

    Used to reject near-singular samples; returns 0.0 if a step is singular.
    """
    window = [complex(v) for v in init]
    order = len(window)
    worst = math.inf
    for _ in range(n_max):
        num, den = frac(window[-order:])
        ratio = abs(den) / max(1.0, abs(num))
        worst = min(worst, ratio)
        if _singular(num, den, tol):
            return 0.0
        window.append(num / den)
    return worst


def _ratio_at(frac: Fraction, window: list[complex], step: int) -> tuple[complex, complex]:
    """(num, den) of ``step``, iterating without any singularity cutoff."""
    order = len(window)
    window = list(window)
    for _ in range(step - 1):
        num, den = frac(window[-order:])
        window.append(num / den)
    return frac(window[-order:])


def singularity_noise(frac: Fraction, init: Sequence[complex], step: int) -> tuple[float, float]:
    """Computed ``|den| / max(1, |num|)`` at ``step`` and its rounding-level spread.

    The spread is the largest change of ``den / max(1, |num|)`` when any
    initial value moves by one unit in the last place (real or imaginary
    direction). At a true singularity the computed ratio is pure roundoff,
    so a spread above the singular threshold means double precision cannot
    resolve the singularity there. Returns ``(inf, inf)`` if the orbit
    overflows or divides by zero on the way.
    """
    base = [complex(v) for v in init]
    try:
        num0, den0 = _ratio_at(frac, base, step)
    except (ZeroDivisionError, OverflowError):
        return math.inf, math.inf
    scale = max(1.0, abs(num0))
    spread = 0.0
    for i in range(len(base)):
        h = max(abs(base[i]), 1.0) * 2.0**-52
        for d in (complex(h, 0), complex(0, h)):
            window = list(base)
            window[i] += d
            try:
                _, den = _ratio_at(frac, window, step)
            except (ZeroDivisionError, OverflowError):
                return math.inf, math.inf
            spread = max(spread, abs(den - den0) / scale)
    ratio = abs(den0) / scale
    if math.isnan(ratio) or math.isnan(spread):
        return math.inf, math.inf
    return ratio, spread


def riccati_preimage(p: RiccatiParams, n: int, digits: int = 80) -> complex | mpmath.mpc:
    """Point that is first singular at step ``n``, by backward iteration.

    Starts at the pole ``-A/B`` and applies the inverse map
    ``x = (alpha - A y) / (B y - beta)`` ``n - 1`` times in ``digits``
    significant digits. The inverse map contracts toward the repelling
    fixed point, so this stays accurate where forward iteration cannot.
    """
    if p.B == 0:
        raise ValueError("no pole when B = 0")
    with mpmath.workdps(digits):
        a, b, A, B = (mpmath.mpc(v) for v in (p.alpha, p.beta, p.A, p.B))
        y = -A / B
        for _ in range(n - 1):
            y = (a - A * y) / (B * y - b)
        return +y


def _first_singular_step(frac: Fraction, window: list, n_max: int, tol: Tolerances) -> int | None:
    order = len(window)
    window = list(window)
    for k in range(1, n_max + 1):
        num, den = frac(window[-order:])
        if abs(den) <= tol.singular * max(1, abs(num)):
            return k
        window.append(num / den)
    return None


def check_singular_at(
    frac: Fraction,
    init: Sequence[complex],
    step: int,
    tol: Tolerances = DEFAULT_TOL,
    *,
    reference: Sequence | None = None,
    digits: int = 80,
) -> str:
    """Check that iteration from ``init`` first hits a singular step at ``step``.

    Returns ``"exact"`` on success and ``"miss"`` on a genuine failure. Two
    outcomes flag points that double precision cannot decide:
    ``"scale"`` when an earlier step trips the relative test although its
    denominator is not small in absolute terms (the numerator is huge), and
    ``"ill-conditioned"`` when the rounding spread from
    :func:`singularity_noise` exceeds a tenth of the singular threshold and
    the computed denominator is within 100 spreads of zero.

    ``reference`` is an optional high-precision version of ``init`` (for
    instance from :func:`riccati_preimage`). If ``init`` fails, lies within
    four ulps of ``reference``, and ``reference`` iterated in ``digits``
    digits is first singular at exactly ``step``, the outcome is
    ``"unrepresentable"``: distinct forbidden points round to the same double.
    """
    window = [complex(v) for v in init]
    order = len(window)
    hit = None
    for k in range(1, step + 3):
        num, den = frac(window[-order:])
        if _singular(num, den, tol):
            hit = (k, den)
            break
        window.append(num / den)
    if hit is not None and hit[0] == step:
        return "exact"
    if hit is not None and hit[0] < step:
        return "scale" if abs(hit[1]) > 1e-6 else "miss"
    ratio, spread = singularity_noise(frac, init, step)
    if spread > tol.singular / 10 and ratio <= 100 * spread:
        return "ill-conditioned"
    if reference is not None:
        close = all(
            abs(complex(r) - complex(v)) <= 4 * max(abs(complex(v)), 1.0) * 2.0**-52
            for r, v in zip(reference, init)
        )
        if close:
            strict = Tolerances(tol.rel, tol.abs, tol.singular * 1e-10)
            with mpmath.workdps(digits):
                hit = _first_singular_step(frac, [mpmath.mpc(r) for r in reference], step, strict)
            if hit == step:
                return "unrepresentable"
    return "miss"
