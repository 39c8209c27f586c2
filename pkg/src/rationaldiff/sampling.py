"""Seeded random draws of admissible instances for each case and subcase.

A draw is admissible when it sits at least ``margin`` away from every
classification boundary (checked by reclassifying with an absolute
tolerance of ``margin``), is not within ``margin`` of a forbidden point up
to index ``forbidden_horizon``, and its orbit has no denominator smaller
than ``margin`` relative to its numerator over the tested horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import Undefined
from .numerics import DEFAULT_TOL, Tolerances
from .oracle import min_denominator, riccati_fraction, second_order_fraction
from .riccati import RiccatiParams, classify_riccati, riccati_forbidden_contains
from .second_order import (
    SUBCASES,
    Equation,
    InitialPair,
    SecondOrderInstance,
    so_classify,
    so_forbidden_contains,
    so_invariant,
)

RICCATI_CASES = (2, 3, 4, 5, 6, 7)
MARGIN = 1e-6


@dataclass(frozen=True)
class SamplePlan:
    count: int = 200
    seed: int = 42
    n_max: int = 25
    forbidden_horizon: int = 30
    margin: float = MARGIN
    max_attempts: int = 100


def _c(rng: np.random.Generator, lo: float = -2.0, hi: float = 2.0) -> complex:
    re, im = rng.uniform(lo, hi, 2)
    return complex(re, im)


def _margin_tol(margin: float) -> Tolerances:
    return Tolerances(rel=0.0, abs=margin, singular=DEFAULT_TOL.singular)


def _draw_riccati(case: int, rng: np.random.Generator) -> tuple[RiccatiParams, complex]:
    a, b, A, B, x0 = (_c(rng) for _ in range(5))
    if case == 2:
        B = 0j
    elif case == 3:
        a = b * A / B
    elif case == 4:
        A = -b
    elif case == 6:
        a = (b * A - (b + A) ** 2 / 4) / B
    elif case == 7:
        r = rng.uniform(0.3, 4.0)
        a = (b * A - r * (b + A) ** 2) / B
    return RiccatiParams(a, b, A, B), x0


def riccati_samples(case: int, plan: SamplePlan = SamplePlan()) -> Iterator[tuple[RiccatiParams, complex]]:
    """``plan.count`` admissible (params, x0) draws for a Riccati case."""
    rng = np.random.default_rng([plan.seed, 1, case])
    loose = _margin_tol(plan.margin)
    got = 0
    for _ in range(plan.count * plan.max_attempts):
        if got == plan.count:
            return
        p, x0 = _draw_riccati(case, rng)
        c = classify_riccati(p)
        if c.case != case or classify_riccati(p, loose).case != case:
            continue
        if case in (3, 4, 5, 6, 7) and riccati_forbidden_contains(c, x0, plan.forbidden_horizon, loose):
            continue
        if min_denominator(riccati_fraction(p), [x0], plan.n_max) < plan.margin:
            continue
        got += 1
        yield p, x0
    raise RuntimeError(f"could not draw {plan.count} admissible samples for case {case}")


def _draw_second_order(eq: Equation, sub: str, rng: np.random.Generator) -> tuple[SecondOrderInstance, InitialPair]:
    B, z0, zm1 = _c(rng), _c(rng), _c(rng)
    if eq == Equation.EQ4:
        if sub == "i":
            z0 = 0j
        elif sub == "ii":
            zm1 = -1 / B
        elif sub == "iii":
            z0 = -1 / B
        elif sub == "iv-b":
            zm1 = (4 * B / (1 / z0 + B) - 1) / B
        elif sub == "iv-c":
            C = rng.uniform(0.2, 3.8) * B
            zm1 = (C / (1 / z0 + B) - 1) / B
    elif eq == Equation.EQ5:
        if sub == "i":
            z0 = 0j
        elif sub == "ii":
            zm1 = 0j
        elif sub == "iii":
            z0 = -1 / B
        elif sub in ("iv-b", "iv-c"):
            r = 0.25 if sub == "iv-b" else rng.uniform(0.3, 4.0)
            zm1 = (1 / z0 + B) / (-r * B * B)
    elif eq == Equation.EQ7:
        if sub == "i":
            z0 = 0j
    elif eq in (Equation.EQ8, Equation.EQ9):
        if sub == "a":
            # both ways of making the invariant vanish
            if rng.uniform() < 0.5:
                if eq == Equation.EQ8:
                    z0 = 0j
                else:
                    zm1 = 0j
            else:
                if eq == Equation.EQ8:
                    zm1 = -B
                else:
                    z0 = -B
        elif sub in ("c", "d"):
            r = 0.25 if sub == "c" else rng.uniform(0.3, 4.0)
            C = -r * B * B
            zm1 = C / z0 - B if eq == Equation.EQ8 else C / (z0 + B)
    return SecondOrderInstance(eq, B), InitialPair(z0, zm1)


def so_samples(
    eq: Equation, subcase: str, plan: SamplePlan = SamplePlan()
) -> Iterator[tuple[SecondOrderInstance, InitialPair]]:
    """``plan.count`` admissible (instance, initial pair) draws for one subcase."""
    eq = Equation(eq)
    idx = SUBCASES[eq].index(subcase)
    rng = np.random.default_rng([plan.seed, int(eq), idx])
    loose = _margin_tol(plan.margin)
    got = 0
    for _ in range(plan.count * plan.max_attempts):
        if got == plan.count:
            return
        inst, init = _draw_second_order(eq, subcase, rng)
        if so_classify(inst, init).subcase != subcase or so_classify(inst, init, loose).subcase != subcase:
            continue
        if eq == Equation.EQ6 and so_classify(inst, init).C is None:
            continue
        if so_forbidden_contains(inst, init, plan.forbidden_horizon, loose) is not None:
            continue
        if min_denominator(second_order_fraction(inst), [init.zm1, init.z0], plan.n_max) < plan.margin:
            continue
        got += 1
        yield inst, init
    raise RuntimeError(f"could not draw {plan.count} admissible samples for {eq.name} {subcase}")


def invariant_samples(
    eq: Equation, count: int = 500, seed: int = 42, n_max: int = 40, margin: float = MARGIN
) -> Iterator[tuple[SecondOrderInstance, InitialPair]]:
    """Unconstrained draws where the invariant exists and the orbit stays clear of poles."""
    eq = Equation(eq)
    rng = np.random.default_rng([seed, 2, int(eq)])
    got = 0
    while got < count:
        inst = SecondOrderInstance(eq, _c(rng))
        init = InitialPair(_c(rng), _c(rng))
        try:
            so_invariant(inst, init.z0, init.zm1)
        except Undefined:
            continue
        if min_denominator(second_order_fraction(inst), [init.zm1, init.z0], n_max) < margin:
            continue
        got += 1
        yield inst, init
