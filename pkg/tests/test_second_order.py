import cmath

import numpy as np
import pytest
from hypothesis import assume, given, settings

from conftest import rel_err, small_complex
from rationaldiff.errors import EmptyGrid, InvalidInstance, SingularStep, Undefined
from rationaldiff.numerics import approx_eq
from rationaldiff.oracle import (
    check_singular_at,
    iterate_orbit,
    min_denominator,
    riccati_stepper,
    second_order_fraction,
    second_order_stepper,
    so_orbit,
)
from rationaldiff.riccati import classify_riccati, riccati_forbidden_contains
from rationaldiff.sampling import SamplePlan, invariant_samples, so_samples
from rationaldiff.second_order import (
    SUBCASES,
    Equation,
    ForbiddenHit,
    InitialPair,
    SecondOrderInstance,
    _value,
    reduced_map,
    so_classify,
    so_closed_form,
    so_closed_orbit,
    so_forbidden_contains,
    so_forbidden_lines,
    so_forbidden_sample,
    so_invariant,
    so_step,
)


def inst(eq, B=1):
    return SecondOrderInstance(Equation(eq), B)


def pair(z0, zm1):
    return InitialPair(z0, zm1)


def test_equation_parse():
    assert Equation.parse("eq7") is Equation.EQ7
    assert Equation.parse("EQ4") is Equation.EQ4
    assert Equation.parse(9) is Equation.EQ9
    assert Equation.EQ6.theorem == 4


def test_b_zero_only_for_eq6():
    for eq in (4, 5, 7, 8, 9):
        with pytest.raises(InvalidInstance):
            SecondOrderInstance(Equation(eq), 0)
    assert SecondOrderInstance(Equation.EQ6, 0).B == 0


def test_step_examples():
    assert so_step(inst(4), 1, 1) == 1
    with pytest.raises(SingularStep):
        so_step(inst(4), 0, -1)
    assert so_step(inst(9), -1, 5) == -1


def test_invariant_examples():
    assert so_invariant(inst(4), 1, 1) == 4
    assert so_invariant(inst(8), 0, 7) == 0
    with pytest.raises(Undefined):
        so_invariant(inst(4), 0, 5)
    with pytest.raises(Undefined):
        so_invariant(inst(6), 1, 0)
    with pytest.raises(Undefined):
        so_invariant(inst(7), 0, 1)


def test_classify_examples():
    c = so_classify(inst(4), pair(1, 1))
    assert c.tag == "thm2-iv-b" and c.C == 4
    assert so_classify(inst(5), pair(-1, 3)).tag == "thm3-iii"
    c = so_classify(inst(9), pair(1, 1))
    assert c.tag == "thm7-b"
    assert c.C == 2
    assert c.lam1 == pytest.approx(-1) and c.lam2 == pytest.approx(2)


def test_closed_form_examples():
    assert so_closed_form(so_classify(inst(4), pair(1, 1)), 9) == pytest.approx(1, abs=1e-14)
    assert so_closed_form(so_classify(inst(6), pair(2, 1)), 1) == 5
    assert so_closed_form(so_classify(inst(7), pair(1, 1)), 4) == pytest.approx(1, abs=1e-15)
    c = so_classify(inst(6), pair(2, 1))
    assert so_closed_form(c, -1) == 1 and so_closed_form(c, 0) == 2
    with pytest.raises(ValueError):
        so_closed_form(c, -2)


def test_closed_form_undefined_on_forbidden_pair():
    c = so_classify(inst(4), pair(0, -1))
    with pytest.raises(Undefined) as info:
        so_closed_form(c, 3)
    assert info.value.step == 1


def test_forbidden_contains_examples():
    assert so_forbidden_contains(inst(4), pair(0, -1), 5) == ForbiddenHit("seed", 1, 1)
    hit = so_forbidden_contains(inst(6), pair(1, 0), 5)
    assert (hit.branch, hit.n) == ("axis", 1)
    assert so_forbidden_contains(inst(6), pair(2, 2), 10) is None
    assert iterate_orbit(second_order_stepper(inst(6)), [2, 2], 10).completed
    with pytest.raises(ValueError):
        so_forbidden_contains(inst(6), pair(2, 2), 0)


def test_forbidden_sample_examples():
    pts = so_forbidden_sample(inst(6), 3, [2])
    geo = sorted(p.z0.real for p in pts if p.branch == "geometric")
    assert geo == pytest.approx([0.5, 0.75, 0.875])
    pts = so_forbidden_sample(inst(4), 2, [2])
    coords = {(p.z0, p.zm1) for p in pts}
    assert (-2, -1) in coords and (-1.5, -1) in coords
    pts = so_forbidden_sample(inst(8), 1, [2])
    assert any(p.z0 == -1 and p.zm1 == -1 for p in pts)
    with pytest.raises(EmptyGrid):
        so_forbidden_sample(inst(8), 3, [])


def test_eq9_seed_pair_is_zero_over_zero():
    num_den = second_order_fraction(inst(9))([0, 0])
    assert num_den == (0, 0)
    assert so_forbidden_contains(inst(9), pair(0, 0), 5).step == 1


def test_forbidden_lines():
    assert [(l.fixed, l.step) for l in so_forbidden_lines(inst(6))] == [("zm1", 1), ("z0", 2)]
    assert so_forbidden_lines(inst(4)) == []
    for eq in (6, 7, 8, 9):
        for line in so_forbidden_lines(inst(eq, 0.7 - 0.2j)):
            free = 1.3 + 0.4j
            z0, zm1 = (line.value, free) if line.fixed == "z0" else (free, line.value)
            assert iterate_orbit(second_order_stepper(inst(eq, 0.7 - 0.2j)), [zm1, z0], 5).singular_at == line.step


@pytest.mark.parametrize("eq", list(Equation))
def test_every_subcase_reachable(eq):
    for sub in SUBCASES[eq]:
        draws = list(so_samples(eq, sub, SamplePlan(count=3, seed=1)))
        assert all(so_classify(i, p).subcase == sub for i, p in draws)


@pytest.mark.parametrize("eq, sub", [(eq, s) for eq in Equation for s in SUBCASES[eq]])
def test_closed_form_matches_iteration(eq, sub):
    for instance, init in so_samples(eq, sub, SamplePlan(count=30, seed=5)):
        c = so_classify(instance, init)
        closed, step = so_closed_orbit(c, 25)
        orbit = iterate_orbit(second_order_stepper(instance), [init.zm1, init.z0], 25)
        assert step is None and orbit.completed
        assert max(rel_err(a, b) for a, b in zip(closed, orbit.values)) <= 1e-8


def _payload_checks(c):
    inv = None
    try:
        inv = so_invariant(c.instance, c.init.z0, c.init.zm1)
    except Undefined:
        pass
    if c.C is not None and inv is not None:
        assert approx_eq(c.C, inv)
    if c.lam1 is not None:
        B, C = c.instance.B, c.C
        product = B / C if c.instance.eq == Equation.EQ4 else -C / (B * B)
        assert abs(c.lam1 + c.lam2 - 1) <= 1e-12
        assert abs(c.lam1 * c.lam2 - product) <= 1e-12 * max(1, abs(product))


@given(small_complex(), small_complex(), small_complex())
def test_classification_payloads(B, z0, zm1):
    assume(abs(B) > 1e-3)
    for eq in Equation:
        _payload_checks(so_classify(inst(eq, B), pair(z0, zm1)))


def _clear_orbit(instance, init, n):
    return min_denominator(second_order_fraction(instance), [init.zm1, init.z0], n) >= 1e-6


@settings(max_examples=60)
@given(small_complex(), small_complex(), small_complex())
def test_invariant_conserved(B, z0, zm1):
    for eq in Equation:
        instance, init = inst(eq, B) if eq == 6 or B != 0 else None, pair(z0, zm1)
        if instance is None:
            continue
        try:
            c0 = so_invariant(instance, z0, zm1)
        except Undefined:
            continue
        if not cmath.isfinite(c0) or not _clear_orbit(instance, init, 40):
            continue
        vals = so_orbit(instance, init, 40).values
        for i in range(2, len(vals)):
            assert abs(so_invariant(instance, vals[i], vals[i - 1]) - c0) <= 1e-9 * max(1, abs(c0))


@settings(max_examples=60)
@given(small_complex(), small_complex(), small_complex())
def test_reduced_map_one_step(B, z0, zm1):
    # one step of the reduced map equals one step of the full recurrence
    for eq in Equation:
        if B == 0 and eq != 6:
            continue
        instance = inst(eq, B)
        try:
            C = so_invariant(instance, z0, zm1)
        except Undefined:
            continue
        if not cmath.isfinite(C) or not _clear_orbit(instance, pair(z0, zm1), 1):
            continue
        p = reduced_map(instance, C)
        den = p.A + p.B * z0
        if abs(den) < 1e-6 * max(1, abs(p.alpha + p.beta * z0)):
            continue
        assert rel_err((p.alpha + p.beta * z0) / den, so_step(instance, z0, zm1)) <= 1e-9


@pytest.mark.parametrize("eq", list(Equation))
def test_reduced_map_reproduces_orbit(eq):
    for instance, init in invariant_samples(eq, count=500, seed=42, n_max=40):
        C = so_invariant(instance, init.z0, init.zm1)
        full = so_orbit(instance, init, 40).values[1:]
        first = iterate_orbit(riccati_stepper(reduced_map(instance, C)), [init.z0], 40)
        assert first.completed
        assert max(rel_err(a, b) for a, b in zip(first.values, full)) <= 1e-9


def test_reduced_maps_written_out():
    B, C, z = 0.7 + 0.1j, -1.3 + 0.4j, 0.2 - 0.9j
    expected = {
        4: (1 + B * z) / (C - B - B * B * z),
        5: 1 / (C * z - B),
        6: C * z - B,
        7: (z + B) / C,
        8: C / (z + B),
        9: (C - B * z) / z,
    }
    for eq, value in expected.items():
        p = reduced_map(inst(eq, B), C)
        assert abs((p.alpha + p.beta * z) / (p.A + p.B * z) - value) < 1e-14


@pytest.mark.parametrize("eq", list(Equation))
def test_forbidden_sample_semantics(eq):
    rng = np.random.default_rng([9, int(eq)])
    exact = 0
    for _ in range(15):
        B = complex(*rng.uniform(-2, 2, 2))
        grid = [complex(*rng.uniform(-2, 2, 2)) for _ in range(2)]
        instance = inst(eq, B)
        for p in so_forbidden_sample(instance, 15, grid):
            verdict = check_singular_at(second_order_fraction(instance), [p.zm1, p.z0], p.step)
            assert verdict != "miss", p
            exact += verdict == "exact"
            if verdict == "exact":
                hit = so_forbidden_contains(instance, pair(p.z0, p.zm1), 15)
                assert hit is not None and hit.step == p.step
    assert exact > 100


def test_interleaved_branch_steps():
    # the index inside a branch is not the step at which the orbit dies
    pts = {(p.branch, p.n): p for p in so_forbidden_sample(inst(4), 3, [2])}
    assert pts[("even", 3)].step == 6 and pts[("odd", 3)].step == 5
    pts = {(p.branch, p.n): p for p in so_forbidden_sample(inst(6), 3, [2])}
    assert pts[("geometric", 2)].step == 4


@given(small_complex(), small_complex())
def test_degenerate_closure(B, z):
    assume(abs(B) > 1e-2)
    # Eq4 with z_{-1} = -1/B keeps every odd term at -1/B
    orbit = iterate_orbit(second_order_stepper(inst(4, B)), [-1 / B, z], 20)
    if _clear_orbit(inst(4, B), pair(z, -1 / B), 20):
        # the first denominator is B z plus the rounding of 1 + B(-1/B), so
        # each odd term carries error ~eps / |B z|; off the line the map is
        # neutral and that error accumulates linearly
        cond = 1 / min(1.0, abs(B * z))
        for n in range(1, 21, 2):
            assert abs(orbit.at(n) + 1 / B) <= (1e-10 + n * 1e-14 * cond) * max(1, abs(1 / B))
    eq5 = iterate_orbit(second_order_stepper(inst(5, B)), [z, -1 / B], 20)
    assume(_clear_orbit(inst(5, B), pair(-1 / B, z), 20))
    assert all(abs(v + 1 / B) <= 1e-10 * max(1, abs(1 / B)) for v in eq5.values[1:])


@given(small_complex(), small_complex())
def test_constant_orbits_eq8_eq9(B, z):
    assume(abs(B) > 1e-2)
    eq9 = iterate_orbit(second_order_stepper(inst(9, B)), [z, -B], 20)
    assume(_clear_orbit(inst(9, B), pair(-B, z), 20))
    assert all(abs(v + B) <= 1e-12 * abs(B) for v in eq9.values[1:])
    eq8 = iterate_orbit(second_order_stepper(inst(8, B)), [z, 0], 20)
    if eq8.completed:
        assert all(v == 0 for v in eq8.values[1:])


DYADIC = [1, 2, 0.5, -1, -4, 0.25]


@pytest.mark.parametrize("B", DYADIC)
@pytest.mark.parametrize("z", [0, 1, -2, 0.75, 5])
def test_degenerate_orbits_exact_for_dyadic_values(B, z):
    # with values whose products and quotients round exactly, the constant orbits are bitwise constant
    eq9 = iterate_orbit(second_order_stepper(inst(9, B)), [z, -B], 20)
    assert all(v == -B for v in eq9.values[1:])
    eq5 = iterate_orbit(second_order_stepper(inst(5, B)), [z, -1 / B], 20)
    assert all(v == -1 / B for v in eq5.values[1:])
    eq4 = iterate_orbit(second_order_stepper(inst(4, B)), [-1 / B, z + 0.125], 20)
    if eq4.completed:
        assert all(eq4.at(n) == -1 / B for n in range(1, 21, 2))


@given(small_complex())
def test_overlapping_degenerate_hypotheses(B):
    assume(abs(B) > 1e-2)
    m = -1 / B
    c = so_classify(inst(4, B), pair(m, m))
    assert c.subcase == "iii"
    as_ii = type(c)(c.instance, c.init, "ii")
    for k in range(1, 12):
        assert abs(_value(c, k) - _value(as_ii, k)) <= 1e-9 * max(1, abs(m))


def test_eq6_with_zero_b():
    c = so_classify(inst(6, 0), pair(2, 1))
    assert c.C == 2
    assert so_closed_form(c, 5) == 64
    assert so_forbidden_contains(inst(6, 0), pair(2, 1), 20) is None


def test_linear_arithmetic_branch():
    assert so_forbidden_contains(inst(6), pair(3, 4), 10) == ForbiddenHit("arithmetic", 3, 5)
    assert so_forbidden_contains(inst(7), pair(-3, -4), 10) == ForbiddenHit("arithmetic", 2, 4)
    assert iterate_orbit(second_order_stepper(inst(7)), [-4, -3], 10).singular_at == 4


def test_generic_branch_delegates_to_first_order():
    instance = inst(8, 1)
    C = 2 + 0j
    rc = classify_riccati(reduced_map(instance, C))
    pts = [p for p in so_forbidden_sample(instance, 4, [C]) if p.branch == f"case{rc.case}"]
    for p in pts:
        assert riccati_forbidden_contains(rc, p.z0, 4) == p.n


@pytest.mark.parametrize("eq", [4, 5, 8, 9])
def test_perturbed_forbidden_points_are_caught(eq):
    # moving a forbidden point by 1e-6 must show up as a miss, not as roundoff
    rng = np.random.default_rng([1, eq])
    B = complex(*rng.uniform(-2, 2, 2))
    instance = inst(eq, B)
    for p in so_forbidden_sample(instance, 10, [complex(*rng.uniform(-2, 2, 2))]):
        moved = [p.zm1, p.z0 * (1 + 1e-6) + 1e-6]
        assert check_singular_at(second_order_fraction(instance), moved, p.step) == "miss"
