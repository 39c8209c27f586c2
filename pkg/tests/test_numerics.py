import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rationaldiff.numerics import (
    DEFAULT_TOL,
    ComplexParseError,
    Tolerances,
    approx_eq,
    approx_zero,
    csqrt_principal,
    format_complex,
    is_real,
    parse_complex,
)

finite = st.floats(allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "z, expected",
    [(4 + 0j, 2 + 0j), (2j, 1 + 1j), (-4 + 0j, 2j), (complex(-4, -0.0), 2j), (0j, 0j)],
)
def test_csqrt_examples(z, expected):
    assert abs(csqrt_principal(z) - expected) < 1e-15


def test_csqrt_upper_side_of_cut():
    # a signed-zero imaginary part must not flip the root below the axis
    assert csqrt_principal(complex(-9.0, -0.0)).imag == 3.0


@given(finite, finite)
def test_csqrt_properties(re, im):
    if max(abs(re), abs(im)) > 1e300:
        return
    z = complex(re, im)
    w = csqrt_principal(z)
    assert w.real >= 0
    if w.real == 0:
        assert w.imag >= 0
    assert abs(w * w - z) <= 4 * 2.0**-52 * abs(z) + 1e-300


def test_csqrt_random_batch():
    rng = np.random.default_rng(0)
    zs = rng.uniform(-1e3, 1e3, (10_000, 2))
    for re, im in zs:
        z = complex(re, im)
        w = csqrt_principal(z)
        assert w.real >= 0
        assert abs(w * w - z) <= 4 * 2.0**-52 * abs(z)


def test_approx_eq_examples():
    assert approx_eq(1, 1)
    assert approx_eq(1, 1 + 1e-12j, Tolerances(rel=1e-9))
    assert not approx_eq(1, 2, Tolerances(rel=1e-9))


def test_zero_tolerances_mean_exact_equality():
    exact = Tolerances(rel=0.0, abs=0.0)
    assert approx_eq(0.1 + 0.2, 0.1 + 0.2, exact)
    assert not approx_eq(0.1 + 0.2, 0.3, exact)
    assert approx_zero(0.0, exact)


@pytest.mark.parametrize("kw", [{"rel": 1.0}, {"abs": -1e-3}, {"singular": 0.0}, {"rel": float("nan")}])
def test_tolerances_validate(kw):
    with pytest.raises(ValueError):
        Tolerances(**kw)


def test_is_real():
    assert is_real(0.5 + 1e-14j)
    assert not is_real(0.5 + 1e-3j)


@pytest.mark.parametrize(
    "text, z",
    [
        ("1.5−2i", 1.5 - 2j),
        ("1.5-2i", 1.5 - 2j),
        ("3i", 3j),
        ("-i", -1j),
        ("i", 1j),
        ("2", 2 + 0j),
        ("-1e-3+4.5E2i", complex(-1e-3, 450.0)),
        ("  7  ", 7 + 0j),
    ],
)
def test_parse_examples(text, z):
    assert parse_complex(text) == z


@pytest.mark.parametrize("text", ["abc", "", "1+", "1+2", "2ii", "1..2", "i3"])
def test_parse_errors(text):
    with pytest.raises(ComplexParseError) as info:
        parse_complex(text)
    assert isinstance(info.value, ValueError)


def test_parse_error_names_token():
    with pytest.raises(ComplexParseError) as info:
        parse_complex("abc")
    assert "abc" in str(info.value)


@pytest.mark.parametrize("z, text", [(1j, "1i"), (-1 + 0j, "-1"), (0.5 - 0.25j, "0.5-0.25i"), (0j, "0")])
def test_format_examples(z, text):
    assert format_complex(z) == text


@given(finite, finite)
def test_format_parse_roundtrip(re, im):
    z = complex(re, im)
    back = parse_complex(format_complex(z))
    assert back == z
    assert math.copysign(1, back.real) == math.copysign(1, z.real)
    assert math.copysign(1, back.imag) == math.copysign(1, z.imag)
    assert format_complex(back) == format_complex(z)


def test_default_tolerances():
    assert (DEFAULT_TOL.rel, DEFAULT_TOL.abs, DEFAULT_TOL.singular) == (1e-9, 1e-12, 1e-12)


def test_csqrt_matches_cmath_off_cut():
    for z in (1 + 2j, -3 + 0.5j, 0.25 - 4j):
        assert csqrt_principal(z) == cmath.sqrt(z)
