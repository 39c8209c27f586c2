"""Complex scalar conventions shared by the whole package.

Values are plain Python ``complex``. This module fixes the three things the
builtin type leaves open: which square root is "the" square root, how two
values are compared under a tolerance, and a lossless text form used by the
command line and the CSV/JSON emitters.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "ComplexParseError",
    "csqrt_principal",
    "approx_eq",
    "approx_zero",
    "is_real",
    "parse_complex",
    "format_complex",
    "format_real",
]


@dataclass(frozen=True)
class Tolerances:
    """Comparison policy.

    ``rel`` and ``abs`` drive :func:`approx_eq`; ``singular`` is the
    denominator threshold used by every stepper: a step is singular when
    ``|den| <= singular * max(1, |num|)``.

    ``rel = abs = 0`` is allowed and turns every comparison into exact
    floating-point equality.
    """

    rel: float = 1e-9
    abs: float = 1e-12
    singular: float = 1e-12

    def __post_init__(self) -> None:
        for name in ("rel", "abs"):
            v = getattr(self, name)
            if not (0.0 <= v < 1.0):
                raise ValueError(f"{name} tolerance must lie in [0, 1), got {v!r}")
        if not (0.0 < self.singular < 1.0):
            raise ValueError(f"singular tolerance must lie in (0, 1), got {self.singular!r}")


DEFAULT_TOL = Tolerances()


def csqrt_principal(z: complex) -> complex:
    """Square root with the cut on the negative reals, Re(w) >= 0.

    On the cut itself the value from the upper half-plane is returned, so
    ``csqrt_principal(-4) == 2j`` even when the imaginary part is ``-0.0``.
    Points so close below the cut that the root's real part underflows to
    zero are treated as lying on it.
    """
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    w = cmath.sqrt(z)
    if w.real == 0.0 and w.imag < 0.0:
        w = complex(0.0, -w.imag)
    return w


def approx_eq(a: complex, b: complex, tol: Tolerances = DEFAULT_TOL) -> bool:
    """``|a - b| <= tol.abs + tol.rel * max(|a|, |b|)``."""
    return abs(a - b) <= tol.abs + tol.rel * max(abs(a), abs(b))


def approx_zero(a: complex, tol: Tolerances = DEFAULT_TOL) -> bool:
    return approx_eq(a, 0.0, tol)


def is_real(z: complex, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Imaginary part negligible relative to ``|z|``."""
    return abs(z.imag) <= tol.abs + tol.rel * abs(z)


class ComplexParseError(ValueError):
    """Raised by :func:`parse_complex` on malformed input."""

    def __init__(self, text: str, token: str):
        super().__init__(f"cannot parse complex value {text!r}: offending token {token!r}")
        self.text = text
        self.token = token


_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_FULL = re.compile(
    rf"^(?P<re>{_REAL})(?:(?P<sign>[+-])(?P<im>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?i)?$"
)
_IMAG = re.compile(rf"^(?P<im>{_REAL}|[+-])?i$")
_TOKEN = re.compile(rf"{_REAL}i?|[+-]?i")


def _offending_token(text: str) -> str:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            end = pos + 1
            while end < len(text) and not text[end].isspace() and text[end] not in "+-":
                end += 1
            return text[pos:end]
        pos = m.end()
    return text


def parse_complex(text: str) -> complex:
    """Parse ``<real>``, ``<real>[+|-]<real>i`` or ``<real>i``.

    Reals are decimal or scientific. U+2212 is accepted as a minus sign.
    A bare ``i`` / ``-i`` means unit imaginary.
    """
    s = text.strip().replace("−", "-")
    if not s:
        raise ComplexParseError(text, "")
    m = _IMAG.match(s)
    if m is not None:
        im = m.group("im")
        if im in (None, "+", "-"):
            im = (im or "") + "1"
        return complex(0.0, float(im))
    m = _FULL.match(s)
    if m is not None:
        re_part = float(m.group("re"))
        if m.group("sign") is None:
            return complex(re_part, 0.0)
        im_text = m.group("im") or "1"
        im_part = float(m.group("sign") + im_text)
        return complex(re_part, im_part)
    raise ComplexParseError(text, _offending_token(s))


def format_real(x: float) -> str:
    """Shortest round-trip decimal for a finite float; integral values drop ``.0``."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} has no text form")
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def format_complex(z: complex) -> str:
    """Deterministic text form, inverse of :func:`parse_complex`.

    The real part is omitted only when it is ``+0.0`` and the imaginary part
    is nonzero; the imaginary part is omitted only when it is ``+0.0``.
    Signed zeros therefore survive a round trip.
    """
    z = complex(z)
    re_, im_ = z.real, z.imag
    im_zero_pos = im_ == 0.0 and math.copysign(1.0, im_) > 0
    re_zero_pos = re_ == 0.0 and math.copysign(1.0, re_) > 0
    if im_zero_pos:
        return format_real(re_)
    if re_zero_pos and im_ != 0.0:
        return format_real(im_) + "i"
    im_text = format_real(im_)
    if not im_text.startswith("-"):
        im_text = "+" + im_text
    return format_real(re_) + im_text + "i"
