"""Closed forms, invariants and forbidden sets of complex rational recurrences."""

from .errors import EmptyGrid, InvalidInstance, SingularStep, Undefined, ZeroEntry
from .numerics import (
    DEFAULT_TOL,
    ComplexParseError,
    Tolerances,
    approx_eq,
    approx_zero,
    csqrt_principal,
    format_complex,
    parse_complex,
)
from .riccati import (
    Forbidden,
    RiccatiClassification,
    RiccatiParams,
    classify_riccati,
    riccati_closed_form,
    riccati_forbidden_contains,
    riccati_forbidden_point,
    riccati_step,
)
from .second_order import (
    Equation,
    ForbiddenPoint2D,
    InitialPair,
    SecondOrderClassification,
    SecondOrderInstance,
    so_classify,
    so_closed_form,
    so_forbidden_contains,
    so_forbidden_sample,
    so_invariant,
    so_step,
)

__version__ = "0.1.0"
