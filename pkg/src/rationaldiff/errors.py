"""Exception types.

Singular steps and undefined closed-form values are ordinary outcomes when
probing forbidden sets, so both carry the step index where things broke.
"""

from __future__ import annotations


class SingularStep(ArithmeticError):
    """A recurrence denominator vanished (numerically) while stepping."""

    def __init__(self, step: int | None = None, den: complex | None = None):
        msg = "singular step" if step is None else f"singular at step {step}"
        super().__init__(msg)
        self.step = step
        self.den = den


class Undefined(ArithmeticError):
    """A closed form or invariant has no value at the requested point."""

    def __init__(self, step: int | None = None, reason: str = ""):
        msg = reason or ("undefined" if step is None else f"undefined from step {step}")
        super().__init__(msg)
        self.step = step


class InvalidInstance(ValueError):
    pass


class EmptyGrid(ValueError):
    pass


class ZeroEntry(ValueError):
    pass
