import math

from hypothesis import strategies as st

unit = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def small_complex(draw):
    return complex(draw(unit), draw(unit))


def rel_err(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def close(a: complex, b: complex, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b)) or (math.isnan(abs(a)) and math.isnan(abs(b)))
