"""Hypothesis strategies for parameter points."""
from hypothesis import strategies as st

from lfthin import ThinningParams

finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def region_points(draw, max_r: float = 5.0):
    r = draw(st.floats(0.0, max_r, **finite))
    m = draw(st.floats(1e-3, 1.0, **finite)) * (r + 1.0)
    return ThinningParams(m, r)


@st.composite
def r1_points(draw, max_r: float = 5.0):
    r = draw(st.floats(0.0, max_r, **finite))
    m = draw(st.floats(1e-3, 0.999, **finite))
    return ThinningParams(m, r)
