"""Shared hypothesis strategies for small exact polynomials and series."""

from hypothesis import strategies as st

from ellfgl.rat import Q
from ellfgl.ring import MPoly, VarSpec
from ellfgl.series import Series

XY = VarSpec(("x", "y"), (-2, -4))

rationals = st.builds(
    Q,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)


@st.composite
def mpolys(draw, spec=XY, max_terms=4, max_exp=3):
    n = spec.nvars
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        exps = tuple(draw(st.integers(min_value=0, max_value=max_exp)) for _ in range(n))
        terms[exps] = draw(rationals)
    return MPoly(spec, terms)


@st.composite
def unit_useries(draw, spec=XY, order=6, var="t"):
    """Univariate series with zero constant term and unit linear coefficient."""
    coeffs = {(1,): MPoly.const(spec, draw(st.sampled_from([1, -1, 2])))}
    for k in range(2, order + 1):
        if draw(st.booleans()):
            coeffs[(k,)] = draw(mpolys(spec, max_terms=2, max_exp=2))
    return Series(spec, (var,), order, coeffs)


@st.composite
def rational_useries(draw, order=6, var="t", nonzero_constant=False):
    spec = VarSpec((), ())
    coeffs = {}
    for k in range(0, order + 1):
        if draw(st.booleans()):
            coeffs[(k,)] = MPoly.const(spec, draw(rationals))
    if nonzero_constant:
        coeffs[(0,)] = MPoly.const(spec, draw(st.sampled_from([1, -1, 2, Q(1, 2)])))
    return Series(spec, (var,), order, coeffs)
