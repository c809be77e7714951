import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfgl.rat import Q
from ellfgl.ring import (
    MPoly,
    QuotientSpec,
    SpecMismatchError,
    QuotientError,
    VarSpec,
    nu,
    poly_from_text,
    quotient_map,
)
from strategies import XY, mpolys

MU = VarSpec(("mu1", "mu2", "mu3", "mu4", "mu6"), (-2, -4, -6, -8, -12))
m1, m2, m3 = (MPoly.variable(MU, n) for n in ("mu1", "mu2", "mu3"))


def test_arith_examples():
    assert ((m1 + m2) * MPoly.zero(MU)).is_zero()
    assert m1 * m1 == MPoly.monomial(MU, (2, 0, 0, 0, 0))
    assert (m1 + 2 * m2) ** 2 == m1 * m1 + 4 * m1 * m2 + 4 * m2 * m2


def test_spec_mismatch_rejected():
    other = MPoly.variable(XY, "x")
    with pytest.raises(SpecMismatchError):
        m1 + other


def test_weight_of():
    assert m3.weight() == -6
    assert (m1 * m2).weight() == -6
    assert (m1 + m2).weight() is None
    assert MPoly.zero(MU).weight() == 0


def test_specialize():
    p = m1 * m1 + m2
    assert p.specialize({}) == p
    assert p.specialize({"mu1": 0}) == m2
    q = p.specialize({"mu1": Q(1, 2), "mu2": 3})
    assert q == MPoly.const(MU, Q(13, 4))
    with pytest.raises(KeyError):
        p.specialize({"nope": 1})


def test_quotient_decomposables():
    dec = QuotientSpec.decomposables(MU.names)
    assert quotient_map(m1 * m2, dec).is_zero()
    assert quotient_map(m1 * m1, dec).is_zero()  # the ideal square counts multiplicity
    assert quotient_map(m1 + 5, dec) == m1 + 5


def test_quotient_relation():
    spec = VarSpec(("a6", "b3"), (-12, -6))
    a6, b3 = MPoly.variable(spec, "a6"), MPoly.variable(spec, "b3")
    rel = QuotientSpec.relation(b3 * b3 - a6, "b3")
    assert quotient_map(b3**3, rel) == a6 * b3
    assert quotient_map(b3**4 + b3, rel) == a6 * a6 + b3
    with pytest.raises(ValueError):
        QuotientSpec.relation(b3**3 - a6, "b3")


def test_quotient_mod_prime():
    two = QuotientSpec.mod_prime(2)
    assert quotient_map(3 * m1 + 2 * m3, two) == m1
    with pytest.raises(QuotientError):
        quotient_map(m1 * Q(1, 2), two)
    with pytest.raises(ValueError):
        QuotientSpec.mod_prime(4)


def test_nu():
    assert nu(2) == 2
    assert nu(7) == 7
    assert nu(6) == 1
    with pytest.raises(ValueError):
        nu(1)


def test_nu_prime_powers():
    for p in (2, 3, 5, 7):
        q = p
        while q <= 64:
            assert nu(q) == p
            q *= p


def test_text_and_json_round_trip():
    p = m1 * m2 * Q(3, 2) - m3 + MPoly.const(MU, Q(-1, 7))
    assert p.to_text() == "3/2*mu1*mu2 - mu3 - 1/7"
    assert MPoly.from_json(p.to_json()) == p
    assert poly_from_text(MU, p.to_text()) == p
    assert MPoly.zero(MU).to_text() == "0"


@given(mpolys(), mpolys(), mpolys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(mpolys(max_terms=1), mpolys(max_terms=1))
@settings(max_examples=40, deadline=None)
def test_weight_additive_on_homogeneous(p, q):
    if p.is_zero() or q.is_zero():
        return
    assert (p * q).weight() == p.weight() + q.weight()


@given(mpolys(), mpolys(), st.sampled_from(["dec", "mod3", "rel"]))
@settings(max_examples=60, deadline=None)
def test_quotient_idempotent_homomorphism(p, q, kind):
    if kind == "dec":
        qs = QuotientSpec.decomposables(("x", "y"))
    elif kind == "mod3":
        qs = QuotientSpec.mod_prime(3)
        p = p.map_coefficients(lambda c: Q(c.numerator))
        q = q.map_coefficients(lambda c: Q(c.numerator))
    else:
        qs = QuotientSpec.relation(
            MPoly.variable(XY, "x") ** 2 - MPoly.variable(XY, "y"), "x"
        )
    red = lambda t: quotient_map(t, qs)
    assert red(red(p)) == red(p)
    assert red(p + q) == red(red(p) + red(q))
    assert red(p * q) == red(red(p) * red(q))
