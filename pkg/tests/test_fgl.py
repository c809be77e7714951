import random

import pytest

from ellfgl.rat import Q
from ellfgl.ring import MPoly, VarSpec
from ellfgl.series import Series
from ellfgl.curve import MuParams, mu_spec
from ellfgl import fgl
from ellfgl.fgl import (
    FormalGroupLaw,
    build_chord,
    build_classical,
    build_general,
    e1_reduction,
    forms_agree,
    general_exp_log,
    lemniscatic_example_report,
    log_exp,
    ode_residual_report,
    power_system,
    rho_closed_form,
    tp_data,
    two_height,
    verify_axioms,
    verify_grading,
    verify_integrality,
    verify_reduction,
)

SPEC = mu_spec()
Z = MPoly.zero(SPEC)
V = {n: MPoly.variable(SPEC, n) for n in SPEC.names}
TT = ("t1", "t2")


def mu_of(**kw):
    return MuParams.from_values([kw.get(n, Z) for n in ("mu1", "mu2", "mu3", "mu4", "mu6")], SPEC)


def sym(*names):
    return MuParams.from_values(
        [V[n] if n in names else Z for n in ("mu1", "mu2", "mu3", "mu4", "mu6")], SPEC
    )


# -- chord data --------------------------------------------------------------


def test_chord_lowest_terms():
    ch = build_chord(MuParams.symbolic(), 5)
    one = MPoly.const(SPEC, 1)
    assert ch.m.coefficient((2, 0)) == one
    assert ch.m.coefficient((1, 1)) == one
    assert ch.m.coefficient((0, 2)) == one
    # b = -t1 t2 (t1 + t2) + higher
    assert ch.b.coefficient((2, 1)) == -one
    assert ch.b.coefficient((1, 2)) == -one
    assert ch.b.valuation() == 3
    assert (ch.b_over_p.shift_up((1, 1))).truncate(ch.b.order).agrees_with(ch.b)


def test_chord_zero_curve_tangent_slope():
    ch = build_chord(mu_of(), 6)
    p = Series.monomial(SPEC, TT, (1, 1), 6)
    assert ch.n.agrees_with((ch.m + p).truncate(6))


# -- the general law -----------------------------------------------------------


def test_zero_parameters_give_linear_law():
    law = build_general(mu_of(), 8)
    expected = Series(SPEC, TT, 8, {(1, 0): MPoly.const(SPEC, 1), (0, 1): MPoly.const(SPEC, 1)})
    assert law.F == expected


def test_alpha11():
    law = build_general(MuParams.symbolic(), 4)
    assert law.F.coefficient((1, 1)) == -V["mu1"]


def test_three_forms_agree_symbolically():
    assert forms_agree(MuParams.symbolic(), 7)


def test_axioms_and_certificates():
    law = build_general(MuParams.symbolic(), 7)
    rep = verify_axioms(law)
    assert all(r["ok"] for r in rep.values())
    assert law.certified["assoc"] == 7
    assert verify_integrality(law, SPEC.names) is None
    assert verify_grading(law) is None


def test_corrupted_coefficient_breaks_associativity():
    law = build_general(MuParams.symbolic(), 6)
    bad = dict(law.F.coeffs)
    bad[(2, 1)] = bad.get((2, 1), MPoly.zero(SPEC)) + V["mu2"]
    mutant = FormalGroupLaw(Series(SPEC, TT, 6, bad), "mutant")
    rep = verify_axioms(mutant, checks=("assoc",))
    assert not rep["assoc"]["ok"]
    assert rep["assoc"]["witness"] is not None


def test_integrality_witness_on_exponential_coefficients():
    # the exponential itself is NOT integral over Z[mu]: f2 = -mu2/3 + ...
    pair = general_exp_log(MuParams.symbolic(), 6)
    fake = FormalGroupLaw(
        Series(SPEC, TT, 4, {(1, 0): MPoly.const(SPEC, 1), (0, 1): MPoly.const(SPEC, 1),
                             (2, 1): pair.f.coefficient((3,))}),
        "fake",
    )
    assert verify_integrality(fake, SPEC.names) is not None


# -- classical laws ---------------------------------------------------------------


def test_todd2_law():
    spec = VarSpec(("a", "b"), (-2, -4))
    a, b = MPoly.variable(spec, "a"), MPoly.variable(spec, "b")
    law = build_classical("todd2", 6, {"a": a, "b": b})
    assert law.F.coefficient((1, 1)) == -a
    rep = verify_axioms(law)
    assert all(r["ok"] for r in rep.values())


def test_tanh_law_coefficients():
    spec = VarSpec(("mu2",), (-4,))
    m2 = MPoly.variable(spec, "mu2")
    law = build_classical("tanh", 6, {"mu2": m2})
    assert law.F.coefficient((1, 1)).is_zero()
    assert law.F.coefficient((2, 1)) == -m2


def test_sine_equals_general_law():
    spec = VarSpec(("delta", "eps"), (-4, -8))
    d, e = MPoly.variable(spec, "delta"), MPoly.variable(spec, "eps")
    z = MPoly.zero(spec)
    sine = build_classical("sine", 10, {"delta": d, "eps": e})
    mu = MuParams.from_values([z, d, z, (d * d - e) * Q(1, 4), z], spec)
    assert sine.F.agrees_with(build_general(mu, 10).F)


def test_sine_law_integral_over_mu2_mu4():
    # delta = mu2, eps = mu2^2 - 4 mu4: the law lives over Z[mu2, mu4]
    spec = VarSpec(("mu2", "mu4"), (-4, -8))
    m2, m4 = MPoly.variable(spec, "mu2"), MPoly.variable(spec, "mu4")
    sine = build_classical("sine", 10, {"delta": m2, "eps": m2 * m2 - 4 * m4})
    assert verify_integrality(sine, ("mu2", "mu4")) is None


def test_f3_and_f1_displays_match_general():
    f3 = build_classical("f3", 8)
    mu3 = MPoly.variable(f3.spec, "mu3")
    z = MPoly.zero(f3.spec)
    assert f3.F.agrees_with(build_general(MuParams.from_values([z, z, mu3, z, z], f3.spec), 8).F)
    f1 = build_classical("f1", 8)
    z1 = MPoly.zero(f1.spec)
    m4, m6 = MPoly.variable(f1.spec, "mu4"), MPoly.variable(f1.spec, "mu6")
    assert f1.F.agrees_with(build_general(MuParams.from_values([z1, z1, z1, m4, m6], f1.spec), 8).F)


# -- logarithm / exponential --------------------------------------------------------


def test_linear_log_exp():
    pair = log_exp(build_classical("linear", 6))
    t = Series.variable(pair.f.spec, pair.f.svars, pair.f.svars[0], 6)
    assert pair.f.agrees_with(t) and pair.g.agrees_with(t)


def test_multiplicative_log_exp():
    import math

    spec = VarSpec(("mu",), (-2,))
    muv = MPoly.variable(spec, "mu")
    pair = log_exp(build_classical("multiplicative", 8, {"mu": muv}))
    for k in range(1, 9):
        assert pair.g.coefficient((k,)) == muv ** (k - 1) * Q(1, k)
        assert pair.f.coefficient((k,)) == muv ** (k - 1) * Q((-1) ** (k - 1), math.factorial(k))


def test_rho_two_routes_agree():
    mu = MuParams.symbolic()
    law = build_general(mu, 8)
    pair = log_exp(law, expected_rho=rho_closed_form(mu, 7))
    assert pair.f.agrees_with(general_exp_log(mu, 8).f)


def test_log_exp_identity_both_ways():
    mu = MuParams.symbolic()
    pair = general_exp_log(mu, 8)
    ident = Series.variable(SPEC, pair.f.svars, pair.f.svars[0], 8)
    assert pair.f.compose(pair.g).agrees_with(ident)
    assert pair.g.compose(pair.f).agrees_with(ident)


def test_exponential_oddness_and_2_locality():
    mu = sym("mu2", "mu4", "mu6")
    pair = general_exp_log(mu, 12)
    assert all(k % 2 == 1 for (k,) in pair.f.coeffs)
    for c in pair.f.coeffs.values():
        for q in c.terms.values():
            assert q.denominator % 2 == 1  # denominators odd: Z_(2)-local


# -- exponential ODEs ----------------------------------------------------------------


def test_ode_riccati_display():
    mu = sym("mu1", "mu2")
    pair = general_exp_log(mu, 10)
    f = pair.f.truncate(9)
    fp = pair.f.derivative()
    residual = fp + f.scale(V["mu1"]) + (f * f).truncate(9).scale(V["mu2"]) - 1
    assert residual.is_zero()
    rep = ode_residual_report(mu, pair, 10)
    assert rep["riccati"][0]


def test_ode_f3_display():
    mu = sym("mu3")
    pair = general_exp_log(mu, 10)
    rep = ode_residual_report(mu, pair, 10)
    assert rep["f3"][0] and rep["geneq"][0]


def test_ode_mu6_cube_display():
    # 27 mu6 f^6 = (1 - f')(2 + f')^2
    mu = sym("mu6")
    pair = general_exp_log(mu, 12)
    W = 11
    f = pair.f.truncate(W)
    fp = pair.f.derivative()
    one = Series.const(SPEC, f.svars, W, 1)
    f6 = ((f * f).truncate(W) ** 3).truncate(W)
    two_plus = one.scale(MPoly.const(SPEC, 2)) + fp
    rhs = ((one - fp) * (two_plus * two_plus).truncate(W)).truncate(W)
    assert (f6.scale(27 * V["mu6"]) - rhs).is_zero()
    rep = ode_residual_report(mu, pair, 12)
    assert rep["eq46"][0]


def test_ode_families_present():
    mu = MuParams.symbolic()
    rep = ode_residual_report(mu, general_exp_log(mu, 8), 8)
    assert set(rep) == {"geneq"}
    rep = ode_residual_report(sym("mu1", "mu2"), general_exp_log(sym("mu1", "mu2"), 8), 8)
    assert set(rep) == {"riccati"}
    mu46 = sym("mu4", "mu6")
    assert set(ode_residual_report(mu46, general_exp_log(mu46, 8), 8)) == {"geneq", "eq46", "fcub"}


# -- power systems -----------------------------------------------------------------


def test_power_system_examples():
    spec = VarSpec(("mu",), (-2,))
    muv = MPoly.variable(spec, "mu")
    law = build_classical("multiplicative", 8, {"mu": muv})
    assert power_system(law, 1, 8) == Series.variable(spec, ("t",), "t", 8)
    t2 = power_system(law, 2, 8)
    assert t2.agrees_with(Series(spec, ("t",), 8, {(1,): MPoly.const(spec, 2), (2,): -muv}))


def test_power_system_homomorphism():
    law = build_general(MuParams.symbolic(), 6)
    t = Series.variable(SPEC, ("t",), "t", 6)
    F = law.F.truncate(6)
    cache = {k: power_system(law, k, 6) for k in range(-3, 5)}
    for a in (-2, -1, 1, 2):
        for b in (-1, 1, 2):
            assert F.eval_at([cache[a], cache[b]]).agrees_with(cache[a + b])


def test_power_system_matches_logarithm_route():
    mu = MuParams.symbolic()
    law = build_general(mu, 6)
    pair = general_exp_log(mu, 6)
    for k in (2, 3, -1):
        via_log = pair.f.compose(pair.g.scale(MPoly.const(SPEC, k)))
        assert power_system(law, k, 6).agrees_with(via_log)


# -- 2-height ------------------------------------------------------------------------


def test_two_height_classifications():
    h, w = two_height(MuParams.symbolic(), 12)
    assert h == 1 and w.coefficient((2,)) == V["mu1"]
    h, w = two_height(sym("mu2", "mu3", "mu4", "mu6"), 12)
    assert h == 2 and w.coefficient((4,)) == V["mu3"]
    h, w = two_height(sym("mu2", "mu4", "mu6"), 16)
    assert h is None and w.is_zero()


def test_two_height_diagonal_matches_bivariate():
    from ellfgl.ring import QuotientSpec, quotient_map

    mod2 = QuotientSpec.mod_prime(2)
    _, w = two_height(MuParams.symbolic(), 10)
    law = build_general(MuParams.symbolic(), 10)
    t = Series.variable(SPEC, ("t",), "t", 10)
    diag = law.F.truncate(10).eval_at([t, t]).map_coeffs(lambda c: quotient_map(c, mod2))
    assert w.agrees_with(diag)


# -- automorphisms --------------------------------------------------------------------


def test_automorphism_orders():
    for n in (2, 3, 4, 6):
        assert fgl.automorphism_check(n, 12)


def test_automorphism_wrong_specialization_rejected():
    with pytest.raises(ValueError):
        fgl.automorphism_check(2, 8, MuParams.symbolic())


def test_automorphism_refutation_n5_n7():
    assert sorted(fgl.automorphism_refutation(5, 12)) == sorted(SPEC.names)
    assert sorted(fgl.automorphism_refutation(7, 12)) == sorted(SPEC.names)


# -- decomposables reduction ------------------------------------------------------------


def test_e1_reduction_values():
    law = build_general(MuParams.symbolic(), 8)
    red = e1_reduction(law, general_exp_log(MuParams.symbolic(), 8))
    assert red.ok
    assert red.b[1] == V["mu1"] * Q(-1, 2)
    assert red.b[2] == V["mu2"] * Q(-1, 3)
    assert red.b[3] == V["mu3"] * Q(-1, 2)
    assert red.b[4] == V["mu4"] * Q(-2, 5)
    assert red.b[6] == V["mu6"] * Q(-3, 7)
    assert 5 not in red.b
    # shape: symmetric binomial pattern
    assert red.reduced_F.coefficient((2, 1)) == red.reduced_F.coefficient((1, 2))


def test_e1_linear_law_trivial():
    law = build_classical("linear", 6)
    red = e1_reduction(law)
    assert red.ok and not red.b


# -- multiplicative generators ------------------------------------------------------------


def test_lemniscatic_example():
    rep = lemniscatic_example_report(17)
    assert all(v for k,v in rep.items() if k != "alpha")
    assert rep["alpha"][1] == -2 * V["mu4"]


def test_tp_data_series():
    law = build_general(sym("mu4"), 9)
    data = tp_data(law, 2, 9)
    assert data.c.coefficient((0,)) == MPoly.const(SPEC, 1)
    assert data.c_hat.coefficient((0,)).is_zero()
    assert data.c_hat.coefficient((1,)) == MPoly.const(SPEC, 2)
    # rho is supported on multiples of 4 for the lemniscatic curve
    assert all(k % 4 == 0 for (k,) in data.c.coeffs)


# -- reduction homomorphism --------------------------------------------------------------


def test_reduction_homomorphism():
    assert verify_reduction(MuParams.symbolic(), 7)


# -- specialized certification ------------------------------------------------------------


def test_random_specializations():
    random.seed(11)
    empty = VarSpec((), ())
    for _ in range(3):
        mu = MuParams.from_values(
            [MPoly.const(empty, random.randint(-4, 4)) for _ in range(5)], empty
        )
        law = build_general(mu, 9)
        rep = verify_axioms(law)
        assert all(r["ok"] for r in rep.values())
        assert forms_agree(mu, 9)
        assert verify_integrality(law, ()) is None


def test_ode_spec_cases():
    from ellfgl.fgl import OdeSpec

    assert OdeSpec.from_mu(MuParams.symbolic()).case == "general"
    assert OdeSpec.from_mu(sym("mu1", "mu2")).case == "riccati"
    spec46 = OdeSpec.from_mu(sym("mu1", "mu2", "mu3", "mu4"))
    assert spec46.case == "mu6-zero"
    assert spec46.N_poly == (V["mu3"], V["mu4"])
