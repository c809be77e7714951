"""Named verification anchors and the driver that runs them all.

Each anchor re-derives one documented fact from first principles at a
moderate depth (the full-depth versions live in the acceptance test suite).
The driver prints one PASS/FAIL line per anchor and reports failures.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

from .rat import Q
from .ring import MPoly, VarSpec, nu
from .series import Series
from . import curve, fgl, genus, pde, weierstrass
from .curve import MuParams, mu_spec


def _mu(vals) -> MuParams:
    spec = mu_spec()
    entries = [
        MPoly.variable(spec, n) if v is None else MPoly.const(spec, v)
        for n, v in zip(("mu1", "mu2", "mu3", "mu4", "mu6"), vals)
    ]
    return MuParams.from_values(entries, spec)


def _sym(*names) -> MuParams:
    spec = mu_spec()
    entries = [
        MPoly.variable(spec, n) if n in names else MPoly.zero(spec)
        for n in ("mu1", "mu2", "mu3", "mu4", "mu6")
    ]
    return MuParams.from_values(entries, spec)


def anchor_tate_expansion() -> bool:
    spec = mu_spec()
    s = curve.solve_tate_s(MuParams.symbolic(), 6)
    m1, m2, m3 = (MPoly.variable(spec, n) for n in ("mu1", "mu2", "mu3"))
    return (
        s.coefficient((3,)) == MPoly.const(spec, 1)
        and s.coefficient((4,)) == m1
        and s.coefficient((5,)) == m1 * m1 + m2
        and s.coefficient((6,)) == m3 + 2 * m2 * m1 + m1**3
    )


def anchor_tate_catalan() -> bool:
    s = curve.solve_tate_s(_sym("mu4"), 23)
    spec = s.spec
    m4 = MPoly.variable(spec, "mu4")
    for n in range(6):
        cat = math.comb(2 * n, n) // (n + 1)
        if s.coefficient((4 * n + 3,)) != m4**n * cat:
            return False
    return all(e[0] % 4 == 3 for e in s.coeffs)


def anchor_catalan_binom() -> bool:
    return curve.catalan_binom_identity(13)


def anchor_discriminants() -> bool:
    spec = mu_spec()
    m3, m4, m6 = (MPoly.variable(spec, n) for n in ("mu3", "mu4", "mu6"))
    return (
        curve.discriminant(_sym("mu4")) == -64 * m4**3
        and curve.discriminant(_sym("mu6")) == -432 * m6 * m6
        and curve.discriminant(_sym("mu3", "mu6")) == -27 * (4 * m6 + m3 * m3) ** 2
        and curve.discriminant(_sym("mu3")) == -27 * m3**4
    )


def anchor_weierstrass_reduction() -> bool:
    spec = mu_spec()
    m1, m2, m4, m6 = (MPoly.variable(spec, n) for n in ("mu1", "mu2", "mu4", "mu6"))
    w46 = curve.reduce_to_weierstrass(_sym("mu4", "mu6"))
    w12 = curve.reduce_to_weierstrass(_sym("mu1", "mu2"))
    b2 = m1 * m1 + 4 * m2
    sym = curve.reduce_to_weierstrass(MuParams.symbolic())
    return (
        w46.g2 == -4 * m4
        and w46.g3 == -4 * m6
        and w12.g2 == b2 * b2 * Q(1, 12)
        and w12.g3 == -(b2**3) * Q(1, 216)
        and sym.delta == curve.discriminant(MuParams.symbolic())
    )


def anchor_wp_value_identity() -> bool:
    # 4 x^3 - g2 x - g3 = 4 mu6 + mu3^2 at x = (4 mu2 + mu1^2)/12
    spec = mu_spec()
    m1, m2, m3, m6 = (MPoly.variable(spec, n) for n in ("mu1", "mu2", "mu3", "mu6"))
    w = curve.reduce_to_weierstrass(MuParams.symbolic())
    x = (4 * m2 + m1 * m1) * Q(1, 12)
    return 4 * x**3 - w.g2 * x - w.g3 == 4 * m6 + m3 * m3


def anchor_e_form() -> bool:
    return curve.e_form_discriminant_check()


def anchor_tate_transform() -> bool:
    spec = mu_spec()
    psi = curve.tate_transform(MuParams.symbolic(), 4)
    mu0 = _mu([0, 0, 0, 0, 0])
    psi0 = curve.tate_transform(mu0, 6)
    t = Series.variable(spec, ("t",), "t", 6)
    return psi.coefficient((2,)) == MPoly.variable(spec, "mu1") * Q(1, 2) and psi0.agrees_with(t)


def anchor_fgl_forms() -> bool:
    return fgl.forms_agree(MuParams.symbolic(), 7)


def anchor_fgl_axioms() -> bool:
    law = fgl.build_general(MuParams.symbolic(), 7)
    rep = fgl.verify_axioms(law)
    return all(r["ok"] for r in rep.values()) and fgl.verify_grading(law) is None and \
        fgl.verify_integrality(law, mu_spec().names) is None


def anchor_e1_display() -> bool:
    spec = mu_spec()
    law = fgl.build_general(MuParams.symbolic(), 8)
    red = fgl.e1_reduction(law, fgl.general_exp_log(MuParams.symbolic(), 8))
    if not red.ok:
        return False
    m1, m2, m3, m4, m6 = (MPoly.variable(spec, n) for n in ("mu1", "mu2", "mu3", "mu4", "mu6"))
    T = Series(spec, ("t1", "t2"), 8, {(1, 0): MPoly.const(spec, 1), (0, 1): MPoly.const(spec, 1)})
    t1 = Series.variable(spec, ("t1", "t2"), "t1", 8)
    t2 = Series.variable(spec, ("t1", "t2"), "t2", 8)
    P = (t1 * t2).truncate(8)
    sq = ((t1 * t1) + (t1 * t2) + (t2 * t2)).truncate(8)
    bracket = (
        Series.const(spec, ("t1", "t2"), 8, m1)
        + T.scale(m2)
        + ((t1 * t1).truncate(8).scale(2) + (t1 * t2).truncate(8).scale(3) + (t2 * t2).truncate(8).scale(2)).scale(m3)
        + (T * sq).truncate(8).scale(2 * m4)
        + (T * (sq * sq).truncate(8)).truncate(8).scale(3 * m6)
    )
    display = T - (P * bracket).truncate(8)
    return red.reduced_F.agrees_with(display)


def anchor_e1_exponential() -> bool:
    spec = mu_spec()
    pair = fgl.general_exp_log(MuParams.symbolic(), 8)
    red = fgl.e1_reduction(fgl.build_general(MuParams.symbolic(), 8), pair)
    m = {n: MPoly.variable(spec, n) for n in spec.names}
    expected = Series(
        spec, pair.f.svars, 7,
        {
            (1,): MPoly.const(spec, 1),
            (2,): m["mu1"] * Q(-1, 2),
            (3,): m["mu2"] * Q(-1, 3),
            (4,): m["mu3"] * Q(-1, 2),
            (5,): m["mu4"] * Q(-2, 5),
            (7,): m["mu6"] * Q(-3, 7),
        },
    )
    return red.reduced_f.agrees_with(expected, 7)


def anchor_rho_two_routes() -> bool:
    mu = MuParams.symbolic()
    law = fgl.build_general(mu, 8)
    pair = fgl.log_exp(law, expected_rho=fgl.rho_closed_form(mu, 7))
    return pair.f.agrees_with(fgl.general_exp_log(mu, 8).f)


def anchor_ode_families() -> bool:
    N = 10
    cases = [
        MuParams.symbolic(),
        _sym("mu1", "mu2"),
        _sym("mu1", "mu2", "mu3", "mu4"),
        _sym("mu4", "mu6"),
        _sym("mu2", "mu4", "mu6"),
        _sym("mu3", "mu6"),
        _sym("mu3"),
    ]
    cs = VarSpec(("mu1", "mu3"), (-2, -6))
    c1, c3 = MPoly.variable(cs, "mu1"), MPoly.variable(cs, "mu3")
    cases.append(MuParams.from_values(
        [c1, c1 * c1 * Q(-1, 4), c3, c1 * c3 * Q(-1, 2), c3 * c3 * Q(-1, 3)], cs))
    for mu in cases:
        rep = fgl.ode_residual_report(mu, fgl.general_exp_log(mu, N), N)
        if not all(ok for ok, _ in rep.values()):
            return False
    return True


def anchor_weier_exponential() -> bool:
    mu = MuParams.symbolic()
    return weierstrass.weier_exponential(mu, 10).agrees_with(
        fgl.general_exp_log(mu, 10).f, 10
    )


def anchor_fg_lemma_f1() -> bool:
    # -2 wp / wp' solves the (mu4, mu6) law: weier route == reversion route there
    mu = _sym("mu4", "mu6")
    f1 = weierstrass.weier_exponential(mu, 12)
    f2 = fgl.log_exp(fgl.build_general(mu, 12)).f
    return f1.agrees_with(f2, 12)


def anchor_multiplicative_exp() -> bool:
    spec = VarSpec(("mu",), (-2,))
    muv = MPoly.variable(spec, "mu")
    pair = fgl.log_exp(fgl.build_classical("multiplicative", 10, {"mu": muv}))
    g_expected = Series(spec, pair.g.svars, 10, {(k,): muv ** (k - 1) * Q(1, k) for k in range(1, 11)})
    f_expected = Series(
        spec, pair.f.svars, 10,
        {(k,): muv ** (k - 1) * Q((-1) ** (k - 1), math.factorial(k)) for k in range(1, 11)},
    )
    return pair.g.agrees_with(g_expected) and pair.f.agrees_with(f_expected)


def anchor_sine_law() -> bool:
    spec = VarSpec(("delta", "eps"), (-4, -8))
    d, e = MPoly.variable(spec, "delta"), MPoly.variable(spec, "eps")
    z = MPoly.zero(spec)
    sine = fgl.build_classical("sine", 10, {"delta": d, "eps": e})
    mu = MuParams.from_values([z, d, z, (d * d - e) * Q(1, 4), z], spec)
    gen = fgl.build_general(mu, 10)
    return sine.F.agrees_with(gen.F)


def anchor_two_heights() -> bool:
    spec = mu_spec()
    m = {n: MPoly.variable(spec, n) for n in spec.names}
    z = MPoly.zero(spec)
    h1, w1 = fgl.two_height(MuParams.symbolic(), 12)
    ok1 = h1 == 1 and w1.coefficient((2,)) == m["mu1"]
    h2, w2 = fgl.two_height(MuParams.from_values([z, m["mu2"], m["mu3"], m["mu4"], m["mu6"]], spec), 12)
    ok2 = h2 == 2 and w2.coefficient((4,)) == m["mu3"]
    hi, wi = fgl.two_height(MuParams.from_values([z, m["mu2"], z, m["mu4"], m["mu6"]], spec), 16)
    return ok1 and ok2 and hi is None and wi.is_zero()


def anchor_automorphisms() -> bool:
    if not all(fgl.automorphism_check(n, 12) for n in (2, 3, 4, 6)):
        return False
    return sorted(fgl.automorphism_refutation(5, 12)) == sorted(mu_spec().names)


def anchor_power_system() -> bool:
    spec = VarSpec(("mu",), (-2,))
    muv = MPoly.variable(spec, "mu")
    law = fgl.build_classical("multiplicative", 8, {"mu": muv})
    t2 = fgl.power_system(law, 2, 8)
    expected = Series(spec, t2.svars, 8, {(1,): MPoly.const(spec, 2), (2,): -muv})
    gen = fgl.build_general(MuParams.symbolic(), 6)
    lhs = gen.F.truncate(6).eval_at([fgl.power_system(gen, 2, 6), fgl.negation(gen, 6)])
    t = Series.variable(mu_spec(), ("t",), "t", 6)
    return t2.agrees_with(expected) and lhs.agrees_with(t)


def anchor_lemniscatic_generators() -> bool:
    rep = fgl.lemniscatic_example_report(17)
    return all(v for k, v in rep.items() if k != "alpha")


def anchor_reduction_homomorphism() -> bool:
    return fgl.verify_reduction(MuParams.symbolic(), 7)


def anchor_sigma_table_values() -> bool:
    t = weierstrass.cached_table(16)
    expected = {
        (0, 0): 1, (1, 0): -1, (2, 0): -(3**2), (3, 0): 3 * 23, (4, 0): 3 * 107,
        (0, 1): -3, (1, 1): -2 * 3**2, (2, 1): 3**3 * 19, (3, 1): 2**2 * 3**3 * 311,
        (4, 1): 3**3 * 5 * 20807,
        (0, 2): -2 * 3**3, (1, 2): 2**3 * 3**3 * 23, (2, 2): 2**2 * 3**5 * 5 * 53,
        (3, 2): 2**3 * 3**4 * 5 * 37 * 167, (4, 2): -2 * 3**6 * 5 * 17 * 3037,
    }
    return all(t.a(i, j) == v for (i, j), v in expected.items())


def anchor_sigma_segment() -> bool:
    spec = weierstrass.g_spec()
    g2, g3 = MPoly.variable(spec, "g2"), MPoly.variable(spec, "g3")
    sig = weierstrass.sigma_series(weierstrass.cached_table(8), 12)
    return (
        sig.sigma.coefficient((1,)) == MPoly.const(spec, 1)
        and sig.sigma.coefficient((5,)) == g2 * Q(-1, 2 * 120)
        and sig.sigma.coefficient((7,)) == g3 * Q(-6, math.factorial(7))
        and sig.sigma.coefficient((9,)) == g2 * g2 * Q(-1, 4 * math.factorial(8))
        and sig.sigma.coefficient((11,)) == g2 * g3 * Q(-18, math.factorial(11))
        and all(sig.sigma.coefficient((k,)).is_zero() for k in (2, 3, 4, 6, 8, 10, 12))
    )


def anchor_sigma_annihilators() -> bool:
    sig = weierstrass.sigma_series(weierstrass.cached_table(10), 16)
    rep = weierstrass.annihilator_checks(sig.sigma, 14)
    return all(ok for ok, _ in rep.values()) and weierstrass.wp_ode_residual(sig).is_zero()


def anchor_sigma_bruteforce() -> bool:
    sig = weierstrass.sigma_series(weierstrass.cached_table(10), 17)
    return sig.sigma.agrees_with(weierstrass.sigma_series_bruteforce(17))


def anchor_sigma_hurwitz() -> bool:
    sig = weierstrass.sigma_series(weierstrass.cached_table(12), 18)
    rep = weierstrass.hurwitz_certificates(sig)
    return all(ok for ok, _ in rep.values())


def anchor_conjecture() -> bool:
    return weierstrass.conjecture_check(12).ok


def anchor_bij_recursion() -> bool:
    return weierstrass.bij_recursion_check(12) is None


def anchor_degenerate_coth() -> bool:
    return weierstrass.degenerate_coth_check(12)


def anchor_nu_values() -> bool:
    return (nu(2), nu(3), nu(4), nu(5), nu(7), nu(6)) == (2, 3, 2, 5, 7, 1)


def anchor_psi_expansion() -> bool:
    pe = genus.psi_expansion(6)
    spec = genus.p_spec()
    a2, a3, a4 = (MPoly.variable(spec, n) for n in ("a2", "a3", "a4"))
    return (
        pe.p[2] == a2 and pe.p[3] == a3 and pe.p[4] == 6 * a2 * a2 - a4
        and pe.q[0] == MPoly.const(genus._R_SPEC, 1)
    )


def anchor_krichever_integrality() -> bool:
    genus.krichever_exponential(10)
    genus.general_krichever_exponential(10)
    return True


def anchor_krichever_link() -> bool:
    return genus.krichever_fgl_link(8)


def anchor_th30() -> bool:
    return genus.th30_cross_check(6)


def anchor_addition_ode() -> bool:
    rep = genus.addition_ode_check(8)
    return rep["ode"] and rep["psi_ode"] and rep["a4_relation"] and rep["addition_law"]


def anchor_sine_remark() -> bool:
    return genus.sine_remark_check(9)


def anchor_todd2() -> bool:
    rep = genus.todd2_exponential_check(4)
    return all(rep.values())


def anchor_tanh_bernoulli() -> bool:
    return genus.tanh_bernoulli_check(5) and genus.multiplicative_bf_check(5)


def anchor_cpn_values() -> bool:
    vals = genus.cpn_values(genus.GenusSpec("general-elliptic"), 8)
    t2 = VarSpec(("mu2",), (-4,))
    tanh_vals = genus.cpn_values(
        genus.GenusSpec("tanh", {"mu2": MPoly.const(t2, 1)}), 8
    ).values
    ok_tanh = all(v == ((n + 1) % 2) for n, v in enumerate(tanh_vals))
    return ok_tanh and genus.cpn_integrality_witness(vals, mu_spec().names) is None


def anchor_hopf_cubic() -> bool:
    p = pde.cubic_path()
    rep = pde.hopf_check_cubic(p, 9)
    return all(ok for ok, _ in rep.values()) and pde.invariant_weierstrass_check(p)


def anchor_hopf_linear() -> bool:
    rep = pde.hopf_check_linear(pde.linear_path(), 7)
    return all(ok for ok, _ in rep.values())


def anchor_stasheff() -> bool:
    ad = pde.associahedron_gf(9)
    return (
        all(ad.checks.values())
        and ad.faces[1] == [2, 1]
        and ad.faces[2] == [5, 5, 1]
        and ad.faces[3] == [14, 21, 9, 1]
    )


ANCHORS: list[tuple[str, Callable[[], bool]]] = [
    ("curve.tate-expansion", anchor_tate_expansion),
    ("curve.tate-catalan", anchor_tate_catalan),
    ("curve.catalan-binom", anchor_catalan_binom),
    ("curve.discriminants", anchor_discriminants),
    ("curve.weierstrass-reduction", anchor_weierstrass_reduction),
    ("curve.wp-value-identity", anchor_wp_value_identity),
    ("curve.e-form", anchor_e_form),
    ("curve.tate-transform", anchor_tate_transform),
    ("fgl.three-forms", anchor_fgl_forms),
    ("fgl.axioms", anchor_fgl_axioms),
    ("fgl.e1-display", anchor_e1_display),
    ("fgl.e1-exponential", anchor_e1_exponential),
    ("fgl.rho-two-routes", anchor_rho_two_routes),
    ("fgl.ode-families", anchor_ode_families),
    ("fgl.multiplicative-exp", anchor_multiplicative_exp),
    ("fgl.sine-law", anchor_sine_law),
    ("fgl.two-heights", anchor_two_heights),
    ("fgl.automorphisms", anchor_automorphisms),
    ("fgl.power-system", anchor_power_system),
    ("fgl.lemniscatic-generators", anchor_lemniscatic_generators),
    ("fgl.reduction-homomorphism", anchor_reduction_homomorphism),
    ("fgl.nu-values", anchor_nu_values),
    ("sigma.table-values", anchor_sigma_table_values),
    ("sigma.series-segment", anchor_sigma_segment),
    ("sigma.annihilators", anchor_sigma_annihilators),
    ("sigma.bruteforce-oracle", anchor_sigma_bruteforce),
    ("sigma.hurwitz", anchor_sigma_hurwitz),
    ("sigma.conjecture", anchor_conjecture),
    ("sigma.bij-recursion", anchor_bij_recursion),
    ("sigma.degenerate-coth", anchor_degenerate_coth),
    ("weier.exponential", anchor_weier_exponential),
    ("weier.f1-lemma", anchor_fg_lemma_f1),
    ("genus.psi-expansion", anchor_psi_expansion),
    ("genus.krichever-integrality", anchor_krichever_integrality),
    ("genus.krichever-link", anchor_krichever_link),
    ("genus.th30", anchor_th30),
    ("genus.addition-ode", anchor_addition_ode),
    ("genus.sine-remark", anchor_sine_remark),
    ("genus.todd2-eulerian", anchor_todd2),
    ("genus.tanh-bernoulli", anchor_tanh_bernoulli),
    ("genus.cpn-values", anchor_cpn_values),
    ("pde.hopf-cubic", anchor_hopf_cubic),
    ("pde.hopf-linear", anchor_hopf_linear),
    ("pde.stasheff", anchor_stasheff),
]


def reproduce(only: Optional[str] = None) -> list[tuple[str, bool, str]]:
    """Run every anchor (optionally filtered by name prefix/substring)."""
    results = []
    for name, fn in ANCHORS:
        if only and only not in name:
            continue
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # the anchor itself decides what is fatal
            ok = False
            detail = f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
