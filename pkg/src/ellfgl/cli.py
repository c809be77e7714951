"""Command-line front end.

Exit codes: 0 all checks passed, 1 a verification failed (witnesses on
stdout as JSON), 2 usage error.  All numeric inputs are exact rationals
('3' or '-3/4'); floating point is rejected.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .rat import parse_q
from .ring import MPoly, VarSpec
from . import curve, fgl, genus, pde, weierstrass
from .curve import MuParams, mu_spec
from .reproduce import reproduce

MU_ARGS = ("mu1", "mu2", "mu3", "mu4", "mu6")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _mu_from_args(args) -> MuParams:
    spec = mu_spec()
    entries = []
    for name in MU_ARGS:
        raw = getattr(args, name, None)
        if raw is None or raw == "sym":
            entries.append(MPoly.variable(spec, name))
        else:
            entries.append(MPoly.const(spec, parse_q(raw)))
    return MuParams.from_values(entries, spec)


def _add_mu_options(p: argparse.ArgumentParser) -> None:
    for name in MU_ARGS:
        p.add_argument(f"--{name}", default=None, metavar="Q",
                       help=f"exact rational value for {name} (default: symbolic)")


def _add_order(p: argparse.ArgumentParser, default: int) -> None:
    p.add_argument("--order", type=int, default=default, metavar="N")


def cmd_curve(args) -> int:
    mu = _mu_from_args(args)
    if args.action == "s":
        _emit(curve.solve_tate_s(mu, args.order).to_json())
        return 0
    if args.action == "disc":
        _emit(curve.discriminant(mu).to_json())
        return 0
    if args.action == "reduce":
        w = curve.reduce_to_weierstrass(mu)
        _emit({"g2": w.g2.to_json(), "g3": w.g3.to_json(), "delta": w.delta.to_json()})
        return 0
    if args.action == "transform":
        _emit(curve.tate_transform(mu, args.order).to_json())
        return 0
    raise AssertionError(args.action)


def cmd_fgl(args) -> int:
    if args.action == "build":
        mu = _mu_from_args(args)
        law = fgl.build_general(mu, args.order, args.form)
        _emit(law.F.to_json())
        return 0
    if args.action == "verify":
        mu = _mu_from_args(args)
        law = fgl.build_general(mu, args.order)
        checks = args.checks.split(",")
        axioms = [c for c in checks if c in ("unit", "comm", "assoc")]
        report = {}
        if axioms:
            for name, r in fgl.verify_axioms(law, checks=axioms).items():
                report[name] = {"ok": r["ok"], "witness": list(r["witness"]) if r["witness"] else None}
        if "integrality" in checks:
            w = fgl.verify_integrality(law, mu_spec().names)
            report["integrality"] = {"ok": w is None, "witness": None if w is None else [list(w[0]), w[1].to_text()]}
        if "grading" in checks:
            w = fgl.verify_grading(law)
            report["grading"] = {"ok": w is None, "witness": None if w is None else [list(w[0]), w[1].to_text()]}
        if "forms" in checks:
            report["forms"] = {"ok": fgl.forms_agree(mu, args.order), "witness": None}
        _emit(report)
        return 0 if all(r["ok"] for r in report.values()) else 1
    if args.action == "logexp":
        mu = _mu_from_args(args)
        pair = fgl.general_exp_log(mu, args.order)
        _emit({"f": pair.f.to_json(), "g": pair.g.to_json()})
        return 0
    if args.action == "ode-check":
        mu = _mu_from_args(args)
        pair = fgl.general_exp_log(mu, args.order)
        rep = fgl.ode_residual_report(mu, pair, args.order)
        out = {name: ok for name, (ok, _) in rep.items()}
        _emit(out)
        return 0 if all(out.values()) else 1
    if args.action == "power":
        mu = _mu_from_args(args)
        law = fgl.build_general(mu, args.order)
        _emit(fgl.power_system(law, args.k, args.order).to_json())
        return 0
    if args.action == "height":
        spec = mu_spec()
        entries = []
        for name in MU_ARGS:
            raw = getattr(args, name)
            if name in ("mu1", "mu3") and raw is None:
                raw = "sym"
            if raw is None or raw == "sym":
                entries.append(MPoly.variable(spec, name))
            else:
                entries.append(MPoly.const(spec, parse_q(raw)))
        h, witness = fgl.two_height(MuParams.from_values(entries, spec), args.order)
        _emit({"height": h if h is not None else "infinity",
               "F_tt_mod2": witness.to_json()})
        return 0
    if args.action == "aut":
        if args.n in (2, 3, 4, 6):
            ok = fgl.automorphism_check(args.n, args.order)
            _emit({"n": args.n, "ok": ok})
            return 0 if ok else 1
        forced = fgl.automorphism_refutation(args.n, args.order)
        ok = sorted(forced) == sorted(mu_spec().names)
        _emit({"n": args.n, "forced_zero": forced, "refuted": ok})
        return 0 if ok else 1
    raise AssertionError(args.action)


def cmd_sigma(args) -> int:
    if args.action == "table":
        table = weierstrass.sigma_table(args.max_weight)
        items = sorted(table.entries.items(), key=lambda t: (2 * t[0][0] + 3 * t[0][1], t[0]))
        if args.csv:
            print("i,j,a_ij")
            for (i, j), a in items:
                print(f"{i},{j},{a}")
        else:
            _emit({"max_weight": args.max_weight,
                   "entries": [{"i": i, "j": j, "a": str(a)} for (i, j), a in items]})
        return 0
    if args.action == "check":
        out = {}
        ok = True
        if args.conjecture:
            rep = weierstrass.conjecture_check(args.maxsum)
            out["conjecture"] = {"maxsum": rep.maxsum, "checked": rep.checked,
                                 "zero_entries": rep.zero_entries,
                                 "counterexamples": [list(c) for c in rep.counterexamples]}
            ok = ok and rep.ok
        if args.bij:
            w = weierstrass.bij_recursion_check(args.maxsum)
            out["bij_recursion"] = {"ok": w is None, "witness": list(w) if w else None}
            ok = ok and w is None
        _emit(out)
        return 0 if ok else 1
    if args.action == "series":
        sig = weierstrass.sigma_series(weierstrass.cached_table((args.order - 1) // 2), args.order)
        _emit({"sigma": sig.sigma.to_json(), "zeta_reg": sig.zeta_reg.to_json(),
               "wp_reg": sig.wp_reg.to_json()})
        return 0
    raise AssertionError(args.action)


def _genus_spec_from_tag(tag: str) -> genus.GenusSpec:
    if tag in ("linear", "general-elliptic", "krichever", "general-krichever"):
        return genus.GenusSpec(tag)
    if tag == "multiplicative":
        spec = VarSpec(("mu",), (-2,))
        return genus.GenusSpec(tag, {"mu": MPoly.variable(spec, "mu")})
    if tag == "tanh":
        spec = VarSpec(("mu2",), (-4,))
        return genus.GenusSpec(tag, {"mu2": MPoly.variable(spec, "mu2")})
    if tag == "todd2":
        spec = VarSpec(("a", "b"), (-2, -4))
        return genus.GenusSpec(tag, {"a": MPoly.variable(spec, "a"), "b": MPoly.variable(spec, "b")})
    if tag == "sine":
        spec = VarSpec(("delta", "eps"), (-4, -8))
        return genus.GenusSpec(tag, {"delta": MPoly.variable(spec, "delta"),
                                     "eps": MPoly.variable(spec, "eps")})
    raise ValueError(f"unknown genus tag {tag!r}")


def cmd_genus(args) -> int:
    if args.action == "cpn":
        vals = genus.cpn_values(_genus_spec_from_tag(args.spec), args.n)
        _emit({"tag": args.spec, "values": [v.to_json() for v in vals.values]})
        return 0
    if args.action == "krichever":
        checks = args.check.split(",")
        out = {}
        if "integrality" in checks:
            _, w = genus.krichever_exponential(args.order)
            out["integrality"] = w is None
        if "link" in checks:
            out["link"] = genus.krichever_fgl_link(min(args.order, 10))
        if "ode" in checks:
            rep = genus.addition_ode_check(min(args.order, 10))
            out["ode"] = rep["ode"] and rep["psi_ode"] and rep["addition_law"]
        _emit(out)
        return 0 if all(out.values()) else 1
    if args.action == "general-krichever":
        checks = args.check.split(",")
        out = {}
        if "integrality" in checks:
            _, w = genus.general_krichever_exponential(args.order)
            out["integrality"] = w is None
        if "th30" in checks:
            out["th30"] = genus.th30_cross_check(min(args.order, 8))
        _emit(out)
        return 0 if all(out.values()) else 1
    raise AssertionError(args.action)


def cmd_pde(args) -> int:
    if args.action == "hopf":
        if args.kind == "cubic":
            path = pde.cubic_path()
            rep = pde.hopf_check_cubic(path, args.order)
            out = {name: ok for name, (ok, _) in rep.items()}
            out["invariant_weierstrass"] = pde.invariant_weierstrass_check(path)
        else:
            rep = pde.hopf_check_linear(pde.linear_path(), args.order)
            out = {name: ok for name, (ok, _) in rep.items()}
        _emit(out)
        return 0 if all(out.values()) else 1
    if args.action == "stasheff":
        data = pde.associahedron_gf(args.n + 2)
        _emit({"checks": data.checks,
               "faces": {str(n): row for n, row in sorted(data.faces.items())}})
        return 0 if all(data.checks.values()) else 1
    raise AssertionError(args.action)


def cmd_reproduce(args) -> int:
    results = reproduce(args.only)
    if args.json:
        _emit([{"anchor": n, "ok": ok, "detail": d} for n, ok, d in results])
    else:
        for name, ok, detail in results:
            line = f"{'PASS' if ok else 'FAIL'} {name}"
            if detail:
                line += f"  ({detail})"
            print(line)
        bad = sum(1 for _, ok, _ in results if not ok)
        print(f"{len(results) - bad}/{len(results)} anchors passed")
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ellfgl",
                                 description="exact elliptic formal group law workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("curve", help="Tate branch, discriminant, Weierstrass reduction")
    c.add_argument("action", choices=("s", "disc", "reduce", "transform"))
    _add_order(c, 8)
    _add_mu_options(c)
    c.set_defaults(fn=cmd_curve)

    f = sub.add_parser("fgl", help="the general elliptic formal group law")
    f.add_argument("action", choices=("build", "verify", "logexp", "ode-check",
                                      "power", "height", "aut"))
    f.add_argument("--form", choices=("fg", "p-form", "m-form"), default="fg")
    f.add_argument("--checks", default="unit,comm,assoc,integrality,grading,forms")
    f.add_argument("--k", type=int, default=2)
    f.add_argument("--n", type=int, choices=(2, 3, 4, 5, 6, 7), default=2)
    _add_order(f, 8)
    _add_mu_options(f)
    f.set_defaults(fn=cmd_fgl)

    s = sub.add_parser("sigma", help="sigma function table, series and conjecture checks")
    s.add_argument("action", choices=("table", "check", "series"))
    s.add_argument("--max-weight", type=int, default=24)
    s.add_argument("--csv", action="store_true")
    s.add_argument("--conjecture", action="store_true")
    s.add_argument("--bij", action="store_true")
    s.add_argument("--maxsum", type=int, default=30)
    _add_order(s, 24)
    s.set_defaults(fn=cmd_sigma)

    g = sub.add_parser("genus", help="CP^n values and Krichever genera")
    g.add_argument("action", choices=("cpn", "krichever", "general-krichever"))
    g.add_argument("--spec", default="general-elliptic",
                   choices=("linear", "multiplicative", "tanh", "todd2", "sine",
                            "general-elliptic", "krichever", "general-krichever"))
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--check", default="integrality")
    _add_order(g, 12)
    g.set_defaults(fn=cmd_genus)

    p = sub.add_parser("pde", help="Hopf-equation lemmas and the Stasheff polytope")
    p.add_argument("action", choices=("hopf", "stasheff"))
    p.add_argument("--kind", choices=("cubic", "linear"), default="cubic")
    p.add_argument("--n", type=int, default=6)
    _add_order(p, 10)
    p.set_defaults(fn=cmd_pde)

    r = sub.add_parser("reproduce", help="run every verification anchor")
    r.add_argument("--only", default=None, help="substring filter on anchor names")
    r.add_argument("--json", action="store_true")
    r.set_defaults(fn=cmd_reproduce)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "order", 0) < 0:
        ap.error("--order must be non-negative")
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
