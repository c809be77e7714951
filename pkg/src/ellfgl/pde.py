"""Parameter-path PDEs of the Tate branch and the associahedron note.

Moving the curve parameters along the cubic path
mu(v) = (0, 3v + c2, c3, 3v^2 + 2 c2 v + c4, v^3 + c2 v^2 + c4 v + c6)
makes S(t, v) = s(t; mu(v)) a Hopf-equation solution dS/dv = S dS/dt while
keeping g2, g3 fixed.  A linear path in (mu3, mu6) gives the variant
dS/dv = (alpha S^2 + beta S^3) dS/dtau with tau = t^3.  The same Hopf
equation with initial value tau^2/(1 - alpha tau) generates the face counts
of the Stasheff polytopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ring import MPoly, VarSpec
from .series import Series
from .curve import MuParams, reduce_to_weierstrass, solve_tate_s

CUBIC_NAMES = ("v", "c2", "c3", "c4", "c6")
CUBIC_WEIGHTS = (-4, -4, -6, -8, -12)
LINEAR_NAMES = ("v", "alpha", "beta", "c3", "c6")
LINEAR_WEIGHTS = (-4, -2, -8, -6, -12)


@dataclass(frozen=True)
class PathSpec:
    kind: str  # "cubic" | "linear"
    mu: MuParams
    mu_v: tuple[MPoly, ...]  # d(mu_i)/dv, i = 1,2,3,4,6


def cubic_path(constants: Optional[dict] = None) -> PathSpec:
    spec = VarSpec(CUBIC_NAMES, CUBIC_WEIGHTS)
    v, c2, c3, c4, c6 = (MPoly.variable(spec, n) for n in CUBIC_NAMES)
    if constants:
        sub = {n: constants[n] for n in ("c2", "c3", "c4", "c6")}
        c2, c3, c4, c6 = (c.specialize(sub, spec) for c in (c2, c3, c4, c6))
    z = MPoly.zero(spec)
    mu = MuParams.from_values(
        [z, 3 * v + c2, c3, 3 * v * v + 2 * c2 * v + c4, v**3 + c2 * v * v + c4 * v + c6],
        spec,
    )
    return PathSpec("cubic", mu, tuple(e.derivative("v") for e in mu.as_tuple()))


def linear_path(constants: Optional[dict] = None) -> PathSpec:
    spec = VarSpec(LINEAR_NAMES, LINEAR_WEIGHTS)
    v, al, be, c3, c6 = (MPoly.variable(spec, n) for n in LINEAR_NAMES)
    if constants:
        sub = dict(constants)
        al, be, c3, c6 = (c.specialize(sub, spec) for c in (al, be, c3, c6))
    z = MPoly.zero(spec)
    mu = MuParams.from_values([z, z, al * v + c3, z, be * v + c6], spec)
    return PathSpec("linear", mu, tuple(e.derivative("v") for e in mu.as_tuple()))


def hopf_check_cubic(path: PathSpec, order: int) -> dict:
    """dS/dv = S dS/dt for the cubic path, two ways.

    route "hopf": differentiate the solved series directly in v and t.
    route "implicit": dS/dv read off the defining cubic,
    dS/dv * rho = mu2' t^2 S + mu3' S^2 + mu4' t S^2 + mu6' S^3 with
    rho = 1 - mu2 t^2 - 2 mu3 S - 2 mu4 t S - 3 mu6 S^2; both must agree.
    """
    if path.kind != "cubic":
        raise ValueError("cubic-path check needs a cubic path")
    mu = path.mu
    spec = mu.spec
    S = solve_tate_s(mu, order)
    S_v = S.map_coeffs(lambda c: c.derivative("v"))
    S_t = S.derivative()
    W = order - 1
    hopf_residual = S_v.truncate(W) - (S * S_t).truncate(W)

    d1, d2, d3, d4, d6 = path.mu_v
    t = Series.variable(spec, S.svars, S.svars[0], order)
    S2 = (S * S).truncate(order)
    S3 = (S2 * S).truncate(order)
    tS = (t * S).truncate(order)
    t2 = (t * t).truncate(order)
    rho = (
        Series.const(spec, S.svars, order, 1)
        - t.scale(mu.mu1)
        - t2.scale(mu.mu2)
        - S.scale(2 * mu.mu3)
        - tS.scale(2 * mu.mu4)
        - S2.scale(3 * mu.mu6)
    )
    rhs = (
        (t * S).truncate(order).scale(d1)
        + (t2 * S).truncate(order).scale(d2)
        + S2.scale(d3)
        + (t * S2).truncate(order).scale(d4)
        + S3.scale(d6)
    )
    implicit_residual = (S_v * rho).truncate(W) - rhs.truncate(W)

    s0 = solve_tate_s(mu.specialize({"v": 0}, spec), order)
    initial_ok = S.specialize_coeffs({"v": 0}, spec).agrees_with(s0)
    return {
        "hopf": (hopf_residual.is_zero(), hopf_residual),
        "implicit": (implicit_residual.is_zero(), implicit_residual),
        "initial": (initial_ok, None),
    }


def invariant_weierstrass_check(path: PathSpec) -> bool:
    """g2 and g3 of the cubic path do not depend on v."""
    if path.kind != "cubic":
        raise ValueError("invariance holds along the cubic path")
    w = reduce_to_weierstrass(path.mu)
    return w.g2.derivative("v").is_zero() and w.g3.derivative("v").is_zero()


def hopf_check_linear(path: PathSpec, order: int) -> dict:
    """dS/dv = (alpha S^2 + beta S^3) dS/dtau with tau = t^3, to the given tau-order.

    S depends on t only through tau (mu1 = mu2 = mu4 = 0); a stray exponent
    not divisible by 3 is an error.
    """
    if path.kind != "linear":
        raise ValueError("linear-path check needs a linear path")
    mu = path.mu
    spec = mu.spec
    s_t = solve_tate_s(mu, 3 * order)
    coeffs = {}
    for (k,), c in s_t.coeffs.items():
        if k % 3:
            raise ArithmeticError(f"t-exponent {k} not a multiple of 3")
        coeffs[(k // 3,)] = c
    S = Series(spec, ("tau",), order, coeffs)
    S_v = S.map_coeffs(lambda c: c.derivative("v"))
    S_tau = S.derivative()
    S2 = (S * S).truncate(order)
    S3 = (S2 * S).truncate(order)
    # alpha, beta are exactly the v-derivatives of mu3, mu6 along the path
    al, be = path.mu_v[2], path.mu_v[4]
    W = order - 1
    residual = S_v.truncate(W) - ((S2.scale(al) + S3.scale(be)) * S_tau).truncate(W)
    return {"hopf": (residual.is_zero(), residual)}


# -- associahedron ------------------------------------------------------------


@dataclass
class AssociahedronData:
    U: Series                     # in tau over Z[alpha, upsilon]
    faces: dict[int, list[int]]   # n -> [f_0, ..., f_n] (k-dimensional face counts)
    checks: dict[str, bool]


def associahedron_gf(n_tau: int, n_upsilon: Optional[int] = None) -> AssociahedronData:
    """Solve upsilon (alpha + upsilon) U^2 - (1 - (alpha + 2 upsilon) tau) U + tau^2 = 0
    for the unique branch U = tau^2 + O(tau^3) and read off the face counts.

    [tau^(n+2)] U = alpha^n + f_{n-1} alpha^(n-1) upsilon + ... + f_0 upsilon^n
    with f_k the number of k-dimensional faces of the n-dimensional
    associahedron.  Verifies the quadratic, the Hopf equation
    dU/dupsilon = U dU/dtau, and U(tau, 0) = tau^2/(1 - alpha tau).
    """
    order = n_tau
    spec = VarSpec(("alpha", "upsilon"), (0, 0))
    al, up = MPoly.variable(spec, "alpha"), MPoly.variable(spec, "upsilon")
    sv = ("tau",)
    tau = Series.variable(spec, sv, "tau", order)
    tau2 = Series.monomial(spec, sv, (2,), order)
    U = tau2
    for _ in range(order):
        nxt = (
            tau2
            + (tau * U).truncate(order).scale(al + 2 * up)
            + (U * U).truncate(order).scale(up * (al + up))
        ).truncate(order)
        if nxt == U:
            break
        U = nxt

    quad = (
        (U * U).truncate(order).scale(up * (al + up))
        - U
        + (tau * U).truncate(order).scale(al + 2 * up)
        + tau2
    )
    W = order - 1
    hopf = U.map_coeffs(lambda c: c.derivative("upsilon")).truncate(W) - (
        U * U.derivative()
    ).truncate(W)
    at0 = U.specialize_coeffs({"upsilon": 0}, spec)
    geom = Series(spec, sv, order, {(k + 2,): al**k for k in range(order - 1)})
    init_ok = at0.agrees_with(geom)

    faces: dict[int, list[int]] = {}
    top = n_tau - 2 if n_upsilon is None else min(n_tau - 2, n_upsilon)
    for n in range(top + 1):
        poly = U.coefficient((n + 2,))
        row = [0] * (n + 1)
        for (ea, eu), c in poly.terms.items():
            if ea + eu != n or not is_int_like(c):
                raise ArithmeticError(f"face polynomial at n={n} has unexpected term {poly}")
            row[ea] = int(c)
        faces[n] = row
    checks = {
        "quadratic": quad.is_zero(),
        "hopf": hopf.is_zero(),
        "initial": init_ok,
        "branch": U.valuation() == 2 and U.coefficient((2,)) == MPoly.const(spec, 1),
        "euler": all(
            sum((-1) ** k * fk for k, fk in enumerate(row)) == 1 for row in faces.values()
        ),
    }
    return AssociahedronData(U=U, faces=faces, checks=checks)


def is_int_like(c) -> bool:
    return c.denominator == 1
