"""The elliptic curve y^2 + mu1*x*y + mu3*y = x^3 + mu2*x^2 + mu4*x + mu6
in Tate coordinates: the branch s(t) through the origin, the discriminant,
and the reduction to the standard Weierstrass curve y^2 = 4x^3 - g2*x - g3.

Grading: deg t = 2, deg s = 6, deg mu_i = -2i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .rat import Q, is_integral
from .ring import MPoly, VarSpec
from .series import Series

MU_NAMES = ("mu1", "mu2", "mu3", "mu4", "mu6")
MU_WEIGHTS = (-2, -4, -6, -8, -12)


def mu_spec() -> VarSpec:
    return VarSpec(MU_NAMES, MU_WEIGHTS)


@dataclass(frozen=True)
class MuParams:
    """Curve parameters; entries are MPolys over a common spec (symbolic or specialized)."""

    spec: VarSpec
    mu1: MPoly
    mu2: MPoly
    mu3: MPoly
    mu4: MPoly
    mu6: MPoly

    @classmethod
    def symbolic(cls) -> "MuParams":
        spec = mu_spec()
        return cls(spec, *(MPoly.variable(spec, n) for n in MU_NAMES))

    @classmethod
    def from_values(cls, values, spec: Optional[VarSpec] = None) -> "MuParams":
        """Five entries, each an MPoly over `spec` or a rational scalar."""
        if spec is None:
            spec = next((v.spec for v in values if isinstance(v, MPoly)), VarSpec((), ()))
        entries = [v if isinstance(v, MPoly) else MPoly.const(spec, v) for v in values]
        return cls(spec, *entries)

    def as_tuple(self) -> tuple[MPoly, MPoly, MPoly, MPoly, MPoly]:
        return (self.mu1, self.mu2, self.mu3, self.mu4, self.mu6)

    def check_grading(self) -> bool:
        """Each entry homogeneous of its declared weight, or constant."""
        for entry, w in zip(self.as_tuple(), MU_WEIGHTS):
            if entry.is_constant():
                continue
            if entry.weight() != w:
                return False
        return True

    def specialize(self, assignment, target: Optional[VarSpec] = None) -> "MuParams":
        entries = [e.specialize(assignment, target) for e in self.as_tuple()]
        return MuParams(entries[0].spec, *entries)


def solve_tate_s(mu: MuParams, order: int, var: str = "t") -> Series:
    """The unique branch s(t) = t^3 + O(t^4) of the Tate cubic.

    Fixed-point iteration from s0 = t^3; every pass gains at least one t-adic
    order, so `order` passes certainly suffice (the loop exits early at the
    fixed point).
    """
    if order < 3:
        raise ValueError("solve_tate_s needs order >= 3")
    spec = mu.spec
    sv = (var,)
    t1 = Series.variable(spec, sv, var, order)
    t2 = Series.monomial(spec, sv, (2,), order)
    t3 = Series.monomial(spec, sv, (3,), order)
    mu1, mu2, mu3, mu4, mu6 = mu.as_tuple()

    def clip(x: Series) -> Series:
        return x.truncate(order) if x.order > order else x

    s = t3
    for _ in range(order):
        s2 = clip(s * s)
        rhs = (
            t3
            + clip(t1 * s).scale(mu1)
            + clip(t2 * s).scale(mu2)
            + s2.scale(mu3)
            + clip(t1 * s2).scale(mu4)
            + clip(s2 * s).scale(mu6)
        )
        rhs = clip(rhs)
        if rhs == s:
            break
        s = rhs
    return s


def tate_residual(mu: MuParams, s: Series) -> Series:
    """s - (t^3 + mu1*t*s + mu2*t^2*s + mu3*s^2 + mu4*t*s^2 + mu6*s^3), truncated."""
    order = s.order
    spec, sv, var = s.spec, s.svars, s.svars[0]
    t1 = Series.variable(spec, sv, var, order)
    t2 = Series.monomial(spec, sv, (2,), order)
    t3 = Series.monomial(spec, sv, (3,), order)
    mu1, mu2, mu3, mu4, mu6 = mu.as_tuple()
    s2 = (s * s).truncate(order)
    rhs = (
        t3
        + (t1 * s).truncate(order).scale(mu1)
        + (t2 * s).truncate(order).scale(mu2)
        + s2.scale(mu3)
        + (t1 * s2).truncate(order).scale(mu4)
        + (s2 * s).truncate(order).scale(mu6)
    )
    return s - rhs


def _b_invariants(mu: MuParams) -> tuple[MPoly, MPoly, MPoly]:
    mu1, mu2, mu3, mu4, mu6 = mu.as_tuple()
    b2 = mu2 * 4 + mu1 * mu1
    b4 = mu1 * mu3 + mu4 * 2
    b6 = mu6 * 4 + mu3 * mu3
    return b2, b4, b6


def discriminant(mu: MuParams) -> MPoly:
    """Discriminant from 4*Delta = b4^2*b2^2 - 32*b4^3 - 108*b6^2 + 36*b4*b2*b6 - b2^3*b6.

    When the input has integer coefficients the right side must be divisible
    by 4; a failure signals a transcription bug.
    """
    b2, b4, b6 = _b_invariants(mu)
    four_delta = (
        b4 * b4 * b2 * b2
        - 32 * b4**3
        - 108 * b6 * b6
        + 36 * b4 * b2 * b6
        - b2**3 * b6
    )
    delta = four_delta * Q(1, 4)
    inputs_integral = all(
        is_integral(c) for e in mu.as_tuple() for c in e.terms.values()
    )
    if inputs_integral and not all(is_integral(c) for c in delta.terms.values()):
        raise ArithmeticError("4-divisibility of the discriminant numerator failed")
    return delta


@dataclass(frozen=True)
class WeierstrassParams:
    g2: MPoly
    g3: MPoly
    delta: MPoly  # g2^3 - 27*g3^2


def reduce_to_weierstrass(mu: MuParams) -> WeierstrassParams:
    """g2, g3 of the standard Weierstrass model obtained by completing the square/cube."""
    b2, b4, b6 = _b_invariants(mu)
    g2 = b2 * b2 * Q(1, 12) - 2 * b4
    g3 = b4 * b2 * Q(1, 6) - b2**3 * Q(1, 216) - b6
    delta = g2**3 - 27 * g3 * g3
    return WeierstrassParams(g2, g3, delta)


def tate_transform(mu: MuParams, order: int, var: str = "t") -> Series:
    """The coordinate change psi(t) = (t + (b2/12) s) / (1 - mu1 t/2 - mu3 s/2)
    onto the Tate chart of the standard Weierstrass model; psi(t) = t + O(t^2)."""
    if order < 1:
        raise ValueError("tate_transform needs order >= 1")
    s = solve_tate_s(mu, max(order, 3), var).truncate(order)
    spec, sv = mu.spec, (var,)
    t1 = Series.variable(spec, sv, var, order)
    b2, _, _ = _b_invariants(mu)
    num = t1 + s.scale(b2 * Q(1, 12))
    den = (
        Series.const(spec, sv, order, 1)
        - t1.scale(mu.mu1 * Q(1, 2))
        - s.scale(mu.mu3 * Q(1, 2))
    )
    return (num / den).truncate(order)


# -- oracles -----------------------------------------------------------------


def catalan_binom_identity(order: int) -> bool:
    """Tate expansion for mu1 = mu3 = 0 against the triple-binomial series.

    Over gamma_1..gamma_3 with mu2, mu4, mu6 the elementary symmetric
    functions, the coefficient of t^(2n+1) in s(t)/t must equal
    (1/n) * sum_{j1+j2+j3=n-1} C(n,j1) C(n,j2) C(n,j3) gamma^j.
    """
    spec = VarSpec(("gamma1", "gamma2", "gamma3"), (-4, -4, -4))
    g1, g2, g3 = (MPoly.variable(spec, f"gamma{i}") for i in (1, 2, 3))
    mu = MuParams.from_values(
        [MPoly.zero(spec), g1 + g2 + g3, MPoly.zero(spec),
         g1 * g2 + g1 * g3 + g2 * g3, g1 * g2 * g3]
    )
    s = solve_tate_s(mu, order)
    expected = Series.zero(spec, ("t",), order)
    n = 1
    while 2 * n + 1 <= order:
        coeff = MPoly.zero(spec)
        for j1 in range(n):
            for j2 in range(n - j1):
                j3 = n - 1 - j1 - j2
                c = math.comb(n, j1) * math.comb(n, j2) * math.comb(n, j3)
                coeff = coeff + MPoly.monomial(spec, (j1, j2, j3), c)
        expected = expected + Series(
            spec, ("t",), order, {(2 * n + 1,): coeff * Q(1, n)}
        )
        n += 1
    return s.agrees_with(expected)


@dataclass(frozen=True)
class EFormParams:
    """Roots-of-the-cubic presentation: (2y + mu1 x + mu3)^2 = 4 prod (x - e_i)."""

    e1: MPoly
    e2: MPoly
    e3: MPoly
    mu1: MPoly
    mu3: MPoly

    @classmethod
    def symbolic(cls) -> "EFormParams":
        spec = VarSpec(("e1", "e2", "e3", "mu1", "mu3"), (-4, -4, -4, -2, -6))
        return cls(*(MPoly.variable(spec, n) for n in spec.names))

    def mu(self) -> MuParams:
        e1, e2, e3, m1, m3 = self.e1, self.e2, self.e3, self.mu1, self.mu3
        return MuParams.from_values(
            [
                m1,
                -(e1 + e2 + e3) - m1 * m1 * Q(1, 4),
                m3,
                e1 * e2 + e1 * e3 + e2 * e3 - m1 * m3 * Q(1, 2),
                -(e1 * e2 * e3) - m3 * m3 * Q(1, 4),
            ],
            e1.spec,
        )


def e_form_discriminant_check() -> bool:
    """Substituting the root parametrization gives Delta = 16 prod (e_i - e_j)^2."""
    p = EFormParams.symbolic()
    delta = discriminant(p.mu())
    target = 16 * ((p.e1 - p.e2) * (p.e1 - p.e3) * (p.e2 - p.e3)) ** 2
    return delta == target
