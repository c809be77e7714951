"""Weierstrass sigma, zeta and wp as exact truncated series.

sigma(u) = u * sum a_ij / (4i+6j+1)! * (g2 u^4 / 2)^i (2 g3 u^6)^j with an
integer table a_ij filled by a two-index recursion in shells of 2i+3j.  zeta
and wp are carried only in regularized form (u*zeta and u^2*wp) so no Laurent
objects ever appear; every identity involving wp is pre-multiplied by the
minimal power of u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .rat import Q, as_q, factorial_valuation, is_integral, padic_valuation
from .ring import MPoly, VarSpec
from .series import Series, hurwitz_integrality_witness
from .curve import MuParams, reduce_to_weierstrass

G_NAMES = ("g2", "g3")
G_WEIGHTS = (-8, -12)


def g_spec() -> VarSpec:
    return VarSpec(G_NAMES, G_WEIGHTS)


class NonIntegralTableEntry(ArithmeticError):
    """The sigma recursion produced a non-integer; falsifies the integrality theorem."""


@dataclass
class SigmaTable:
    max_weight: int
    entries: dict[tuple[int, int], int]

    def a(self, i: int, j: int) -> int:
        if i < 0 or j < 0:
            return 0
        try:
            return self.entries[(i, j)]
        except KeyError:
            raise KeyError(f"a_{{{i},{j}}} outside table weight {self.max_weight}") from None


def sigma_table(max_weight: int) -> SigmaTable:
    """Fill a_ij for 2i+3j <= max_weight, in increasing shells of m = 2i+3j.

    a_ij = 3(i+1) a_{i+1,j-1} + 16/3 (j+1) a_{i-2,j+1} - 1/3 (4i+6j-1)(2i+3j-1) a_{i-1,j};
    the divisions by 3 must cancel, every entry is an integer.
    """
    entries: dict[tuple[int, int], int] = {(0, 0): 1}

    def a(i, j):
        return entries.get((i, j), 0) if i >= 0 and j >= 0 else 0

    for m in range(1, max_weight + 1):
        for j in range(m // 3 + 1):
            r = m - 3 * j
            if r % 2:
                continue
            i = r // 2
            val = (
                Q(3 * (i + 1)) * a(i + 1, j - 1)
                + Q(16, 3) * (j + 1) * a(i - 2, j + 1)
                - Q(4 * i + 6 * j - 1) * (2 * i + 3 * j - 1) * a(i - 1, j) / 3
            )
            if not is_integral(val):
                raise NonIntegralTableEntry(f"a_{{{i},{j}}} = {val}")
            entries[(i, j)] = int(val)
    return SigmaTable(max_weight=max_weight, entries=entries)


@dataclass
class SigmaSeries:
    sigma: Series      # u + O(u^5)
    zeta_reg: Series   # u * zeta(u); constant term 1
    wp_reg: Series     # u^2 * wp(u); constant term 1
    g2: MPoly
    g3: MPoly


def sigma_series(
    table: SigmaTable,
    order: int,
    g2: Optional[MPoly] = None,
    g3: Optional[MPoly] = None,
    var: str = "u",
) -> SigmaSeries:
    """sigma/zeta/wp truncations; g2, g3 default to symbolic generators.

    zeta_reg = u sigma'/sigma and wp_reg = zeta_reg - u zeta_reg' come out one
    order below sigma, so ask for order+1 if wp is needed at `order`.
    """
    if g2 is None or g3 is None:
        spec = g_spec()
        g2, g3 = MPoly.variable(spec, "g2"), MPoly.variable(spec, "g3")
    spec = g2.spec
    need = (order - 1) // 2
    if table.max_weight < need:
        raise ValueError(f"table weight {table.max_weight} < required {need}")
    coeffs: dict[tuple, MPoly] = {}
    half_g2 = g2 * Q(1, 2)
    two_g3 = g3 * 2
    i = 0
    while 4 * i + 1 <= order:
        j = 0
        while 4 * i + 6 * j + 1 <= order:
            a = table.a(i, j)
            if a:
                # distinct (i,j) can share a u-degree (e.g. (3,0) and (0,2)): accumulate
                poly = (half_g2**i) * (two_g3**j) * Q(a, math.factorial(4 * i + 6 * j + 1))
                key = (4 * i + 6 * j + 1,)
                prev = coeffs.get(key)
                coeffs[key] = poly if prev is None else prev + poly
            j += 1
        i += 1
    sigma = Series(spec, (var,), order, coeffs)
    S = sigma.shift_down((1,))
    zeta_reg = sigma.derivative() * S.inverse()
    wp_reg = zeta_reg - zeta_reg.derivative().shift_up((1,))
    return SigmaSeries(sigma=sigma, zeta_reg=zeta_reg, wp_reg=wp_reg, g2=g2, g3=g3)


def sigma_series_bruteforce(order: int, var: str = "u") -> Series:
    """Independent construction: solve the heat-operator equation for sigma order by order.

    c_{k+2} = [6 g3 d/dg2 + (1/3) g2^2 d/dg3 - (1/24) g2 * shift^2] c_k * 2/((k+2)(k+1)),
    c_1 = 1.  Used as the oracle against the table-based construction.
    """
    spec = g_spec()
    g2, g3 = MPoly.variable(spec, "g2"), MPoly.variable(spec, "g3")
    c: list[MPoly] = [MPoly.zero(spec), MPoly.const(spec, 1)]
    for k in range(0, order - 1):
        ck = c[k]
        prev = c[k - 2] if k >= 2 else MPoly.zero(spec)
        nxt = (
            6 * g3 * ck.derivative("g2")
            + g2 * g2 * ck.derivative("g3") * Q(1, 3)
            - g2 * prev * Q(1, 24)
        ) * Q(2, (k + 2) * (k + 1))
        c.append(nxt)
    return Series(spec, (var,), order, {(k,): c[k] for k in range(order + 1) if k < len(c)})


def annihilator_checks(sig: Series, order: Optional[int] = None) -> dict:
    """Residuals of the two annihilating operators applied to sigma (symbolic g2, g3)."""
    if order is not None:
        sig = sig.truncate(order)
    spec = sig.spec
    g2, g3 = MPoly.variable(spec, "g2"), MPoly.variable(spec, "g3")
    d_g2 = sig.map_coeffs(lambda c: c.derivative("g2"))
    d_g3 = sig.map_coeffs(lambda c: c.derivative("g3"))
    u_du = sig.derivative().shift_up((1,))
    q0 = d_g2.scale(4 * g2) + d_g3.scale(6 * g3) - u_du + sig
    u2_sig = sig.shift_up((2,)).truncate(sig.order)
    q2 = (
        d_g2.scale(6 * g3)
        + d_g3.scale(g2 * g2 * Q(1, 3))
        - sig.derivative().derivative().scale(Q(1, 2))
        - u2_sig.scale(g2 * Q(1, 24))
    )
    return {"Q0": (q0.is_zero(), q0), "Q2": (q2.is_zero(), q2)}


def hurwitz_certificates(sig: SigmaSeries) -> dict:
    """Integrality verdicts for sigma and the reciprocal zeta/wp quotients.

    Keys map to (ok, witness); sigma must be a Hurwitz series over
    Z[g2/2, 2g3] (hence over Z[1/2][g2,g3] and Z[1/3][g2/2, 2g3]), and
    u/zeta_reg resp. u^2/wp_reg give 1/zeta resp. 1/wp.
    """
    halves = {"g2": Q(1, 2), "g3": Q(2)}
    plain = {"g2": Q(1), "g3": Q(1)}
    inv_zeta = sig.zeta_reg.inverse().shift_up((1,))
    inv_wp = sig.wp_reg.inverse().shift_up((2,))
    out = {}
    for name, series, scales, primes in (
        ("sigma_Z[g2/2,2g3]", sig.sigma, halves, ()),
        ("sigma_Z[1/2][g2,g3]", sig.sigma, plain, (2,)),
        ("sigma_Z[1/3][g2/2,2g3]", sig.sigma, halves, (3,)),
        ("inv_zeta_Z[g2/2,2g3]", inv_zeta, halves, ()),
        ("inv_wp_Z[g2/2,2g3]", inv_wp, halves, ()),
    ):
        w = hurwitz_integrality_witness(series, scales, primes)
        out[name] = (w is None, w)
    return out


def wp_ode_residual(sig: SigmaSeries) -> Series:
    """(u^3 wp')^2 - 4 (u^2 wp)^3 + g2 u^4 (u^2 wp) + g3 u^6, which must vanish."""
    wp = sig.wp_reg
    order = wp.order - 1
    wp = wp.truncate(order + 1)
    u3_wp_prime = wp.derivative().shift_up((1,)) - wp.scale(2)  # u^3 * wp'
    u3_wp_prime = u3_wp_prime.truncate(order)
    wp2 = (wp * wp).truncate(order)
    lhs = (u3_wp_prime * u3_wp_prime).truncate(order) - (wp2 * wp).truncate(order).scale(4)
    u4 = Series.monomial(wp.spec, wp.svars, (4,), order)
    u6 = Series.monomial(wp.spec, wp.svars, (6,), order)
    return lhs + (u4 * wp).truncate(order).scale(sig.g2) + u6.scale(sig.g3)


_TABLE_CACHE: dict[int, SigmaTable] = {}


def cached_table(max_weight: int) -> SigmaTable:
    have = [w for w in _TABLE_CACHE if w >= max_weight]
    if have:
        return _TABLE_CACHE[min(have)]
    t = sigma_table(max_weight)
    _TABLE_CACHE[max_weight] = t
    return t


def weier_exponential(mu: MuParams, order: int, var: str = "u") -> Series:
    """Exponential of the general elliptic law from the wp-uniformization:

    f(u) = -2 (wp - b2/12) / (wp' - mu1 wp + mu1 b2/12 - mu3), assembled after
    multiplying numerator and denominator by u^3 (denominator constant -2).
    """
    spec = mu.spec
    w = reduce_to_weierstrass(mu)
    sig = sigma_series(cached_table(order + 3), order + 2, w.g2, w.g3, var)
    wp = sig.wp_reg  # order+1
    mu1, mu2, mu3 = mu.mu1, mu.mu2, mu.mu3
    A = (4 * mu2 + mu1 * mu1) * Q(1, 12)
    u1 = Series.monomial(spec, (var,), (1,), wp.order)
    u3 = Series.monomial(spec, (var,), (3,), wp.order)
    u_wp = (u1 * wp).truncate(wp.order)
    u3_wp_prime = wp.derivative().shift_up((1,)) - wp.scale(2)
    num = (u_wp - u3.scale(A)).scale(as_q(-2))
    den = (
        u3_wp_prime.truncate(wp.order - 1)
        - u_wp.truncate(wp.order - 1).scale(mu1)
        + u3.truncate(wp.order - 1).scale(mu1 * A - mu3)
    )
    return (num / den).truncate(order)


# -- the b_ij normalization and the 2/3-adic conjecture ---------------------------


def bij(table: SigmaTable, i: int, j: int) -> Q:
    """b_ij = 2^(3i+4j) 3^(i+j) i! j! / (4i+6j+1)! * a_ij."""
    if i < 0 or j < 0:
        return as_q(0)
    a = table.a(i, j)
    return (
        Q(2 ** (3 * i + 4 * j))
        * 3 ** (i + j)
        * math.factorial(i)
        * math.factorial(j)
        * a
        / math.factorial(4 * i + 6 * j + 1)
    )


def bij_recursion_check(maxsum: int, table: Optional[SigmaTable] = None) -> Optional[tuple]:
    """(4i+6j+1)(2i+3j) b_ij = 3j b_{i+1,j-1} - 2i b_{i-1,j} + 32 i(i-1) b_{i-2,j+1}.

    Out-of-range b are 0.  Returns None or the first failing (i, j).
    """
    if table is None:
        table = cached_table(3 * maxsum + 3)
    for i in range(maxsum + 1):
        for j in range(maxsum + 1 - i):
            lhs = Q(4 * i + 6 * j + 1) * (2 * i + 3 * j) * bij(table, i, j)
            rhs = (
                3 * j * bij(table, i + 1, j - 1)
                - 2 * i * bij(table, i - 1, j)
                + 32 * i * (i - 1) * bij(table, i - 2, j + 1)
            )
            if lhs != rhs:
                return (i, j)
    return None


@dataclass
class ConjectureReport:
    maxsum: int
    checked: int
    zero_entries: int
    counterexamples: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def conjecture_check(maxsum: int, table: Optional[SigmaTable] = None) -> ConjectureReport:
    """2- and 3-adic valuations of a_ij must match those of (4i+6j+1)!/(2^(3i+4j) 3^(i+j) i! j!).

    Equivalently b_ij in lowest terms has numerator and denominator coprime
    to 6.  Zero entries pass vacuously and are counted.
    """
    if table is None:
        table = cached_table(3 * maxsum)
    checked = zeros = 0
    bad = []
    for i in range(maxsum + 1):
        for j in range(maxsum + 1 - i):
            if 2 * i + 3 * j > table.max_weight:
                continue
            a = table.a(i, j)
            checked += 1
            if a == 0:
                zeros += 1
                continue
            n = 4 * i + 6 * j + 1
            for p, extra in ((2, 3 * i + 4 * j), (3, i + j)):
                target = factorial_valuation(n, p) - extra - factorial_valuation(i, p) - factorial_valuation(j, p)
                if padic_valuation(a, p) != target:
                    bad.append((i, j))
                    break
    return ConjectureReport(maxsum=maxsum, checked=checked, zero_entries=zeros, counterexamples=bad)


# -- the degenerate (Delta = 0) cross-check ----------------------------------------


def degenerate_coth_check(order: int) -> bool:
    """For mu = (mu1, mu2, 0, 0, 0) the exponential equals 1/(gamma coth(gamma u) + mu1/2).

    With gamma^2 = (mu1^2 + 4 mu2)/4 only even powers of gamma enter:
    the candidate is u*S/(C + (mu1/2) u S) where C = cosh(gamma u) and
    S = sinh(gamma u)/(gamma u), both polynomials in gamma^2.
    """
    spec = VarSpec(("mu1", "mu2"), (-2, -4))
    m1, m2 = MPoly.variable(spec, "mu1"), MPoly.variable(spec, "mu2")
    z = MPoly.zero(spec)
    mu = MuParams.from_values([m1, m2, z, z, z], spec)
    f = weier_exponential(mu, order)
    gamma2 = (m1 * m1 + 4 * m2) * Q(1, 4)
    C: dict[tuple, MPoly] = {}
    S: dict[tuple, MPoly] = {}
    for k in range(0, order + 1, 2):
        gk = gamma2 ** (k // 2)
        C[(k,)] = gk * Q(1, math.factorial(k))
        S[(k,)] = gk * Q(1, math.factorial(k + 1))
    Cs = Series(spec, ("u",), order, C)
    Ss = Series(spec, ("u",), order, S)
    uS = Ss.shift_up((1,)).truncate(order)
    cand = (uS / (Cs + uS.scale(m1 * Q(1, 2)))).truncate(order)
    return f.truncate(cand.order).agrees_with(cand)
