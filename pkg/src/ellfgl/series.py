"""Truncated formal power series over MPoly coefficients.

A Series is a sparse map from exponent tuples (one entry per series variable)
to MPoly coefficients, truncated at a total degree `order`: coefficients of
total degree <= order are known exactly, anything beyond is *unknown* and
asking for it is an error, never silently zero.

One generic class covers the univariate and bivariate cases (and the
trivariate expansions used for associativity checks).  Multiplication fuses
the coefficient-polynomial products into the series loop to avoid building
intermediate MPoly objects.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .rat import Q, SCALAR_TYPES, as_q, denominator_unit_outside
from .ring import MPoly, SpecMismatchError, VarSpec


class TruncationError(ValueError):
    """A coefficient beyond the known truncation order was requested."""


class NonUnitError(ValueError):
    """Division by a series whose constant term is not an invertible rational."""


class Series:
    __slots__ = ("spec", "svars", "order", "coeffs")

    def __init__(
        self,
        spec: VarSpec,
        svars: tuple[str, ...],
        order: int,
        coeffs: Optional[Mapping[tuple, MPoly]] = None,
    ):
        if order < 0:
            raise TruncationError("series order underflow (order < 0)")
        self.spec = spec
        self.svars = tuple(svars)
        self.order = order
        clean: dict[tuple, MPoly] = {}
        if coeffs:
            n = len(self.svars)
            for exps, c in coeffs.items():
                exps = tuple(exps)
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps}")
                if sum(exps) > order:
                    raise TruncationError(f"term {exps} beyond truncation order {order}")
                if not isinstance(c, MPoly):
                    c = MPoly.const(spec, c)
                if c:
                    clean[exps] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec, svars, order) -> "Series":
        return cls(spec, svars, order)

    @classmethod
    def const(cls, spec, svars, order, value) -> "Series":
        n = len(svars)
        return cls(spec, svars, order, {(0,) * n: value})

    @classmethod
    def variable(cls, spec, svars, name, order) -> "Series":
        i = tuple(svars).index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(svars)))
        return cls(spec, svars, order, {exps: MPoly.const(spec, 1)})

    @classmethod
    def monomial(cls, spec, svars, exps, order, coeff=1) -> "Series":
        return cls(spec, svars, order, {tuple(exps): coeff})

    def one_like(self) -> "Series":
        return Series.const(self.spec, self.svars, self.order, 1)

    # -- queries ---------------------------------------------------------------

    def coefficient(self, exps) -> MPoly:
        if isinstance(exps, int):
            exps = (exps,)
        exps = tuple(exps)
        if sum(exps) > self.order:
            raise TruncationError(
                f"coefficient {exps} beyond truncation order {self.order}"
            )
        return self.coeffs.get(exps, MPoly.zero(self.spec))

    def valuation(self) -> int:
        """Least total degree of a nonzero known term; order+1 for the zero truncation."""
        return min((sum(e) for e in self.coeffs), default=self.order + 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def nvars(self) -> int:
        return len(self.svars)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.svars == other.svars
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def agrees_with(self, other: "Series", through: Optional[int] = None) -> bool:
        """Coefficientwise equality through min known order (or `through`).

        Series variables are positional here: dummy names may differ.
        """
        n = min(self.order, other.order)
        if through is not None:
            if through > n:
                raise TruncationError(f"comparison through {through} exceeds known order {n}")
            n = through
        keys = {e for e in self.coeffs if sum(e) <= n}
        keys |= {e for e in other.coeffs if sum(e) <= n}
        return all(self.coefficient(e) == other.coefficient(e) for e in keys)

    def _check(self, other: "Series"):
        if self.spec != other.spec:
            raise SpecMismatchError("series over different coefficient rings")
        if self.svars != other.svars:
            raise SpecMismatchError(f"series variables differ: {self.svars} vs {other.svars}")

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES) or isinstance(other, MPoly):
            other = Series.const(self.spec, self.svars, self.order, other)
        self._check(other)
        order = min(self.order, other.order)
        out = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        for e, c in other.coeffs.items():
            if sum(e) > order:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Series(self.spec, self.svars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.spec, self.svars, self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, SCALAR_TYPES) or isinstance(other, MPoly):
            other = Series.const(self.spec, self.svars, self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        """Multiply every coefficient by an MPoly or rational scalar."""
        if isinstance(c, SCALAR_TYPES):
            c = as_q(c)
            if not c:
                return Series.zero(self.spec, self.svars, self.order)
            return Series(
                self.spec, self.svars, self.order,
                {e: v * c for e, v in self.coeffs.items()},
            )
        return Series(
            self.spec, self.svars, self.order,
            {e: v * c for e, v in self.coeffs.items()},
        )

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES) or isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        a = sorted(((sum(e), e, c) for e, c in self.coeffs.items()))
        b = sorted(((sum(e), e, c) for e, c in other.coeffs.items()))
        if len(a) > len(b):
            a, b = b, a
        acc: dict[tuple, dict[tuple, Q]] = {}
        for da, ea, ca in a:
            rem = order - da
            ca_items = list(ca.terms.items())
            for db, eb, cb in b:
                if db > rem:
                    break
                key = tuple(map(int.__add__, ea, eb))
                slot = acc.get(key)
                if slot is None:
                    slot = acc[key] = {}
                get = slot.get
                for m1, q1 in ca_items:
                    for m2, q2 in cb.terms.items():
                        mk = tuple(map(int.__add__, m1, m2))
                        v = get(mk)
                        p = q1 * q2
                        slot[mk] = p if v is None else v + p
        coeffs = {}
        for e, slot in acc.items():
            poly = MPoly(self.spec, slot)
            if poly:
                coeffs[e] = poly
        return Series(self.spec, self.svars, order, coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative series power; use inverse()")
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise TruncationError(f"cannot extend truncation {self.order} to {order}")
        return Series(
            self.spec, self.svars, order,
            {e: c for e, c in self.coeffs.items() if sum(e) <= order},
        )

    def _with_order(self, order: int) -> "Series":
        # Internal: re-tag the known order (Newton iterations grow it on purpose).
        s = Series.__new__(Series)
        s.spec, s.svars, s.order = self.spec, self.svars, order
        s.coeffs = dict(self.coeffs)
        return s

    # -- division ------------------------------------------------------------

    def unit_constant(self) -> Q:
        c = self.coeffs.get((0,) * len(self.svars))
        if c is None or not c.is_constant():
            raise NonUnitError("constant term is not an invertible rational")
        return c.constant_value()

    def inverse(self) -> "Series":
        """Reciprocal of a series with invertible rational constant term."""
        c0 = self.unit_constant()
        if not c0:
            raise NonUnitError("constant term is zero")
        cinv = 1 / c0
        n = len(self.svars)
        zero_exp = (0,) * n
        by_deg: dict[int, list] = {}
        for e, c in self.coeffs.items():
            d = sum(e)
            if d:
                by_deg.setdefault(d, []).append((e, c))
        inv_by_deg: dict[int, dict[tuple, MPoly]] = {0: {zero_exp: MPoly.const(self.spec, cinv)}}
        for d in range(1, self.order + 1):
            acc: dict[tuple, dict[tuple, Q]] = {}
            for db, terms in by_deg.items():
                if db > d:
                    continue
                prev = inv_by_deg.get(d - db)
                if not prev:
                    continue
                for eb, cb in terms:
                    for ei, ci in prev.items():
                        key = tuple(map(int.__add__, eb, ei))
                        slot = acc.setdefault(key, {})
                        for m1, q1 in cb.terms.items():
                            for m2, q2 in ci.terms.items():
                                mk = tuple(map(int.__add__, m1, m2))
                                v = slot.get(mk)
                                p = q1 * q2
                                slot[mk] = p if v is None else v + p
            layer = {}
            for e, slot in acc.items():
                poly = MPoly(self.spec, slot) * (-cinv)
                if poly:
                    layer[e] = poly
            if layer:
                inv_by_deg[d] = layer
        coeffs = {}
        for layer in inv_by_deg.values():
            coeffs.update(layer)
        return Series(self.spec, self.svars, self.order, coeffs)

    def shift_down(self, exps) -> "Series":
        """Exact division by the monomial with the given exponent vector."""
        exps = tuple(exps)
        out = {}
        for e, c in self.coeffs.items():
            e2 = tuple(map(int.__sub__, e, exps))
            if any(x < 0 for x in e2):
                raise ValueError(f"term {e} not divisible by monomial {exps}")
            out[e2] = c
        return Series(self.spec, self.svars, self.order - sum(exps), out)

    def shift_up(self, exps) -> "Series":
        exps = tuple(exps)
        return Series(
            self.spec, self.svars, self.order + sum(exps),
            {tuple(map(int.__add__, e, exps)): c for e, c in self.coeffs.items()},
        )

    def __truediv__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self.scale(1 / as_q(other))
        self._check(other)
        v = other.valuation()
        if v == 0:
            return self * other.inverse()
        if len(self.svars) != 1:
            raise NonUnitError("division by a non-unit is univariate-only")
        if v > other.order:
            raise ZeroDivisionError("division by the zero truncation")
        if self.valuation() < v:
            raise ValueError("division would produce a pole")
        return self.shift_down((v,)) * other.shift_down((v,)).inverse()

    # -- calculus ------------------------------------------------------------

    def derivative(self, var: Optional[str] = None) -> "Series":
        i = 0 if var is None else self.svars.index(var)
        out = {}
        for e, c in self.coeffs.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                prev = out.get(e2)
                add = c * k
                out[e2] = add if prev is None else prev + add
        return Series(self.spec, self.svars, self.order - 1, out)

    def integrate(self, constant=0) -> "Series":
        """Univariate antiderivative; the constant term must be supplied (default 0)."""
        if len(self.svars) != 1:
            raise ValueError("integrate is univariate-only")
        out = {(e[0] + 1,): c * Q(1, e[0] + 1) for e, c in self.coeffs.items()}
        s = Series(self.spec, self.svars, self.order + 1, out)
        return s + constant if constant else s

    def map_coeffs(self, fn) -> "Series":
        out = {}
        for e, c in self.coeffs.items():
            c2 = fn(c)
            if c2:
                out[e] = c2
        return Series(self.spec, self.svars, self.order, out)

    def specialize_coeffs(self, assignment, target: VarSpec) -> "Series":
        """Substitute into every coefficient, moving the series onto `target`."""
        out = {}
        for e, c in self.coeffs.items():
            c2 = c.specialize(assignment, target)
            if c2:
                out[e] = c2
        return Series(target, self.svars, self.order, out)

    # -- composition -----------------------------------------------------------

    def eval_at(self, args: Sequence["Series"]) -> "Series":
        """Evaluate this 1- or 2-variable series at inner series with zero constant term."""
        if len(args) != len(self.svars):
            raise ValueError("wrong number of inner series")
        for a in args:
            if a.valuation() == 0:
                raise ValueError("inner series must have zero constant term")
        inner_spec, inner_svars = args[0].spec, args[0].svars
        for a in args[1:]:
            args[0]._check(a)
        vmin = min(a.valuation() for a in args)
        order = min(min(a.order for a in args), (self.order + 1) * vmin - 1)

        def clip(s: "Series") -> "Series":
            # Horner steps always know at least `order`; keep them at exactly `order`.
            return s.truncate(order) if s.order > order else s._with_order(order)

        if len(self.svars) == 1:
            x = args[0]
            top = min(self.order, order // max(x.valuation(), 1))
            acc = Series.zero(inner_spec, inner_svars, order)
            for d in range(top, -1, -1):
                acc = clip(acc * x)
                c = self.coeffs.get((d,))
                if c is not None:
                    acc = acc + Series.const(inner_spec, inner_svars, order, c)
            return acc

        x, y = args
        max_i = min(self.order, order // max(x.valuation(), 1))
        max_j = min(self.order, order // max(y.valuation(), 1))
        xp = [Series.const(inner_spec, inner_svars, order, 1)]
        for _ in range(max_i):
            xp.append(clip(xp[-1] * x))
        rows: dict[int, Series] = {}
        for (i, j), c in self.coeffs.items():
            if i <= max_i and j <= max_j:
                row = rows.get(j)
                term = xp[i].scale(c)
                rows[j] = term if row is None else row + term
        acc = Series.zero(inner_spec, inner_svars, order)
        for j in range(max_j, -1, -1):
            acc = clip(acc * y)
            row = rows.get(j)
            if row is not None:
                acc = acc + row
        return acc

    # -- univariate algebra ------------------------------------------------------

    def compose(self, inner: "Series") -> "Series":
        """self(inner); univariate outer, inner constant term zero."""
        if len(self.svars) != 1:
            raise ValueError("compose requires a univariate outer series")
        return self.eval_at([inner])

    def reverse_ref(self) -> "Series":
        """Compositional inverse by order-by-order coefficient solving (reference path)."""
        f1 = self._reversion_precheck()
        g = Series(self.spec, self.svars, 1, {(1,): MPoly.const(self.spec, 1 / f1)})
        for k in range(2, self.order + 1):
            g = g._with_order(k)
            err = self.truncate(k).compose(g).coefficient((k,))
            if err:
                g = g + Series(self.spec, self.svars, k, {(k,): err * (-1 / f1)})
        return g

    def reverse(self) -> "Series":
        """Compositional inverse by Newton iteration; verified against the identity."""
        f1 = self._reversion_precheck()
        n = self.order
        var = self.svars[0]
        g = Series(self.spec, self.svars, 1, {(1,): MPoly.const(self.spec, 1 / f1)})
        fprime = self.derivative() if n >= 1 else None
        prec = 1
        while prec < n:
            prec = min(2 * prec + 1, n)
            gx = g._with_order(prec)
            fg = self.compose(gx)
            num = fg - Series.variable(self.spec, self.svars, var, fg.order)
            if num.is_zero():
                g = gx
                continue
            den = fprime.compose(gx)
            g = (gx - num / den).truncate(prec)
        ident = Series.variable(self.spec, self.svars, var, n)
        if not self.compose(g).agrees_with(ident):
            raise ArithmeticError("reversion failed verification")
        return g

    def _reversion_precheck(self) -> Q:
        if len(self.svars) != 1:
            raise ValueError("reversion requires a univariate series")
        if self.coeffs.get((0,)):
            raise ValueError("reversion requires zero constant term")
        c1 = self.coeffs.get((1,))
        if c1 is None or not c1.is_constant() or not c1.constant_value():
            raise NonUnitError("reversion requires an invertible linear coefficient")
        return c1.constant_value()

    def sqrt_unit(self) -> "Series":
        """Square root of a univariate series with constant term exactly 1."""
        if len(self.svars) != 1:
            raise ValueError("sqrt_unit is univariate-only")
        c0 = self.coeffs.get((0,))
        if c0 is None or c0 != MPoly.const(self.spec, 1):
            raise NonUnitError("sqrt_unit requires constant term 1")
        half = Q(1, 2)
        g: dict[int, MPoly] = {0: MPoly.const(self.spec, 1)}
        for d in range(1, self.order + 1):
            s = self.coeffs.get((d,), MPoly.zero(self.spec))
            for i in range(1, d):
                gi, gj = g.get(i), g.get(d - i)
                if gi is not None and gj is not None:
                    s = s - gi * gj
            s = s * half
            if s:
                g[d] = s
        return Series(self.spec, self.svars, self.order, {(d,): c for d, c in g.items()})

    def exp_zero(self) -> "Series":
        """exp of a series with zero constant term, truncated at this order."""
        v = self.valuation()
        if v == 0:
            raise ValueError("exp_zero requires zero constant term")
        order = self.order
        mmax = order // v
        acc = Series.const(self.spec, self.svars, order, 1)
        for m in range(mmax, 0, -1):
            acc = (acc * self.scale(Q(1, m))).truncate(order)
            acc = acc._with_order(order) + 1
        return acc

    # -- views / embeddings --------------------------------------------------------

    def embed(self, svars: tuple[str, ...], rename: Optional[Mapping[str, str]] = None) -> "Series":
        """View this series inside a larger series-variable tuple."""
        rename = rename or {}
        svars = tuple(svars)
        idx = [svars.index(rename.get(v, v)) for v in self.svars]
        n = len(svars)
        out = {}
        for e, c in self.coeffs.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                e2[idx[i]] = k
            out[tuple(e2)] = c
        return Series(self.spec, svars, self.order, out)

    def coefficients_univariate(self) -> list[MPoly]:
        """Dense coefficient list c_0..c_order for a univariate series."""
        if len(self.svars) != 1:
            raise ValueError("univariate-only")
        return [self.coeffs.get((k,), MPoly.zero(self.spec)) for k in range(self.order + 1)]

    # -- Hurwitz view ----------------------------------------------------------

    def hurwitz_phi(self) -> dict[int, MPoly]:
        """phi_k = k! * coeff_k for a univariate series."""
        out = {}
        f = 1
        for k in range(self.order + 1):
            if k:
                f *= k
            c = self.coeffs.get((k,))
            if c is not None:
                out[k] = c * as_q(f)
        return out

    def hurwitz_view(self) -> "HurwitzView":
        return HurwitzView(base=self, phi=self.hurwitz_phi())

    def __repr__(self):
        inside = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0])))
        return f"Series[{','.join(self.svars)}; O({self.order + 1})]({inside})"

    # -- JSON -------------------------------------------------------------------

    def to_json(self) -> dict:
        kind = {1: "useries", 2: "bseries"}.get(len(self.svars), f"{len(self.svars)}series")
        return {
            "kind": kind,
            "vars": list(self.svars),
            "order": self.order,
            "terms": [
                {"exp": list(e), "coeff": c.to_json()}
                for e, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        terms = {tuple(t["exp"]): MPoly.from_json(t["coeff"]) for t in data["terms"]}
        spec = None
        for c in terms.values():
            spec = c.spec
            break
        if spec is None:
            spec = VarSpec((), ())
        return cls(spec, tuple(data["vars"]), int(data["order"]), terms)


class HurwitzView:
    """A univariate series seen through its factorial-normalized coefficients."""

    __slots__ = ("base", "phi")

    def __init__(self, base: Series, phi: Mapping[int, MPoly]):
        self.base = base
        self.phi = dict(phi)


# -- free functions matching the operation table --------------------------------


def divided_difference(s: Series, svars: tuple[str, str]) -> Series:
    """(s(x) - s(y)) / (x - y) termwise: t^a -> sum_{i<a} x^i y^(a-1-i)."""
    if len(s.svars) != 1:
        raise ValueError("divided_difference takes a univariate series")
    out: dict[tuple, MPoly] = {}
    for (a,), c in s.coeffs.items():
        for i in range(a):
            key = (i, a - 1 - i)
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return Series(s.spec, tuple(svars), s.order - 1, out)


def hurwitz_integrality_witness(
    s: Series,
    generator_scales: Mapping[str, object],
    inverted_primes: tuple[int, ...] = (),
) -> Optional[tuple[int, MPoly]]:
    """None if every phi_k = k!*c_k is an integer polynomial in the scaled generators.

    A generator entry ``name: s`` declares the ring generator ``s * name``; a
    monomial prod(v^e) rewrites to prod(scale^-e) * prod(gen^e), so the test is
    that c * prod(scale^-e) is an integer (up to the inverted primes) for every
    monomial of every phi_k.  Returns the first offending (k, phi_k) otherwise.
    """
    if len(s.svars) != 1:
        raise ValueError("hurwitz integrality is univariate-only")
    scales = {n: as_q(v) for n, v in generator_scales.items()}
    spec = s.spec
    f = 1
    for k in range(s.order + 1):
        if k:
            f *= k
        c = s.coeffs.get((k,))
        if c is None:
            continue
        phi = c * as_q(f)
        for exps, coeff in phi.terms.items():
            adjusted = coeff
            ok = True
            for name, e in zip(spec.names, exps):
                if not e:
                    continue
                sc = scales.get(name)
                if sc is None:
                    ok = False
                    break
                adjusted = adjusted / sc**e
            if not ok or not denominator_unit_outside(adjusted, inverted_primes):
                return (k, phi)
    return None
