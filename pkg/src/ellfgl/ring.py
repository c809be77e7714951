"""Sparse multivariate polynomials over exact rationals, with an integer grading.

An MPoly lives over a VarSpec: an ordered list of variable names, each with an
integer weight (e.g. weight(mu_i) = -2i).  Monomials are exponent tuples; only
nonzero coefficients are stored.  Values are immutable after construction and
all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .rat import Q, SCALAR_TYPES, as_q, is_integral, parse_q, qstr


class SpecMismatchError(ValueError):
    """Operands live over different VarSpecs."""


class QuotientError(ValueError):
    """A quotient map was applied to an element outside its domain."""


@dataclass(frozen=True)
class VarSpec:
    """Ordered variable names with integer weights; the order is the monomial tiebreak."""

    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def monomial_weight(self, exps: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))


EMPTY_SPEC = VarSpec((), ())

Scalar = Union[int, "Q"]


def _grlex_key(item):
    exps = item[0]
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial: map from exponent tuple to nonzero rational coefficient."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: VarSpec, terms: Optional[Mapping[tuple, Q]] = None):
        self.spec = spec
        clean = {}
        if terms:
            n = spec.nvars
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match {n} variables")
                c = as_q(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, spec: VarSpec) -> "MPoly":
        return cls(spec)

    @classmethod
    def const(cls, spec: VarSpec, value) -> "MPoly":
        value = as_q(value)
        if not value:
            return cls(spec)
        return cls(spec, {(0,) * spec.nvars: value})

    @classmethod
    def variable(cls, spec: VarSpec, name: str) -> "MPoly":
        i = spec.index(name)
        exps = tuple(1 if j == i else 0 for j in range(spec.nvars))
        return cls(spec, {exps: as_q(1)})

    @classmethod
    def monomial(cls, spec: VarSpec, exps: tuple[int, ...], coeff=1) -> "MPoly":
        return cls(spec, {tuple(exps): as_q(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Q:
        zero_exp = (0,) * self.spec.nvars
        for exps, c in self.terms.items():
            if exps != zero_exp:
                raise ValueError("polynomial is not constant")
        return self.terms.get(zero_exp, as_q(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def weight(self) -> Optional[int]:
        """Common weight if homogeneous, else None.  The zero polynomial has weight 0."""
        ws = {self.spec.monomial_weight(e) for e in self.terms}
        if not ws:
            return 0
        if len(ws) == 1:
            return ws.pop()
        return None

    def coefficient(self, exps: tuple[int, ...]) -> Q:
        return self.terms.get(tuple(exps), as_q(0))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = MPoly.const(self.spec, other)
        self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps)
            s = c if s is None else s + c
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        p = MPoly.__new__(MPoly)
        p.spec, p.terms = self.spec, out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly.__new__(MPoly)
        p.spec = self.spec
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = MPoly.const(self.spec, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            c = as_q(other)
            if not c:
                return MPoly(self.spec)
            p = MPoly.__new__(MPoly)
            p.spec = self.spec
            p.terms = {e: c * v for e, v in self.terms.items()}
            return p
        self._check(other)
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(map(int.__add__, e1, e2))
                s = out.get(key)
                v = c1 * c2
                out[key] = v if s is None else s + v
        p = MPoly.__new__(MPoly)
        p.spec = self.spec
        p.terms = {e: c for e, c in out.items() if c}
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.const(self.spec, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = MPoly.const(self.spec, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    # -- structure maps ----------------------------------------------------

    def map_coefficients(self, fn) -> "MPoly":
        return MPoly(self.spec, {e: fn(c) for e, c in self.terms.items()})

    def derivative(self, name: str) -> "MPoly":
        i = self.spec.index(name)
        out = {}
        for exps, c in self.terms.items():
            k = exps[i]
            if k:
                e2 = exps[:i] + (k - 1,) + exps[i + 1 :]
                out[e2] = out.get(e2, as_q(0)) + c * k
        return MPoly(self.spec, out)

    def specialize(self, assignment: Mapping[str, object], target: Optional[VarSpec] = None) -> "MPoly":
        """Substitute values (scalars or MPolys over a common target spec) for variables.

        Unassigned variables must exist in the target spec under the same name.
        """
        if not assignment:
            return self
        for name in assignment:
            self.spec.index(name)
        if target is None:
            target = next(
                (v.spec for v in assignment.values() if isinstance(v, MPoly)), self.spec
            )
        values: dict[str, MPoly] = {}
        for name, v in assignment.items():
            if isinstance(v, MPoly):
                if v.spec != target:
                    raise SpecMismatchError("substituted value over incompatible VarSpec")
                values[name] = v
            else:
                values[name] = MPoly.const(target, v)
        power_cache: dict[tuple[str, int], MPoly] = {}

        def cached_pow(name: str, e: int) -> MPoly:
            key = (name, e)
            if key not in power_cache:
                power_cache[key] = values[name] ** e
            return power_cache[key]

        out = MPoly.zero(target)
        for exps, c in self.terms.items():
            term = MPoly.const(target, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = self.spec.names[i]
                if name in values:
                    term = term * cached_pow(name, e)
                else:
                    term = term * MPoly.monomial(
                        target,
                        tuple(e if j == target.index(name) else 0 for j in range(target.nvars)),
                    )
            out = out + term
        return out

    def rename(self, target: VarSpec) -> "MPoly":
        """Re-home onto a spec containing (at least) the same variable names."""
        idx = [target.index(n) for n in self.spec.names]
        out = {}
        for exps, c in self.terms.items():
            e2 = [0] * target.nvars
            for i, e in enumerate(exps):
                e2[idx[i]] = e
            out[tuple(e2)] = c
        return MPoly(target, out)

    # -- text / JSON -------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=_grlex_key, reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [
                f"{n}^{e}" if e > 1 else n
                for n, e in zip(self.spec.names, exps)
                if e
            ]
            if not factors:
                parts.append(qstr(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(qstr(c) + "*" + "*".join(factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = to_text
    __str__ = to_text

    def to_json(self) -> dict:
        return {
            "vars": list(self.spec.names),
            "weights": list(self.spec.weights),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MPoly":
        spec = VarSpec(tuple(data["vars"]), tuple(data["weights"]))
        terms = {
            tuple(t["exp"]): Q(int(t["num"]), int(t.get("den", 1)))
            for t in data["terms"]
        }
        return cls(spec, terms)


def poly_from_text(spec: VarSpec, text: str) -> MPoly:
    """Inverse of to_text for simple sums of c*var^e products (CLI input)."""
    text = text.replace("- ", "+ -").replace(" ", "")
    out = MPoly.zero(spec)
    if text in ("", "0"):
        return out
    for chunk in text.split("+"):
        if not chunk:
            continue
        coeff = as_q(1)
        exps = [0] * spec.nvars
        if chunk.startswith("-"):
            coeff = -coeff
            chunk = chunk[1:]
        for factor in chunk.split("*"):
            if "^" in factor:
                name, e = factor.split("^")
                exps[spec.index(name)] += int(e)
            elif factor and factor[0].isalpha():
                exps[spec.index(factor)] += 1
            else:
                coeff = coeff * parse_q(factor)
        out = out + MPoly.monomial(spec, tuple(exps), coeff)
    return out


# -- quotient maps ----------------------------------------------------------


@dataclass(frozen=True)
class QuotientSpec:
    """One of: coefficient reduction mod p, decomposables, or a monic quadratic relation."""

    kind: str  # "mod-prime" | "decomposables" | "relation"
    prime: Optional[int] = None
    generators: tuple[str, ...] = ()
    variable: Optional[str] = None
    rewrite: Optional[MPoly] = None  # replacement for variable**2

    @classmethod
    def mod_prime(cls, p: int) -> "QuotientSpec":
        if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"{p} is not prime")
        return cls(kind="mod-prime", prime=p)

    @classmethod
    def decomposables(cls, generators: Iterable[str]) -> "QuotientSpec":
        return cls(kind="decomposables", generators=tuple(generators))

    @classmethod
    def relation(cls, relation: MPoly, variable: str) -> "QuotientSpec":
        """Relation must be monic of degree 2 in the eliminated variable."""
        i = relation.spec.index(variable)
        square = tuple(2 if j == i else 0 for j in range(relation.spec.nvars))
        if relation.coefficient(square) != 1:
            raise ValueError("relation must be monic of degree 2 in the eliminated variable")
        rewrite = MPoly.monomial(relation.spec, square) - relation
        if any(e[i] for e in rewrite.terms):
            raise ValueError("relation is not quadratic in the eliminated variable")
        return cls(kind="relation", variable=variable, rewrite=rewrite)


def quotient_map(p: MPoly, q: QuotientSpec) -> MPoly:
    """Canonical representative of p in the quotient described by q."""
    if q.kind == "mod-prime":
        out = {}
        for exps, c in p.terms.items():
            if not is_integral(c):
                raise QuotientError(f"mod-{q.prime} applied to non-integer coefficient {c}")
            r = int(c.numerator) % q.prime
            if r:
                out[exps] = as_q(r)
        return MPoly(p.spec, out)
    if q.kind == "decomposables":
        idx = [p.spec.index(n) for n in q.generators]
        out = {}
        for exps, c in p.terms.items():
            if sum(exps[i] for i in idx) < 2:
                out[exps] = c
        return MPoly(p.spec, out)
    if q.kind == "relation":
        i = p.spec.index(q.variable)
        out = MPoly.zero(p.spec)
        for exps, c in p.terms.items():
            k, r = divmod(exps[i], 2)
            base = exps[:i] + (r,) + exps[i + 1 :]
            out = out + MPoly.monomial(p.spec, base, c) * (q.rewrite**k)
        return out
    raise ValueError(f"unknown quotient kind {q.kind!r}")


def nu(n: int) -> int:
    """gcd of the interior binomial coefficients C(n,k), k = 1..n-1."""
    if n < 2:
        raise ValueError("nu(n) requires n >= 2")
    g = 0
    for k in range(1, n):
        g = math.gcd(g, math.comb(n, k))
        if g == 1:
            return 1
    return g
