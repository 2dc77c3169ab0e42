"""One-point curve models, places, Riemann-Roch bases and the Ore Riemann-Roch spaces.

Two models are provided:

* the projective line over F_q, coordinate t, monomials t^a with pole order a
  at infinity;
* the Hermitian curve y^q0 + y = x^(q0+1) over F_{q0^2}, monomials x^a y^b
  (0 <= b < q0) with pole order a*q0 + b*(q0+1) at its unique point at infinity.

Functions regular away from infinity are stored as sparse maps from monomial
exponents ``(a, b)`` to coefficients (b = 0 on the projective line).  All
covers are isotrivial: Y is X with constants extended to l = F_{q^r}, so every
place is unramified and rational places are inert.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence

from sympy import mobius

from .errors import PoleAtPlace
from .gf import FieldTower, FiniteField, PrimeField
from .laurent import LaurentSeries

INFINITY = "inf"

Monomial = tuple[int, int]
Place = tuple  # affine coordinates, or INFINITY

# geometric zero counting enumerates F_{q^delta}; skip when larger than this
GEOMETRIC_ENUM_LIMIT = 1 << 12


@dataclass(frozen=True)
class CurveFunction:
    """Sparse combination of monomials; coefficient field is implied by context."""

    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_map(cls, terms: Mapping[Monomial, int]) -> "CurveFunction":
        return cls(tuple(sorted((tuple(m), c) for m, c in terms.items() if c)))

    @classmethod
    def monomial(cls, mono: Monomial, c: int = 1) -> "CurveFunction":
        return cls.from_map({tuple(mono): c})

    def as_map(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms]


class CurveModel:
    def __init__(self, kind: str, k: FiniteField, q0: int | None = None):
        if kind not in ("p1", "hermitian"):
            raise ValueError(f"unknown curve kind {kind!r}")
        self.kind = kind
        self.k = k
        self.q = k.order
        self.p = k.p
        self.e = k.degree if isinstance(k.base, PrimeField) else None
        if kind == "hermitian":
            if q0 is None or q0 * q0 != self.q:
                raise ValueError(f"Hermitian curve needs q = q0^2, got q={self.q}, q0={q0}")
        self.q0 = q0 if kind == "hermitian" else None

    @classmethod
    def projective_line(cls, p: int, e: int = 1) -> "CurveModel":
        return cls("p1", FieldTower(p, e, 1).k)

    @classmethod
    def hermitian(cls, p: int, e: int, q0: int) -> "CurveModel":
        return cls("hermitian", FieldTower(p, e, 1).k, q0)

    def __repr__(self) -> str:
        extra = f", q0={self.q0}" if self.q0 else ""
        return f"CurveModel({self.kind}, q={self.q}{extra})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CurveModel) and (self.kind, self.k, self.q0) == (other.kind, other.k, other.q0)

    def __hash__(self) -> int:
        return hash((self.kind, self.k, self.q0))

    def descriptor(self) -> dict:
        d = {"kind": self.kind, "p": self.p, "e": self.k.degree}
        if self.q0 is not None:
            d["q0"] = self.q0
        return d

    @property
    def genus(self) -> int:
        if self.kind == "p1":
            return 0
        return self.q0 * (self.q0 - 1) // 2

    def pole_order(self, mono: Monomial) -> int:
        a, b = mono
        if self.kind == "p1":
            return a
        return a * self.q0 + b * (self.q0 + 1)

    def monomials_upto(self, c: int) -> list[Monomial]:
        """Reduced monomials of pole order <= c, sorted by pole order."""
        if c < 0:
            return []
        if self.kind == "p1":
            return [(a, 0) for a in range(c + 1)]
        out = [(a, b) for b in range(self.q0) for a in range(c // self.q0 + 1) if self.pole_order((a, b)) <= c]
        return sorted(out, key=self.pole_order)

    def gaps(self) -> list[int]:
        """Non-pole-numbers at infinity."""
        if self.kind == "p1":
            return []
        c = 2 * self.genus
        poles = {self.pole_order(m) for m in self.monomials_upto(c)}
        return [n for n in range(c) if n not in poles]

    def is_pole_number(self, n: int) -> bool:
        return n >= 0 and n not in self.gaps()

    def contains(self, pt: Sequence[int]) -> bool:
        if self.kind == "p1":
            return len(pt) == 1 and 0 <= pt[0] < self.q
        k, q0 = self.k, self.q0
        a, b = pt
        return k.add(k.pow(b, q0), b) == k.pow(a, q0 + 1)

    @cached_property
    def affine_rational_places(self) -> tuple[Place, ...]:
        """Affine rational points in lexicographic order of coordinates."""
        if self.kind == "p1":
            return tuple((c,) for c in range(self.q))
        return tuple((a, b) for a in range(self.q) for b in range(self.q) if self.contains((a, b)))

    @property
    def rational_places(self) -> tuple[Place, ...]:
        return self.affine_rational_places + (INFINITY,)

    # -- function arithmetic over an arbitrary coefficient field F containing k --

    def reduce(self, F, terms: Mapping[Monomial, int]) -> dict[Monomial, int]:
        """Rewrite y^q0 = x^(q0+1) - y until every monomial is reduced."""
        out: dict[Monomial, int] = {}
        todo = [(m, c) for m, c in terms.items() if c]
        q0 = self.q0
        while todo:
            (a, b), c = todo.pop()
            if self.kind == "hermitian" and b >= q0:
                todo.append(((a + q0 + 1, b - q0), c))
                todo.append(((a, b - q0 + 1), F.neg(c)))
                continue
            out[(a, b)] = F.add(out.get((a, b), 0), c)
        return {m: c for m, c in out.items() if c}

    def fn_mul(self, F, f: CurveFunction, g: CurveFunction) -> CurveFunction:
        acc: dict[Monomial, int] = {}
        for (a1, b1), c1 in f.terms:
            for (a2, b2), c2 in g.terms:
                m = (a1 + a2, b1 + b2)
                acc[m] = F.add(acc.get(m, 0), F.mul(c1, c2))
        return CurveFunction.from_map(self.reduce(F, acc))

    def fn_add(self, F, f: CurveFunction, g: CurveFunction) -> CurveFunction:
        acc = dict(f.terms)
        for m, c in g.terms:
            acc[m] = F.add(acc.get(m, 0), c)
        return CurveFunction.from_map(acc)

    def fn_pole_order(self, f: CurveFunction) -> int:
        if f.is_zero():
            raise ValueError("zero function")
        return max(self.pole_order(m) for m in f.monomials())

    def evaluate(self, F, f: CurveFunction, pt: Sequence[int]) -> int:
        acc = 0
        if self.kind == "p1":
            (x0,) = pt
            for (a, _), c in f.terms:
                acc = F.add(acc, F.mul(c, F.pow(x0, a)))
            return acc
        x0, y0 = pt
        for (a, b), c in f.terms:
            acc = F.add(acc, F.mul(c, F.mul(F.pow(x0, a), F.pow(y0, b))))
        return acc

    # -- local expansions at affine rational points --

    def local_expansion(self, f: CurveFunction, pt: Sequence[int], prec: int) -> LaurentSeries:
        """f expanded in the uniformizer u = x - x(pt), to absolute precision ``prec``."""
        k = self.k
        u = LaurentSeries(k, 1, (1,), prec)
        X = LaurentSeries.constant(k, pt[0], prec) + u
        if self.kind == "p1":
            Y = LaurentSeries.constant(k, 0, prec)
        else:
            # the curve is smooth with dF/dy = 1, so x - x0 is a uniformizer everywhere affine
            q0 = self.q0
            x0, y0 = pt
            Xp = _series_pow(X, q0 + 1)
            g = Xp - LaurentSeries.constant(k, k.pow(x0, q0 + 1), prec)
            z = LaurentSeries.zero(k, prec)
            for _ in range(prec + 1):
                z_next = g - _series_pow(z, q0)
                if z_next == z:
                    break
                z = z_next
            Y = LaurentSeries.constant(k, y0, prec) + z
        acc = LaurentSeries.zero(k, prec)
        for (a, b), c in f.terms:
            term = LaurentSeries.constant(k, c, prec) * _series_pow(X, a) * _series_pow(Y, b)
            acc = acc + term
        return acc

    def valuation_at(self, f: CurveFunction, pt: Place) -> int:
        """v_pt(f) for a k-rational place and a nonzero function regular off infinity."""
        if pt == INFINITY:
            return -self.fn_pole_order(f)
        h = self.fn_pole_order(f)
        s = self.local_expansion(f, pt, h + 2)
        v = s.valuation()
        if v == float("inf"):
            raise ArithmeticError("function vanishes beyond its pole order")  # pragma: no cover
        return int(v)

    # -- zeros over extensions of k --

    def _points_over(self, E: FiniteField) -> Iterable[tuple[int, ...]]:
        if self.kind == "p1":
            for c in range(E.order):
                yield (c,)
            return
        q0 = self.q0
        fibre: dict[int, list[int]] = {}
        for y in range(E.order):
            fibre.setdefault(E.add(E.pow(y, q0), y), []).append(y)
        for x in range(E.order):
            for y in fibre.get(E.pow(x, q0 + 1), ()):
                yield (x, y)

    def count_zeros_over(self, f: CurveFunction, delta: int) -> int:
        """Number of affine points with coordinates in F_{q^delta} where f vanishes."""
        E = FieldTower(self.p, self.k.degree, delta, modulus_k=self.k.modulus).l
        return sum(1 for pt in self._points_over(E) if self.evaluate(E, f, pt) == 0)


def _series_pow(s: LaurentSeries, n: int) -> LaurentSeries:
    out = LaurentSeries.constant(s.field, 1, s.prec if s.prec != float("inf") else float("inf"))
    for _ in range(n):
        out = out * s
    return out


@dataclass(frozen=True)
class XFunction:
    """A function with a single pole, at infinity, of order h."""

    fn: CurveFunction
    h: int
    rational_zeros: tuple[tuple[Place, int], ...]
    # degrees of the non-rational zero places, each a simple zero; None when unknown
    other_zero_degrees: tuple[int, ...] | None
    simple_zeros: bool

    @property
    def zero_places_known(self) -> bool:
        return self.other_zero_degrees is not None


@dataclass(frozen=True)
class PlaceData:
    place: object
    degree: int
    v_x: int
    e: int = 1
    r: int = 1

    @property
    def rho(self) -> Fraction:
        return Fraction(self.e * self.v_x, self.r)

    @property
    def a(self) -> int:
        return self.rho.numerator

    @property
    def b(self) -> int:
        return self.rho.denominator


def analyze_x(curve: CurveModel, fn: CurveFunction) -> XFunction:
    """Zero data of a nonconstant function regular away from infinity."""
    h = curve.fn_pole_order(fn)
    if h == 0:
        raise ValueError("x must be nonconstant")
    zeros = []
    for pt in curve.affine_rational_places:
        if curve.evaluate(curve.k, fn, pt) == 0:
            zeros.append((pt, curve.valuation_at(fn, pt)))
    return _finish_x(curve, fn, h, tuple(zeros))


def _finish_x(curve: CurveModel, fn: CurveFunction, h: int, zeros: tuple) -> XFunction:
    rest = h - sum(mu for _, mu in zeros)
    rational_simple = all(mu == 1 for _, mu in zeros)
    if rest == 0:
        return XFunction(fn, h, zeros, (), rational_simple)
    if not rational_simple or curve.q**rest > GEOMETRIC_ENUM_LIMIT:
        return XFunction(fn, h, zeros, None, False)
    # exact-degree point counts by Moebius inversion of the counts over F_{q^delta}
    counts = {1: len(zeros)}
    for delta in range(2, rest + 1):
        counts[delta] = curve.count_zeros_over(fn, delta)
    degrees: list[int] = []
    for delta in range(2, rest + 1):
        exact = sum(mobius(delta // dd) * counts[dd] for dd in counts if delta % dd == 0)
        degrees += [delta] * (exact // delta)
    if sum(degrees) == rest:
        return XFunction(fn, h, zeros, tuple(degrees), True)
    return XFunction(fn, h, zeros, None, False)


def target_pole_order(curve: CurveModel, r: int) -> int:
    """Smallest pole number n >= max(2g, 1) coprime with r."""
    n = max(2 * curve.genus, 1)
    while gcd(n, r) != 1 or not curve.is_pole_number(n):
        n += 1
    return n


def choose_x(curve: CurveModel, r: int) -> XFunction:
    """Deterministic one-pole function of pole order h at infinity.

    Candidates are the leading monomial of pole order h plus every combination
    of lower monomials, coefficient vectors in lexicographic order (lowest pole
    order most significant).  The first candidate with h distinct rational
    zeros wins; failing that the first one with simple zeros; failing that the
    first candidate.
    """
    h = target_pole_order(curve, r)
    monos = curve.monomials_upto(h)
    lead = next(m for m in monos if curve.pole_order(m) == h)
    lower = [m for m in monos if curve.pole_order(m) < h]
    points = curve.affine_rational_places
    k = curve.k
    candidates = []
    for coeffs in itertools.product(range(curve.q), repeat=len(lower)):
        terms = dict(zip(lower, coeffs))
        terms[lead] = 1
        fn = CurveFunction.from_map(terms)
        zeros = [pt for pt in points if curve.evaluate(k, fn, pt) == 0]
        if len(zeros) == h:
            return _finish_x(curve, fn, h, tuple((pt, 1) for pt in zeros))
        candidates.append(fn)
    first = None
    for fn in candidates:
        x = analyze_x(curve, fn)
        if x.simple_zeros:
            return x
        first = first or x
    return first


def t_function(curve: CurveModel, power: int = 1) -> XFunction:
    """t^power on the projective line."""
    if curve.kind != "p1":
        raise ValueError("t is a coordinate of the projective line")
    return analyze_x(curve, CurveFunction.monomial((power, 0)))


def place_data(curve: CurveModel, x: XFunction, r: int) -> list[PlaceData]:
    """Places where x has a zero or pole; every other place has rho = 0, b = 1."""
    out = [PlaceData(INFINITY, 1, -x.h, 1, r)]
    out += [PlaceData(pt, 1, mu, 1, r) for pt, mu in x.rational_zeros]
    if x.other_zero_degrees:
        out += [PlaceData(("closed", i, deg), deg, 1, 1, r) for i, deg in enumerate(x.other_zero_degrees)]
    return out


def rr_basis(curve: CurveModel, c: int) -> list[Monomial]:
    """Monomial basis of L(c * P_inf)."""
    return curve.monomials_upto(c)


@dataclass(frozen=True)
class LambdaBasis:
    elements: tuple[tuple[Monomial, int], ...]
    exact: bool
    dims: tuple[int, ...]


def lambda_floor(m: int, i: int, h: int, r: int) -> int:
    """Coefficient of E_i at infinity: floor((m - i h) / r)."""
    return (m - i * h) // r


def lambda_basis(curve: CurveModel, x: XFunction, r: int, m: int) -> LambdaBasis:
    """l-basis of Lambda_{L,x}(E), E = (m/r) * q_inf, as pairs (monomial, power of T).

    Positive floor contributions at zeros of x are dropped, so when ``exact`` is
    False the result spans a subspace of Lambda_{L,x}(E).
    """
    elems = []
    dims = []
    for i in range(r):
        basis = rr_basis(curve, lambda_floor(m, i, x.h, r))
        dims.append(len(basis))
        elems += [(mono, i) for mono in basis]
    exact = x.zero_places_known and all(
        (i * pd.v_x) // r == 0 for pd in place_data(curve, x, r)[1:] for i in range(r)
    )
    return LambdaBasis(tuple(elems), exact, tuple(dims))


def _require_complete(x: XFunction) -> None:
    if not x.zero_places_known:
        raise ValueError("zero places of x are not fully known")


def floor_degree_sum(curve: CurveModel, x: XFunction, r: int, m: int) -> int:
    """sum_i deg_Y(E_i) with floors taken at every place, zeros of x included."""
    _require_complete(x)
    pds = place_data(curve, x, r)
    total = 0
    for i in range(r):
        for pd in pds:
            n = Fraction(m, r) if pd.place == INFINITY else Fraction(0)
            total += (n + i * pd.rho).__floor__() * r * pd.degree
    return total


def ramification_sum(curve: CurveModel, x: XFunction, r: int) -> Fraction:
    """sum_pl (b_pl - 1)/(b_pl e_pl) deg(pl)."""
    _require_complete(x)
    return sum((Fraction(pd.b - 1, pd.b * pd.e) * pd.degree for pd in place_data(curve, x, r)), Fraction(0))


def degree_identity_rhs(curve: CurveModel, x: XFunction, r: int, m: int) -> Fraction:
    """r deg_Y(E) - (r^2/2) sum (b-1)/(b e) deg, with deg_Y(E) = m."""
    return r * m - Fraction(r * r, 2) * ramification_sum(curve, x, r)


def dim_bound(curve: CurveModel, x: XFunction, r: int, m: int) -> Fraction:
    """Lower bound m - r(g - 1) - (r/2) sum (b-1)/b deg on the l-dimension of Lambda.

    If some zero places of x are unknown, their part of the sum is replaced by
    its maximum (r-1)/r times the unaccounted zero degree, which keeps the
    bound valid.
    """
    g = curve.genus
    if x.zero_places_known:
        s = ramification_sum(curve, x, r)
    else:
        known = [PlaceData(INFINITY, 1, -x.h, 1, r)] + [PlaceData(pt, 1, mu, 1, r) for pt, mu in x.rational_zeros]
        s = sum((Fraction(pd.b - 1, pd.b) for pd in known), Fraction(0))
        rest = x.h - sum(mu for _, mu in x.rational_zeros)
        s += Fraction(r - 1, r) * rest
    return m - r * (g - 1) - Fraction(r, 2) * s


def check_h1(curve: CurveModel, x: XFunction, r: int) -> bool:
    """Some rational place (inert in the isotrivial cover) has v(x) coprime with r."""
    vals = [-x.h] + [mu for _, mu in x.rational_zeros]
    if len(x.rational_zeros) < len(curve.affine_rational_places):
        vals.append(0)
    return any(gcd(abs(v), r) == 1 for v in vals)


def check_h2(curve: CurveModel, x: XFunction, r: int, pl: Place) -> bool:
    """Local norm condition at pl, certified when v_pl(x) = 0."""
    if pl == INFINITY:
        return False
    return curve.evaluate(curve.k, x.fn, pl) != 0


def eval_function(curve: CurveModel, phi: CurveFunction, pl: Place, F=None) -> int:
    """phi(pl); ``F`` is the coefficient field (defaults to k)."""
    F = curve.k if F is None else F
    if pl == INFINITY:
        if all(m == (0, 0) for m in phi.monomials()):
            return phi.terms[0][1] if phi.terms else 0
        raise PoleAtPlace("nonconstant function has a pole at infinity")
    return curve.evaluate(F, phi, pl)


class CurveFunctionRing:
    """Functions on Y regular off infinity with coefficients in l; Phi acts on constants."""

    is_field = False

    def __init__(self, curve: CurveModel, tower: FieldTower):
        if tower.k != curve.k:
            raise ValueError("tower base field differs from the curve's field")
        self.curve = curve
        self.tower = tower
        self.F = tower.l
        self.phi_order = tower.r
        self.zero = CurveFunction(())
        self.one = CurveFunction.monomial((0, 0), 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, CurveFunctionRing) and other.curve == self.curve and other.F == self.F

    def __hash__(self) -> int:
        return hash((self.curve, self.F))

    def add(self, a, b):
        return self.curve.fn_add(self.F, a, b)

    def neg(self, a):
        return CurveFunction.from_map({m: self.F.neg(c) for m, c in a.terms})

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self.curve.fn_mul(self.F, a, b)

    def inv(self, a):
        if len(a.terms) == 1 and a.terms[0][0] == (0, 0):
            return CurveFunction.monomial((0, 0), self.F.inv(a.terms[0][1]))
        raise ZeroDivisionError("only nonzero constants are units")

    def phi(self, a, j: int = 1):
        return CurveFunction.from_map({m: self.F.phi(c, j) for m, c in a.terms})

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def eq(self, a, b) -> bool:
        return a == b
