"""Truncated Laurent series, the product ring L = L_0^m, and valuations on D_{L,x}.

L_0 = F_{q^d}((t)) is modelled unramified over K = k((t)); its automorphism
Phi_0 acts on coefficients by the q-Frobenius.  On L = L_0^m the automorphism
is the shift (a_1, ..., a_m) -> (Phi_0(a_m), a_1, ..., a_{m-1}) of order m*d.

Precision is absolute and tracked pessimistically: a series with ``prec = N``
knows its coefficients of exponent < N only.  Exact series carry
``prec = math.inf``.  Any valuation that cannot be certified raises
:class:`PrecisionExhausted`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, ModulusNotOne, NotIntegral, PrecisionExhausted
from .gf import FieldTower, FiniteField, MatK
from .ore import QuotientElem, nrd

DEFAULT_PREC = 64

INF = math.inf


@dataclass(frozen=True)
class LaurentSeries:
    field: FiniteField = dc_field(compare=False, repr=False)
    val: int
    coeffs: tuple[int, ...]
    prec: float = INF

    def __post_init__(self):
        cs = list(self.coeffs)
        val = self.val
        if self.prec != INF:
            keep = max(0, int(self.prec) - val)
            cs = cs[:keep]
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        cs = cs[lead:]
        val += lead
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            val = 0
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "val", val)

    # -- constructors --

    @classmethod
    def zero(cls, F, prec: float = INF) -> "LaurentSeries":
        return cls(F, 0, (), prec)

    @classmethod
    def constant(cls, F, c: int, prec: float = INF) -> "LaurentSeries":
        return cls(F, 0, (c,), prec)

    @classmethod
    def monomial(cls, F, c: int, n: int, prec: float = INF) -> "LaurentSeries":
        return cls(F, n, (c,), prec)

    @classmethod
    def random(cls, F, rng: random.Random, val: int, nterms: int, prec: int | None = None) -> "LaurentSeries":
        """Series with exact valuation ``val`` and ``nterms`` known coefficients."""
        lead = rng.randrange(1, F.order)
        rest = [rng.randrange(F.order) for _ in range(nterms - 1)]
        return cls(F, val, (lead, *rest), val + nterms if prec is None else prec)

    # -- queries --

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_zero(self) -> bool:
        """Indistinguishable from 0 at the stored precision."""
        return not self.coeffs

    def valuation(self) -> float:
        """v_t, or ``inf`` when no nonzero coefficient is known."""
        return self.val if self.coeffs else INF

    def lower_bound(self) -> float:
        """Certified lower bound for v_t."""
        return self.val if self.coeffs else self.prec

    def coeff(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{n} beyond precision {self.prec}")
        i = n - self.val
        if self.coeffs and 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def residue(self) -> int:
        """Coefficient of t^0 for a series of nonnegative valuation."""
        if self.coeffs and self.val < 0:
            raise NotIntegral("negative valuation")
        if not self.coeffs and self.prec <= 0:
            raise PrecisionExhausted("residue not known")
        return self.coeff(0)

    # -- arithmetic --

    def _span(self, other: "LaurentSeries", prec: float) -> tuple[int, int]:
        lo = min(x.val for x in (self, other) if x.coeffs) if (self.coeffs or other.coeffs) else 0
        hi = max(x.val + len(x.coeffs) for x in (self, other))
        if prec != INF:
            hi = min(hi, int(prec))
        return lo, hi

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        prec = min(self.prec, other.prec)
        if not self.coeffs and not other.coeffs:
            return LaurentSeries(F, 0, (), prec)
        lo, hi = self._span(other, prec)
        cs = [F.add(self.coeff_unchecked(n), other.coeff_unchecked(n)) for n in range(lo, hi)]
        return LaurentSeries(F, lo, tuple(cs), prec)

    def coeff_unchecked(self, n: int) -> int:
        i = n - self.val
        if self.coeffs and 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __neg__(self) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(F, self.val, tuple(F.neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        prec = min(self.lower_bound() + other.prec, other.lower_bound() + self.prec)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries(F, 0, (), prec)
        v = self.val + other.val
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec != INF:
            n = min(n, int(prec) - v)
        out = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentSeries(F, v, tuple(out), prec)

    def inverse(self, default_prec: int = DEFAULT_PREC) -> "LaurentSeries":
        F = self.field
        if not self.coeffs:
            if self.is_exact:
                raise ZeroDivisionError("inverse of 0")
            raise PrecisionExhausted("cannot invert a series indistinguishable from 0")
        v = self.val
        if self.is_exact and len(self.coeffs) == 1:
            return LaurentSeries(F, -v, (F.inv(self.coeffs[0]),))
        rel = default_prec if self.is_exact else int(self.prec) - v
        c = self.coeffs
        b0 = F.inv(c[0])
        b = [b0]
        for n in range(1, rel):
            acc = 0
            for i in range(1, min(n, len(c) - 1) + 1):
                acc = F.add(acc, F.mul(c[i], b[n - i]))
            b.append(F.neg(F.mul(b0, acc)))
        return LaurentSeries(F, -v, tuple(b), -v + rel)

    def frobenius(self, j: int = 1) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(F, self.val, tuple(F.phi(c, j) for c in self.coeffs), self.prec)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by t^n."""
        return LaurentSeries(self.field, self.val + n, self.coeffs, self.prec + n)

    def truncate(self, prec: float) -> "LaurentSeries":
        return LaurentSeries(self.field, self.val, self.coeffs, min(prec, self.prec))


@dataclass(frozen=True)
class ProductRingElem:
    blocks: tuple[LaurentSeries, ...]


class ProductRing:
    """L = L_0^m with L_0 = F_{q^d}((t)) unramified over k((t))."""

    is_field = False

    def __init__(self, tower: FieldTower, m: int = 1, default_prec: int = DEFAULT_PREC):
        if m < 1:
            raise ValueError("m must be >= 1")
        self.tower = tower
        self.F = tower.l
        self.m = m
        self.d = tower.r
        self.phi_order = m * tower.r
        self.default_prec = default_prec
        self.zero = self.constant(0)
        self.one = self.constant(1)

    def __repr__(self) -> str:
        return f"ProductRing(q={self.tower.q}, d={self.d}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductRing) and other.F == self.F and other.m == self.m

    def __hash__(self) -> int:
        return hash((self.F, self.m))

    # -- construction --

    def constant(self, c: int) -> ProductRingElem:
        return ProductRingElem((LaurentSeries.constant(self.F, c),) * self.m)

    def embed(self, s: LaurentSeries) -> ProductRingElem:
        """Diagonal embedding of K (or L_0) into L."""
        return ProductRingElem((LaurentSeries(self.F, s.val, s.coeffs, s.prec),) * self.m)

    def element(self, blocks: Sequence[LaurentSeries]) -> ProductRingElem:
        if len(blocks) != self.m:
            raise ValueError(f"expected {self.m} blocks")
        return ProductRingElem(tuple(blocks))

    def random(self, rng: random.Random, vmin: int = -2, vmax: int = 2, nterms: int = 8, zero_prob: float = 0.0):
        blocks = []
        for _ in range(self.m):
            if rng.random() < zero_prob:
                blocks.append(LaurentSeries.zero(self.F))
            else:
                blocks.append(LaurentSeries.random(self.F, rng, rng.randint(vmin, vmax), nterms))
        return ProductRingElem(tuple(blocks))

    # -- ring interface --

    def add(self, a, b):
        return ProductRingElem(tuple(x + y for x, y in zip(a.blocks, b.blocks)))

    def sub(self, a, b):
        return ProductRingElem(tuple(x - y for x, y in zip(a.blocks, b.blocks)))

    def neg(self, a):
        return ProductRingElem(tuple(-x for x in a.blocks))

    def mul(self, a, b):
        return ProductRingElem(tuple(x * y for x, y in zip(a.blocks, b.blocks)))

    def inv(self, a):
        return ProductRingElem(tuple(x.inverse(self.default_prec) for x in a.blocks))

    def is_zero(self, a) -> bool:
        return all(x.is_zero() for x in a.blocks)

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def phi(self, a, j: int = 1):
        return shift_frobenius(a, j)

    def is_invertible(self, a) -> bool:
        return all(not x.is_zero() for x in a.blocks)


def shift_frobenius(a: ProductRingElem, j: int = 1) -> ProductRingElem:
    """(a_1, ..., a_m) -> (Phi_0(a_m), a_1, ..., a_{m-1}), applied j times."""
    blocks = list(a.blocks)
    for _ in range(j):
        blocks = [blocks[-1].frobenius(1)] + blocks[:-1]
    return ProductRingElem(tuple(blocks))


def v_jt(a: ProductRingElem, j: int) -> float:
    """Valuation of block j (1-based); ``inf`` if that block is zero at precision."""
    if not 1 <= j <= len(a.blocks):
        raise IndexOutOfRange(f"block index {j} not in [1, {len(a.blocks)}]")
    return a.blocks[j - 1].valuation()


def vt_x(f: QuotientElem) -> int:
    v = f.x.blocks[0].valuation()
    if v == INF:
        raise PrecisionExhausted("v_t(x) unknown")
    return v


def _w_parts(f: QuotientElem, j: int) -> tuple[float, float]:
    """(minimum over certified terms, lower bound over uncertified terms)."""
    if not 1 <= j <= f.ring.m:
        raise IndexOutOfRange(f"block index {j} not in [1, {f.ring.m}]")
    vx = Fraction(vt_x(f), f.r)
    certain: float = INF
    uncertain: float = INF
    for i, a in enumerate(f.coeffs):
        s = a.blocks[j - 1]
        if s.coeffs:
            certain = min(certain, s.val + i * vx)
        elif not s.is_exact:
            uncertain = min(uncertain, s.prec + i * vx)
    return certain, uncertain


def w_jx(f: QuotientElem, j: int):
    """min_i (v_{j,t}(a_i) + i v_t(x)/r) as a Fraction, or ``inf`` for f = 0."""
    certain, uncertain = _w_parts(f, j)
    if uncertain < certain:
        raise PrecisionExhausted(f"w_{j},x not certified at the stored precision")
    return certain


def w_x(f: QuotientElem):
    return min(w_jx(f, j) for j in range(1, f.ring.m + 1))


def in_lambda(f: QuotientElem) -> bool:
    """Membership in the order Lambda_{L,x}: every w_{j,x}(f) >= 0."""
    for j in range(1, f.ring.m + 1):
        certain, uncertain = _w_parts(f, j)
        if certain < 0:
            return False
        if uncertain < 0:
            raise PrecisionExhausted("membership not certified")
    return True


def local_ore(ring: ProductRing, coeffs: Sequence[ProductRingElem], x: LaurentSeries | ProductRingElem) -> QuotientElem:
    """Element of D_{L,x} with x in K = k((t)) embedded diagonally."""
    if isinstance(x, LaurentSeries):
        x = ring.embed(x)
    return QuotientElem(ring, tuple(coeffs), x)


def _constant_phi(F: FiniteField, v: list[int], j: int) -> list[int]:
    for _ in range(j):
        v = [F.phi(v[-1], 1)] + v[:-1]
    return v


def epsilon_bar(f: QuotientElem) -> MatK:
    """Reduction mod t of f(Phi) acting on O_L/tO_L = F_{q^d}^m, as an r x r matrix over k.

    Basis order: block-major, power basis of F_{q^d} inside each block.
    """
    R: ProductRing = f.ring
    if not R.eq(f.x, R.one):
        raise ModulusNotOne("epsilon_bar needs x = 1")
    if not in_lambda(f):
        raise NotIntegral("f is not in Lambda_{L,1}")
    F, m, d = R.F, R.m, R.d
    res = [[blk.residue() for blk in a.blocks] for a in f.coeffs]
    k = R.tower.k
    cols = []
    for jb in range(m):
        for c in range(d):
            v = [0] * m
            v[jb] = R.tower.beta_powers[c]
            out = [0] * m
            for i, abar in enumerate(res):
                pv = _constant_phi(F, v, i)
                out = [F.add(o, F.mul(a, b)) for o, a, b in zip(out, abar, pv)]
            cols.append([digit for blk in out for digit in F.coords(blk)])
    r = m * d
    return MatK(k, tuple(tuple(cols[c][u] for c in range(r)) for u in range(r)))


def nrd_valuation(f: QuotientElem) -> tuple[float, bool]:
    """(v_t(Nrd f), True) when certified, else (lower bound, False)."""
    N = nrd(f)
    s = N.blocks[0]
    if s.coeffs:
        return s.val, True
    if s.is_exact:
        return INF, True
    return s.prec, False


def _certify_geq(f: QuotientElem, bound) -> bool:
    v, exact = nrd_valuation(f)
    if exact or v >= bound:
        return v >= bound
    raise PrecisionExhausted(f"v_t(Nrd) known only to be >= {v}, need {bound}")


def nrd_vs_w_holds(f: QuotientElem) -> bool:
    """v_t(Nrd f) >= d * sum_j w_{j,x}(f), certified."""
    R: ProductRing = f.ring
    total = sum(w_jx(f, j) for j in range(1, R.m + 1))
    if total == INF:
        return True
    return _certify_geq(f, R.d * total)


def nrd_vs_kernel_holds(f: QuotientElem) -> tuple[bool, int]:
    """v_t(Nrd f) >= dim_k ker epsilon_bar(f) for f in Lambda_{L,1}; also returns the kernel dim."""
    kdim = epsilon_bar(f).kernel_dim()
    return _certify_geq(f, kdim), kdim
