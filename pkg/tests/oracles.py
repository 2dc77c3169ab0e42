"""Brute-force reference implementations used to derive expected values.

Nothing here reuses the arithmetic of the package under test: field elements
are unpacked into coefficient tuples and multiplied as polynomials, ranks are
found by counting kernel vectors, and so on.
"""

from __future__ import annotations

import itertools
import math


def digits(a: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, d = divmod(a, base)
        out.append(d)
    return out


def undigits(ds, base: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * base + d
    return v


class NaiveExt:
    """F_{base^n} = F_base[y]/(modulus), with the base field given by a NaiveExt or a prime."""

    def __init__(self, base, modulus):
        self.base = base
        self.modulus = list(modulus)
        self.n = len(modulus) - 1
        self.bq = base if isinstance(base, int) else base.order
        self.order = self.bq**self.n

    # base field ops
    def _badd(self, a, b):
        return (a + b) % self.base if isinstance(self.base, int) else self.base.add(a, b)

    def _bmul(self, a, b):
        return (a * b) % self.base if isinstance(self.base, int) else self.base.mul(a, b)

    def _bneg(self, a):
        return (-a) % self.base if isinstance(self.base, int) else self.base.neg(a)

    def neg(self, a):
        return undigits([self._bneg(d) for d in digits(a, self.bq, self.n)], self.bq)

    def add(self, a, b):
        da, db = digits(a, self.bq, self.n), digits(b, self.bq, self.n)
        return undigits([self._badd(x, y) for x, y in zip(da, db)], self.bq)

    def mul(self, a, b):
        da, db = digits(a, self.bq, self.n), digits(b, self.bq, self.n)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = self._badd(prod[i + j], self._bmul(x, y))
        # reduce with the monic modulus, top degree down
        for deg in range(len(prod) - 1, self.n - 1, -1):
            c = prod[deg]
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[deg - self.n + i] = self._badd(prod[deg - self.n + i], self._bneg(self._bmul(c, mc)))
        return undigits(prod[: self.n], self.bq)

    def pow(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def fastpow(self, a, e):
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        return next(b for b in range(1, self.order) if self.mul(a, b) == 1)


def naive_tower(tower):
    k = NaiveExt(tower.p, tower.modulus_k)
    l = NaiveExt(k, tower.modulus_l)
    return k, l


def brute_rank(F, rows) -> int:
    """Rank of a matrix over F by counting its right kernel."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    size = 0
    for v in itertools.product(range(F.order), repeat=ncols):
        if all(_dot(F, row, v) == 0 for row in rows):
            size += 1
    return ncols - round(math.log(size, F.order))


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def perm_det(R, M):
    """Leibniz expansion over a commutative ring with add/sub/mul."""
    n = len(M)
    acc = R.zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = R.one
        for i in range(n):
            term = R.mul(term, M[i][perm[i]])
        acc = R.add(acc, term) if sign > 0 else R.sub(acc, term)
    return acc


def semigroup_upto(gens, n):
    pts = {0}
    for v in range(1, n + 1):
        if any(v - g in pts for g in gens if v >= g):
            pts.add(v)
    return sorted(pts)


def min_weight_all_messages(code, encode, weight):
    """Minimum weight over every nonzero message, no projective reduction."""
    Q = code.tower.l.order
    best = None
    for msg in itertools.product(range(Q), repeat=code.kappa):
        if any(msg):
            w = weight(encode(code, list(msg)))
            best = w if best is None else min(best, w)
    return best
