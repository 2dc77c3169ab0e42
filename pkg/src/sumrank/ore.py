"""Ore polynomials L[T; Phi], the quotients D_{L,x} = L[T; Phi]/(T^r - x), and the reduced norm.

The coefficient ring is any object implementing :class:`PhiRing`: finite
fields from :mod:`sumrank.gf`, the local product rings of
:mod:`sumrank.laurent`, and curve-function rings from :mod:`sumrank.curve`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Protocol, Sequence

from .errors import (
    MixedModuli,
    MixedRings,
    ModulusNotOne,
    NonInvertibleU,
    NotCentral,
)
from .gf import FieldTower, MatK


class PhiRing(Protocol):
    """Commutative ring with an automorphism ``phi`` of order ``phi_order``."""

    zero: Any
    one: Any
    is_field: bool
    phi_order: int

    def add(self, a, b): ...
    def sub(self, a, b): ...
    def neg(self, a): ...
    def mul(self, a, b): ...
    def inv(self, a): ...
    def phi(self, a, j: int = 1): ...
    def is_zero(self, a) -> bool: ...
    def eq(self, a, b) -> bool: ...


def _check_same_ring(R1, R2) -> None:
    if R1 is not R2 and R1 != R2:
        raise MixedRings(f"{R1!r} vs {R2!r}")


def ring_norm(R, a):
    """Product of the Phi-conjugates a * Phi(a) * ... * Phi^{r-1}(a)."""
    out = R.one
    for i in range(R.phi_order):
        out = R.mul(out, R.phi(a, i))
    return out


def twisted_power(R, u, i: int):
    """u * Phi(u) * ... * Phi^{i-1}(u), the coefficient of (u T)^i."""
    out = R.one
    for j in range(i):
        out = R.mul(out, R.phi(u, j))
    return out


@dataclass(frozen=True)
class OrePoly:
    ring: Any
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and self.ring.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def T(cls, ring) -> "OrePoly":
        return cls(ring, (ring.zero, ring.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "OrePoly") -> "OrePoly":
        _check_same_ring(self.ring, other.ring)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (R.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (R.zero,) * (n - len(other.coeffs))
        return OrePoly(R, tuple(R.add(x, y) for x, y in zip(a, b)))

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        return ore_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrePoly) or len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    """Product in L[T; Phi] with T * a = Phi(a) * T."""
    _check_same_ring(f.ring, g.ring)
    R = f.ring
    if f.is_zero() or g.is_zero():
        return OrePoly(R, ())
    out = [R.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if R.is_zero(a):
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = R.add(out[i + j], R.mul(a, R.phi(b, i)))
    return OrePoly(R, tuple(out))


@dataclass(frozen=True)
class QuotientElem:
    """a_0 + a_1 T + ... + a_{r-1} T^{r-1} in D_{L,x}."""

    ring: Any
    coeffs: tuple
    x: Any

    def __post_init__(self):
        R = self.ring
        r = R.phi_order
        cs = tuple(self.coeffs)
        if len(cs) > r:
            raise ValueError(f"expected at most {r} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs + (R.zero,) * (r - len(cs)))
        if R.is_zero(self.x):
            raise ValueError("x must be nonzero")
        if not R.eq(R.phi(self.x), self.x):
            raise NotCentral("x is not fixed by Phi, so T^r - x is not central")

    @classmethod
    def scalar(cls, ring, a, x) -> "QuotientElem":
        return cls(ring, (a,), x)

    @classmethod
    def T(cls, ring, x) -> "QuotientElem":
        return cls(ring, (ring.zero, ring.one), x) if ring.phi_order > 1 else cls(ring, (x,), x)

    @property
    def r(self) -> int:
        return self.ring.phi_order

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for a in self.coeffs)

    def as_ore(self) -> OrePoly:
        return OrePoly(self.ring, self.coeffs)

    def __add__(self, other: "QuotientElem") -> "QuotientElem":
        _check_compatible(self, other)
        R = self.ring
        return QuotientElem(R, tuple(R.add(a, b) for a, b in zip(self.coeffs, other.coeffs)), self.x)

    def __sub__(self, other: "QuotientElem") -> "QuotientElem":
        _check_compatible(self, other)
        R = self.ring
        return QuotientElem(R, tuple(R.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)), self.x)

    def __mul__(self, other: "QuotientElem") -> "QuotientElem":
        return quotient_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientElem):
            return False
        R = self.ring
        return (
            (R is other.ring or R == other.ring)
            and R.eq(self.x, other.x)
            and all(R.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None


def _check_compatible(f: QuotientElem, g: QuotientElem) -> None:
    _check_same_ring(f.ring, g.ring)
    if not f.ring.eq(f.x, g.x):
        raise MixedModuli("operands live in different quotients D_{L,x}")


def reduce_mod(ring, poly: OrePoly, x) -> QuotientElem:
    """Image of an Ore polynomial in D_{L,x}: T^{r+i} -> x T^i (x is central)."""
    R, r = ring, ring.phi_order
    out = [R.zero] * r
    xpow = R.one
    cs = list(poly.coeffs)
    for block in range(0, len(cs), r):
        for i, c in enumerate(cs[block : block + r]):
            out[i] = R.add(out[i], R.mul(c, xpow))
        xpow = R.mul(xpow, x)
    return QuotientElem(R, tuple(out), x)


def quotient_mul(f: QuotientElem, g: QuotientElem) -> QuotientElem:
    _check_compatible(f, g)
    return reduce_mod(f.ring, ore_mul(f.as_ore(), g.as_ore()), f.x)


def nrd_matrix(f: QuotientElem) -> list[list]:
    """Matrix of g -> g f in the basis (1, T, ..., T^{r-1}); column v holds T^v f."""
    R, r, a, x = f.ring, f.r, f.coeffs, f.x
    M = [[R.zero] * r for _ in range(r)]
    for v in range(r):
        for u in range(r):
            if u >= v:
                M[u][v] = R.phi(a[u - v], v)
            else:
                M[u][v] = R.mul(x, R.phi(a[u - v + r], v))
    return M


def _det_gauss(F, M: Sequence[Sequence]) -> Any:
    A = [list(row) for row in M]
    n = len(A)
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(A[i][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(A[i][c]):
                m = F.mul(A[i][c], inv)
                A[i] = [F.sub(a, F.mul(m, b)) for a, b in zip(A[i], A[c])]
    return det


def _det_expand(R, M: Sequence[Sequence]) -> Any:
    # division-free Laplace expansion along rows, memoised on the set of used columns
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(row: int, used: int):
        if row == n:
            return R.one
        acc = R.zero
        sign_flip = False
        for c in range(n):
            if used >> c & 1:
                continue
            entry = M[row][c]
            if not R.is_zero(entry):
                term = R.mul(entry, minor(row + 1, used | (1 << c)))
                acc = R.sub(acc, term) if sign_flip else R.add(acc, term)
            sign_flip = not sign_flip
        return acc

    return minor(0, 0)


def det(R, M: Sequence[Sequence]) -> Any:
    """Determinant over R; Gaussian elimination for fields, fraction-free expansion otherwise."""
    if not M:
        return R.one
    if getattr(R, "is_field", False):
        return _det_gauss(R, M)
    return _det_expand(R, M)


def nrd(f: QuotientElem, check: bool = True) -> Any:
    """Reduced norm: determinant of right multiplication by f."""
    R = f.ring
    d = det(R, nrd_matrix(f))
    if check and not R.eq(R.phi(d), d):
        raise ArithmeticError("reduced norm is not Phi-invariant")
    return d


def gamma_u(f: QuotientElem, u) -> QuotientElem:
    """Image of f under T -> uT, landing in D_{L, N(u)^{-1} x}."""
    R = f.ring
    if R.is_zero(u):
        raise NonInvertibleU("u = 0")
    try:
        norm_inv = R.inv(ring_norm(R, u))
    except (ZeroDivisionError, ArithmeticError) as exc:
        raise NonInvertibleU(str(exc)) from exc
    new_x = R.mul(norm_inv, f.x)
    coeffs = tuple(R.mul(a, twisted_power(R, u, i)) for i, a in enumerate(f.coeffs))
    return QuotientElem(R, coeffs, new_x)


def epsilon(f: QuotientElem, tower: FieldTower) -> MatK:
    """Matrix over k of sum_i a_i Phi^i acting on l; requires x = 1."""
    if f.ring != tower.l:
        raise MixedRings("epsilon needs coefficients in the tower's l")
    if f.x != 1:
        raise ModulusNotOne(f"x = {f.x} != 1")
    M = MatK.zeros(tower.k, tower.r)
    for i, a in enumerate(f.coeffs):
        if a:
            M = M + tower.endo_matrix(a, i)
    return M
