"""Finite fields F_q and F_{q^r}, Frobenius, norm, and linear algebra over F_q.

Field elements are plain ints.  An element of an extension of degree n over a
base field of order B is encoded as ``sum(c_i * B**i)`` where ``c_i`` are the
base-field coordinates in the power basis ``(1, beta, ..., beta**(n-1))``.
Because the encoding nests, an element of k = F_q is encoded by the same int
whether it is read in k or in l = F_{q^r}, and the base-p digits of any element
are its coordinates over the prime field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from sympy import factorint, isprime

from .errors import InvalidExponent, NormPreimageOfZero

# exp/log tables are built eagerly up to this order, lazily above it
TABLE_LIMIT = 1 << 12
_ADD_TABLE_LIMIT = 2048


def _digits(a: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, d = divmod(a, base)
        out.append(d)
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * base + d
    return v


class PrimeField:
    """Integers modulo a prime p."""

    is_field = True
    degree = 1

    def __init__(self, p: int):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.zero, self.one = 0, 1

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def eq(self, a: int, b: int) -> bool:
        return a == b


# --- polynomials over a field, little-endian coefficient lists -----------------


def _poly_trim(F, a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(F, a: Sequence[int], b: Sequence[int], mod: Sequence[int]) -> list[int]:
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
    # mod is monic
    for top in range(len(prod) - 1, n - 1, -1):
        c = prod[top]
        if c:
            for i in range(n):
                if mod[i]:
                    prod[top - n + i] = F.sub(prod[top - n + i], F.mul(c, mod[i]))
            prod[top] = 0
    return prod[:n] + [0] * (n - len(prod[:n]))


def _poly_rem_is_zero(F, a: Sequence[int], m: Sequence[int]) -> bool:
    """True iff the monic polynomial m divides a."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            for i in range(dm + 1):
                a[top - dm + i] = F.sub(a[top - dm + i], F.mul(c, m[i]))
    return not any(a[:dm])


def is_irreducible(F, poly: Sequence[int]) -> bool:
    """Trial-division irreducibility test for a monic polynomial over F."""
    n = len(poly) - 1
    if n < 1 or poly[-1] != 1:
        return False
    if n == 1:
        return True
    if poly[0] == 0:
        return False
    B = F.order
    for dd in range(1, n // 2 + 1):
        for tail in itertools.product(range(B), repeat=dd):
            if _poly_rem_is_zero(F, poly, list(tail) + [1]):
                return False
    return True


def find_irreducible(F, n: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree n over F, tails ordered by index."""
    B = F.order
    for idx in range(B**n):
        poly = _digits(idx, B, n) + [1]
        if is_irreducible(F, poly):
            return tuple(poly)
    raise ArithmeticError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """Extension of ``base`` by a monic irreducible ``modulus`` of degree ``degree``.

    The relative Frobenius ``phi`` raises to the power ``base.order``.
    """

    is_field = True

    def __init__(self, base, degree: int, modulus: Sequence[int] | None = None):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.base = base
        self.degree = degree
        self.p = base.p
        self.base_order = base.order
        self.order = base.order**degree
        if modulus is None:
            modulus = find_irreducible(base, degree)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != degree + 1 or not is_irreducible(base, modulus):
                raise ValueError(f"modulus {modulus} is not monic irreducible of degree {degree}")
        self.modulus = tuple(modulus)
        self.zero, self.one = 0, 1
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._gen: int | None = None
        self._add_table = None
        if self.p != 2 and self.order <= _ADD_TABLE_LIMIT and self.order != self.p:
            self._add_table = [
                [self._add_digits(a, b) for b in range(self.order)] for a in range(self.order)
            ]
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"FiniteField(order={self.order}, over={self.base_order})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.base, self.modulus))

    def __getstate__(self):
        # tables are rebuilt on demand in worker processes
        state = self.__dict__.copy()
        state["_add_table"] = None
        return state

    def elements(self) -> range:
        return range(self.order)

    @property
    def phi_order(self) -> int:
        return self.degree

    # -- additive structure (digitwise over F_p) --

    def _add_digits(self, a: int, b: int) -> int:
        p, out, place = self.p, 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * place
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.order == self.p:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, place = self.p, 0, 1
        while a:
            a, d = divmod(a, p)
            out += (-d % p) * place
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def smul(self, c: int, a: int) -> int:
        """Multiply by a base-field scalar (cheap, coordinatewise)."""
        if c == 1:
            return a
        B = self.base_order
        return _undigits([self.base.mul(c, d) for d in _digits(a, B, self.degree)], B)

    # -- multiplicative structure --

    def _mul_poly(self, a: int, b: int) -> int:
        B, n = self.base_order, self.degree
        r = _poly_mulmod(self.base, _digits(a, B, n), _digits(b, B, n), self.modulus)
        return _undigits(r, B)

    def _pow_poly(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            n >>= 1
        return result

    def _find_generator(self) -> int:
        Qm1 = self.order - 1
        if Qm1 == 1:
            return 1
        primes = list(factorint(Qm1))
        for g in range(2, self.order):
            if all(self._pow_poly(g, Qm1 // pr) != 1 for pr in primes):
                return g
        raise ArithmeticError("no generator")  # pragma: no cover

    def _build_tables(self) -> None:
        if self._exp is not None:
            return
        g = self._find_generator()
        Qm1 = self.order - 1
        exp = [0] * Qm1
        log = [0] * self.order
        v = 1
        for i in range(Qm1):
            exp[i] = v
            log[v] = i
            v = self._mul_poly(v, g)
        self._gen, self._exp, self._log = g, exp, log

    @property
    def generator(self) -> int:
        """Fixed generator of the unit group: the smallest element of full order."""
        if self._gen is None:
            self._build_tables()
        return self._gen

    def exp(self, i: int) -> int:
        self._build_tables()
        return self._exp[i % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of 0")
        self._build_tables()
        return self._log[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_poly(a, b)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        if n < 0:
            a, n = self.inv(a), -n
        return self._pow_poly(a, n)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._pow_poly(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def eq(self, a: int, b: int) -> bool:
        return a == b

    # -- Galois structure over the base --

    def phi(self, a: int, j: int = 1) -> int:
        """Relative Frobenius a -> a**(B**j), B the base order."""
        j %= self.degree
        if j == 0 or a == 0:
            return a
        return self.pow(a, self.base_order**j)

    def norm(self, a: int) -> int:
        if a == 0:
            return 0
        return self.pow(a, (self.order - 1) // (self.base_order - 1))

    def coords(self, a: int) -> list[int]:
        return _digits(a, self.base_order, self.degree)

    def from_coords(self, cs: Sequence[int]) -> int:
        return _undigits(cs, self.base_order)


@dataclass(frozen=True)
class MatK:
    """Dense matrix over a finite field, rows of ints."""

    field: object = dc_field(compare=False, repr=False)
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, F, rows: Iterable[Iterable[int]]) -> "MatK":
        return cls(F, tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, F, n: int) -> "MatK":
        return cls(F, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, F, n: int, m: int | None = None) -> "MatK":
        return cls(F, tuple((0,) * (n if m is None else m) for _ in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __add__(self, other: "MatK") -> "MatK":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return MatK(F, tuple(tuple(F.add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatK") -> "MatK":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return MatK(F, tuple(tuple(F.sub(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __matmul__(self, other: "MatK") -> "MatK":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [()] * m
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return MatK(F, tuple(out))

    def column_slice(self, w: int) -> "MatK":
        return MatK(self.field, tuple(row[:w] for row in self.rows))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def rank(self) -> int:
        return rank(self)

    def kernel_dim(self) -> int:
        return kernel_dim(self)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def _row_reduce_rank(F, rows: list[list[int]], ncols: int) -> int:
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = F.inv(rows[rk][col])
        prow = [F.mul(inv, v) for v in rows[rk]]
        rows[rk] = prow
        for i in range(rk + 1, len(rows)):
            c = rows[i][col]
            if c:
                rows[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(rows[i], prow)]
        rk += 1
        if rk == len(rows):
            break
    return rk


def rank(M: MatK) -> int:
    """Rank over the matrix's field by Gaussian elimination."""
    n, m = M.shape
    if n == 0 or m == 0:
        return 0
    return _row_reduce_rank(M.field, [list(r) for r in M.rows], m)


def kernel_dim(M: MatK) -> int:
    """Dimension of the right kernel, ``cols - rank``."""
    return M.shape[1] - rank(M)


def rank_of_vectors(l: FiniteField, vecs: Iterable[int]) -> int:
    """k-rank of a family of l-elements read as coordinate vectors over the base."""
    if l.p == 2 and l.base_order == 2:
        basis: dict[int, int] = {}
        for v in vecs:
            while v:
                top = v.bit_length() - 1
                if top in basis:
                    v ^= basis[top]
                else:
                    basis[top] = v
                    break
        return len(basis)
    rows = [l.coords(v) for v in vecs if v]
    if not rows:
        return 0
    return _row_reduce_rank(l.base, rows, l.degree)


class FieldTower:
    """The pair k = F_q (q = p^e) inside l = F_{q^r}.

    ``tower.k`` and ``tower.l`` are the two fields; the l-Frobenius over k has
    order r and its fixed field is k.
    """

    def __init__(self, p: int, e: int = 1, r: int = 1, modulus_k=None, modulus_l=None):
        if e < 1 or r < 1:
            raise ValueError("e and r must be positive")
        self.p, self.e, self.r = p, e, r
        self.prime = PrimeField(p)
        self.k = FiniteField(self.prime, e, modulus_k)
        self.l = FiniteField(self.k, r, modulus_l)
        self.q = self.k.order
        # l-element beta**c, c < r, is the int q**c
        self.beta_powers = tuple(self.q**c for c in range(r))

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, e={self.e}, r={self.r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and other.l == self.l

    def __hash__(self) -> int:
        return hash(self.l)

    @property
    def modulus_k(self) -> tuple[int, ...]:
        return self.k.modulus

    @property
    def modulus_l(self) -> tuple[int, ...]:
        return self.l.modulus

    @property
    def generator_l(self) -> int:
        return self.l.generator

    def frobenius(self, a: int, j: int = 1) -> int:
        """a**(q**j) in l."""
        return self.l.phi(a, j)

    def norm(self, a: int) -> int:
        """N_{l/k}(a), returned as an element of k."""
        return self.l.norm(a)

    def norm_preimage(self, c: int) -> int:
        """Least generator power g**i with norm c."""
        if c == 0:
            raise NormPreimageOfZero("0 has no preimage among units")
        l = self.l
        g = l.generator
        Ng = l.norm(g)
        acc = 1
        x = 1
        for _ in range(l.order - 1):
            if acc == c:
                return x
            acc = self.k.mul(acc, Ng)
            x = l.mul(x, g)
        raise ValueError(f"{c} is not a nonzero element of k")

    def endo_matrix(self, a: int, j: int) -> MatK:
        """Matrix over k of v -> a * frobenius(v, j) in the power basis of l."""
        if not 0 <= j < self.r:
            raise InvalidExponent(f"exponent {j} not in [0, {self.r})")
        l = self.l
        cols = [l.coords(l.mul(a, l.phi(b, j))) for b in self.beta_powers]
        return MatK(self.k, tuple(tuple(col[u] for col in cols) for u in range(self.r)))

    def endo_columns(self, a: int, j: int) -> tuple[int, ...]:
        """Same map as endo_matrix, each column packed as an l-element."""
        if not 0 <= j < self.r:
            raise InvalidExponent(f"exponent {j} not in [0, {self.r})")
        l = self.l
        return tuple(l.mul(a, l.phi(b, j)) for b in self.beta_powers)

    def columns_to_matrix(self, cols: Sequence[int]) -> MatK:
        cs = [self.l.coords(c) for c in cols]
        return MatK(self.k, tuple(tuple(col[u] for col in cs) for u in range(self.r)))

    def matrix_to_columns(self, M: MatK) -> tuple[int, ...]:
        n, m = M.shape
        return tuple(self.l.from_coords([M.rows[u][c] for u in range(n)]) for c in range(m))
