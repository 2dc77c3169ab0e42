"""Linearized algebraic-geometry codes in the sum-rank metric.

A code is the image of Lambda_{L,x}(E) under the multi-evaluation map: at each
evaluation place pl_j the element phi T^i is sent to the k-endomorphism
v -> phi(pl_j) * N_i(u_j) * Phi^i(v) of l, where u_j is a norm preimage of
x(pl_j) and N_i(u) = u Phi(u) ... Phi^{i-1}(u).

Internally a block is kept as its columns packed into l-elements; l acts on a
codeword by multiplying every column, so l-linear algebra is plain l
arithmetic.  :class:`Codeword` exposes the blocks as k-matrices.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .curve import (
    INFINITY,
    CurveFunction,
    CurveModel,
    XFunction,
    analyze_x,
    check_h1,
    check_h2,
    choose_x,
    dim_bound,
    eval_function,
    lambda_basis,
)
from .errors import (
    BoundViolation,
    DescriptorError,
    EnumerationTooLarge,
    HypothesisFailed,
    InvalidSubspaceDim,
    LengthMismatch,
    ShapeMismatch,
    TooFewPlaces,
)
from .gf import FieldTower, FiniteField, MatK, _row_reduce_rank, rank_of_vectors
from .ore import twisted_power

DESCRIPTOR_VERSION = 1
DEFAULT_ENUM_CAP = 1 << 24


@dataclass(frozen=True)
class Codeword:
    blocks: tuple[MatK, ...]

    @property
    def shape(self) -> tuple[tuple[int, int], ...]:
        return tuple(b.shape for b in self.blocks)

    def tolist(self) -> list:
        return [b.tolist() for b in self.blocks]


def sumrank_weight(c: Codeword) -> int:
    return sum(b.rank() for b in c.blocks)


def sumrank_distance(c1: Codeword, c2: Codeword) -> int:
    if c1.shape != c2.shape:
        raise ShapeMismatch(f"{c1.shape} vs {c2.shape}")
    return sumrank_weight(Codeword(tuple(a - b for a, b in zip(c1.blocks, c2.blocks))))


@dataclass
class ParameterReport:
    n: int
    n_l: int
    kappa_l: int
    kappa_l_bound: Fraction
    d_lower: int
    d_upper_singleton: int
    defect: Fraction
    exact_lambda: bool
    d_exact: int | None = None

    @property
    def singleton_gap(self) -> int:
        """n_l + 1 - kappa_l - d, with d_lower standing in for an unknown d."""
        d = self.d_lower if self.d_exact is None else self.d_exact
        return self.n_l + 1 - self.kappa_l - d

    def to_json(self) -> dict:
        out = asdict(self)
        out["kappa_l_bound"] = str(self.kappa_l_bound)
        out["defect"] = str(self.defect)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "ParameterReport":
        d = dict(d)
        d["kappa_l_bound"] = Fraction(d["kappa_l_bound"])
        d["defect"] = Fraction(d["defect"])
        return cls(**d)

    def table(self) -> str:
        rows = [
            ("n", self.n),
            ("n_l", self.n_l),
            ("kappa_l", self.kappa_l),
            ("kappa_l_bound", self.kappa_l_bound),
            ("d_lower", self.d_lower),
            ("d_upper_singleton", self.d_upper_singleton),
            ("singleton_gap", self.singleton_gap),
            ("defect", self.defect),
            ("exact_lambda", self.exact_lambda),
        ]
        if self.d_exact is not None:
            rows.append(("d_exact", self.d_exact))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


@dataclass
class LinearizedAGCode:
    tower: FieldTower
    curve: CurveModel
    x: XFunction
    m: int
    places: tuple
    norm_lifts: tuple[int, ...]
    basis: tuple
    exact: bool
    # gen_cols[b][j] = columns of block j of generator b, packed as l-elements
    gen_cols: tuple[tuple[tuple[int, ...], ...], ...]
    widths: tuple[int, ...]
    report: ParameterReport = field(init=False)

    def __post_init__(self):
        self.report = params(self)

    @property
    def r(self) -> int:
        return self.tower.r

    @property
    def s(self) -> int:
        return len(self.places)

    @property
    def kappa(self) -> int:
        return len(self.gen_cols)

    def codeword_from_columns(self, cols: Sequence[Sequence[int]]) -> Codeword:
        return Codeword(tuple(self.tower.columns_to_matrix(c) for c in cols))

    @property
    def generators(self) -> tuple[Codeword, ...]:
        return tuple(self.codeword_from_columns(g) for g in self.gen_cols)


def evaluation_places(curve: CurveModel, x: XFunction) -> list:
    return [pl for pl in curve.affine_rational_places if eval_function(curve, x.fn, pl) != 0]


def construct(
    curve: CurveModel,
    r: int,
    m: int,
    max_s: int | None = None,
    x: XFunction | CurveFunction | None = None,
) -> LinearizedAGCode:
    """C(x; E; pl_1..pl_s) with E = (m/r) q_inf over the tower F_q < F_{q^r}."""
    if x is None:
        x = choose_x(curve, r)
    elif isinstance(x, CurveFunction):
        x = analyze_x(curve, x)
    tower = FieldTower(curve.p, curve.k.degree, r, modulus_k=curve.k.modulus)
    places = evaluation_places(curve, x)
    if max_s is not None:
        places = places[:max_s]
    s = len(places)
    if s < 1 or m >= s * r:
        raise TooFewPlaces(f"need deg E = {m} < s*r = {s * r}")
    if not check_h1(curve, x, r):
        raise HypothesisFailed("H1: no inert place with valuation of x coprime to r")
    for pl in places:
        if not check_h2(curve, x, r, pl):
            raise HypothesisFailed(f"H2 fails at {pl}")
    lam = lambda_basis(curve, x, r, m)
    norm_lifts = tuple(tower.norm_preimage(eval_function(curve, x.fn, pl)) for pl in places)
    l = tower.l
    gens = []
    for mono, i in lam.elements:
        phi = CurveFunction.monomial(mono)
        blocks = []
        for pl, u in zip(places, norm_lifts):
            a = l.mul(eval_function(curve, phi, pl), twisted_power(l, u, i))
            blocks.append(tower.endo_columns(a, i))
        gens.append(tuple(blocks))
    code = LinearizedAGCode(
        tower, curve, x, m, tuple(places), norm_lifts, lam.elements, lam.exact, tuple(gens), (r,) * s
    )
    _check_injective(code)
    return code


def construct_restricted(code: LinearizedAGCode, widths: Sequence[int]) -> LinearizedAGCode:
    """Restrict block j to the span of the first widths[j] basis vectors of l."""
    widths = tuple(widths)
    if len(widths) != code.s:
        raise InvalidSubspaceDim(f"expected {code.s} widths, got {len(widths)}")
    for w, w0 in zip(widths, code.widths):
        if not 0 < w <= w0:
            raise InvalidSubspaceDim(f"width {w} not in [1, {w0}]")
    gens = tuple(tuple(blk[:w] for blk, w in zip(g, widths)) for g in code.gen_cols)
    return LinearizedAGCode(
        code.tower, code.curve, code.x, code.m, code.places, code.norm_lifts, code.basis, code.exact, gens, widths
    )


def params(code: LinearizedAGCode, d_exact: int | None = None) -> ParameterReport:
    r, m = code.r, code.m
    n_l = sum(code.widths)
    kappa = code.kappa
    bound = dim_bound(code.curve, code.x, r, m)
    d_lower = n_l - m
    return ParameterReport(
        n=r * n_l,
        n_l=n_l,
        kappa_l=kappa,
        kappa_l_bound=bound,
        d_lower=d_lower,
        d_upper_singleton=n_l - kappa + 1,
        defect=n_l + 1 - d_lower - bound,
        exact_lambda=code.exact,
        d_exact=d_exact,
    )


def _k_rank_of_code(code: LinearizedAGCode) -> int:
    """k-rank of all beta^c multiples of the generators, flattened to k-vectors."""
    l, tower = code.tower.l, code.tower
    rows = []
    for g in code.gen_cols:
        for beta in tower.beta_powers:
            row = []
            for blk in g:
                for col in blk:
                    row += l.coords(l.mul(beta, col))
            rows.append(row)
    if not rows:
        return 0
    return _row_reduce_rank(tower.k, rows, len(rows[0]))


def _check_injective(code: LinearizedAGCode) -> None:
    if _k_rank_of_code(code) != code.r * code.kappa:
        raise BoundViolation("multi-evaluation map is not injective")


def encode_columns(code: LinearizedAGCode, message: Sequence[int]) -> list[list[int]]:
    if len(message) != code.kappa:
        raise LengthMismatch(f"message has {len(message)} symbols, code dimension is {code.kappa}")
    l = code.tower.l
    out = [[0] * w for w in code.widths]
    for lam, g in zip(message, code.gen_cols):
        if not lam:
            continue
        for j, blk in enumerate(g):
            for c, col in enumerate(blk):
                out[j][c] = l.add(out[j][c], l.mul(lam, col))
    return out


def encode(code: LinearizedAGCode, message: Sequence[int]) -> Codeword:
    """sum_b message[b] * generator_b; l acts on blocks by left multiplication."""
    for v in message:
        if not 0 <= v < code.tower.l.order:
            raise ValueError(f"{v} is not an element of l")
    return code.codeword_from_columns(encode_columns(code, message))


# -- brute-force minimum distance --

_WORKER: dict = {}


def _init_worker(l: FiniteField, gens, widths) -> None:
    _WORKER.update(l=l, gens=gens, widths=widths)


def _weight(l: FiniteField, flat: Sequence[int], widths: Sequence[int]) -> int:
    w, pos = 0, 0
    for width in widths:
        w += rank_of_vectors(l, flat[pos : pos + width])
        pos += width
    return w


def _min_weight_task(task: tuple[int, int | None]) -> int:
    """Minimum weight over messages with leading 1 at ``lead`` and, if given, next symbol ``first``."""
    l, gens, widths = _WORKER["l"], _WORKER["gens"], _WORKER["widths"]
    lead, first = task
    kappa = len(gens)
    add, mul = l.add, l.mul
    base = list(gens[lead])
    free = list(range(lead + 1, kappa))
    if first is not None:
        base = [add(a, mul(first, b)) for a, b in zip(base, gens[free[0]])]
        free = free[1:]
    if not free:
        return _weight(l, base, widths)
    last = gens[free[-1]]
    scaled = [[mul(lam, b) for b in last] for lam in range(l.order)]
    best = None
    for prefix in itertools.product(range(l.order), repeat=len(free) - 1):
        acc = base
        for lam, b in zip(prefix, free):
            if lam:
                acc = [add(a, mul(lam, g)) for a, g in zip(acc, gens[b])]
        for row in scaled:
            w = _weight(l, [add(a, g) for a, g in zip(acc, row)], widths)
            if best is None or w < best:
                best = w
    return best


def projective_count(Q: int, kappa: int) -> int:
    return (Q**kappa - 1) // (Q - 1)


def min_distance_bruteforce(code: LinearizedAGCode, cap: int = DEFAULT_ENUM_CAP, jobs: int = 1) -> int:
    """Exact minimum sum-rank weight, one message per l-projective class.

    Scaling a message by a nonzero lambda multiplies every block on the left
    by an invertible map, so ranks only depend on the projective class.
    """
    l = code.tower.l
    kappa = code.kappa
    count = projective_count(l.order, kappa)
    if count > cap:
        raise EnumerationTooLarge(f"{count} projective messages exceed the cap {cap}")
    gens = [tuple(col for blk in g for col in blk) for g in code.gen_cols]
    tasks: list[tuple[int, int | None]] = []
    for lead in range(kappa):
        if kappa - lead >= 3:
            tasks += [(lead, v) for v in range(l.order)]
        else:
            tasks.append((lead, None))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(l, gens, code.widths)) as ex:
            d = min(ex.map(_min_weight_task, tasks))
    else:
        _init_worker(l, gens, code.widths)
        d = min(map(_min_weight_task, tasks))
    rep = code.report
    if not rep.d_lower <= d <= rep.d_upper_singleton:
        raise BoundViolation(f"d = {d} outside [{rep.d_lower}, {rep.d_upper_singleton}]")
    rep.d_exact = d
    return d


# -- descriptor files --


def _place_json(pl) -> list:
    return list(pl)


def to_descriptor(code: LinearizedAGCode) -> dict:
    t = code.tower
    gens = [[code.tower.columns_to_matrix(blk).tolist() for blk in g] for g in code.gen_cols]
    return {
        "version": DESCRIPTOR_VERSION,
        "tower": {
            "p": t.p,
            "e": t.e,
            "r": t.r,
            "modulus_k": list(t.modulus_k),
            "modulus_l": list(t.modulus_l),
        },
        "curve": code.curve.descriptor(),
        "x": [[list(mono), c] for mono, c in code.x.fn.terms],
        "m": code.m,
        "places": [_place_json(pl) for pl in code.places],
        "widths": list(code.widths),
        "norm_lifts": list(code.norm_lifts),
        "basis": [[list(mono), i] for mono, i in code.basis],
        "generators": gens,
        "report": code.report.to_json(),
    }


def dumps(code: LinearizedAGCode) -> str:
    return json.dumps(to_descriptor(code), indent=1) + "\n"


def save(code: LinearizedAGCode, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(code))


def from_descriptor(doc: dict) -> LinearizedAGCode:
    """Rebuild a code and check every stored field against the recomputation."""
    try:
        if doc.get("version") != DESCRIPTOR_VERSION:
            raise DescriptorError(f"unsupported descriptor version {doc.get('version')!r}")
        t, c = doc["tower"], doc["curve"]
        if c["kind"] == "p1":
            curve = CurveModel.projective_line(c["p"], c["e"])
        elif c["kind"] == "hermitian":
            curve = CurveModel.hermitian(c["p"], c["e"], c["q0"])
        else:
            raise DescriptorError(f"unknown curve kind {c['kind']!r}")
        fn = CurveFunction.from_map({tuple(mono): coeff for mono, coeff in doc["x"]})
        code = construct(curve, t["r"], doc["m"], max_s=len(doc["places"]), x=fn)
        widths = doc.get("widths", [t["r"]] * code.s)
        if list(widths) != list(code.widths):
            code = construct_restricted(code, widths)
    except DescriptorError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"malformed descriptor: {exc}") from exc
    fresh = to_descriptor(code)
    stored_report = doc.get("report", {})
    if stored_report.get("d_exact") is not None:
        code.report.d_exact = stored_report["d_exact"]
        fresh["report"]["d_exact"] = stored_report["d_exact"]
    for key in fresh:
        if fresh[key] != doc.get(key):
            raise DescriptorError(f"descriptor field {key!r} does not match the recomputed code")
    return code


def load(path) -> LinearizedAGCode:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DescriptorError("descriptor must be a JSON object")
    return from_descriptor(doc)


__all__ = [
    "INFINITY",
    "Codeword",
    "LinearizedAGCode",
    "ParameterReport",
    "construct",
    "construct_restricted",
    "encode",
    "min_distance_bruteforce",
    "params",
    "sumrank_distance",
    "sumrank_weight",
    "to_descriptor",
    "from_descriptor",
    "load",
    "save",
]
