"""Desk-scale invariant suites used by ``sumrank selftest``."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable

from . import bounds
from .code import construct, from_descriptor, min_distance_bruteforce, to_descriptor
from .curve import CurveModel, choose_x, degree_identity_rhs, floor_degree_sum, rr_basis, t_function
from .gf import FieldTower
from .laurent import ProductRing, local_ore, nrd_vs_kernel_holds, nrd_vs_w_holds
from .ore import QuotientElem, det, epsilon, gamma_u, nrd


def suite_gf() -> None:
    for p, e, r in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 3)]:
        t = FieldTower(p, e, r)
        for a in range(1, t.l.order):
            assert t.frobenius(a, r) == a
            n = t.norm(a)
            assert n < t.q and t.norm(t.norm_preimage(n)) == n


def suite_ore(cases: int = 100) -> None:
    rng = random.Random(1)
    for p, e, r in [(2, 1, 3), (3, 1, 2), (2, 2, 2)]:
        t = FieldTower(p, e, r)
        l = t.l
        for _ in range(cases):
            f = QuotientElem(l, tuple(rng.randrange(l.order) for _ in range(r)), 1)
            g = QuotientElem(l, tuple(rng.randrange(l.order) for _ in range(r)), 1)
            assert nrd(f * g) == l.mul(nrd(f), nrd(g))
            assert det(t.k, epsilon(f, t).rows) == nrd(f)
            u = rng.randrange(1, l.order)
            assert nrd(gamma_u(f, u)) == nrd(f)


def suite_laurent(cases: int = 50) -> None:
    rng = random.Random(2)
    for m, d in [(1, 2), (2, 1), (2, 2)]:
        R = ProductRing(FieldTower(2, 1, d), m)
        for _ in range(cases):
            f = local_ore(R, [R.random(rng) for _ in range(m * d)], R.constant(1))
            assert nrd_vs_w_holds(f)
            f = local_ore(R, [R.random(rng, vmin=0) for _ in range(m * d)], R.constant(1))
            assert nrd_vs_kernel_holds(f)[0]


def suite_curve() -> None:
    H = CurveModel.hermitian(2, 2, 2)
    assert len(H.affine_rational_places) + 1 == 2**3 + 1
    for curve in (CurveModel.projective_line(3), H):
        g = curve.genus
        for c in range(max(2 * g - 1, 0), 51):
            assert len(rr_basis(curve, c)) == c + 1 - g
    for curve, r in [(CurveModel.projective_line(3), 2), (H, 2), (H, 3)]:
        x = choose_x(curve, r)
        for m in range(3 * r + 1):
            assert floor_degree_sum(curve, x, r, m) == degree_identity_rhs(curve, x, r, m)
    P = CurveModel.projective_line(2)
    x = t_function(P, 3)
    # with b = 1 everywhere the identity needs m/r integral
    assert all(floor_degree_sum(P, x, 3, m) == degree_identity_rhs(P, x, 3, m) for m in range(0, 10, 3))


def suite_code() -> None:
    C = construct(CurveModel.projective_line(3), 2, 1)
    assert C.kappa == 2
    assert min_distance_bruteforce(C) == 3
    doc = to_descriptor(C)
    assert to_descriptor(from_descriptor(doc)) == doc


def suite_bounds() -> None:
    assert abs(bounds.compgv(49, 1, 0) - Fraction(5, 6)) < 1e-9
    assert abs(bounds.compgv(121, 2, 0) - 0.85) < 1e-9
    assert abs(bounds.compgv(121, bounds.R_INF, 0) - 0.8) < 1e-9
    assert abs(bounds.gv_finite(49, 1, 10**4, 0.3) - bounds.gv_asymptotic(49, 1, 0.3)) <= 0.01
    assert 1 < bounds.gamma_q(49) < bounds.gamma_q(2)


SUITES: dict[str, Callable[[], None]] = {
    "gf": suite_gf,
    "ore": suite_ore,
    "laurent": suite_laurent,
    "curve": suite_curve,
    "code": suite_code,
    "bounds": suite_bounds,
}


def run(verbose: bool = False, out=print) -> bool:
    ok = True
    for i, (name, fn) in enumerate(SUITES.items(), 1):
        t0 = time.perf_counter()
        try:
            fn()
            status = "ok"
        except Exception as exc:  # report and keep going
            ok = False
            status = f"FAIL ({type(exc).__name__}: {exc})"
        dt = time.perf_counter() - t0
        if verbose or status != "ok":
            out(f"{name:<8} {status:<6} {dt:7.3f}s")
        else:
            out(f"[{i}/{len(SUITES)}] {dt:7.3f}s")
    out("selftest " + ("passed" if ok else "failed"))
    return ok
