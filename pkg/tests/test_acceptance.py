"""Acceptance criteria, one test each.  The terminal summary prints a pass/fail line per criterion."""

import random
import time

import pytest

from sumrank import bounds
from sumrank.code import construct, dumps, load, min_distance_bruteforce, save
from sumrank.curve import (
    CurveModel,
    choose_x,
    degree_identity_rhs,
    dim_bound,
    floor_degree_sum,
    rr_basis,
)
from sumrank.gf import FieldTower
from sumrank.laurent import LaurentSeries, ProductRing, local_ore, nrd_vs_kernel_holds, nrd_vs_w_holds
from sumrank.ore import QuotientElem, det, epsilon, gamma_u, nrd


def criterion(num):
    def wrap(fn):
        fn.criterion = num
        return fn

    return wrap


def report(num, ok, detail=""):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def field_for(q):
    return {3: (3, 1), 4: (2, 2), 5: (5, 1)}[q]


@criterion(1)
def test_criterion_01_msrd_recovery():
    t0 = time.perf_counter()
    results = []
    for q, r, s, m in [(3, 2, 2, 1), (4, 2, 3, 2), (5, 2, 4, 3)]:
        code = construct(CurveModel.projective_line(*field_for(q)), r, m, max_s=s)
        d = min_distance_bruteforce(code)
        results.append((q, code.s, code.kappa, d, code.report.n_l - code.kappa + 1))
    elapsed = time.perf_counter() - t0
    ok = all(s_ == s and k == m + 1 and d == single
             for (q, s_, k, d, single), (_, _, s, m) in zip(results, [(3, 2, 2, 1), (4, 2, 3, 2), (5, 2, 4, 3)]))
    report(1, ok and elapsed < 5, f"{results} in {elapsed:.2f}s")
    for (q, s_, k, d, single), (_, _, s, m) in zip(results, [(3, 2, 2, 1), (4, 2, 3, 2), (5, 2, 4, 3)]):
        assert s_ == s
        assert k == m + 1
        assert d == single
    assert elapsed < 5


@criterion(2)
def test_criterion_02_genus_one_instance():
    t0 = time.perf_counter()
    H = CurveModel.hermitian(2, 2, 2)
    x = choose_x(H, 2)
    code = construct(H, 2, 3, x=x)
    d = min_distance_bruteforce(code)
    elapsed = time.perf_counter() - t0
    bound = dim_bound(H, x, 2, 3)
    obs = f"h={x.h} simple={x.simple_zeros} s={code.s} kappa={code.kappa} dim_bound={bound} d={d} sr-m={code.s * 2 - 3}"
    ok = (x.h == 3 and x.simple_zeros and code.s == 7 and code.kappa == 2 and bound == 1
          and 11 <= d <= 13 and d >= code.s * 2 - 3 and elapsed < 5)
    report(2, ok, obs)
    assert x.h == 3 and x.simple_zeros
    assert code.kappa == 2 and bound == 1 and code.kappa >= bound
    assert d >= code.s * code.r - code.m
    assert code.s == 7, obs
    assert 11 <= d <= 13, obs
    assert elapsed < 5


TOWERS_256 = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 1, 4), (2, 4, 2), (2, 1, 8), (3, 1, 5)]


@criterion(3)
def test_criterion_03_reduced_norm_identities():
    t0 = time.perf_counter()
    towers = [FieldTower(*t) for t in TOWERS_256]
    assert all(t.l.order <= 256 for t in towers)
    rng = random.Random(2024)
    counts = [0, 0, 0]
    for n in range(1000):
        t = towers[n % len(towers)]
        l, r = t.l, t.r
        x = rng.randrange(1, t.q)
        f = QuotientElem(l, tuple(rng.randrange(l.order) for _ in range(r)), x)
        g = QuotientElem(l, tuple(rng.randrange(l.order) for _ in range(r)), x)
        assert nrd(f * g) == l.mul(nrd(f), nrd(g))
        counts[0] += 1
        u = rng.randrange(1, l.order)
        assert nrd(gamma_u(f, u)) == nrd(f)
        counts[1] += 1
        f1 = QuotientElem(l, f.coeffs, 1)
        assert det(t.k, epsilon(f1, t).rows) == nrd(f1)
        counts[2] += 1
    elapsed = time.perf_counter() - t0
    report(3, elapsed < 10, f"{counts} cases in {elapsed:.2f}s")
    assert elapsed < 10


@criterion(4)
def test_criterion_04_local_valuation_propositions():
    t0 = time.perf_counter()
    configs = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3)]
    rings = [ProductRing(FieldTower(2, 1, d), m) for m, d in configs]
    rng = random.Random(7)
    n_w = n_k = nonzero_kernels = 0
    for n in range(500):
        R = rings[n % len(rings)]
        r = R.phi_order
        x = LaurentSeries(R.F, rng.randint(-2, 2), (1,))
        f = local_ore(R, [R.random(rng) for _ in range(r)], x)
        assert nrd_vs_w_holds(f)
        n_w += 1
        g = local_ore(R, [R.random(rng, 0, 2) for _ in range(r)], R.constant(1))
        ok, kdim = nrd_vs_kernel_holds(g)
        assert ok
        n_k += 1
        nonzero_kernels += kdim > 0
    elapsed = time.perf_counter() - t0
    report(4, elapsed < 30, f"{n_w} + {n_k} cases, {nonzero_kernels} with nonzero kernel, {elapsed:.2f}s")
    assert nonzero_kernels > 0
    assert elapsed < 30


@criterion(5)
def test_criterion_05_degree_identity():
    t0 = time.perf_counter()
    cases = 0
    for curve, r in [
        (CurveModel.projective_line(3), 2),
        (CurveModel.projective_line(3), 3),
        (CurveModel.projective_line(2, 2), 5),
        (CurveModel.hermitian(2, 2, 2), 2),
        (CurveModel.hermitian(2, 2, 2), 3),
        (CurveModel.hermitian(3, 2, 3), 2),
    ]:
        x = choose_x(curve, r)
        for m in range(3 * r + 1):
            assert floor_degree_sum(curve, x, r, m) == degree_identity_rhs(curve, x, r, m)
            cases += 1
    elapsed = time.perf_counter() - t0
    report(5, elapsed < 1, f"{cases} cases in {elapsed:.3f}s")
    assert elapsed < 1


@criterion(6)
def test_criterion_06_riemann_roch_dimensions():
    t0 = time.perf_counter()
    for curve in (CurveModel.projective_line(3), CurveModel.hermitian(2, 2, 2), CurveModel.hermitian(3, 2, 3)):
        g = curve.genus
        for c in range(max(2 * g - 1, 0), 51):
            assert len(rr_basis(curve, c)) == c + 1 - g
    elapsed = time.perf_counter() - t0
    report(6, elapsed < 1, f"{elapsed:.3f}s")
    assert elapsed < 1


@criterion(7)
def test_criterion_07_compgv_anchors():
    t0 = time.perf_counter()
    vals = (bounds.compgv(49, 1, 0), bounds.compgv(121, 2, 0), bounds.compgv(121, bounds.R_INF, 0))
    elapsed = time.perf_counter() - t0
    ok = all(abs(v - w) <= 1e-4 for v, w in zip(vals, (0.833333, 0.85, 0.8)))
    report(7, ok and elapsed < 1, " ".join(f"{v:.6f}" for v in vals))
    assert vals[0] == pytest.approx(0.833333, abs=1e-4)
    assert vals[1] == pytest.approx(0.850000, abs=1e-4)
    assert vals[2] == pytest.approx(0.800000, abs=1e-4)
    assert elapsed < 1


@criterion(8)
def test_criterion_08_gv_consistency():
    t0 = time.perf_counter()
    gaps = {}
    for q, r, delta in [(49, 1, 0.3), (121, 2, 0.3), (121, 1, 0.5), (4, 2, 0.4), (49, 4, 0.2), (169, 3, 0.6)]:
        gaps[(q, r, delta)] = abs(bounds.gv_finite(q, r, 10**4, delta) - bounds.gv_asymptotic(q, r, delta))
    beats = {}
    for r in (1, 2, 4, 8, bounds.R_INF):
        beats[r] = [d for d in bounds.delta_grid()[1:] if bounds.compgv(121, r, d) > bounds.gv_asymptotic(121, r, d)]
    elapsed = time.perf_counter() - t0
    ok = all(g <= 0.01 for g in gaps.values()) and all(beats.values()) and elapsed < 5
    report(8, ok, f"max gap {max(gaps.values()):.2e}, first beating delta {[b[0] if b else None for b in beats.values()]}")
    assert all(g <= 0.01 for g in gaps.values())
    assert all(beats.values())
    assert elapsed < 5


@criterion(9)
def test_criterion_09_intro_lemma():
    t0 = time.perf_counter()
    seen = []
    for q in (3, 4, 5):
        code = construct(CurveModel.projective_line(*field_for(q)), 2, 1)
        d = min_distance_bruteforce(code)
        seen.append((q, code.s, code.kappa, d))
        assert code.s == q - 1
        assert code.kappa == 2
        assert d == code.r * code.s - 1
    elapsed = time.perf_counter() - t0
    report(9, elapsed < 10, f"{seen} in {elapsed:.2f}s")
    assert elapsed < 10


@criterion(10)
def test_criterion_10_determinism(tmp_path):
    instances = [
        (CurveModel.projective_line(3), 2, 1),
        (CurveModel.projective_line(2, 2), 3, 4),
        (CurveModel.hermitian(2, 2, 2), 2, 3),
        (CurveModel.hermitian(2, 2, 2), 3, 6),
    ]
    for i, (curve, r, m) in enumerate(instances):
        a, b = tmp_path / f"{i}a.json", tmp_path / f"{i}b.json"
        save(construct(curve, r, m), a)
        save(construct(curve, r, m), b)
        assert a.read_bytes() == b.read_bytes()
        code = load(a)
        assert dumps(code) == a.read_text()
        if code.kappa <= 3:
            min_distance_bruteforce(code)
        save(code, b)
        assert load(b).report == code.report
    report(10, True, f"{len(instances)} instances")
