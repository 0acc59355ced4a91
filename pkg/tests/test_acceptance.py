"""Acceptance criteria AC1-AC10.

Each criterion is marked with its key; the terminal summary prints one
PASS/FAIL line per criterion.  Run on its own with
``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import cmath
import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from _helpers import (direction, perturb, random_complex, random_monic, random_multipoly,
                      random_poly, roots_in_annulus, term_scale)
from rootperturb import (MultiPoly, Poly, Polydomain, ZeroKind, admissibility_threshold,
                         cd_constants, classify_boundary_zero, deg_in_var, distinct_roots,
                         eval_multi, evaluate, find_delta_empirically, formal_degree,
                         group_roots, monic_root_bound, prop2_bound, reciprocal, restrict, roots,
                         separation_radii, slice_poly, theorem4_analyze)
from rootperturb import serialize as ser
from rootperturb.bounds import DEFAULT_INFLATION
from rootperturb.example1 import example1_pair, identify_roots
from rootperturb.grouping import grouping_chain_holds, unit_perturbations
from rootperturb.multivar import insert

FIX = Path(__file__).parent / "fixtures"
Q1 = [-1, 1, -1, 1, 0]
D2 = Polydomain.polydisc(2)


def note(request, text):
    request.node.user_properties.append(("note", text))


def matched_relative_error(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cost = np.abs(a[:, None] - b[None, :]) / np.abs(b)[None, :]
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.mark.acceptance("AC1", "Worked example: constants exact, threshold 1/28469024, < 1 ms")
def test_ac1_example1_constants(request, timer):
    q = Poly(Q1)

    def run():
        return cd_constants(q.coeffs, 4), admissibility_threshold(q)

    k, th = timer(run, repeat=51)
    assert k.sum_ratio == 4 and k.D == 76 and k.C == 1779314
    exact = Fraction(1, 28469024)
    rel = abs(Fraction(th) - exact) / exact
    assert rel <= Fraction(1, 10 ** 15)
    note(request, f"rel err {float(rel):.1e}, median {timer.median * 1e3:.3f} ms")
    assert timer.median < 1e-3


@pytest.mark.acceptance("AC2", "Worked example: perturbed roots match the published values, < 100 ms")
def test_ac2_example1_roots(request, timer):
    p, _ = example1_pair(1e-8)
    rs = timer(roots, p, repeat=11)
    assert len(rs.roots) == 4
    lam = identify_roots(rs.roots)
    assert abs(lam["lambda1"] - 1) <= 1e-5
    for key, target in (("lambda2", 1j), ("lambda3", -1j)):
        z = lam[key]
        assert abs(z - target) <= 1e-6
        assert 1e-10 <= z.real <= 1e-8
    inv = 1 / abs(lam["lambda4"])
    assert abs(inv - 1e-8) <= 1e-3 * 1e-8
    note(request, f"1/|l4| = {inv:.6e}, median {timer.median * 1e3:.2f} ms")
    assert timer.median < 0.1


@pytest.mark.acceptance("AC3", "Worked example: two-regime bounds and regimes near,near,near,infinity")
def test_ac3_example1_regimes(request):
    p, q = example1_pair(1e-8)
    rep = theorem4_analyze(p, q)
    assert abs(rep.bound.infinity_bound - 0.36523) <= 1e-4
    assert abs(rep.bound.near_bound - 0.73045) <= 1e-4
    assert rep.hypotheses.all_hold
    lam = identify_roots([r.root for r in rep.per_root])
    regime = {r.root: r.regime for r in rep.per_root}
    got = tuple(regime[lam[k]] for k in ("lambda1", "lambda2", "lambda3", "lambda4"))
    assert got == ("near", "near", "near", "infinity")
    assert 1 / abs(lam["lambda4"]) <= rep.bound.infinity_bound
    note(request, f"bounds {rep.bound.infinity_bound:.5f} / {rep.bound.near_bound:.5f}")


@pytest.mark.acceptance("AC4", "two-regime bound: 200 admissible random pairs, 0 violations, < 30 s")
def test_ac4_two_regime_soundness(request, rng):
    t0 = time.perf_counter()
    violations = hyp_fail = escaped = 0
    for _ in range(200):
        k = int(rng.integers(1, 7))
        n = int(rng.integers(k, 7))
        q = Poly.from_roots(roots_in_annulus(rng, k, 0.2, 2.0), leading=complex(random_complex(rng)),
                            n=n)
        delta = 0.5 * admissibility_threshold(q, inflation=DEFAULT_INFLATION)
        p = perturb(q, delta, direction(rng, n))
        rep = theorem4_analyze(p, q)
        violations += len(rep.violations)
        hyp_fail += not rep.hypotheses.all_hold
        escaped += rep.regimes.count("infinity")
    elapsed = time.perf_counter() - t0
    note(request, f"{violations} violations, {escaped} escaping roots, {elapsed:.2f} s")
    assert hyp_fail == 0
    assert violations == 0
    assert elapsed < 30


@pytest.mark.acceptance("AC5", "monic root bound on 500 polynomials and distance bound on 200 pairs")
def test_ac5_root_bound(request, rng):
    worst = -math.inf
    for _ in range(500):
        f = random_monic(rng, int(rng.integers(1, 11)))
        bound = monic_root_bound(f)
        worst = max(worst, max(abs(z) for z in roots(f).roots) - bound)
    assert worst <= 1e-9
    note(request, f"root bound max excess {worst:.2e}")


@pytest.mark.acceptance("AC5", "monic root bound on 500 polynomials and distance bound on 200 pairs")
def test_ac5_prop2(request, rng):
    min_slack = math.inf
    for _ in range(200):
        n = int(rng.integers(1, 7))
        g = Poly.from_roots(roots_in_annulus(rng, n, 0.2, 2.0), leading=complex(random_complex(rng)))
        b0 = abs(g.coeffs[-1])
        sum_ratio = cd_constants(g.coeffs[::-1], n).sum_ratio
        delta = 10 ** rng.uniform(-10, 0) * min(0.5 * b0, sum_ratio)
        f = perturb(g, delta, direction(rng, n))
        res = prop2_bound(f, g)
        assert res.hypotheses_hold
        betas = roots(g).roots
        for alpha in roots(f).roots:
            min_slack = min(min_slack, res.bound - min(abs(alpha - b) for b in betas))
    note(request, f"distance bound min slack {min_slack:.3e}")
    assert min_slack >= -1e-9


@pytest.mark.acceptance("AC6", "grouping: 100 random q at eps_max/2 and delta/2, counts and chain hold")
def test_ac6_grouping(request, rng):
    invalid = broken_chain = trials = 0
    for i in range(100):
        k = int(rng.integers(1, 7))
        zs = roots_in_annulus(rng, k, 0.2, 2.0, min_sep=0.1)
        if k >= 2 and i % 4 == 0:
            zs = zs[:-1] + [zs[0]]  # include a double root now and then
        q = Poly.from_roots(zs, n=k + int(rng.integers(0, 2)))
        qr = distinct_roots(q)
        eps = separation_radii(qr).eps_max / 2
        delta = find_delta_empirically(q, eps, q_roots=qr)
        assert delta > 0
        for u in unit_perturbations(q.n, 50, seed=10_000 + i):
            p = perturb(q, 0.5 * delta, u)
            g = group_roots(qr, roots(p).roots, eps, formal_degree(p), qr.degree)
            trials += 1
            invalid += not g.counts_valid
            broken_chain += not grouping_chain_holds(g)
    note(request, f"{trials} trials, {invalid} invalid, {broken_chain} chain failures")
    assert invalid == 0 and broken_chain == 0


@pytest.mark.acceptance("AC7", "reciprocal: 100 random p, inverted roots within 1e-7, involution")
def test_ac7_reciprocal(request, rng):
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 11))
        p = random_poly(rng, d)
        assert p.coeffs[0] != 0
        r = reciprocal(p)
        assert reciprocal(r) == p
        padded = p.with_ambient(d + 2)
        assert reciprocal(reciprocal(padded)) == p
        inv = [1 / z for z in roots(p).roots]
        worst = max(worst, matched_relative_error(roots(r).roots, inv))
    note(request, f"max relative mismatch {worst:.2e}")
    assert worst <= 1e-7


@pytest.mark.acceptance("AC8", "boundary-zero classifier: 3 canonical cases and 50 random case-two")
def test_ac8_classifier(request, rng):
    z2_minus_1 = MultiPoly(2, {(0, 1): 1, (0, 0): -1})
    c = classify_boundary_zero(z2_minus_1, D2, (0, 1))
    # variables are 0-based: S = {0} is the first coordinate
    assert c.kind is ZeroKind.CASE_TWO and c.S == frozenset({0})
    c = classify_boundary_zero(MultiPoly(2, {(0, 0): 1, (1, 1): 1}), D2, (1, -1))
    assert c.kind is ZeroKind.CASE_ONE
    c = classify_boundary_zero(MultiPoly(2, {(1, 0): 1, (0, 1): 1}),
                               Polydomain.right_polyhalfplane(2), (1j, -1j))
    assert c.kind is ZeroKind.CASE_ONE

    worst = 0.0
    for _ in range(50):
        theta = 2 * math.pi * rng.random()
        c0 = cmath.exp(1j * theta)
        # constant term 2 dominates the rest on the closed bidisc, so g has no zeros there
        g_terms = {(0, 0): 2.0}
        rest = random_multipoly(rng, 2, 3, 4)
        total = sum(abs(x) for e, x in rest.terms.items() if e != (0, 0))
        for e, x in rest.terms.items():
            if e != (0, 0):
                g_terms[e] = 1.5 * x / total
        f = MultiPoly(2, {(0, 1): 1, (0, 0): -c0}) * MultiPoly(2, g_terms)
        a1 = complex(0.99 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random()))
        res = classify_boundary_zero(f, D2, (a1, c0))
        assert res.kind is ZeroKind.CASE_TWO and res.S == frozenset({0})
        worst = max(worst, res.certificate)
    note(request, f"max certificate {worst:.1e}")
    assert worst <= 1e-10


def _rel_ok(a, b, scale):
    return abs(a - b) <= 1e-10 * max(abs(b), scale)


@pytest.mark.acceptance("AC9", "slice/eval and restrict/eval agree to 1e-10 on 500 instances each")
def test_ac9_slice_eval(request, rng):
    for _ in range(500):
        m = int(rng.integers(1, 4))
        f = random_multipoly(rng, m, int(rng.integers(0, 7)), int(rng.integers(1, 9)))
        j = int(rng.integers(m))
        w = tuple(complex(x) for x in random_complex(rng, m - 1))
        t = complex(random_complex(rng))
        s = slice_poly(f, j, w)
        assert s.n == deg_in_var(f, j)
        z = insert(w, j, t)
        assert _rel_ok(evaluate(s, t), eval_multi(f, z), term_scale(f, z))


@pytest.mark.acceptance("AC9", "slice/eval and restrict/eval agree to 1e-10 on 500 instances each")
def test_ac9_restrict_eval(request, rng):
    for _ in range(500):
        m = int(rng.integers(2, 4))
        f = random_multipoly(rng, m, int(rng.integers(0, 7)), int(rng.integers(1, 9)))
        k = int(rng.integers(1, m))
        fixed_idx = sorted(rng.choice(m, size=k, replace=False).tolist())
        fixed = {j: complex(random_complex(rng)) for j in fixed_idx}
        free = [j for j in range(m) if j not in fixed]
        zs = tuple(complex(x) for x in random_complex(rng, len(free)))
        merged = [0j] * m
        for j, v in fixed.items():
            merged[j] = v
        for j, v in zip(free, zs):
            merged[j] = v
        r = restrict(f, fixed)
        assert r.nvars == len(free)
        assert _rel_ok(eval_multi(r, zs), eval_multi(f, merged), term_scale(f, merged))


def _cli(*args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "rootperturb", *map(str, args)],
                          capture_output=True, env=env)


DETERMINISM_RUNS = [
    ("roots", FIX / "poly_example1_p.json"),
    ("bounds", FIX / "poly_example1_p.json", FIX / "poly_example1_q.json"),
    ("group", FIX / "poly_example1_p.json", FIX / "poly_example1_q.json", "--epsilon", "0.9"),
    ("delta-search", FIX / "poly_example1_q.json", "--seed", "7", "--trials", "8"),
    ("classify", FIX / "multi_z2_minus_1.json", FIX / "domain_polydisc2.json",
     "--alpha", "[[0, 0], [1, 0]]"),
    ("probe", FIX / "multi_z1_plus_z2.json", FIX / "domain_right_halfplane2.json",
     "--samples", "64", "--seed", "3"),
    ("reproduce-example1",),
]


@pytest.mark.acceptance("AC10", "CLI byte-identical reruns, 20-fixture round trip, example exits 0")
def test_ac10_determinism(request):
    for args in DETERMINISM_RUNS:
        a = _cli(*args, hashseed=1)
        b = _cli(*args, hashseed=2)
        assert a.returncode == b.returncode == 0, (args, a.stderr)
        assert a.stdout == b.stdout and a.stdout
    note(request, f"{len(DETERMINISM_RUNS)} commands")


LOADERS = {"poly": (ser.poly_from_json, ser.poly_to_json),
           "multi": (ser.multipoly_from_json, ser.multipoly_to_json),
           "domain": (ser.polydomain_from_json, ser.polydomain_to_json)}


@pytest.mark.acceptance("AC10", "CLI byte-identical reruns, 20-fixture round trip, example exits 0")
def test_ac10_round_trip(request):
    files = sorted(FIX.glob("*.json"))
    assert len(files) == 20
    for path in files:
        load, dump = LOADERS[path.name.split("_")[0]]
        obj = load(ser.load_json(path))
        text = ser.dumps(dump(obj))
        assert load(json.loads(text)) == obj
    note(request, f"{len(files)} fixtures")


@pytest.mark.acceptance("AC10", "CLI byte-identical reruns, 20-fixture round trip, example exits 0")
def test_ac10_reproduce_exit_code():
    res = _cli("reproduce-example1", hashseed=0)
    assert res.returncode == 0
    assert b"FAIL" not in res.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
