"""Acceptance gate: ten end-to-end criteria, one printed line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
print; under the default capture they appear for failing criteria only.
"""
import json
import time
from fractions import Fraction

import pytest

from modmult.cosets import area_constant_c, subgroup_signature
from modmult.dimensions import dims
from modmult.exact import solve_linear_exact
from modmult.reps import QuotientPair, multiplicity_series
from modmult.sl2 import SubgroupSpec, realize
from modmult.verify import (VerificationConfig, check_decomposition_identity,
                            detect_slope, monitor_lower_bound, run_verify)

PAIRS = [
    (SubgroupSpec("gamma0", 5), SubgroupSpec("gamma1", 5)),
    (SubgroupSpec("gamma0", 7), SubgroupSpec("gamma1", 7)),
    (SubgroupSpec("gamma0", 8), SubgroupSpec("gamma1", 8)),
    (SubgroupSpec("full", 1), SubgroupSpec("gamma", 2)),
]

_pair_cache = {}


def pair_of(g, g1):
    key = (g, g1)
    if key not in _pair_cache:
        _pair_cache[key] = QuotientPair.build(g, g1)
    return _pair_cache[key]


def report(number, title, ok):
    print(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}")
    assert ok, f"criterion {number}: {title}"


def sig_of(kind, n, level_cap=30):
    return subgroup_signature(realize(SubgroupSpec(kind, n),
                                      level_cap=level_cap))


def test_criterion_01_signature_regression():
    checks = []
    s = sig_of("full", 1)
    checks.append((s.genus, s.nu2, s.nu3, s.t, s.mu_proj) == (0, 1, 1, 1, 1))
    s = sig_of("gamma0", 5)
    checks.append((s.genus, s.nu2, s.nu3, s.t, s.mu_proj) == (0, 2, 0, 2, 6))
    checks.append(sig_of("gamma0", 11).genus == 1)
    checks.append(sig_of("gamma0", 37, level_cap=40).genus == 2)
    s = sig_of("gamma", 2)
    checks.append((s.genus, s.nu2, s.nu3) == (0, 0, 0))
    checks.append([c.width for c in s.cusps] == [2, 2, 2] and s.mu_proj == 6)
    s = sig_of("gamma1", 4)
    checks.append(s.t == 3 and sum(not c.regular for c in s.cusps) == 1)
    for n in range(5, 26):
        checks.append(all(c.regular for c in sig_of("gamma1", n).cusps))
    report(1, "signature regression", all(checks))


def test_criterion_02_area_constant():
    ok = (area_constant_c(sig_of("full", 1)) == Fraction(1, 12)
          and area_constant_c(sig_of("gamma0", 5)) == Fraction(1, 2)
          and area_constant_c(sig_of("gamma", 2)) == Fraction(1, 2))
    report(2, "area constant c exact values", ok)


def test_criterion_03_dimension_anchors():
    checks = []
    d = dims(sig_of("full", 1), 12)
    checks.append((d.dim_M, d.dim_S) == (2, 1))
    d = dims(sig_of("gamma", 2), 4)
    checks.append((d.dim_M, d.dim_S) == (3, 0))
    d = dims(sig_of("gamma1", 4), 3)
    checks.append((d.dim_M, d.dim_S) == (2, 0))
    checks.append(dims(sig_of("gamma1", 7), 3).dim_S == 1)
    with_minus_I = sig_of("gamma0", 5)
    checks.append(all(dims(with_minus_I, k).dim_M == 0
                      and dims(with_minus_I, k).dim_S == 0
                      for k in range(3, 100, 2)))
    report(3, "dimension anchors", all(checks))


def test_criterion_04_decomposition_identity():
    ks = [k for k in range(2, 61) if k != 1]
    ok = True
    for g, g1 in PAIRS:
        pair = pair_of(g, g1)
        for kind in ("M", "S"):
            done = check_decomposition_identity(pair, kind, ks)
            ok = ok and len(done) == len(ks)
    report(4, "decomposition identity on all four pairs, k in [2,60]", ok)


def test_criterion_05_theorem_slopes():
    ok = True
    for g, g1 in PAIRS:
        pair = pair_of(g, g1)
        P = pair.period()
        ks = [k for k in range(0, 5 + 3 * P + 1) if k != 1]
        for kind in ("M", "S"):
            for rat in pair.rationals:
                s = multiplicity_series(pair, rat, kind, ks)
                ok = ok and detect_slope(s, P, pair.c).exact_match
    s3 = pair_of(*PAIRS[3])
    expect = {"triv": Fraction(1, 12), "sign": Fraction(1, 12),
              "std": Fraction(1, 6)}
    ks = [k for k in range(0, 42) if k != 1]
    for label, slope in expect.items():
        s = multiplicity_series(s3, s3.rational_by_name(label), "M", ks)
        ok = ok and detect_slope(s, 12, s3.c).slope == slope
    d5 = pair_of(*PAIRS[0])
    ks = [k for k in range(0, 42) if k != 1]
    for rat in d5.rationals:
        s = multiplicity_series(d5, rat, "M", ks)
        r = detect_slope(s, 12, d5.c)
        ok = ok and r.slope == Fraction(1, 2) * rat.orbit_size
        if r.parity_class == "odd":
            ok = ok and r.window[0] == 5
    report(5, "exact slope match for every rep of every pair", ok)


def test_criterion_06_parity_vanishing():
    d5 = pair_of(*PAIRS[0])
    ks = [k for k in range(0, 101) if k != 1]
    ok = True
    for rat in d5.rationals:
        s = multiplicity_series(d5, rat, "M", ks)
        for k, v in s.entries.items():
            if s.parity_class == "even" and k % 2:
                ok = ok and v == 0
            if s.parity_class == "odd" and k % 2 == 0:
                ok = ok and v == 0
    report(6, "parity vanishing with zero exceptions", ok)


def test_criterion_07_lower_bound_monitor():
    ks = [k for k in range(0, 101) if k != 1]
    ok = True
    for g, g1 in PAIRS:
        pair = pair_of(g, g1)
        for kind in ("M", "S"):
            for rat in pair.rationals:
                s = multiplicity_series(pair, rat, kind, ks)
                r = monitor_lower_bound(pair, s, 24, 100)
                ok = ok and r.offset is not None and r.offset <= 24
    s3 = pair_of(*PAIRS[3])
    s = multiplicity_series(s3, s3.rational_by_name("std"), "M", ks)
    minimal = monitor_lower_bound(s3, s, 24, 100).offset
    ok = ok and minimal == 4
    report(7, "minimal even offset <= 24 everywhere; std offset = 4", ok)


def test_criterion_08_orbit_integrality():
    ks = [k for k in range(0, 101) if k != 1]
    ok = True
    for g, g1 in PAIRS[:2]:
        pair = pair_of(g, g1)
        for kind in ("M", "S"):
            for rat in pair.rationals:
                s = multiplicity_series(pair, rat, kind, ks, split=True)
                for k, v in s.entries.items():
                    ok = ok and s.per_member[k] * rat.orbit_size == v
    report(8, "orbit totals split exactly up to k = 100", ok)


def test_criterion_09_property_suites():
    from math import gcd

    from modmult.exact import cyclotomic_poly, euler_phi, mobius, poly_mul
    ok = True
    for n in range(1, 101):
        phi_n = cyclotomic_poly(n)
        ok = ok and len(phi_n) - 1 == euler_phi(n)
        ok = ok and sum(euler_phi(d) for d in range(1, n + 1)
                        if n % d == 0) == n
        if n >= 2:
            ok = ok and sum(mobius(d) for d in range(1, n + 1)
                            if n % d == 0) == 0
    # re-substitution of a representative solve
    A = [[6, 3, 2], [0, 1, 0], [0, 0, 2]]
    x = solve_linear_exact(A, [1, 1, 1])
    ok = ok and all(sum(Fraction(A[i][j]) * x[j] for j in range(3)) == 1
                    for i in range(3))
    # solution-independence under permuted pivoting
    d7 = pair_of(*PAIRS[1])
    n_cols = len(d7.cyclics)
    ks = [k for k in range(2, 61) if k != 1]
    for rat in d7.rationals:
        a = multiplicity_series(d7, rat, "M", ks)
        b = multiplicity_series(d7, rat, "M", ks,
                                column_order=list(reversed(range(n_cols))))
        ok = ok and a.entries == b.entries
    # degree-squares preflight on every pair
    for g, g1 in PAIRS:
        pair = pair_of(g, g1)
        total = sum(r.degree ** 2 * r.orbit_size for r in pair.rationals)
        parities = 1 if pair.G.iota is None or pair.G.iota_trivial else 2
        ok = ok and total == parities * pair.G.mu_proj
    # genus integrality on all built-in families
    for kind in ("gamma0", "gamma1", "gamma"):
        for n in range(1, 26):
            if kind == "gamma" and n > 12:
                continue
            ok = ok and sig_of(kind, n).genus >= 0
    report(9, "property suites", ok)


def test_criterion_10_determinism_and_runtime():
    start = time.monotonic()
    first, second = [], []
    for reports in (first, second):
        for g, g1 in PAIRS:
            config = VerificationConfig(g, g1, kmax=100)
            reports.append(json.dumps(run_verify(config), sort_keys=True))
    elapsed = time.monotonic() - start
    ok = elapsed < 60 and first == second \
        and all(json.loads(r)["pass"] for r in first)
    report(10, f"determinism and runtime ({elapsed:.2f}s for two rounds)", ok)
