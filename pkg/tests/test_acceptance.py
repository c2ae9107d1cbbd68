"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.  All randomised checks use
seed 0, fixed before any result was seen.
"""

from __future__ import annotations

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from hajoslab.canonical import is_isomorphic
from hajoslab.coloring import chromatic_number
from hajoslab.complex import (SimplicialComplex, betti_numbers, euler_characteristic,
                              neighborhood_complex)
from hajoslab.constructions import (MergeSpec, build_triangle_pair, build_hexagon_pair, build_gn, build_gn_prime,
                                    hajos_merge, vertex_identify)
from hajoslab.experiments import run_batch, run_gnp
from hajoslab.generators import CraConfig, UraConfig, cra, ura
from hajoslab.graph import Graph
from hajoslab.morse import (FacePoset, build_gn_matching, build_gn_prime_matching, critical_cells,
                            is_acyclic, patchwork_union, random_acyclic_matching)
from hajoslab.verify import run_suite
from oracles import all_faces, brute_reduced_betti

SEED = 0
URA_REFERENCE = {3: 0.67, 4: 0.74, 5: 0.81, 6: 0.83}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_c01_triangle_merge_is_c5():
    t0 = time.perf_counter()
    g1, g2, _ = build_triangle_pair()
    c5 = Graph.cycle(5)
    results = []
    for e1 in g1.edges:
        for e2 in g2.edges:
            for ident in ((0, 0), (0, 1), (1, 0), (1, 1)):
                results.append(is_isomorphic(hajos_merge(g1, g2, MergeSpec(e1, e2, ident)), c5))
    dt = time.perf_counter() - t0
    report(1, all(results) and len(results) == 36 and dt < 1,
           f"{sum(results)}/36 oriented merges (9 edge pairs) isomorphic to C5 in {dt:.3f}s")


def test_c02_gn_betti():
    t0 = time.perf_counter()
    bad = []
    for n in (5, 6, 7, 8):
        for field in ("gf2", "q"):
            b = betti_numbers(neighborhood_complex(build_gn(n)), 2, field).values
            if b != (0, 2 * n + 5, 0):
                bad.append(("G", n, field, b))
            b = betti_numbers(neighborhood_complex(build_gn_prime(n)), 2, field).values
            if b != (0, 0, 2 * n - 1):
                bad.append(("G'", n, field, b))
    dt = time.perf_counter() - t0
    report(2, not bad and dt < 60, f"16 Betti vectors, mismatches={bad} in {dt:.1f}s")


def test_c03_gn_chromatic():
    t0 = time.perf_counter()
    chis = {n: chromatic_number(build_gn(n)) for n in (5, 6, 7, 8)}
    dt = time.perf_counter() - t0
    report(3, all(c == 4 for c in chis.values()) and dt < 30, f"chi={chis} in {dt:.2f}s")


def test_c04_hexagon_identification():
    g, pair = build_hexagon_pair()
    before = betti_numbers(neighborhood_complex(g), 1)[1]
    after = betti_numbers(neighborhood_complex(vertex_identify(g, [pair])), 1)[1]
    report(4, (before, after) == (2, 3), f"b1 before={before} after={after}")


def test_c05_far_identification():
    rep = run_suite("far-identification", 100, SEED)
    report(5, rep.passed == 100, rep.line())


def test_c06_circle_suites():
    a = run_suite("merge-circle", 100, SEED)
    b = run_suite("split-circle", 100, SEED)
    report(6, a.passed == 100 and b.passed == 100, f"{a.line()}; {b.line()}")


def test_c07_no_increase_suites():
    a = run_suite("short-path-identification", 100, SEED)
    b = run_suite("distance-two-identification", 100, SEED)
    report(7, a.passed == 100 and b.passed == 100, f"{a.line()}; {b.line()}")


def test_c08_connectivity_exhaustive():
    rep = run_suite("connectivity", max_order=7)
    report(8, rep.ok and rep.trials == 995, f"{rep.line()} (connected graphs on 2..7 vertices)")


def _morse_check(n: int, build, dim: int, expected: int) -> tuple[bool, str]:
    poset, fibers = build(n)
    total = not fibers.unlabeled() and fibers.order_violation() is None
    m = patchwork_union(fibers)
    acyclic = is_acyclic(m)[0]
    crit = critical_cells(m)
    euler_ok = crit.euler() == euler_characteristic(fibers_complex(build, n))
    ok = total and acyclic and crit.counts == {dim: expected} and euler_ok
    return ok, f"n={n} critical={crit.counts} euler_ok={euler_ok}"


def fibers_complex(build, n: int) -> SimplicialComplex:
    g = build_gn(n) if build is build_gn_matching else build_gn_prime(n)
    return neighborhood_complex(g)


def test_c09_morse_fixtures():
    parts = []
    for n in (5, 6):
        parts.append(_morse_check(n, build_gn_matching, 1, 2 * n + 5))
        parts.append(_morse_check(n, build_gn_prime_matching, 2, 2 * n - 1))
    report(9, all(ok for ok, _ in parts), "; ".join(d for _, d in parts))


def random_complex(rng: random.Random, n_vertices: int, max_facets: int, max_size: int) -> SimplicialComplex:
    verts = list(range(rng.randint(1, n_vertices)))
    facets = [rng.sample(verts, rng.randint(1, min(max_size, len(verts))))
              for _ in range(rng.randint(1, max_facets))]
    return SimplicialComplex(facets, verts)


def test_c10_morse_inequalities():
    rng = random.Random(SEED)
    passed = 0
    for _ in range(200):
        k = random_complex(rng, 10, 6, 4)
        m = random_acyclic_matching(FacePoset.of_complex(k, include_empty=True), rng)
        crit = critical_cells(m).total
        top = k.dimension
        brute = brute_reduced_betti(k.facets, top)
        ours = betti_numbers(k, top, "q").values
        ok = list(ours) == brute and all(brute[i] <= crit.get(i, 0) for i in range(top + 1))
        # with the empty face as a cell, both sides are reduced Euler characteristics
        ok = ok and sum((-1) ** d * c for d, c in crit.items()) == sum((-1) ** i * b for i, b in enumerate(brute))
        passed += ok
    report(10, passed == 200, f"{passed}/200 matchings satisfy b_i <= c_i")


def test_c11_cra_trend():
    t0 = time.perf_counter()
    frac = {}
    for k in (3, 4, 5):
        for p in (0.02, 0.1, 0.5):
            _, s = run_batch(cra(CraConfig(k, p, 500, SEED)), workers=1)
            frac[k, p] = float(s.zero_betti_fraction)
    dt = time.perf_counter() - t0
    trend = all(frac[k, 0.02] > frac[k, 0.1] > frac[k, 0.5] for k in (3, 4, 5))
    ok = trend and frac[3, 0.5] <= 0.02 and frac[5, 0.02] >= 0.70 and dt <= 1800
    table = " ".join(f"k{k}/p{p}={v:.3f}" for (k, p), v in frac.items())
    report(11, ok, f"{table} in {dt:.0f}s")


def test_c12_ura_trend():
    t0 = time.perf_counter()
    frac = {}
    for k in (3, 4, 5, 6):
        _, s = run_batch(ura(UraConfig(k, 200, 12, 12, SEED)), workers=1)
        frac[k] = float(s.zero_betti_fraction)
    dt = time.perf_counter() - t0
    within = all(abs(frac[k] - URA_REFERENCE[k]) <= 0.15 for k in frac)
    drops = [frac[k] - frac[k + 1] for k in (3, 4, 5) if frac[k + 1] < frac[k]]
    monotone = len(drops) <= 1 and all(d <= 0.05 for d in drops)
    table = " ".join(f"k{k}={v:.3f}(ref {URA_REFERENCE[k]})" for k, v in frac.items())
    report(12, within and monotone and dt <= 1800, f"{table} monotone={monotone} in {dt:.0f}s")


def test_c13_gnp_baseline():
    _, s = run_gnp(30, 0.5, 200, SEED, workers=1)
    f = float(s.zero_betti_fraction)
    report(13, f >= 0.9, f"G(30,1/2) zero_betti_fraction={f:.3f} over {s.count} samples")


def test_c14_oracle_equivalence():
    rng = random.Random(SEED)
    passed = done = 0
    while done < 500:
        k = random_complex(rng, 6, 4, 4)
        if len(all_faces(k.facets)) > 12:
            continue
        done += 1
        top = k.dimension
        brute = brute_reduced_betti(k.facets, top)
        ours = [list(betti_numbers(k, top, f, fan=fan).values) for f in ("gf2", "q") for fan in (True, False)]
        passed += all(v == brute for v in ours)
    report(14, passed == 500, f"{passed}/500 complexes with <= 12 faces match the dense oracle")


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
