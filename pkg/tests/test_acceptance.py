"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion. All comparisons are exact rational equality.
"""

import time
from fractions import Fraction

import pytest

from outerlly import curvature
from outerlly.curvature import lly_edge, lly_via_alpha
from outerlly.enumerate import enumerate_triangulations
from outerlly.formulas import (
    EXTERIOR_TABLE,
    INTERIOR_TABLE,
    closed_form_kappa,
    exterior_kappa,
    interior_kappa,
    row_positive_pairs,
)
from outerlly.graph import (
    EdgeKind,
    complete_graph,
    cycle_graph,
    fan_graph,
    find_maximal_outerplanar_witness,
    graph_from_triangulation,
    path_graph,
)
from outerlly.transport import verify_duality
from outerlly.verify import (
    verify_lemma1,
    verify_lemma4,
    verify_theorem3,
    verify_theorem4,
)


def report(number, title, ok, elapsed, limit):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s)")
    assert ok, f"criterion {number} failed"
    assert elapsed < limit, f"criterion {number} exceeded {limit}s"


def corpus(n_lo, n_hi):
    for n in range(n_lo, n_hi + 1):
        for t in enumerate_triangulations(n):
            yield t, graph_from_triangulation(t)


def test_1_table_rows():
    start = time.perf_counter()
    exterior = {
        (2, 2, 0, 0): Fraction(3, 2),
        (2, 6, 0, 1): Fraction(1, 3),
        (3, 4, 1, 1): Fraction(1, 4),
        (2, 10, 0, 1): Fraction(0),
    }
    interior = {
        (3, 3, 0, 0, 0, 0): Fraction(4, 3),
        (4, 4, 0, 1, 0, 1): Fraction(3, 4),
        (5, 6, 1, 1, 1, 1): Fraction(2, 15),
        (3, 7, 0, 0, 0, 1): Fraction(1, 3),
    }
    ok = all(exterior_kappa(*k) == v for k, v in exterior.items())
    ok &= all(interior_kappa(*k) == v for k, v in interior.items())
    # every displayed formula (with its 2 d_x <= d_y split) on its admissible range
    for kind, table, kappa in ((EdgeKind.EXTERIOR, EXTERIOR_TABLE, exterior_kappa),
                               (EdgeKind.INTERIOR, INTERIOR_TABLE, interior_kappa)):
        for row in table:
            for dx in range(2, 13):
                for dy in range(dx, 13):
                    if row.admits(dx, dy):
                        ok &= row.value(dx, dy) == kappa(dx, dy, *row.deltas)
    report(1, "table-row reproduction", ok, time.perf_counter() - start, 1)


def test_2_positive_pair_sets():
    start = time.perf_counter()
    expected_exterior = {(2, k) for k in range(2, 10)} | {(3, 3), (3, 4)}
    expected_interior = {
        (0, 0, 0, 0): {(3, 3)},
        (0, 0, 0, 1): {(3, k) for k in range(4, 10)},
        (0, 0, 1, 1): {(3, k) for k in range(5, 10)},
        (0, 1, 0, 1): {(4, 4), (4, 5), (4, 6), (5, 5)},
        (0, 1, 1, 0): {(4, 4), (4, 5), (4, 6)},
        (0, 1, 1, 1): {(4, 5), (4, 6), (4, 7), (5, 5)},
        (1, 1, 0, 1): {(5, 5)},
        (1, 1, 1, 1): {(5, 5), (5, 6)},
    }
    ext = set().union(*(row_positive_pairs(r, EdgeKind.EXTERIOR) for r in EXTERIOR_TABLE))
    ok = ext == expected_exterior
    ok &= {r.deltas: set(row_positive_pairs(r, EdgeKind.INTERIOR)) for r in INTERIOR_TABLE} == expected_interior
    ok &= interior_kappa(3, 4, 0, 0, 0, 1) > 0
    report(2, "positive degree-pair sets", ok, time.perf_counter() - start, 1)


def test_3_base_case():
    start = time.perf_counter()
    r = verify_theorem4(11)
    ok = r["ok"] and r["graphs"] == 228 and r["positively_curved"] == 0
    ok &= all(Fraction(v["min_kappa"]) <= 0 for v in r["verdicts"])
    report(3, "228 graphs on 11 vertices, none positively curved", ok, time.perf_counter() - start, 60)


def test_4_sharpness():
    start = time.perf_counter()
    g10, g11 = fan_graph(10), fan_graph(11)
    kappas = [lly_edge(g10, u, v).kappa for u, v in g10.edges()]
    ok = len(kappas) == 17 and all(k > 0 for k in kappas) and g10.max_degree() == 9
    ok &= not all(lly_edge(g11, u, v).kappa > 0 for u, v in g11.edges())
    report(4, "fan(10) positive with max degree 9, fan(11) not", ok, time.perf_counter() - start, 1)


def test_5_theorem3():
    start = time.perf_counter()
    r = verify_theorem3(12)
    ok = r["ok"] and not r["counterexamples"]
    ok &= all((v["max_degree_positive"] or 0) <= 9 for v in r["per_n"].values())
    report(5, "max degree <= 9 for positively curved graphs, n <= 12", ok, time.perf_counter() - start, 300)


def _criterion6_edges():
    for _, g in corpus(3, 9):
        for e in g.edges():
            yield g, e
    extra = [complete_graph(2)] + [path_graph(n) for n in range(3, 9)] + [cycle_graph(n) for n in range(3, 9)]
    for g in extra:
        for e in g.edges():
            yield g, e


@pytest.fixture(scope="module")
def transport_calls():
    """Run criterion 6 once, recording every transport problem it solves."""
    calls = []
    original = curvature.wasserstein

    def recording(g, m1, m2):
        coupling = original(g, m1, m2)
        calls.append((g, m1, m2, coupling))
        return coupling

    curvature.wasserstein = recording
    start = time.perf_counter()
    try:
        mismatches = [(g, e) for g, e in _criterion6_edges()
                      if lly_edge(g, *e).kappa != lly_via_alpha(g, *e).kappa]
    finally:
        curvature.wasserstein = original
    return mismatches, calls, time.perf_counter() - start


def test_6_cross_oracle(transport_calls):
    mismatches, calls, elapsed = transport_calls
    ok = not mismatches and len(calls) > 0
    report(6, "integer search equals alpha limit, n <= 9 plus paths and cycles", ok, elapsed, 120)


def test_7_formula_vs_search():
    start = time.perf_counter()
    ok = True
    edges = 0
    for _, g in corpus(3, 11):
        w = find_maximal_outerplanar_witness(g)
        for u, v in g.edges():
            edges += 1
            ok &= closed_form_kappa(g, w, u, v) == lly_edge(g, u, v).kappa
    ok &= edges == 6373
    report(7, f"closed form equals search on {edges} edges, n <= 11", ok, time.perf_counter() - start, 180)


def test_8_duality_certificates(transport_calls):
    _, calls, _ = transport_calls
    start = time.perf_counter()
    ok = bool(calls) and all(verify_duality(g, c, m1, m2) for g, m1, m2, c in calls)
    report(8, f"{len(calls)} transport plans pass duality checks", ok, time.perf_counter() - start, 120)


def test_9_lemma4():
    start = time.perf_counter()
    r = verify_lemma4(12)
    report(9, "every neighborhood induces a path, n <= 12", r["ok"], time.perf_counter() - start, 60)


def test_10_lemma1():
    start = time.perf_counter()
    r = verify_lemma1(11)
    ok = r["ok"] and r["positive_graphs"] > 0
    report(10, "neighborhood inequality on positively curved graphs, n <= 11", ok, time.perf_counter() - start, 60)
