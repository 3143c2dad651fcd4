"""Curvature reports and corpus-wide checks over maximal outerplanar graphs.

Every check returns a JSON-ready summary dict whose ``"ok"`` field decides
the CLI exit status. Results are assembled in enumeration order, so the
output does not depend on the number of worker processes.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .curvature import (
    alpha_schedule,
    alpha_transport,
    lly_edge,
    lly_via_alpha,
)
from .enumerate import enumerate_triangulations
from .formulas import (
    EXTERIOR_POSITIVE_PAIRS,
    EXTERIOR_TABLE,
    INTERIOR_TABLE,
    closed_form_kappa,
    extract_config,
    row_positive_pairs,
)
from .graph import (
    EdgeKind,
    Graph,
    GraphError,
    OuterplanarWitness,
    PolygonTriangulation,
    common_neighbors,
    edge_kind,
    fan_graph,
    find_maximal_outerplanar_witness,
    fraction_str,
    graph_from_triangulation,
)
from .transport import verify_duality

log = logging.getLogger(__name__)

DEFAULT_N_MAX = 12
MAX_DEGREE_BOUND = 9
BASE_CASE_N = 11
BASE_CASE_COUNT = 228

PROVENANCE = {
    "positivity": "checked on edges only; edge curvature >= k0 implies pair curvature >= k0 for every vertex pair",
    "arithmetic": "exact rationals, serialized as p/q",
}

METHODS = ("search", "alpha", "closed-form", "all")


class MethodMismatch(RuntimeError):
    """Two curvature methods disagreed on an edge."""


def _map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- single-graph reports ---------------------------------------------------

def edge_kappa(
    g: Graph, x: int, y: int, method: str, witness: Optional[OuterplanarWitness] = None
) -> Fraction:
    if method == "search":
        return lly_edge(g, x, y).kappa
    if method == "alpha":
        return lly_via_alpha(g, x, y).kappa
    if method == "closed-form":
        if witness is None:
            raise GraphError("closed-form curvature needs a maximal outerplanar graph")
        return closed_form_kappa(g, witness, x, y)
    if method == "all":
        values = {"search": lly_edge(g, x, y).kappa, "alpha": lly_via_alpha(g, x, y).kappa}
        if witness is not None:
            values["closed-form"] = closed_form_kappa(g, witness, x, y)
        if len(set(values.values())) != 1:
            detail = ", ".join(f"{k}={fraction_str(v)}" for k, v in values.items())
            raise MethodMismatch(f"edge {x}-{y}: {detail}")
        return values["search"]
    raise ValueError(f"unknown method {method!r}")


def curvature_report(
    g: Graph,
    graph_id: str,
    method: Optional[str] = None,
    witness: Optional[OuterplanarWitness] = None,
) -> dict:
    """Per-edge curvature report of ``g``.

    The default method is ``all`` for maximal outerplanar graphs and
    ``search`` otherwise.
    """
    if witness is None:
        witness = find_maximal_outerplanar_witness(g)
    if method is None:
        method = "all" if witness is not None else "search"
    if method == "closed-form" and witness is None:
        raise GraphError("closed-form curvature needs a maximal outerplanar graph")
    records = []
    kappas = []
    for u, v in g.edges():
        kappa = edge_kappa(g, u, v, method, witness)
        kappas.append(kappa)
        record = {
            "u": u,
            "v": v,
            "d_u": g.degree(u),
            "d_v": g.degree(v),
            "kappa": fraction_str(kappa),
            "method": method,
            "kind": None,
            "config": None,
        }
        if witness is not None:
            record["kind"] = edge_kind(g, witness, u, v).value
            cfg = extract_config(g, witness, u, v)
            record["config"] = {"x": cfg.x, "y": cfg.y, "deltas": list(cfg.deltas)}
        records.append(record)
    min_kappa = min(kappas) if kappas else None
    return {
        "graph": graph_id,
        "n": g.n,
        "maximal_outerplanar": witness is not None,
        "edges": records,
        "summary": {
            "num_edges": len(records),
            "max_degree": g.max_degree(),
            "min_kappa": None if min_kappa is None else fraction_str(min_kappa),
            "positively_curved": bool(kappas) and min_kappa > 0,
        },
        "provenance": PROVENANCE,
    }


def report_to_csv(report: dict) -> str:
    lines = ["u,v,kind,d_u,d_v,kappa,method"]
    for r in report["edges"]:
        kind = r["kind"] or ""
        lines.append(f"{r['u']},{r['v']},{kind},{r['d_u']},{r['d_v']},{r['kappa']},{r['method']}")
    return "\n".join(lines) + "\n"


def is_positively_curved(g: Graph) -> bool:
    return all(lly_edge(g, u, v).kappa > 0 for u, v in g.edges())


def min_edge_kappa(g: Graph) -> Fraction:
    return min(lly_edge(g, u, v).kappa for u, v in g.edges())


# -- corpus helpers -----------------------------------------------------------

def _graph_verdict(t: PolygonTriangulation) -> dict:
    g = graph_from_triangulation(t)
    kappa = min_edge_kappa(g)
    return {
        "code": t.to_code(),
        "max_degree": g.max_degree(),
        "min_kappa": fraction_str(kappa),
        "positively_curved": kappa > 0,
    }


def corpus_verdicts(n: int, jobs: int = 1) -> list[dict]:
    return _map(_graph_verdict, enumerate_triangulations(n), jobs)


def verify_theorem3(n_max: int = DEFAULT_N_MAX, jobs: int = 1) -> dict:
    """Every positively curved maximal outerplanar graph with ``n <= n_max`` has Δ <= 9."""
    if n_max > DEFAULT_N_MAX:
        log.warning("n_max=%d: corpus size grows like the Catalan numbers", n_max)
    per_n = {}
    counterexamples = []
    for n in range(4, n_max + 1):
        verdicts = corpus_verdicts(n, jobs)
        positive = [v for v in verdicts if v["positively_curved"]]
        per_n[str(n)] = {
            "graphs": len(verdicts),
            "positively_curved": len(positive),
            "max_degree_positive": max((v["max_degree"] for v in positive), default=None),
        }
        counterexamples += [v["code"] for v in positive if v["max_degree"] > MAX_DEGREE_BOUND]
    fan = fan_graph(10)
    witness = {
        "graph": "fan(10)",
        "max_degree": fan.max_degree(),
        "positively_curved": is_positively_curved(fan),
    }
    witness_ok = witness["positively_curved"] and witness["max_degree"] == MAX_DEGREE_BOUND
    return {
        "check": "theorem3",
        "n_max": n_max,
        "per_n": per_n,
        "counterexamples": counterexamples,
        "sharpness_witness": witness,
        "ok": not counterexamples and witness_ok,
    }


def verify_theorem4(n: int, jobs: int = 1) -> dict:
    """Verdicts for all maximal outerplanar graphs on ``n`` vertices.

    Fails when the base case count is wrong, when a positively curved graph
    exists for ``n >= 11``, or when none exists for ``n = 10``.
    """
    verdicts = corpus_verdicts(n, jobs)
    positive = [v["code"] for v in verdicts if v["positively_curved"]]
    problems = []
    if n == BASE_CASE_N and len(verdicts) != BASE_CASE_COUNT:
        problems.append(f"expected {BASE_CASE_COUNT} graphs, found {len(verdicts)}")
    if n >= BASE_CASE_N and positive:
        problems.append(f"positively curved graphs on {n} vertices: {positive}")
    if n == BASE_CASE_N - 1 and not positive:
        problems.append("no positively curved graph on 10 vertices")
    return {
        "check": "theorem4",
        "n": n,
        "graphs": len(verdicts),
        "positively_curved": len(positive),
        "verdicts": verdicts,
        "problems": problems,
        "ok": not problems,
    }


# -- formula tables -------------------------------------------------------------

def _row_label(deltas) -> str:
    return "".join(str(d) for d in deltas)


def table_reproduction() -> dict:
    """Positive degree pairs recomputed from the formulas versus the reference rows."""
    mismatches = []
    rows = {}
    for kind, table in ((EdgeKind.EXTERIOR, EXTERIOR_TABLE), (EdgeKind.INTERIOR, INTERIOR_TABLE)):
        for row in table:
            got = row_positive_pairs(row, kind)
            label = f"{kind.value}:{_row_label(row.deltas)}"
            rows[label] = sorted(list(p) for p in got)
            if got != row.positive_pairs:
                mismatches.append({
                    "row": label,
                    "missing": sorted(list(p) for p in row.positive_pairs - got),
                    "extra": sorted(list(p) for p in got - row.positive_pairs),
                })
    exterior_union = frozenset().union(*(row_positive_pairs(r, EdgeKind.EXTERIOR) for r in EXTERIOR_TABLE))
    if exterior_union != EXTERIOR_POSITIVE_PAIRS:
        mismatches.append({"row": "exterior:all", "got": sorted(list(p) for p in exterior_union)})
    return {"rows": rows, "mismatches": mismatches, "ok": not mismatches}


def _edge_agreement(t: PolygonTriangulation) -> Optional[dict]:
    g = graph_from_triangulation(t)
    witness = find_maximal_outerplanar_witness(g)
    for u, v in g.edges():
        search = lly_edge(g, u, v).kappa
        alpha = lly_via_alpha(g, u, v).kappa
        closed = closed_form_kappa(g, witness, u, v)
        if not search == alpha == closed:
            return {
                "code": t.to_code(),
                "edge": [u, v],
                "search": fraction_str(search),
                "alpha": fraction_str(alpha),
                "closed_form": fraction_str(closed),
            }
    return None


def verify_tables(n_max: int = 11, jobs: int = 1) -> dict:
    """Table reproduction plus three-way curvature agreement on the corpus."""
    tables = table_reproduction()
    counterexample = None
    edges = 0
    for n in range(3, n_max + 1):
        corpus = enumerate_triangulations(n)
        edges += len(corpus) * (2 * n - 3)
        for found in _map(_edge_agreement, corpus, jobs):
            if found is not None:
                counterexample = found
                break
        if counterexample is not None:
            break
    return {
        "check": "tables",
        "n_max": n_max,
        "tables": tables,
        "edges_checked": edges,
        "counterexample": counterexample,
        "ok": tables["ok"] and counterexample is None,
    }


# -- structural lemmas --------------------------------------------------------

def lemma1_check(g: Graph, x: int, y: int, subset: Iterable[int]) -> bool:
    """Neighborhood inequality for an edge ``xy`` with ``d_x <= d_y``.

    ``|N(S) ∩ N(y)| > (s/d_x) d_y - (k + 1 + |N(x,y)|) + |N(S) ∩ N(x,y)|``
    with ``s = |S|`` and ``k = |S ∩ N(y)|``.
    """
    if not g.has_edge(x, y):
        raise GraphError(f"{x}-{y} is not an edge")
    S = set(subset)
    allowed = set(g.neighbors(x)) - {y}
    if not S <= allowed:
        raise GraphError(f"S must be a subset of N({x}) \\ {{{y}}}")
    ny = set(g.neighbors(y))
    nxy = set(common_neighbors(g, x, y))
    ns = set().union(*(g.neighbors(s) for s in S)) if S else set()
    s, k = len(S), len(S & ny)
    lhs = len(ns & ny)
    rhs = Fraction(s * g.degree(y), g.degree(x)) - (k + 1 + len(nxy)) + len(ns & nxy)
    return lhs > rhs


def _lemma1_graph(t: PolygonTriangulation) -> Optional[dict]:
    g = graph_from_triangulation(t)
    if not is_positively_curved(g):
        return None
    for u, v in g.edges():
        x, y = (u, v) if g.degree(u) <= g.degree(v) else (v, u)
        pairs = [(x, y)] if g.degree(x) < g.degree(y) else [(x, y), (y, x)]
        for a, b in pairs:
            if not lemma1_check(g, a, b, set(g.neighbors(a)) - {b}):
                return {"code": t.to_code(), "edge": [a, b]}
    return {"code": t.to_code(), "edge": None}


def verify_lemma1(n_max: int = 11, jobs: int = 1) -> dict:
    """Corollary instance ``S = N(x) \\ {y}`` on every edge of every positively curved graph."""
    checked = 0
    violations = []
    for n in range(3, n_max + 1):
        for result in _map(_lemma1_graph, enumerate_triangulations(n), jobs):
            if result is None:
                continue
            checked += 1
            if result["edge"] is not None:
                violations.append(result)
    return {"check": "lemma1", "n_max": n_max, "positive_graphs": checked,
            "violations": violations, "ok": not violations}


def neighborhood_is_path(g: Graph, x: int) -> bool:
    """Whether ``G[N(x)]`` is a single path on ``d_x`` vertices."""
    nbrs = set(g.neighbors(x))
    if not nbrs:
        return False
    inner = {v: [u for u in g.neighbors(v) if u in nbrs] for v in nbrs}
    edges = sum(len(a) for a in inner.values()) // 2
    if edges != len(nbrs) - 1 or any(len(a) > 2 for a in inner.values()):
        return False
    if len(nbrs) > 1 and sum(1 for a in inner.values() if len(a) <= 1) != 2:
        return False
    seen, stack = set(), [next(iter(sorted(nbrs)))]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(inner[v])
    return seen == nbrs


def _lemma4_graph(t: PolygonTriangulation) -> list[int]:
    g = graph_from_triangulation(t)
    return [x for x in range(g.n) if not neighborhood_is_path(g, x)]


def verify_lemma4(n_max: int = DEFAULT_N_MAX, jobs: int = 1) -> dict:
    violations = []
    graphs = 0
    for n in range(3, n_max + 1):
        corpus = enumerate_triangulations(n)
        graphs += len(corpus)
        for t, bad in zip(corpus, _map(_lemma4_graph, corpus, jobs)):
            if bad:
                violations.append({"code": t.to_code(), "vertices": bad})
    return {"check": "lemma4", "n_max": n_max, "graphs": graphs,
            "violations": violations, "ok": not violations}


def alpha_certificates(g: Graph, x: int, y: int) -> Iterable[bool]:
    """Duality verdict of each transport plan the α-limit route solves for ``xy``.

    Mirrors :func:`lly_via_alpha`: the schedule stops once two consecutive
    ratios agree.
    """
    previous = None
    for alpha in alpha_schedule(g, x, y):
        coupling, m1, m2 = alpha_transport(g, x, y, alpha)
        yield verify_duality(g, coupling, m1, m2)
        ratio = (1 - coupling.cost / g.distance(x, y)) / (1 - alpha)
        if ratio == previous:
            return
        previous = ratio


def report_schema() -> dict:
    """JSON Schema of :func:`curvature_report` output."""
    from importlib.resources import files

    return json.loads(files(__package__).joinpath("report_schema.json").read_text(encoding="utf-8"))
