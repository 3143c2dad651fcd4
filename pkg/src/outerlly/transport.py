"""Exact Wasserstein-1 distance between vertex measures on a graph.

Masses are scaled by the LCM of their denominators to integer supplies, an
optimal transport plan is found with successive shortest paths (Dijkstra on
reduced costs), and a 1-Lipschitz Kantorovich potential is read off the final
residual network as a certificate of optimality.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graph import Graph, fraction_str


class TransportError(ValueError):
    pass


class ProbabilityMeasure(Mapping):
    """Finitely supported probability measure with exact rational masses.

    Zero masses are dropped; the masses must be nonnegative and sum to 1.
    """

    __slots__ = ("_mass",)

    def __init__(self, masses: Mapping[int, object]):
        mass = {}
        for v, m in masses.items():
            m = Fraction(m)
            if m < 0:
                raise TransportError(f"negative mass at vertex {v}")
            if m:
                mass[int(v)] = m
        if sum(mass.values()) != 1:
            raise TransportError("masses must sum to exactly 1")
        self._mass = dict(sorted(mass.items()))

    def __getitem__(self, v):
        return self._mass.get(v, Fraction(0))

    def __iter__(self):
        return iter(self._mass)

    def __len__(self):
        return len(self._mass)

    @property
    def support(self) -> list[int]:
        return list(self._mass)

    def to_json(self) -> str:
        return json.dumps({str(v): fraction_str(m) for v, m in self._mass.items()}, sort_keys=True)

    def __repr__(self):
        body = ", ".join(f"{v}: {m}" for v, m in self._mass.items())
        return f"ProbabilityMeasure({{{body}}})"


@dataclass
class Coupling:
    """Transport plan with its cost and a dual certificate.

    ``potentials`` is a Kantorovich potential ``f`` on the union of the two
    supports: ``f(u) - f(v) <= d(u, v)`` for every pair, and every arc with
    positive flow ``u -> v`` is tight, ``f(u) - f(v) == d(u, v)``.
    """

    flows: dict[tuple[int, int], Fraction]
    cost: Fraction
    potentials: dict[int, Fraction] = field(default_factory=dict)


def lazy_walk_measure(g: Graph, v: int, alpha) -> ProbabilityMeasure:
    """Mass ``alpha`` on ``v`` and ``(1 - alpha)/d_v`` on each neighbor."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise TransportError("alpha must lie in [0, 1]")
    deg = g.degree(v)
    if alpha == 1:
        return ProbabilityMeasure({v: 1})
    if deg == 0:
        raise TransportError(f"vertex {v} is isolated")
    share = (1 - alpha) / deg
    masses = {u: share for u in g.neighbors(v)}
    masses[v] = alpha
    return ProbabilityMeasure(masses)


def _pair_distances(g: Graph, vertices: list[int]) -> dict[tuple[int, int], int]:
    dist = {}
    for u in vertices:
        row = g.distance_row(u)
        for v in vertices:
            if row[v] is None:
                raise TransportError(f"vertices {u} and {v} lie in different components")
            dist[u, v] = row[v]
    return dist


class _FlowNetwork:
    """Residual network for integer min-cost flow (successive shortest paths)."""

    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_arc(self, u: int, v: int, cap: int, cost: int) -> int:
        idx = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.head[u].append(idx)
        self.head[v].append(idx + 1)
        return idx

    def min_cost_flow(self, s: int, t: int, demand: int) -> int:
        potential = [0] * self.size
        sent = 0
        total = 0
        while sent < demand:
            dist = [None] * self.size
            parent = [-1] * self.size
            dist[s] = 0
            heap = [(0, s)]
            while heap:
                d, u = heapq.heappop(heap)
                if d != dist[u]:
                    continue
                for idx in self.head[u]:
                    if self.cap[idx] <= 0:
                        continue
                    v = self.to[idx]
                    nd = d + self.cost[idx] + potential[u] - potential[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        parent[v] = idx
                        heapq.heappush(heap, (nd, v))
            if dist[t] is None:
                raise TransportError("supplies cannot be routed to demands")
            for v in range(self.size):
                if dist[v] is not None:
                    potential[v] += dist[v]
            push = demand - sent
            v = t
            while v != s:
                idx = parent[v]
                push = min(push, self.cap[idx])
                v = self.to[idx ^ 1]
            v = t
            while v != s:
                idx = parent[v]
                self.cap[idx] -= push
                self.cap[idx ^ 1] += push
                total += push * self.cost[idx]
                v = self.to[idx ^ 1]
            sent += push
        return total


def _kantorovich_potential(
    vertices: list[int],
    dist: Mapping[tuple[int, int], int],
    flows: Mapping[tuple[int, int], int],
) -> dict[int, int]:
    """Shortest-path potentials of the residual transshipment network.

    Arcs ``u -> v`` of cost ``d(u, v)`` are uncapacitated; every positive
    flow adds a reverse arc of cost ``-d(u, v)``. Bellman-Ford from a virtual
    root gives ``pi`` with ``pi(v) <= pi(u) + cost``; ``f = -pi`` is then
    1-Lipschitz and tight on the flow.
    """
    arcs = [(u, v, dist[u, v]) for u in vertices for v in vertices if u != v]
    arcs += [(v, u, -dist[u, v]) for (u, v), q in flows.items() if q > 0 and u != v]
    pi = {v: 0 for v in vertices}
    for _ in range(len(vertices) + 1):
        changed = False
        for u, v, c in arcs:
            if pi[u] + c < pi[v]:
                pi[v] = pi[u] + c
                changed = True
        if not changed:
            break
    else:
        raise TransportError("residual network has a negative cycle; plan is not optimal")
    base = pi[vertices[0]]
    return {v: base - pi[v] for v in vertices}


def wasserstein(g: Graph, m1: ProbabilityMeasure, m2: ProbabilityMeasure) -> Coupling:
    """Optimal coupling of ``m1`` and ``m2`` under the graph metric, exactly."""
    src, dst = m1.support, m2.support
    vertices = sorted(set(src) | set(dst))
    dist = _pair_distances(g, vertices)
    scale = 1
    for m in list(m1.values()) + list(m2.values()):
        scale = math.lcm(scale, m.denominator)
    supply = {u: int(m1[u] * scale) for u in src}
    demand = {v: int(m2[v] * scale) for v in dst}

    # nodes: 0 = source, 1 = sink, then left copies, then right copies
    net = _FlowNetwork(2 + len(src) + len(dst))
    left = {u: 2 + i for i, u in enumerate(src)}
    right = {v: 2 + len(src) + j for j, v in enumerate(dst)}
    for u in src:
        net.add_arc(0, left[u], supply[u], 0)
    for v in dst:
        net.add_arc(right[v], 1, demand[v], 0)
    arc_of = {}
    for u in src:
        for v in dst:
            arc_of[u, v] = net.add_arc(left[u], right[v], scale, dist[u, v])
    total = net.min_cost_flow(0, 1, scale)

    int_flows = {(u, v): net.cap[idx ^ 1] for (u, v), idx in arc_of.items() if net.cap[idx ^ 1] > 0}
    pot = _kantorovich_potential(vertices, dist, int_flows)
    return Coupling(
        flows={k: Fraction(q, scale) for k, q in sorted(int_flows.items())},
        cost=Fraction(total, scale),
        potentials={v: Fraction(p) for v, p in pot.items()},
    )


def verify_duality(
    g: Graph, c: Coupling, m1: ProbabilityMeasure, m2: ProbabilityMeasure
) -> bool:
    """Recheck a coupling against its dual certificate, independently of the solver.

    Checks the marginals, the primal cost, dual feasibility (potentials are
    1-Lipschitz on every pair of support vertices), complementary slackness on
    positive flows, and equality of primal cost and dual objective.
    """
    vertices = sorted(set(m1) | set(m2))
    if set(c.potentials) != set(vertices):
        return False
    try:
        dist = _pair_distances(g, vertices)
    except TransportError:
        return False
    rows = {u: Fraction(0) for u in vertices}
    cols = {v: Fraction(0) for v in vertices}
    primal = Fraction(0)
    for (u, v), q in c.flows.items():
        if q < 0 or u not in rows or v not in cols:
            return False
        rows[u] += q
        cols[v] += q
        primal += q * dist[u, v]
        if q > 0 and c.potentials[u] - c.potentials[v] != dist[u, v]:
            return False
    if any(rows[v] != m1[v] or cols[v] != m2[v] for v in vertices):
        return False
    if primal != c.cost:
        return False
    f = c.potentials
    if any(f[u] - f[v] > dist[u, v] for u in vertices for v in vertices):
        return False
    dual = sum((f[x] * (m1[x] - m2[x]) for x in vertices), Fraction(0))
    return dual == c.cost
