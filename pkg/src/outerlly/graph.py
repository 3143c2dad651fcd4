"""Simple undirected graphs, maximal outerplanar recognition and serialization.

Vertices are dense integers ``0..n-1``. Neighbor lists are kept sorted so that
every iteration order in the package is deterministic.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

UNREACHABLE = None


class GraphError(ValueError):
    """Raised for malformed graphs, triangulations or edge queries."""


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    BFS distance rows are computed lazily and cached per source vertex. A row
    is built completely before it is installed in the cache, so concurrent
    readers see either no row or the finished one.
    """

    __slots__ = ("n", "adjacency", "_adjsets", "_dist")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]]):
        if n < 0 or len(adjacency) != n:
            raise GraphError("adjacency must have one entry per vertex")
        self.n = n
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self._adjsets = tuple(frozenset(nbrs) for nbrs in self.adjacency)
        self._dist: dict[int, tuple] = {}
        for v, nbrs in enumerate(self.adjacency):
            if len(nbrs) != len(self._adjsets[v]):
                raise GraphError(f"parallel edges at vertex {v}")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if not 0 <= u < n or v not in self._adjsets[u]:
                    raise GraphError(f"adjacency is not symmetric at {v}-{u}")

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adjsets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree_sequence(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def distance_row(self, v: int) -> tuple:
        row = self._dist.get(v)
        if row is None:
            dist: list[Optional[int]] = [UNREACHABLE] * self.n
            dist[v] = 0
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if dist[w] is None:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            row = tuple(dist)
            self._dist[v] = row
        return row

    def distance(self, u: int, v: int) -> Optional[int]:
        return self.distance_row(u)[v]

    def is_connected(self) -> bool:
        return self.n == 0 or all(d is not None for d in self.distance_row(0))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return graph_from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


class EdgeKind(enum.Enum):
    EXTERIOR = "exterior"
    INTERIOR = "interior"


@dataclass(frozen=True)
class PolygonTriangulation:
    """Triangulated convex ``n``-gon: boundary edges ``{i, i+1 mod n}`` plus diagonals."""

    n: int
    diagonals: frozenset

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise GraphError("a triangulation needs n >= 3")
        diags = set()
        for pair in self.diagonals:
            a, b = sorted(pair)
            if not 0 <= a < b < n:
                raise GraphError(f"diagonal {a}-{b} out of range")
            if b - a == 1 or (a == 0 and b == n - 1):
                raise GraphError(f"{a}-{b} is a boundary edge")
            diags.add((a, b))
        if len(diags) != n - 3:
            raise GraphError(f"expected {n - 3} diagonals, got {len(diags)}")
        ordered = sorted(diags)
        for i, (a, b) in enumerate(ordered):
            for c, d in ordered[i + 1:]:
                if a < c < b < d or c < a < d < b:
                    raise GraphError(f"diagonals {a}-{b} and {c}-{d} cross")
        object.__setattr__(self, "diagonals", frozenset(ordered))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "PolygonTriangulation":
        return cls(n, frozenset(tuple(sorted(p)) for p in pairs))

    def sorted_diagonals(self) -> list[tuple[int, int]]:
        return sorted(self.diagonals)

    def boundary_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted((i, (i + 1) % self.n))) for i in range(self.n))

    def to_code(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in self.sorted_diagonals())
        return f"{self.n}:{body}"

    @classmethod
    def from_code(cls, code: str) -> "PolygonTriangulation":
        head, sep, body = code.strip().partition(":")
        if not sep:
            raise GraphError(f"malformed triangulation code {code!r}")
        try:
            n = int(head)
            pairs = [tuple(int(t) for t in item.split("-")) for item in body.split(",") if item]
        except ValueError as exc:
            raise GraphError(f"malformed triangulation code {code!r}") from exc
        if any(len(p) != 2 or p[0] >= p[1] for p in pairs):
            raise GraphError(f"malformed triangulation code {code!r}")
        return cls.from_pairs(n, pairs)


@dataclass(frozen=True)
class OuterplanarWitness:
    """Outer Hamiltonian cycle of a maximal outerplanar graph.

    ``cycle[i]`` is the graph vertex sitting at polygon corner ``i``;
    ``triangulation`` uses corner labels.
    """

    cycle: tuple[int, ...]
    triangulation: PolygonTriangulation

    def position(self, v: int) -> int:
        return self.cycle.index(v)

    def is_boundary(self, x: int, y: int) -> bool:
        n = len(self.cycle)
        i, j = self.position(x), self.position(y)
        return (i - j) % n in (1, n - 1)


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {u}-{v} out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adjacency[u].add(v)
        adjacency[v].add(u)
    return Graph(n, adjacency)


def graph_from_triangulation(t: PolygonTriangulation) -> Graph:
    return graph_from_edges(t.n, list(t.boundary_edges()) + list(t.diagonals))


def fan_graph(n: int) -> Graph:
    """Hub ``0`` joined to every vertex of the path ``1-2-...-(n-1)``."""
    if n < 3:
        raise GraphError("fan graph needs n >= 3")
    edges = [(0, k) for k in range(1, n)] + [(k, k + 1) for k in range(1, n - 1)]
    return graph_from_edges(n, edges)


def fan_triangulation(n: int) -> PolygonTriangulation:
    return PolygonTriangulation.from_pairs(n, [(0, k) for k in range(2, n - 1)])


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(k, k + 1) for k in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return graph_from_edges(n, [(k, (k + 1) % n) for k in range(n)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def distances_from(g: Graph, v: int) -> dict[int, Optional[int]]:
    """BFS distances from ``v``; unreachable vertices map to ``None``."""
    return dict(enumerate(g.distance_row(v)))


def common_neighbors(g: Graph, x: int, y: int) -> list[int]:
    if x == y:
        raise GraphError("common neighbors need two distinct vertices")
    return sorted(g._adjsets[x] & g._adjsets[y])


def find_maximal_outerplanar_witness(g: Graph) -> Optional[OuterplanarWitness]:
    """Recognize a maximal outerplanar graph by ear reduction.

    Degree-2 vertices with adjacent neighbors are stripped until a triangle
    remains; the outer cycle is then rebuilt by re-inserting each ear between
    its two neighbors. Re-insertion requires the two neighbors to be
    consecutive on the current cycle, which rejects 2-trees such as
    ``K_{1,1,3}`` that ear reduction alone would accept.
    """
    n = g.n
    if n < 3 or g.num_edges != 2 * n - 3 or not g.is_connected():
        return None
    alive = [set(a) for a in g.adjacency]
    stack = [v for v in range(n) if len(alive[v]) == 2]
    removed = [False] * n
    ears: list[tuple[int, int, int]] = []
    remaining = n
    while remaining > 3:
        while stack and (removed[stack[-1]] or len(alive[stack[-1]]) != 2):
            stack.pop()
        if not stack:
            return None
        v = stack.pop()
        a, b = sorted(alive[v])
        if b not in alive[a]:
            return None
        ears.append((v, a, b))
        removed[v] = True
        remaining -= 1
        for u in (a, b):
            alive[u].discard(v)
            if len(alive[u]) == 2:
                stack.append(u)
    core = [v for v in range(n) if not removed[v]]
    p, q, r = core
    if not (q in alive[p] and r in alive[p] and r in alive[q]):
        return None
    # doubly linked cycle
    nxt = {p: q, q: r, r: p}
    prv = {q: p, r: q, p: r}
    for v, a, b in reversed(ears):
        if nxt[a] == b:
            pass
        elif nxt[b] == a:
            a, b = b, a
        else:
            return None
        nxt[a], prv[v], nxt[v], prv[b] = v, a, b, v
    cycle = [0]
    while len(cycle) < n:
        cycle.append(nxt[cycle[-1]])
    if cycle[-1] < cycle[1]:
        cycle = [0] + cycle[:0:-1]
    pos = {v: i for i, v in enumerate(cycle)}
    diagonals = []
    for u, v in g.edges():
        i, j = sorted((pos[u], pos[v]))
        if j - i != 1 and not (i == 0 and j == n - 1):
            diagonals.append((i, j))
    try:
        tri = PolygonTriangulation.from_pairs(n, diagonals)
    except GraphError:
        return None
    return OuterplanarWitness(tuple(cycle), tri)


def is_maximal_outerplanar(g: Graph) -> bool:
    return find_maximal_outerplanar_witness(g) is not None


def edge_kind(g: Graph, witness: OuterplanarWitness, x: int, y: int) -> EdgeKind:
    if not g.has_edge(x, y):
        raise GraphError(f"{x}-{y} is not an edge")
    kind = EdgeKind.EXTERIOR if witness.is_boundary(x, y) else EdgeKind.INTERIOR
    if g.n >= 4:
        expected = {EdgeKind.EXTERIOR: 1, EdgeKind.INTERIOR: 2}[kind]
        if len(common_neighbors(g, x, y)) != expected:
            raise GraphError(f"edge {x}-{y} has an inconsistent common neighborhood")
    return kind


# -- serialization ---------------------------------------------------------

def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return graph_from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def parse_graph_input(text: str) -> tuple[Graph, Optional[PolygonTriangulation]]:
    """Parse graph JSON or a triangulation code, chosen by the first character."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_json(stripped), None
    if stripped[:1].isdigit():
        t = PolygonTriangulation.from_code(stripped)
        return graph_from_triangulation(t), t
    raise GraphError("input must be graph JSON or a triangulation code")


def fraction_str(q: Fraction) -> str:
    """Exact ``p/q`` string; integers keep a ``/1`` denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def to_dot(
    g: Graph,
    witness: Optional[OuterplanarWitness] = None,
    kappa: Optional[Mapping[tuple[int, int], Fraction]] = None,
) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        attrs = []
        if witness is not None:
            style = "solid" if witness.is_boundary(u, v) else "dashed"
            attrs.append(f"style={style}")
        if kappa is not None and (u, v) in kappa:
            attrs.append(f'label="{fraction_str(kappa[(u, v)])}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
