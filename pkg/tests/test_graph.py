import itertools
import json
from concurrent.futures import ThreadPoolExecutor

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from outerlly.enumerate import canonical_code, enumerate_triangulations
from outerlly.graph import (
    EdgeKind,
    GraphError,
    PolygonTriangulation,
    common_neighbors,
    complete_graph,
    cycle_graph,
    distances_from,
    edge_kind,
    fan_graph,
    fan_triangulation,
    find_maximal_outerplanar_witness,
    graph_from_edges,
    graph_from_json,
    graph_from_triangulation,
    graph_to_json,
    is_maximal_outerplanar,
    parse_graph_input,
    path_graph,
    to_dot,
)


def k4_minus_13():
    return graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return graph_from_edges(n, edges)


class TestConstruction:
    def test_triangle(self):
        g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert g == complete_graph(3)
        assert g.adjacency == ((1, 2), (0, 2), (0, 1))

    def test_single_edge(self):
        g = graph_from_edges(2, [(0, 1)])
        assert g.edges() == [(0, 1)]

    def test_duplicates_collapse(self):
        g = graph_from_edges(4, [(0, 1), (0, 1), (1, 0)])
        assert g.num_edges == 1
        assert g.degree(0) == 1 and g.degree(3) == 0

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(GraphError):
            graph_from_edges(3, edges)


class TestTriangulation:
    def test_triangle(self):
        assert graph_from_triangulation(PolygonTriangulation.from_pairs(3, [])) == complete_graph(3)

    def test_square(self):
        g = graph_from_triangulation(PolygonTriangulation.from_pairs(4, [(0, 2)]))
        assert g == k4_minus_13()
        assert not g.has_edge(1, 3)

    def test_pentagon_fan(self):
        g = graph_from_triangulation(PolygonTriangulation.from_pairs(5, [(0, 2), (0, 3)]))
        assert g.num_edges == 7 == 2 * 5 - 3
        assert is_maximal_outerplanar(g)

    def test_crossing_rejected(self):
        with pytest.raises(GraphError, match="cross"):
            PolygonTriangulation.from_pairs(6, [(0, 2), (1, 3), (0, 4)])

    @pytest.mark.parametrize("pairs", [[(0, 1)], [], [(0, 2), (0, 3), (0, 4)]])
    def test_wrong_diagonals_rejected(self, pairs):
        with pytest.raises(GraphError):
            PolygonTriangulation.from_pairs(5, pairs)

    def test_code_round_trip(self):
        t = PolygonTriangulation.from_pairs(6, [(2, 4), (0, 2), (0, 4)])
        assert t.to_code() == "6:0-2,0-4,2-4"
        assert PolygonTriangulation.from_code(t.to_code()) == t
        assert PolygonTriangulation.from_code("3:") == PolygonTriangulation(3, frozenset())

    @pytest.mark.parametrize("code", ["6", "x:1-2", "5:0-2,3", "5:2-0,0-3"])
    def test_bad_code(self, code):
        with pytest.raises(GraphError):
            PolygonTriangulation.from_code(code)


class TestFan:
    def test_small(self):
        assert fan_graph(3) == complete_graph(3)
        assert fan_graph(4) == k4_minus_13()

    def test_ten(self):
        g = fan_graph(10)
        assert g.max_degree() == 9
        assert g.num_edges == 17

    @pytest.mark.parametrize("n", range(4, 33))
    def test_degree_sequence(self, n):
        assert fan_graph(n).degree_sequence() == [n - 1, 2] + [3] * (n - 3) + [2]

    @pytest.mark.parametrize("n", range(3, 12))
    def test_matches_triangulation(self, n):
        # fan_triangulation has its hub at corner 0 and the path 1..n-1
        assert graph_from_triangulation(fan_triangulation(n)) == fan_graph(n)

    def test_rejects_small(self):
        with pytest.raises(GraphError):
            fan_graph(2)


class TestDistances:
    def test_examples(self):
        assert distances_from(complete_graph(3), 0) == {0: 0, 1: 1, 2: 1}
        assert distances_from(path_graph(3), 0) == {0: 0, 1: 1, 2: 2}
        assert distances_from(graph_from_edges(2, []), 0) == {0: 0, 1: None}

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_triangle_inequality_and_symmetry(self, g):
        for u, v, w in itertools.product(range(g.n), repeat=3):
            duv, dvw, duw = g.distance(u, v), g.distance(v, w), g.distance(u, w)
            assert g.distance(v, u) == duv
            if duv is not None and dvw is not None:
                assert duw is not None and duw <= duv + dvw

    def test_matches_networkx(self):
        g = fan_graph(9)
        ref = dict(nx.all_pairs_shortest_path_length(nx.Graph(g.edges())))
        for u in range(g.n):
            assert distances_from(g, u) == ref[u]

    def test_concurrent_fill(self):
        g = cycle_graph(40)
        with ThreadPoolExecutor(8) as pool:
            rows = list(pool.map(lambda v: g.distance_row(v % 40), range(400)))
        assert all(rows[i] == rows[i % 40] for i in range(400))


class TestCommonNeighbors:
    def test_examples(self):
        assert common_neighbors(complete_graph(3), 0, 1) == [2]
        assert common_neighbors(k4_minus_13(), 0, 2) == [1, 3]
        assert common_neighbors(complete_graph(2), 0, 1) == []

    def test_same_vertex(self):
        with pytest.raises(GraphError):
            common_neighbors(complete_graph(3), 1, 1)


def _nx_maximal_outerplanar(g):
    """Independent oracle: outerplanar iff adding an apex keeps it planar."""
    if g.n < 3 or g.num_edges != 2 * g.n - 3:
        return False
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    if not nx.is_connected(h):
        return False
    h.add_edges_from(("apex", v) for v in range(g.n))
    return nx.check_planarity(h)[0]


class TestRecognition:
    def test_examples(self):
        assert is_maximal_outerplanar(complete_graph(3))
        assert not is_maximal_outerplanar(cycle_graph(4))
        assert not is_maximal_outerplanar(complete_graph(4))

    def test_two_tree_that_is_not_outerplanar(self):
        # K_{1,1,3}: 2n-3 edges and ear-reducible, but contains K_{2,3}
        g = graph_from_edges(5, [(0, 1)] + [(a, c) for a in (0, 1) for c in (2, 3, 4)])
        assert g.num_edges == 7
        assert not is_maximal_outerplanar(g)

    @pytest.mark.parametrize("g", [graph_from_edges(2, [(0, 1)]), graph_from_edges(4, []),
                                   graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)])])
    def test_small_or_disconnected(self, g):
        assert not is_maximal_outerplanar(g)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_agrees_with_planarity_oracle(self, n):
        pairs = list(itertools.combinations(range(n), 2))
        for edges in itertools.combinations(pairs, 2 * n - 3):
            g = graph_from_edges(n, edges)
            assert is_maximal_outerplanar(g) == _nx_maximal_outerplanar(g), edges

    @pytest.mark.parametrize("n", range(3, 11))
    def test_witness_round_trip(self, n):
        for t in enumerate_triangulations(n):
            g = graph_from_triangulation(t)
            w = find_maximal_outerplanar_witness(g)
            assert w is not None
            assert canonical_code(w.triangulation) == canonical_code(t)
            # relabeling the graph keeps the class
            perm = list(range(n))[::-1]
            w2 = find_maximal_outerplanar_witness(g.relabel(perm))
            assert canonical_code(w2.triangulation) == canonical_code(t)


class TestEdgeKind:
    def test_triangle(self):
        g = complete_graph(3)
        w = find_maximal_outerplanar_witness(g)
        assert {edge_kind(g, w, *e) for e in g.edges()} == {EdgeKind.EXTERIOR}

    def test_fan(self):
        g = fan_graph(10)
        w = find_maximal_outerplanar_witness(g)
        assert edge_kind(g, w, 0, 5) is EdgeKind.INTERIOR
        assert edge_kind(g, w, 4, 5) is EdgeKind.EXTERIOR
        assert edge_kind(g, w, 0, 1) is EdgeKind.EXTERIOR

    def test_not_an_edge(self):
        g = fan_graph(5)
        with pytest.raises(GraphError):
            edge_kind(g, find_maximal_outerplanar_witness(g), 1, 3)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_common_neighbor_rule(self, n):
        for t in enumerate_triangulations(n):
            g = graph_from_triangulation(t)
            w = find_maximal_outerplanar_witness(g)
            for x, y in g.edges():
                size = len(common_neighbors(g, x, y))
                assert size in (1, 2)
                kind = edge_kind(g, w, x, y)
                assert (kind is EdgeKind.EXTERIOR) == (size == 1)
                assert (kind is EdgeKind.INTERIOR) == ((min(x, y), max(x, y)) in
                                                       {tuple(sorted((w.cycle[a], w.cycle[b])))
                                                        for a, b in w.triangulation.diagonals})


class TestSerialization:
    def test_json_bit_exact(self):
        g = graph_from_edges(3, [(2, 1), (0, 2), (1, 0)])
        text = graph_to_json(g)
        assert text == '{"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}\n'
        assert graph_from_json(text) == g

    def test_json_malformed(self):
        with pytest.raises(GraphError):
            graph_from_json('{"n": 3}')
        with pytest.raises(GraphError):
            graph_from_json(json.dumps({"n": 2, "edges": [[0, 0]]}))

    def test_input_detection(self):
        g, t = parse_graph_input("4:0-2")
        assert g == k4_minus_13() and t is not None
        g, t = parse_graph_input(graph_to_json(fan_graph(5)))
        assert g == fan_graph(5) and t is None
        with pytest.raises(GraphError):
            parse_graph_input("fan")

    def test_dot(self):
        g = k4_minus_13()
        from fractions import Fraction
        dot = to_dot(g, find_maximal_outerplanar_witness(g), {(0, 2): Fraction(4, 3)})
        assert '0 -- 2 [style=dashed, label="4/3"];' in dot
        assert "0 -- 1 [style=solid];" in dot
