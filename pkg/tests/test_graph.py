import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_k_connected, brute_force_sparse, random_graph
from surfrigid.errors import GraphError, ParameterError
from surfrigid.graph import (
    Graph,
    add_edge,
    complete_graph,
    is_k_connected,
    is_k_sparse,
    is_k_tight,
    one_extension,
    path_graph,
    remove_edge,
)

K5_E = remove_edge(complete_graph(5), 2, 3)


class TestGraph:
    def test_edges_normalised_and_sorted(self):
        g = Graph(4, [(3, 1), (0, 2), (2, 1)])
        assert g.edges == ((0, 2), (1, 2), (1, 3))

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(3, [(1, 1)])

    def test_rejects_parallel_edges(self):
        with pytest.raises(GraphError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])


class TestSparsity:
    def test_examples(self):
        assert is_k_sparse(complete_graph(3), 3)
        assert not is_k_sparse(complete_graph(4), 3)
        assert is_k_sparse(K5_E, 1)

    def test_tight_examples(self):
        assert is_k_tight(complete_graph(4), 2)
        assert is_k_tight(complete_graph(3), 3)
        assert not is_k_tight(K5_E, 2)

    def test_invalid_k(self):
        with pytest.raises(ParameterError):
            is_k_sparse(complete_graph(3), 0)
        with pytest.raises(ParameterError):
            is_k_tight(complete_graph(3), 4)

    def test_edgeless_graph_is_sparse(self):
        assert is_k_sparse(Graph(4), 3)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_brute_force_small_graphs(self, k):
        rng = np.random.default_rng(100 + k)
        for _ in range(150):
            n = int(rng.integers(1, 8))
            edges = random_graph(n, rng.uniform(0.2, 0.9), rng)
            assert is_k_sparse(Graph(n, edges), k) == brute_force_sparse(n, edges, k), (n, edges)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 7), st.data())
    def test_monotone_under_edge_deletion(self, n, data):
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(all_pairs), unique=True, min_size=1))
        g = Graph(n, edges)
        k = data.draw(st.sampled_from([1, 2, 3]))
        e = data.draw(st.sampled_from(g.edges))
        if is_k_sparse(g, k):
            assert is_k_sparse(remove_edge(g, *e), k)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_one_extension_preserves_tightness(self, k):
        rng = np.random.default_rng(7 * k)
        found = 0
        for _ in range(400):
            n = int(rng.integers(3, 8))
            m = 2 * n - k
            pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
            if m > len(pairs) or m < 1:
                continue
            pick = rng.choice(len(pairs), size=m, replace=False)
            g = Graph(n, [pairs[i] for i in pick])
            if not is_k_tight(g, k):
                continue
            e = g.edges[int(rng.integers(g.m))]
            v3 = next(v for v in range(n) if v not in e)
            assert is_k_tight(one_extension(g, e, v3), k)
            found += 1
        assert found >= 10


class TestConnectivity:
    def test_examples(self):
        assert is_k_connected(K5_E, 2)
        assert not is_k_connected(path_graph(3), 2)
        assert is_k_connected(complete_graph(4), 3)

    def test_two_triangles_sharing_vertex(self):
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert is_k_connected(g, 1)
        assert not is_k_connected(g, 2)

    def test_invalid_k(self):
        with pytest.raises(ParameterError):
            is_k_connected(K5_E, 0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(120):
            n = int(rng.integers(2, 8))
            edges = random_graph(n, rng.uniform(0.3, 0.9), rng)
            for k in (1, 2, 3):
                assert is_k_connected(Graph(n, edges), k) == brute_force_k_connected(n, edges, k)


class TestConstructionMoves:
    def test_one_extension_counts(self):
        g = one_extension(complete_graph(4), (0, 1), 2)
        assert (g.n, g.m) == (5, 8)
        g = one_extension(K5_E, (0, 1), 2)
        assert (g.n, g.m) == (6, 11)

    def test_new_vertex_degree_three(self):
        g = one_extension(K5_E, (0, 1), 2)
        assert g.degree(5) == 3
        assert g.neighbours(5) == [0, 1, 2]
        assert not g.has_edge(0, 1)

    def test_one_extension_errors(self):
        with pytest.raises(GraphError):
            one_extension(K5_E, (2, 3), 0)
        with pytest.raises(GraphError):
            one_extension(K5_E, (0, 1), 1)

    def test_add_edge(self):
        assert add_edge(K5_E, 2, 3) == complete_graph(5)
        with pytest.raises(GraphError):
            add_edge(K5_E, 0, 1)
        with pytest.raises(GraphError):
            add_edge(K5_E, 2, 2)

    def test_add_then_remove(self):
        g = add_edge(K5_E, 3, 2)
        assert g.m == K5_E.m + 1
        assert remove_edge(g, 2, 3) == K5_E
