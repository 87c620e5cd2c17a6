import numpy as np
import pytest

from hybfs import csr
from hybfs.generator import GraphParams, generate

from conftest import graph_from_edges


class TestBuild:
    def test_empty_graph(self):
        g = graph_from_edges([], 4)
        assert list(g.row_starts) == [0, 0, 0, 0, 0]
        assert len(g.adjacency) == 0
        assert g.num_arcs == 0
        assert g.in_edges_total == 0

    def test_two_edge_path(self):
        g = graph_from_edges([(0, 1), (1, 2)], 3)
        assert list(g.row_starts) == [0, 1, 3, 4]
        assert list(g.adjacency) == [1, 0, 2, 1]
        assert g.in_edges_total == 2
        assert g.num_arcs == 4

    def test_self_loop_two_arcs(self):
        g = graph_from_edges([(0, 0)], 2)
        assert list(g.row_starts) == [0, 2, 2]
        assert list(g.adjacency) == [0, 0]

    def test_duplicates_kept(self):
        g = graph_from_edges([(0, 1), (0, 1)], 2)
        assert list(g.adjacency) == [1, 1, 0, 0]
        assert g.num_arcs == 4

    def test_rows_sorted(self):
        e = generate(GraphParams(scale=8, edgefactor=8, seed=4))
        g = csr.build(e)
        for v in range(g.num_vertices):
            row = g.row(v)
            assert np.all(row[:-1] <= row[1:])

    def test_order_independent(self):
        pairs = [(0, 3), (2, 1), (3, 3), (1, 0)]
        a = graph_from_edges(pairs, 4)
        b = graph_from_edges(list(reversed(pairs)), 4)
        assert np.array_equal(a.row_starts, b.row_starts)
        assert np.array_equal(a.adjacency, b.adjacency)

    def test_symmetry(self):
        e = generate(GraphParams(scale=7, edgefactor=4, seed=2))
        g = csr.build(e)
        degs = g.degrees()
        src = np.repeat(np.arange(g.num_vertices, dtype=np.uint64), degs)
        fwd = (src << np.uint64(32)) | g.adjacency.astype(np.uint64)
        rev = (g.adjacency.astype(np.uint64) << np.uint64(32)) | src
        assert np.array_equal(np.sort(fwd), np.sort(rev))

    def test_degree_sum(self):
        e = generate(GraphParams(scale=6, edgefactor=4, seed=8))
        g = csr.build(e)
        assert int(g.degrees().sum()) == g.num_arcs == 2 * g.in_edges_total


class TestDegree:
    def test_path_middle(self, path3):
        assert csr.degree(path3, 1) == 2
        assert path3.degree(0) == 1

    def test_isolated(self):
        g = graph_from_edges([(0, 1)], 3)
        assert g.degree(2) == 0

    def test_self_loop(self):
        g = graph_from_edges([(0, 0)], 2)
        assert g.degree(0) == 2

    def test_out_of_range(self, path3):
        with pytest.raises(IndexError):
            path3.degree(3)
        with pytest.raises(IndexError):
            path3.row(-1)
