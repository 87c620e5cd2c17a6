import numpy as np
import pytest

from hybfs import csr
from hybfs.bfs_scalar import bottom_up_layer, top_down_layer
from hybfs.bfs_vector import KernelStats, bottom_up_multiple_set, top_down_chunked
from hybfs.frontier import Bitmap, BfsTree
from hybfs.generator import GraphParams, generate
from hybfs.lanes import VecConfig

from conftest import graph_from_edges


def fresh_state(g, frontier):
    in_bm = Bitmap(g.num_vertices)
    vis = Bitmap(g.num_vertices)
    out = Bitmap(g.num_vertices)
    for v in frontier:
        in_bm.set(v)
        vis.set(v)
    tree = BfsTree.fresh(g.num_vertices, frontier[0])
    return in_bm, vis, out, tree


class TestBottomUpMultipleSet:
    @pytest.mark.parametrize("backend", ["simd", "emulate"])
    def test_matches_scalar_bitmaps(self, backend):
        cfg = VecConfig(backend=backend)
        g = csr.build(generate(GraphParams(scale=7, edgefactor=4, seed=3)))
        for s in range(0, g.num_vertices, 11):
            in_v, vis_v, out_v, tree_v = fresh_state(g, [s])
            in_s, vis_s, out_s, tree_s = fresh_state(g, [s])
            bottom_up_multiple_set(g, in_v, vis_v, out_v, tree_v, cfg)
            bottom_up_layer(g, in_s, vis_s, out_s, tree_s)
            assert vis_v == vis_s
            assert out_v == out_s
            # Sorted rows + ascending pos probing: same parents too.
            assert np.array_equal(tree_v.parent, tree_s.parent)

    def test_empty_frontier(self, triangle):
        in_bm = Bitmap(3)
        vis = Bitmap(3)
        out = Bitmap(3)
        tree = BfsTree.fresh(3, 0)
        c = bottom_up_multiple_set(triangle, in_bm, vis, out, tree, VecConfig())
        assert c.v_f == 0 and out.popcount() == 0

    def test_fallback_resolves_distant_neighbor(self):
        # Vertex 20's only frontier neighbor is at adjacency position 10.
        pairs = [(20, v) for v in range(1, 12)] + [(0, 11)]
        g = graph_from_edges(pairs, 21)
        assert list(g.row(20)).index(11) == 10
        in_bm, vis, out, tree = fresh_state(g, [11])
        stats = KernelStats()
        bottom_up_multiple_set(g, in_bm, vis, out, tree, VecConfig(max_pos=8), stats)
        assert tree.parent[20] == 11
        assert stats.fallback_count >= 1

    def test_max_pos_covering_degree_no_fallback(self):
        pairs = [(20, v) for v in range(1, 12)] + [(0, 11)]
        g = graph_from_edges(pairs, 21)
        in_bm, vis, out, tree = fresh_state(g, [11])
        stats = KernelStats()
        bottom_up_multiple_set(g, in_bm, vis, out, tree, VecConfig(max_pos=11), stats)
        assert tree.parent[20] == 11
        assert stats.fallback_count == 0

    def test_max_pos_one_fallback_heavy(self):
        # max_pos=1: every unresolved vertex with degree > 1 falls back.
        g = csr.build(generate(GraphParams(scale=6, edgefactor=4, seed=2)))
        in_bm, vis, out, tree = fresh_state(g, [0])
        stats = KernelStats()
        bottom_up_multiple_set(g, in_bm, vis, out, tree, VecConfig(max_pos=1), stats)
        deg = g.degrees()
        still = [
            v
            for v in range(g.num_vertices)
            if not vis_has_after_probe(g, v, in_bm) and deg[v] > 1
        ]
        assert stats.fallback_count == len(still)

    def test_gather_counter_positive(self, triangle):
        in_bm, vis, out, tree = fresh_state(triangle, [0])
        stats = KernelStats()
        bottom_up_multiple_set(triangle, in_bm, vis, out, tree, VecConfig(), stats)
        assert stats.gather_count > 0


def vis_has_after_probe(g, v, in_bm):
    """Would the pos=0 probe alone resolve or pre-visit vertex v?

    True when v is the frontier vertex itself or its first neighbor is
    in the frontier (the single probed position under max_pos=1).
    """
    if in_bm.test(v):
        return True
    row = g.row(v)
    return len(row) > 0 and in_bm.test(int(row[0]))


class TestTopDownChunked:
    def test_star_two_chunks(self):
        g = graph_from_edges([(0, i) for i in range(1, 21)], 21)
        in_bm, vis, out, tree = fresh_state(g, [0])
        stats = KernelStats()
        top_down_chunked(g, in_bm, vis, out, tree, VecConfig(), stats)
        assert sorted(out.indices()) == list(range(1, 21))
        assert all(tree.parent[v] == 0 for v in range(1, 21))
        assert stats.gather_count == 20  # 16 + 4 with tail mask

    def test_short_row_single_partial_chunk(self, path3):
        in_bm, vis, out, tree = fresh_state(path3, [0])
        stats = KernelStats()
        top_down_chunked(path3, in_bm, vis, out, tree, VecConfig(), stats)
        assert list(out.indices()) == [1]
        assert stats.gather_count == 1

    @pytest.mark.parametrize("backend", ["simd", "emulate"])
    def test_matches_scalar(self, backend):
        cfg = VecConfig(backend=backend)
        g = csr.build(generate(GraphParams(scale=7, edgefactor=8, seed=4)))
        for s in range(0, g.num_vertices, 13):
            in_v, vis_v, out_v, tree_v = fresh_state(g, [s])
            in_s, vis_s, out_s, tree_s = fresh_state(g, [s])
            top_down_chunked(g, in_v, vis_v, out_v, tree_v, cfg)
            top_down_layer(g, in_s, vis_s, out_s, tree_s)
            assert vis_v == vis_s
            assert out_v == out_s


class TestParentValidity:
    def test_vector_parents_are_frontier_neighbors(self):
        g = csr.build(generate(GraphParams(scale=8, edgefactor=8, seed=7)))
        in_bm, vis, out, tree = fresh_state(g, [3])
        bottom_up_multiple_set(g, in_bm, vis, out, tree, VecConfig())
        for v in out.indices():
            p = int(tree.parent[v])
            assert in_bm.test(p)
            assert p in set(int(x) for x in g.row(int(v)))
