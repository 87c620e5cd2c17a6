import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybfs.frontier import NIL, Bitmap, BfsTree
from hybfs.lanes import (
    LANES,
    VecConfig,
    bits_mask,
    load_adj,
    load_vertices,
    looking_parents,
    mask_bits,
    masked_gather,
    masked_scatter,
)

from conftest import graph_from_edges

lane_vec = st.lists(
    st.integers(min_value=0, max_value=2**32 - 1), min_size=LANES, max_size=LANES
).map(lambda xs: np.array(xs, dtype=np.uint32))
lane_mask = st.integers(min_value=0, max_value=0xFFFF)


class TestVecConfig:
    def test_defaults(self):
        cfg = VecConfig()
        assert cfg.max_pos == 8
        assert cfg.backend == "simd"

    def test_validation(self):
        with pytest.raises(ValueError):
            VecConfig(max_pos=0)
        with pytest.raises(ValueError):
            VecConfig(backend="avx")


def test_mask_bits_roundtrip():
    for m in (0, 1, 0x8000, 0xFFFF, 0x1234):
        assert bits_mask(mask_bits(m)) == m


class TestMaskedGather:
    def test_identity(self):
        base = np.array([10, 20, 30], dtype=np.uint32)
        idx = np.arange(LANES, dtype=np.uint32)
        out = masked_gather(base, idx, 0x0007, 0)
        assert list(out[:3]) == [10, 20, 30]
        assert not out[3:].any()

    def test_fully_masked(self):
        base = np.array([1, 2, 3], dtype=np.uint32)
        idx = np.full(LANES, 999, dtype=np.uint32)  # inactive: any index OK
        out = masked_gather(base, idx, 0x0000, 7)
        assert (out == 7).all()

    @given(lane_vec, lane_mask, st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=300, deadline=None)
    def test_backends_agree(self, vals, mask, fill):
        base = np.arange(64, dtype=np.uint32) * 3
        idx = (vals % np.uint32(64)).astype(np.uint32)
        a = masked_gather(base, idx, mask, fill, backend="simd")
        b = masked_gather(base, idx, mask, fill, backend="emulate")
        assert np.array_equal(a, b)


class TestMaskedScatter:
    def test_single_lane(self):
        base = np.zeros(8, dtype=np.uint32)
        idx = np.full(LANES, 5, dtype=np.uint32)
        vals = np.full(LANES, 99, dtype=np.uint32)
        masked_scatter(base, idx, vals, 0x0001)
        assert base[5] == 99
        assert np.count_nonzero(base) == 1

    def test_fully_masked(self):
        base = np.arange(8, dtype=np.uint32)
        masked_scatter(
            base,
            np.zeros(LANES, dtype=np.uint32),
            np.full(LANES, 7, dtype=np.uint32),
            0x0000,
        )
        assert list(base) == list(range(8))

    def test_duplicate_indices_one_lane_wins(self):
        base = np.zeros(8, dtype=np.uint32)
        idx = np.zeros(LANES, dtype=np.uint32)
        idx[1] = idx[3] = 7
        vals = np.arange(LANES, dtype=np.uint32) + 100
        masked_scatter(base, idx, vals, (1 << 1) | (1 << 3))
        assert base[7] in (vals[1], vals[3])

    @given(lane_vec, lane_vec, lane_mask)
    @settings(max_examples=300, deadline=None)
    def test_backends_agree(self, idx_raw, vals, mask):
        idx = (idx_raw % np.uint32(32)).astype(np.uint32)
        a = np.arange(32, dtype=np.uint32)
        b = a.copy()
        masked_scatter(a, idx, vals, mask, backend="simd")
        masked_scatter(b, idx, vals, mask, backend="emulate")
        assert np.array_equal(a, b)


class TestLoadVertices:
    def test_word0(self):
        assert list(load_vertices(0, 0)) == list(range(16))
        assert list(load_vertices(0, 1)) == list(range(16, 32))

    def test_word3_half1(self):
        assert list(load_vertices(3, 1)) == list(range(112, 128))


class TestLoadAdj:
    def test_path_pos0(self, path3):
        vertices = load_vertices(0, 0)
        vec, active = load_adj(path3, vertices, 0, 0, 0x0001)
        assert active == 0x0006  # lanes 1 and 2 have a 0th neighbor
        assert vec[1] == 0 and vec[2] == 1

    def test_pos_exhausted(self, path3):
        vec, active = load_adj(path3, load_vertices(0, 0), 5, 0, 0)
        assert active == 0

    def test_all_visited(self, path3):
        _, active = load_adj(path3, load_vertices(0, 0), 0, 0, 0xFFFF)
        assert active == 0

    def test_mask_done_filters(self, path3):
        _, active = load_adj(path3, load_vertices(0, 0), 0, 0x0002, 0x0001)
        assert active == 0x0004


class TestLookingParents:
    def _state(self, g, frontier):
        in_bm = Bitmap(g.num_vertices)
        vis = Bitmap(g.num_vertices)
        out = Bitmap(g.num_vertices)
        for v in frontier:
            in_bm.set(v)
            vis.set(v)
        tree = BfsTree.fresh(g.num_vertices, frontier[0])
        return in_bm, vis, out, tree

    def test_triangle(self, triangle):
        in_bm, vis, out, tree = self._state(triangle, [0])
        vertices = load_vertices(0, 0)
        mask_done, gathered = looking_parents(
            triangle, in_bm, vis, out, tree.parent, vertices, 0, 0, 0,
            vis.get_half(0, 0), 0,
        )
        assert mask_done & 0x0006 == 0x0006
        assert tree.parent[1] == 0 and tree.parent[2] == 0
        assert vis.test(1) and vis.test(2)
        assert out.test(1) and out.test(2)
        assert gathered == 2

    def test_empty_frontier(self, triangle):
        in_bm = Bitmap(3)
        vis = Bitmap(3)
        out = Bitmap(3)
        tree = BfsTree.fresh(3, 0)
        before = tree.parent.copy()
        mask_done, _ = looking_parents(
            triangle, in_bm, vis, out, tree.parent,
            load_vertices(0, 0), 0, 0, 0, 0, 0,
        )
        assert mask_done == 0
        assert np.array_equal(tree.parent, before)
        assert out.popcount() == 0

    def test_mask_done_excluded(self, triangle):
        # A lane already in mask_done must not be re-parented.
        in_bm, vis, out, tree = self._state(triangle, [0])
        tree.parent[1] = 123  # sentinel; lane 1 pre-done
        mask_done, _ = looking_parents(
            triangle, in_bm, vis, out, tree.parent,
            load_vertices(0, 0), 0, 0, 0, vis.get_half(0, 0), 0x0002,
        )
        assert tree.parent[1] == 123
        assert mask_done & 0x0002
