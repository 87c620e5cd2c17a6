"""16-lane vectorized layer kernels (pure-Python engine).

The bottom-up kernel walks the visited bitmap one 16-bit half word at a
time, probing adjacency position pos = 0 .. max_pos-1 across all lanes;
lanes still unresolved after the position cap are handed to the scalar
search, resumed at position max_pos.  The top-down kernel processes each
frontier row in chunks of 16 with a tail mask.
"""

from __future__ import annotations

import numpy as np

from .bfs_scalar import counters_after_layer
from .csr import CsrGraph
from .frontier import Bitmap, BfsTree, LayerCounters
from .lanes import (
    LANES,
    VecConfig,
    load_vertices,
    looking_parents,
    mask_bits,
)


class KernelStats:
    """Software event counters for one layer."""

    __slots__ = ("fallback_count", "gather_count")

    def __init__(self):
        self.fallback_count = 0
        self.gather_count = 0


def bottom_up_multiple_set(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    cfg: VecConfig,
    stats: KernelStats | None = None,
) -> LayerCounters:
    """Vectorized bottom-up layer (multiple-set search)."""
    stats = stats if stats is not None else KernelStats()
    backend = cfg.backend
    n = g.num_vertices
    rs = g.row_starts
    adj = g.adjacency
    inw = in_bm.words
    parent = tree.parent

    # Half words with at least one unvisited bit; everything else is a
    # no-op and is skipped up front.
    vw = vis.words
    lo_full = (vw & np.uint32(0xFFFF)) == np.uint32(0xFFFF)
    hi_full = (vw >> np.uint32(16)) == np.uint32(0xFFFF)
    halves = np.flatnonzero(~np.stack([lo_full, hi_full], axis=1).ravel())

    for h in halves:
        word_index = int(h) >> 1
        half = int(h) & 1
        vertices = load_vertices(word_index, half)
        mask_done = 0
        for pos in range(cfg.max_pos):
            mask_vis = vis.get_half(word_index, half)
            if (mask_vis | mask_done) == 0xFFFF:
                break
            mask_done, gathered = looking_parents(
                g,
                in_bm,
                vis,
                out,
                parent,
                vertices,
                pos,
                word_index,
                half,
                mask_vis,
                mask_done,
                backend=backend,
            )
            stats.gather_count += gathered

        # Scalar fallback for unresolved lanes that still have adjacency
        # entries past the probed positions.
        mask_vis = vis.get_half(word_index, half)
        remaining = ~mask_vis & 0xFFFF
        if not remaining:
            continue
        base = word_index * 32 + half * 16
        for i in range(LANES):
            if not (remaining >> i) & 1:
                continue
            v = base + i
            if v >= n:
                continue
            s = int(rs[v]) + cfg.max_pos
            e = int(rs[v + 1])
            if s >= e:
                continue
            stats.fallback_count += 1
            nb = adj[s:e]
            hit = (
                (inw[nb >> np.uint32(5)] >> (nb & np.uint32(0x1F))) & np.uint32(1)
            ) == 1
            k = np.argmax(hit)
            if hit[k]:
                parent[v] = nb[k]
                vis.set(v)
                out.set(v)
    return counters_after_layer(g, vis, out)


def top_down_chunked(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    cfg: VecConfig | None = None,
    stats: KernelStats | None = None,
) -> LayerCounters:
    """Vectorized top-down layer: adjacency rows in chunks of 16."""
    stats = stats if stats is not None else KernelStats()
    backend = cfg.backend if cfg is not None else "simd"
    rs = g.row_starts
    adj = g.adjacency
    words = vis.words
    outw = out.words
    parent = tree.parent

    for u in in_bm.indices():
        start = int(rs[u])
        end = int(rs[u + 1])
        for k in range(start, end, LANES):
            c = min(LANES, end - k)
            stats.gather_count += c
            tail = (1 << c) - 1
            if backend == "emulate":
                for i in range(c):
                    v = int(adj[k + i])
                    if not (int(words[v >> 5]) >> (v & 0x1F)) & 1:
                        words[v >> 5] |= np.uint32(1 << (v & 0x1F))
                        outw[v >> 5] |= np.uint32(1 << (v & 0x1F))
                        parent[v] = u
                continue
            lanes = np.zeros(LANES, dtype=np.uint32)
            lanes[:c] = adj[k : k + c]
            w = (lanes >> np.uint32(5)).astype(np.int64)
            unvis = mask_bits(tail)
            unvis &= ((words[w] >> (lanes & np.uint32(0x1F))) & np.uint32(1)) == 0
            if not unvis.any():
                continue
            tgt = lanes[unvis]
            tw = w[unvis]
            bits = np.uint32(1) << (tgt & np.uint32(0x1F))
            np.bitwise_or.at(words, tw, bits)
            np.bitwise_or.at(outw, tw, bits)
            parent[tgt] = u
    return counters_after_layer(g, vis, out)
