"""Scalar per-layer BFS kernels and the sequential reference traversal.

These are the non-vectorized kernels: top-down claims unvisited
neighbors of the frontier, bottom-up scans all vertices and skips
visited ones via the bitmap (a masked full scan, mirroring the word
walk the vector kernel performs).  ``bfs_reference`` is the plain
queue-based traversal used as the correctness oracle everywhere else.
"""

from __future__ import annotations

import numpy as np

from .csr import CsrGraph
from .frontier import NIL, UNREACHED, Bitmap, BfsTree, LayerCounters


def counters_after_layer(g: CsrGraph, vis: Bitmap, out: Bitmap) -> LayerCounters:
    """Counters for the heuristic, computed from the finished layer:
    v_f = discovered vertices, e_f = their summed degrees, e_u = number
    of still-unvisited vertices (vertex-denominated default)."""
    new = out.indices().astype(np.int64)
    v_f = len(new)
    e_f = int((g.row_starts[new + 1] - g.row_starts[new]).sum()) if v_f else 0
    e_u = g.num_vertices - vis.popcount()
    return LayerCounters(e_f=e_f, v_f=v_f, e_u=e_u)


def top_down_layer(
    g: CsrGraph, in_bm: Bitmap, vis: Bitmap, out: Bitmap, tree: BfsTree
) -> LayerCounters:
    """One top-down layer: each frontier vertex claims its unvisited
    neighbors (pure-Python engine)."""
    words = vis.words
    parent = tree.parent
    rs = g.row_starts
    adj = g.adjacency
    for u in in_bm.indices():
        nb = adj[rs[u] : rs[u + 1]]
        if len(nb) == 0:
            continue
        w = (nb >> np.uint32(5)).astype(np.int64)
        unvis = ((words[w] >> (nb & np.uint32(0x1F))) & np.uint32(1)) == 0
        if not unvis.any():
            continue
        nb = nb[unvis]
        w = w[unvis]
        bits = np.uint32(1) << (nb & np.uint32(0x1F))
        np.bitwise_or.at(words, w, bits)
        np.bitwise_or.at(out.words, w, bits)
        parent[nb] = u
    return counters_after_layer(g, vis, out)


def bottom_up_layer(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    start_pos: int = 0,
) -> LayerCounters:
    """One bottom-up layer: every unvisited vertex scans its adjacency
    row (from ``start_pos``) for the first frontier member to adopt as
    parent (pure-Python engine)."""
    inw = in_bm.words
    parent = tree.parent
    rs = g.row_starts
    adj = g.adjacency
    unvis = np.unpackbits(vis.words.view(np.uint8), bitorder="little")
    for v in np.flatnonzero(unvis[: g.num_vertices] == 0):
        nb = adj[rs[v] + start_pos : rs[v + 1]]
        if len(nb) == 0:
            continue
        hit = ((inw[nb >> np.uint32(5)] >> (nb & np.uint32(0x1F))) & np.uint32(1)) == 1
        k = np.argmax(hit)
        if hit[k]:
            parent[v] = nb[k]
            vis.set(int(v))
            out.set(int(v))
    return counters_after_layer(g, vis, out)


def bfs_reference(g: CsrGraph, source: int) -> tuple[BfsTree, np.ndarray]:
    """Sequential queue-based BFS; returns the tree and hop levels
    (UNREACHED for vertices not connected to the source)."""
    n = g.num_vertices
    if not 0 <= source < n:
        raise IndexError(f"source {source} out of range [0, {n})")
    rs = g.row_starts
    adj = g.adjacency
    parent = np.full(n, NIL, dtype=np.uint32)
    levels = np.full(n, UNREACHED, dtype=np.int32)
    parent[source] = source
    levels[source] = 0
    queue = np.empty(n, dtype=np.uint32)
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = int(queue[head])
        head += 1
        nb = adj[rs[u] : rs[u + 1]]
        fresh = nb[levels[nb] == UNREACHED]
        if len(fresh) == 0:
            continue
        fresh = np.unique(fresh)
        parent[fresh] = u
        levels[fresh] = levels[u] + 1
        queue[tail : tail + len(fresh)] = fresh
        tail += len(fresh)
    return BfsTree(parent=parent, source=source), levels
