# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled layer kernels: fused C loops for the scalar and 16-lane
vectorized BFS steps.  Semantics match the pure-Python engine bit for
bit (single-threaded); selection between the two happens at import in
the engine module."""

import numpy as np

cimport cython
from libc.stdint cimport int32_t, int64_t, uint32_t

cdef extern from "bu_probe.h":
    void hybfs_bu_probe_half(const uint32_t *adj, const uint32_t *inw,
                             uint32_t *parent, const int32_t *rs32,
                             int32_t base, int max_pos, int half,
                             uint32_t skip_lanes,
                             uint32_t *vis_word, uint32_t *out_word,
                             int64_t *gathers) nogil
    int HYBFS_BU_PROBE_SIMD


def probe_uses_simd():
    """True when the compiled probe step uses hardware vector gathers."""
    return bool(HYBFS_BU_PROBE_SIMD)

DEF LANES = 16

cdef uint32_t NIL = 0xFFFFFFFFu


cdef inline bint _testbit(uint32_t[::1] words, uint32_t v) noexcept nogil:
    return (words[v >> 5] >> (v & 0x1F)) & 1u


cdef inline void _setbit(uint32_t[::1] words, uint32_t v) noexcept nogil:
    words[v >> 5] |= (<uint32_t>1) << (v & 0x1F)


def bfs_reference(const int64_t[::1] rs, const uint32_t[::1] adj, int64_t n, int64_t source):
    """Sequential queue-based BFS; returns (parent, levels)."""
    parent_arr = np.full(n, NIL, dtype=np.uint32)
    levels_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.uint32)
    cdef uint32_t[::1] parent = parent_arr
    cdef int32_t[::1] levels = levels_arr
    cdef uint32_t[::1] queue = queue_arr
    cdef int64_t head = 0, tail = 1, k
    cdef uint32_t u, v
    parent[source] = <uint32_t>source
    levels[source] = 0
    queue[0] = <uint32_t>source
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(rs[u], rs[u + 1]):
            v = adj[k]
            if levels[v] == -1:
                levels[v] = levels[u] + 1
                parent[v] = u
                queue[tail] = v
                tail += 1
    return parent_arr, levels_arr


def top_down_layer(const int64_t[::1] rs, const uint32_t[::1] adj,
                   uint32_t[::1] inw, uint32_t[::1] visw, uint32_t[::1] outw,
                   uint32_t[::1] parent, int64_t n):
    """Scalar top-down layer over bitmap frontiers."""
    cdef int64_t w, k
    cdef int b
    cdef uint32_t bits, u, v
    cdef int64_t nwords = inw.shape[0]
    for w in range(nwords):
        bits = inw[w]
        if bits == 0:
            continue
        for b in range(32):
            if not (bits >> b) & 1u:
                continue
            u = <uint32_t>(w * 32 + b)
            for k in range(rs[u], rs[u + 1]):
                v = adj[k]
                if not _testbit(visw, v):
                    _setbit(visw, v)
                    _setbit(outw, v)
                    parent[v] = u


def bottom_up_layer(const int64_t[::1] rs, const uint32_t[::1] adj,
                    uint32_t[::1] inw, uint32_t[::1] visw, uint32_t[::1] outw,
                    uint32_t[::1] parent, int64_t n):
    """Scalar bottom-up layer: masked full scan of all vertices."""
    cdef int64_t v, k
    cdef uint32_t nb
    for v in range(n):
        if _testbit(visw, <uint32_t>v):
            continue
        for k in range(rs[v], rs[v + 1]):
            nb = adj[k]
            if _testbit(inw, nb):
                _setbit(visw, <uint32_t>v)
                _setbit(outw, <uint32_t>v)
                parent[v] = nb
                break


def bottom_up_multiple_set(const int64_t[::1] rs, const uint32_t[::1] adj,
                           uint32_t[::1] inw, uint32_t[::1] visw,
                           uint32_t[::1] outw, uint32_t[::1] parent,
                           int64_t n, int max_pos,
                           rs32_obj, const uint32_t[::1] posw,
                           const uint32_t[::1] longw):
    """16-lane bottom-up layer; returns (fallback_count, gather_count).

    Probes adjacency positions 0 .. max_pos-1 across the 16 lanes of
    each half word, then resumes unresolved lanes with the scalar
    search starting at position max_pos.  rs32_obj is the int32 copy of
    the row starts (or None when arcs exceed 32-bit offsets); posw and
    longw mark vertices with degree > 0 and degree > max_pos and only
    prune work that could never produce a parent."""
    cdef int64_t w, k, s, e, base, v
    cdef int half, pos, i
    cdef uint32_t mask_vis, mask_done, mask_pos, avail, found, rem, a
    cdef uint32_t active, half_pos, half_long
    cdef int64_t fallback = 0, gathers = 0
    cdef int64_t nwords = visw.shape[0]
    cdef int64_t starts[LANES]
    cdef int64_t ends[LANES]
    cdef bint fast = rs32_obj is not None
    cdef const int32_t[::1] rs32 = None
    if adj.shape[0] == 0:
        return 0, 0
    if fast:
        rs32 = rs32_obj
    for w in range(nwords):
        # Skip words whose unvisited lanes all have empty rows.
        if (~visw[w]) & posw[w] == 0:
            continue
        for half in range(2):
            mask_vis = (visw[w] >> (16 * half)) & 0xFFFFu
            half_pos = (posw[w] >> (16 * half)) & 0xFFFFu
            if (~mask_vis) & half_pos == 0:
                continue
            base = w * 32 + half * 16
            if fast and base + LANES <= n:
                hybfs_bu_probe_half(&adj[0], &inw[0], &parent[0], &rs32[0],
                                    <int32_t>base, max_pos, half,
                                    (~half_pos) & 0xFFFFu,
                                    &visw[w], &outw[w], &gathers)
            else:
                # Tail half containing padding lanes, or offsets too
                # wide for the 32-bit gather path.
                for i in range(LANES):
                    v = base + i
                    if v < n:
                        starts[i] = rs[v]
                        ends[i] = rs[v + 1]
                    else:
                        starts[i] = 0
                        ends[i] = 0
                mask_done = 0
                # Empty-row lanes start exhausted; others as probed.
                mask_pos = (~half_pos) & 0xFFFFu
                for pos in range(max_pos):
                    mask_vis = (visw[w] >> (16 * half)) & 0xFFFFu
                    avail = (~(mask_vis | mask_done | mask_pos)) & 0xFFFFu
                    if avail == 0:
                        break
                    found = 0
                    for i in range(LANES):
                        if not (avail >> i) & 1u:
                            continue
                        s = starts[i] + pos
                        if s >= ends[i]:
                            mask_pos |= (<uint32_t>1) << i
                            continue
                        gathers += 1
                        a = adj[s]
                        if _testbit(inw, a):
                            parent[base + i] = a
                            found |= (<uint32_t>1) << i
                    if found:
                        visw[w] |= found << (16 * half)
                        outw[w] |= found << (16 * half)
                        mask_done |= found
            half_long = (longw[w] >> (16 * half)) & 0xFFFFu
            rem = (~((visw[w] >> (16 * half)) & 0xFFFFu)) & half_long
            if rem == 0:
                continue
            for i in range(LANES):
                if not (rem >> i) & 1u:
                    continue
                v = base + i
                s = rs[v] + max_pos
                e = rs[v + 1]
                fallback += 1
                for k in range(s, e):
                    a = adj[k]
                    if _testbit(inw, a):
                        parent[v] = a
                        _setbit(visw, <uint32_t>v)
                        _setbit(outw, <uint32_t>v)
                        break
    return fallback, gathers


def top_down_chunked(const int64_t[::1] rs, const uint32_t[::1] adj,
                     uint32_t[::1] inw, uint32_t[::1] visw, uint32_t[::1] outw,
                     uint32_t[::1] parent, int64_t n):
    """Chunked top-down layer (16-element adjacency chunks with tail
    mask); returns gather_count."""
    cdef int64_t w, k, e, c
    cdef int b, i
    cdef uint32_t bits, u, v
    cdef int64_t gathers = 0
    cdef int64_t nwords = inw.shape[0]
    for w in range(nwords):
        bits = inw[w]
        if bits == 0:
            continue
        for b in range(32):
            if not (bits >> b) & 1u:
                continue
            u = <uint32_t>(w * 32 + b)
            k = rs[u]
            e = rs[u + 1]
            while k < e:
                c = e - k
                if c > LANES:
                    c = LANES
                gathers += c
                for i in range(<int>c):
                    v = adj[k + i]
                    if not _testbit(visw, v):
                        _setbit(visw, v)
                        _setbit(outw, v)
                        parent[v] = u
                k += LANES
    return gathers
