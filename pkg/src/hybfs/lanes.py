"""Portable 16-lane vector contract with two interchangeable backends.

backend="simd" executes lane operations as bulk numpy array ops (the
vectorized path); backend="emulate" is a per-lane scalar loop.  The two
are bit-identical by contract, which the test suite checks on randomized
inputs.  The compiled extension provides fused layer kernels with the
same semantics; this module is both the reference and the pure-Python
engine.

A LaneVector is a length-16 uint32 ndarray; a LaneMask is a plain int
holding 16 bits, bit i governing lane i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csr import CsrGraph
from .frontier import Bitmap, HALF_BITS

LANES = 16

BACKENDS = ("simd", "emulate")

_LANE_IDX = np.arange(LANES, dtype=np.uint32)


@dataclass
class VecConfig:
    """Vector kernel knobs: adjacency-probe cap and lane backend."""

    max_pos: int = 8
    backend: str = "simd"

    def __post_init__(self):
        if self.max_pos < 1:
            raise ValueError("max_pos must be >= 1")
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")


def mask_bits(mask: int) -> np.ndarray:
    """Boolean lane-enable array for a 16-bit mask."""
    return ((mask >> _LANE_IDX) & 1).astype(bool)


def bits_mask(bits: np.ndarray) -> int:
    """Pack a boolean lane array back into a 16-bit mask."""
    return int(np.sum(bits.astype(np.uint32) << _LANE_IDX))


def masked_gather(
    base: np.ndarray,
    idx: np.ndarray,
    mask: int,
    fill: int = 0,
    *,
    backend: str = "simd",
) -> np.ndarray:
    """Active lanes load base[idx]; inactive lanes hold ``fill``."""
    if backend == "emulate":
        out = np.empty(LANES, dtype=np.uint32)
        for i in range(LANES):
            if (mask >> i) & 1:
                assert idx[i] < len(base), "gather index out of bounds on active lane"
                out[i] = base[idx[i]]
            else:
                out[i] = fill
        return out
    act = mask_bits(mask)
    if not act.any():
        return np.full(LANES, fill, dtype=np.uint32)
    assert (idx[act].astype(np.int64) < len(base)).all(), "gather index out of bounds"
    safe = np.where(act, idx, 0).astype(np.int64)
    return np.where(act, base[safe], np.uint32(fill)).astype(np.uint32)


def masked_scatter(
    base: np.ndarray,
    idx: np.ndarray,
    vals: np.ndarray,
    mask: int,
    *,
    backend: str = "simd",
) -> None:
    """base[idx] = vals on active lanes; on duplicate active indices the
    highest-numbered lane wins (both backends)."""
    if backend == "emulate":
        for i in range(LANES):
            if (mask >> i) & 1:
                assert idx[i] < len(base), "scatter index out of bounds on active lane"
                base[idx[i]] = vals[i]
        return
    act = mask_bits(mask)
    if not act.any():
        return
    tgt = idx[act].astype(np.int64)
    assert (tgt < len(base)).all(), "scatter index out of bounds"
    base[tgt] = vals[act]


def load_vertices(word_index: int, half: int) -> np.ndarray:
    """The 16 consecutive vertex ids covered by one half word."""
    base = word_index * 32 + half * HALF_BITS
    return np.uint32(base) + _LANE_IDX


def load_adj(
    g: CsrGraph,
    vertices: np.ndarray,
    pos: int,
    mask_done: int,
    mask_vis: int,
    *,
    backend: str = "simd",
) -> tuple[np.ndarray, int]:
    """Gather the pos-th neighbor of each candidate lane.

    A lane is active when its vertex is in range, not visited
    (mask_vis bit 0), has no parent yet this half (mask_done bit 0),
    and still has a pos-th adjacency entry.  Inactive lanes read 0.
    Range exhaustion is encoded in the returned mask, not an error.
    """
    n = g.num_vertices
    rs = g.row_starts
    adj = g.adjacency
    if backend == "emulate":
        vec = np.zeros(LANES, dtype=np.uint32)
        active = 0
        for i in range(LANES):
            if (mask_vis >> i) & 1 or (mask_done >> i) & 1:
                continue
            v = int(vertices[i])
            if v >= n:
                continue
            k = int(rs[v]) + pos
            if k >= int(rs[v + 1]):
                continue
            vec[i] = adj[k]
            active |= 1 << i
        return vec, active
    candidate = ~mask_bits(mask_vis) & ~mask_bits(mask_done)
    candidate &= vertices.astype(np.int64) < n
    safe_v = np.where(candidate, vertices, 0).astype(np.int64)
    start = rs[safe_v] + pos
    in_range = candidate & (start < rs[safe_v + 1])
    safe_k = np.where(in_range, start, 0)
    if in_range.any():
        vec = np.where(in_range, adj[safe_k], np.uint32(0)).astype(np.uint32)
    else:
        vec = np.zeros(LANES, dtype=np.uint32)
    return vec, bits_mask(in_range)


def looking_parents(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    parent: np.ndarray,
    vertices: np.ndarray,
    pos: int,
    word_index: int,
    half: int,
    mask_vis: int,
    mask_done: int,
    *,
    backend: str = "simd",
) -> tuple[int, int]:
    """One probe step: gather pos-th neighbors, test them against the
    frontier bitmap, scatter found parents and mark the children.

    Returns (updated mask_done, number of lanes gathered).
    """
    vadj, active = load_adj(
        g, vertices, pos, mask_done, mask_vis, backend=backend
    )
    gathered = active.bit_count()
    if active == 0:
        return mask_done, 0

    if backend == "emulate":
        found = 0
        inw = in_bm.words
        for i in range(LANES):
            if not (active >> i) & 1:
                continue
            a = int(vadj[i])
            if (int(inw[a >> 5]) >> (a & 0x1F)) & 1:
                found |= 1 << i
    else:
        act = mask_bits(active)
        word = (vadj >> np.uint32(5)).astype(np.int64)
        bit = vadj & np.uint32(0x1F)
        fw = masked_gather(in_bm.words, word, active, 0, backend="simd")
        found = bits_mask(act & (((fw >> bit) & np.uint32(1)) == 1))

    if found:
        masked_scatter(parent, vertices, vadj, found, backend=backend)
        vis.or_half(word_index, half, found)
        out.or_half(word_index, half, found)
    return mask_done | found, gathered
