"""Compressed sparse row construction.

Every undirected edge (u, v) is materialized as the two arcs u->v and
v->u, so the directed arc count is twice the generated edge count.
Duplicate arcs and self-loops are kept; adjacency entries are sorted
ascending within each row so traversals are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .generator import CapacityError, EdgeList


@dataclass(frozen=True)
class CsrGraph:
    num_vertices: int
    num_arcs: int
    row_starts: np.ndarray  # int64, length n + 1
    adjacency: np.ndarray  # uint32, length num_arcs
    in_edges_total: int  # undirected edge count, TEPS denominator

    def degree(self, v: int) -> int:
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.num_vertices})")
        return int(self.row_starts[v + 1] - self.row_starts[v])

    def row(self, v: int) -> np.ndarray:
        """Neighbors of v (sorted ascending, duplicates kept)."""
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.num_vertices})")
        return self.adjacency[self.row_starts[v] : self.row_starts[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.row_starts)


def build(edges: EdgeList) -> CsrGraph:
    """Build the CSR adjacency from an undirected edge list."""
    return from_arrays(edges.u, edges.v, edges.num_vertices)


def from_arrays(eu, ev, n: int) -> CsrGraph:
    """CSR from raw endpoint arrays (both arc directions materialized)."""
    eu = np.asarray(eu, dtype=np.uint32)
    ev = np.asarray(ev, dtype=np.uint32)
    if n > 1 << 32:
        raise CapacityError("vertex ids are 32-bit; at most 2^32 vertices")
    m = len(eu)

    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])

    counts = np.bincount(src, minlength=n).astype(np.int64)
    row_starts = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=row_starts[1:])

    # Single 64-bit key sort gives row-major order with sorted rows.
    key = (src.astype(np.uint64) << np.uint64(32)) | dst.astype(np.uint64)
    key.sort(kind="stable")
    adjacency = (key & np.uint64(0xFFFFFFFF)).astype(np.uint32)

    row_starts.setflags(write=False)
    adjacency.setflags(write=False)
    return CsrGraph(
        num_vertices=n,
        num_arcs=2 * m,
        row_starts=row_starts,
        adjacency=adjacency,
        in_edges_total=m,
    )


def degree(g: CsrGraph, v: int) -> int:
    return g.degree(v)
