"""Kronecker (R-MAT) edge-list generator.

Edges are drawn by recursive quadrant selection with probabilities
(a, b, c, d), one selection per scale level.  Every random draw is a
pure function of (seed, edge_index, level) through a splitmix64-style
mixer, so edges can be generated in any order, or in parallel, with
identical output.  A seeded label permutation is applied afterwards to
destroy the generator's label locality.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

DEFAULT_PROBS = (0.57, 0.19, 0.19, 0.05)

#: Refuse to materialize edge lists larger than this (edges, not bytes).
DEFAULT_EDGE_BUDGET = 1 << 28

_MAGIC = b"HBFSEDG1"
_HEADER = struct.Struct("<8sIIQQ")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_LEVEL_SALT = np.uint64(0xD6E8FEB86659FD93)


class CapacityError(RuntimeError):
    """Requested graph exceeds the configured memory budget."""


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, elementwise on uint64 arrays."""
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= _MIX1
    x ^= x >> np.uint64(27)
    x *= _MIX2
    x ^= x >> np.uint64(31)
    return x


def _unit_draws(seed: int, idx: np.ndarray, level: int) -> np.ndarray:
    """Uniform [0,1) doubles for (seed, edge idx, level), vectorized."""
    s = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    salt = np.uint64(((level + 1) * int(_LEVEL_SALT)) & 0xFFFFFFFFFFFFFFFF)
    h = _mix64(idx * _GOLDEN + s)
    h = _mix64(h ^ salt)
    return (h >> np.uint64(11)) * 2.0**-53


@dataclass(frozen=True)
class GraphParams:
    """Input class: 2**scale vertices, 2**scale * edgefactor edges."""

    scale: int
    edgefactor: int = 16
    seed: int = 1
    probs: tuple[float, float, float, float] = DEFAULT_PROBS
    permute_labels: bool = True

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("scale must be >= 0")
        if self.edgefactor < 1:
            raise ValueError("edgefactor must be >= 1")
        if len(self.probs) != 4 or any(p < 0 for p in self.probs):
            raise ValueError("probs must be four non-negative values")
        if abs(sum(self.probs) - 1.0) > 1e-12:
            raise ValueError("probs must sum to 1 within 1e-12")

    @property
    def num_vertices(self) -> int:
        return 1 << self.scale

    @property
    def num_edges(self) -> int:
        return (1 << self.scale) * self.edgefactor


@dataclass(frozen=True)
class EdgeList:
    """Generated undirected edge pairs (directionalization happens in CSR)."""

    u: np.ndarray  # uint32
    v: np.ndarray  # uint32
    num_vertices: int
    params: GraphParams

    def __len__(self) -> int:
        return len(self.u)

    def pairs(self) -> np.ndarray:
        """Edges as an (m, 2) array."""
        return np.stack([self.u, self.v], axis=1)


class EdgeRng:
    """Deterministic per-edge random stream, seeded from (seed, edge index)."""

    def __init__(self, seed: int, edge_index: int):
        self.seed = seed
        self.edge_index = edge_index
        self._level = 0

    def next_unit(self) -> float:
        u = _unit_draws(
            self.seed, np.array([self.edge_index], dtype=np.uint64), self._level
        )[0]
        self._level += 1
        return float(u)


def rmat_edge(params: GraphParams, rng: EdgeRng) -> tuple[int, int]:
    """Draw one edge by ``scale`` recursive quadrant selections."""
    a, b, c, _ = params.probs
    u = v = 0
    for _ in range(params.scale):
        r = rng.next_unit()
        u = (u << 1) | (r >= a + b)
        v = (v << 1) | ((a <= r < a + b) or (r >= a + b + c))
    return u, v


def _label_permutation(n: int, seed: int) -> np.ndarray:
    """Pseudorandom permutation of [0, n): argsort of hashed labels."""
    ids = np.arange(n, dtype=np.uint64)
    keys = _mix64(_mix64(ids + np.uint64(1)) ^ np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    return np.argsort(keys, kind="stable").astype(np.uint32)


def generate(params: GraphParams, edge_budget: int = DEFAULT_EDGE_BUDGET) -> EdgeList:
    """Generate the full edge list for ``params`` (deterministic)."""
    m = params.num_edges
    if m > edge_budget:
        raise CapacityError(
            f"{m} edges exceed the configured budget of {edge_budget}"
        )
    a, b, c, _ = params.probs
    idx = np.arange(m, dtype=np.uint64)
    u = np.zeros(m, dtype=np.uint64)
    v = np.zeros(m, dtype=np.uint64)
    for level in range(params.scale):
        r = _unit_draws(params.seed, idx, level)
        u = (u << np.uint64(1)) | (r >= a + b)
        v = (v << np.uint64(1)) | (((r >= a) & (r < a + b)) | (r >= a + b + c))
    u = u.astype(np.uint32)
    v = v.astype(np.uint32)
    if params.permute_labels and params.num_vertices > 1:
        perm = _label_permutation(params.num_vertices, params.seed)
        u = perm[u]
        v = perm[v]
    u.setflags(write=False)
    v.setflags(write=False)
    return EdgeList(u=u, v=v, num_vertices=params.num_vertices, params=params)


def dump(edges: EdgeList, path) -> None:
    """Binary dump: little-endian header + count pairs of u64 endpoints."""
    p = edges.params
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, p.scale, p.edgefactor, p.seed, len(edges)))
        pairs = np.empty((len(edges), 2), dtype="<u8")
        pairs[:, 0] = edges.u
        pairs[:, 1] = edges.v
        pairs.tofile(fh)


def load(path) -> EdgeList:
    """Load an edge list written by :func:`dump`."""
    with open(path, "rb") as fh:
        magic, scale, edgefactor, seed, count = _HEADER.unpack(
            fh.read(_HEADER.size)
        )
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        pairs = np.fromfile(fh, dtype="<u8", count=2 * count).reshape(count, 2)
    params = GraphParams(scale=scale, edgefactor=edgefactor, seed=seed)
    u = pairs[:, 0].astype(np.uint32)
    v = pairs[:, 1].astype(np.uint32)
    u.setflags(write=False)
    v.setflags(write=False)
    return EdgeList(u=u, v=v, num_vertices=1 << scale, params=params)
