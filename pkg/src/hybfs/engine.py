"""Kernel dispatch: compiled extension core vs pure-Python fallback.

The compiled module is optional; when it fails to import (not built,
wrong platform) every kernel transparently falls back to the
numpy/per-lane implementations.  Requesting backend="emulate" always
routes through the pure-Python per-lane path, which is the scalar
emulation of the lane contract.
"""

from __future__ import annotations

import numpy as np

from . import bfs_scalar, bfs_vector
from .bfs_scalar import counters_after_layer
from .bfs_vector import KernelStats
from .csr import CsrGraph
from .frontier import Bitmap, BfsTree, LayerCounters
from .lanes import VecConfig

try:  # pragma: no cover - exercised implicitly by the whole suite
    from . import _native
except ImportError:  # pragma: no cover
    _native = None

ENGINES = ("auto", "native", "python")


def _bu_aux(g: CsrGraph, max_pos: int):
    """Per-graph auxiliary arrays for the compiled bottom-up kernel.

    rs32: row starts narrowed to int32 for vector gathers (None when the
    arc count does not fit); posw/longw: bitmap words marking vertices
    with degree > 0 and degree > max_pos.  Cached on the graph instance.
    """
    cache = getattr(g, "_bu_aux_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(g, "_bu_aux_cache", cache)
    entry = cache.get(max_pos)
    if entry is not None:
        return entry
    n = g.num_vertices
    nwords = (n + 31) // 32
    rs32 = None
    if g.row_starts[n] <= 0x7FFFFFFF:
        rs32 = g.row_starts.astype(np.int32)
    deg = np.diff(g.row_starts)

    def _pack(flags):
        bits = np.zeros(nwords * 32, dtype=bool)
        bits[:n] = flags
        return np.packbits(bits, bitorder="little").view(np.uint32)

    entry = (rs32, _pack(deg > 0), _pack(deg > max_pos))
    cache[max_pos] = entry
    return entry


def native_available() -> bool:
    return _native is not None


def resolve_engine(engine: str = "auto", backend: str = "simd") -> str:
    """Pick the concrete engine for a request.

    "emulate" lane semantics only exist in the Python engine; otherwise
    "auto" prefers the compiled core when present.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    if engine == "native" and _native is None:
        raise RuntimeError("compiled core requested but not available")
    if engine != "auto":
        return engine
    if backend == "emulate" or _native is None:
        return "python"
    return "native"


def run_top_down(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    engine: str,
    stats: KernelStats,
) -> LayerCounters:
    if engine == "native":
        _native.top_down_layer(
            g.row_starts, g.adjacency, in_bm.words, vis.words, out.words,
            tree.parent, g.num_vertices,
        )
        return counters_after_layer(g, vis, out)
    return bfs_scalar.top_down_layer(g, in_bm, vis, out, tree)


def run_bottom_up(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    engine: str,
    stats: KernelStats,
) -> LayerCounters:
    if engine == "native":
        _native.bottom_up_layer(
            g.row_starts, g.adjacency, in_bm.words, vis.words, out.words,
            tree.parent, g.num_vertices,
        )
        return counters_after_layer(g, vis, out)
    return bfs_scalar.bottom_up_layer(g, in_bm, vis, out, tree)


def run_top_down_chunked(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    cfg: VecConfig,
    engine: str,
    stats: KernelStats,
) -> LayerCounters:
    if engine == "native":
        stats.gather_count += _native.top_down_chunked(
            g.row_starts, g.adjacency, in_bm.words, vis.words, out.words,
            tree.parent, g.num_vertices,
        )
        return counters_after_layer(g, vis, out)
    return bfs_vector.top_down_chunked(g, in_bm, vis, out, tree, cfg, stats)


def run_bottom_up_multiple_set(
    g: CsrGraph,
    in_bm: Bitmap,
    vis: Bitmap,
    out: Bitmap,
    tree: BfsTree,
    cfg: VecConfig,
    engine: str,
    stats: KernelStats,
) -> LayerCounters:
    if engine == "native":
        rs32, posw, longw = _bu_aux(g, cfg.max_pos)
        fallback, gathers = _native.bottom_up_multiple_set(
            g.row_starts, g.adjacency, in_bm.words, vis.words, out.words,
            tree.parent, g.num_vertices, cfg.max_pos, rs32, posw, longw,
        )
        stats.fallback_count += fallback
        stats.gather_count += gathers
        return counters_after_layer(g, vis, out)
    return bfs_vector.bottom_up_multiple_set(g, in_bm, vis, out, tree, cfg, stats)


def bfs_reference(g: CsrGraph, source: int, engine: str = "auto"):
    """Oracle traversal via whichever engine is selected."""
    eng = resolve_engine(engine)
    if eng == "native":
        if not 0 <= source < g.num_vertices:
            raise IndexError(
                f"source {source} out of range [0, {g.num_vertices})"
            )
        parent, levels = _native.bfs_reference(
            g.row_starts, g.adjacency, g.num_vertices, source
        )
        return BfsTree(parent=parent, source=source), levels
    return bfs_scalar.bfs_reference(g, source)
