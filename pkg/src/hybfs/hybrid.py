"""Per-layer direction controller for the hybrid traversal.

After each layer the counters (e_f, v_f, e_u) are refreshed and the
next layer's direction follows the two-threshold rule: switch to
bottom-up when the next frontier exceeds e_u / alpha, switch back to
top-down when it falls below n / beta, otherwise keep the current
direction (hysteresis).  The controller emits one trace row per layer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import engine
from .bfs_vector import KernelStats
from .csr import CsrGraph
from .frontier import Bitmap, BfsTree, LayerCounters
from .lanes import VecConfig

TOP_DOWN = "top-down"
BOTTOM_UP = "bottom-up"

COUNTER_MODES = ("vertex", "edge")


@dataclass
class HeuristicParams:
    """Switching thresholds: f = e_u // alpha, g = n // beta.

    counter_mode picks how e_u is denominated: "vertex" counts the
    still-unvisited vertices (the default; it reproduces the observed
    threshold sequence), "edge" sums the degrees of unvisited vertices.
    """

    alpha: int = 1024
    beta: int = 64
    counter_mode: str = "vertex"

    def __post_init__(self):
        if self.alpha < 1 or self.beta < 1:
            raise ValueError("alpha and beta must be >= 1")
        if self.counter_mode not in COUNTER_MODES:
            raise ValueError(f"counter_mode must be one of {COUNTER_MODES}")


@dataclass
class LayerTraceRow:
    layer: int
    direction: str
    kernel: str  # "scalar" | "simd"
    v_f: int
    e_f: int
    e_u: int
    f_value: int
    g_value: int
    elapsed: float
    fallback_count: int = 0
    gather_count: int = 0


def f_threshold(p: HeuristicParams, n: int, c: LayerCounters) -> int:
    """Frontier size above which the next layer goes bottom-up."""
    return c.e_u // p.alpha


def g_threshold(p: HeuristicParams, n: int, c: LayerCounters) -> int:
    """Frontier size below which the next layer returns to top-down."""
    return n // p.beta


def decide(
    p: HeuristicParams, current: str, frontier_size: int, n: int, c: LayerCounters
) -> str:
    """Direction for the next layer, with hysteresis between thresholds."""
    if frontier_size > f_threshold(p, n, c):
        return BOTTOM_UP
    if frontier_size < g_threshold(p, n, c):
        return TOP_DOWN
    return current


def hybrid_bfs(
    g: CsrGraph,
    source: int,
    p: HeuristicParams | None = None,
    cfg: VecConfig | None = None,
    use_simd: bool = False,
    engine_name: str = "auto",
    force_direction: str | None = None,
) -> tuple[BfsTree, list[LayerTraceRow]]:
    """Full traversal with per-layer direction selection.

    ``force_direction`` pins every layer to one direction (used by the
    all-top-down / all-bottom-up benchmark modes).
    """
    p = p if p is not None else HeuristicParams()
    cfg = cfg if cfg is not None else VecConfig()
    n = g.num_vertices
    if not 0 <= source < n:
        raise IndexError(f"source {source} out of range [0, {n})")
    eng = engine.resolve_engine(engine_name, cfg.backend)

    tree = BfsTree.fresh(n, source)
    vis = Bitmap(n)
    in_bm = Bitmap(n)
    out = Bitmap(n)
    vis.set(source)
    in_bm.set(source)

    src_deg = g.degree(source)
    if p.counter_mode == "vertex":
        e_u = n - 1
    else:
        e_u = g.num_arcs - src_deg
    counters = LayerCounters(e_f=src_deg, v_f=1, e_u=e_u)

    direction = TOP_DOWN
    frontier_size = 1
    layer = 1
    trace: list[LayerTraceRow] = []

    while frontier_size > 0:
        if force_direction is not None:
            direction = force_direction
        else:
            direction = decide(p, direction, frontier_size, n, counters)
        fv = f_threshold(p, n, counters)
        gv = g_threshold(p, n, counters)
        row_ef = counters.e_f
        row_eu = counters.e_u

        stats = KernelStats()
        t0 = time.perf_counter()
        if direction == TOP_DOWN:
            if use_simd:
                new = engine.run_top_down_chunked(
                    g, in_bm, vis, out, tree, cfg, eng, stats
                )
            else:
                new = engine.run_top_down(g, in_bm, vis, out, tree, eng, stats)
        else:
            if use_simd:
                new = engine.run_bottom_up_multiple_set(
                    g, in_bm, vis, out, tree, cfg, eng, stats
                )
            else:
                new = engine.run_bottom_up(g, in_bm, vis, out, tree, eng, stats)
        elapsed = time.perf_counter() - t0

        trace.append(
            LayerTraceRow(
                layer=layer,
                direction=direction,
                kernel="simd" if use_simd else "scalar",
                v_f=frontier_size,
                e_f=row_ef,
                e_u=row_eu,
                f_value=fv,
                g_value=gv,
                elapsed=elapsed,
                fallback_count=stats.fallback_count,
                gather_count=stats.gather_count,
            )
        )

        if p.counter_mode == "edge":
            new.e_u = counters.e_u - new.e_f
        counters = new
        frontier_size = new.v_f
        in_bm, out = out, in_bm
        out.clear()
        layer += 1

    return tree, trace
