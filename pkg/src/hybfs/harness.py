"""Benchmark driver: source sampling, timed runs, tree validation and
TEPS statistics in the Graph500 style (64 runs, harmonic-mean TEPS).

The TEPS denominator is the undirected edge count m = 2**scale *
edgefactor, fixed per graph; the convention is echoed in the report CSV
header.  Zero-TEPS runs (possible only when isolated sources are
allowed) are excluded from the harmonic mean and counted separately.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field

import numpy as np

from . import csr as csr_mod
from . import engine, generator
from .frontier import NIL, UNREACHED, BfsTree, LayerCounters
from .generator import GraphParams
from .csr import CsrGraph
from .hybrid import (
    BOTTOM_UP,
    TOP_DOWN,
    HeuristicParams,
    LayerTraceRow,
    hybrid_bfs,
)
from .lanes import VecConfig
from .generator import _mix64  # deterministic source shuffling

MODES = ("scalar-td", "scalar-bu", "scalar-hybrid", "simd-hybrid")

TRACE_FIELDS = (
    "layer,direction,kernel,v_f,e_f,e_u,f,g,seconds,fallbacks,gathers"
)


@dataclass
class ValidationReport:
    ok: bool
    rule: int = 0
    witness: int = -1
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class RunResult:
    source: int
    seconds: float
    teps: float
    valid: bool
    trace: list[LayerTraceRow] = field(default_factory=list)


@dataclass
class BenchmarkReport:
    params: GraphParams
    mode: str
    runs: list[RunResult]
    harmonic_mean_teps: float
    min_seconds: float
    max_seconds: float
    mean_seconds: float
    zero_teps_runs: int
    teps_denominator: int


def sample_sources(
    g: CsrGraph, count: int, seed: int, allow_isolated: bool = False
) -> np.ndarray:
    """``count`` distinct starting vertices, deterministic in ``seed``.

    By default vertices of degree zero are skipped (resampled), so no
    run can produce zero TEPS.
    """
    n = g.num_vertices
    if count > n:
        raise ValueError(f"cannot sample {count} distinct vertices from {n}")
    ids = np.arange(n, dtype=np.uint64)
    keys = _mix64(
        _mix64(ids + np.uint64(0x5EED)) ^ np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    )
    order = np.argsort(keys, kind="stable")
    if allow_isolated:
        return order[:count].astype(np.uint32)
    degs = g.degrees()
    eligible = order[degs[order] > 0]
    if len(eligible) < count:
        raise ValueError(
            f"only {len(eligible)} vertices with degree >= 1, need {count}"
        )
    return eligible[:count].astype(np.uint32)


def _levels_from_parents(g: CsrGraph, source: int, parent: np.ndarray) -> np.ndarray:
    """Levels derived by walking the parent array as a tree rooted at
    the source; vertices whose parent chain never reaches the source
    stay UNREACHED."""
    n = g.num_vertices
    levels = np.full(n, UNREACHED, dtype=np.int64)
    visited = parent != np.uint32(NIL)
    ids = np.arange(n, dtype=np.int64)
    child = ids[visited & (ids != source)]
    order = np.argsort(parent[child], kind="stable")
    child = child[order]
    starts = np.searchsorted(parent[child], np.arange(n, dtype=np.uint32))
    ends = np.append(starts[1:], len(child))

    levels[source] = 0
    frontier = np.array([source], dtype=np.int64)
    depth = 0
    while len(frontier):
        depth += 1
        nxt = np.concatenate(
            [child[starts[v] : ends[v]] for v in frontier]
        ) if len(frontier) else np.empty(0, dtype=np.int64)
        if len(nxt) == 0:
            break
        levels[nxt] = depth
        frontier = nxt
    return levels


def validate_tree(g: CsrGraph, source: int, tree: BfsTree) -> ValidationReport:
    """Graph500-style tree checks.

    Rules: (1) parent[source] == source; (2) every parent edge exists in
    the graph; (3) parent walks are finite/acyclic with level(v) =
    level(parent) + 1; (4) no graph edge spans more than one level;
    (5) visited iff reachable from the source.  Rule 5 is evaluated
    before rule 3 so that an unreached-but-visited vertex is reported
    as a reachability violation rather than a broken parent chain.
    """
    n = g.num_vertices
    parent = tree.parent
    nil = np.uint32(NIL)

    # Rule 1
    if parent[source] != source:
        return ValidationReport(
            False, 1, source, "parent[source] != source"
        )

    visited = parent != nil
    ids = np.arange(n, dtype=np.int64)

    # Rule 2: each non-source parent link must be a graph edge.
    check = visited & (ids != source)
    vv = ids[check]
    if len(vv):
        pp = parent[vv].astype(np.uint64)
        # CSR order is globally sorted by (row, neighbor), so arc
        # existence is a binary search over the packed keys.
        if g.num_arcs == 0:
            return ValidationReport(
                False, 2, int(vv[0]), "visited vertex in an edgeless graph"
            )
        degs = g.degrees()
        arc_keys = (
            np.repeat(ids, degs).astype(np.uint64) << np.uint64(32)
        ) | g.adjacency.astype(np.uint64)
        queries = (vv.astype(np.uint64) << np.uint64(32)) | pp
        slot = np.searchsorted(arc_keys, queries)
        ok = (slot < len(arc_keys)) & (
            arc_keys[np.minimum(slot, len(arc_keys) - 1)] == queries
        )
        if not ok.all():
            w = int(vv[np.flatnonzero(~ok)[0]])
            return ValidationReport(
                False, 2, w, f"parent {int(parent[w])} is not a neighbor"
            )

    # Rule 5: visited iff reachable.
    _, ref_levels = engine.bfs_reference(g, source)
    reachable = ref_levels != UNREACHED
    mismatch = np.flatnonzero(visited != reachable)
    if len(mismatch):
        w = int(mismatch[0])
        kind = "visited but unreachable" if visited[w] else "reachable but not visited"
        return ValidationReport(False, 5, w, kind)

    # Rule 3: levels from walking parents must cover every visited vertex.
    levels = _levels_from_parents(g, source, parent)
    broken = np.flatnonzero(visited & (levels == UNREACHED))
    if len(broken):
        return ValidationReport(
            False, 3, int(broken[0]), "parent chain does not reach the source"
        )

    # Rule 4: every edge with both endpoints visited spans <= 1 level.
    degs = g.degrees()
    edge_u = np.repeat(ids, degs)
    edge_w = g.adjacency.astype(np.int64)
    both = visited[edge_u] & visited[edge_w]
    skew = np.abs(levels[edge_u[both]] - levels[edge_w[both]]) > 1
    if skew.any():
        w = int(edge_u[both][np.flatnonzero(skew)[0]])
        return ValidationReport(False, 4, w, "edge spans more than one level")

    return ValidationReport(True)


def teps(m: int, seconds: float) -> float:
    """Traversed edges per second for an m-edge graph."""
    if seconds <= 0:
        raise ValueError("duration must be positive")
    return m / seconds


def harmonic_mean(values) -> float:
    values = list(values)
    if not values:
        raise ValueError("harmonic mean of empty input")
    if any(v <= 0 for v in values):
        raise ValueError("harmonic mean requires positive values")
    return len(values) / sum(1.0 / v for v in values)


def _run_one(
    g: CsrGraph,
    source: int,
    mode: str,
    heuristic: HeuristicParams,
    cfg: VecConfig,
    engine_name: str,
) -> tuple[BfsTree, list[LayerTraceRow], float]:
    force = {"scalar-td": TOP_DOWN, "scalar-bu": BOTTOM_UP}.get(mode)
    use_simd = mode == "simd-hybrid"
    t0 = time.perf_counter()
    tree, trace = hybrid_bfs(
        g,
        int(source),
        p=heuristic,
        cfg=cfg,
        use_simd=use_simd,
        engine_name=engine_name,
        force_direction=force,
    )
    return tree, trace, time.perf_counter() - t0


def run_benchmark(
    params: GraphParams,
    mode: str = "scalar-hybrid",
    heuristic: HeuristicParams | None = None,
    cfg: VecConfig | None = None,
    runs: int = 64,
    allow_isolated: bool = False,
    engine_name: str = "auto",
    source_seed: int | None = None,
) -> BenchmarkReport:
    """Generate, build, then time ``runs`` traversals with validation."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    heuristic = heuristic if heuristic is not None else HeuristicParams()
    cfg = cfg if cfg is not None else VecConfig()
    edges = generator.generate(params)
    g = csr_mod.build(edges)
    m = g.in_edges_total
    seed = params.seed if source_seed is None else source_seed
    sources = sample_sources(g, runs, seed, allow_isolated=allow_isolated)

    results: list[RunResult] = []
    for s in sources:
        tree, trace, seconds = _run_one(g, int(s), mode, heuristic, cfg, engine_name)
        traversed = int(np.count_nonzero(tree.visited_mask())) - 1
        rate = teps(m, seconds) if traversed > 0 else 0.0
        report = validate_tree(g, int(s), tree)
        results.append(
            RunResult(
                source=int(s),
                seconds=seconds,
                teps=rate,
                valid=bool(report),
                trace=trace,
            )
        )

    positive = [r.teps for r in results if r.teps > 0]
    secs = [r.seconds for r in results]
    return BenchmarkReport(
        params=params,
        mode=mode,
        runs=results,
        harmonic_mean_teps=harmonic_mean(positive) if positive else 0.0,
        min_seconds=min(secs),
        max_seconds=max(secs),
        mean_seconds=sum(secs) / len(secs),
        zero_teps_runs=len(results) - len(positive),
        teps_denominator=m,
    )


def write_report_csv(report: BenchmarkReport, path) -> None:
    """report rows: source,seconds,teps,valid (LF, UTF-8)."""
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(
            f"# teps_denominator=undirected_edges m={report.teps_denominator} "
            f"mode={report.mode} scale={report.params.scale} "
            f"edgefactor={report.params.edgefactor} seed={report.params.seed}\n"
        )
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["source", "seconds", "teps", "valid"])
        for r in report.runs:
            writer.writerow([r.source, f"{r.seconds:.9f}", f"{r.teps:.3f}", int(r.valid)])


def write_trace_csv(report: BenchmarkReport, path) -> None:
    """Per-layer trace rows for every run, concatenated in run order."""
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(TRACE_FIELDS + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        for r in report.runs:
            for row in r.trace:
                writer.writerow(
                    [
                        row.layer,
                        row.direction,
                        row.kernel,
                        row.v_f,
                        row.e_f,
                        row.e_u,
                        row.f_value,
                        row.g_value,
                        f"{row.elapsed:.9f}",
                        row.fallback_count,
                        row.gather_count,
                    ]
                )
