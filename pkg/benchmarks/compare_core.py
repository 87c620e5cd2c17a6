"""Compare the compiled kernel core against the pure-Python fallback.

Runs the same traversals through both engines on one generated graph
and prints per-mode timings.  Usage:

    python benchmarks/compare_core.py [--scale 14] [--edgefactor 16] [--runs 8]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hybfs import GraphParams, build, generate, native_available
from hybfs.harness import sample_sources
from hybfs.hybrid import HeuristicParams, hybrid_bfs
from hybfs.lanes import VecConfig


def time_mode(g, sources, use_simd, engine_name, backend="simd"):
    cfg = VecConfig(backend=backend)
    t0 = time.perf_counter()
    for s in sources:
        hybrid_bfs(g, int(s), cfg=cfg, use_simd=use_simd, engine_name=engine_name)
    return (time.perf_counter() - t0) / len(sources)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scale", type=int, default=14)
    ap.add_argument("--edgefactor", type=int, default=16)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--runs", type=int, default=8)
    args = ap.parse_args()

    params = GraphParams(scale=args.scale, edgefactor=args.edgefactor, seed=args.seed)
    g = build(generate(params))
    sources = sample_sources(g, args.runs, args.seed)
    m = g.in_edges_total

    print(f"scale={args.scale} edgefactor={args.edgefactor} runs={args.runs}")
    if not native_available():
        print("compiled core NOT available; python engine only")

    rows = []
    for label, use_simd, backend in [
        ("scalar-hybrid", False, "simd"),
        ("simd-hybrid", True, "simd"),
        ("simd-hybrid/emulate", True, "emulate"),
    ]:
        engines = ["python"]
        if native_available() and backend == "simd":
            engines.insert(0, "native")
        for eng in engines:
            sec = time_mode(g, sources, use_simd, eng, backend)
            rows.append((label, eng, sec, m / sec))

    print(f"{'mode':22s} {'engine':8s} {'sec/run':>12s} {'TEPS':>16s}")
    for label, eng, sec, teps in rows:
        print(f"{label:22s} {eng:8s} {sec:12.6f} {teps:16,.0f}")


if __name__ == "__main__":
    main()
