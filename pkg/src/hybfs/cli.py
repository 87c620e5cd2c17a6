"""Command-line benchmark driver."""

from __future__ import annotations

import argparse
import sys

from . import engine
from .generator import GraphParams
from .harness import MODES, run_benchmark, write_report_csv, write_trace_csv
from .hybrid import HeuristicParams
from .lanes import VecConfig


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hybfs",
        description="Hybrid BFS benchmark: generate a Kronecker graph and "
        "time repeated traversals with tree validation.",
    )
    ap.add_argument("--scale", type=int, required=True, help="log2 vertex count")
    ap.add_argument("--edgefactor", type=int, default=16, help="edges per vertex")
    ap.add_argument("--seed", type=int, default=1, help="generator seed")
    ap.add_argument("--mode", choices=MODES, default="scalar-hybrid")
    ap.add_argument("--alpha", type=int, default=1024, help="bottom-up trigger divisor")
    ap.add_argument("--beta", type=int, default=64, help="top-down return divisor")
    ap.add_argument("--max-pos", type=int, default=8, help="vector probe cap")
    ap.add_argument(
        "--backend",
        choices=("simd", "emulate"),
        default="simd",
        help="lane backend: compiled/vectorized path or scalar emulation",
    )
    ap.add_argument("--runs", type=int, default=64, help="number of timed traversals")
    ap.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker count (kernels currently run single-threaded)",
    )
    ap.add_argument(
        "--allow-isolated-sources",
        action="store_true",
        help="permit zero-degree starting vertices (zero-TEPS runs)",
    )
    ap.add_argument("--out", metavar="report.csv", help="per-run report CSV")
    ap.add_argument("--trace-out", metavar="trace.csv", help="per-layer trace CSV")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = GraphParams(scale=args.scale, edgefactor=args.edgefactor, seed=args.seed)
    heuristic = HeuristicParams(alpha=args.alpha, beta=args.beta)
    cfg = VecConfig(max_pos=args.max_pos, backend=args.backend)

    report = run_benchmark(
        params,
        mode=args.mode,
        heuristic=heuristic,
        cfg=cfg,
        runs=args.runs,
        allow_isolated=args.allow_isolated_sources,
    )

    core = "compiled" if engine.native_available() else "pure-python"
    eng = engine.resolve_engine("auto", args.backend)
    print(f"hybfs {args.mode} scale={args.scale} edgefactor={args.edgefactor}")
    print(f"core: {core} (engine in use: {eng}, backend: {args.backend})")
    print(f"runs: {len(report.runs)}  invalid: {sum(not r.valid for r in report.runs)}")
    print(f"teps denominator (undirected edges): {report.teps_denominator}")
    print(f"harmonic mean TEPS: {report.harmonic_mean_teps:,.0f}")
    print(
        f"seconds min/mean/max: {report.min_seconds:.6f} / "
        f"{report.mean_seconds:.6f} / {report.max_seconds:.6f}"
    )
    if report.zero_teps_runs:
        print(f"zero-TEPS runs excluded from harmonic mean: {report.zero_teps_runs}")

    if args.out:
        write_report_csv(report, args.out)
        print(f"report written to {args.out}")
    if args.trace_out:
        write_trace_csv(report, args.trace_out)
        print(f"trace written to {args.trace_out}")
    return 0 if all(r.valid for r in report.runs) else 1


if __name__ == "__main__":
    sys.exit(main())
