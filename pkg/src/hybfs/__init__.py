"""Hybrid (direction-optimizing) BFS with a 16-lane bottom-up kernel.

The hot layer kernels live in a compiled extension (``hybfs._native``)
with a pure-Python fallback selected at import; ``native_available()``
reports which core is active.
"""

from .csr import CsrGraph, build
from .engine import bfs_reference, native_available
from .frontier import NIL, UNREACHED, Bitmap, BfsTree, LayerCounters
from .generator import CapacityError, EdgeList, GraphParams, generate
from .harness import (
    BenchmarkReport,
    RunResult,
    harmonic_mean,
    run_benchmark,
    sample_sources,
    teps,
    validate_tree,
)
from .hybrid import HeuristicParams, LayerTraceRow, hybrid_bfs
from .lanes import VecConfig

__version__ = "0.1.0"

__all__ = [
    "Bitmap",
    "BfsTree",
    "BenchmarkReport",
    "CapacityError",
    "CsrGraph",
    "EdgeList",
    "GraphParams",
    "HeuristicParams",
    "LayerCounters",
    "LayerTraceRow",
    "NIL",
    "RunResult",
    "UNREACHED",
    "VecConfig",
    "bfs_reference",
    "build",
    "generate",
    "harmonic_mean",
    "hybrid_bfs",
    "native_available",
    "run_benchmark",
    "sample_sources",
    "teps",
    "validate_tree",
]
