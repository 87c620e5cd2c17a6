"""Bitmap frontier / visited structures and the BFS tree container.

All per-layer state (frontier, output queue, visited set) is a packed
bitmap over 32-bit words.  Bit v lives in word v >> 5 at position
v & 0x1F (LSB-first), and each word splits into two 16-bit halves so a
half-word maps onto one 16-lane vector step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Parent value marking a never-visited vertex (all-ones 32-bit id).
NIL = 0xFFFFFFFF

#: Level value for vertices not reachable from the source.
UNREACHED = -1

WORD_BITS = 32
HALF_BITS = 16


class Bitmap:
    """Packed bit array over ``n`` vertices, 32-bit word granularity.

    Word updates are plain ORs; under CPython's GIL a word-OR is the
    atomic update the layer kernels rely on.  Padding bits past ``n``
    are never set.
    """

    __slots__ = ("n", "words")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.words = np.zeros((n + WORD_BITS - 1) // WORD_BITS, dtype=np.uint32)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")

    def test(self, v: int) -> bool:
        self._check(v)
        return bool((int(self.words[v >> 5]) >> (v & 0x1F)) & 1)

    def set(self, v: int) -> None:
        """Set bit ``v`` (atomic word-OR semantics)."""
        self._check(v)
        self.words[v >> 5] |= np.uint32(1 << (v & 0x1F))

    def get_half(self, word_index: int, half: int) -> int:
        """Return the lower (half=0) or upper (half=1) 16 bits of a word."""
        if not 0 <= word_index < len(self.words):
            raise IndexError(f"word {word_index} out of range")
        return (int(self.words[word_index]) >> (HALF_BITS * half)) & 0xFFFF

    def or_half(self, word_index: int, half: int, bits: int) -> None:
        """OR a 16-bit mask into one half of a word (word-atomic)."""
        if not 0 <= word_index < len(self.words):
            raise IndexError(f"word {word_index} out of range")
        self.words[word_index] |= np.uint32((bits & 0xFFFF) << (HALF_BITS * half))

    def popcount(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def indices(self) -> np.ndarray:
        """Ids of all set bits, ascending (uint32)."""
        flat = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return np.flatnonzero(flat[: self.n]).astype(np.uint32)

    def clear(self) -> None:
        self.words[:] = 0

    def copy(self) -> "Bitmap":
        out = Bitmap(self.n)
        out.words[:] = self.words
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bitmap)
            and self.n == other.n
            and bool(np.array_equal(self.words, other.words))
        )

    def __repr__(self) -> str:
        return f"Bitmap(n={self.n}, popcount={self.popcount()})"


@dataclass
class BfsTree:
    """Predecessor array output of a traversal; ``parent[v] == NIL`` iff
    v was never visited, and ``parent[source] == source``."""

    parent: np.ndarray  # uint32, length n
    source: int

    @classmethod
    def fresh(cls, n: int, source: int) -> "BfsTree":
        if not 0 <= source < n:
            raise IndexError(f"source {source} out of range [0, {n})")
        parent = np.full(n, NIL, dtype=np.uint32)
        parent[source] = source
        return cls(parent=parent, source=source)

    def visited_mask(self) -> np.ndarray:
        return self.parent != np.uint32(NIL)


@dataclass
class LayerCounters:
    """Per-layer heuristic inputs: e_f edges to check in the frontier,
    v_f vertices in the frontier, e_u edges (or, in the default
    vertex-denominated mode, vertices) still unvisited."""

    e_f: int = 0
    v_f: int = 0
    e_u: int = 0
