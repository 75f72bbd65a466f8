"""Red/blue colorings of the complete ordered graph, bit-packed by edge index.

Edges ``{u, v}`` with ``1 <= u < v <= N`` are indexed in lexicographic order:
``(1,2), (1,3), ..., (1,N), (2,3), ...``. Bit ``idx`` of ``bits`` is 1 when
the edge is blue and 0 when it is red.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .ordered import OrderedGraph

RED, BLUE = 0, 1


def edge_index(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    if not 1 <= u < v <= n:
        raise ValueError(f"no edge ({u}, {v}) in K_{n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


def edge_from_index(idx: int, n: int) -> tuple[int, int]:
    u = 1
    while idx >= n - u:
        idx -= n - u
        u += 1
    return u, u + 1 + idx


@dataclass(frozen=True)
class EdgeColoring:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.bits < 0 or self.bits >> self.n_edges:
            raise ValueError("bits outside the edge range")

    @property
    def n_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    @classmethod
    def all_red(cls, n: int) -> "EdgeColoring":
        return cls(n, 0)

    @classmethod
    def all_blue(cls, n: int) -> "EdgeColoring":
        return cls(n, (1 << (n * (n - 1) // 2)) - 1)

    @classmethod
    def from_blue_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "EdgeColoring":
        bits = 0
        for u, v in edges:
            bits |= 1 << edge_index(u, v, n)
        return cls(n, bits)

    @classmethod
    def from_blue_masks(cls, masks: list[int]) -> "EdgeColoring":
        """Build from 0-indexed blue adjacency bitmasks."""
        n = len(masks)
        bits = 0
        for u in range(n):
            row = masks[u] >> (u + 1)
            base = u * (2 * n - u - 1) // 2
            bits |= row << base
        return cls(n, bits)

    def color(self, u: int, v: int) -> int:
        return (self.bits >> edge_index(u, v, self.n)) & 1

    def is_blue(self, u: int, v: int) -> bool:
        return self.color(u, v) == BLUE

    def blue_masks(self) -> list[int]:
        """0-indexed blue adjacency bitmasks."""
        n = self.n
        masks = [0] * n
        for u in range(n):
            width = n - u - 1
            base = u * (2 * n - u - 1) // 2
            row = (self.bits >> base) & ((1 << width) - 1)
            masks[u] |= row << (u + 1)
            r = row
            while r:
                low = r & -r
                w = u + low.bit_length()  # 0-indexed partner
                masks[w] |= 1 << u
                r ^= low
        return masks

    def red_masks(self) -> list[int]:
        full = (1 << self.n) - 1
        return [full & ~m & ~(1 << i) for i, m in enumerate(self.blue_masks())]

    def graph(self, color: int) -> OrderedGraph:
        es = [(u, v) for u, v in combinations(range(1, self.n + 1), 2) if self.color(u, v) == color]
        return OrderedGraph(self.n, frozenset(es))

    def blue_graph(self) -> OrderedGraph:
        return self.graph(BLUE)

    def red_graph(self) -> OrderedGraph:
        return self.graph(RED)

    def restrict(self, m: int) -> "EdgeColoring":
        """Coloring induced on the initial segment ``[m]``."""
        masks = self.blue_masks()[:m]
        return EdgeColoring.from_blue_masks([x & ((1 << m) - 1) for x in masks])

    def to_text(self) -> str:
        s = format(self.bits, "b").zfill(self.n_edges)[::-1] if self.n_edges else ""
        return f"{self.n}\n{s.replace('0', 'R').replace('1', 'B')}\n"

    @classmethod
    def from_text(cls, text: str) -> "EdgeColoring":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty coloring file")
        n = int(lines[0])
        chars = "".join(lines[1:])
        if len(chars) != n * (n - 1) // 2 or set(chars) - {"R", "B"}:
            raise ValueError(f"expected {n * (n - 1) // 2} R/B characters, got {len(chars)}")
        bits = int(chars[::-1].replace("R", "0").replace("B", "1"), 2) if chars else 0
        return cls(n, bits)

    def to_array(self) -> np.ndarray:
        """Symmetric ``n x n`` uint8 matrix, 1 for blue, diagonal 0."""
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, m in enumerate(self.blue_masks()):
            for v in range(self.n):
                if (m >> v) & 1:
                    a[u, v] = 1
        return a

    @classmethod
    def from_array(cls, blue: np.ndarray) -> "EdgeColoring":
        n = blue.shape[0]
        iu = np.triu_indices(n, 1)
        flags = np.asarray(blue)[iu].astype(bool)
        bits = 0
        for idx in np.flatnonzero(flags):
            bits |= 1 << int(idx)
        return cls(n, bits)


def random_coloring(n: int, p_blue: float, rng: np.random.Generator) -> EdgeColoring:
    """Each edge independently blue with probability ``p_blue``."""
    m = n * (n - 1) // 2
    flags = rng.random(m) < p_blue
    bits = int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little") if m else 0
    return EdgeColoring(n, bits)
