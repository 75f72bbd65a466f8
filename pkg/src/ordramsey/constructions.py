"""Explicit ordered matchings built from grids of intervals.

``build_M_t(t)`` lives on ``[2t^2]``: the left half is cut into intervals
``I_1..I_t`` and the right half into ``J_1..J_t`` (all of length ``t``), and
for ``i != j`` the ``j``-th vertex of ``I_i`` is joined to the ``i``-th vertex
of ``J_j``. ``build_M_kt(k, t)`` interleaves ``C(k, 2)`` copies of it across
``k`` classes of ``(k-1) t^2`` vertices each.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .ordered import OrderedGraph, OrderedMatching
from .windows import prefix_sums, window_pair_counts


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteGridLayout:
    t: int

    @property
    def n_vertices(self) -> int:
        return 2 * self.t * self.t

    def I(self, i: int) -> tuple[int, int]:
        t = self.t
        return (i - 1) * t + 1, i * t

    def J(self, j: int) -> tuple[int, int]:
        t = self.t
        return t * t + (j - 1) * t + 1, t * t + j * t

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "I": [list(self.I(i)) for i in range(1, self.t + 1)],
            "J": [list(self.J(j)) for j in range(1, self.t + 1)],
        }


def build_M_t(t: int) -> tuple[OrderedMatching, BipartiteGridLayout]:
    if t < 1:
        raise InvalidParameters("t must be positive")
    lay = BipartiteGridLayout(t)
    edges = []
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            if i != j:
                edges.append((lay.I(i)[0] + j - 1, lay.J(j)[0] + i - 1))
    return OrderedMatching(lay.n_vertices, frozenset(edges)), lay


@dataclass(frozen=True)
class BlockLayout:
    """Classes ``P_1..P_k``, blocks ``B_{i,l}`` and superblocks ``C_{i,a}``.

    Block ``B_{i,l}`` (``l = 1..(k-1)t``) belongs to superblock ``C_{i,a_j}``
    where ``j = l mod (k-1)`` and ``a_j`` is the ``(j+1)``-st smallest element
    of ``[k] \\ {i}``.
    """

    k: int
    t: int

    @property
    def class_size(self) -> int:
        return (self.k - 1) * self.t ** 2

    @property
    def n_vertices(self) -> int:
        return self.k * self.class_size

    @property
    def blocks_per_class(self) -> int:
        return (self.k - 1) * self.t

    def P(self, i: int) -> tuple[int, int]:
        s = self.class_size
        return (i - 1) * s + 1, i * s

    def block(self, i: int, l: int) -> tuple[int, int]:
        start = self.P(i)[0] + (l - 1) * self.t
        return start, start + self.t - 1

    def partner_label(self, i: int, j: int) -> int:
        """``a_j`` for class ``i``."""
        return [a for a in range(1, self.k + 1) if a != i][j]

    def superblock_blocks(self, i: int, a: int) -> list[int]:
        """Block indices ``l`` (increasing) forming ``C_{i,a}``."""
        if a == i:
            raise InvalidParameters("no superblock C_{i,i}")
        j = [x for x in range(1, self.k + 1) if x != i].index(a)
        return [l for l in range(1, self.blocks_per_class + 1) if l % (self.k - 1) == j]

    def superblock(self, i: int, a: int) -> list[int]:
        out = []
        for l in self.superblock_blocks(i, a):
            s, e = self.block(i, l)
            out.extend(range(s, e + 1))
        return out

    def to_dict(self) -> dict:
        k = self.k
        return {
            "k": k,
            "t": self.t,
            "n_vertices": self.n_vertices,
            "classes": [list(self.P(i)) for i in range(1, k + 1)],
            "blocks": {f"{i},{l}": list(self.block(i, l))
                       for i in range(1, k + 1) for l in range(1, self.blocks_per_class + 1)},
            "superblocks": {f"{i},{a}": [list(self.block(i, l)) for l in self.superblock_blocks(i, a)]
                            for i in range(1, k + 1) for a in range(1, k + 1) if a != i},
        }


def build_M_kt(k: int, t: int) -> tuple[OrderedMatching, BlockLayout]:
    if k < 3:
        raise InvalidParameters("k must be at least 3")
    if t < 1:
        raise InvalidParameters("t must be positive")
    lay = BlockLayout(k, t)
    edges = []
    for i, j in combinations(range(1, k + 1), 2):
        left = [lay.block(i, l) for l in lay.superblock_blocks(i, j)]  # I_1..I_t
        right = [lay.block(j, l) for l in lay.superblock_blocks(j, i)]  # J_1..J_t
        for a in range(1, t + 1):
            for b in range(1, t + 1):
                if a != b:
                    edges.append((left[a - 1][0] + b - 1, right[b - 1][0] + a - 1))
    return OrderedMatching(lay.n_vertices, frozenset(edges)), lay


def _adjacency(g: OrderedGraph) -> np.ndarray:
    a = np.zeros((g.n_vertices, g.n_vertices), dtype=np.int32)
    for u, v in g.edges:
        a[u - 1, v - 1] = a[v - 1, u - 1] = 1
    return a


def density_counterexample(t: int, min_length: Optional[int] = None) -> Optional[tuple[tuple[int, int], tuple[int, int]]]:
    """An interval pair ``I`` (left half), ``J`` (right half), both of length
    ``min_length`` (default ``2t``), with no edge of ``M_t`` between them.

    Windows of exactly ``min_length`` suffice: longer intervals contain them.
    """
    m, _ = build_M_t(t)
    L = 2 * t if min_length is None else min_length
    half = t * t
    if L > half or L < 1:
        return None
    counts = window_pair_counts(prefix_sums(_adjacency(m)), (1, half), (half + 1, 2 * half), L, L)
    zero = np.argwhere(counts == 0)
    if zero.size == 0:
        return None
    a, b = (int(x) for x in zero[0])
    return (1 + a, a + L), (half + 1 + b, half + b + L)


def verify_M_t_density(t: int, min_length: Optional[int] = None) -> bool:
    return density_counterexample(t, min_length) is None


@dataclass
class Lemma6Report:
    k: int
    t: int
    part_a: bool
    part_b: bool
    max_small_pair_edges: int
    min_large_pair_edges: Optional[int]
    part_a_vacuous: bool
    edge_bound: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_lemma6(k: int, t: int, *, strict: bool = False) -> Lemma6Report:
    """Check both interval-density properties of ``M_{k,t}`` over every pair of
    distinct classes.

    (a) intervals of length ``>= 2kt`` in different classes share an edge;
    (b) intervals of length ``<= 2kt`` in different classes share at most
    ``(2k+1)^2`` edges. Both reduce to windows of one length by monotonicity.
    When a class is shorter than ``2kt`` part (a) is vacuous; ``strict``
    turns that into :class:`InvalidParameters`.
    """
    m, lay = build_M_kt(k, t)
    s = prefix_sums(_adjacency(m))
    big = 2 * k * t
    size = lay.class_size
    vacuous = size < big
    if vacuous and strict:
        raise InvalidParameters(f"classes have {size} < 2kt = {big} vertices; part (a) is vacuous")
    small = min(big, size)
    min_large, max_small = None, 0
    for i, j in combinations(range(1, k + 1), 2):
        if not vacuous:
            c = window_pair_counts(s, lay.P(i), lay.P(j), big, big)
            lo = int(c.min())
            min_large = lo if min_large is None else min(min_large, lo)
        c = window_pair_counts(s, lay.P(i), lay.P(j), small, small)
        max_small = max(max_small, int(c.max()))
    bound = (2 * k + 1) ** 2
    return Lemma6Report(k, t, vacuous or min_large >= 1, max_small <= bound, max_small,
                        min_large, vacuous, bound)


def superblock_pair_graph(k: int, t: int, i: int, j: int) -> OrderedGraph:
    """Subgraph of ``M_{k,t}`` induced on ``C_{i,j}`` followed by ``C_{j,i}`` (``i < j``)."""
    if not 1 <= i < j <= k:
        raise InvalidParameters("need 1 <= i < j <= k")
    m, lay = build_M_kt(k, t)
    return m.induced(lay.superblock(i, j) + lay.superblock(j, i))


def verify_superblock_pairs(k: int, t: int) -> bool:
    """Every superblock pair induces exactly ``M_t`` (ordered isomorphism is
    equality after relabelling to ``1..2t^2``)."""
    mt = OrderedGraph(*_as_graph_args(build_M_t(t)[0]))
    return all(superblock_pair_graph(k, t, i, j) == mt for i, j in combinations(range(1, k + 1), 2))


def _as_graph_args(g: OrderedGraph) -> tuple[int, frozenset]:
    return g.n_vertices, g.edges
