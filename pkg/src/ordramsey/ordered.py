"""Ordered graphs, ordered matchings and ordered-subgraph containment.

Vertices are the integers ``1..n`` in their natural order and edges are
stored as pairs ``(u, v)`` with ``u < v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

Permutation = tuple[int, ...]


class OrderedGraphError(ValueError):
    pass


class NotBipartiteMatching(OrderedGraphError):
    pass


class InvalidEmbedding(OrderedGraphError):
    pass


def _canonical_edges(n: int, edges: Iterable[Sequence[int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for e in edges:
        u, v = (int(x) for x in e)
        if u == v:
            raise OrderedGraphError(f"self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if u < 1 or v > n:
            raise OrderedGraphError(f"edge ({u}, {v}) outside [1, {n}]")
        out.add((u, v))
    return frozenset(out)


@dataclass(frozen=True)
class OrderedGraph:
    n_vertices: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_vertices < 0:
            raise OrderedGraphError("vertex count must be non-negative")
        object.__setattr__(self, "edges", _canonical_edges(self.n_vertices, self.edges))

    @classmethod
    def complete(cls, n: int) -> "OrderedGraph":
        return cls(n, frozenset(combinations(range(1, n + 1), 2)))

    @classmethod
    def single_edge(cls) -> "OrderedGraph":
        return cls(2, frozenset({(1, 2)}))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order."""
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacency_masks(self) -> list[int]:
        """Bitmask neighbourhoods, 0-indexed: bit ``j`` of ``masks[i]`` is set
        iff vertices ``i+1`` and ``j+1`` are adjacent."""
        masks = [0] * self.n_vertices
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return masks

    def induced(self, vertices: Iterable[int]) -> "OrderedGraph":
        """Induced subgraph relabelled to ``1..k`` keeping the vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i + 1 for i, v in enumerate(vs)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return OrderedGraph(len(vs), frozenset(es))


@dataclass(frozen=True)
class OrderedMatching(OrderedGraph):
    """An ordered graph of maximum degree at most one."""

    def __post_init__(self):
        super().__post_init__()
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise OrderedGraphError("vertex of degree > 1 in a matching")
            seen.add(u)
            seen.add(v)

    @classmethod
    def from_graph(cls, g: OrderedGraph) -> "OrderedMatching":
        return cls(g.n_vertices, g.edges)

    def partner(self) -> dict[int, int]:
        p = {}
        for u, v in self.edges:
            p[u] = v
            p[v] = u
        return p

    @property
    def is_perfect_bipartite(self) -> bool:
        n2 = self.n_vertices
        if n2 % 2 or 2 * len(self.edges) != n2:
            return False
        half = n2 // 2
        return all(u <= half < v for u, v in self.edges)


@dataclass(frozen=True)
class IntervalPartition:
    """Partition of ``[n]`` into consecutive intervals.

    ``cuts`` are the last vertices of every interval except the final one, so
    ``cuts=(2, 5)`` on ``n=7`` gives ``[1,2], [3,5], [6,7]``.
    """

    n: int
    cuts: tuple[int, ...] = ()

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        if self.n == 0:
            if cuts:
                raise OrderedGraphError("empty ground set has no cuts")
        elif any(b <= a for a, b in zip(cuts, cuts[1:])) or (cuts and (cuts[0] < 1 or cuts[-1] >= self.n)):
            raise OrderedGraphError(f"cuts {cuts} do not split [1, {self.n}] into nonempty intervals")
        object.__setattr__(self, "cuts", cuts)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "IntervalPartition":
        if any(s <= 0 for s in sizes):
            raise OrderedGraphError("interval sizes must be positive")
        cuts, acc = [], 0
        for s in sizes[:-1]:
            acc += s
            cuts.append(acc)
        return cls(sum(sizes), tuple(cuts))

    @property
    def n_intervals(self) -> int:
        return 0 if self.n == 0 else len(self.cuts) + 1

    def intervals(self) -> list[tuple[int, int]]:
        """Inclusive ``(start, end)`` pairs."""
        if self.n == 0:
            return []
        ends = list(self.cuts) + [self.n]
        starts = [1] + [c + 1 for c in self.cuts]
        return list(zip(starts, ends))

    def labels(self) -> list[int]:
        """``labels[v-1]`` is the 1-based interval index of vertex ``v``."""
        out = []
        for k, (a, b) in enumerate(self.intervals(), start=1):
            out.extend([k] * (b - a + 1))
        return out


# --- permutation correspondence -------------------------------------------------

def check_permutation(pi: Sequence[int]) -> Permutation:
    pi = tuple(int(x) for x in pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"not a permutation of [1, {len(pi)}]: {pi}")
    return pi


def inverse_permutation(pi: Sequence[int]) -> Permutation:
    inv = [0] * len(pi)
    for i, v in enumerate(pi, start=1):
        inv[v - 1] = i
    return tuple(inv)


def matching_from_permutation(pi: Sequence[int]) -> OrderedMatching:
    """Perfect-bipartite matching on ``[2n]`` with edges ``{i, n + pi(i)}``."""
    pi = check_permutation(pi)
    n = len(pi)
    return OrderedMatching(2 * n, frozenset((i, n + v) for i, v in enumerate(pi, start=1)))


def permutation_from_matching(m: OrderedGraph) -> Permutation:
    n2 = m.n_vertices
    if n2 % 2:
        raise NotBipartiteMatching("odd number of vertices")
    n = n2 // 2
    pi = [0] * n
    for u, v in m.edges:
        if not (u <= n < v):
            raise NotBipartiteMatching(f"edge ({u}, {v}) does not cross the midpoint {n}")
        if pi[u - 1]:
            raise NotBipartiteMatching(f"vertex {u} has degree > 1")
        pi[u - 1] = v - n
    if 0 in pi or len(set(pi)) != n:
        raise NotBipartiteMatching("not every vertex is matched exactly once")
    return tuple(pi)


# --- interval chromatic number --------------------------------------------------

def interval_chromatic_number(g: OrderedGraph) -> tuple[int, IntervalPartition]:
    """Minimum number of consecutive intervals with no edge inside one of them.

    Left-to-right sweep: an interval is extended until the next vertex has a
    neighbour inside it. The empty graph on zero vertices gets 0.
    """
    n = g.n_vertices
    if n == 0:
        return 0, IntervalPartition(0)
    left = [0] * (n + 1)  # largest smaller neighbour of each vertex
    for u, v in g.edges:
        left[v] = max(left[v], u)
    cuts = []
    start = 1
    for v in range(2, n + 1):
        if left[v] >= start:
            cuts.append(v - 1)
            start = v
    return len(cuts) + 1, IntervalPartition(n, tuple(cuts))


# --- containment ----------------------------------------------------------------

def find_ordered_embedding(host: OrderedGraph, pattern: OrderedGraph) -> Optional[tuple[int, ...]]:
    """Return an order-preserving map ``phi`` (``phi[i-1]`` is the image of
    pattern vertex ``i``) sending every pattern edge to a host edge, or None."""
    k, n = pattern.n_vertices, host.n_vertices
    if k == 0:
        return ()
    if k > n or pattern.n_edges > host.n_edges:
        return None
    hadj = host.adjacency_masks()
    # earlier neighbours of each pattern vertex, 0-indexed
    back = [[] for _ in range(k)]
    for u, v in pattern.edges:
        back[v - 1].append(u - 1)
    phi = [0] * k

    def extend(i: int, lo: int) -> bool:
        if i == k:
            return True
        for h in range(lo, n - (k - i) + 1):
            if all((hadj[h] >> phi[p]) & 1 for p in back[i]):
                phi[i] = h
                if extend(i + 1, h + 1):
                    return True
        return False

    if extend(0, 0):
        return tuple(x + 1 for x in phi)
    return None


def contains_ordered_subgraph(host: OrderedGraph, pattern: OrderedGraph) -> bool:
    return find_ordered_embedding(host, pattern) is not None


def quotient_graph(m: OrderedGraph, embedding: Sequence[int], partition: IntervalPartition) -> OrderedGraph:
    """Graph on the intervals of ``partition`` with ``i ~ j`` whenever an edge of
    the embedded graph runs between intervals ``i != j``."""
    emb = tuple(int(x) for x in embedding)
    if len(emb) != m.n_vertices:
        raise InvalidEmbedding(f"embedding has {len(emb)} images for {m.n_vertices} vertices")
    if any(b <= a for a, b in zip(emb, emb[1:])):
        raise InvalidEmbedding("embedding is not order-preserving")
    if emb and (emb[0] < 1 or emb[-1] > partition.n):
        raise InvalidEmbedding(f"embedding leaves [1, {partition.n}]")
    lab = partition.labels()
    es = set()
    for u, v in m.edges:
        a, b = lab[emb[u - 1] - 1], lab[emb[v - 1] - 1]
        if a != b:
            es.add((min(a, b), max(a, b)))
    return OrderedGraph(partition.n_intervals, frozenset(es))
