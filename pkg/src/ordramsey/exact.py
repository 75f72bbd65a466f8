"""Exact ordered Ramsey numbers by exhaustive search over 2-colorings.

``arrows(N, G, H)`` decides whether every red/blue coloring of the complete
ordered graph on ``[N]`` has a red copy of ``G`` or a blue copy of ``H``.
Three engines are available:

* ``"dfs"``: edge-by-edge backtracking, red branch first. Edges are coloured
  vertex by vertex (``(1,v), (2,v), ..., (v-1,v)``) so every new copy of a
  pattern must use the newest vertex as the image of its last vertex, which
  keeps the containment monitors incremental.
* ``triangle_free_blue_search``: specialisation for ``H = K_3``; each new
  vertex receives a blue neighbourhood that is independent in the blue graph.
* ``"sat"``: CNF encoding solved with CaDiCaL through ``python-sat``; one
  clause per order-preserving placement of each pattern. Used for the larger
  instances the pure-Python searches cannot finish.

Ordered complete graphs have no non-trivial automorphisms, so no symmetry
breaking is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Union

from .coloring import BLUE, RED, EdgeColoring, edge_index
from .ordered import OrderedGraph, contains_ordered_subgraph

DEFAULT_BUDGET = 10 ** 9


class BudgetExceeded(RuntimeError):
    def __init__(self, N: int, nodes: int):
        super().__init__(f"node budget exhausted at N={N} after {nodes} nodes")
        self.N = N
        self.nodes = nodes


@dataclass
class ArrowingResult:
    N: int
    arrows: bool
    certificate: Optional[EdgeColoring] = None
    nodes_explored: int = 0
    engine: str = "dfs"

    def to_dict(self) -> dict:
        return {"N": self.N, "arrows": self.arrows, "nodes_explored": self.nodes_explored,
                "engine": self.engine,
                "certificate": self.certificate.to_text() if self.certificate else None}


@dataclass(frozen=True)
class Unknown:
    n_max: int

    def __str__(self):
        return f"unknown(>{self.n_max})"


class _Pattern:
    """Pattern graph prepared for 'copy with last vertex at v' queries."""

    def __init__(self, g: OrderedGraph):
        self.k = g.n_vertices
        self.edgeless = g.n_edges == 0
        self.back = [[] for _ in range(self.k)]  # earlier neighbours, 0-indexed
        for u, v in g.edges:
            self.back[v - 1].append(u - 1)

    def copy_ending_at(self, adj: list[int], v: int) -> bool:
        """Is there a copy in graph ``adj`` (0-indexed bitmasks) whose last
        vertex maps to ``v`` and the rest into ``[0, v)``?"""
        k = self.k
        if k == 0 or v < k - 1:
            return False
        last = k - 1
        phi = [0] * k
        phi[last] = v
        back = self.back
        need_v = [False] * k
        for p in back[last]:
            need_v[p] = True
        vmask = adj[v]

        def extend(i: int, lo: int) -> bool:
            if i == last:
                return True
            for h in range(lo, v - (last - i) + 1):
                if need_v[i] and not (vmask >> h) & 1:
                    continue
                ah = adj[h]
                for p in back[i]:
                    if not (ah >> phi[p]) & 1:
                        break
                else:
                    phi[i] = h
                    if extend(i + 1, h + 1):
                        return True
            return False

        return extend(0, 0)


def _trivially_arrows(N: int, G: OrderedGraph, H: OrderedGraph) -> bool:
    """An edgeless pattern on at most N vertices is present in every coloring."""
    return any(p.n_edges == 0 and p.n_vertices <= N for p in (G, H))


def _verify_certificate(chi: EdgeColoring, G: OrderedGraph, H: OrderedGraph) -> None:
    if contains_ordered_subgraph(chi.red_graph(), G) or contains_ordered_subgraph(chi.blue_graph(), H):
        raise AssertionError("search returned a coloring that contains a forbidden copy")


def _arrows_dfs(N: int, G: OrderedGraph, H: OrderedGraph, budget: int) -> ArrowingResult:
    pats = {RED: _Pattern(G), BLUE: _Pattern(H)}
    order = [(u, v) for v in range(1, N) for u in range(v)]  # 0-indexed, vertex by vertex
    adj = {RED: [0] * N, BLUE: [0] * N}
    colors = [0] * len(order)
    nodes = 0

    def rec(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        u, v = order[pos]
        for c in (RED, BLUE):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(N, nodes)
            a = adj[c]
            a[u] |= 1 << v
            a[v] |= 1 << u
            bad = pats[c].copy_ending_at(a, v)
            if not bad and u == 0:
                # first edge at v: copies whose last vertex is isolated appear now
                o = BLUE if c == RED else RED
                bad = pats[o].copy_ending_at(adj[o], v)
            if not bad:
                colors[pos] = c
                if rec(pos + 1):
                    return True
            a[u] &= ~(1 << v)
            a[v] &= ~(1 << u)
        return False

    if _trivially_arrows(N, G, H):
        return ArrowingResult(N, True, None, 0, "dfs")
    if rec(0):
        chi = EdgeColoring.from_blue_edges(N, [(u + 1, v + 1) for (u, v), c in zip(order, colors) if c == BLUE])
        _verify_certificate(chi, G, H)
        return ArrowingResult(N, False, chi, nodes, "dfs")
    return ArrowingResult(N, True, None, nodes, "dfs")


def _arrows_sat(N: int, G: OrderedGraph, H: OrderedGraph) -> ArrowingResult:
    from pysat.solvers import Cadical153

    if _trivially_arrows(N, G, H):
        return ArrowingResult(N, True, None, 0, "sat")
    var = lambda u, v: edge_index(u, v, N) + 1  # true = blue
    with Cadical153() as s:
        for pat, sign in ((G, 1), (H, -1)):
            k = pat.n_vertices
            if k > N:
                continue
            es = pat.edge_list()
            for place in combinations(range(1, N + 1), k):
                # forbid a monochromatic copy: some image edge takes the other color
                s.add_clause([sign * var(place[a - 1], place[b - 1]) for a, b in es])
        sat = s.solve()
        stats = s.accum_stats() or {}
        nodes = int(stats.get("decisions", 0))
        if not sat:
            return ArrowingResult(N, True, None, nodes, "sat")
        model = s.get_model()
    bits = 0
    for lit in model:
        if lit > 0 and lit <= N * (N - 1) // 2:
            bits |= 1 << (lit - 1)
    chi = EdgeColoring(N, bits)
    _verify_certificate(chi, G, H)
    return ArrowingResult(N, False, chi, nodes, "sat")


def arrows(N: int, G: OrderedGraph, H: OrderedGraph, *, budget: int = DEFAULT_BUDGET,
           engine: str = "dfs") -> ArrowingResult:
    """Does every coloring of ``K_N`` contain a red ``G`` or a blue ``H``?

    A ``False`` answer carries a certificate coloring, re-checked against both
    patterns with :func:`contains_ordered_subgraph` before it is returned.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if engine == "dfs":
        return _arrows_dfs(N, G, H, budget)
    if engine == "sat":
        return _arrows_sat(N, G, H)
    if engine == "triangle":
        if H != OrderedGraph.complete(3):
            raise ValueError("the triangle engine needs H = K_3")
        return triangle_free_blue_search(N, G, budget=budget)
    raise ValueError(f"unknown engine {engine!r}")


def triangle_free_blue_search(N: int, G: OrderedGraph, *, budget: int = DEFAULT_BUDGET) -> ArrowingResult:
    """``arrows(N, G, K_3)`` by growing triangle-free blue graphs vertex by vertex.

    A vertex of blue degree ``|V(G)|`` would have a red-complete neighbourhood
    (no blue triangle), hence a red ``G``; such extensions are cut early.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if _trivially_arrows(N, G, OrderedGraph.complete(3)):
        return ArrowingResult(N, True, None, 0, "triangle")
    pat = _Pattern(G)
    cap = max(G.n_vertices - 1, 0)
    blue = [0] * N
    red = [0] * N
    deg = [0] * N
    nodes = 0

    def place(v: int) -> bool:
        if v == N:
            return True
        cands = [u for u in range(v) if deg[u] < cap]

        def choose(idx: int, S: int, forbidden: int, size: int) -> bool:
            nonlocal nodes
            if idx == len(cands):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(N, nodes)
                rmask = ((1 << v) - 1) & ~S
                blue[v], red[v] = S, rmask
                for u in range(v):
                    if (S >> u) & 1:
                        blue[u] |= 1 << v
                        deg[u] += 1
                    else:
                        red[u] |= 1 << v
                deg[v] = size
                if not pat.copy_ending_at(red, v) and place(v + 1):
                    return True
                for u in range(v):
                    if (S >> u) & 1:
                        blue[u] &= ~(1 << v)
                        deg[u] -= 1
                    else:
                        red[u] &= ~(1 << v)
                blue[v] = red[v] = deg[v] = 0
                return False
            u = cands[idx]
            if choose(idx + 1, S, forbidden, size):  # u red to v
                return True
            if size < cap and not (forbidden >> u) & 1:  # u blue to v
                return choose(idx + 1, S | (1 << u), forbidden | blue[u], size + 1)
            return False

        return choose(0, 0, 0, 0)

    if place(0):
        chi = EdgeColoring.from_blue_masks(blue)
        _verify_certificate(chi, G, OrderedGraph.complete(3))
        return ArrowingResult(N, False, chi, nodes, "triangle")
    return ArrowingResult(N, True, None, nodes, "triangle")


@dataclass
class RamseySearch:
    value: Union[int, Unknown]
    steps: list[ArrowingResult] = field(default_factory=list)

    @property
    def lower_certificate(self) -> Optional[EdgeColoring]:
        """Good coloring on ``r - 1`` vertices, when one was found."""
        goods = [s for s in self.steps if not s.arrows]
        return goods[-1].certificate if goods else None


def ordered_ramsey(G: OrderedGraph, H: OrderedGraph, n_max: int, *, budget: int = DEFAULT_BUDGET,
                   engine: str = "dfs", n_min: int = 1) -> RamseySearch:
    """Smallest ``N <= n_max`` with ``arrows(N, G, H)``, or ``Unknown(n_max)``.

    ``N`` increases from ``n_min``; arrowing is monotone in ``N`` (restrict a
    coloring of ``[N+1]`` to ``[N]``) so the first hit is the Ramsey number.
    A caller-supplied ``n_min`` must be a proven lower bound.
    """
    steps = []
    for N in range(max(n_min, 1), n_max + 1):
        res = arrows(N, G, H, budget=budget, engine=engine)
        steps.append(res)
        if res.arrows:
            return RamseySearch(N, steps)
    return RamseySearch(Unknown(n_max), steps)
