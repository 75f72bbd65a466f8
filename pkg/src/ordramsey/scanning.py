"""Multi-thread scanning for red copies of a bipartite matching in a color matrix.

Thread ``t`` walks rows ``pi(1)+t, pi(2)+t, ...``; in each row it scans right
from the column after the previous hit until it meets a red cell. The blue
cells a thread passes over form one contiguous segment per row.

Rows and columns are 1-based throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence, Union

from .coloring import EdgeColoring
from .ordered import (OrderedGraph, OrderedMatching, find_ordered_embedding,
                      permutation_from_matching, check_permutation)
from .shifts import shift_statistic


class ScanError(ValueError):
    pass


class RowOverflow(ScanError):
    pass


class ThreadSucceeded(ScanError):
    pass


class PreconditionUnmet(ScanError):
    pass


@dataclass(frozen=True)
class ColorMatrix:
    """Square grid of ``'R'``/``'B'`` cells, one string per row."""

    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("color matrix must be square")
        if any(set(r) - {"R", "B"} for r in rows):
            raise ValueError("cells must be 'R' or 'B'")
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return len(self.rows)

    def cell(self, i: int, j: int) -> str:
        return self.rows[i - 1][j - 1]

    def is_red(self, i: int, j: int) -> bool:
        return self.rows[i - 1][j - 1] == "R"

    @classmethod
    def filled(cls, n: int, color: str) -> "ColorMatrix":
        return cls(tuple(color * n for _ in range(n)))

    @classmethod
    def from_red_cells(cls, n: int, red: set[tuple[int, int]]) -> "ColorMatrix":
        return cls(tuple("".join("R" if (i, j) in red else "B" for j in range(1, n + 1))
                         for i in range(1, n + 1)))

    def to_text(self) -> str:
        return "\n".join(self.rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColorMatrix":
        return cls(tuple(ln.strip() for ln in text.strip().splitlines() if ln.strip()))

    def transpose(self) -> "ColorMatrix":
        return ColorMatrix(tuple("".join(col) for col in zip(*self.rows)))


def color_matrix_from_coloring(chi: EdgeColoring) -> ColorMatrix:
    """Cell ``(i, j)`` holds the color of edge ``{i, N + j}`` of ``K_{2N}``."""
    if chi.n % 2:
        raise ValueError("coloring must be on an even number of vertices")
    n = chi.n // 2
    masks = chi.blue_masks()
    return ColorMatrix(tuple("".join("B" if (masks[i] >> (n + j)) & 1 else "R" for j in range(n))
                             for i in range(n)))


@dataclass(frozen=True)
class Segment:
    row: int
    col_start: int
    col_end: int
    thread: int

    def __len__(self):
        return self.col_end - self.col_start + 1

    def intersects(self, other: "Segment") -> bool:
        return (self.row == other.row and self.col_start <= other.col_end
                and other.col_start <= self.col_end)


@dataclass
class ThreadOutcome:
    thread: int
    success: bool
    rows: list[int] = field(default_factory=list)       # rows visited, in scan order
    columns: list[int] = field(default_factory=list)    # red hits j_1 < j_2 < ...
    segments: list[Segment] = field(default_factory=list)

    @property
    def revealed_blue(self) -> int:
        return sum(len(s) for s in self.segments)

    def to_dict(self) -> dict:
        d = {"thread": self.thread, "success": self.success,
             "segments": [[s.row, s.col_start, s.col_end] for s in self.segments],
             "revealed_blue": self.revealed_blue}
        if self.success:
            d["embedding"] = [[r, c] for r, c in zip(self.rows, self.columns)]
        return d


@dataclass
class ScanTrace:
    N: int
    pi: tuple[int, ...]
    threads: list[ThreadOutcome]

    @property
    def succeeded(self) -> list[int]:
        return [o.thread for o in self.threads if o.success]

    def outcome(self, t: int) -> ThreadOutcome:
        return self.threads[t]

    def to_dict(self) -> dict:
        return {"N": self.N, "pi": list(self.pi), "threads": [o.to_dict() for o in self.threads]}


def _scan_thread(a: ColorMatrix, pi: Sequence[int], t: int) -> ThreadOutcome:
    n_cols = a.N
    out = ThreadOutcome(thread=t, success=False)
    prev = 0
    for v in pi:
        r = v + t
        row = a.rows[r - 1]
        hit = row.find("R", prev)  # 0-based index of first red at column >= prev + 1
        out.rows.append(r)
        end = (hit if hit >= 0 else n_cols)  # last blue column, 1-based
        if end >= prev + 1:
            out.segments.append(Segment(r, prev + 1, end, t))
        if hit < 0:
            return out
        out.columns.append(hit + 1)
        prev = hit + 1
    out.success = True
    return out


def multi_thread_scan(a: ColorMatrix, pi: Sequence[int], T: int) -> ScanTrace:
    """Run threads ``t = 0..T-1``. Each thread is scanned on its own: cells seen
    by earlier threads are read again. A thread stops at the first row with
    no red cell to the right of the previous hit."""
    pi = check_permutation(pi)
    if T < 1:
        raise ValueError("need at least one thread")
    if len(pi) + T - 1 > a.N:
        raise RowOverflow(f"threads need rows up to {len(pi) + T - 1} but N = {a.N}")
    return ScanTrace(a.N, pi, [_scan_thread(a, pi, t) for t in range(T)])


def red_copy_in_rows(a: ColorMatrix, pi: Sequence[int], t: int) -> bool:
    """Do columns ``j_1 < ... < j_n`` exist with cell ``(pi(i)+t, j_i)`` red?

    Exhaustive over column tuples for small cases, otherwise a memoised search
    over (step, last column) that tries every column rather than the leftmost.
    """
    pi = check_permutation(pi)
    n, N = len(pi), a.N
    if t < 0 or t + n > N:
        raise RowOverflow(f"rows {t + 1}..{t + n} not inside [1, {N}]")
    rows = [a.rows[v + t - 1] for v in pi]
    if math.comb(N, n) <= 20000:
        return any(all(rows[i][c] == "R" for i, c in enumerate(cols))
                   for cols in combinations(range(N), n))

    @lru_cache(maxsize=None)
    def ok(i: int, last: int) -> bool:
        if i == n:
            return True
        return any(rows[i][c] == "R" and ok(i + 1, c) for c in range(last + 1, N - (n - i) + 1))

    return ok(0, -1)


def cross_thread_intersections(trace: ScanTrace, t: int, t2: int) -> int:
    """Number of segments of thread ``t`` that meet some segment of thread ``t2``."""
    if t == t2:
        raise ValueError("threads must be distinct")
    a, b = trace.outcome(t), trace.outcome(t2)
    for o in (a, b):
        if o.success:
            raise ThreadSucceeded(f"thread {o.thread} succeeded; its segments are not a failure record")
    by_row = {s.row: s for s in b.segments}
    return sum(1 for s in a.segments if s.row in by_row and s.intersects(by_row[s.row]))


def _ceil_sqrt_fraction(x: Fraction) -> int:
    """Smallest integer s >= 0 with s*s >= x."""
    p, q = x.numerator, x.denominator
    s = math.isqrt(p // q)
    while s * s * q < p:
        s += 1
    while s > 0 and (s - 1) ** 2 * q >= p:
        s -= 1
    return s


def theorem5_bound(n: int, ell: Union[int, Fraction, str]) -> int:
    """``ceil(4n (sqrt(n ell) + 1))``, exact for rational ``ell``."""
    ell = Fraction(ell)
    if n < 1 or ell < 1:
        raise ValueError("n and ell must be at least 1")
    # 4n sqrt(n ell) = sqrt(16 n^3 ell)
    return 4 * n + _ceil_sqrt_fraction(16 * n ** 3 * ell)


def theorem4_bound(n: int) -> int:
    """``ceil(4n (sqrt(3 n^{3/2}) + 1))``, i.e. the bound above at ``ell = 3 sqrt(n)``.

    ``4n sqrt(3 n^{3/2})`` is the fourth root of ``2304 n^7``, so the ceiling is
    computed in integers.
    """
    if n < 1:
        raise ValueError("n must be positive")
    x = 2304 * n ** 7
    s = math.isqrt(math.isqrt(x))
    while s ** 4 < x:
        s += 1
    while s > 0 and (s - 1) ** 4 >= x:
        s -= 1
    return 4 * n + s


def default_thread_count(n: int, ell: Union[int, Fraction]) -> int:
    """``ceil(sqrt(n / ell))``."""
    return max(1, _ceil_sqrt_fraction(Fraction(n) / Fraction(ell)))


class Verdict(str, Enum):
    BLUE_TRIANGLE = "BlueTriangle"
    RED_CLIQUE = "RedClique2n"
    RED_MATCHING = "RedMatchingCopy"
    COUNTEREXAMPLE = "BoundViolatedCounterexample"


@dataclass
class CertificateResult:
    verdict: Verdict
    witness: Optional[tuple] = None
    method: Optional[str] = None
    preconditions_met: bool = True
    notes: list[str] = field(default_factory=list)
    coloring: Optional[EdgeColoring] = None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict.value, "witness": list(self.witness) if self.witness else None,
             "method": self.method, "preconditions_met": self.preconditions_met, "notes": self.notes}
        if self.coloring is not None:
            d["coloring"] = self.coloring.to_text()
        return d


def find_blue_triangle(chi: EdgeColoring) -> Optional[tuple[int, int, int]]:
    b = chi.blue_masks()
    for u in range(chi.n):
        m = b[u] >> (u + 1)
        while m:
            low = m & -m
            v = u + low.bit_length()
            common = b[u] & b[v] & ~((1 << (v + 1)) - 1)
            if common:
                w = (common & -common).bit_length() - 1
                return u + 1, v + 1, w + 1
            m ^= low
    return None


def find_red_clique_in_blue_neighbourhood(chi: EdgeColoring, size: int) -> Optional[tuple[int, ...]]:
    """A red ``K_size`` inside the blue neighbourhood of some vertex."""
    b = chi.blue_masks()
    red = chi.red_graph()
    for v in range(chi.n):
        if bin(b[v]).count("1") < size:
            continue
        nb = [u + 1 for u in range(chi.n) if (b[v] >> u) & 1]
        emb = find_ordered_embedding(red.induced(nb), OrderedGraph.complete(size))
        if emb is not None:
            return tuple(nb[i - 1] for i in emb)
    return None


def scan_certificate_check(chi: EdgeColoring, m: OrderedMatching, n: Optional[int] = None,
                           ell: Optional[Union[int, Fraction]] = None, *, T: Optional[int] = None,
                           strict: bool = False) -> CertificateResult:
    """Decide which of the three outcomes a coloring of ``K_{2N}`` realises.

    Checked in order: a blue triangle; a red ``K_{2n}`` inside a blue
    neighbourhood; a red copy of ``m`` between ``[N]`` and ``{N+1..2N}``
    (threads first, then every row offset, then an exhaustive search). If all
    three fail the coloring is returned as a counterexample.

    The scan runs on the transposed matrix so a thread success is a copy of
    ``m`` itself: rows index the right half, columns the left half.
    """
    pi = permutation_from_matching(m)
    n = len(pi) if n is None else n
    if n != len(pi):
        raise ValueError(f"matching has {len(pi)} edges, not {n}")
    L = shift_statistic(pi)[0]
    ell = Fraction(max(L, 1) if ell is None else ell)
    N = chi.n // 2
    notes = []
    if chi.n % 2:
        raise ValueError("coloring must be on an even number of vertices")
    bound = theorem5_bound(n, ell)
    met = N >= bound and L <= ell
    if not met:
        notes.append(f"preconditions unmet: N={N}, bound={bound}, L={L}, ell={ell}")
        if strict:
            raise PreconditionUnmet(notes[-1])

    tri = find_blue_triangle(chi)
    if tri:
        return CertificateResult(Verdict.BLUE_TRIANGLE, tri, "triple-scan", met, notes)
    clique = find_red_clique_in_blue_neighbourhood(chi, 2 * n)
    if clique:
        return CertificateResult(Verdict.RED_CLIQUE, clique, "blue-neighbourhood", met, notes)

    if n <= N:
        a = color_matrix_from_coloring(chi).transpose()
        T = default_thread_count(n, ell) if T is None else T
        T = min(T, N - n + 1)
        trace = multi_thread_scan(a, pi, T)
        for o in trace.threads:
            if o.success:
                return CertificateResult(Verdict.RED_MATCHING, _copy_edges(o, N), "threads", met, notes)
        for t in range(T, N - n + 1):
            o = _scan_thread(a, pi, t)
            if o.success:
                return CertificateResult(Verdict.RED_MATCHING, _copy_edges(o, N), "offset", met, notes)
        # non-consecutive rows: search the red bipartite graph between the halves
        red = chi.red_masks()
        cross = OrderedGraph(2 * N, frozenset((u + 1, w + 1) for u in range(N)
                                              for w in range(N, 2 * N) if (red[u] >> w) & 1))
        emb = find_ordered_embedding(cross, m)
        if emb is not None:
            edges = tuple(sorted((emb[u - 1], emb[v - 1]) for u, v in m.edges))
            return CertificateResult(Verdict.RED_MATCHING, edges, "exhaustive", met, notes)
    return CertificateResult(Verdict.COUNTEREXAMPLE, None, None, met, notes, coloring=chi)


def _copy_edges(o: ThreadOutcome, N: int) -> tuple:
    # transposed matrix: row r is right vertex N + r, column c is left vertex c
    return tuple(sorted((c, N + r) for r, c in zip(o.rows, o.columns)))
