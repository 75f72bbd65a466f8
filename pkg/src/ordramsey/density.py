"""Edge density of random perfect-bipartite matchings between intervals.

Two properties of a matching on ``[2n]`` whose edges all cross the midpoint:

1. any ``I`` in ``[n]`` and ``J`` in ``{n+1..2n}`` of length ``>= L`` share an
   edge, where ``L = ceil(2 sqrt(n lg n))``;
2. for every ``s >= L``, two disjoint intervals of lengths ``<= L`` and ``s``
   share at most ``floor(12 s sqrt(lg n / n))`` edges.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .ordered import check_permutation
from .rng import generator, random_permutation
from .windows import prefix_sums, window_pair_counts

Interval = tuple[int, int]


def matching_adjacency(pi: Sequence[int]) -> np.ndarray:
    """Adjacency of the matching ``{i, n + pi(i)}`` on ``[2n]`` (0-indexed)."""
    n = len(pi)
    a = np.zeros((2 * n, 2 * n), dtype=np.int32)
    rows = np.arange(n)
    cols = n + np.asarray(pi, dtype=np.int64) - 1
    a[rows, cols] = 1
    a[cols, rows] = 1
    return a


def _prep(m) -> tuple[int, np.ndarray]:
    """Accept a permutation or a perfect-bipartite ``OrderedMatching``."""
    if hasattr(m, "edges"):
        from .ordered import permutation_from_matching
        m = permutation_from_matching(m)
    pi = check_permutation(m)
    return len(pi), prefix_sums(matching_adjacency(pi))


def _rect(s: np.ndarray, r: Interval, c: Interval) -> int:
    return int(s[r[1], c[1]] - s[r[0] - 1, c[1]] - s[r[1], c[0] - 1] + s[r[0] - 1, c[0] - 1])


def min_cross_edges(m, L: int, *, _s: Optional[np.ndarray] = None) -> tuple[int, tuple[Interval, Interval]]:
    """Fewest edges between ``I`` in the left half and ``J`` in the right half,
    both of length ``>= L``. Windows of length exactly ``L`` suffice since
    growing an interval never removes an edge."""
    n, s = _prep(m) if _s is None else ((_s.shape[0] - 1) // 2, _s)
    if not 1 <= L <= n:
        raise ValueError(f"need 1 <= L <= n, got L={L}, n={n}")
    c = window_pair_counts(s, (1, n), (n + 1, 2 * n), L, L)
    a, b = np.unravel_index(int(np.argmin(c)), c.shape)
    return int(c[a, b]), ((1 + int(a), int(a) + L), (n + 1 + int(b), n + int(b) + L))


def _small_edges_upper(s: np.ndarray, N2: int, lenC: int, size: int) -> int:
    """Max of ``e(C, D)`` over windows ``|C| = lenC``, ``|D| = size``, overlap allowed.

    Bounds the disjoint maximum from above and is non-decreasing in ``size``.
    """
    return int(window_pair_counts(s, (1, N2), (1, N2), min(lenC, N2), size).max())


def _max_small_exact(s: np.ndarray, N2: int, lenC: int, size: int) -> tuple[int, Optional[tuple[Interval, Interval]]]:
    best, wit = -1, None
    lc = min(lenC, N2)
    c = window_pair_counts(s, (1, N2), (1, N2), lc, size)
    if c.size:
        cs = np.arange(1, N2 - lc + 2)[:, None]
        ds = np.arange(1, N2 - size + 2)[None, :]
        disjoint = (cs + lc - 1 < ds) | (cs > ds + size - 1)
        masked = np.where(disjoint, c, -1)
        i, j = (int(x) for x in np.unravel_index(int(np.argmax(masked)), masked.shape))
        if masked[i, j] >= 0:
            best = int(masked[i, j])
            wit = ((i + 1, i + lc), (j + 1, j + size))
    # gaps shorter than lenC: the whole gap is the best C on that side
    for d in range(1, N2 - size + 2):
        D = (d, d + size - 1)
        for C in ((1, d - 1), (d + size, N2)):
            ln = C[1] - C[0] + 1
            if 1 <= ln < lc:
                v = _rect(s, C, D)
                if v > best:
                    best, wit = v, (C, D)
    return max(best, 0), wit


def max_small_interval_edges(m, lenC: int, s: int) -> tuple[int, Optional[tuple[Interval, Interval]]]:
    """Most edges between disjoint intervals ``C``, ``D`` of ``[2n]`` with
    ``|C| <= lenC`` and ``|D| = s``; witness is ``(C, D)`` or None if no
    disjoint pair exists."""
    n, ps = _prep(m)
    if not (1 <= lenC and 1 <= s <= 2 * n):
        raise ValueError("need lenC >= 1 and 1 <= s <= 2n")
    if s >= 2 * n:
        return 0, None
    return _max_small_exact(ps, 2 * n, lenC, s)


def edges_between(m, C: Interval, D: Interval) -> int:
    """Direct count, used to re-verify witnesses."""
    pi = check_permutation(m) if not hasattr(m, "edges") else None
    edges = m.edges if pi is None else [(i, len(pi) + pi[i - 1]) for i in range(1, len(pi) + 1)]
    inC = lambda x: C[0] <= x <= C[1]
    inD = lambda x: D[0] <= x <= D[1]
    return sum(1 for u, v in edges if (inC(u) and inD(v)) or (inD(u) and inC(v)))


@dataclass(frozen=True)
class DensityThresholds:
    n: int
    log_base: float = 2

    @property
    def lg(self) -> float:
        return math.log(self.n) / math.log(self.log_base)

    @property
    def length(self) -> int:
        """``ceil(2 sqrt(n lg n))``: interval length for property 1, cap on ``|C|`` for property 2."""
        return math.ceil(2 * math.sqrt(self.n * self.lg))

    def cap_exact(self, s: int) -> float:
        return 12 * s * math.sqrt(self.lg / self.n)

    def cap(self, s: int) -> int:
        return math.floor(self.cap_exact(s))

    def s_range(self) -> range:
        """Sizes ``s`` where property 2 is not automatic (``e(C, D) <= |C|``)."""
        lo, hi = self.length, 2 * self.n - 1
        s = lo
        while s <= hi and self.cap(s) < self.length:
            s += 1
        return range(lo, s)


@dataclass
class SampleRow:
    sample_id: int
    prop1_ok: bool
    prop2_ok: bool
    prop1_min_edges: Optional[int]
    prop2_edges_at_s0: Optional[int]
    prop1_witness: Optional[tuple] = None
    prop2_witness: Optional[tuple] = None  # (C, D, count, cap) of a violation or the s0 maximum

    def csv_row(self) -> list:
        fmt = lambda v: "" if v is None else v
        return [self.sample_id, int(self.prop1_ok), int(self.prop2_ok),
                fmt(self.prop1_min_edges), fmt(self.prop2_edges_at_s0)]


CSV_HEADER = ["sample_id", "prop1_ok", "prop2_ok", "prop1_min_edges", "prop2_edges_at_s0"]


def evaluate_permutation(pi: Sequence[int], th: DensityThresholds, sample_id: int = 0) -> SampleRow:
    n = len(pi)
    ps = prefix_sums(matching_adjacency(pi))
    L = th.length
    if L <= n:
        mn, w1 = min_cross_edges(None, L, _s=ps)
        ok1 = mn >= 1
    else:
        mn, w1, ok1 = None, None, True
    rng = th.s_range()
    ok2, at_s0, w2 = True, None, None
    if len(rng):
        N2 = 2 * n
        at_s0, wit = _max_small_exact(ps, N2, L, rng[0])
        w2 = wit and (wit[0], wit[1], at_s0, th.cap(rng[0]))
        # certify blocks [a, b] via the monotone upper bound; bisect when it is too weak
        stack = [(rng[0], rng[-1])]
        while stack and ok2:
            a, b = stack.pop()
            if _small_edges_upper(ps, N2, L, b) <= th.cap(a):
                continue
            if a == b:
                v, wit = _max_small_exact(ps, N2, L, a)
                if v > th.cap(a):
                    ok2, w2 = False, (wit[0], wit[1], v, th.cap(a))
                continue
            mid = (a + b) // 2
            stack.extend([(mid + 1, b), (a, mid)])
    return SampleRow(sample_id, ok1, ok2, mn, at_s0, w1, w2)


@dataclass
class DensityReport:
    n: int
    samples: int
    seed: Optional[int]
    log_base: float
    length_threshold: int
    s_checked: list
    prop1_fail_rate: float
    prop2_fail_rate: float
    worst_prop1: Optional[dict] = None
    worst_prop2: Optional[dict] = None
    rows: list = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        d = asdict(self)
        d.pop("rows")
        return d


def _worst(rows: list[SampleRow]) -> tuple[Optional[dict], Optional[dict]]:
    r1 = [r for r in rows if r.prop1_min_edges is not None]
    w1 = None
    if r1:
        r = min(r1, key=lambda r: (r.prop1_min_edges, r.sample_id))
        w1 = {"sample_id": r.sample_id, "edges": r.prop1_min_edges, "I": list(r.prop1_witness[0]),
              "J": list(r.prop1_witness[1])}
    r2 = [r for r in rows if r.prop2_witness]
    w2 = None
    if r2:
        r = max(r2, key=lambda r: (r.prop2_witness[2] / max(r.prop2_witness[3], 1), -r.sample_id))
        C, D, cnt, cap = r.prop2_witness
        w2 = {"sample_id": r.sample_id, "edges": cnt, "cap": cap, "C": list(C), "D": list(D)}
    return w1, w2


def _job(args):
    n, seed, k, base = args
    return evaluate_permutation(random_permutation(n, generator(seed, k)), DensityThresholds(n, base), k)


def run_density_experiment(n: int, samples: int = 200, seed: int = 0, *, log_base: float = 2,
                           enumerate_all: bool = False, workers: int = 1) -> DensityReport:
    """Failure rates of both properties over seeded uniform permutations
    (sample ``k`` uses stream ``(seed, k)``) or over all of ``S_n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    th = DensityThresholds(n, log_base)
    if enumerate_all:
        rows = [evaluate_permutation(p, th, k) for k, p in enumerate(permutations(range(1, n + 1)))]
        seed = None
    else:
        jobs = [(n, seed, k, log_base) for k in range(samples)]
        if workers > 1:
            from multiprocessing import Pool
            with Pool(workers) as pool:
                rows = pool.map(_job, jobs, chunksize=max(1, samples // (4 * workers)))
        else:
            rows = [_job(j) for j in jobs]
    total = len(rows)
    f1 = sum(not r.prop1_ok for r in rows) / total
    f2 = sum(not r.prop2_ok for r in rows) / total
    w1, w2 = _worst(rows)
    sr = th.s_range()
    return DensityReport(n, total, seed, log_base, th.length, [sr.start, sr.stop - 1] if len(sr) else [],
                         f1, f2, w1, w2, rows)
