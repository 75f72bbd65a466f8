"""The shift statistic L(pi) of a permutation.

``C`` is a shift of ``D`` in ``pi`` when, listing both in increasing order,
``pi(c_i) = pi(d_i) + delta`` for a fixed ``delta > 0``. L(pi) is the largest
common size of such a pair; ``C`` and ``D`` may overlap.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .ordered import check_permutation, inverse_permutation
from .rng import generator, random_permutation

BRUTEFORCE_MAX_N = 10
_POPCOUNT = np.array([bin(x).count("1") for x in range(1 << BRUTEFORCE_MAX_N)])


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ShiftWitness:
    delta: int
    c_indices: tuple[int, ...]
    d_indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.c_indices) != len(self.d_indices):
            raise ValueError("index sequences differ in length")

    @property
    def size(self) -> int:
        return len(self.c_indices)

    def is_valid_for(self, pi: Sequence[int]) -> bool:
        c, d = self.c_indices, self.d_indices
        increasing = all(a < b for a, b in zip(c, c[1:])) and all(a < b for a, b in zip(d, d[1:]))
        in_range = all(1 <= x <= len(pi) for x in c + d)
        return (self.delta > 0 and increasing and in_range
                and all(pi[ci - 1] == pi[di - 1] + self.delta for ci, di in zip(c, d)))


def _longest_chain(seq: list[tuple[int, int]]) -> list[int]:
    """Indices into ``seq`` of a longest subsequence whose first coordinates
    strictly increase (the second coordinates are assumed increasing already).
    Patience sorting with back-pointers."""
    tails: list[int] = []
    tail_idx: list[int] = []
    back = [-1] * len(seq)
    for k, (c, _) in enumerate(seq):
        pos = bisect_left(tails, c)
        if pos == len(tails):
            tails.append(c)
            tail_idx.append(k)
        else:
            tails[pos] = c
            tail_idx[pos] = k
        back[k] = tail_idx[pos - 1] if pos else -1
    out = []
    k = tail_idx[-1] if tail_idx else -1
    while k >= 0:
        out.append(k)
        k = back[k]
    return out[::-1]


def shift_statistic(pi: Sequence[int]) -> tuple[int, Optional[ShiftWitness]]:
    """Return ``(L(pi), witness)``; the witness is None when L = 0.

    For a fixed delta the admissible pairs are ``(pi^-1(v + delta), pi^-1(v))``.
    Walking ``d`` upwards and taking a longest increasing run of the matching
    ``c`` values gives the best shift for that delta, O(n^2 log n) overall.
    """
    pi = check_permutation(pi)
    n = len(pi)
    inv = inverse_permutation(pi)
    best, best_delta, best_seq = 0, 0, None
    for delta in range(1, n):
        if n - delta <= best:
            break
        seq = [(inv[pi[d - 1] + delta - 1], d) for d in range(1, n + 1) if pi[d - 1] + delta <= n]
        tails: list[int] = []
        for c, _ in seq:
            pos = bisect_left(tails, c)
            if pos == len(tails):
                tails.append(c)
            else:
                tails[pos] = c
        if len(tails) > best:
            best, best_delta, best_seq = len(tails), delta, seq
    if best == 0:
        return 0, None
    chain = _longest_chain(best_seq)
    return best, ShiftWitness(best_delta,
                              tuple(best_seq[k][0] for k in chain),
                              tuple(best_seq[k][1] for k in chain))


def shift_statistic_bruteforce(pi: Sequence[int]) -> int:
    """Exhaustive maximum over every delta and every subset of admissible pairs."""
    pi = check_permutation(pi)
    n = len(pi)
    if n > BRUTEFORCE_MAX_N:
        raise TooLarge(f"brute force is limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    inv = inverse_permutation(pi)
    best = 0
    for delta in range(1, n):
        pairs = [(inv[v + delta - 1], inv[v - 1]) for v in range(1, n - delta + 1)]
        m = len(pairs)
        masks = np.arange(1 << m, dtype=np.int64)
        ok = np.ones(1 << m, dtype=bool)
        # a subset is a valid shift iff no two chosen pairs are ordered differently
        for a in range(m):
            for b in range(a + 1, m):
                (ca, da), (cb, db) = pairs[a], pairs[b]
                if (ca < cb) != (da < db):
                    bad = (1 << a) | (1 << b)
                    ok &= (masks & bad) != bad
        best = max(best, int(_POPCOUNT[: 1 << m][ok].max()))
    return best


def reverse_complement(pi: Sequence[int]) -> tuple[int, ...]:
    n = len(pi)
    return tuple(n + 1 - pi[n - i] for i in range(1, n + 1))


@dataclass
class LDistribution:
    n: int
    samples: int
    seed: Optional[int]
    threshold: float
    histogram: dict[int, int] = field(default_factory=dict)
    values: list[int] = field(default_factory=list, repr=False)

    @property
    def exceedances(self) -> int:
        return sum(c for v, c in self.histogram.items() if v > self.threshold)

    @property
    def exceedance_rate(self) -> float:
        return self.exceedances / self.samples if self.samples else 0.0

    @property
    def max(self) -> int:
        return max(self.histogram) if self.histogram else 0

    @property
    def mean(self) -> float:
        return sum(v * c for v, c in self.histogram.items()) / self.samples if self.samples else 0.0

    def summary(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "max": self.max,
            "mean": round(self.mean, 6),
            "exceedance_rate": self.exceedance_rate,
            "threshold": self.threshold,
        }

    def histogram_rows(self) -> list[tuple[int, int]]:
        return sorted(self.histogram.items())


def _sample_L(args: tuple[int, int, int]) -> int:
    n, seed, trial = args
    return shift_statistic(random_permutation(n, generator(seed, trial)))[0]


def sample_L_distribution(n: int, samples: int = 1000, seed: int = 0, *, enumerate_all: bool = False,
                          threshold: Optional[float] = None, workers: int = 1) -> LDistribution:
    """Empirical (or, with ``enumerate_all``, exact) distribution of L over
    uniform permutations of ``[n]``. Trial ``k`` uses the stream ``(seed, k)``."""
    if n < 1:
        raise ValueError("n must be positive")
    threshold = 3 * math.sqrt(n) if threshold is None else threshold
    if enumerate_all:
        values = [shift_statistic(p)[0] for p in permutations(range(1, n + 1))]
        return LDistribution(n, len(values), None, threshold, dict(Counter(values)), values)
    if samples < 1:
        raise ValueError("samples must be positive")
    jobs = [(n, seed, k) for k in range(samples)]
    if workers > 1:
        from multiprocessing import Pool
        with Pool(workers) as pool:
            values = pool.map(_sample_L, jobs, chunksize=max(1, samples // (4 * workers)))
    else:
        values = [_sample_L(j) for j in jobs]
    return LDistribution(n, samples, seed, threshold, dict(Counter(values)), values)
