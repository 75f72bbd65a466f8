from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from ordramsey.density import (DensityThresholds, edges_between, evaluate_permutation, max_small_interval_edges,
                               min_cross_edges, run_density_experiment)
from ordramsey.ordered import matching_from_permutation
from strategies import permutations_


def min_cross_bruteforce(pi, L):
    n = len(pi)
    return min(edges_between(pi, (a, b), (c, d))
               for a in range(1, n + 1) for b in range(a + L - 1, n + 1)
               for c in range(n + 1, 2 * n + 1) for d in range(c + L - 1, 2 * n + 1))


def max_small_bruteforce(pi, lenC, s):
    N2, best = 2 * len(pi), 0
    for d in range(1, N2 - s + 2):
        D = (d, d + s - 1)
        for c0 in range(1, N2 + 1):
            for c1 in range(c0, min(c0 + lenC - 1, N2) + 1):
                if c1 < D[0] or c0 > D[1]:
                    best = max(best, edges_between(pi, (c0, c1), D))
    return best


def test_examples():
    idn = tuple(range(1, 7))
    assert min_cross_edges(idn, 1) == (0, ((1, 1), (8, 8)))
    assert min_cross_edges(idn, 6)[0] == 6
    assert max_small_interval_edges(idn, 3, 3) == (3, ((1, 3), (7, 9)))
    assert max_small_interval_edges((2, 1, 3), 1, 1)[0] <= 1
    with pytest.raises(ValueError):
        min_cross_edges(idn, 7)


def test_accepts_matching_objects():
    m = matching_from_permutation((3, 1, 2))
    assert min_cross_edges(m, 2) == min_cross_edges((3, 1, 2), 2)


@settings(max_examples=80)
@given(permutations_(min_n=2, max_n=7), st.data())
def test_min_cross_matches_bruteforce(pi, data):
    n = len(pi)
    L = data.draw(st.integers(1, n))
    v, (I, J) = min_cross_edges(pi, L)
    assert v == min_cross_bruteforce(pi, L) == edges_between(pi, I, J)
    if L > 1:
        assert min_cross_edges(pi, L - 1)[0] <= v


@settings(max_examples=80)
@given(permutations_(min_n=1, max_n=6), st.data())
def test_max_small_matches_bruteforce(pi, data):
    n = len(pi)
    lenC = data.draw(st.integers(1, 2 * n))
    s = data.draw(st.integers(1, 2 * n - 1)) if n > 1 else 1
    v, w = max_small_interval_edges(pi, lenC, s)
    assert v == max_small_bruteforce(pi, lenC, s)
    if w is not None:
        C, D = w
        assert edges_between(pi, C, D) == v and D[1] - D[0] + 1 == s and C[1] - C[0] + 1 <= lenC


def test_full_intervals_give_n():
    for pi in permutations(range(1, 6)):
        assert min_cross_edges(pi, 5)[0] == 5


def test_thresholds():
    th = DensityThresholds(2000)
    assert th.length == 297
    assert th.cap(297) == 263
    r = th.s_range()
    assert r.start == 297 and th.cap(r.stop) >= th.length > th.cap(r.stop - 1)
    assert DensityThresholds(4).length == 6 and DensityThresholds(4).s_range() == range(6, 6)


def test_enumeration_small():
    rep = run_density_experiment(4, enumerate_all=True)
    assert rep.samples == 24 and rep.prop1_fail_rate == 0 and rep.prop2_fail_rate == 0


@pytest.mark.parametrize("n", [5, 6])
def test_enumeration_matches_per_permutation(n):
    for base in (2, 2.718281828459045):
        rep = run_density_experiment(n, enumerate_all=True, log_base=base)
        th = DensityThresholds(n, base)
        for row, pi in zip(rep.rows, permutations(range(1, n + 1))):
            assert row == evaluate_permutation(pi, th, row.sample_id)


def test_seeded_and_worker_independent():
    a = run_density_experiment(120, 6, seed=3)
    b = run_density_experiment(120, 6, seed=3, workers=2)
    assert a.summary() == b.summary()
    assert [r.csv_row() for r in a.rows] == [r.csv_row() for r in b.rows]


def test_violation_detection_with_low_threshold():
    # swapping two halves leaves long interval pairs with no edge at all
    n = 400
    pi = tuple(range(201, 401)) + tuple(range(1, 201))
    row = evaluate_permutation(pi, DensityThresholds(n))
    I, J = row.prop1_witness
    assert not row.prop1_ok and edges_between(pi, I, J) == 0
