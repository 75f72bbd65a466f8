"""Acceptance checks, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary. Runtime limits are asserted where stated.
"""
import math
import os
import time
from itertools import combinations, permutations

import pytest

from ordramsey.cli import main
from ordramsey.constructions import build_M_kt, verify_lemma6, verify_M_t_density, verify_superblock_pairs
from ordramsey.density import DensityThresholds, evaluate_permutation, run_density_experiment
from ordramsey.exact import arrows, ordered_ramsey, triangle_free_blue_search
from ordramsey.lll import PRESET_TUPLES, LLLParams, audit_lll_conditions, check_param_inequalities
from ordramsey.ordered import (OrderedGraph, interval_chromatic_number, matching_from_permutation,
                               permutation_from_matching)
from ordramsey.rng import generator, random_permutation
from ordramsey.scanning import (ColorMatrix, cross_thread_intersections, multi_thread_scan, red_copy_in_rows,
                                theorem4_bound, theorem5_bound)
from ordramsey.shifts import sample_L_distribution, shift_statistic, shift_statistic_bruteforce
from strategies import all_matchings

WORKERS = os.cpu_count() or 1
K3 = OrderedGraph.complete(3)
EDGE = OrderedGraph.single_edge()


def test_01_correspondence_round_trip():
    t0 = time.perf_counter()
    for n in range(1, 8):
        seen = set()
        for pi in permutations(range(1, n + 1)):
            m = matching_from_permutation(pi)
            assert m.is_perfect_bipartite and m.n_vertices == 2 * n
            assert permutation_from_matching(m) == pi
            seen.add(m.edges)
        assert len(seen) == math.factorial(n)
    assert time.perf_counter() - t0 < 5


def test_02_shift_statistic_vs_bruteforce():
    t0 = time.perf_counter()
    for n in range(1, 8):
        for pi in permutations(range(1, n + 1)):
            assert shift_statistic(pi)[0] == shift_statistic_bruteforce(pi)
    for k in range(10_000):
        rng = generator(2, k)
        pi = random_permutation(int(rng.integers(1, 11)), rng)
        assert shift_statistic(pi)[0] == shift_statistic_bruteforce(pi)
    assert time.perf_counter() - t0 < 60


def test_03_scanning_iff_exhaustive():
    perms = [p for n in (2, 3) for p in permutations(range(1, n + 1))]
    disagreements = 0
    for bits in range(1 << 16):
        a = ColorMatrix(tuple("".join("R" if bits >> (4 * i + j) & 1 else "B" for j in range(4))
                              for i in range(4)))
        for pi in perms:
            T = 4 - len(pi) + 1
            tr = multi_thread_scan(a, pi, T)
            for o in tr.threads:
                disagreements += o.success != red_copy_in_rows(a, pi, o.thread)
    assert disagreements == 0


def test_04_cross_thread_claim():
    violations = 0
    for k in range(10_000):
        rng = generator(4, k)
        n = int(rng.integers(1, 9))
        N = int(rng.integers(n, 41))
        T = int(rng.integers(1, N - n + 2))
        red = rng.random((N, N)) < float(rng.uniform(0.02, 0.6))
        a = ColorMatrix(tuple("".join("R" if x else "B" for x in row) for row in red))
        pi = random_permutation(n, rng)
        L = shift_statistic(pi)[0]
        tr = multi_thread_scan(a, pi, T)
        failed = [o.thread for o in tr.threads if not o.success]
        violations += sum(cross_thread_intersections(tr, x, y) > L for x, y in combinations(failed, 2))
    assert violations == 0


def test_05_constructions():
    t0 = time.perf_counter()
    assert all(verify_M_t_density(t) for t in range(2, 9))
    for k in (3, 4):
        for t in range(2, 7):
            rep = verify_lemma6(k, t)
            assert rep.part_a and rep.part_b, rep
    assert all(verify_superblock_pairs(k, t) for k in (3, 4) for t in range(1, 5))
    for k in (3, 4):
        for t in range(2, 7):
            assert interval_chromatic_number(build_M_kt(k, t)[0])[0] == k
    assert time.perf_counter() - t0 < 120


def test_06_exact_values():
    t0 = time.perf_counter()
    assert ordered_ramsey(EDGE, EDGE, 6).value == 2
    assert ordered_ramsey(EDGE, K3, 6).value == 3
    assert ordered_ramsey(K3, K3, 8).value == 6
    for k in range(1, 7):
        for g in all_matchings(k):
            for N in range(1, 7):
                assert triangle_free_blue_search(N, g).arrows == arrows(N, g, K3).arrows, (g, N)
    assert time.perf_counter() - t0 < 600


def test_07_theorem5_consistency():
    for n in range(1, 5):
        for pi in permutations(range(1, n + 1)):
            m = matching_from_permutation(pi)
            bound = theorem5_bound(n, max(shift_statistic(pi)[0], 1))
            r = ordered_ramsey(m, K3, bound, engine="sat").value
            assert isinstance(r, int) and r <= bound, (pi, r, bound)
            if n <= 2:
                assert ordered_ramsey(m, K3, bound).value == r
    n = 16
    assert theorem5_bound(n, 12) == 951
    assert theorem4_bound(n) == 951
    assert math.ceil(4 * n * (math.sqrt(3 * n ** 1.5) + 1)) == 951


def test_08_lll_audit():
    for t in PRESET_TUPLES.values():
        assert check_param_inequalities(LLLParams(*t))["ok"]
    assert not check_param_inequalities(LLLParams(1, 1, 1, 0))["ok"]
    for t in PRESET_TUPLES.values():
        p = LLLParams(*t, n=10 ** 6)
        rep = audit_lll_conditions(p)
        assert rep.all_positive
        assert set(rep.crossover_n) == {"P", "Q", "R"} and all(rep.crossover_n.values())
        assert audit_lll_conditions(p).to_dict() == rep.to_dict()


def test_09_density_monte_carlo():
    t0 = time.perf_counter()
    rep = run_density_experiment(2000, 200, seed=0, workers=WORKERS)
    assert rep.prop1_fail_rate <= 0.05 and rep.prop2_fail_rate <= 0.05
    for n in range(2, 7):
        th = DensityThresholds(n)
        ex = run_density_experiment(n, enumerate_all=True)
        assert [r for r in ex.rows] == [evaluate_permutation(pi, th, k)
                                        for k, pi in enumerate(permutations(range(1, n + 1)))]
    assert time.perf_counter() - t0 < 600


def test_10_shift_concentration():
    d = sample_L_distribution(400, 1000, seed=0, workers=WORKERS)
    assert d.threshold == 60
    assert d.exceedance_rate <= 0.01
    ex = sample_L_distribution(4, enumerate_all=True)
    brute = {}
    for pi in permutations(range(1, 5)):
        v = shift_statistic_bruteforce(pi)
        brute[v] = brute.get(v, 0) + 1
    assert ex.histogram == brute


CLI_RUNS = [
    ["bound", "--n", "16", "--ell", "12", "--format", "json"],
    ["construct", "m-kt", "--k", "3", "--t", "3", "--format", "json"],
    ["verify", "lemma6", "--k", "3", "--t", "4", "--format", "json"],
    ["lstat", "--n", "120", "--samples", "60", "--seed", "5", "--format", "json"],
    ["lstat", "--n", "120", "--samples", "60", "--seed", "5", "--format", "csv"],
    ["density", "--n", "300", "--samples", "6", "--seed", "7", "--format", "csv"],
    ["density", "--n", "300", "--samples", "6", "--seed", "7", "--format", "json"],
    ["lll", "--preset", "thm-bipartite", "--format", "json"],
    ["lll", "--sample", "--v", "40", "--gamma-scale", "2.5", "--s", "4", "--seed", "3", "--format", "json"],
    ["exact", "--red", "K3", "--blue", "K3", "--nmax", "6", "--format", "json"],
    ["exact", "--red", "edge", "--blue", "K3", "--nmax", "6", "--engine", "sat", "--format", "text"],
]


def test_11_cli_reproducible(tmp_path):
    for i, argv in enumerate(CLI_RUNS):
        outs = []
        for rep in range(2):
            p = tmp_path / f"run{i}_{rep}.out"
            assert main(argv + ["--out", str(p)]) == 0, argv
            outs.append(p.read_bytes())
        assert outs[0] == outs[1] and outs[0], argv


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
