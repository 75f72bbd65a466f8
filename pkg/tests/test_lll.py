import math
from fractions import Fraction

import numpy as np
import pytest

from ordramsey.lll import (PRESET_TUPLES, EventBudget, LLLParams, LLLWeights, audit_lll_conditions,
                           check_param_inequalities, count_blue_triangles, count_red_kss, sample_lll_coloring)


def test_inequalities_exact():
    for t in PRESET_TUPLES.values():
        assert check_param_inequalities(LLLParams(*t))["ok"]
    r = check_param_inequalities(LLLParams(1, 1, 1, 0))
    assert not r["ok"] and set(r["violated"]) == {"alpha+beta+gamma-delta<=3/2", "alpha+gamma<=1"}
    # boundary cases are accepted exactly
    assert check_param_inequalities(LLLParams(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(0)))["ok"]
    assert not check_param_inequalities(LLLParams(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2) + Fraction(1, 10**30)))["ok"]


def test_params_validation():
    with pytest.raises(ValueError):
        LLLParams(0, 1, 1)
    with pytest.raises(ValueError):
        LLLParams(1, 1, 1, -1)
    with pytest.raises(ValueError):
        LLLParams(1, 1, 1, 0, n=1)


def test_weights_and_budget():
    p = LLLParams(*PRESET_TUPLES["thm-bipartite"], n=1024)
    w = LLLWeights.for_params(p)
    assert w.log_x == pytest.approx(-math.log(4 * 1024 ** 0.75), rel=1e-15)
    assert w.log_y == pytest.approx(-2 * 32 * 10, rel=1e-15)
    assert w.log_z == pytest.approx(-21 * 1024 ** 0.25 * 100, rel=1e-15)
    b = EventBudget.for_params(p)
    assert b.log_IQ == pytest.approx(320) and b.log_IR == pytest.approx(20 * 1024 ** 0.25 * 100)


@pytest.mark.parametrize("name", sorted(PRESET_TUPLES))
def test_preset_tuples_positive_at_1e6(name):
    rep = audit_lll_conditions(LLLParams(*PRESET_TUPLES[name], n=10 ** 6))
    assert rep.all_positive
    assert all(v is not None for v in rep.crossover_n.values())
    assert not any(rep.sign_changes_after_crossover.values())
    assert rep.to_dict() == audit_lll_conditions(LLLParams(*PRESET_TUPLES[name], n=10 ** 6)).to_dict()


def test_small_n_reports_negative_margin():
    rep = audit_lll_conditions(LLLParams(*PRESET_TUPLES["thm-bipartite"], n=2), scan=False)
    assert rep.margins["P"] < 0


def test_blue_triangle_expectation():
    counts = [sample_lll_coloring(3, 1.0, seed=s).blue_triangles for s in range(4000)]
    mean = float(np.mean(counts))
    se = math.sqrt(0.125 * 0.875 / 4000)
    assert abs(mean - 0.125) < 5 * se


def test_blue_edge_count_is_binomial():
    v, scale = 6, 2.0
    p = 1 / (2 * scale)
    m = v * (v - 1) // 2
    counts = np.array([sample_lll_coloring(v, scale, seed=s).blue_edges for s in range(10000)])
    se = math.sqrt(m * p * (1 - p) / len(counts))
    assert abs(counts.mean() - m * p) < 5 * se


def test_all_red_limit():
    s = sample_lll_coloring(12, float("inf"), seed=4)
    assert s.blue_edges == 0 and s.blue_triangles == 0
    assert s.red_kss == sum(math.comb(12 - j, 2) * math.comb(j - 1, 1) for j in range(2, 12))


def _recount(chi, s):
    tri = sum(1 for a in range(1, chi.n + 1) for b in range(a + 1, chi.n + 1) for c in range(b + 1, chi.n + 1)
              if chi.is_blue(a, b) and chi.is_blue(b, c) and chi.is_blue(a, c))
    from itertools import combinations
    kss = 0
    for A in combinations(range(1, chi.n + 1), s):
        for B in combinations(range(A[-1] + 1, chi.n + 1), s):
            kss += all(not chi.is_blue(a, b) for a in A for b in B)
    return tri, kss


def test_census_matches_recount():
    s = sample_lll_coloring(50, 50 ** 0.25, seed=7, s=2)
    tri, _ = _recount(s.coloring, 2)
    assert s.blue_triangles == tri == count_blue_triangles(s.coloring)
    small = sample_lll_coloring(14, 1.5, seed=7, s=3)
    assert (small.blue_triangles, small.red_kss) == _recount(small.coloring, 3)


def test_sampled_kss_estimate():
    s = sample_lll_coloring(18, 4.0, seed=2, s=4, kss_samples=3000)
    exact = count_red_kss(s.coloring, 4)
    assert not s.red_kss_exact
    assert abs(s.red_kss - exact) < 5 * s.red_kss_stderr + 1e-9
