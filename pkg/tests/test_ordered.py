from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ordramsey.ordered import (IntervalPartition, InvalidEmbedding, NotBipartiteMatching, OrderedGraph,
                               OrderedGraphError, OrderedMatching, contains_ordered_subgraph,
                               find_ordered_embedding, interval_chromatic_number, inverse_permutation,
                               matching_from_permutation, permutation_from_matching, quotient_graph)
from strategies import ordered_graphs, permutations_


def G(n, *edges):
    return OrderedGraph(n, frozenset(edges))


def test_edges_are_canonical():
    g = G(4, (3, 1), (2, 4))
    assert g.edges == frozenset({(1, 3), (2, 4)})
    with pytest.raises(OrderedGraphError):
        G(3, (1, 1))
    with pytest.raises(OrderedGraphError):
        G(3, (1, 4))


def test_matching_rejects_degree_two():
    with pytest.raises(OrderedGraphError):
        OrderedMatching(3, frozenset({(1, 2), (2, 3)}))


@pytest.mark.parametrize("pi, edges", [
    ((1, 2), {(1, 3), (2, 4)}),
    ((1, 3, 2), {(1, 4), (2, 6), (3, 5)}),
    ((2, 1), {(1, 4), (2, 3)}),
])
def test_correspondence_examples(pi, edges):
    m = matching_from_permutation(pi)
    assert m.edges == frozenset(edges)
    assert m.is_perfect_bipartite
    assert permutation_from_matching(m) == pi


def test_single_edge_is_the_trivial_permutation():
    assert permutation_from_matching(G(2, (1, 2))) == (1,)


def test_non_crossing_edge_rejected():
    with pytest.raises(NotBipartiteMatching):
        permutation_from_matching(G(4, (1, 2), (3, 4)))
    with pytest.raises(NotBipartiteMatching):
        permutation_from_matching(G(4, (1, 3)))


@given(permutations_(max_n=12))
def test_round_trip(pi):
    assert permutation_from_matching(matching_from_permutation(pi)) == pi
    inv = inverse_permutation(pi)
    assert all(inv[pi[i] - 1] == i + 1 for i in range(len(pi)))


def _chi_bruteforce(g):
    n = g.n_vertices
    if n == 0:
        return 0
    best = n
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            lab = IntervalPartition(n, cuts).labels()
            if all(lab[u - 1] != lab[v - 1] for u, v in g.edges):
                return k + 1
    return best


@pytest.mark.parametrize("g, want", [
    (G(6, (1, 4), (2, 6), (3, 5)), 2),
    (G(5), 1),
    (G(4, (1, 2), (3, 4)), 3),
    (G(0), 0),
])
def test_interval_chromatic_examples(g, want):
    assert interval_chromatic_number(g)[0] == want


def test_interval_chromatic_exhaustive_small():
    for n in range(0, 6):
        pairs = list(combinations(range(1, n + 1), 2))
        for mask in range(1 << len(pairs)):
            g = OrderedGraph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
            assert interval_chromatic_number(g)[0] == _chi_bruteforce(g)


@given(ordered_graphs(min_n=6, max_n=8))
def test_interval_chromatic_matches_bruteforce(g):
    k, part = interval_chromatic_number(g)
    assert k == _chi_bruteforce(g)
    lab = part.labels()
    assert part.n_intervals == k
    assert all(lab[u - 1] != lab[v - 1] for u, v in g.edges)


def _embeds_bruteforce(host, pat):
    for img in combinations(range(1, host.n_vertices + 1), pat.n_vertices):
        if all((min(img[u - 1], img[v - 1]), max(img[u - 1], img[v - 1])) in host.edges for u, v in pat.edges):
            return True
    return False


def test_containment_examples():
    assert contains_ordered_subgraph(G(3, (1, 2), (2, 3)), OrderedGraph.single_edge())
    assert not contains_ordered_subgraph(G(4, (1, 3), (2, 4)), G(4, (1, 2), (3, 4)))
    assert find_ordered_embedding(G(5, (1, 2)), G(0)) == ()


@given(ordered_graphs(max_n=8), ordered_graphs(max_n=4))
def test_containment_matches_bruteforce(host, pat):
    emb = find_ordered_embedding(host, pat)
    assert (emb is not None) == _embeds_bruteforce(host, pat)
    if emb is not None:
        assert list(emb) == sorted(set(emb))
        assert all((emb[u - 1], emb[v - 1]) in host.edges for u, v in pat.edges)


def test_quotient_examples():
    m = G(4, (1, 3), (2, 4))
    assert quotient_graph(m, (1, 2, 3, 4), IntervalPartition.from_sizes([2, 2])) == G(2, (1, 2))
    assert quotient_graph(m, (1, 2, 3, 4), IntervalPartition.from_sizes([1, 1, 1, 1])) == m
    with pytest.raises(InvalidEmbedding):
        quotient_graph(m, (2, 1, 3, 4), IntervalPartition(4))
    with pytest.raises(InvalidEmbedding):
        quotient_graph(m, (1, 2, 3, 9), IntervalPartition(4))


def test_quotient_scaled_embedding():
    m = G(6, (1, 4), (2, 6), (3, 5))
    emb = tuple(2 * v for v in range(1, 7))
    part = IntervalPartition.from_sizes([3, 3, 3, 3])
    got = quotient_graph(m, emb, part)
    ivs = part.intervals()
    want = set()
    for a, b in combinations(range(4), 2):
        lo, hi = ivs[a], ivs[b]
        for u, v in m.edges:
            x, y = emb[u - 1], emb[v - 1]
            if (lo[0] <= x <= lo[1] and hi[0] <= y <= hi[1]) or (lo[0] <= y <= lo[1] and hi[0] <= x <= hi[1]):
                want.add((a + 1, b + 1))
    assert got == OrderedGraph(4, frozenset(want))


@settings(max_examples=50)
@given(st.integers(0, 10), st.data())
def test_partition_roundtrip(n, data):
    cuts = tuple(sorted(data.draw(st.sets(st.integers(1, max(n - 1, 1)))))) if n > 1 else ()
    p = IntervalPartition(n, cuts)
    ivs = p.intervals()
    assert sum(b - a + 1 for a, b in ivs) == n
    assert IntervalPartition.from_sizes([b - a + 1 for a, b in ivs]) == p if n else True
