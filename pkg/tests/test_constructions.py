import pytest

from ordramsey.constructions import (BlockLayout, InvalidParameters, build_M_kt, build_M_t, density_counterexample,
                                     superblock_pair_graph, verify_M_t_density, verify_lemma6,
                                     verify_superblock_pairs)
from ordramsey.ordered import OrderedGraph, contains_ordered_subgraph, interval_chromatic_number


def test_M_t_examples():
    m, _ = build_M_t(2)
    assert m.n_vertices == 8 and m.edges == frozenset({(2, 7), (3, 6)})
    m, _ = build_M_t(1)
    assert m.n_vertices == 2 and m.n_edges == 0
    m, _ = build_M_t(3)
    assert m.n_vertices == 18 and m.n_edges == 6


@pytest.mark.parametrize("t", range(1, 9))
def test_M_t_grid_structure(t):
    m, lay = build_M_t(t)
    matched = {x for e in m.edges for x in e}
    assert m.n_vertices - len(matched) == 2 * t
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            (a, b), (c, d) = lay.I(i), lay.J(j)
            k = sum(1 for u, v in m.edges if a <= u <= b and c <= v <= d)
            assert k == (0 if i == j else 1)


def test_density():
    assert all(verify_M_t_density(t) for t in range(2, 9))
    assert density_counterexample(1, 1) == ((1, 1), (2, 2))


@pytest.mark.parametrize("t", range(3, 7))
def test_tightness_probe_reported(t):
    ce = density_counterexample(t, 2 * t - 1)
    if ce is not None:
        m, _ = build_M_t(t)
        (a, b), (c, d) = ce
        assert not any(a <= u <= b and c <= v <= d for u, v in m.edges)


def test_M_kt_examples():
    m, lay = build_M_kt(3, 3)
    assert (m.n_vertices, lay.class_size, m.n_edges) == (54, 18, 18)
    assert len(lay.superblock(1, 2)) == 9
    m, _ = build_M_kt(3, 1)
    assert (m.n_vertices, m.n_edges) == (6, 0)
    m, _ = build_M_kt(4, 2)
    assert (m.n_vertices, m.n_edges) == (48, 12)
    with pytest.raises(InvalidParameters):
        build_M_kt(2, 3)


def test_superblocks_partition_each_class():
    for k in (3, 4, 5):
        for t in (1, 2, 3):
            lay = BlockLayout(k, t)
            for i in range(1, k + 1):
                verts = sorted(v for a in range(1, k + 1) if a != i for v in lay.superblock(i, a))
                s, e = lay.P(i)
                assert verts == list(range(s, e + 1))


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_interval_chromatic_number_is_k(k, t):
    m, _ = build_M_kt(k, t)
    assert interval_chromatic_number(m)[0] == k


def test_superblock_pairs_copy_M_t():
    for k in (3, 4):
        for t in range(1, 5):
            assert verify_superblock_pairs(k, t)
    mt = OrderedGraph(*(lambda g: (g.n_vertices, g.edges))(build_M_t(3)[0]))
    g = superblock_pair_graph(4, 3, 2, 4)
    assert contains_ordered_subgraph(g, mt) and contains_ordered_subgraph(mt, g)


@pytest.mark.parametrize("k, t", [(3, 5), (3, 3), (4, 6)])
def test_lemma6_examples(k, t):
    rep = verify_lemma6(k, t)
    assert rep.part_a and rep.part_b
    assert rep.max_small_pair_edges <= (2 * k + 1) ** 2


def test_lemma6_vacuous_case():
    rep = verify_lemma6(3, 2)
    assert rep.part_a_vacuous and rep.part_a
    with pytest.raises(InvalidParameters):
        verify_lemma6(3, 2, strict=True)
