import itertools

import numpy as np
import pytest

from doublemarkov import (
    Graph,
    all_paths,
    complement,
    complete_graph,
    conditional_minor,
    connected_components,
    direct_sum,
    edge_intersection,
    edge_union,
    empty_graph,
    marginal_minor,
    separates,
)
from doublemarkov.errors import PathCapExceeded
from doublemarkov.graphs import (
    count_paths_up_to,
    format_pair_file,
    graph_from_edge_mask,
    induced_subgraph,
    pair_rank,
    pairs_lex,
    parse_pair_file,
)

from conftest import oracle_separates, random_graph

P3 = Graph.from_edges(3, [(1, 2), (2, 3)])
STAR4 = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
PATH4 = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)])


def test_construction_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 2)])
    with pytest.raises(ValueError):
        Graph.from_edges(17, [])
    g = Graph.from_edges(3, [(2, 1), (1, 2)])
    assert g.edges == ((1, 2),)


def test_separates_examples():
    assert separates(P3, 1, 3, {2}) is True
    assert separates(complete_graph(3), 1, 2, {3}) is False
    assert separates(STAR4, 2, 3, {1}) is True
    assert separates(STAR4, 2, 3, set()) is False


def test_separates_argument_errors():
    with pytest.raises(ValueError):
        separates(P3, 1, 1, set())
    with pytest.raises(ValueError):
        separates(P3, 1, 3, {1})
    with pytest.raises(ValueError):
        separates(P3, 1, 3, {9})


def test_separates_against_oracle():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(3, 7))
        g = random_graph(n, rng)
        i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        rest = [v for v in range(1, n + 1) if v not in (i, j)]
        K = [v for v in rest if rng.random() < 0.4]
        assert separates(g, int(i), int(j), K) == oracle_separates(
            g.edges, int(i), int(j), K)


def test_separation_upward_stable_and_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(3, 7))
        g = random_graph(n, rng)
        for i, j in itertools.combinations(range(1, n + 1), 2):
            rest = [v for v in range(1, n + 1) if v not in (i, j)]
            K = [v for v in rest if rng.random() < 0.3]
            s = separates(g, i, j, K)
            assert s == separates(g, j, i, K)
            if s:
                for m in rest:
                    assert separates(g, i, j, set(K) | {m})


def test_minor_examples():
    assert marginal_minor(complete_graph(3), 3).edges == ((1, 2),)
    assert marginal_minor(P3, 2).edges == ()
    assert marginal_minor(STAR4, 1).edges == ()
    # neighbors {1, 3} cliqued; vertex 3 relabels to 2 after deletion
    assert conditional_minor(P3, 2).edges == ((1, 2),)
    # smooth-non-minor pair: neighbors of 4 in {14, 23, 34} become a clique
    g = Graph.from_edges(4, [(1, 4), (2, 3), (3, 4)])
    assert conditional_minor(g, 4).edges == ((1, 3), (2, 3))
    for n in (3, 4, 5):
        for k in range(1, n + 1):
            assert conditional_minor(complete_graph(n), k).edges == \
                complete_graph(n - 1).edges


def test_minors_agree_on_isolated_vertex():
    g = Graph.from_edges(4, [(1, 2), (2, 3)])
    assert marginal_minor(g, 4) == conditional_minor(g, 4)


def test_relabeling_is_decrement():
    g = Graph.from_edges(4, [(1, 2), (2, 4), (3, 4)])
    assert marginal_minor(g, 2).edges == ((2, 3),)  # 3-4 becomes 2-3


def test_direct_sum():
    k2 = complete_graph(2)
    assert direct_sum(k2, k2).edges == ((1, 2), (3, 4))
    assert direct_sum(empty_graph(2), empty_graph(3)).edges == ()
    s = direct_sum(P3, empty_graph(1))
    assert s.n == 4 and s.edges == ((1, 2), (2, 3))
    with pytest.raises(ValueError):
        direct_sum(complete_graph(10), complete_graph(10))


def test_connected_components():
    g = Graph.from_edges(4, [(1, 2), (3, 4)])
    assert connected_components(g) == ((1, 2), (3, 4))
    assert connected_components(complete_graph(4)) == ((1, 2, 3, 4),)
    assert connected_components(empty_graph(3)) == ((1,), (2,), (3,))


def test_components_of_direct_sum():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_graph(int(rng.integers(2, 5)), rng)
        h = random_graph(int(rng.integers(2, 5)), rng)
        shifted = tuple(tuple(v + g.n for v in b) for b in connected_components(h))
        assert connected_components(direct_sum(g, h)) == tuple(
            sorted(connected_components(g) + shifted))


def test_all_paths():
    assert all_paths(P3, 1, 3) == [(1, 2, 3)]
    c4 = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert all_paths(c4, 1, 3) == [(1, 2, 3), (1, 4, 3)]
    assert all_paths(empty_graph(3), 1, 2) == []


def test_all_paths_properties():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        g = random_graph(n, rng)
        k, l = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        fwd = all_paths(g, int(k), int(l))
        assert fwd == sorted(fwd)
        for p in fwd:
            assert len(set(p)) == len(p)
        back = all_paths(g, int(l), int(k))
        assert sorted(tuple(reversed(p)) for p in fwd) == back


def test_all_paths_cap():
    k6 = complete_graph(6)
    with pytest.raises(PathCapExceeded):
        all_paths(k6, 1, 2, cap=3)
    assert count_paths_up_to(k6, 1, 2, 10) == 10


def test_edge_intersection_union():
    g = Graph.from_edges(3, [(1, 2), (1, 3)])
    h = Graph.from_edges(3, [(1, 3), (2, 3)])
    assert edge_intersection(g, h).edges == ((1, 3),)
    assert edge_union(g, complement(g)).edges == complete_graph(3).edges
    assert edge_intersection(STAR4, PATH4).edges == ((1, 2),)
    with pytest.raises(ValueError):
        edge_intersection(g, STAR4)


def test_induced_subgraph():
    g = Graph.from_edges(5, [(1, 2), (2, 4), (4, 5)])
    assert induced_subgraph(g, [2, 4, 5]).edges == ((1, 2), (2, 3))


def test_pair_rank_roundtrip():
    for n in (2, 4, 7):
        for r, (i, j) in enumerate(pairs_lex(n)):
            assert pair_rank(n, i, j) == r
            assert pair_rank(n, j, i) == r


def test_edge_mask_roundtrip():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        g = random_graph(n, rng)
        from doublemarkov.graphs import edge_mask
        assert graph_from_edge_mask(n, edge_mask(g)) == g


def test_pair_file_roundtrip():
    text = format_pair_file(STAR4, PATH4)
    g, h = parse_pair_file(text)
    assert g == STAR4 and h == PATH4
    g2, h2 = parse_pair_file("n 3\nG\nH 1-2\n")
    assert g2.edges == () and h2.edges == ((1, 2),)


@pytest.mark.parametrize("bad,msg", [
    ("n 4\nG 1-1\nH\n", "1-1"),
    ("n 4\nG 1-9\nH\n", "1-9"),
    ("n 4\nG 1_2\nH\n", "1_2"),
    ("m 4\nG\nH\n", "n <count>"),
    ("n 4\nG 1-2\n", "three"),
])
def test_pair_file_errors(bad, msg):
    with pytest.raises(ValueError, match=msg.replace("(", "[(]")):
        parse_pair_file(bad)
