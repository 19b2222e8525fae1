import numpy as np
import pytest

from dtg.errors import ContractViolation, GraphParseError
from dtg.graph import (Graph, bipartition, complement, components,
                       encode_graph6, find_induced_pattern, induced_subgraph,
                       is_clique, is_threshold, parse_edge_list, parse_graph6)
from dtg import oracles


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    u, v = np.triu_indices(n, 1)
    keep = rng.random(u.size) < p
    return Graph(n, np.column_stack([u[keep], v[keep]]))


def test_graph_basics():
    g = Graph(4, [(1, 0), (1, 2), (3, 1)])
    assert g.n == 4 and g.m == 3
    assert g.degrees().tolist() == [1, 3, 1, 1]
    eu, ev = g.edges()
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 1), (1, 2), (1, 3)]
    assert g.has_edge(0, 1) and g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert sorted(g.neighbors(1).tolist()) == [0, 2, 3]


def test_graph_rejects_bad_edges():
    with pytest.raises(ContractViolation):
        Graph(3, [(0, 0)])
    with pytest.raises(ContractViolation):
        Graph(3, [(0, 3)])
    with pytest.raises(ContractViolation):
        Graph(2, [(-1, 0)])


def test_duplicate_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_parse_edge_list():
    g = parse_edge_list("4\n0 1\n2 3\n")
    assert g.n == 4 and g.m == 2
    assert parse_edge_list("  \n3\n").m == 0
    for bad in ["", "x", "3\n0", "3\n0 5", "2\n1 1", "-1"]:
        with pytest.raises(GraphParseError):
            parse_edge_list(bad)


def test_graph6_round_trip_small():
    # frozen encodings cross-checked against networkx's encoder
    assert encode_graph6(Graph(0)) == "?"
    assert encode_graph6(oracles.path_graph(4)) == "Ch"
    assert encode_graph6(oracles.named_graph("bull")) == "DyG"
    assert encode_graph6(oracles.cycle_graph(5)) == "Dhc"
    p = parse_graph6("Ch")
    eu, ev = p.edges()
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 1), (1, 2), (2, 3)]
    assert parse_graph6(">>graph6<<Ch").m == 3


def test_graph6_round_trip_random():
    for t in range(60):
        n = int(np.random.default_rng(t).integers(0, 40))
        g = random_graph(n, 0.3, 1000 + t)
        h = parse_graph6(encode_graph6(g))
        assert h.n == g.n
        assert np.array_equal(np.column_stack(h.edges()), np.column_stack(g.edges()))


def test_graph6_large_order_header():
    g = oracles.path_graph(70)
    s = encode_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s).m == 69


def test_graph6_malformed():
    for bad in ["", " ", "C\x19", "CFx", "C", "~??"]:
        with pytest.raises(GraphParseError):
            parse_graph6(bad)


def test_complement_involution():
    for t in range(25):
        g = random_graph(int(np.random.default_rng(t).integers(1, 30)), 0.4, t)
        cc = complement(complement(g))
        assert np.array_equal(np.column_stack(cc.edges()), np.column_stack(g.edges()))
        assert g.m + complement(g).m == g.n * (g.n - 1) // 2


def test_induced_subgraph_keeps_sorted_ids():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    sub, ids = induced_subgraph(g, [4, 0, 1])
    assert ids.tolist() == [0, 1, 4]
    eu, ev = sub.edges()
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 1), (0, 2)]


def test_components_sorted_by_smallest():
    g = Graph(6, [(3, 4), (0, 5)])
    comps = [c.tolist() for c in components(g)]
    assert comps == [[0, 5], [1], [2], [3, 4]]


def test_bipartition_on_even_cycles_only():
    assert bipartition(oracles.cycle_graph(5)) is None
    bip = bipartition(oracles.cycle_graph(6))
    assert bip is not None and bip.is_valid_for(oracles.cycle_graph(6))
    assert bip.side[0] == 0  # smallest vertex of the component on side X


def test_bipartition_random_structure():
    for t in range(30):
        rng = np.random.default_rng(200 + t)
        n = int(rng.integers(2, 40))
        side = rng.integers(0, 2, n)
        if side.min() == side.max():
            side[0] = 1 - side[0]
        u, v = np.triu_indices(n, 1)
        keep = (rng.random(u.size) < 0.3) & (side[u] != side[v])
        g = Graph(n, np.column_stack([u[keep], v[keep]]))
        bip = bipartition(g)
        assert bip is not None and bip.is_valid_for(g)
        # odd cycle through any edge kills it
        if g.m:
            eu, ev = g.edges()
            g2 = Graph(n + 1, np.vstack([np.column_stack([eu, ev]),
                                         [[int(eu[0]), n], [int(ev[0]), n]]]))
            assert bipartition(g2) is None


def test_is_clique():
    g = oracles.named_graph("paw")
    assert is_clique(g, [0, 1, 2])
    assert is_clique(g, []) and is_clique(g, [3])
    assert not is_clique(g, [0, 1, 3])


def test_is_threshold_matches_forbidden_triple():
    # threshold <=> no induced 2K2, C4, P4
    pats = [oracles.named_graph(nm) for nm in ("2K2", "C4", "P4")]
    seen_true = seen_false = 0
    for n in range(1, 6):
        for g in oracles.enumerate_small_graphs(n):
            want = all(find_induced_pattern(g, p) is None for p in pats)
            assert is_threshold(g) == want
            seen_true += want
            seen_false += not want
    assert seen_true and seen_false


def test_threshold_count_order5():
    # unlabeled threshold graphs on n vertices: 2^(n-1)
    assert sum(is_threshold(g) for g in oracles.enumerate_small_graphs(5)) == 16


def test_find_induced_pattern_basics():
    host = oracles.named_graph("gem")
    emb = find_induced_pattern(host, oracles.path_graph(4))
    assert emb == (0, 1, 2, 3)
    assert find_induced_pattern(host, oracles.cycle_graph(5)) is None
    assert find_induced_pattern(host, Graph(0)) == ()
    # C4 inside C4 but not inside K4
    assert find_induced_pattern(oracles.cycle_graph(4), oracles.cycle_graph(4))
    assert find_induced_pattern(oracles.complete_graph(4),
                                oracles.cycle_graph(4)) is None


def test_find_induced_pattern_is_induced():
    rng = np.random.default_rng(9)
    pats = [oracles.named_graph(nm) for nm in ("P4", "C4", "2K2", "paw", "bull")]
    for t in range(40):
        g = random_graph(int(rng.integers(4, 14)), float(rng.uniform(0.2, 0.7)), 300 + t)
        for p in pats:
            emb = find_induced_pattern(g, p)
            if emb is None:
                continue
            sub, _ = induced_subgraph(g, list(emb))
            # relabel pattern through the embedding order
            order = np.argsort(np.argsort(np.asarray(emb)))
            pe, pv = p.edges()
            want = sorted((min(a, b), max(a, b)) for a, b in
                          zip(order[pe].tolist(), order[pv].tolist()))
            se, sv = sub.edges()
            assert sorted(zip(se.tolist(), sv.tolist())) == want


def test_bit_rows_cap():
    g = Graph(5000)
    with pytest.raises(ContractViolation):
        g.bit_rows()
