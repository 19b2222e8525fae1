import numpy as np
import pytest

from dtg import core, oracles
from dtg.errors import ContractViolation
from dtg.graph import Graph, is_clique


def test_enumeration_counts():
    for n, want in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34)]:
        assert sum(1 for _ in oracles.enumerate_small_graphs(n)) == want
    with pytest.raises(ContractViolation):
        list(oracles.enumerate_small_graphs(8))


def test_enumeration_no_isomorphic_pair():
    forms = [oracles.canonical_form(g) for g in oracles.enumerate_small_graphs(4)]
    assert len(set(forms)) == len(forms) == 11


def test_canonical_form_random_relabelings():
    rng = np.random.default_rng(13)
    for t in range(60):
        n = int(rng.integers(1, 8))
        u, v = np.triu_indices(n, 1)
        keep = rng.random(u.size) < 0.5
        g = Graph(n, np.column_stack([u[keep], v[keep]]))
        perm = rng.permutation(n)
        eu, ev = g.edges()
        h = Graph(n, np.column_stack([perm[eu], perm[ev]]) if eu.size else [])
        assert oracles.canonical_form(g) == oracles.canonical_form(h)
    assert oracles.canonical_form(oracles.path_graph(4)) != \
        oracles.canonical_form(oracles.star_graph(3))
    with pytest.raises(ContractViolation):
        oracles.canonical_form(Graph(9))


def test_brute_force_permutation_examples():
    assert oracles.brute_force_permutation(oracles.cycle_graph(4)) is not None
    assert oracles.brute_force_permutation(oracles.cycle_graph(5)) is None
    res = oracles.brute_force_permutation(oracles.path_graph(4))
    o1, o2 = res
    # returned pair really defines the graph
    from dtg.perm import forced_partner_order
    assert forced_partner_order(oracles.path_graph(4), o1) == o2
    with pytest.raises(ContractViolation):
        oracles.brute_force_permutation(Graph(9))


def test_brute_force_dtg_examples():
    assert not oracles.brute_force_dtg(oracles.named_graph("bull"))
    assert oracles.brute_force_dtg(oracles.named_graph("house"))
    assert oracles.brute_force_dtg(Graph(0))
    assert not oracles.brute_force_dtg(oracles.named_graph("2K3"))
    with pytest.raises(ContractViolation):
        oracles.brute_force_dtg(Graph(7))


def test_brute_force_efficient_clique_examples():
    assert oracles.brute_force_efficient_clique(
        oracles.complete_graph(4)).tolist() == [0, 1, 2, 3]
    assert oracles.brute_force_efficient_clique(
        oracles.named_graph("paw")).tolist() == [0, 1, 2]
    assert oracles.brute_force_efficient_clique(Graph(1)).tolist() == [0]
    with pytest.raises(ContractViolation):
        oracles.brute_force_efficient_clique(Graph(17))


def test_brute_force_efficient_clique_is_max_and_light():
    rng = np.random.default_rng(19)
    for t in range(25):
        n = int(rng.integers(1, 11))
        u, v = np.triu_indices(n, 1)
        keep = rng.random(u.size) < 0.5
        g = Graph(n, np.column_stack([u[keep], v[keep]]))
        got = oracles.brute_force_efficient_clique(g)
        assert is_clique(g, got.tolist())
        deg = g.degrees()
        # no clique is bigger, and none of equal size is lighter
        best = (got.size, -int(deg[got].sum()))
        import itertools
        for r in range(1, n + 1):
            for sub in itertools.combinations(range(n), r):
                if is_clique(g, sub):
                    assert (len(sub), -int(deg[list(sub)].sum())) <= best


def test_forbidden_scan_examples():
    hits = oracles.forbidden_scan(oracles.named_graph("gem"))
    assert [h[0] for h in hits] == ["gem"]
    hits = oracles.forbidden_scan(oracles.named_graph("2K3"))
    assert [h[0] for h in hits] == ["2K3"]
    assert oracles.forbidden_scan(oracles.cycle_graph(6)) == []
    # W4 contains none of the five patterns
    assert oracles.forbidden_scan(oracles.named_graph("W4")) == []
    # embeddings really induce the pattern
    host = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
    hits = dict(oracles.forbidden_scan(host))
    sub, _ = core.induced_subgraph(host, list(hits["C5"]))
    assert sub.m == 5 and (sub.degrees() == 2).all()


def test_random_certificate_deterministic():
    a = oracles.random_certificate(12, 99)
    b = oracles.random_certificate(12, 99)
    assert a == b
    assert a != oracles.random_certificate(12, 100)
    assert oracles.random_certificate(0, 1).n == 0
    assert (a.lb, a.ub) == (0, 2)


def test_random_certificate_round_trip_batch():
    for t in range(150):
        n = 1 + (t * 7) % 64
        c = oracles.random_certificate(n, t)
        assert len(set(c.nums.tolist())) == n
        g = core.graph_from_weights(c)
        assert core.verify_certificate(g, c)


def test_random_certificate_mixes_structure():
    # over many seeds we must see dense, sparse, and mid-heavy graphs
    densities, mids = [], []
    for t in range(40):
        c = oracles.random_certificate(14, 4000 + t)
        g = core.graph_from_weights(c)
        densities.append(g.m / (14 * 13 / 2))
        mids.append(c.mid_set().size)
    assert min(densities) < 0.35 and max(densities) > 0.6
    assert max(mids) >= 5


def test_named_graph_shapes():
    for nm, n, m in [("C5", 5, 5), ("bull", 5, 5), ("butterfly", 5, 6),
                     ("gem", 5, 7), ("2K3", 6, 6), ("house", 5, 6),
                     ("W4", 5, 8), ("paw", 4, 4), ("fork", 5, 4),
                     ("co-fork", 5, 6), ("P2+P3", 5, 3), ("co-P2+P3", 5, 7),
                     ("tadpole", 5, 5)]:
        g = oracles.named_graph(nm)
        assert (g.n, g.m) == (n, m), nm
    with pytest.raises(ContractViolation):
        oracles.named_graph("petersen")
    assert oracles.star_graph(4).degrees().tolist() == [4, 1, 1, 1, 1]
    with pytest.raises(ContractViolation):
        oracles.cycle_graph(2)
