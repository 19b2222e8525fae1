"""End-to-end acceptance sweep.

Each criterion prints one ``ACCEPTANCE Cnn PASS/FAIL — ...`` line through the
capture bypass so the verdicts stay visible in a plain ``pytest -v`` run, and
then asserts both the property and its time budget.
"""

import itertools
import sys
import time
from fractions import Fraction

import numpy as np

from dtg import core, oracles, perm
from dtg.graph import (Graph, bipartition, components, induced_subgraph,
                       is_threshold)


def _report(capsys, num, ok, detail):
    with capsys.disabled():
        sys.stdout.write("ACCEPTANCE C%02d %s — %s\n"
                         % (num, "PASS" if ok else "FAIL", detail))
        sys.stdout.flush()
    return ok


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    u, v = np.triu_indices(n, 1)
    keep = rng.random(u.size) < p
    return Graph(n, np.column_stack([u[keep], v[keep]]))


def random_perm_graph(n, seed):
    base = np.random.default_rng(seed).permutation(n)
    pos = np.empty(n, dtype=np.int64)
    pos[base] = np.arange(n)
    u, v = np.triu_indices(n, 1)
    keep = pos[u] > pos[v]
    return Graph(n, np.column_stack([u[keep], v[keep]]))


def path_graph(n):
    return Graph(n, np.column_stack([np.arange(n - 1), np.arange(1, n)]))


def test_c01_order_le5_ground_truth(capsys):
    t0 = time.perf_counter()
    total = 0
    rejected = set()
    for n in range(1, 6):
        for g in oracles.enumerate_small_graphs(n):
            total += 1
            if not core.recognize(g).accepted:
                rejected.add(oracles.canonical_form(g))
    expected = {oracles.canonical_form(oracles.named_graph(nm))
                for nm in ("C5", "bull", "butterfly", "gem")}
    dt = time.perf_counter() - t0
    ok = total == 52 and rejected == expected and dt < 5.0
    _report(capsys, 1, ok,
            "%d classes, %d rejected (C5/bull/butterfly/gem) in %.2fs"
            % (total, len(rejected), dt))
    assert total == 52
    assert rejected == expected
    assert dt < 5.0


def test_c02_2k3_minimality(capsys):
    t0 = time.perf_counter()
    g = oracles.named_graph("2K3")
    root_rejected = not core.recognize(g).accepted
    sub_ok = 0
    subs = 0
    for k in range(6):
        for keep in itertools.combinations(range(6), k):
            subs += 1
            sub, _ = induced_subgraph(g, keep)
            if core.recognize(sub).accepted:
                sub_ok += 1
    dt = time.perf_counter() - t0
    ok = root_rejected and sub_ok == subs and dt < 1.0
    _report(capsys, 2, ok,
            "2K3 rejected, %d/%d proper induced subgraphs accepted in %.2fs"
            % (sub_ok, subs, dt))
    assert root_rejected
    assert sub_ok == subs == 63
    assert dt < 1.0


def test_c03_order6_oracle_equivalence(capsys):
    t0 = time.perf_counter()
    total = 0
    agree = 0
    accepted = 0
    for g in oracles.enumerate_small_graphs(6):
        total += 1
        fast = core.recognize(g).accepted
        slow = oracles.brute_force_dtg(g)
        agree += fast == slow
        accepted += fast
    dt = time.perf_counter() - t0
    ok = total == 156 and agree == total and dt < 600.0
    _report(capsys, 3, ok,
            "%d/%d order-6 classes agree with brute force (%d accepted) in %.1fs"
            % (agree, total, accepted, dt))
    assert total == 156
    assert agree == total
    assert dt < 600.0


def test_c04_generator_round_trip(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    bad = 0
    for i in range(1000):
        n = int(rng.integers(1, 65))
        cert = oracles.random_certificate(n, seed=i)
        g = core.graph_from_weights(cert)
        res = core.recognize(g)
        if not (res.accepted and core.verify_certificate(g, res.certificate).ok):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 120.0
    _report(capsys, 4, ok,
            "1000 seeded certificates n in [1,64], %d failures in %.1fs"
            % (bad, dt))
    assert bad == 0
    assert dt < 120.0


def test_c05_diagram_equivalence(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(31)
    bad = 0
    for i in range(500):
        n = int(rng.integers(1, 33))
        cert = core.normalize_certificate(
            oracles.random_certificate(n, seed=1000 + i), 0, 2)
        d = core.diagram_from_weights(cert)
        if perm.graph_from_diagram(d) != core.graph_from_weights(cert):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 30.0
    _report(capsys, 5, ok,
            "500 normalized certificates, diagram mismatches: %d in %.1fs"
            % (bad, dt))
    assert bad == 0
    assert dt < 30.0


def test_c06_normalization_contract(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(47)
    bad = 0
    for i in range(500):
        n = int(rng.integers(1, 33))
        cert = oracles.random_certificate(n, seed=3000 + i)
        lb_t = Fraction(int(rng.integers(-16, 16)), int(rng.integers(1, 7)))
        ub_t = lb_t + Fraction(int(rng.integers(1, 24)), int(rng.integers(1, 7)))
        out = core.normalize_certificate(cert, lb_t, ub_t)
        ws = out.weights()
        sums = {ws[u] + ws[v] for u in range(n) for v in range(u, n)}
        good = (out.lb == lb_t and out.ub == ub_t
                and len(set(ws)) == n
                and lb_t not in sums and ub_t not in sums
                and core.graph_from_weights(out) == core.graph_from_weights(cert)
                and np.array_equal(out.mid_set(), cert.mid_set()))
        if not good:
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 30.0
    _report(capsys, 6, ok,
            "500 certificates renormalized to random targets, %d violations in %.1fs"
            % (bad, dt))
    assert bad == 0
    assert dt < 30.0


def test_c07_co_threshold_split(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(59)
    bad = 0
    for i in range(200):
        n = int(rng.integers(1, 49))
        cert = oracles.random_certificate(n, seed=5000 + i)
        g1, g2 = core.co_threshold_split(cert)
        inter = g1.edge_set() & g2.edge_set()
        if not (is_threshold(g1) and is_threshold(g2)
                and inter == core.graph_from_weights(cert).edge_set()):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 10.0
    _report(capsys, 7, ok,
            "200 splits into two threshold factors, %d violations in %.1fs"
            % (bad, dt))
    assert bad == 0
    assert dt < 10.0


def test_c08_efficient_clique(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(71)
    bad = 0
    for i in range(200):
        n = int(rng.integers(2, 15))
        g = random_perm_graph(n, 7000 + i)
        o1 = perm.LinearOrder(np.arange(n))
        o2 = perm.forced_partner_order(g, o1)
        assert o2 is not None
        fast = list(core.efficient_max_clique(g, o1, o2))
        slow = list(oracles.brute_force_efficient_clique(g))
        deg = g.degrees()
        if (len(fast) != len(slow)
                or sum(int(deg[v]) for v in fast) != sum(int(deg[v]) for v in slow)):
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60.0
    _report(capsys, 8, ok,
            "200 permutation graphs n<=14, clique size/degree-sum mismatches: %d in %.1fs"
            % (bad, dt))
    assert bad == 0
    assert dt < 60.0


def test_c09_forbidden_necessity(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(83)
    hits = 0
    bad = 0
    for i in range(500):
        n = int(rng.integers(1, 13))
        p = float(rng.uniform(0.05, 0.95))
        g = random_graph(n, p, 9000 + i)
        if oracles.forbidden_scan(g):
            hits += 1
            if core.recognize(g).accepted:
                bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60.0
    _report(capsys, 9, ok,
            "500 random graphs, %d forbidden hits, %d wrongly accepted in %.1fs"
            % (hits, bad, dt))
    assert hits > 0
    assert bad == 0
    assert dt < 60.0


def test_c10_scaling(capsys):
    # doubling cap: within 1.3x of the linear baseline (time doubles per
    # size doubling), i.e. T(2n)/T(n) <= 2 * 1.3
    times = {}
    for k in (17, 18, 19, 20):
        g = path_graph(1 << k)
        best = float("inf")
        for _ in range(2):
            t0 = time.perf_counter()
            res = core.recognize(g)
            best = min(best, time.perf_counter() - t0)
        assert res.accepted
        times[k] = best
    ratios = [times[k + 1] / times[k] for k in (17, 18, 19)]

    t0 = time.perf_counter()
    res_big = core.recognize(path_graph(10 ** 6))
    t_big = time.perf_counter() - t0

    # anti-diagonal band: w_i = i with bounds [n-4, n+4] is its own
    # certificate, connected and non-bipartite (the mid five-clique)
    n = 10 ** 4
    i, j = np.triu_indices(n, 1)
    keep = (i + j >= n - 4) & (i + j <= n + 4)
    band = Graph(n, np.column_stack([i[keep], j[keep]]))
    assert bipartition(band) is None and len(components(band)) == 1
    t0 = time.perf_counter()
    res_band = core.recognize(band)
    t_band = time.perf_counter() - t0

    ok = (res_big.accepted and t_big < 5.0
          and all(r <= 2.6 for r in ratios)
          and res_band.accepted and t_band < 10.0)
    _report(capsys, 10, ok,
            "path 1e6 in %.2fs, doubling ratios %s (cap 2.6), "
            "non-bipartite band 1e4 in %.2fs"
            % (t_big, "/".join("%.2f" % r for r in ratios), t_band))
    assert res_big.accepted and t_big < 5.0
    assert all(r <= 2.6 for r in ratios), ratios
    assert res_band.accepted and t_band < 10.0
