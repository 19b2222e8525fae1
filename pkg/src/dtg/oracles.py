"""Brute-force oracles and small-graph utilities for cross-checking.

Everything here decides by exhaustion: canonical forms minimize over all
vertex permutations, the recognizers try every ordering or every clique, and
the pattern scan walks every embedding.  None of it shares logic with the
pipeline beyond the Graph type and the forced-partner construction, which is
the point: agreement between the two sides is evidence, not tautology.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ContractViolation
from .graph import (Graph, components, bipartition, complement,
                    induced_subgraph, is_clique, find_induced_pattern)
from .perm import LinearOrder, forced_partner_order
from .core import WeightCertificate, auxiliary_graph

CANONICAL_MAX_N = 8
ENUMERATE_MAX_N = 7
BRUTE_PERM_MAX_N = 8
BRUTE_DTG_MAX_N = 6
BRUTE_CLIQUE_MAX_N = 16


# -- named small graphs -------------------------------------------------------

_NAMED = {
    "P4": (4, [(0, 1), (1, 2), (2, 3)]),
    "C4": (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "2K2": (4, [(0, 1), (2, 3)]),
    "paw": (4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "C5": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    "C6": (6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]),
    "bull": (5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
    "butterfly": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
    "gem": (5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
    "2K3": (6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]),
    "house": (5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)]),
    "W4": (5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)]),
    "fork": (5, [(0, 1), (0, 2), (0, 3), (3, 4)]),
    "tadpole": (5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]),
    "P2+P3": (5, [(0, 1), (2, 3), (3, 4)]),
}


def named_graph(name):
    if name == "co-fork":
        return complement(named_graph("fork"))
    if name == "co-P2+P3":
        return complement(named_graph("P2+P3"))
    if name not in _NAMED:
        raise ContractViolation("unknown graph name %r" % name)
    n, edges = _NAMED[name]
    return Graph(n, edges)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ContractViolation("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(k):
    """K_{1,k}: center 0 plus k leaves."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


# -- canonical forms and enumeration ------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Adjacency bits of the lexicographically least relabeling (n <= 8)."""

    n: int
    bits: int


def _perm_matrix(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def canonical_form(g):
    n = g.n
    if n > CANONICAL_MAX_N:
        raise ContractViolation("canonical forms stop at n=%d" % CANONICAL_MAX_N)
    if n <= 1:
        return CanonicalForm(n, 0)
    adj = np.zeros((n, n), dtype=bool)
    eu, ev = g.edges()
    adj[eu, ev] = adj[ev, eu] = True
    perms = _perm_matrix(n)
    images = adj[perms[:, :, None], perms[:, None, :]]
    iu, iv = np.triu_indices(n, 1)
    weights = np.int64(1) << np.arange(iu.size, dtype=np.int64)
    vals = images[:, iu, iv] @ weights
    return CanonicalForm(n, int(vals.min()))


def enumerate_small_graphs(n):
    """One representative per isomorphism class, ascending canonical bits."""
    if not 0 <= n <= ENUMERATE_MAX_N:
        raise ContractViolation("enumeration stops at n=%d" % ENUMERATE_MAX_N)
    if n == 0:
        yield Graph(0)
        return
    pairs = list(itertools.combinations(range(n), 2))
    P = len(pairs)
    pair_index = {p: k for k, p in enumerate(pairs)}
    masks = np.arange(1 << P, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(P, dtype=np.int64)[None, :]) & 1
            ).astype(np.uint8)
    weights = np.int64(1) << np.arange(P, dtype=np.int64)
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        newpos = np.array([pair_index[tuple(sorted((perm[i], perm[j])))]
                           for (i, j) in pairs], dtype=np.int64)
        gather = np.argsort(newpos)
        np.minimum(canon, bits[:, gather] @ weights, out=canon)
    for mask in np.unique(canon).tolist():
        yield Graph(n, [pairs[k] for k in range(P) if (mask >> k) & 1])


# -- brute-force recognizers --------------------------------------------------

def brute_force_permutation(g):
    """First ordering (in itertools order) whose forced partner exists."""
    if g.n > BRUTE_PERM_MAX_N:
        raise ContractViolation(
            "exhaustive ordering search stops at n=%d" % BRUTE_PERM_MAX_N)
    for cand in itertools.permutations(range(g.n)):
        o1 = LinearOrder(cand)
        o2 = forced_partner_order(g, o1)
        if o2 is not None:
            return o1, o2
    return None


@lru_cache(maxsize=8)
def _symmetric_candidates(n):
    """All symmetric orders on 2n vertices (pair v <-> v+n), with caches.

    Returns (pos, less) where pos[b, v] is v's position in candidate b and
    less[b, u, v] says u precedes v.  A candidate is a pair permutation plus
    a choice of representative per pair; the mirror half is determined.
    """
    two_n = 2 * n
    perms = list(itertools.permutations(range(n)))
    orders = np.empty((len(perms) << n, two_n), dtype=np.int64)
    b = 0
    for perm in perms:
        for flags in range(1 << n):
            for i in range(n):
                v = perm[i] + (n if (flags >> i) & 1 else 0)
                orders[b, i] = v
                orders[b, two_n - 1 - i] = (v + n) % two_n
            b += 1
    pos = np.empty_like(orders)
    np.put_along_axis(pos, orders, np.arange(two_n, dtype=np.int64)[None, :], axis=1)
    less = pos[:, :, None] < pos[:, None, :]
    return pos, less


def _has_symmetric_representation(g, mid):
    """Batched forced-partner test over every symmetric first order."""
    n = g.n
    two_n = 2 * n
    aux = auxiliary_graph(g, mid).graph
    adj = np.zeros((two_n, two_n), dtype=bool)
    eu, ev = aux.edges()
    adj[eu, ev] = adj[ev, eu] = True
    deg = adj.sum(1).astype(np.int64)
    pos, less = _symmetric_candidates(n)

    nbefore = (less & adj.T[None, :, :]).sum(axis=1)
    rank2 = pos + deg[None, :] - 2 * nbefore
    perm_ok = (np.sort(rank2, axis=1) == np.arange(two_n)[None, :]).all(axis=1)
    if not perm_ok.any():
        return False
    cr = rank2[:, :, None] < rank2[:, None, :]
    discord = less != cr
    inv_ok = discord.sum(axis=(1, 2)) // 2 == aux.m
    edge_ok = discord[:, eu, ev].all(axis=1) if eu.size else np.ones(
        pos.shape[0], dtype=bool)
    partner = np.concatenate([np.arange(n, two_n), np.arange(n)])
    sym_ok = (rank2[:, partner] == (two_n - 1) - rank2).all(axis=1)
    return bool((perm_ok & inv_ok & edge_ok & sym_ok).any())


def brute_force_dtg(g):
    """Exhaustive double-threshold decision for n <= 6.

    Disconnected graphs fold over components (at most one non-bipartite);
    connected bipartite graphs reduce to the ordering search; connected
    non-bipartite graphs try every clique as the mid set and every symmetric
    order of the auxiliary graph.
    """
    if g.n > BRUTE_DTG_MAX_N:
        raise ContractViolation(
            "exhaustive recognition stops at n=%d" % BRUTE_DTG_MAX_N)
    if g.n == 0:
        return True
    comps = components(g)
    if len(comps) > 1:
        nonbip = 0
        for comp in comps:
            sub, _ = induced_subgraph(g, comp)
            if bipartition(sub) is None:
                nonbip += 1
            if not brute_force_dtg(sub):
                return False
        return nonbip <= 1
    if bipartition(g) is not None:
        return brute_force_permutation(g) is not None
    verts = range(g.n)
    for r in range(g.n + 1):
        for sub in itertools.combinations(verts, r):
            if is_clique(g, sub) and _has_symmetric_representation(g, np.array(sub, dtype=np.int64)):
                return True
    return False


def brute_force_efficient_clique(g):
    """Maximum clique of least degree sum, ties to the smallest vertex tuple."""
    n = g.n
    if n > BRUTE_CLIQUE_MAX_N:
        raise ContractViolation(
            "subset enumeration stops at n=%d" % BRUTE_CLIQUE_MAX_N)
    rows = g.bit_rows()
    deg = g.degrees()
    best = None   # (size, degsum, tuple)
    for mask in range(1 << n):
        members = [v for v in range(n) if (mask >> v) & 1]
        if not all((mask & ~rows[v]) == (1 << v) for v in members):
            continue
        size = len(members)
        dsum = int(deg[members].sum()) if members else 0
        key = (size, -dsum)
        cand = tuple(members)
        if best is None or key > best[0] or (key == best[0] and cand < best[1]):
            best = (key, cand)
    return np.array(best[1], dtype=np.int64)


# -- pattern scan and random generator ----------------------------------------

FORBIDDEN_PATTERNS = ("C5", "bull", "butterfly", "gem", "2K3")


def forbidden_scan(g):
    """First induced embedding of each known forbidden pattern, in order."""
    hits = []
    for name in FORBIDDEN_PATTERNS:
        emb = find_induced_pattern(g, named_graph(name))
        if emb is not None:
            hits.append((name, emb))
    return hits


def random_certificate(n, seed, den=32, lo=-2, hi=3, mid_bias=2.0):
    """Seeded certificate with bounds (0, 2) and distinct lattice weights.

    Weights are numerators over `den` drawn without replacement from
    [lo, hi], with extra mass on the mid band [0, 1] so that the generated
    graphs mix dense, sparse, and mid-heavy structure.
    """
    if n < 0:
        raise ContractViolation("vertex count must be nonnegative")
    rng = np.random.default_rng(seed)
    pop = np.arange(lo * den, hi * den + 1, dtype=np.int64)
    if pop.size < n:
        raise ContractViolation("lattice too small for %d distinct weights" % n)
    p = np.ones(pop.size)
    p[(pop >= 0) & (pop <= den)] += rng.uniform(0.0, mid_bias) * 2
    p /= p.sum()
    nums = rng.choice(pop, size=n, replace=False, p=p) if n else np.zeros(0, np.int64)
    return WeightCertificate(nums, den, Fraction(0), Fraction(2))
