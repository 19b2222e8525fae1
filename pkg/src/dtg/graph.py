"""Undirected simple graphs and the elementary structure used everywhere else.

Vertices are dense integers 0..n-1. A Graph is immutable once built: CSR
neighbor arrays (sorted, no duplicates, no self-loops) plus, for n <= 4096, a
packed adjacency bit matrix so membership tests are O(1) word ops. Larger
graphs answer membership by binary search in the sorted neighbor row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, GraphParseError

# Above this order we skip the n x n bit matrix (memory) and use binary search.
BITMATRIX_MAX_N = 4096


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "m", "indptr", "indices", "_bits")

    def __init__(self, n, edges=None):
        """Build from an iterable (or 2-column array) of endpoint pairs.

        Duplicate edges collapse; self-loops are rejected (silent repair hides
        bad corpora); endpoints must be in range.
        """
        n = int(n)
        if n < 0:
            raise ContractViolation("vertex count must be non-negative")
        if edges is None:
            e = np.empty((0, 2), dtype=np.int64)
        else:
            e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64)
            if e.size == 0:
                e = np.empty((0, 2), dtype=np.int64)
            e = e.reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ContractViolation("edge endpoint out of range")
            if (e[:, 0] == e[:, 1]).any():
                raise ContractViolation("self-loops are not allowed")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            eu = np.unique(lo * n + hi)
            lo, hi = eu // n, eu % n
        else:
            lo = hi = np.empty(0, dtype=np.int64)

        self.n = n
        self.m = int(lo.size)
        heads = np.concatenate([lo, hi])
        tails = np.concatenate([hi, lo])
        order = np.lexsort((tails, heads))
        self.indices = tails[order].astype(np.int32)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, heads + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices.flags.writeable = False
        self.indptr.flags.writeable = False

        if n <= BITMATRIX_MAX_N:
            words = (n + 63) // 64 or 1
            bits = np.zeros((n, words), dtype=np.uint64)
            if self.m:
                np.bitwise_or.at(
                    bits,
                    (heads, (tails // 64).astype(np.int64)),
                    np.uint64(1) << (tails % 64).astype(np.uint64),
                )
            bits.flags.writeable = False
            self._bits = bits
        else:
            self._bits = None

    # -- basic accessors ----------------------------------------------------

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self):
        return np.diff(self.indptr)

    def has_edge(self, u, v):
        if u == v:
            return False
        if self._bits is not None:
            return bool((self._bits[u, v // 64] >> np.uint64(v % 64)) & np.uint64(1))
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return k < row.size and row[k] == v

    def edges(self):
        """(u, v) arrays with u < v, lexicographically sorted."""
        heads = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = heads < self.indices
        return heads[keep], self.indices[keep].astype(np.int64)

    def edge_set(self):
        u, v = self.edges()
        return set(zip(u.tolist(), v.tolist()))

    def bit_rows(self):
        """Adjacency rows as python ints (only for n <= BITMATRIX_MAX_N)."""
        if self._bits is None:
            raise ContractViolation("bit rows unavailable above n=%d" % BITMATRIX_MAX_N)
        raw = self._bits.astype("<u8").tobytes()
        w = self._bits.shape[1] * 8
        return [int.from_bytes(raw[i * w:(i + 1) * w], "little") for i in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.m, self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring: side[v] is 0 for the X side, 1 for the Y side."""

    side: np.ndarray

    @property
    def X(self):
        return np.flatnonzero(self.side == 0)

    @property
    def Y(self):
        return np.flatnonzero(self.side == 1)

    def is_valid_for(self, g: Graph) -> bool:
        if self.side.shape != (g.n,):
            return False
        u, v = g.edges()
        return bool((self.side[u] != self.side[v]).all()) if g.m else True


# -- parsing / encoding -----------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse "n" on the first line then one "u v" pair per line."""
    lines = text.split("\n")
    first = None
    for k, raw in enumerate(lines):
        if raw.strip():
            first = k
            break
    if first is None:
        raise GraphParseError("line 1: empty input, expected a vertex count")
    try:
        n = int(lines[first].strip())
    except ValueError:
        raise GraphParseError(f"line {first + 1}: expected a vertex count") from None
    if n < 0:
        raise GraphParseError(f"line {first + 1}: negative vertex count")
    edges = []
    for k in range(first + 1, len(lines)):
        raw = lines[k].strip()
        if not raw:
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {k + 1}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {k + 1}: expected 'u v'") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {k + 1}: vertex index out of range")
        if u == v:
            raise GraphParseError(f"line {k + 1}: self-loop")
        edges.append((u, v))
    return Graph(n, edges)


_G6_MAX_N = 258047  # largest order expressible in the 4-byte length form


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (standard bit-packed format, strict)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphParseError("empty graph6 string")
    data = np.frombuffer(s.encode("ascii", "replace"), dtype=np.uint8).astype(np.int64) - 63
    if (data < 0).any() or (data > 63).any():
        raise GraphParseError("invalid character in graph6 string")
    if data[0] < 63:
        n = int(data[0])
        body = data[1:]
    else:
        if data.size >= 2 and data[1] == 63:
            raise GraphParseError("graph6 order beyond supported size")
        if data.size < 4:
            raise GraphParseError("truncated graph6 length field")
        n = int(data[1]) << 12 | int(data[2]) << 6 | int(data[3])
        body = data[4:]
    nbits = n * (n - 1) // 2
    if body.size != (nbits + 5) // 6:
        raise GraphParseError("truncated or overlong graph6 bit stream")
    bits = (body[:, None] >> np.array([5, 4, 3, 2, 1, 0])) & 1
    bits = bits.reshape(-1)
    if bits[nbits:].any():
        raise GraphParseError("nonzero padding in graph6 bit stream")
    pos = np.flatnonzero(bits[:nbits])
    # column-major upper triangle: bit T(j)+i is the pair (i, j), i < j
    tri = np.arange(n, dtype=np.int64) * np.arange(-1, n - 1, dtype=np.int64) // 2
    j = np.searchsorted(tri, pos, side="right") - 1
    i = pos - tri[j]
    return Graph(n, np.column_stack([i, j]))


def encode_graph6(g: Graph) -> str:
    """Encode to the canonical graph6 string (no header)."""
    n = g.n
    if n > _G6_MAX_N:
        raise ContractViolation(f"graph6 encoding capped at n <= {_G6_MAX_N}")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + chr((n >> 12) + 63) + chr(((n >> 6) & 63) + 63) + chr((n & 63) + 63)
    nbits = n * (n - 1) // 2
    bits = np.zeros(((nbits + 5) // 6) * 6, dtype=np.uint8)
    u, v = g.edges()
    bits[v * (v - 1) // 2 + u] = 1
    vals = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return head + bytes(vals + 63).decode("ascii")


# -- elementary operations ---------------------------------------------------

def complement(g: Graph) -> Graph:
    """Graph with uv an edge iff u != v and uv is not an edge of g."""
    n = g.n
    out_u, out_v = [], []
    for u in range(n):
        row = np.zeros(n, dtype=bool)
        row[g.neighbors(u)] = True
        row[: u + 1] = True
        vs = np.flatnonzero(~row)
        out_u.append(np.full(vs.size, u, dtype=np.int64))
        out_v.append(vs)
    if not out_u:
        return Graph(n)
    return Graph(n, np.column_stack([np.concatenate(out_u), np.concatenate(out_v)]))


def induced_subgraph(g: Graph, vertices):
    """Subgraph induced on the given vertex set, relabeled 0..|S|-1.

    Returns (subgraph, index_map) where index_map[k] is the original label of
    new vertex k (vertices in increasing original order).
    """
    S = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if S.size and (S.min() < 0 or S.max() >= g.n):
        raise ContractViolation("vertex out of range")
    relabel = -np.ones(g.n, dtype=np.int64)
    relabel[S] = np.arange(S.size)
    u, v = g.edges()
    keep = (relabel[u] >= 0) & (relabel[v] >= 0) if u.size else np.zeros(0, dtype=bool)
    return Graph(S.size, np.column_stack([relabel[u[keep]], relabel[v[keep]]])), S


def components(g: Graph):
    """Connected components as sorted vertex arrays, ordered by smallest member."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    if g.n == 0:
        return []
    mat = csr_matrix((np.ones(g.indices.size, dtype=np.int8), g.indices, g.indptr),
                     shape=(g.n, g.n))
    ncomp, labels = connected_components(mat, directed=False)
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(ncomp, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(ncomp)
    order = np.argsort(rank[labels] * np.int64(g.n) + np.arange(g.n), kind="stable")
    sizes = np.bincount(rank[labels], minlength=ncomp)
    return np.split(order, np.cumsum(sizes)[:-1])


def bipartition(g: Graph):
    """A 2-coloring with the smallest vertex of each component on side X,
    or None if some component has an odd cycle."""
    from ._backend import kernels

    side = np.full(g.n, -1, dtype=np.int8)
    for comp in components(g):
        dist = kernels.bfs_distances(g.indptr, g.indices, int(comp[0]))
        side[comp] = dist[comp] & 1
    u, v = g.edges()
    if g.m and (side[u] == side[v]).any():
        return None
    return Bipartition(side)


def is_clique(g: Graph, vertices) -> bool:
    S = sorted(set(int(v) for v in vertices))
    if S and (S[0] < 0 or S[-1] >= g.n):
        raise ContractViolation("vertex out of range")
    for a in range(len(S)):
        for b in range(a + 1, len(S)):
            if not g.has_edge(S[a], S[b]):
                return False
    return True


def is_threshold(g: Graph) -> bool:
    """Iterated removal of isolated / dominating vertices, O(n log n).

    Removing a dominating vertex lowers every remaining degree by one, so with
    k dominators already gone the adjusted degree of a remaining vertex is
    deg - k and the original degree order still sorts the remainder.
    """
    if g.n <= 1:
        return True
    deg = np.sort(g.degrees())
    lo, hi = 0, g.n - 1
    removed_dominators = 0
    while hi - lo + 1 > 1:
        remaining = hi - lo + 1
        if deg[hi] - removed_dominators == remaining - 1:
            hi -= 1
            removed_dominators += 1
        elif deg[lo] - removed_dominators == 0:
            lo += 1
        else:
            return False
    return True


def find_induced_pattern(host: Graph, pattern: Graph):
    """First induced embedding of `pattern` (order <= 6) in `host`, or None.

    Plain backtracking over ordered tuples with degree pruning; the embedding
    is returned as a tuple t with t[p] = host vertex playing pattern vertex p.
    Deterministic: candidates are tried in increasing host-vertex order along
    a fixed pattern vertex order.
    """
    k = pattern.n
    if k > 6:
        raise ContractViolation("pattern order must be at most 6")
    if k == 0:
        return ()
    if k > host.n:
        return None

    pdeg = pattern.degrees()
    porder = []
    placed = np.zeros(k, dtype=bool)
    for _ in range(k):
        best, best_key = -1, None
        for p in range(k):
            if placed[p]:
                continue
            anchored = sum(1 for q in pattern.neighbors(p) if placed[q])
            key = (anchored, pdeg[p], -p)
            if best_key is None or key > best_key:
                best, best_key = p, key
        porder.append(best)
        placed[best] = True

    hdeg = host.degrees()
    use_bits = host._bits is not None
    hrows = host.bit_rows() if use_bits else None
    full = (1 << host.n) - 1 if use_bits else 0

    mapped = [-1] * k
    used = set()

    def candidates(p):
        if not use_bits:
            return range(host.n)
        mask = full
        for q in range(k):
            hq = mapped[q]
            if hq < 0 or q == p:
                continue
            if pattern.has_edge(p, q):
                mask &= hrows[hq]
            else:
                mask &= ~(hrows[hq] | (1 << hq))
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def extend(depth):
        if depth == k:
            return True
        p = porder[depth]
        need = pdeg[p]
        for h in candidates(p):
            if h in used or hdeg[h] < need:
                continue
            if not use_bits:
                ok = True
                for q in range(k):
                    if mapped[q] >= 0 and q != p:
                        if pattern.has_edge(p, q) != host.has_edge(h, mapped[q]):
                            ok = False
                            break
                if not ok:
                    continue
            mapped[p] = h
            used.add(h)
            if extend(depth + 1):
                return True
            used.discard(h)
            mapped[p] = -1
        return False

    if extend(0):
        return tuple(mapped)
    return None
