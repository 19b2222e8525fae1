"""Pure-Python/numpy implementations of the hot kernels.

The compiled module (dtg._kernels, built from _kernels.pyx) provides the same
functions; dtg._backend picks whichever is available. Everything here is exact
integer arithmetic — these are correctness references, vectorized enough to
stay usable at large n.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_ONE = np.uint64(1)


def build_bit_rows(n, indptr, indices):
    """Packed adjacency rows: out[v, w] holds bits 64w..64w+63 of row v."""
    words = (n + 63) // 64 or 1
    bits = np.zeros((n, words), dtype=np.uint64)
    if indices.size:
        heads = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        np.bitwise_or.at(bits, (heads, indices // 64),
                         _ONE << (indices.astype(np.uint64) % np.uint64(64)))
    return bits


if hasattr(np, "bitwise_count"):
    def popcount_rows(bits):
        return np.bitwise_count(bits).sum(axis=1).astype(np.int64)
else:  # numpy < 2.0
    _POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

    def popcount_rows(bits):
        by = bits.view(np.uint8).reshape(bits.shape[0], -1)
        return _POP8[by].sum(axis=1, dtype=np.int64)


def bits_to_indices(row, n):
    return np.flatnonzero(np.unpackbits(row.view(np.uint8), bitorder="little", count=n))


def bfs_distances(indptr, indices, source):
    """BFS levels from `source`; -1 for unreachable vertices."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    n = indptr.shape[0] - 1
    if n == 0:
        return np.empty(0, dtype=np.int64)
    g = csr_matrix((np.ones(indices.shape[0], dtype=np.int8), indices, indptr),
                   shape=(n, n))
    d = dijkstra(g, directed=False, unweighted=True, indices=source)
    out = np.full(n, -1, dtype=np.int64)
    reach = np.isfinite(d)
    out[reach] = d[reach].astype(np.int64)
    return out


def count_inversions(values):
    """Number of pairs i < j with values[i] > values[j] (exact)."""
    a = np.asarray(values, dtype=np.int64).copy()
    n = a.size
    if n < 2:
        return 0
    total = 0
    block = 64
    # base case: quadratic-by-broadcast inside small blocks
    nfull = (n // block) * block
    if nfull:
        b = a[:nfull].reshape(-1, block)
        lt = b[:, :, None] > b[:, None, :]
        iu = np.triu_indices(block, k=1)
        total += int(lt[:, iu[0], iu[1]].sum(dtype=np.int64))
        b.sort(axis=1)
        a[:nfull] = b.reshape(-1)
    tail = a[nfull:]
    if tail.size > 1:
        t = tail.copy()
        for i in range(1, t.size):
            total += int((t[:i] > t[i]).sum())
        tail.sort()
    # merge levels
    width = block
    while width < n:
        lo = 0
        while lo + width < n:
            mid = lo + width
            hi = min(lo + 2 * width, n)
            left, right = a[lo:mid], a[mid:hi]
            # inversions contributed: for each r, #left elements > r
            total += int((left.size - np.searchsorted(left, right, side="right")).sum())
            a[lo:hi] = np.sort(a[lo:hi], kind="stable")
            lo = hi
        width *= 2
    return total


def complement_orientation(indptr, indices, adj_bits):
    """Transitive-orientation forcing on the (unmaterialized) complement.

    Implication classes are closed one at a time; a completed class counts as
    deleted for later ones (so "non-adjacent" on the complement side means
    G-edge or already-completed pair). Returns the packed orientation matrix
    (bit y of row x set = complement pair oriented x->y), or None when a class
    forces some pair both ways — i.e. the complement is not a comparability
    graph.
    """
    n = indptr.shape[0] - 1
    words = adj_bits.shape[1]
    done = np.zeros_like(adj_bits)
    cur = np.zeros_like(adj_bits)      # directed: row x bit y = x->y in current class
    curT = np.zeros_like(adj_bits)
    pend = np.zeros_like(adj_bits)     # same-tail expansions still owed
    pendT = np.zeros_like(adj_bits)    # same-head expansions still owed
    orient = np.zeros_like(adj_bits)
    combined = adj_bits.copy()         # adj | done

    fullmask = np.zeros(words, dtype=np.uint64)
    fullmask[: n // 64] = ~np.uint64(0)
    if n % 64:
        fullmask[n // 64] = (_ONE << np.uint64(n % 64)) - _ONE

    selfbit_word = np.arange(n) // 64
    selfbit = _ONE << (np.arange(n, dtype=np.uint64) % np.uint64(64))

    def active_row(x):
        row = ~(adj_bits[x] | done[x]) & fullmask
        row[selfbit_word[x]] &= ~selfbit[x]
        return row

    for x0 in range(n):
        while True:
            seed_row = active_row(x0) & ~cur[x0] & ~curT[x0]
            # only seed pairs {x0, y} with y > x0 (smaller ones were seeded earlier)
            w0 = x0 // 64
            seed_row[:w0] = 0
            seed_row[w0] &= ~((_ONE << np.uint64(x0 % 64 + 1)) - _ONE) \
                if x0 % 64 != 63 else np.uint64(0)
            ys = bits_to_indices(seed_row, n)
            if ys.size == 0:
                break
            y0 = int(ys[0])

            touched = {x0, y0}
            tails, heads = [x0], [y0]
            in_tail = np.zeros(n, dtype=bool)
            in_head = np.zeros(n, dtype=bool)
            in_tail[x0] = in_head[y0] = True
            cur[x0, y0 // 64] |= _ONE << np.uint64(y0 % 64)
            curT[y0, x0 // 64] |= _ONE << np.uint64(x0 % 64)
            pend[x0, y0 // 64] |= _ONE << np.uint64(y0 % 64)
            pendT[y0, x0 // 64] |= _ONE << np.uint64(x0 % 64)
            conflict = False

            while (tails or heads) and not conflict:
                if tails:
                    x = tails.pop()
                    in_tail[x] = False
                    hs = bits_to_indices(pend[x], n)
                    pend[x][:] = 0
                    if hs.size == 0:
                        continue
                    union = np.bitwise_or.reduce(combined[hs], axis=0)
                    new = union & active_row(x) & ~cur[x]
                    if not new.any():
                        continue
                    if (new & curT[x]).any():
                        conflict = True
                        break
                    zs = bits_to_indices(new, n)
                    cur[x] |= new
                    pend[x] |= new
                    if not in_tail[x]:
                        tails.append(x)
                        in_tail[x] = True
                    curT[zs, x // 64] |= selfbit[x]
                    pendT[zs, x // 64] |= selfbit[x]
                    touched.update(zs.tolist())
                    for z in zs:
                        if not in_head[z]:
                            heads.append(int(z))
                            in_head[z] = True
                else:
                    y = heads.pop()
                    in_head[y] = False
                    ts = bits_to_indices(pendT[y], n)
                    pendT[y][:] = 0
                    if ts.size == 0:
                        continue
                    union = np.bitwise_or.reduce(combined[ts], axis=0)
                    new = union & active_row(y) & ~curT[y]
                    if not new.any():
                        continue
                    if (new & cur[y]).any():
                        conflict = True
                        break
                    zs = bits_to_indices(new, n)
                    curT[y] |= new
                    pendT[y] |= new
                    if not in_head[y]:
                        heads.append(y)
                        in_head[y] = True
                    cur[zs, y // 64] |= selfbit[y]
                    pend[zs, y // 64] |= selfbit[y]
                    touched.update(zs.tolist())
                    for z in zs:
                        if not in_tail[z]:
                            tails.append(int(z))
                            in_tail[z] = True

            if conflict:
                return None
            for v in touched:
                both = cur[v] | curT[v]
                done[v] |= both
                combined[v] |= both
                orient[v] |= cur[v]
                cur[v][:] = 0
                curT[v][:] = 0
                pend[v][:] = 0
                pendT[v][:] = 0
    return orient
