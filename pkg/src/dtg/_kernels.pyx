# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: BFS levels, exact inversion counting, and the
complement-side transitive-orientation forcing. Must stay behaviourally
identical to dtg._kernels_py (the pure fallback); tests compare the two."""

import numpy as np

BACKEND = "compiled"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def build_bit_rows(n, indptr, indices):
    # packing is cheap and already vectorized; reuse the numpy version
    from . import _kernels_py
    return _kernels_py.build_bit_rows(n, indptr, indices)


def popcount_rows(bits):
    from . import _kernels_py
    return _kernels_py.popcount_rows(bits)


def bits_to_indices(row, n):
    from . import _kernels_py
    return _kernels_py.bits_to_indices(row, n)


def bfs_distances(indptr, indices, source):
    """BFS levels from `source`; -1 for unreachable vertices."""
    ip_np = np.ascontiguousarray(indptr, dtype=np.int64)
    idx_np = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const long long[::1] ip = ip_np
    cdef const int[::1] idx = idx_np
    cdef Py_ssize_t n = ip.shape[0] - 1
    out = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return out
    cdef long long[::1] dist = out
    queue_np = np.empty(n, dtype=np.int32)
    cdef int[::1] q = queue_np
    cdef Py_ssize_t head = 0, tail = 0
    cdef int u, v
    cdef long long k
    dist[source] = 0
    q[tail] = source
    tail += 1
    while head < tail:
        u = q[head]
        head += 1
        for k in range(ip[u], ip[u + 1]):
            v = idx[k]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q[tail] = v
                tail += 1
    return out


def count_inversions(values):
    """Number of pairs i < j with values[i] > values[j] (exact, Fenwick)."""
    a = np.asarray(values)
    cdef Py_ssize_t n = a.shape[0]
    if n < 2:
        return 0
    order = np.argsort(a, kind="stable")
    ranks_np = np.empty(n, dtype=np.int64)
    ranks_np[order] = np.arange(n, dtype=np.int64)
    cdef long long[::1] r = ranks_np
    tree_np = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] tree = tree_np
    cdef long long total = 0, seen_le
    cdef Py_ssize_t j
    cdef long long i
    for j in range(n):
        i = r[j] + 1
        seen_le = 0
        while i > 0:
            seen_le += tree[i]
            i -= i & (-i)
        total += j - seen_le
        i = r[j] + 1
        while i <= n:
            tree[i] += 1
            i += i & (-i)
    return int(total)


cdef inline bint _getbit(const u64[:, ::1] m, Py_ssize_t row, Py_ssize_t b) nogil:
    return (m[row, b >> 6] >> (b & 63)) & 1ULL


cdef inline void _setbit(u64[:, ::1] m, Py_ssize_t row, Py_ssize_t b) nogil:
    m[row, b >> 6] |= (<u64>1) << (b & 63)


def complement_orientation(indptr, indices, adj_bits):
    """Transitive-orientation forcing on the (unmaterialized) complement.

    Implication classes are closed one at a time; a completed class counts
    as deleted for later ones. Returns the packed orientation matrix (bit y
    of row x set = complement pair oriented x->y), or None when some class
    forces a pair both ways.
    """
    ip_np = np.ascontiguousarray(indptr, dtype=np.int64)
    idx_np = np.ascontiguousarray(indices, dtype=np.int32)
    adj_np = np.ascontiguousarray(adj_bits, dtype=np.uint64)
    cdef const long long[::1] ip = ip_np
    cdef const int[::1] idx = idx_np
    cdef const u64[:, ::1] adj = adj_np
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef Py_ssize_t words = adj_np.shape[1]

    done_np = np.zeros_like(adj_np)
    cur_np = np.zeros_like(adj_np)
    curT_np = np.zeros_like(adj_np)
    pend_np = np.zeros_like(adj_np)
    pendT_np = np.zeros_like(adj_np)
    orient_np = np.zeros_like(adj_np)
    cdef u64[:, ::1] done = done_np
    cdef u64[:, ::1] cur = cur_np
    cdef u64[:, ::1] curT = curT_np
    cdef u64[:, ::1] pend = pend_np
    cdef u64[:, ::1] pendT = pendT_np
    cdef u64[:, ::1] orient = orient_np

    flags_np = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] done_flag = flags_np
    touched_flag_np = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] touched_flag = touched_flag_np
    touched_np = np.empty(n, dtype=np.int32)
    cdef int[::1] touched = touched_np

    # explicit work stacks with bitmap spill-over so memory stays O(n^2/64)
    cdef Py_ssize_t CAP = 1 << 21
    if CAP > 4 * (n * n + 16):
        CAP = 4 * (n * n + 16)
    st_x_np = np.empty(CAP, dtype=np.int32)
    st_y_np = np.empty(CAP, dtype=np.int32)
    sh_x_np = np.empty(CAP, dtype=np.int32)
    sh_y_np = np.empty(CAP, dtype=np.int32)
    cdef int[::1] st_x = st_x_np
    cdef int[::1] st_y = st_y_np
    cdef int[::1] sh_x = sh_x_np
    cdef int[::1] sh_y = sh_y_np
    cdef Py_ssize_t st_top = 0, sh_top = 0
    cdef bint spilled = 0, conflict = 0, found

    cdef Py_ssize_t x0, y0, x, y, z, w, b, v, i, ntouched
    cdef long long k
    cdef u64 word
    cdef int nbits_last = <int>(n & 63)

    for x0 in range(n):
        while True:
            # seed: smallest active complement partner y0 > x0
            y0 = -1
            for w in range(x0 >> 6, words):
                word = ~(adj[x0, w] | done[x0, w])
                if w == (x0 >> 6):
                    if (x0 & 63) == 63:
                        word = 0
                    else:
                        word &= ~(((<u64>1) << ((x0 & 63) + 1)) - 1)
                if w == words - 1 and nbits_last != 0:
                    word &= ((<u64>1) << nbits_last) - 1
                if word != 0:
                    y0 = (w << 6) + __builtin_ctzll(word)
                    break
            if y0 < 0:
                break

            ntouched = 0
            st_top = sh_top = 0
            spilled = 0
            conflict = 0
            _setbit(cur, x0, y0)
            _setbit(curT, y0, x0)
            if not touched_flag[x0]:
                touched_flag[x0] = 1
                touched[ntouched] = <int>x0
                ntouched += 1
            if not touched_flag[y0]:
                touched_flag[y0] = 1
                touched[ntouched] = <int>y0
                ntouched += 1
            st_x[0] = <int>x0
            st_y[0] = <int>y0
            st_top = 1
            sh_x[0] = <int>x0
            sh_y[0] = <int>y0
            sh_top = 1

            while not conflict:
                if st_top > 0:
                    # same-tail expansion of pair (x, y): force x->z for
                    # z adjacent-or-done with y, with {x,z} an active pair
                    st_top -= 1
                    x = st_x[st_top]
                    y = st_y[st_top]
                    for k in range(ip[y], ip[y + 1]):
                        z = idx[k]
                        if z == x or _getbit(adj, x, z) or _getbit(done, x, z) \
                                or _getbit(cur, x, z):
                            continue
                        if _getbit(curT, x, z):
                            conflict = 1
                            break
                        _setbit(cur, x, z)
                        _setbit(curT, z, x)
                        if not touched_flag[z]:
                            touched_flag[z] = 1
                            touched[ntouched] = <int>z
                            ntouched += 1
                        if st_top < CAP:
                            st_x[st_top] = <int>x
                            st_y[st_top] = <int>z
                            st_top += 1
                        else:
                            _setbit(pend, x, z)
                            spilled = 1
                        if sh_top < CAP:
                            sh_x[sh_top] = <int>x
                            sh_y[sh_top] = <int>z
                            sh_top += 1
                        else:
                            _setbit(pendT, z, x)
                            spilled = 1
                    if conflict:
                        break
                    if done_flag[y]:
                        for w in range(words):
                            word = done[y, w]
                            while word != 0:
                                b = __builtin_ctzll(word)
                                word &= word - 1
                                z = (w << 6) + b
                                if z == x or _getbit(adj, x, z) \
                                        or _getbit(done, x, z) or _getbit(cur, x, z):
                                    continue
                                if _getbit(curT, x, z):
                                    conflict = 1
                                    break
                                _setbit(cur, x, z)
                                _setbit(curT, z, x)
                                if not touched_flag[z]:
                                    touched_flag[z] = 1
                                    touched[ntouched] = <int>z
                                    ntouched += 1
                                if st_top < CAP:
                                    st_x[st_top] = <int>x
                                    st_y[st_top] = <int>z
                                    st_top += 1
                                else:
                                    _setbit(pend, x, z)
                                    spilled = 1
                                if sh_top < CAP:
                                    sh_x[sh_top] = <int>x
                                    sh_y[sh_top] = <int>z
                                    sh_top += 1
                                else:
                                    _setbit(pendT, z, x)
                                    spilled = 1
                            if conflict:
                                break
                        if conflict:
                            break
                elif sh_top > 0:
                    # same-head expansion of pair (x, y): force z->y for
                    # z adjacent-or-done with x, with {z,y} an active pair
                    sh_top -= 1
                    x = sh_x[sh_top]
                    y = sh_y[sh_top]
                    for k in range(ip[x], ip[x + 1]):
                        z = idx[k]
                        if z == y or _getbit(adj, y, z) or _getbit(done, y, z) \
                                or _getbit(curT, y, z):
                            continue
                        if _getbit(cur, y, z):
                            conflict = 1
                            break
                        _setbit(curT, y, z)
                        _setbit(cur, z, y)
                        if not touched_flag[z]:
                            touched_flag[z] = 1
                            touched[ntouched] = <int>z
                            ntouched += 1
                        if st_top < CAP:
                            st_x[st_top] = <int>z
                            st_y[st_top] = <int>y
                            st_top += 1
                        else:
                            _setbit(pend, z, y)
                            spilled = 1
                        if sh_top < CAP:
                            sh_x[sh_top] = <int>z
                            sh_y[sh_top] = <int>y
                            sh_top += 1
                        else:
                            _setbit(pendT, y, z)
                            spilled = 1
                    if conflict:
                        break
                    if done_flag[x]:
                        for w in range(words):
                            word = done[x, w]
                            while word != 0:
                                b = __builtin_ctzll(word)
                                word &= word - 1
                                z = (w << 6) + b
                                if z == y or _getbit(adj, y, z) \
                                        or _getbit(done, y, z) or _getbit(curT, y, z):
                                    continue
                                if _getbit(cur, y, z):
                                    conflict = 1
                                    break
                                _setbit(curT, y, z)
                                _setbit(cur, z, y)
                                if not touched_flag[z]:
                                    touched_flag[z] = 1
                                    touched[ntouched] = <int>z
                                    ntouched += 1
                                if st_top < CAP:
                                    st_x[st_top] = <int>z
                                    st_y[st_top] = <int>y
                                    st_top += 1
                                else:
                                    _setbit(pend, z, y)
                                    spilled = 1
                                if sh_top < CAP:
                                    sh_x[sh_top] = <int>z
                                    sh_y[sh_top] = <int>y
                                    sh_top += 1
                                else:
                                    _setbit(pendT, y, z)
                                    spilled = 1
                            if conflict:
                                break
                        if conflict:
                            break
                elif spilled:
                    # refill the stacks from the spill bitmaps
                    found = 0
                    for v in range(n):
                        for w in range(words):
                            word = pend[v, w]
                            while word != 0 and st_top < CAP:
                                b = __builtin_ctzll(word)
                                word &= word - 1
                                st_x[st_top] = <int>v
                                st_y[st_top] = <int>((w << 6) + b)
                                st_top += 1
                                found = 1
                            pend[v, w] = word
                            word = pendT[v, w]
                            while word != 0 and sh_top < CAP:
                                b = __builtin_ctzll(word)
                                word &= word - 1
                                sh_x[sh_top] = <int>((w << 6) + b)
                                sh_y[sh_top] = <int>v
                                sh_top += 1
                                found = 1
                            pendT[v, w] = word
                    if not found:
                        spilled = 0
                        break
                else:
                    break

            if conflict:
                return None
            for i in range(ntouched):
                v = touched[i]
                for w in range(words):
                    word = cur[v, w] | curT[v, w]
                    done[v, w] |= word
                    orient[v, w] |= cur[v, w]
                    cur[v, w] = 0
                    curT[v, w] = 0
                    pend[v, w] = 0
                    pendT[v, w] = 0
                done_flag[v] = 1
                touched_flag[v] = 0
    return orient_np
