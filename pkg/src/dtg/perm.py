"""Linear orders, transitive-orientation forcing, and permutation diagrams.

The recurring pattern: candidate orders come from whatever construction is
fast (outdegree sorts, BFS sweeps), and are accepted only after
forced_partner_order certifies that the pair of orders really defines the
graph. Soundness always rests on that final check, never on the heuristic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from ._backend import kernels
from .errors import ContractViolation, InternalContradiction
from .graph import Bipartition, Graph, components, induced_subgraph

# Above this order the general forcing path (which keeps several n x n bit
# matrices) is refused; the bipartite construction has no such cap.
GENERAL_ORDER_CAP = 20480

_ONE = np.uint64(1)


class LinearOrder:
    """A permutation of 0..n-1, read as left-to-right positions."""

    __slots__ = ("order", "_pos")

    def __init__(self, order):
        arr = np.array(order, dtype=np.int64).reshape(-1)
        if arr.size:
            chk = np.sort(arr)
            if chk[0] != 0 or chk[-1] != arr.size - 1 or \
                    (np.diff(chk) != 1).any():
                raise ContractViolation("not a permutation of 0..n-1")
        arr.flags.writeable = False
        self.order = arr
        self._pos = None

    @property
    def pos(self):
        if self._pos is None:
            p = np.empty(self.order.size, dtype=np.int64)
            p[self.order] = np.arange(self.order.size)
            p.flags.writeable = False
            self._pos = p
        return self._pos

    def rev(self):
        return LinearOrder(self.order[::-1])

    def before(self, u, v):
        return bool(self.pos[u] < self.pos[v])

    def __len__(self):
        return int(self.order.size)

    def __getitem__(self, i):
        return int(self.order[i])

    def __iter__(self):
        return iter(self.order.tolist())

    def __eq__(self, other):
        if not isinstance(other, LinearOrder):
            return NotImplemented
        return np.array_equal(self.order, other.order)

    def __hash__(self):
        return hash(self.order.tobytes())

    def __repr__(self):
        body = self.order.tolist()
        if len(body) > 12:
            return f"LinearOrder({body[:12]}...n={len(body)})"
        return f"LinearOrder({body})"


class Orientation:
    """One direction per edge of some host graph."""

    __slots__ = ("n", "tails", "heads", "_lookup")

    def __init__(self, n, tails, heads):
        self.n = int(n)
        self.tails = np.asarray(tails, dtype=np.int64)
        self.heads = np.asarray(heads, dtype=np.int64)
        if self.tails.shape != self.heads.shape:
            raise ContractViolation("tail/head arrays disagree")
        self._lookup = None

    def as_set(self):
        if self._lookup is None:
            self._lookup = frozenset(zip(self.tails.tolist(), self.heads.tolist()))
        return self._lookup

    def direction(self, u, v):
        """(u, v) or (v, u) as oriented, or None if the pair is not an edge."""
        s = self.as_set()
        if (u, v) in s:
            return (u, v)
        if (v, u) in s:
            return (v, u)
        return None

    def __len__(self):
        return int(self.tails.size)

    def __repr__(self):
        return f"Orientation(n={self.n}, edges={self.tails.size})"


# -- packed-row helpers -------------------------------------------------------

def _bit(mat, r, c):
    return bool((mat[r, c >> 6] >> np.uint64(c & 63)) & _ONE)


def _setbit(mat, r, c):
    mat[r, c >> 6] |= _ONE << np.uint64(c & 63)


def _test_bits(mat, r, idx):
    return ((mat[r, idx >> 6] >> (idx & 63).astype(np.uint64)) & _ONE).astype(bool)


def _set_bits(mat, r, idx):
    np.bitwise_or.at(mat[r], idx >> 6, _ONE << (idx & 63).astype(np.uint64))


def _graph_bits(g: Graph):
    if g._bits is not None:
        return g._bits
    return kernels.build_bit_rows(g.n, g.indptr, g.indices)


# -- the forced partner order -------------------------------------------------

def forced_partner_order(g: Graph, order1) -> "LinearOrder | None":
    """The unique candidate partner of ``order1``, or None.

    For u != v the forced relation puts u before v iff (uv not an edge and u
    earlier in order1) or (uv an edge and v earlier). The relation is a valid
    linear order defining g exactly when: the induced ranks are all distinct,
    every edge is inverted between the two orders, and the total inversion
    count equals m (so non-edges are never inverted). All three are checked.
    """
    o1 = order1 if isinstance(order1, LinearOrder) else LinearOrder(order1)
    if len(o1) != g.n:
        raise ContractViolation("order length differs from vertex count")
    n = g.n
    pos1 = o1.pos
    eu, ev = g.edges()
    if eu.size:
        u_first = pos1[eu] < pos1[ev]
        nb_before = np.bincount(
            np.concatenate([ev[u_first], eu[~u_first]]), minlength=n)
    else:
        nb_before = np.zeros(n, dtype=np.int64)
    rank2 = pos1 + g.degrees() - 2 * nb_before

    if n and not np.array_equal(np.sort(rank2), np.arange(n)):
        return None
    if eu.size:
        inverted = (pos1[eu] < pos1[ev]) != (rank2[eu] < rank2[ev])
        if not inverted.all():
            return None
    if kernels.count_inversions(rank2[o1.order]) != g.m:
        return None
    # rank2[v] is the position of v, so order2[rank2[v]] = v
    order2 = np.empty(n, dtype=np.int64)
    order2[rank2] = np.arange(n)
    return LinearOrder(order2)


# -- implication-class forcing ------------------------------------------------

def _gside_orientation(g: Graph, adj_bits):
    """Gamma-forcing over the edges of g with completed classes deleted.

    Returns the packed orientation matrix, or None on a forcing conflict
    (g is then not a comparability graph).
    """
    n = g.n
    words = adj_bits.shape[1]
    done = np.zeros((n, words), dtype=np.uint64)
    cur = np.zeros_like(done)
    curT = np.zeros_like(done)
    orient = np.zeros_like(done)

    for x0 in range(n):
        row = g.neighbors(x0)
        for y0 in row[row > x0]:
            y0 = int(y0)
            if _bit(done, x0, y0):
                continue
            _setbit(cur, x0, y0)
            _setbit(curT, y0, x0)
            tail_work = [(x0, y0)]
            head_work = [(x0, y0)]
            touched = {x0, y0}
            conflict = False
            while (tail_work or head_work) and not conflict:
                if tail_work:
                    # from (x, y) force (x, z): xz an active edge, yz
                    # non-adjacent once completed classes are deleted
                    x, y = tail_work.pop()
                    cand = g.neighbors(x).astype(np.int64)
                    keep = ~_test_bits(done, x, cand) & ~_test_bits(cur, x, cand)
                    keep &= ~_test_bits(adj_bits, y, cand) | _test_bits(done, y, cand)
                    new = cand[keep]
                    if new.size == 0:
                        continue
                    if _test_bits(curT, x, new).any():
                        conflict = True
                        break
                    _set_bits(cur, x, new)
                    curT[new, x >> 6] |= _ONE << np.uint64(x & 63)
                    touched.update(new.tolist())
                    for z in new.tolist():
                        tail_work.append((x, z))
                        head_work.append((x, z))
                else:
                    # from (x, y) force (z, y): zy an active edge, xz
                    # non-adjacent in the current (shrunken) graph
                    x, y = head_work.pop()
                    cand = g.neighbors(y).astype(np.int64)
                    keep = ~_test_bits(done, y, cand) & ~_test_bits(curT, y, cand)
                    keep &= ~_test_bits(adj_bits, x, cand) | _test_bits(done, x, cand)
                    new = cand[keep]
                    if new.size == 0:
                        continue
                    if _test_bits(cur, y, new).any():
                        conflict = True
                        break
                    _set_bits(curT, y, new)
                    cur[new, y >> 6] |= _ONE << np.uint64(y & 63)
                    touched.update(new.tolist())
                    for z in new.tolist():
                        tail_work.append((z, y))
                        head_work.append((z, y))
            if conflict:
                return None
            for v in touched:
                both = cur[v] | curT[v]
                done[v] |= both
                orient[v] |= cur[v]
                cur[v][:] = 0
                curT[v][:] = 0
    return orient


def _orientation_is_transitive(orient, n):
    for a in range(n):
        outs = kernels.bits_to_indices(orient[a], n)
        if outs.size == 0:
            continue
        reach2 = np.bitwise_or.reduce(orient[outs], axis=0)
        if (reach2 & ~orient[a]).any():
            return False
    return True


def _orientation_from_bits(orient, n):
    tails, heads = [], []
    for a in range(n):
        hs = kernels.bits_to_indices(orient[a], n)
        tails.append(np.full(hs.size, a, dtype=np.int64))
        heads.append(hs.astype(np.int64))
    if not tails:
        return Orientation(n, [], [])
    return Orientation(n, np.concatenate(tails), np.concatenate(heads))


def transitive_orientation(g: Graph) -> "Orientation | None":
    """A certified transitive orientation of g, or None.

    Forcing alone is already complete, but the transitivity of the result is
    re-verified directly (O(sum deg^2) word ops), so an accepted answer never
    depends on the forcing argument being right.
    """
    if g.n > GENERAL_ORDER_CAP:
        raise ContractViolation(
            f"transitive orientation capped at n <= {GENERAL_ORDER_CAP}")
    bits = _graph_bits(g)
    orient = _gside_orientation(g, bits)
    if orient is None:
        return None
    if not _orientation_is_transitive(orient, g.n):
        return None
    return _orientation_from_bits(orient, g.n)


def permutation_orderings(g: Graph):
    """(order1, order2) defining g, or None if g is not a permutation graph.

    Transitive orientations of g and of its complement are merged into the
    two transitive tournaments whose (unique) topological orders are read off
    by outdegree; the pair is then certified by forced_partner_order. The
    complement is never materialized.
    """
    n = g.n
    if n > GENERAL_ORDER_CAP:
        raise ContractViolation(
            f"general permutation recognition capped at n <= {GENERAL_ORDER_CAP}")
    if n == 0:
        return LinearOrder([]), LinearOrder([])
    bits = _graph_bits(g)
    orient = _gside_orientation(g, bits)
    if orient is None:
        return None
    orient_c = kernels.complement_orientation(g.indptr, g.indices, np.array(bits))
    if orient_c is None:
        return None
    outd = kernels.popcount_rows(orient)
    outd_c = kernels.popcount_rows(orient_c)
    deg = g.degrees()
    # D ∪ D̄ is a transitive tournament; outdegree n-1 comes first
    o1 = LinearOrder(np.lexsort((np.arange(n), -(outd + outd_c))))
    o2 = LinearOrder(np.lexsort((np.arange(n), -((deg - outd) + outd_c))))
    forced = forced_partner_order(g, o1)
    if forced is None or forced != o2:
        return None
    return o1, o2


# -- bipartite fast path ------------------------------------------------------

def _component_sweep_orders(gc: Graph, side, flip_key):
    """Candidate side orders for one connected bipartite component.

    Double BFS picks a diameter-ish endpoint pair; vertices are keyed by the
    distance difference, then two rounds of refinement by the positions of
    extreme neighbors on the opposite side settle ties.
    """
    n = gc.n
    d0 = kernels.bfs_distances(gc.indptr, gc.indices, 0)
    s = int(np.argmax(d0))
    ds = kernels.bfs_distances(gc.indptr, gc.indices, s)
    t = int(np.argmax(ds))
    dt = kernels.bfs_distances(gc.indptr, gc.indices, t)
    key = ds - dt
    if flip_key:
        key = -key

    X = np.flatnonzero(side == 0)
    Y = np.flatnonzero(side == 1)
    eu, ev = gc.edges()
    # both directions of every edge, so .at reductions see every endpoint
    all_u = np.concatenate([eu, ev])
    all_v = np.concatenate([ev, eu])

    pos = np.zeros(n, dtype=np.int64)
    pos[X[np.lexsort((X, key[X]))]] = np.arange(X.size)
    pos[Y[np.lexsort((Y, key[Y]))]] = np.arange(Y.size)

    big = np.int64(n + 1)
    for _ in range(3):
        for mine in (X, Y):
            mn = np.full(n, big)
            mx = np.full(n, -1, dtype=np.int64)
            np.minimum.at(mn, all_u, pos[all_v])
            np.maximum.at(mx, all_u, pos[all_v])
            # neighbor extremes outrank the seed key: the double-BFS key can
            # misorder the far corner pair when argmax breaks its tie
            order = mine[np.lexsort((mine, key[mine], mx[mine], mn[mine]))]
            pos[order] = np.arange(order.size)
    return pos


def _merge_side_orders(gc: Graph, side, pos):
    """Interleave the side orders into a candidate global order1.

    X vertices keep their side positions; a Y vertex slots in right after its
    last X neighbor (ties after it resolved by Y position).
    """
    eu, ev = gc.edges()
    all_u = np.concatenate([eu, ev])
    all_v = np.concatenate([ev, eu])
    mx = np.full(gc.n, -1, dtype=np.int64)
    np.maximum.at(mx, all_u, pos[all_v])
    anchor = np.where(side == 1, mx, pos)
    return np.lexsort((pos, side.astype(np.int64), anchor))


def bipartite_permutation_orderings(g: Graph, bip: Bipartition):
    """Near-linear ordering construction for bipartite permutation graphs.

    Per component a BFS sweep proposes side orders which are merged and then
    certified globally by forced_partner_order; components are laid out
    left-to-right in component order on both lines. A failed certification
    retries the sweep with the opposite key sign and finally falls back to
    the general forcing path, so a reject is always trustworthy.
    """
    if not isinstance(bip, Bipartition) or not bip.is_valid_for(g):
        raise ContractViolation("bipartition does not fit the graph")
    n = g.n
    if n == 0:
        return LinearOrder([]), LinearOrder([])

    subs = []
    for comp in components(g):
        gc, back = induced_subgraph(g, comp)
        subs.append((gc, back, np.asarray(bip.side[back], dtype=np.int8)))

    for flip_key in (False, True):
        parts1 = []
        for gc, back, side in subs:
            if gc.n == 1:
                parts1.append(back)
                continue
            pos = _component_sweep_orders(gc, side, flip_key)
            parts1.append(back[_merge_side_orders(gc, side, pos)])
        o1 = LinearOrder(np.concatenate(parts1))
        forced = forced_partner_order(g, o1)
        if forced is not None:
            return o1, forced
    if n <= GENERAL_ORDER_CAP:
        return permutation_orderings(g)
    raise ContractViolation(
        "sweep construction failed and the general fallback is capped at "
        f"n <= {GENERAL_ORDER_CAP}")


# -- diagrams -----------------------------------------------------------------

def _coord_array(values):
    """1-D int64 array, or object array of python ints past the 64-bit range.

    Anything non-integral (floats especially, which np.asarray would silently
    truncate) is a contract error: numerators are exact by definition.
    """
    arr = np.asarray(values)
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=np.int64)
    if arr.dtype.kind in ("i", "u"):
        return arr.astype(np.int64, copy=False)
    if arr.dtype == object:
        if not all(isinstance(x, (int, np.integer)) and not isinstance(x, bool)
                   for x in arr.reshape(-1).tolist()):
            raise ContractViolation("numerators must be integers")
        return arr
    raise ContractViolation("numerators must be integers, got dtype %s" % arr.dtype)


class PermutationDiagram:
    """Exact rational coordinates on the two parallel lines.

    Stored as integer numerators over one common denominator; values on each
    line are pairwise distinct (checked).
    """

    __slots__ = ("n", "num1", "num2", "den")

    def __init__(self, num1, num2, den=1):
        self.num1 = _coord_array(num1)
        self.num2 = _coord_array(num2)
        self.den = int(den)
        if self.den <= 0:
            raise ContractViolation("denominator must be positive")
        if self.num1.shape != self.num2.shape or self.num1.ndim != 1:
            raise ContractViolation("coordinate arrays disagree")
        self.n = int(self.num1.size)
        for nums in (self.num1, self.num2):
            if self.n > 1:
                s = np.sort(nums)
                if (s[1:] == s[:-1]).any():
                    raise ContractViolation("duplicate coordinate on a line")

    def x1(self, v):
        return Fraction(int(self.num1[v]), self.den)

    def x2(self, v):
        return Fraction(int(self.num2[v]), self.den)

    def orders(self):
        return (LinearOrder(np.argsort(self.num1, kind="stable")),
                LinearOrder(np.argsort(self.num2, kind="stable")))

    def shifted(self, delta):
        """New diagram with both coordinates moved by the rational delta."""
        d = Fraction(delta)
        den = self.den * d.denominator
        off = d.numerator * self.den
        num1 = [int(a) * d.denominator + off for a in self.num1]
        num2 = [int(a) * d.denominator + off for a in self.num2]
        return PermutationDiagram(num1, num2, den)

    def to_text(self):
        lines = []
        for v in range(self.n):
            a, b = self.x1(v), self.x2(v)
            lines.append(f"{v} {a.numerator}/{a.denominator} "
                         f"{b.numerator}/{b.denominator}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __eq__(self, other):
        if not isinstance(other, PermutationDiagram):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(self.x1(v) == other.x1(v) and self.x2(v) == other.x2(v)
                   for v in range(self.n))

    def __repr__(self):
        return f"PermutationDiagram(n={self.n}, den={self.den})"


def diagram_from_text(text: str) -> PermutationDiagram:
    from .errors import GraphParseError

    rows = {}
    for k, raw in enumerate(text.split("\n")):
        raw = raw.strip()
        if not raw:
            continue
        parts = raw.split()
        if len(parts) != 3:
            raise GraphParseError(f"line {k + 1}: expected 'v x1 x2'")
        try:
            v = int(parts[0])
            a = Fraction(parts[1])
            b = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise GraphParseError(f"line {k + 1}: bad rational") from None
        if v in rows:
            raise GraphParseError(f"line {k + 1}: duplicate vertex {v}")
        rows[v] = (a, b)
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise GraphParseError("vertex labels must be 0..n-1")
    den = 1
    for a, b in rows.values():
        den = den * a.denominator // gcd(den, a.denominator)
        den = den * b.denominator // gcd(den, b.denominator)
    num1 = [int(rows[v][0] * den) for v in range(n)]
    num2 = [int(rows[v][1] * den) for v in range(n)]
    return PermutationDiagram(num1, num2, den)


def diagram_from_orderings(order1, order2) -> PermutationDiagram:
    o1 = order1 if isinstance(order1, LinearOrder) else LinearOrder(order1)
    o2 = order2 if isinstance(order2, LinearOrder) else LinearOrder(order2)
    if len(o1) != len(o2):
        raise ContractViolation("orders are on different vertex sets")
    return PermutationDiagram(o1.pos.copy(), o2.pos.copy(), 1)


def graph_from_diagram(diag: PermutationDiagram) -> Graph:
    """Edges are the pairs whose segments cross (exact comparisons)."""
    n = diag.n
    r1 = np.empty(n, dtype=np.int64)
    r1[np.argsort(diag.num1, kind="stable")] = np.arange(n)
    r2 = np.empty(n, dtype=np.int64)
    r2[np.argsort(diag.num2, kind="stable")] = np.arange(n)
    us, vs = [], []
    chunk = 512
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        rows = np.arange(lo, hi)
        cross = ((r1[rows][:, None] < r1[None, :])
                 != (r2[rows][:, None] < r2[None, :]))
        cross &= rows[:, None] < np.arange(n)[None, :]
        iu, iv = np.nonzero(cross)
        us.append(rows[iu])
        vs.append(iv)
    if not us:
        return Graph(n)
    return Graph(n, np.column_stack([np.concatenate(us), np.concatenate(vs)]))


def unit_slope_diagram(g: Graph, bip: Bipartition, order1, order2) -> PermutationDiagram:
    """Diagram with x2 = x1 + 1 on side X and x2 = x1 - 1 on side Y.

    Coordinates are multiples of eps = 1/(2n). In eps units the system is:
    consecutive vertices on either line differ by >= 1, and x2 = x1 +- 2n.
    Line-2 constraints between crossing pairs point backward along order1,
    so the longest-path relaxation is iterated (Bellman-Ford over the two
    chains, sweeping in order1) until a full sweep changes nothing; values
    only ratchet upward, and more sweeps than vertices would mean a positive
    cycle, i.e. no unit-slope diagram is consistent with the given orders.
    Components are separated by steps of 4n+1 units so that blocks stay
    strictly outside each other's crossing windows. The result is certified
    against the graph before it is returned.
    """
    o1 = order1 if isinstance(order1, LinearOrder) else LinearOrder(order1)
    o2 = order2 if isinstance(order2, LinearOrder) else LinearOrder(order2)
    n = g.n
    if len(o1) != n or len(o2) != n:
        raise ContractViolation("order length differs from vertex count")
    if not isinstance(bip, Bipartition) or not bip.is_valid_for(g):
        raise ContractViolation("bipartition does not fit the graph")
    if n == 0:
        return PermutationDiagram([], [], 1)

    forced = forced_partner_order(g, o1)
    if forced is None or forced != o2:
        raise InternalContradiction("the two orders do not define the graph")
    cid = np.empty(n, dtype=np.int64)
    for k, comp in enumerate(components(g)):
        cid[comp] = k
        if comp.size > 1:
            first = int(comp[np.argmin(o1.pos[comp])])
            if bip.side[first] != 0:
                raise InternalContradiction(
                    "component starts on the Y side in order1")

    two_n = 2 * n
    s_units = np.where(bip.side == 0, two_n, -two_n).astype(np.int64)
    pos1 = o1.pos

    # line-2 predecessor of each vertex (-1 for the first one on line 2)
    p2src = np.full(n, -1, dtype=np.int64)
    seq2 = o2.order
    p2src[seq2[1:]] = seq2[:-1]

    order_list = o1.order.tolist()
    p2_list = p2src.tolist()
    s_list = s_units.tolist()
    cid_list = cid.tolist()
    gap = 4 * n + 1
    t = [0] * n
    for _sweep in range(n + 2):
        changed = False
        prev_t = None
        prev_c = -1
        for v in order_list:
            c = cid_list[v]
            val = 0 if prev_t is None else prev_t + (1 if c == prev_c else gap)
            u = p2_list[v]
            if u >= 0:
                need = t[u] + s_list[u] - s_list[v] + 1
                if need > val:
                    val = need
            if val > t[v]:
                t[v] = val
                changed = True
            prev_t = t[v]
            prev_c = c
        if not changed:
            break
    else:
        raise InternalContradiction(
            "coordinate constraints do not stabilize")

    num1 = np.array(t, dtype=np.int64)
    num2 = num1 + s_units
    if (np.diff(num2[seq2]) <= 0).any():
        raise InternalContradiction("line-2 order not realized")
    _check_unit_slope_graph(g, bip, num1, two_n)
    return PermutationDiagram(num1, num2, 2 * n)


def _check_unit_slope_graph(g, bip, num1, two_n):
    """Certify that the unit-slope coordinates reproduce g exactly.

    With slopes fixed, xy is an edge iff 0 < x1(y) - x1(x) < 2 (in units:
    4n), so per X vertex the neighbor set is a window in the sorted Y
    coordinates; window sizes plus per-edge membership give set equality.
    """
    X = bip.X
    Y = bip.Y
    ynum = np.sort(num1[Y])
    lo = np.searchsorted(ynum, num1[X], side="right")
    hi = np.searchsorted(ynum, num1[X] + 2 * two_n, side="left")
    if not np.array_equal(hi - lo, g.degrees()[X]):
        raise InternalContradiction("unit-slope windows disagree with degrees")
    eu, ev = g.edges()
    if eu.size:
        xe = np.where(bip.side[eu] == 0, eu, ev)
        ye = np.where(bip.side[eu] == 0, ev, eu)
        d = num1[ye] - num1[xe]
        if (d <= 0).any() or (d >= 2 * two_n).any():
            raise InternalContradiction("an edge escapes its unit-slope window")


def neighborhood_equivalent(g: Graph, order_a, order_b) -> bool:
    """True iff the i-th vertices of the two orders always share a neighborhood."""
    a = order_a.order if isinstance(order_a, LinearOrder) else np.asarray(order_a)
    b = order_b.order if isinstance(order_b, LinearOrder) else np.asarray(order_b)
    if a.size != g.n or b.size != g.n:
        raise ContractViolation("order length differs from vertex count")
    for i in range(g.n):
        if not np.array_equal(g.neighbors(int(a[i])), g.neighbors(int(b[i]))):
            return False
    return True
