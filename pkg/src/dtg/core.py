"""Double-threshold certificates and the recognition pipeline.

A weight certificate assigns every vertex an exact rational weight and fixes
two rational bounds (lb, ub); the certified graph has uv as an edge iff
lb <= w(u) + w(v) <= ub.  Weights are stored as integer numerators over one
common denominator so that every comparison against the bounds is integer
arithmetic; floats never enter a certificate.

The recognition pipeline handles bipartite components through unit-slope
diagrams and routes the (at most one) non-bipartite component through the
mid-weight-clique construction: efficient maximum clique, auxiliary graph,
symmetric orderings, and weight extraction.  Every accepted certificate is
re-verified against the input graph before it is returned.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractViolation, InternalContradiction
from .graph import (Graph, Bipartition, components, bipartition,
                    induced_subgraph, is_clique)
from .perm import (LinearOrder, PermutationDiagram, _coord_array,
                   forced_partner_order, permutation_orderings,
                   bipartite_permutation_orderings, unit_slope_diagram)

# Above this size the verifier switches from the literal pair scan to the
# sorted-window formulation (same result, first-failing-pair recovered on
# demand); the windows are what make million-vertex certificates checkable.
QUAD_VERIFY_MAX_N = 1500

# Exact lexicographically-smallest tie-breaking for the efficient clique is
# quadratic per candidate; above this cap the DP's deterministic parent
# reconstruction is used instead (any efficient maximum clique is valid).
LEX_CLIQUE_MAX_N = 256

# Reject witnesses come from the induced-pattern scan, which is worth running
# only on small inputs; absence of a witness is never an error.
REJECT_WITNESS_MAX_N = 128

_INT64_GUARD = 1 << 61


def _as_fraction(value):
    if isinstance(value, float):
        raise ContractViolation("certificates are exact; got a float")
    return Fraction(value)


def _fmt(fr):
    return str(fr.numerator) if fr.denominator == 1 else (
        "%d/%d" % (fr.numerator, fr.denominator))


class WeightCertificate:
    """Vertex weights (numerators over one positive denominator) plus bounds."""

    __slots__ = ("nums", "den", "lb", "ub", "n")

    def __init__(self, nums, den, lb, ub):
        self.nums = _coord_array(nums)
        self.den = int(den)
        if self.den <= 0:
            raise ContractViolation("denominator must be positive")
        self.lb = _as_fraction(lb)
        self.ub = _as_fraction(ub)
        self.n = int(self.nums.size)

    @classmethod
    def from_weights(cls, weights, lb, ub):
        ws = [_as_fraction(w) for w in weights]
        den = math.lcm(*(w.denominator for w in ws)) if ws else 1
        return cls([w.numerator * (den // w.denominator) for w in ws],
                   den, lb, ub)

    def weight(self, v):
        return Fraction(int(self.nums[v]), self.den)

    def weights(self):
        return [Fraction(int(a), self.den) for a in self.nums]

    def mid_set(self):
        """Vertices with lb/2 <= w(v) <= ub/2, as a sorted array."""
        lo_num, lo_den = self.lb.numerator, self.lb.denominator
        hi_num, hi_den = self.ub.numerator, self.ub.denominator
        out = [v for v in range(self.n)
               if lo_num * self.den <= 2 * int(self.nums[v]) * lo_den
               and 2 * int(self.nums[v]) * hi_den <= hi_num * self.den]
        return np.asarray(out, dtype=np.int64)

    def to_json_dict(self):
        return {"weights": {str(v): _fmt(self.weight(v)) for v in range(self.n)},
                "lb": _fmt(self.lb), "ub": _fmt(self.ub)}

    def to_json(self):
        import json
        return json.dumps(self.to_json_dict(), indent=1)

    @classmethod
    def from_json_dict(cls, data):
        try:
            raw = data["weights"]
            lb, ub = Fraction(data["lb"]), Fraction(data["ub"])
            keys = sorted(int(k) for k in raw)
            ws = [Fraction(raw[str(v)]) for v in keys]
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ContractViolation("malformed certificate: %s" % exc) from None
        if keys != list(range(len(keys))):
            raise ContractViolation("certificate vertices must be 0..n-1")
        return cls.from_weights(ws, lb, ub)

    @classmethod
    def from_json(cls, text):
        import json
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise ContractViolation("certificate is not valid JSON: %s" % exc) from None
        return cls.from_json_dict(data)

    def __eq__(self, other):
        if not isinstance(other, WeightCertificate):
            return NotImplemented
        if self.n != other.n or self.lb != other.lb or self.ub != other.ub:
            return False
        return all(int(self.nums[v]) * other.den == int(other.nums[v]) * self.den
                   for v in range(self.n))

    def __hash__(self):
        return hash((self.n, self.lb, self.ub,
                     tuple(Fraction(int(a), self.den) for a in self.nums)))

    def __repr__(self):
        return "WeightCertificate(n=%d, lb=%s, ub=%s)" % (
            self.n, self.lb, self.ub)


def _int_view(cert):
    """Weights and bounds on one integer scale.

    Returns (W, lbi, ubi, fast) where fast means W is an int64 ndarray with
    enough headroom that pair sums cannot overflow; otherwise W is a list of
    python ints and the caller must stay in exact big-int arithmetic.
    """
    D = math.lcm(cert.den, cert.lb.denominator, cert.ub.denominator)
    k = D // cert.den
    lbi = cert.lb.numerator * (D // cert.lb.denominator)
    ubi = cert.ub.numerator * (D // cert.ub.denominator)
    vals = [int(a) * k for a in cert.nums]
    bound = max((abs(x) for x in vals), default=0)
    if max(bound, abs(lbi), abs(ubi)) < _INT64_GUARD:
        return np.asarray(vals, dtype=np.int64), lbi, ubi, True
    return vals, lbi, ubi, False


def _pairs_in_range(W, lbi, ubi, fast):
    """All unordered pairs u < v with lbi <= W[u]+W[v] <= ubi (None = open)."""
    n = len(W)
    if n == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if fast:
        order = np.argsort(W, kind="stable")
        SW = W[order]
        lo = (np.searchsorted(SW, lbi - W, side="left")
              if lbi is not None else np.zeros(n, dtype=np.int64))
        hi = (np.searchsorted(SW, ubi - W, side="right")
              if ubi is not None else np.full(n, n, dtype=np.int64))
        us, vs = [], []
        for u in range(n):
            ids = order[lo[u]:hi[u]]
            ids = ids[ids > u]
            if ids.size:
                us.append(np.full(ids.size, u, dtype=np.int64))
                vs.append(ids)
        if not us:
            return np.zeros((0, 2), dtype=np.int64)
        return np.column_stack([np.concatenate(us), np.concatenate(vs)])
    import bisect
    pairs = sorted(range(n), key=W.__getitem__)
    SW = [W[i] for i in pairs]
    out = []
    for u in range(n):
        a = bisect.bisect_left(SW, lbi - W[u]) if lbi is not None else 0
        b = bisect.bisect_right(SW, ubi - W[u]) if ubi is not None else n
        out.extend((u, v) for v in pairs[a:b] if v > u)
    return np.asarray(out, dtype=np.int64).reshape(-1, 2)


def graph_from_weights(cert):
    """The graph defined by the certificate: uv an edge iff lb <= sum <= ub."""
    W, lbi, ubi, fast = _int_view(cert)
    return Graph(cert.n, _pairs_in_range(W, lbi, ubi, fast))


@dataclass(frozen=True)
class CertificateCheck:
    """Verifier outcome; truthy iff the certificate defines the graph."""

    ok: bool
    failing_pair: "tuple | None" = None

    def __bool__(self):
        return self.ok


def _adjacency_bools(g):
    bits = g._bits
    return np.unpackbits(bits.view(np.uint8), axis=1,
                         bitorder="little")[:, :g.n].astype(bool)


def _window_verify(g, cert):
    """Degree-counting verification, O((n+m) log n) on the int64 path.

    For each u the admissible partners form a window of the weight-sorted
    vertex order; the window size (minus u itself when 2w(u) is in range)
    must equal deg(u), and every actual edge must have its sum in range.
    Both together force the neighbour set to equal the window exactly.
    """
    n = g.n
    W, lbi, ubi, fast = _int_view(cert)
    if fast:
        order = np.argsort(W, kind="stable")
        SW = W[order]
        lo = np.searchsorted(SW, lbi - W, side="left")
        hi = np.searchsorted(SW, ubi - W, side="right")
        selfin = (2 * W >= lbi) & (2 * W <= ubi)
        counts = hi - lo - selfin.astype(np.int64)
        eu, ev = g.edges()
        sums = W[eu] + W[ev]
        if (counts == g.degrees()).all() and \
                (g.m == 0 or ((sums >= lbi) & (sums <= ubi)).all()):
            return CertificateCheck(True)
        for u in range(n):
            win = order[lo[u]:hi[u]]
            win = np.sort(win[win != u])
            nb = np.sort(g.neighbors(u))
            if win.size != nb.size or not np.array_equal(win, nb):
                bad = np.setxor1d(win, nb)
                return CertificateCheck(False, (u, int(bad.min())))
        raise InternalContradiction("window mismatch vanished on rescan")
    import bisect
    pairs = sorted(range(n), key=W.__getitem__)
    SW = [W[i] for i in pairs]
    for u in range(n):
        a = bisect.bisect_left(SW, lbi - W[u])
        b = bisect.bisect_right(SW, ubi - W[u])
        win = sorted(v for v in pairs[a:b] if v != u)
        nb = sorted(g.neighbors(u).tolist())
        if win != nb:
            bad = set(win).symmetric_difference(nb)
            return CertificateCheck(False, (u, min(bad)))
    return CertificateCheck(True)


def verify_certificate(g, cert):
    """Exact check that the certificate defines exactly this graph.

    Returns a truthy CertificateCheck on success; on failure the first
    mismatching pair (u, v), u < v in lexicographic order, is attached.
    Vertex-set mismatch is a contract violation, not a False.
    """
    if not isinstance(cert, WeightCertificate):
        raise ContractViolation("not a weight certificate")
    if cert.n != g.n:
        raise ContractViolation(
            "certificate covers %d vertices, graph has %d" % (cert.n, g.n))
    n = g.n
    if n > QUAD_VERIFY_MAX_N:
        return _window_verify(g, cert)
    W, lbi, ubi, fast = _int_view(cert)
    if fast:
        adj = _adjacency_bools(g)
        for u in range(n - 1):
            tail = W[u + 1:] + W[u]
            inside = (tail >= lbi) & (tail <= ubi)
            row = adj[u, u + 1:]
            if not np.array_equal(inside, row):
                j = int(np.argmax(inside != row))
                return CertificateCheck(False, (u, u + 1 + j))
        return CertificateCheck(True)
    rows = g.bit_rows()
    for u in range(n - 1):
        ru = rows[u]
        for v in range(u + 1, n):
            s = W[u] + W[v]
            if (lbi <= s <= ubi) != bool((ru >> v) & 1):
                return CertificateCheck(False, (u, v))
    return CertificateCheck(True)


def _verify_any(g, cert):
    if g.n > QUAD_VERIFY_MAX_N:
        return _window_verify(g, cert)
    return verify_certificate(g, cert)


def _is_normalized(cert):
    """Distinct weights and no pair sum (diagonal included) on a bound."""
    W, lbi, ubi, fast = _int_view(cert)
    if fast:
        SW = np.sort(W)
        if SW.size > 1 and (SW[1:] == SW[:-1]).any():
            return False
        for b in (lbi, ubi):
            t = b - W
            if (np.searchsorted(SW, t, "left") != np.searchsorted(SW, t, "right")).any():
                return False
        return True
    import bisect
    SW = sorted(W)
    if any(SW[i] == SW[i + 1] for i in range(len(SW) - 1)):
        return False
    for b in (lbi, ubi):
        for x in W:
            i = bisect.bisect_left(SW, b - x)
            if i < len(SW) and SW[i] == b - x:
                return False
    return True


def diagram_from_weights(cert):
    """Permutation diagram x1 = max(w, ub-w), x2 = max(w, lb-w).

    Requires a normalized certificate (distinct weights, no boundary sums);
    then segments cross exactly for the certified edges, so the diagram and
    the certificate define the same graph.
    """
    if not _is_normalized(cert):
        raise ContractViolation("certificate is not normalized")
    D = math.lcm(cert.den, cert.lb.denominator, cert.ub.denominator)
    k = D // cert.den
    lbi = cert.lb.numerator * (D // cert.lb.denominator)
    ubi = cert.ub.numerator * (D // cert.ub.denominator)
    vals = [int(a) * k for a in cert.nums]
    num1 = [max(x, ubi - x) for x in vals]
    num2 = [max(x, lbi - x) for x in vals]
    return PermutationDiagram(num1, num2, D)


def bipartite_weights(g, bip, diag):
    """Certificate (lb=0, ub=2) read off a shifted unit-slope diagram.

    The diagram must have x2 = x1 + 1 on side X, x2 = x1 - 1 on side Y, and
    all x1 > 1; then w = -x1 on X and w = x1 on Y certify the graph.
    """
    if not isinstance(diag, PermutationDiagram) or diag.n != g.n:
        raise ContractViolation("diagram does not match the graph")
    if not isinstance(bip, Bipartition) or not bip.is_valid_for(g):
        raise ContractViolation("bipartition does not fit the graph")
    n = g.n
    den = diag.den
    side = bip.side
    for v in range(n):
        delta = int(diag.num2[v]) - int(diag.num1[v])
        if delta != (den if side[v] == 0 else -den):
            raise ContractViolation("diagram is not unit-slope for this bipartition")
        if int(diag.num1[v]) <= den:
            raise ContractViolation("diagram must be shifted so that x1 > 1")
    if diag.num1.dtype == np.int64:
        nums = np.where(side == 0, -diag.num1, diag.num1)
    else:
        nums = [-int(a) if side[v] == 0 else int(a)
                for v, a in enumerate(diag.num1)]
    cert = WeightCertificate(nums, den, Fraction(0), Fraction(2))
    check = _verify_any(g, cert)
    if not check:
        raise InternalContradiction(
            "unit-slope weights fail verification at pair %r" % (check.failing_pair,))
    return cert


# -- normalization (distinct weights, boundary-free sums, target bounds) -----

@dataclass(frozen=True)
class NormalizationParams:
    """Bookkeeping from the last perturbation step plus the affine scale.

    alpha: least neighbour weight of the perturbed vertex (+inf if isolated);
    beta: least non-neighbour weight whose sum with it exceeds ub (+inf if
    none); gamma: largest strictly smaller weight (-inf if none); epsilon:
    the step (None when no perturbation ran); rho: final affine scale.
    """

    alpha: object
    beta: object
    gamma: object
    epsilon: "Fraction | None"
    rho: Fraction


def _spread_edgeless(n, mid, lb_t, ub_t):
    """Weights for an edgeless graph: mid vertex centered, rest far below."""
    delta = (ub_t - lb_t) / 2
    out = [None] * n
    k = 0
    for v in range(n):
        if mid is not None and v == mid:
            out[v] = (lb_t + ub_t) / 4
        else:
            out[v] = lb_t / 2 - (k + 1) * delta
            k += 1
    return out


def normalize_certificate(cert, lb_t, ub_t, with_params=False):
    """Equivalent certificate with bounds exactly (lb_t, ub_t).

    The output defines the same graph with the same mid-weight set, has all
    weights distinct, and no pair sum (diagonal pairs included) equal to a
    bound.  Procedure: retract each bound to the midpoint between it and the
    nearest pair sum beyond it, then repeatedly lower one member of an
    equal-weight pair by half the largest safe step, then map affinely onto
    the target bounds.
    """
    lb_t, ub_t = _as_fraction(lb_t), _as_fraction(ub_t)
    if not lb_t < ub_t:
        raise ContractViolation("target bounds must satisfy lb < ub")
    n = cert.n
    g = graph_from_weights(cert)
    inf = math.inf
    if g.m == 0:
        mid = cert.mid_set()
        if mid.size > 1:
            raise InternalContradiction("edgeless graph with two mid weights")
        ws = _spread_edgeless(n, int(mid[0]) if mid.size else None, lb_t, ub_t)
        out = WeightCertificate.from_weights(ws, lb_t, ub_t)
        params = NormalizationParams(inf, inf, -inf, None, Fraction(1))
        return (out, params) if with_params else out

    import bisect
    w = cert.weights()
    lb, ub = cert.lb, cert.ub
    sw = sorted(w)
    alpha = None   # largest pair sum strictly below lb (diagonal included)
    beta = None    # smallest pair sum strictly above ub
    for x in w:
        i = bisect.bisect_left(sw, lb - x) - 1
        if i >= 0:
            cand = x + sw[i]
            if alpha is None or cand > alpha:
                alpha = cand
        j = bisect.bisect_right(sw, ub - x)
        if j < n:
            cand = x + sw[j]
            if beta is None or cand < beta:
                beta = cand
    lb1 = lb - 1 if alpha is None else (lb + alpha) / 2
    ub1 = ub + 1 if beta is None else (ub + beta) / 2

    last = (inf, inf, -inf, None)
    for _step in range(n + 1):
        seen = {}
        z = None
        for v in range(n):
            if w[v] in seen:
                z = min(seen[w[v]], v)
                break
            seen[w[v]] = v
        if z is None:
            break
        nbrs = g.neighbors(z)
        nbr_set = set(nbrs.tolist())
        a_z = min((w[v] for v in nbr_set), default=None)
        b_z = min((w[v] for v in range(n)
                   if v not in nbr_set and w[z] + w[v] > ub1), default=None)
        g_z = max((x for x in w if x < w[z]), default=None)
        terms = [abs(w[z] - lb1 / 2), abs(w[z] - ub1 / 2)]
        if a_z is not None:
            terms.append(w[z] + a_z - lb1)
        if b_z is not None:
            terms.append(w[z] + b_z - ub1)
        if g_z is not None:
            terms.append(w[z] - g_z)
        eps = min(terms)
        if eps <= 0:
            raise InternalContradiction("perturbation step is not positive")
        w[z] = w[z] - eps / 2
        last = (a_z if a_z is not None else inf,
                b_z if b_z is not None else inf,
                g_z if g_z is not None else -inf,
                eps)
    else:
        raise InternalContradiction("equal weights survive n perturbations")

    rho = (ub_t - lb_t) / (ub1 - lb1)
    off = (rho * lb1 - lb_t) / 2
    out = WeightCertificate.from_weights([rho * x - off for x in w], lb_t, ub_t)
    params = NormalizationParams(last[0], last[1], last[2], last[3], rho)
    return (out, params) if with_params else out


def co_threshold_split(cert):
    """The two threshold graphs whose edge intersection is the certified graph.

    G1 keeps pairs with sum >= lb, G2 keeps pairs with sum <= ub.
    """
    W, lbi, ubi, fast = _int_view(cert)
    g1 = Graph(cert.n, _pairs_in_range(W, lbi, None, fast))
    g2 = Graph(cert.n, _pairs_in_range(W, None, ubi, fast))
    return g1, g2


def compose_disjoint(cert_g, cert_h, bip_h):
    """Certificate for the disjoint union, H's certified graph bipartite.

    H's X side is shifted up and its Y side down by the smallest
    half-integer alpha that pushes every pair sum involving a shifted vertex
    strictly outside [lb, ub]; H is relabeled to n_G .. n_G + n_H - 1.
    """
    if (cert_g.lb, cert_g.ub) != (cert_h.lb, cert_h.ub):
        raise ContractViolation("certificates must share bounds before composition")
    if cert_g.n == 0:
        return cert_h
    if cert_h.n == 0:
        return cert_g
    h = graph_from_weights(cert_h)
    if not isinstance(bip_h, Bipartition) or not bip_h.is_valid_for(h):
        raise ContractViolation("bipartition does not fit H's certified graph")
    lb, ub = cert_g.lb, cert_g.ub
    all_w = cert_g.weights() + cert_h.weights()
    bound = max(ub - 2 * min(all_w), 2 * max(all_w) - lb)
    alpha = Fraction(0) if bound < 0 else Fraction(math.floor(2 * bound) + 1, 2)
    side = bip_h.side
    ws = cert_g.weights() + [
        wv + alpha if side[v] == 0 else wv - alpha
        for v, wv in enumerate(cert_h.weights())]
    cert = WeightCertificate.from_weights(ws, lb, ub)
    gg = graph_from_weights(cert_g)
    eu_g, ev_g = gg.edges()
    eu_h, ev_h = h.edges()
    union = Graph(cert_g.n + cert_h.n, np.column_stack([
        np.concatenate([eu_g, eu_h + cert_g.n]),
        np.concatenate([ev_g, ev_h + cert_g.n])]))
    check = _verify_any(union, cert)
    if not check:
        raise InternalContradiction(
            "composed certificate fails at pair %r" % (check.failing_pair,))
    return cert


@dataclass(frozen=True)
class StarPCG:
    """Star with leaf set V; leaf v's edge to the center carries weight w(v)."""

    leaf_weights: tuple
    lb: Fraction
    ub: Fraction

    @property
    def center(self):
        return len(self.leaf_weights)


def to_star_pcg(cert):
    return StarPCG(tuple(cert.weights()), cert.lb, cert.ub)


def certificate_from_star(star):
    return WeightCertificate.from_weights(star.leaf_weights, star.lb, star.ub)


# -- the non-bipartite lane ---------------------------------------------------

@dataclass(frozen=True)
class AuxGraph:
    """Bipartite double structure on {v} + {v-bar}, v-bar = v + n.

    Edges are u(v-bar) for every origin edge uv, plus v(v-bar) for v in mid.
    """

    graph: Graph
    origin: Graph
    mid: np.ndarray

    def partner(self, v):
        n = self.origin.n
        return v + n if v < n else v - n


def auxiliary_graph(g, mid):
    mid = np.unique(np.asarray(list(mid), dtype=np.int64))
    if mid.size and (mid.min() < 0 or mid.max() >= g.n):
        raise ContractViolation("mid set is not a subset of the vertices")
    n = g.n
    eu, ev = g.edges()
    pairs = np.column_stack([
        np.concatenate([eu, ev, mid]),
        np.concatenate([ev + n, eu + n, mid + n])])
    aux = Graph(2 * n, pairs)
    if aux.m != 2 * g.m + mid.size:
        raise InternalContradiction("auxiliary edge count is off")
    return AuxGraph(aux, g, mid)


class _MaxFenwick:
    """Prefix-maximum tree keyed 0..n-1; ties prefer the smaller vertex id."""

    def __init__(self, n):
        self.n = n
        self.val = [-1] * (n + 1)
        self.vid = [0] * (n + 1)
        self.pos = [-1] * (n + 1)

    def update(self, key, val, vid, pos):
        i = key + 1
        while i <= self.n:
            if val > self.val[i] or (val == self.val[i] and vid < self.vid[i]):
                self.val[i], self.vid[i], self.pos[i] = val, vid, pos
            i += i & (-i)

    def query(self, key):
        """Best over keys strictly below `key`."""
        best, bvid, bpos = -1, 0, -1
        i = key
        while i > 0:
            if self.val[i] > best or (self.val[i] == best and self.vid[i] < bvid):
                best, bvid, bpos = self.val[i], self.vid[i], self.pos[i]
            i -= i & (-i)
        return best, bpos


def _seg_best(wt_seq, seq, idxs):
    """Max-weight strictly decreasing subsequence inside one position band."""
    best = 0
    f = np.zeros(len(idxs), dtype=np.int64)
    sq = seq[idxs]
    ww = wt_seq[idxs]
    for j in range(len(idxs)):
        prior = f[:j][sq[:j] > sq[j]]
        f[j] = ww[j] + (int(prior.max()) if prior.size else 0)
        if f[j] > best:
            best = int(f[j])
    return best


def _best_through(wt_seq, seq, fixed):
    """Max chain weight over decreasing subsequences through fixed positions."""
    n = seq.size
    total = int(wt_seq[fixed].sum())
    prev_p, prev_s = -1, n
    allpos = np.arange(n)
    for bp in list(fixed) + [n]:
        right_s = int(seq[bp]) if bp < n else -1
        if not (prev_p < bp and right_s < prev_s):
            return -1
        mask = (allpos > prev_p) & (allpos < bp) & (seq > right_s) & (seq < prev_s)
        idxs = np.flatnonzero(mask)
        if idxs.size:
            total += _seg_best(wt_seq, seq, idxs)
        if bp < n:
            prev_p, prev_s = bp, int(seq[bp])
    return total


def efficient_max_clique(g, order1, order2):
    """Maximum clique minimizing the degree sum, from a permutation ordering.

    Cliques are exactly the decreasing subsequences of the line-2 position
    sequence read along line 1, so a maximum-weight decreasing subsequence
    with vertex weight n^2 - deg is a maximum clique of least degree sum.
    Up to LEX_CLIQUE_MAX_N vertices the lexicographically smallest such
    vertex set is extracted greedily; beyond that the DP's deterministic
    parent chain is returned (any efficient maximum clique is acceptable).
    """
    o1 = order1 if isinstance(order1, LinearOrder) else LinearOrder(order1)
    o2 = order2 if isinstance(order2, LinearOrder) else LinearOrder(order2)
    n = g.n
    if len(o1) != n or len(o2) != n:
        raise ContractViolation("order length differs from vertex count")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    forced = forced_partner_order(g, o1)
    if forced is None or forced != o2:
        raise ContractViolation("orders do not define the graph")

    seq = o2.pos[o1.order]
    deg = g.degrees().astype(np.int64)
    wt = np.int64(n) * np.int64(n) - deg          # weight per vertex id
    wt_seq = wt[o1.order]                         # weight per line-1 position

    key = (n - 1) - seq
    fen = _MaxFenwick(n)
    f = np.zeros(n, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        bval, bpos = fen.query(int(key[i]))
        f[i] = wt_seq[i] + (bval if bpos >= 0 else 0)
        parent[i] = bpos
        fen.update(int(key[i]), int(f[i]), int(o1.order[i]), i)
    opt = int(f.max())
    ends = np.flatnonzero(f == opt)
    i = int(ends[np.argmin(o1.order[ends])])
    chain = []
    while i >= 0:
        chain.append(i)
        i = int(parent[i])
    size = len(chain)

    if n > LEX_CLIQUE_MAX_N:
        return np.sort(o1.order[np.asarray(chain, dtype=np.int64)])

    fixed = []
    for v in range(n):
        if len(fixed) == size:
            break
        p = int(o1.pos[v])
        if any((p < q) != (seq[p] > seq[q]) for q in fixed):
            continue
        trial = np.asarray(sorted(fixed + [p]), dtype=np.int64)
        if _best_through(wt_seq, seq, trial) == opt:
            fixed = sorted(fixed + [p])
    if len(fixed) != size:
        raise InternalContradiction("greedy clique extraction lost the optimum")
    return np.sort(o1.order[np.asarray(fixed, dtype=np.int64)])


def _check_aux_pre(aux):
    if len(components(aux.origin)) != 1:
        raise ContractViolation("origin graph must be connected")
    if bipartition(aux.origin) is not None:
        raise ContractViolation("origin graph must be non-bipartite")
    if not is_clique(aux.origin, aux.mid):
        raise ContractViolation("mid set must be a clique")
    if len(components(aux.graph)) != 1:
        raise InternalContradiction(
            "auxiliary graph disconnected for a connected non-bipartite origin")


def _alive_neighbor_key(g, v, alive):
    nb = g.neighbors(v)
    return nb[alive[nb]].tobytes()


def symmetric_orderings(aux):
    """Symmetric permutation orderings of the auxiliary graph, or None.

    Twin vertex pairs (equal auxiliary neighbourhoods on the origin side)
    are stripped to a fixpoint; the twin-free core is ordered as a bipartite
    permutation graph; among the four reversal/swap variants the one whose
    partner image equals its own reverse is kept; twins are reinserted with
    v right after its twin and v-bar right before the twin's partner.
    Returns None iff the auxiliary graph is not a permutation graph.
    """
    _check_aux_pre(aux)
    g2 = aux.graph
    n = aux.origin.n
    alive = np.ones(2 * n, dtype=bool)
    removals = []
    while True:
        groups = {}
        for v in range(n):
            if alive[v]:
                groups.setdefault(_alive_neighbor_key(g2, v, alive), []).append(v)
        changed = False
        for members in groups.values():
            for v in members[1:]:
                alive[v] = alive[v + n] = False
                removals.append((members[0], v))
                changed = True
        if not changed:
            break

    core, core_ids = induced_subgraph(g2, np.flatnonzero(alive))
    side = (core_ids >= n).astype(np.int8)
    res = bipartite_permutation_orderings(core, Bipartition(side))
    if res is None:
        return None
    co1, co2 = res

    back = -np.ones(2 * n, dtype=np.int64)
    back[core_ids] = np.arange(core_ids.size)
    cpart = back[(core_ids + n) % (2 * n)]
    if (cpart < 0).any():
        raise InternalContradiction("twin removal split a vertex pair")

    def symmetric(order):
        arr = order.order
        return np.array_equal(cpart[arr], arr[::-1])

    chosen = None
    for c1, c2 in ((co1, co2), (co2, co1),
                   (co1.rev(), co2.rev()), (co2.rev(), co1.rev())):
        if core.n and side[c1.order[0]] != 0:
            continue
        if symmetric(c1) and symmetric(c2):
            chosen = (c1, c2)
            break
    if chosen is None:
        raise InternalContradiction(
            "no symmetric variant for an accepted permutation graph")

    seq1 = [int(core_ids[c]) for c in chosen[0].order]
    seq2 = [int(core_ids[c]) for c in chosen[1].order]
    for u, v in reversed(removals):
        for seq in (seq1, seq2):
            seq.insert(seq.index(u) + 1, v)
            seq.insert(seq.index(u + n), v + n)
    o1, o2 = LinearOrder(seq1), LinearOrder(seq2)
    for o in (o1, o2):
        arr = o.order
        mirror = np.where(arr < n, arr + n, arr - n)
        if not np.array_equal(mirror, arr[::-1]):
            raise InternalContradiction("reinserted ordering lost symmetry")
    forced = forced_partner_order(g2, o1)
    if forced is None or forced != o2:
        raise InternalContradiction("reinserted orderings stopped defining the graph")
    return o1, o2


def weights_from_symmetric(aux, order1, order2):
    """Certificate (lb=0, ub=2) of the origin graph from symmetric orderings.

    After orienting so that the first vertex of order1 is an origin vertex,
    the unit-slope diagram of the auxiliary graph yields w(v) =
    (x2(v) - x2(v-bar)) / 2; the mid-weight set of the result must come out
    equal to the auxiliary mid set.
    """
    _check_aux_pre(aux)
    g2 = aux.graph
    n = aux.origin.n
    o1 = order1 if isinstance(order1, LinearOrder) else LinearOrder(order1)
    o2 = order2 if isinstance(order2, LinearOrder) else LinearOrder(order2)
    if len(o1) != 2 * n or len(o2) != 2 * n:
        raise ContractViolation("order length differs from auxiliary vertex count")
    for o in (o1, o2):
        arr = o.order
        mirror = np.where(arr < n, arr + n, arr - n)
        if not np.array_equal(mirror, arr[::-1]):
            raise ContractViolation("orderings are not symmetric")
    forced = forced_partner_order(g2, o1)
    if forced is None or forced != o2:
        raise ContractViolation("orders do not define the auxiliary graph")
    if int(o1.order[0]) >= n:
        o1, o2 = o1.rev(), o2.rev()
    bip = Bipartition((np.arange(2 * n) >= n).astype(np.int8))
    diag = unit_slope_diagram(g2, bip, o1, o2)
    if diag.num2.dtype == np.int64:
        nums = diag.num2[:n] - diag.num2[n:]
    else:
        nums = [int(diag.num2[v]) - int(diag.num2[v + n]) for v in range(n)]
    cert = WeightCertificate(nums, 2 * diag.den, Fraction(0), Fraction(2))
    check = _verify_any(aux.origin, cert)
    if not check:
        raise InternalContradiction(
            "symmetric weights fail verification at pair %r" % (check.failing_pair,))
    if not np.array_equal(cert.mid_set(), aux.mid):
        raise InternalContradiction("mid-weight set drifted from the chosen clique")
    return cert


# -- recognition --------------------------------------------------------------

@dataclass(frozen=True)
class RecognitionResult:
    verdict: str
    certificate: "WeightCertificate | None" = None
    witness: "tuple | None" = None

    @property
    def accepted(self):
        return self.verdict == "accept"


def _reject(g):
    witness = None
    if 0 < g.n <= REJECT_WITNESS_MAX_N:
        from .oracles import forbidden_scan
        hits = forbidden_scan(g)
        if hits:
            witness = hits[0]
    return RecognitionResult("reject", witness=witness)


def _bipartite_component_certificate(sub, bip):
    res = bipartite_permutation_orderings(sub, bip)
    if res is None:
        return None
    o1, o2 = res
    if sub.n and bip.side[o1.order[0]] != 0:
        bip = Bipartition((1 - bip.side).astype(np.int8))
    diag = unit_slope_diagram(sub, bip, o1, o2)
    shift = 2 - math.floor(int(min(diag.num1)) / diag.den) if sub.n else 0
    return bipartite_weights(sub, bip, diag.shifted(shift)), bip


def _nonbipartite_component_certificate(sub):
    res = permutation_orderings(sub)
    if res is None:
        return None
    mid = efficient_max_clique(sub, *res)
    aux = auxiliary_graph(sub, mid)
    sym = symmetric_orderings(aux)
    if sym is None:
        return None
    return weights_from_symmetric(aux, *sym)


def recognize(g):
    """Decide double-threshold-ness; accept with a verified certificate.

    Components are handled separately: bipartite ones through the
    unit-slope lane, the at most one non-bipartite component through the
    efficient-clique construction; two or more non-bipartite components are
    an immediate reject.  Certificates are folded over disjoint unions and
    the final certificate is re-verified against the input graph.
    """
    if g.n == 0:
        return RecognitionResult(
            "accept", WeightCertificate([], 1, Fraction(0), Fraction(2)))
    comps = components(g)
    parts = []          # (ids, certificate, bipartition-or-None)
    nonbip_k = None
    subs = []
    for k, comp in enumerate(comps):
        sub, ids = induced_subgraph(g, comp)
        bip = bipartition(sub)
        if bip is None:
            if nonbip_k is not None:
                return _reject(g)
            nonbip_k = k
        subs.append((sub, ids, bip))
    for k, (sub, ids, bip) in enumerate(subs):
        if bip is None:
            cert = _nonbipartite_component_certificate(sub)
            if cert is None:
                return _reject(g)
            parts.append((ids, cert, None))
        else:
            out = _bipartite_component_certificate(sub, bip)
            if out is None:
                return _reject(g)
            parts.append((ids, out[0], out[1]))
    if nonbip_k is not None:
        parts.insert(0, parts.pop(nonbip_k))

    acc_ids, acc, _ = parts[0]
    for ids, cert, bip in parts[1:]:
        acc = compose_disjoint(acc, cert, bip)
        acc_ids = np.concatenate([acc_ids, ids])
    # relabel back to input ids on the shared denominator, no Fraction churn
    final_nums = np.empty(g.n, dtype=acc.nums.dtype)
    final_nums[acc_ids] = acc.nums
    cert = WeightCertificate(final_nums, acc.den, acc.lb, acc.ub)
    check = _verify_any(g, cert)
    if not check:
        raise InternalContradiction(
            "pipeline certificate fails at pair %r" % (check.failing_pair,))
    return RecognitionResult("accept", cert)
