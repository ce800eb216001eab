"""Inclusion tests across the bisector x = y and the single cross-side merge.

Every query runs in the frame of the querying side: the query object
(point or hull edge) is mapped to Side-Hx form and the opposite side's
points, mapped the same way, lie on or above x = y.  Reflection across
x = y preserves all walking-region predicates, so marks found in a frame
are valid in the original coordinates.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import QuadNum, quad_roots, rational_between, sign2
from .clustering import Cluster
from .dragging import DragIndex, DragQuery, Direction
from .geometry import (HighwayConfig, in_walking_region, l1_chain, normalize,
                       wr_edge_membership)
from .hull import convex_hull, hull_edges
from .sides import Side, SideSequence, canonical_points, swap


class SideIndex(DragIndex):
    """Drag index over one side's points, expressed in the opposite side's
    frame, remembering which cluster owns each rank."""

    def __init__(self, seq: SideSequence, owners):
        super().__init__(canonical_points(seq.side.other, seq.points))
        self.side = seq.side
        self.owners = list(owners)
        self.first_rank = {}
        for r, c in enumerate(self.owners):
            self.first_rank.setdefault(c, r)


def chase(index: SideIndex, query: DragQuery, accept, windows=None):
    """Ids of every cluster owning an accepted point in the query region.

    Each drag returns the highest-ranked accepted point; the next drag is
    capped below the first rank of that point's cluster.  Returns the ids
    (descending) and the number of drags issued.
    """
    if windows is None:
        windows = [(0, len(index) - 1)]
    found, drags = [], 0
    for lo, hi in windows:
        cap = hi
        while cap >= lo:
            drags += 1
            hit = index.drag(query, accept=accept, min_rank=lo, max_rank=cap,
                             highest_rank=True)
            if hit is None:
                break
            c = index.owners[index.ranks[hit.index]]
            found.append(c)
            cap = index.first_rank[c] - 1
    return found, drags


def owners_by_rank(clusters, n):
    out = [0] * n
    for c in clusters:
        for r in range(c.span[0], c.span[1] + 1):
            out[r] = c.id
    return out


@dataclass
class MarkSet:
    """Marked cluster ids per side plus the (Side-Hx id, Side-Hy id) pairs."""

    hx: set = field(default_factory=set)
    hy: set = field(default_factory=set)
    pairs: set = field(default_factory=set)

    def add(self, side, own, other):
        cx, cy = (own, other) if side is Side.SIDE_HX else (other, own)
        self.hx.add(cx)
        self.hy.add(cy)
        self.pairs.add((cx, cy))

    def __bool__(self):
        return bool(self.hx or self.hy)

    @property
    def top(self):
        return max(self.hy) if self.hy else None

    @property
    def right(self):
        return max(self.hx) if self.hx else None


@dataclass
class CrossStats:
    point_drags: int = 0
    max_point_drags: int = 0
    edge_drags: int = 0
    witness_drags: int = 0
    edges_tested: int = 0
    max_edge_drags: int = 0  # per edge, not counting one drag per witness cluster


# --- L1 point inclusion --------------------------------------------------------


def cross_pieces_l1(p, cfg: HighwayConfig, max_pieces=3):
    """Left-boundary pieces of the part of WR(p) on or above x = y.

    ``p`` is in Side-Hx form.  Returns ``(segment, limit)`` pairs in
    increasing y: dragging each segment rightwards up to ``x = limit``
    sweeps a region, and together they cover that part of the walking
    region.  A segment with equal endpoints is a single point.  When the
    boundary has more than ``max_pieces`` pieces, neighbours are replaced
    by vertical segments further left, which only enlarges the sweep.
    """
    ch = l1_chain(swap(p), cfg)
    # in the swapped chain, abscissa = y and the slice is [left, right] in x
    rows = [(lo[0], lo[1], hi[1]) for lo, hi in zip(ch.lower, ch.upper)]
    rows = _with_bisector_crossings(rows)
    runs, cur = [], []
    for y, left, right in rows:
        if left <= min(right, y):
            cur.append((y, left, min(right, y)))
            continue
        if cur:
            runs.append(cur)
        cur = []
    if cur:
        runs.append(cur)
    out = []
    for run in runs:
        limit = max(r[2] for r in run)
        if len(run) == 1:
            pt = (run[0][1], run[0][0])
            out.append(((pt, pt), limit))
            continue
        for a, b in zip(run, run[1:]):
            u, v = (a[1], a[0]), (b[1], b[0])
            if out and out[-1][0][1] == u and _collinear(out[-1][0][0], u, v):
                out[-1] = ((out[-1][0][0], v), limit)
            else:
                out.append(((u, v), limit))
    while len(out) > max_pieces:
        out = _coalesce(out)
    return out


def _coalesce(pieces):
    """Replace the adjacent pair with the least combined height by one
    vertical segment lying left of both."""
    best = None
    for i in range(len(pieces) - 1):
        (a, b), _ = pieces[i]
        (c, d), _ = pieces[i + 1]
        h = max(a[1], b[1], c[1], d[1]) - min(a[1], b[1], c[1], d[1])
        if best is None or h < best[0]:
            best = (h, i)
    i = best[1]
    (a, b), la = pieces[i]
    (c, d), lb = pieces[i + 1]
    x = min(a[0], b[0], c[0], d[0])
    ys = (a[1], b[1], c[1], d[1])
    seg = ((x, min(ys)), (x, max(ys)))
    return pieces[:i] + [(seg, max(la, lb))] + pieces[i + 2:]


def _collinear(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def _with_bisector_crossings(rows):
    out = []
    for a, b in zip(rows, rows[1:]):
        out.append(a)
        ts = set()
        for k in (1, 2):
            fa, fb = a[k] - a[0], b[k] - b[0]
            if (fa < 0 < fb) or (fb < 0 < fa):
                ts.add(Fraction(fa) / (fa - fb))
        for t in sorted(ts):
            out.append(tuple(normalize(a[k] + (b[k] - a[k]) * t) for k in range(3)))
    if rows:
        out.append(rows[-1])
    return out


def point_side_inclusion_l1(p, own_cluster, other_index: SideIndex, cfg: HighwayConfig,
                            stats: CrossStats | None = None, windows=None):
    """Marks ``(own_cluster, other)`` for every other-side cluster with a
    point inside WR(p); ``p`` is in Side-Hx form.

    One drag per left-boundary piece of the cross part of WR(p), plus one
    per witness cluster found while collecting the rest.
    """
    stats = CrossStats() if stats is None else stats
    if not len(other_index):
        return []
    pts = other_index.points
    accept = lambda i: in_walking_region(p, pts[i], cfg)
    found, base = set(), 0
    for (a, b), limit in cross_pieces_l1(p, cfg):
        base += 1
        if a == b:
            q = DragQuery((a, (a[0] + 1, a[1])), Direction.UP, a[1])
        else:
            q = DragQuery((a, b), Direction.RIGHT, limit)
        ids, drags = chase(other_index, q, accept, windows)
        stats.witness_drags += max(drags - 1, 0)
        found.update(ids)
    stats.point_drags += base
    stats.max_point_drags = max(stats.max_point_drags, base)
    return [(own_cluster, c) for c in sorted(found)]


def point_side_inclusion_l2(p, own_cluster, other_index: SideIndex, cfg: HighwayConfig,
                            stats: CrossStats | None = None, windows=None):
    """L2 counterpart of :func:`point_side_inclusion_l1` (one box drag)."""
    stats = CrossStats() if stats is None else stats
    if not len(other_index):
        return []
    pts = other_index.points
    x0, x1, y0, y1 = edge_witness_box((p, p), cfg)
    q = DragQuery(((x0, y0), (x0, y1 if y1 > y0 else y0 + 1)), Direction.RIGHT, x1)
    ids, drags = chase(other_index, q, lambda i: in_walking_region(p, pts[i], cfg), windows)
    stats.point_drags += 1
    stats.witness_drags += max(drags - 1, 0)
    stats.max_point_drags = max(stats.max_point_drags, 1)
    return [(own_cluster, c) for c in ids]


# --- edge inclusion -------------------------------------------------------------


def edge_witness_box(edge, cfg: HighwayConfig):
    """Box (x0, x1, y0, y1) containing every point w with x_w <= y_w that
    lies in the walking region of some point of ``edge``."""
    (ax, ay), (bx, by) = edge
    if cfg.is_l1:
        k = Fraction(2 * cfg._num, cfg._num - cfg._den)
        xr = k * max(ay, by)
        yr = k * max(ax, bx)
        x0, x1 = min(ax, bx) - xr, max(ax, bx) + xr
        y0, y1 = min(ay, by) - yr, max(ay, by) + yr
        return max(x0, 0), x1, max(y0, 0), y1
    u = max(2 * ax + 2 * ay + 3 * min(ax, ay), 2 * bx + 2 * by + 3 * min(bx, by))
    return 0, u, 0, u


def edge_side_inclusion(edge, own_cluster, other_index: SideIndex, cfg: HighwayConfig,
                        stats: CrossStats | None = None, windows=None):
    """Marks for every other-side cluster with a point inside WR(edge).

    ``edge`` is in the querying side's frame.  A bounded drag sweeps a box
    enclosing the cross part of the region; candidates are confirmed with
    the exact edge predicate.  ``windows`` restricts witness ranks.
    """
    stats = CrossStats() if stats is None else stats
    stats.edges_tested += 1
    if not len(other_index):
        return []
    x0, x1, y0, y1 = edge_witness_box(edge, cfg)
    if x0 > x1 or y0 > y1:
        return []
    if y0 == y1:
        y1 = y0 + 1
    pts = other_index.points
    a, b = edge
    q = DragQuery(((x0, y0), (x0, y1)), Direction.RIGHT, x1)
    ids, drags = chase(other_index, q, lambda i: wr_edge_membership(a, b, pts[i], cfg), windows)
    found = len(ids)
    stats.edge_drags += drags
    stats.max_edge_drags = max(stats.max_edge_drags, drags - found)
    return [(own_cluster, c) for c in ids]


# --- L2 (free highways) outer boundary -------------------------------------------


def _parabola(q):
    """Coefficients of f_q(y) = (y^2 - 2 y_q y + x_q^2) / (2 (x_q + y_q)):
    on the far side of x = y, WR(q) is ``x >= f_q(y)``."""
    s = 2 * (q[0] + q[1])
    return (Fraction(1, 1) / s, Fraction(-2 * q[1]) / s, Fraction(q[0] * q[0]) / s)


def _bisector_hits(q):
    """(b_j, b_k) where the boundary of WR(q) meets x = y, or None."""
    if q[0] + q[1] == 0:
        return None
    c = q[0] + 2 * q[1]
    d = Fraction(c * c - q[0] * q[0])
    return QuadNum(c, -1, d), QuadNum(c, 1, d)


def _eval(coef, y):
    A, B, C = coef
    return A * y * y + B * y + C


def _sign_at(coef, y: QuadNum):
    """Sign of the quadratic ``coef`` at a QuadNum point."""
    A, B, C = coef
    a, b, r = y.a, y.b, y.r
    return sign2(A * (a * a + b * b * r) + B * a + C, 2 * A * a * b + B * b, r)


@dataclass
class BoundaryNode:
    lo: QuadNum
    hi: QuadNum
    owner: int  # cluster id
    coef: tuple
    point: tuple


@dataclass
class OuterBoundary:
    """Lower envelope along x = y of the walking regions of one side,
    as y-ordered, non-overlapping nodes."""

    nodes: list = field(default_factory=list)
    inserted: int = 0
    _his: list = field(default=None, repr=False)

    def covering(self, y):
        """Nodes whose y-range contains ``y`` (more than one only at shared
        endpoints)."""
        if self._his is None or len(self._his) != len(self.nodes):
            self._his = [n.hi for n in self.nodes]
        i = bisect_left(self._his, QuadNum(y))
        out = []
        while i < len(self.nodes) and self.nodes[i].lo <= y:
            out.append(self.nodes[i])
            i += 1
        return out

    def contains(self, w):
        """Whether ``w`` (frame coordinates, x <= y) is inside some region."""
        return any(_eval(nd.coef, w[1]) <= w[0] for nd in self.covering(w[1]))

    def is_monotone(self):
        return all(a.hi <= b.lo for a, b in zip(self.nodes, self.nodes[1:]))


def _clearly_above(diff, lo, hi):
    """Float check that the quadratic ``diff`` is positive on [lo, hi] with
    a wide margin; False means "not sure"."""
    A, B, C = (float(v) for v in diff)
    s, t = float(lo), float(hi)
    ys = [s, t]
    if A > 0 and s < -B / (2 * A) < t:
        ys.append(-B / (2 * A))
    scale = max(abs(A) * y * y + abs(B) * abs(y) + abs(C) for y in ys)
    return min(A * y * y + B * y + C for y in ys) > 1e-7 * scale + 1e-300


def _split_pieces(lo, hi, g, f):
    """Sub-intervals of [lo, hi] with a flag telling whether g < f there."""
    diff = tuple(x - y for x, y in zip(g, f))
    if _clearly_above(diff, lo, hi):
        return [(lo, hi, False)]
    if lo == hi:
        return [(lo, hi, _sign_at(diff, lo) < 0)]
    cuts = [lo] + [r for r in quad_roots(*diff) if lo < r < hi] + [hi]
    out = []
    for s, t in zip(cuts, cuts[1:]):
        m = rational_between(s, t)
        out.append((s, t, _eval(diff, m) < 0))
    return out


def _insert(boundary: OuterBoundary, node: BoundaryNode):
    boundary._his = None
    nodes = boundary.nodes
    his = [n.hi for n in nodes]
    i = bisect_left(his, node.lo)
    j = i
    while j < len(nodes) and nodes[j].lo <= node.hi:
        j += 1
    if i == j:
        nodes.insert(i, node)
        boundary.inserted += 1
        return
    pieces = []
    cursor = node.lo
    for old in nodes[i:j]:
        if cursor < old.lo:
            pieces.append(BoundaryNode(cursor, old.lo, node.owner, node.coef, node.point))
        if old.lo < node.lo:
            pieces.append(BoundaryNode(old.lo, node.lo, old.owner, old.coef, old.point))
        s, t = max(old.lo, node.lo), min(old.hi, node.hi)
        for a, b, new_wins in _split_pieces(s, t, node.coef, old.coef):
            src = node if new_wins else old
            pieces.append(BoundaryNode(a, b, src.owner, src.coef, src.point))
        if old.hi > node.hi:
            pieces.append(BoundaryNode(node.hi, old.hi, old.owner, old.coef, old.point))
        cursor = max(cursor, old.hi)
    if cursor < node.hi:
        pieces.append(BoundaryNode(cursor, node.hi, node.owner, node.coef, node.point))
    merged = []
    for pc in pieces:
        if merged and merged[-1].point == pc.point and merged[-1].hi == pc.lo:
            merged[-1] = BoundaryNode(merged[-1].lo, pc.hi, pc.owner, pc.coef, pc.point)
        else:
            merged.append(pc)
    nodes[i:j] = merged
    boundary.inserted += 1


def build_outer_boundary(side_points: SideSequence, cfg: HighwayConfig, owners=None):
    """Envelope of the walking regions of one side's points along x = y."""
    if cfg.is_l1:
        raise ValueError("outer boundary is defined for the L2 metric")
    owners = list(range(len(side_points))) if owners is None else owners
    bd = OuterBoundary()
    for r, q in enumerate(side_points.canonical()):
        hits = _bisector_hits(q)
        if hits is None:
            continue
        _insert(bd, BoundaryNode(hits[0], hits[1], owners[r], _parabola(q), q))
    return bd


def ray_shoot_marks(other_points: SideSequence, boundary: OuterBoundary, owners=None):
    """Backward walk over the other side's points against the boundary.

    Stops at the first (highest-ranked) point inside the envelope and
    returns ``[(point's cluster, owning cluster)]`` or ``[]``.
    """
    owners = list(range(len(other_points))) if owners is None else owners
    pts = canonical_points(other_points.side.other, other_points.points)
    nodes = boundary.nodes
    k = len(nodes) - 1
    # side order of the other side is increasing frame y
    for r in range(len(pts) - 1, -1, -1):
        w = pts[r]
        while k >= 0 and nodes[k].lo > w[1]:
            k -= 1
        if k < 0:
            break
        j = k
        while j >= 0 and nodes[j].hi >= w[1]:
            nd = nodes[j]
            if nd.lo <= w[1] and _eval(nd.coef, w[1]) <= w[0]:
                return [(owners[r], nd.owner)]
            j -= 1
    return []


# --- extremes and merge -------------------------------------------------------


def select_extremes(marks: MarkSet):
    """``(C_t, C_r)`` ids of the topmost marked Side-Hy and rightmost marked
    Side-Hx clusters, or None without marks."""
    if not marks.hx and not marks.hy:
        return None
    if not marks.hx or not marks.hy:
        raise AssertionError("cross marks present on one side only")
    return marks.top, marks.right


def merge_across(side_x, side_y, c_t, c_r):
    """Absorb Side-Hx clusters up to ``c_r`` and Side-Hy clusters up to
    ``c_t`` into one cluster placed first on both sides."""
    take_x = [c for c in side_x if c.id <= c_r]
    take_y = [c for c in side_y if c.id <= c_t]
    members, ids = [], []
    for c in take_x + take_y:
        members.extend(c.members)
        ids.extend(c.member_ids)
    merged = Cluster(-1, members, ids, convex_hull(members), None, None, True)
    merged.parts = (take_x, take_y)
    rest_x = [c for c in side_x if c.id > c_r]
    rest_y = [c for c in side_y if c.id > c_t]
    return merged, rest_x, rest_y


def new_edges_of(merged, parts):
    old = set()
    for c in parts:
        old.update(hull_edges(c.hull))
    return [e for e in hull_edges(merged.hull) if e not in old]
