"""Per-side cluster construction by incremental point inclusion.

Each side is processed in the Side-Hx frame (Side-Hy points are reflected
across x = y, which preserves every time-distance predicate).  Points are
swept in x order; a point joins the leftmost live cluster whose walking
region contains it, absorbing every cluster in between.  New hull edges
created by a merge are then tested against the earlier points, which may
cascade into further merges.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .dragging import DragIndex, DragQuery, Direction
from .geometry import HighwayConfig, in_walking_region, wr_edge_membership
from .hull import hull_edges, hull_of_sorted
from .sides import Side, SideSequence


@dataclass
class Cluster:
    """A cluster in original coordinates.

    ``span`` is the inclusive range of side-order ranks covered by the
    members; ``hull`` is counterclockwise.
    """

    id: int
    members: list
    member_ids: list
    hull: list
    span: tuple
    side: Side
    marked: bool = False

    @property
    def size(self):
        return len(self.members)


@dataclass
class _Work:
    lo: int
    hi: int
    hull: list  # canonical frame, CCW
    edges: list = field(default_factory=list)
    reach: object = 0

    def sorted_vertices(self):
        return sorted(self.hull)


def _reach_scale(cfg):
    return cfg._num - cfg._den if cfg.is_l1 else 1


def _reach(hull, cfg):
    """Largest x any same-side point can have while touching this cluster,
    times :func:`_reach_scale` (keeps integer input in integers)."""
    if cfg.is_l1:
        a, b = cfg._num - cfg._den, 2 * cfg._num
        return max(a * v[0] + b * v[1] for v in hull)
    return max(2 * v[0] + 4 * v[1] for v in hull)


def _edge_may_reach(e, p, cfg):
    """Cheap necessary condition for ``p`` in the walking region of edge ``e``
    (both on the Side-Hx frame, ``p`` to the right)."""
    xmax = max(e[0][0], e[1][0])
    ymax = max(e[0][1], e[1][1])
    dx = p[0] - xmax
    if dx <= 0:
        return True
    if cfg.is_l1:
        return dx * (cfg._num - cfg._den) <= 2 * cfg._num * min(ymax, p[1])
    return dx * dx <= 4 * ymax * p[1]


def cluster_contains(work: _Work, p, cfg: HighwayConfig) -> bool:
    """Whether ``p`` lies in the walking region of a cluster's hull."""
    for v in sorted(work.hull, reverse=True):
        if in_walking_region(v, p, cfg):
            return True
    for e in work.edges:
        if _edge_may_reach(e, p, cfg) and wr_edge_membership(e[0], e[1], p, cfg):
            return True
    return False


class Envelope:
    """Live clusters whose walking regions can still reach future points."""

    def __init__(self, cfg: HighwayConfig):
        self.cfg = cfg
        self.live = []
        self.inserted = 0
        self.deleted = 0

    def add(self, work):
        self.live.append(work)
        self.inserted += 1

    def drop_absorbed(self, lo):
        while self.live and self.live[-1].lo >= lo:
            self.live.pop()
            self.deleted += 1

    def prune(self, x):
        x = x * _reach_scale(self.cfg)
        keep = [w for w in self.live if w.reach >= x]
        self.deleted += len(self.live) - len(keep)
        self.live = keep

    def is_monotone(self) -> bool:
        return all(a.hi < b.lo for a, b in zip(self.live, self.live[1:]))


def point_inclusion(envelope: Envelope, p, cfg: HighwayConfig):
    """Leftmost live cluster whose walking region contains ``p``, or None.

    Returns the ``lo`` rank of that cluster: everything from it to the end
    of the sweep merges with ``p``.
    """
    envelope.prune(p[0])
    for w in envelope.live:
        if cluster_contains(w, p, cfg):
            return w.lo
    return None


def merge_cluster_range(works):
    """Merge consecutive working clusters; returns (merged, new edges)."""
    if not works:
        raise ValueError("empty merge range")
    verts = []
    old = set()
    for w in works:
        verts.extend(w.sorted_vertices())
        old.update(w.edges)
    hull = hull_of_sorted(_dedupe_sorted(verts))
    edges = hull_edges(hull)
    merged = _Work(works[0].lo, works[-1].hi, hull, edges)
    return merged, [e for e in edges if e not in old]


def _dedupe_sorted(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _edge_witness_box(e, cfg, xcap):
    """Box (x0, x1, y0, y1) holding every same-side point, with x <= xcap,
    that can lie in the walking region of edge ``e``."""
    xmin = min(e[0][0], e[1][0])
    xmax = max(e[0][0], e[1][0])
    ymin = min(e[0][1], e[1][1])
    ymax = max(e[0][1], e[1][1])
    if cfg.is_l1:
        k = Fraction(2 * cfg._num, cfg._num - cfg._den)
        x0 = xmin - k * ymax
        y0, y1 = ymin - k * xmax, min(ymax + k * xmax, xcap)
    else:
        x0 = xmin - (4 * ymax + xmax)
        y0, y1 = 0, xcap
    return max(x0, 0), xcap, max(y0, 0), y1


@dataclass
class SideStats:
    merges: int = 0
    new_edges: int = 0
    edge_queries: int = 0


def build_side_clusters(seq: SideSequence, cfg: HighwayConfig, stats: SideStats | None = None):
    """Clusters of one side, ordered along its highway."""
    stats = SideStats() if stats is None else stats
    pts = seq.canonical()
    if not pts:
        return []
    index = DragIndex(pts)
    index.prefix = _prefix_boxes(pts)
    env = Envelope(cfg)
    stack = []
    for i, p in enumerate(pts):
        lo = point_inclusion(env, p, cfg)
        single = _Work(i, i, [p])
        single.reach = _reach(single.hull, cfg)
        if lo is None:
            stack.append(single)
            env.add(single)
            continue
        _merge_from(stack, env, lo, single, pts, index, cfg, stats)
    return _finish(stack, seq, pts)


def _merge_from(stack, env, lo, extra, pts, index, cfg, stats):
    while True:
        j = _find(stack, lo)
        works = stack[j:] + ([extra] if extra is not None else [])
        extra = None
        merged, new = merge_cluster_range(works)
        merged.reach = _reach(merged.hull, cfg)
        stats.merges += len(works) - 1
        stats.new_edges += len(new)
        del stack[j:]
        stack.append(merged)
        env.drop_absorbed(merged.lo)
        env.add(merged)
        if merged.lo == 0:
            return
        best = None
        xcap = pts[merged.lo - 1][0]
        for e in new:
            stats.edge_queries += 1
            hit = _edge_witness(e, pts, index, cfg, merged.lo - 1, xcap)
            if hit is not None and (best is None or hit < best):
                best = hit
        if best is None:
            return
        lo = best


def _prefix_boxes(pts):
    """Bounding box (xmin, xmax, ymin, ymax) of pts[:r + 1] for every r."""
    out = []
    box = None
    for x, y in pts:
        box = (x, x, y, y) if box is None else (
            min(box[0], x), max(box[1], x), min(box[2], y), max(box[3], y))
        out.append(box)
    return out


def _box_far(e, box, cfg):
    """No point of ``box`` can lie in the walking region of edge ``e``."""
    xs, ys = (e[0][0], e[1][0]), (e[0][1], e[1][1])
    gx = max(0, min(xs) - box[1], box[0] - max(xs))
    gy = max(0, min(ys) - box[3], box[2] - max(ys))
    if cfg.is_l1:
        cap = min(max(ys) + box[3], max(xs) + box[1])
        return (gx + gy) * (cfg._num - cfg._den) > cfg._num * cap
    s = min(max(xs), max(ys)) + min(box[1], box[3])
    return gx * gx + gy * gy > s * s


def _edge_witness(e, pts, index, cfg, max_rank, xcap):
    if _box_far(e, index.prefix[max_rank], cfg):
        return None
    x0, x1, y0, y1 = _edge_witness_box(e, cfg, xcap)
    if x0 > x1 or y0 > y1:
        return None
    if y0 == y1:
        y1 = y0 + 1
    q = DragQuery(((x0, y0), (x0, y1)), Direction.RIGHT, x1)
    hit = index.drag(q, max_rank=max_rank,
                     accept=lambda i: wr_edge_membership(e[0], e[1], pts[i], cfg))
    return None if hit is None else hit.index


def _find(stack, rank):
    los = [w.lo for w in stack]
    return bisect_right(los, rank) - 1


def _finish(stack, seq, pts):
    flip = seq.side is Side.SIDE_HY
    out = []
    for k, w in enumerate(stack):
        members = list(seq.points[w.lo:w.hi + 1])
        ids = list(seq.ids[w.lo:w.hi + 1]) if seq.ids else list(range(w.lo, w.hi + 1))
        hull = w.hull
        if flip:
            hull = [(v[1], v[0]) for v in reversed(hull)]
            if len(hull) > 2:
                hull = hull[-1:] + hull[:-1]
        out.append(Cluster(k, members, ids, list(hull), (w.lo, w.hi), seq.side))
    return out
