"""End-to-end time-convex hull computation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .assembly import TimeConvexHull, assemble
from .clustering import Cluster, SideStats, build_side_clusters
from .crossing import (CrossStats, MarkSet, SideIndex, build_outer_boundary,
                       edge_side_inclusion, merge_across, owners_by_rank,
                       point_side_inclusion_l1, point_side_inclusion_l2,
                       select_extremes)
from .geometry import HighwayConfig
from .hull import convex_hull, hull_edges
from .sides import Side, canonical_points, decompose, swap, to_canonical


@dataclass
class PipelineStats:
    n: int = 0
    side_merges: int = 0
    side_new_edges: int = 0
    side_edge_queries: int = 0
    cross: CrossStats = field(default_factory=CrossStats)
    cross_new_edges: int = 0
    fixed_point_rounds: int = 0
    fixed_point_unions: int = 0

    def as_dict(self):
        return {
            "n": self.n,
            "side_merges": self.side_merges,
            "side_new_edges": self.side_new_edges,
            "side_edge_queries": self.side_edge_queries,
            "point_drags": self.cross.point_drags,
            "max_point_drags": self.cross.max_point_drags,
            "witness_drags": self.cross.witness_drags,
            "edge_drags": self.cross.edge_drags,
            "max_edge_drags": self.cross.max_edge_drags,
            "cross_edges_tested": self.cross.edges_tested,
            "cross_new_edges": self.cross_new_edges,
            "fixed_point_rounds": self.fixed_point_rounds,
            "fixed_point_unions": self.fixed_point_unions,
        }


@dataclass
class HullResult:
    hull: TimeConvexHull
    side_x: list
    side_y: list
    merged: list
    marks: MarkSet
    stats: PipelineStats

    def clusters(self):
        """Final clusters in assembly order."""
        return list(reversed(self.side_x)) + list(self.merged) + list(self.side_y)

    def partition(self):
        return {frozenset(c.member_ids) for c in self.clusters()}


class Components:
    """Union-find over the per-side clusters (Side-Hx ids first, then
    Side-Hy ids shifted by ``kx``) with member lists per root."""

    def __init__(self, cx, cy):
        self.kx = len(cx)
        self.clusters = list(cx) + list(cy)
        self.parent = list(range(len(self.clusters)))
        self.members = {k: [k] for k in self.parent}
        self.version = 0
        self._wins = {}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if len(self.members[ra]) < len(self.members[rb]):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.members[ra].extend(self.members.pop(rb))
        self.version += 1
        return True

    def key(self, side, cid):
        return cid if side is Side.SIDE_HX else self.kx + cid

    def windows(self, root, side, n):
        """Rank windows on ``side`` not owned by the component ``root``."""
        tag = (root, side, self.version)
        if tag not in self._wins:
            hy = side is Side.SIDE_HY
            spans = [self.clusters[k].span for k in self.members[root] if (k >= self.kx) == hy]
            self._wins[tag] = _windows(spans, n)
        return self._wins[tag]

    def groups(self):
        return [sorted(self.members[r]) for r in sorted(self.members)]


def _windows(spans, n):
    """Rank windows of [0, n) outside the given inclusive spans."""
    out, cur = [], 0
    for lo, hi in sorted(spans):
        if lo > cur:
            out.append((cur, lo - 1))
        cur = max(cur, hi + 1)
    if cur < n:
        out.append((cur, n - 1))
    return out


def cross_marks(hx, hy, cx, cy, cfg: HighwayConfig, stats: CrossStats, indexes=None,
                comps=None, exhaustive=False):
    """Related (Side-Hx cluster, Side-Hy cluster) pairs.

    Point relations are symmetric, so only Side-Hx points are queried;
    under L2 the envelope of the Side-Hy walking regions along the
    bisector first filters out points that cannot reach across.  Hull
    edges of both sides are queried against the other side.  Unless
    ``exhaustive``, each query skips ranks already connected to the
    querying cluster, which keeps the connectivity but not every pair.
    """
    marks = MarkSet()
    if not hx or not hy:
        return marks
    if indexes is None:
        indexes = (SideIndex(hx, owners_by_rank(cx, len(hx))),
                   SideIndex(hy, owners_by_rank(cy, len(hy))))
    comps = Components(cx, cy) if comps is None else comps
    idx_x, idx_y = indexes

    def wins(side, own, other_side, n):
        if exhaustive:
            return None
        return comps.windows(comps.find(comps.key(side, own)), other_side, n)

    def record(side, own, oth):
        marks.add(side, own, oth)
        comps.union(comps.key(side, own), comps.key(side.other, oth))

    own_x = idx_x.owners
    pts = hx.canonical()
    bd = None if cfg.is_l1 else build_outer_boundary(hy, cfg, idx_y.owners)
    for r, p in enumerate(pts):
        w = wins(Side.SIDE_HX, own_x[r], Side.SIDE_HY, len(hy))
        if w == []:
            continue
        if bd is None:
            found = point_side_inclusion_l1(p, own_x[r], idx_y, cfg, stats, w)
        elif bd.contains(swap(p)):
            found = point_side_inclusion_l2(p, own_x[r], idx_y, cfg, stats, w)
        else:
            found = []
        for own, oth in found:
            record(Side.SIDE_HX, own, oth)
    for seq, clusters, other in ((hx, cx, idx_y), (hy, cy, idx_x)):
        for c in clusters:
            for e in hull_edges(c.hull):
                w = wins(seq.side, c.id, seq.side.other, len(other))
                if w == []:
                    break
                ce = tuple(canonical_points(seq.side, e))
                for own, oth in edge_side_inclusion(ce, c.id, other, cfg, stats, w):
                    record(seq.side, own, oth)
    return marks


def _merged_cluster(parts):
    members, ids = [], []
    for c in parts:
        members.extend(c.members)
        ids.extend(c.member_ids)
    return Cluster(-1, members, ids, convex_hull(members), None, None, True)


def merge_components(hx, hy, comps: Components, cfg, stats, indexes):
    """Grow every cross-side component until none of the new hull edges of
    its merged polygon reaches another component."""
    allc, kx = comps.clusters, comps.kx
    sides = ((Side.SIDE_HX, hx, indexes[0], 0), (Side.SIDE_HY, hy, indexes[1], kx))
    tested = {}
    pending = sorted(r for r, m in comps.members.items() if len(m) > 1)
    while pending:
        stats.fixed_point_rounds += 1
        changed = set()
        for root in sorted({comps.find(r) for r in pending}):
            root = comps.find(root)
            keys = list(comps.members[root])
            hull = convex_hull([v for k in keys for v in allc[k].hull])
            done = set()
            for k in keys:
                done |= tested.get(k, set(hull_edges(allc[k].hull)))
            new = [e for e in hull_edges(hull) if e not in done]
            stats.cross_new_edges += len(new)
            tested[root] = done | set(new)
            for side, seq, idx, off in sides:
                for e in new:
                    wins = comps.windows(comps.find(root), side, len(seq))
                    if not wins:
                        break
                    ce = tuple(to_canonical(side.other, v) for v in e)
                    for _, oth in edge_side_inclusion(ce, -1, idx, cfg, stats.cross, wins):
                        if comps.union(root, off + oth):
                            stats.fixed_point_unions += 1
                            changed.add(comps.find(root))
        pending = sorted({comps.find(r) for r in changed})
    merged, rest_x, rest_y = [], [], []
    for keys in comps.groups():
        if len(keys) > 1:
            merged.append(_merged_cluster([allc[k] for k in keys]))
        elif keys[0] < kx:
            rest_x.append(allc[keys[0]])
        else:
            rest_y.append(allc[keys[0]])
    return merged, rest_x, rest_y


def time_convex_hull(points, cfg: HighwayConfig, exhaustive_marks=False) -> HullResult:
    """Clusters, cross-side merges and highway links for ``points``."""
    points = list(points)
    stats = PipelineStats(n=len(points))
    hx, hy = decompose(points)
    sx, sy = SideStats(), SideStats()
    cx = build_side_clusters(hx, cfg, sx)
    cy = build_side_clusters(hy, cfg, sy)
    for s in (sx, sy):
        stats.side_merges += s.merges
        stats.side_new_edges += s.new_edges
        stats.side_edge_queries += s.edge_queries
    merged, rest_x, rest_y = [], cx, cy
    marks = MarkSet()
    if hx and hy:
        indexes = (SideIndex(hx, owners_by_rank(cx, len(hx))),
                   SideIndex(hy, owners_by_rank(cy, len(hy))))
        comps = Components(cx, cy)
        marks = cross_marks(hx, hy, cx, cy, cfg, stats.cross, indexes, comps, exhaustive_marks)
        if marks:
            merged, rest_x, rest_y = merge_components(hx, hy, comps, cfg, stats, indexes)
    hull = assemble(rest_x, rest_y, merged, cfg)
    return HullResult(hull, rest_x, rest_y, merged, marks, stats)


def extreme_merge_partition(points, cfg: HighwayConfig):
    """Partition obtained by merging the extreme marked pair and every
    cluster before it on both sides, with no further merging.

    Returns ``(partition, extremes)``; used to measure how often that
    shortcut agrees with the full closure.
    """
    points = list(points)
    hx, hy = decompose(points)
    cx = build_side_clusters(hx, cfg)
    cy = build_side_clusters(hy, cfg)
    clusters = list(cx) + list(cy)
    ext = None
    if hx and hy:
        marks = cross_marks(hx, hy, cx, cy, cfg, CrossStats(), exhaustive=True)
        ext = select_extremes(marks)
        if ext is not None:
            m, rx, ry = merge_across(cx, cy, *ext)
            clusters = [m] + rx + ry
    return {frozenset(c.member_ids) for c in clusters}, ext
