"""Brute-force reference implementations.

Nothing here shares code with the fast pipeline beyond the exact
predicates in :mod:`tchull.geometry` and the convex hull helper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import (HighwayConfig, PathKind, highway_cost_l2inf, highway_path_costs,
                       in_walking_region, metric_distance, wr_edge_membership)
from .hull import convex_hull, hull_edges


def oracle_time_distance(p, q, cfg: HighwayConfig, resolution) -> float:
    """Numeric minimum travel time over sampled highway entry/exit points.

    Highway stations are sampled every ``resolution`` along both axes from
    the origin to the largest coordinate involved.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    px, py = (float(v) for v in p)
    qx, qy = (float(v) for v in q)
    top = max(px, py, qx, qy)
    h = float(resolution)
    s = np.arange(0.0, top + h, h)
    if cfg.is_l1:
        direct = abs(px - qx) + abs(py - qy)
        inv = 1.0 / float(cfg.speed)
        # walking legs to stations on H_x (y=0) and H_y (x=0)
        p_hx = np.abs(px - s) + py
        p_hy = np.abs(py - s) + px
        q_hx = np.abs(qx - s) + qy
        q_hy = np.abs(qy - s) + qx
        best = direct
        ride = np.abs(s[:, None] - s[None, :]) * inv
        best = min(best, float((p_hx[:, None] + ride + q_hx[None, :]).min()))
        best = min(best, float((p_hy[:, None] + ride + q_hy[None, :]).min()))
        via_o = (s[:, None] + s[None, :]) * inv
        best = min(best, float((p_hx[:, None] + via_o + q_hy[None, :]).min()))
        best = min(best, float((p_hy[:, None] + via_o + q_hx[None, :]).min()))
        return best
    direct = float(np.hypot(px - qx, py - qy))
    p_leg = min(np.hypot(px - s, py).min(), np.hypot(px, py - s).min())
    q_leg = min(np.hypot(qx - s, qy).min(), np.hypot(qx, qy - s).min())
    return min(direct, float(p_leg + q_leg))


@dataclass
class OraclePartition:
    blocks: list
    hulls: list

    def as_sets(self):
        return {frozenset(b) for b in self.blocks}


class _Block:
    __slots__ = ("members", "hull", "edges")

    def __init__(self, members, points):
        self.members = members
        self.hull = convex_hull([points[i] for i in members])
        self.edges = hull_edges(self.hull)


def blocks_related(hull_a, edges_a, hull_b, edges_b, cfg) -> bool:
    """Some vertex of one lies in the walking region of a vertex or edge
    of the other."""
    for u in hull_a:
        for v in hull_b:
            if in_walking_region(u, v, cfg):
                return True
    for u in hull_a:
        for e in edges_b:
            if wr_edge_membership(e[0], e[1], u, cfg):
                return True
    for v in hull_b:
        for e in edges_a:
            if wr_edge_membership(e[0], e[1], v, cfg):
                return True
    return False


def oracle_clusters(points, cfg: HighwayConfig) -> OraclePartition:
    """Fixed point of walking-region closure over all points, ignoring sides."""
    points = list(points)
    blocks = {i: _Block([i], points) for i in range(len(points))}
    next_id = len(points)
    unrelated = set()
    changed = True
    while changed:
        changed = False
        ids = sorted(blocks)
        for ai, a in enumerate(ids):
            for b in ids[ai + 1:]:
                if (a, b) in unrelated:
                    continue
                A, B = blocks[a], blocks[b]
                if blocks_related(A.hull, A.edges, B.hull, B.edges, cfg):
                    del blocks[a], blocks[b]
                    blocks[next_id] = _Block(sorted(A.members + B.members), points)
                    next_id += 1
                    changed = True
                    break
                unrelated.add((a, b))
            if changed:
                break
    out = sorted(blocks.values(), key=lambda blk: blk.members[0])
    return OraclePartition([blk.members for blk in out], [blk.hull for blk in out])


def oracle_cross_marks(side_x, side_y, cfg: HighwayConfig):
    """All (x cluster id, y cluster id) pairs related by walking regions.

    ``side_x`` and ``side_y`` are sequences of objects with ``id``, ``hull``
    attributes (cluster hulls in original coordinates).
    """
    pairs = set()
    for c in side_x:
        ec = hull_edges(c.hull)
        for d in side_y:
            if blocks_related(c.hull, ec, d.hull, hull_edges(d.hull), cfg):
                pairs.add((c.id, d.id))
    return pairs


def brute_drag(points, query):
    """Linear-scan answer to a segment-dragging query (same tie-break)."""
    from .dragging import Direction

    right = query.direction is Direction.RIGHT
    a, b = query.segment
    sw, cr = (0, 1) if right else (1, 0)
    if a[cr] > b[cr]:
        a, b = b, a
    best = None
    for p in points:
        if not a[cr] <= p[cr] <= b[cr]:
            continue
        if query.limit is not None and p[sw] > query.limit:
            continue
        d = p[sw] - (a[sw] + Fraction(b[sw] - a[sw]) / (b[cr] - a[cr]) * (p[cr] - a[cr]))
        if d < 0:
            continue
        key = (d, p[1], p[0])
        if best is None or key < best[0]:
            best = (key, p)
    return None if best is None else best[1]


# --- closure sampling -------------------------------------------------------
#
# A path is a list of pieces: ("walk", a, b) for a straight walk and
# ("ride", axis, lo, hi) for a stretch of highway, axis "HX" or "HY".


def _leg(p, axis):
    foot = (p[0], 0) if axis == "HX" else (0, p[1])
    return ("walk", p, foot)


def _ride(axis, a, b):
    return ("ride", axis, min(a, b), max(a, b))


def stp_paths(p, q, cfg: HighwayConfig):
    """Every shortest time path shape between ``p`` and ``q``.

    Walks are straight; highway paths leave and join the highway
    perpendicularly, which is optimal for both metrics.
    """
    direct = metric_distance(p, q, cfg)
    if cfg.is_l1:
        cands = [(c.kind, c.cost) for c in highway_path_costs(p, q, cfg)]
    else:
        cost = highway_cost_l2inf(p, q)
        cands = []
        for ap in ("HX", "HY"):
            for aq in ("HX", "HY"):
                walk_p = p[1] if ap == "HX" else p[0]
                walk_q = q[1] if aq == "HX" else q[0]
                if walk_p + walk_q == cost:
                    cands.append(((ap, aq), cost))
    best = min([direct] + [c for _, c in cands])
    out = []
    if direct == best:
        out.append([("walk", p, q)])
    for kind, cost in cands:
        if cost != best:
            continue
        ap, aq = _axes(kind)
        sp = p[0] if ap == "HX" else p[1]
        sq = q[0] if aq == "HX" else q[1]
        if ap == aq:
            rides = [_ride(ap, sp, sq)]
        else:
            rides = [_ride(ap, 0, sp), _ride(aq, 0, sq)]
        out.append([_leg(p, ap)] + rides + [_leg(q, aq)])
    return out


def _axes(kind):
    if isinstance(kind, tuple):
        return kind
    return {PathKind.VIA_HX: ("HX", "HX"), PathKind.VIA_HY: ("HY", "HY"),
            PathKind.VIA_HX_THEN_HY: ("HX", "HY"),
            PathKind.VIA_HY_THEN_HX: ("HY", "HX")}[kind]


class Coverage:
    """Float membership tests against an assembled hull (polygons, the
    shadows of polygons onto the axes they have feet on, feet and links)."""

    def __init__(self, tch, tol):
        self.tol = tol
        self.polys = [np.array([[float(x), float(y)] for x, y in c.hull]) for c in tch.clusters]
        self.feet = [{f.axis.value for f in c.feet} for c in tch.clusters]
        self.spans = {"HX": [], "HY": []}
        for c in tch.clusters:
            for f in c.feet:
                self.spans[f.axis.value].append((float(f.lo), float(f.hi)))
        for axis, (lo, hi) in tch.highway_links:
            self.spans[axis.value].append((float(lo), float(hi)))

    def in_polygons(self, pts):
        ok = np.zeros(len(pts), dtype=bool)
        for poly in self.polys:
            ok |= _in_poly(poly, pts, self.tol)
        return ok

    def on_axis(self, axis, s):
        ok = np.zeros(len(s), dtype=bool)
        for lo, hi in self.spans[axis]:
            ok |= (s >= lo - self.tol) & (s <= hi + self.tol)
        return ok

    def in_shadow(self, axis, pts):
        """Points between a polygon and an axis it has a foot on."""
        ok = np.zeros(len(pts), dtype=bool)
        k = 0 if axis == "HX" else 1
        for poly, feet in zip(self.polys, self.feet):
            if axis not in feet:
                continue
            top = _extent(poly, pts[:, k], k)
            ok |= pts[:, 1 - k] <= top + self.tol
        return ok


def _in_poly(poly, pts, tol):
    n = len(poly)
    if n == 1:
        return np.hypot(pts[:, 0] - poly[0, 0], pts[:, 1] - poly[0, 1]) <= tol
    if n == 2:
        a, b = poly
        d = b - a
        t = np.clip(((pts - a) @ d) / (d @ d), 0.0, 1.0)
        near = a + t[:, None] * d
        return np.hypot(*(pts - near).T) <= tol
    ok = np.ones(len(pts), dtype=bool)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        e = b - a
        c = e[0] * (pts[:, 1] - a[1]) - e[1] * (pts[:, 0] - a[0])
        ok &= c >= -tol * np.hypot(*e)
    return ok


def _extent(poly, coord, k):
    """Largest other-coordinate of ``poly`` on the lines ``p[k] == coord``
    (``-inf`` where the line misses it)."""
    out = np.full(len(coord), -np.inf)
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n] if n > 1 else poly[i]
        lo, hi = min(a[k], b[k]), max(a[k], b[k])
        hit = (coord >= lo) & (coord <= hi)
        if hi > lo:
            t = (coord - a[k]) / (b[k] - a[k])
            val = a[1 - k] + t * (b[1 - k] - a[1 - k])
        else:
            val = np.full(len(coord), max(a[1 - k], b[1 - k]))
        out = np.where(hit, np.maximum(out, val), out)
    return out


def _samples(a, b, step):
    a = np.array([float(a[0]), float(a[1])])
    b = np.array([float(b[0]), float(b[1])])
    m = max(2, int(np.ceil(np.hypot(*(b - a)) / step)) + 1)
    t = np.linspace(0.0, 1.0, m)[:, None]
    return a + t * (b - a)


def path_covered(path, cov: Coverage, step) -> bool:
    """Whether every sample of ``path`` lies in the covered set.

    A direct walk must stay inside the polygons; a perpendicular leg may
    also use the shadow of a polygon onto the axis it ends on; highway
    stretches must lie on feet or links.
    """
    for piece in path:
        if piece[0] == "ride":
            _, axis, lo, hi = piece
            m = max(2, int(np.ceil((float(hi) - float(lo)) / step)) + 1)
            if not cov.on_axis(axis, np.linspace(float(lo), float(hi), m)).all():
                return False
            continue
        _, a, b = piece
        pts = _samples(a, b, step)
        ok = cov.in_polygons(pts)
        if b[1] == 0 and b[0] == a[0] and a[1] != 0:
            ok |= cov.in_shadow("HX", pts)
        elif b[0] == 0 and b[1] == a[1] and a[0] != 0:
            ok |= cov.in_shadow("HY", pts)
        if not ok.all():
            return False
    return True


def closure_violations(points, tch, cfg: HighwayConfig, pairs, resolution):
    """Pairs ``(i, j)`` none of whose shortest time paths is covered by the
    assembled hull ``tch`` when sampled every ``resolution``."""
    pts = list(points)
    diam = max((float(v) for p in pts for v in p), default=1.0) or 1.0
    cov = Coverage(tch, 1e-9 * diam)
    bad = []
    for i, j in pairs:
        paths = stp_paths(pts[i], pts[j], cfg)
        if not any(path_covered(path, cov, resolution) for path in paths):
            bad.append((i, j))
    return bad
