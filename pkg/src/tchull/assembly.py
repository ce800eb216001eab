"""Turn final cluster lists into polygons plus highway links."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .clustering import Cluster


class Axis(enum.Enum):
    HX = "HX"
    HY = "HY"


@dataclass
class Foot:
    axis: Axis
    lo: object
    hi: object


@dataclass
class Placed:
    """A cluster polygon with the highway intervals it attaches to."""

    hull: list
    member_ids: list
    feet: list
    side: object = None


@dataclass
class TimeConvexHull:
    clusters: list = field(default_factory=list)
    highway_links: list = field(default_factory=list)  # (Axis, (lo, hi))
    uses_both_highways: bool = False
    visits: int = 0

    def feet_on(self, axis):
        return sorted((f.lo, f.hi) for c in self.clusters for f in c.feet if f.axis is axis)


def _span(hull, k):
    vals = [v[k] for v in hull]
    return min(vals), max(vals)


def _uses_cross_axis(hull, cfg, k):
    """L1 only: whether some vertex may reach clusters across the bisector
    faster by walking straight to the other axis than through the origin.

    For a Side-Hx vertex (a, b) = (x, y): riding H_y beats going through
    the origin when a(V - 1) < b(V + 1).  ``k`` = 1 mirrors this for Side-Hy.
    """
    if not cfg.is_l1:
        return False
    v = cfg.speed
    for p in hull:
        a, b = (p[0], p[1]) if k == 0 else (p[1], p[0])
        if a * (v - 1) < b * (v + 1):
            return True
    return False


def attachment_feet(c, cfg=None, others_across=False):
    """Intervals where cluster ``c`` meets the highways.

    A Side-Hx cluster projects onto HX and a Side-Hy cluster onto HY; a
    cluster merged across the bisector projects onto both.  Under L1 a
    one-sided cluster also projects onto the other axis when clusters
    exist across the bisector and one of its vertices would walk straight
    to that axis to reach them.
    """
    from .sides import Side

    hx = Foot(Axis.HX, *_span(c.hull, 0))
    hy = Foot(Axis.HY, *_span(c.hull, 1))
    if c.side is None:
        return [hx, hy]
    k = 0 if c.side is Side.SIDE_HX else 1
    feet = [hx] if k == 0 else [hy]
    if others_across and cfg is not None and _uses_cross_axis(c.hull, cfg, k):
        feet.append(hy if k == 0 else hx)
    return feet


def _links(feet, with_origin):
    out = []
    if not feet:
        return out
    reach = feet[0][0]
    if with_origin and reach > 0:
        out.append((0, reach))
    reach = feet[0][1]
    for lo, hi in feet[1:]:
        if lo > reach:
            out.append((reach, lo))
        reach = max(reach, hi)
    return out


def assemble(side_x, side_y, merged=(), cfg=None) -> TimeConvexHull:
    """One pass: Side-Hx clusters far to near, the clusters merged across
    the bisector, then Side-Hy clusters near to far."""
    if merged is None:
        merged = []
    elif isinstance(merged, Cluster):
        merged = [merged]
    tch = TimeConvexHull(uses_both_highways=bool(merged))
    across_x = bool(side_y) or bool(merged)
    across_y = bool(side_x) or bool(merged)
    order = [(c, across_x) for c in reversed(side_x)] + [(c, True) for c in merged]
    order += [(c, across_y) for c in side_y]
    seen = set()
    for c, across in order:
        if id(c) in seen:
            raise AssertionError("cluster visited twice")
        seen.add(id(c))
        tch.visits += 1
        tch.clusters.append(Placed(list(c.hull), list(c.member_ids),
                                   attachment_feet(c, cfg, across), c.side))
    fx, fy = tch.feet_on(Axis.HX), tch.feet_on(Axis.HY)
    both = bool(fx) and bool(fy)
    tch.highway_links = ([(Axis.HX, iv) for iv in _links(fx, both)]
                         + [(Axis.HY, iv) for iv in _links(fy, both)])
    return tch
