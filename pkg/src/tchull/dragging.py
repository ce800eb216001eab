"""Static index for bounded segment-dragging queries.

A query translates a segment rightwards (or upwards) until it reaches a
limit line and asks for the first indexed point the segment touches.  The
index is a bucketed k-d tree searched best-first on exact lower bounds of
the drag distance, so answers are exact for rational input.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

LEAF_SIZE = 12


class Direction(enum.Enum):
    RIGHT = "right"
    UP = "up"


@dataclass(frozen=True)
class DragQuery:
    """Drag ``segment`` in ``direction`` until the line ``x = limit``
    (RIGHT) or ``y = limit`` (UP); ``limit=None`` means unbounded."""

    segment: tuple
    direction: Direction = Direction.RIGHT
    limit: object = None

    def __post_init__(self):
        a, b = self.segment
        ax = 1 if self.direction is Direction.RIGHT else 0
        if a[ax] == b[ax]:
            raise ValueError("segment has zero extent across the drag direction")


@dataclass(frozen=True)
class Hit:
    index: int
    point: tuple
    key: tuple


class DragIndex:
    """Immutable drag index over ``points``.

    ``ranks`` (default: list position) lets callers restrict a query to a
    rank window, which the pipeline uses to skip already merged prefixes.
    """

    def __init__(self, points, ranks=None):
        self.points = list(points)
        n = len(self.points)
        self.ranks = list(range(n)) if ranks is None else list(ranks)
        self.probes = 0
        self.queries = 0
        self._perm = []
        self._nodes = []
        if n:
            self._build()

    def __len__(self):
        return len(self.points)

    def _build(self):
        pts = self.points
        fx = np.array([float(p[0]) for p in pts])
        fy = np.array([float(p[1]) for p in pts])
        perm = np.arange(len(pts))
        nodes = self._nodes
        # node: [lo, hi, left, right, xmin, xmax, ymin, ymax, rmin, rmax]
        stack = [(0, len(pts), -1, 0)]
        order = []
        while stack:
            lo, hi, parent, which = stack.pop()
            idx = len(nodes)
            nodes.append([lo, hi, -1, -1, None, None, None, None, None, None])
            if parent >= 0:
                nodes[parent][2 + which] = idx
            order.append(idx)
            if hi - lo <= LEAF_SIZE:
                continue
            seg = perm[lo:hi]
            xs, ys = fx[seg], fy[seg]
            axis = xs if (xs.max() - xs.min()) >= (ys.max() - ys.min()) else ys
            mid = (hi - lo) // 2
            part = np.argpartition(axis, mid)
            perm[lo:hi] = seg[part]
            stack.append((lo + mid, hi, idx, 1))
            stack.append((lo, lo + mid, idx, 0))
        self._perm = perm.tolist()
        ranks = self.ranks
        for idx in reversed(order):
            nd = nodes[idx]
            if nd[2] < 0:
                members = self._perm[nd[0]:nd[1]]
                xs = [pts[i][0] for i in members]
                ys = [pts[i][1] for i in members]
                rs = [ranks[i] for i in members]
                nd[4:10] = [min(xs), max(xs), min(ys), max(ys), min(rs), max(rs)]
            else:
                l, r = nodes[nd[2]], nodes[nd[3]]
                nd[4:10] = [min(l[4], r[4]), max(l[5], r[5]), min(l[6], r[6]),
                            max(l[7], r[7]), min(l[8], r[8]), max(l[9], r[9])]

    def drag(self, query: DragQuery, *, after=None, accept=None,
             min_rank=None, max_rank=None, highest_rank=False):
        """First point hit (minimal drag distance, then smaller y, then x).

        ``after`` skips points whose key is <= it; ``accept`` filters
        candidates in hit order.  With ``highest_rank`` the swept region is
        the same but candidates are visited by decreasing rank instead, so
        the answer is the accepted point of largest rank.  Returns a
        :class:`Hit` or ``None``.
        """
        self.queries += 1
        if not self._nodes:
            return None
        right = query.direction is Direction.RIGHT
        a, b = query.segment
        # work in (sweep, cross) coordinates: sweep is the drag axis
        sw, cr = (0, 1) if right else (1, 0)
        if a[cr] > b[cr]:
            a, b = b, a
        c0, c1 = a[cr], b[cr]
        s0 = a[sw]
        limit = query.limit
        pts, ranks, nodes, perm = self.points, self.ranks, self._nodes, self._perm
        if b[sw] == a[sw]:
            def seg_at(c):
                return s0
        else:
            slope = Fraction(b[sw] - a[sw]) / (c1 - c0)

            def seg_at(c):
                return s0 + slope * (c - c0)

        def node_bound(nd):
            lo_c = max(nd[6] if right else nd[4], c0)
            hi_c = min(nd[7] if right else nd[5], c1)
            if lo_c > hi_c:
                return None
            smin, smax = (nd[4], nd[5]) if right else (nd[6], nd[7])
            if limit is not None and smin > limit:
                return None
            e0, e1 = seg_at(lo_c), seg_at(hi_c)
            if smax < min(e0, e1):
                return None
            if min_rank is not None and nd[9] < min_rank:
                return None
            if max_rank is not None and nd[8] > max_rank:
                return None
            if highest_rank:
                return -nd[9]
            return max(0, smin - max(e0, e1))

        counter = itertools.count()
        heap = []
        lb = node_bound(nodes[0])
        if lb is not None:
            heap.append((lb, 0, next(counter), 0))
        while heap:
            item = heapq.heappop(heap)
            self.probes += 1
            if item[1] == 1:
                i = item[-1]
                key = (item[0], item[2], item[3])
                if after is not None and key <= after:
                    continue
                if accept is None or accept(i):
                    return Hit(i, pts[i], key)
                continue
            nd = nodes[item[3]]
            if nd[2] >= 0:
                for child in (nd[2], nd[3]):
                    cb = node_bound(nodes[child])
                    if cb is not None:
                        heapq.heappush(heap, (cb, 0, next(counter), child))
                continue
            for i in perm[nd[0]:nd[1]]:
                p = pts[i]
                c = p[cr]
                if c < c0 or c > c1:
                    continue
                if limit is not None and p[sw] > limit:
                    continue
                r = ranks[i]
                if (min_rank is not None and r < min_rank) or (max_rank is not None and r > max_rank):
                    continue
                d = p[sw] - seg_at(c)
                if d < 0:
                    continue
                if highest_rank:
                    heapq.heappush(heap, (-r, 1, 0, 0, next(counter), i))
                else:
                    heapq.heappush(heap, (d, 1, p[1], p[0], next(counter), i))
        return None


def build_index(points, ranks=None) -> DragIndex:
    return DragIndex(points, ranks)


EMPTY = None


def drag(index: DragIndex, query: DragQuery):
    """Witness point of ``query`` or ``EMPTY``."""
    hit = index.drag(query)
    return EMPTY if hit is None else hit.point
