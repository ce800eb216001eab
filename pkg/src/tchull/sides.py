"""Split a point set by the bisector x = y into the two highway sides."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Side(enum.Enum):
    SIDE_HX = "hx"
    SIDE_HY = "hy"

    @property
    def other(self):
        return Side.SIDE_HY if self is Side.SIDE_HX else Side.SIDE_HX


@dataclass(frozen=True)
class SideSequence:
    side: Side
    points: tuple
    ids: tuple = ()

    def __len__(self):
        return len(self.points)

    def canonical(self):
        """Points mapped to the Side-Hx frame (y <= x), in sweep order."""
        return canonical_points(self.side, self.points)


def assign_side(p) -> Side:
    if p[0] < 0 or p[1] < 0:
        raise ValueError(f"point {p} lies outside the closed first quadrant")
    return Side.SIDE_HX if p[1] <= p[0] else Side.SIDE_HY


def swap(p):
    return (p[1], p[0])


def to_canonical(side: Side, p):
    return p if side is Side.SIDE_HX else (p[1], p[0])


def canonical_points(side: Side, points):
    if side is Side.SIDE_HX:
        return list(points)
    return [(p[1], p[0]) for p in points]


def side_key(side: Side):
    if side is Side.SIDE_HX:
        return lambda p: (p[0], p[1])
    return lambda p: (p[1], p[0])


def decompose(points):
    """Return ``(hx, hy)`` side sequences sorted along their highways."""
    hx, hy = [], []
    for i, p in enumerate(points):
        (hx if assign_side(p) is Side.SIDE_HX else hy).append(i)
    kx, ky = side_key(Side.SIDE_HX), side_key(Side.SIDE_HY)
    hx.sort(key=lambda i: (kx(points[i]), i))
    hy.sort(key=lambda i: (ky(points[i]), i))
    return (SideSequence(Side.SIDE_HX, tuple(points[i] for i in hx), tuple(hx)),
            SideSequence(Side.SIDE_HY, tuple(points[i] for i in hy), tuple(hy)))
