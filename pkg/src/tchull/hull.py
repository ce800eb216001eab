"""Exact planar convex hulls (Andrew's monotone chain)."""


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _half(points):
    chain = []
    for p in points:
        while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    return chain


def convex_hull(points):
    """Counterclockwise hull vertices without collinear points.

    One distinct point gives ``[p]``; collinear input gives the two
    extreme points.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = _half(pts)
    upper = _half(reversed(pts))
    return lower[:-1] + upper[:-1]


def hull_of_sorted(pts):
    """Same as :func:`convex_hull` for an already sorted, duplicate-free list."""
    if len(pts) <= 2:
        return list(pts)
    lower = _half(pts)
    upper = _half(reversed(pts))
    return lower[:-1] + upper[:-1]


def hull_edges(hull):
    """Undirected edges of a hull polygon as sorted point pairs."""
    n = len(hull)
    if n < 2:
        return []
    if n == 2:
        return [tuple(sorted(hull))]
    return [tuple(sorted((hull[i], hull[(i + 1) % n]))) for i in range(n)]


def in_convex_polygon(hull, p) -> bool:
    """Closed point-in-polygon test for a CCW hull (handles degenerate hulls)."""
    n = len(hull)
    if n == 0:
        return False
    if n == 1:
        return p == hull[0]
    if n == 2:
        a, b = hull
        if cross(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    return all(cross(hull[i], hull[(i + 1) % n], p) >= 0 for i in range(n))


def is_convex_ccw(hull) -> bool:
    n = len(hull)
    if n < 3:
        return True
    return all(cross(hull[i], hull[(i + 1) % n], hull[(i + 2) % n]) > 0 for i in range(n))
