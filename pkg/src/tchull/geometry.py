"""Exact time-distance geometry in the first quadrant with the two
coordinate axes acting as highways.

Points are plain ``(x, y)`` tuples whose coordinates are ``int`` or
``fractions.Fraction``.  Every predicate is evaluated exactly; distances
under the Euclidean metric are returned as :class:`Root` values so that
comparisons never go through floating point.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

ORIGIN = (0, 0)


def to_scalar(value):
    """Parse ``value`` into an exact scalar (``int`` when integral).

    Accepts ints, Fractions, decimal strings and ``"a/b"`` strings.  Floats
    are converted through their decimal ``repr`` so ``0.1`` means 1/10.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite scalar {value!r}")
        value = repr(value)
    if isinstance(value, str):
        value = value.strip()
        if not value:
            raise ValueError("empty scalar string")
    try:
        f = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"cannot parse scalar {value!r}") from exc
    return normalize(f)


def normalize(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def scalar_str(v) -> str:
    """Exact string form: ``"3"`` or ``"7/2"``."""
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def make_point(x, y):
    p = (to_scalar(x), to_scalar(y))
    if p[0] < 0 or p[1] < 0:
        raise ValueError(f"point {p} lies outside the closed first quadrant")
    return p


@total_ordering
class Root:
    """The non-negative square root of an exact rational ``square``.

    Supports exact comparison against rationals and other roots.
    """

    __slots__ = ("square",)

    def __init__(self, square):
        if square < 0:
            raise ValueError("negative radicand")
        self.square = square

    @classmethod
    def of(cls, square):
        """Return a rational when ``square`` is a perfect square."""
        f = Fraction(square)
        n, d = f.numerator, f.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return normalize(Fraction(rn, rd))
        return cls(square)

    def _cmp(self, other):
        if isinstance(other, Root):
            a, b = self.square, other.square
        elif isinstance(other, Rational):
            if other < 0:
                return 1
            a, b = self.square, other * other
        else:
            return NotImplemented
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __hash__(self):
        return hash(("Root", self.square))

    def __float__(self):
        return math.sqrt(self.square)

    def __repr__(self):
        return f"Root({self.square})"


class Metric(enum.Enum):
    L1 = "L1"
    L2_INF = "L2INF"


INFINITE = None


@dataclass(frozen=True)
class HighwayConfig:
    """Metric plus highway speed (ratio of highway to walking speed)."""

    metric: Metric
    speed: Fraction | None = INFINITE
    _num: int = field(init=False, repr=False, compare=False)
    _den: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        metric = Metric(self.metric)
        object.__setattr__(self, "metric", metric)
        if metric is Metric.L1:
            if self.speed is None:
                raise ValueError("L1 requires a finite highway speed")
            speed = Fraction(to_scalar(self.speed))
            if speed <= 1:
                raise ValueError(f"highway speed must exceed 1, got {speed}")
            object.__setattr__(self, "speed", speed)
            object.__setattr__(self, "_num", speed.numerator)
            object.__setattr__(self, "_den", speed.denominator)
        else:
            if self.speed is not None:
                raise ValueError("L2INF requires an infinite highway speed")
            object.__setattr__(self, "_num", 1)
            object.__setattr__(self, "_den", 0)

    @classmethod
    def l1(cls, speed):
        return cls(Metric.L1, speed)

    @classmethod
    def l2inf(cls):
        return cls(Metric.L2_INF, None)

    @property
    def is_l1(self):
        return self.metric is Metric.L1


class PathKind(enum.Enum):
    DIRECT = "direct"
    VIA_HX = "via_hx"
    VIA_HY = "via_hy"
    VIA_HX_THEN_HY = "via_hx_then_hy"
    VIA_HY_THEN_HX = "via_hy_then_hx"


@dataclass(frozen=True)
class PathCandidate:
    kind: PathKind
    cost: object


def metric_distance(p, q, cfg: HighwayConfig):
    """L1 distance as a rational, or the Euclidean distance as a Root."""
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    if cfg.is_l1:
        return abs(dx) + abs(dy)
    return Root.of(dx * dx + dy * dy)


def highway_path_costs(p, q, cfg: HighwayConfig):
    """The four highway-using path costs between ``p`` and ``q`` (L1 only)."""
    if not cfg.is_l1:
        raise ValueError("highway_path_costs is defined for the L1 metric only")
    v = cfg.speed
    xp, yp = p
    xq, yq = q
    costs = [
        (PathKind.VIA_HX, yp + abs(xp - xq) / v + yq),
        (PathKind.VIA_HY, xp + abs(yp - yq) / v + xq),
        (PathKind.VIA_HX_THEN_HY, yp + xp / v + yq / v + xq),
        (PathKind.VIA_HY_THEN_HX, xp + yp / v + xq / v + yq),
    ]
    return [PathCandidate(k, normalize(Fraction(c))) for k, c in costs]


def highway_cost_l2inf(p, q):
    """Cost of the best highway path when highway travel is free."""
    return min(p) + min(q)


def time_distance(p, q, cfg: HighwayConfig):
    if cfg.is_l1:
        direct = metric_distance(p, q, cfg)
        return min([direct] + [c.cost for c in highway_path_costs(p, q, cfg)])
    direct = metric_distance(p, q, cfg)
    via = highway_cost_l2inf(p, q)
    return direct if direct <= via else via


def l1_slacks(p, q, num, den):
    """Scaled slack of each highway path over the direct walk.

    With speed ``num/den`` every entry equals ``num * (cost - |pq|_1)``; the
    direct walk is optimal (ties included) iff all entries are >= 0.
    """
    xp, yp = p
    xq, yq = q
    adx = abs(xp - xq)
    ady = abs(yp - yq)
    d = num * (adx + ady)
    return (
        num * (yp + yq) + den * adx - d,
        num * (xp + xq) + den * ady - d,
        num * (yp + xq) + den * (xp + yq) - d,
        num * (xp + yq) + den * (yp + xq) - d,
    )


def in_walking_region(p, q, cfg: HighwayConfig) -> bool:
    """True iff walking straight from ``p`` to ``q`` is a shortest time-path."""
    if cfg.is_l1:
        return min(l1_slacks(p, q, cfg._num, cfg._den)) >= 0
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    s = min(p) + min(q)
    return dx * dx + dy * dy <= s * s


def _lerp(a, b, t):
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def _interval_where_nonneg(h0, h1, t0, t1):
    """Sub-interval of [t0, t1] where a linear function with end values
    h0, h1 is >= 0, or None."""
    if h0 >= 0 and h1 >= 0:
        return t0, t1
    if h0 < 0 and h1 < 0:
        return None
    tc = t0 + (t1 - t0) * Fraction(h0) / (h0 - h1)
    return (tc, t1) if h0 < 0 else (t0, tc)


def _edge_far(a, b, q, cfg):
    """Cheap sufficient test for ``q`` outside the walking region of ``ab``,
    from the distance between ``q`` and the segment's bounding box."""
    xs, ys = (a[0], b[0]), (a[1], b[1])
    gx = max(0, min(xs) - q[0], q[0] - max(xs))
    gy = max(0, min(ys) - q[1], q[1] - max(ys))
    if cfg.is_l1:
        # walking beats riding either axis only if the distance is bounded
        cap = min(max(ys) + q[1], max(xs) + q[0])
        return (gx + gy) * (cfg._num - cfg._den) > cfg._num * cap
    s = min(max(xs), max(ys)) + min(q)
    return gx * gx + gy * gy > s * s


def wr_edge_membership(a, b, q, cfg: HighwayConfig) -> bool:
    """True iff some point on segment ``ab`` has ``q`` in its walking region."""
    if a == b:
        return in_walking_region(a, q, cfg)
    if _edge_far(a, b, q, cfg):
        return False
    d = (b[0] - a[0], b[1] - a[1])
    cuts = {Fraction(0), Fraction(1)}
    if cfg.is_l1:
        for i in (0, 1):
            if d[i] != 0:
                t = Fraction(q[i] - a[i], 1) / d[i]
                if 0 < t < 1:
                    cuts.add(t)
    elif d[0] != d[1]:
        t = Fraction(a[1] - a[0], 1) / (d[0] - d[1])
        if 0 < t < 1:
            cuts.add(t)
    ts = sorted(cuts)
    if cfg.is_l1:
        quick = _l1_edge_float(a, b, q, cfg._num, cfg._den, ts)
        if quick is not None:
            return quick
    for t0, t1 in zip(ts, ts[1:]):
        if cfg.is_l1:
            if _l1_piece_feasible(a, b, q, cfg, t0, t1):
                return True
        elif _l2_piece_feasible(a, d, q, t0, t1):
            return True
    return False


def _l1_edge_float(a, b, q, num, den, ts):
    """Float evaluation of the L1 edge test: True/False when the answer is
    clear by a wide margin, None when exact arithmetic must decide."""
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    qx, qy = float(q[0]), float(q[1])
    fn, fd = float(num), float(den)
    scale = fn * (abs(ax) + abs(ay) + abs(bx) + abs(by) + abs(qx) + abs(qy) + 1.0)
    tol = 1e-9 * scale
    unsure = False
    fts = [float(t) for t in ts]
    for t0, t1 in zip(fts, fts[1:]):
        lines = []
        for t in (t0, t1):
            p = (ax + (bx - ax) * t, ay + (by - ay) * t)
            lines.append(l1_slacks(p, (qx, qy), fn, fd))
        cands = [t0, t1]
        for i in range(4):
            for j in range(i + 1, 4):
                di = lines[1][i] - lines[0][i]
                dj = lines[1][j] - lines[0][j]
                if di != dj:
                    u = (lines[0][j] - lines[0][i]) / (di - dj)
                    if 0.0 < u < 1.0:
                        cands.append(t0 + (t1 - t0) * u)
        best = -math.inf
        for t in cands:
            u = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            val = min(lines[0][k] + (lines[1][k] - lines[0][k]) * u for k in range(4))
            best = max(best, val)
        if best > tol:
            return True
        if best >= -tol:
            unsure = True
    return None if unsure else False


def _l1_piece_feasible(a, b, q, cfg, t0, t1):
    s0 = l1_slacks(_lerp(a, b, t0), q, cfg._num, cfg._den)
    s1 = l1_slacks(_lerp(a, b, t1), q, cfg._num, cfg._den)
    lo, hi = t0, t1
    for h0, h1 in zip(s0, s1):
        iv = _interval_where_nonneg(h0, h1, t0, t1)
        if iv is None:
            return False
        lo, hi = max(lo, iv[0]), min(hi, iv[1])
        if lo > hi:
            return False
    return True


def _l2_piece_feasible(a, d, q, t0, t1):
    # m(x(t)) is linear on the piece; pick the active coordinate at the midpoint
    tm = (t0 + t1) / 2
    i = 0 if a[0] + d[0] * tm <= a[1] + d[1] * tm else 1
    mq = min(q)
    l0, l1 = a[i] + mq, d[i]
    iv = _interval_where_nonneg(l0 + l1 * t0, l0 + l1 * t1, t0, t1)
    if iv is None:
        return False
    s0, s1 = iv
    ex, ey = a[0] - q[0], a[1] - q[1]
    qa = d[0] * d[0] + d[1] * d[1] - l1 * l1
    qb = 2 * (ex * d[0] + ey * d[1]) - 2 * l0 * l1
    qc = ex * ex + ey * ey - l0 * l0

    def h(t):
        return (qa * t + qb) * t + qc

    if h(s0) <= 0 or h(s1) <= 0:
        return True
    if qa > 0:
        tv = Fraction(-qb) / (2 * qa)
        if s0 < tv < s1 and h(tv) <= 0:
            return True
    return False


# --- walking-region boundaries ------------------------------------------------


@dataclass(frozen=True)
class BoundaryChain:
    """Boundary of an L1 walking region as two x-monotone polylines.

    ``lower`` and ``upper`` share their x-coordinates; the region is the
    set of points between them, closed by vertical segments at both ends.
    """

    lower: tuple
    upper: tuple

    @property
    def xs(self):
        return [p[0] for p in self.lower]

    @property
    def pieces(self):
        """Closed boundary as consecutive segments, counterclockwise."""
        ring = list(self.lower) + list(reversed(self.upper))
        out = []
        for u, v in zip(ring, ring[1:] + ring[:1]):
            if u != v:
                out.append((u, v))
        if not out and ring:
            out.append((ring[0], ring[0]))
        return out

    def contains(self, pt) -> bool:
        xs = self.xs
        if not xs or pt[0] < xs[0] or pt[0] > xs[-1]:
            return False
        i = bisect_left(xs, pt[0])
        if xs[i] == pt[0]:
            lo, hi = self.lower[i][1], self.upper[i][1]
        else:
            lo = _interp(self.lower[i - 1], self.lower[i], pt[0])
            hi = _interp(self.upper[i - 1], self.upper[i], pt[0])
        return lo <= pt[1] <= hi

    def value_range(self, x):
        """(low, high) of the region's slice at abscissa ``x`` or None."""
        xs = self.xs
        if not xs or x < xs[0] or x > xs[-1]:
            return None
        i = bisect_left(xs, x)
        if xs[i] == x:
            return self.lower[i][1], self.upper[i][1]
        return (_interp(self.lower[i - 1], self.lower[i], x),
                _interp(self.upper[i - 1], self.upper[i], x))


def _interp(u, v, x):
    return normalize(Fraction(u[1]) + Fraction(v[1] - u[1]) * (x - u[0]) / (v[0] - u[0]))


def _l1_constraints(q, cfg):
    """Per highway path, (alpha, c0, c_sign) describing the slice condition
    ``|y - y_q| - alpha*y <= c0 + c1*X - k*|X - x_q|`` at abscissa X."""
    r = Fraction(cfg._den, cfg._num)
    xq, yq = q
    w = 1 - r
    # each entry: alpha, const, coefX, coefDX  (condition |y-yq| - alpha*y <= const + coefX*X + coefDX*|X-xq|)
    return [
        (Fraction(1), Fraction(yq), Fraction(0), -w),
        (Fraction(0), Fraction(xq) / w, 1 / w, -1 / w),
        (r, yq + r * xq, Fraction(1), Fraction(-1)),
        (Fraction(1), xq + r * yq, r, Fraction(-1)),
    ]


def _l1_slice(q, cons, X):
    lo, hi = Fraction(0), None
    dx = abs(X - q[0])
    yq = q[1]
    for alpha, c0, cx, cd in cons:
        c = c0 + cx * X + cd * dx
        if c < -alpha * yq:
            return None
        lo = max(lo, (yq - c) / (1 + alpha))
        if alpha < 1:
            u = (c + yq) / (1 - alpha)
            hi = u if hi is None else min(hi, u)
    if hi is None or lo > hi:
        return None
    return lo, hi


def _l1_slice_lines(q, cons, side):
    """Lower/upper slice bounds as lines y = m*X + k valid on one side of x_q
    (side=+1 right, -1 left)."""
    xq, yq = q[0], q[1]
    lines = [(Fraction(0), Fraction(0)), (Fraction(0), Fraction(yq))]
    for alpha, c0, cx, cd in cons:
        # c(X) = c0 + cx*X + cd*side*(X - xq)
        m = cx + cd * side
        k = c0 - cd * side * xq
        lines.append((-m / (1 + alpha), (yq - k) / (1 + alpha)))
        if alpha < 1:
            lines.append((m / (1 - alpha), (k + yq) / (1 - alpha)))
    return lines


def _l1_chain_raw(q, cfg) -> BoundaryChain:
    cons = _l1_constraints(q, cfg)
    xq = Fraction(q[0])
    cand = {Fraction(0), xq}
    for side in (-1, 1):
        lines = _l1_slice_lines(q, cons, side)
        for i in range(len(lines)):
            m1, k1 = lines[i]
            for j in range(i + 1, len(lines)):
                m2, k2 = lines[j]
                if m1 != m2:
                    X = (k2 - k1) / (m1 - m2)
                    if X >= 0 and (X - xq) * side >= 0:
                        cand.add(X)
    lower, upper = [], []
    for X in sorted(cand):
        s = _l1_slice(q, cons, X)
        if s is None:
            continue
        lower.append((normalize(X), normalize(s[0])))
        upper.append((normalize(X), normalize(s[1])))
    return BoundaryChain(tuple(lower), tuple(upper))


def wr_boundary_l1(q, cfg: HighwayConfig) -> BoundaryChain:
    """Boundary of the L1 walking region of ``q`` (requires x_q >= y_q)."""
    if not cfg.is_l1:
        raise ValueError("wr_boundary_l1 needs an L1 configuration")
    if q[0] < q[1]:
        raise ValueError("q must be in canonical Side-Hx form (x >= y)")
    return _l1_chain_raw(q, cfg)


def l1_chain(q, cfg: HighwayConfig) -> BoundaryChain:
    """Like :func:`wr_boundary_l1` but for any first-quadrant point."""
    return _l1_chain_raw(q, cfg)


def wr_l1_apices(q, cfg: HighwayConfig):
    """Apex points of the four bounding wedges of an L1 walking region.

    Returns ``[(x_q, 0), (x_q, h), (0, y_q), (w, y_q)]`` where ``w`` is the
    reflection of ``h`` across x = y (``x_q`` and ``y_q`` exchanged).
    """
    v = cfg.speed
    xq, yq = q
    h = Fraction(xq - yq, 2) + Fraction(xq + yq) / (2 * v)
    w = Fraction(yq - xq, 2) + Fraction(xq + yq) / (2 * v)
    return [(xq, 0), (xq, normalize(h)), (0, yq), (normalize(w), yq)]


@dataclass(frozen=True)
class ParabolaRegion:
    """``{b : b[axis] >= ((b[other] - c)^2 + k) / s}`` or, when ``s == 0``,
    the line ``b[other] == c``."""

    axis: int
    c: object
    k: object
    s: object

    def bound(self, t):
        return Fraction((t - self.c) ** 2 + self.k) / self.s

    def contains(self, pt) -> bool:
        other = 1 - self.axis
        if self.s == 0:
            return pt[other] == self.c
        return pt[self.axis] * self.s >= (pt[other] - self.c) ** 2 + self.k


@dataclass(frozen=True)
class ParabolicChain:
    """Boundary of an L2 walking region with free highways.

    The region is the intersection of two parabolic regions: one opening
    away from H_x (directrix y = -m_q) and one opening away from H_y
    (directrix x = -m_q), where m_q = min(x_q, y_q).
    """

    focus: tuple
    regions: tuple

    def contains(self, pt) -> bool:
        return all(r.contains(pt) for r in self.regions)

    def sample(self, n=64, extent=None):
        """Float polyline approximation of the boundary, for drawing."""
        import numpy as np

        xq, yq = (float(v) for v in self.focus)
        m = min(xq, yq)
        if extent is None:
            extent = 4 * (xq + yq) + 1
        ts = np.linspace(0.0, 2 * np.pi, n * 4, endpoint=False)
        out = []
        for th in ts:
            dx, dy = np.cos(th), np.sin(th)
            lo, hi = 0.0, extent
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                x, y = xq + mid * dx, yq + mid * dy
                inside = x >= 0 and y >= 0 and mid <= m + min(x, y) + 1e-12
                lo, hi = (mid, hi) if inside else (lo, mid)
            out.append((xq + lo * dx, yq + lo * dy))
        return out


def wr_boundary_l2inf(q) -> ParabolicChain:
    """Boundary of the L2 (infinite speed) walking region of ``q``."""
    xq, yq = q
    m = min(q)
    r1 = ParabolaRegion(1, xq, yq * yq - m * m, 2 * (yq + m))
    r2 = ParabolaRegion(0, yq, xq * xq - m * m, 2 * (xq + m))
    return ParabolicChain(q, (r1, r2))
