"""Exact arithmetic on numbers of the form a + b*sqrt(r) with rational a, b, r."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


def _sign(v):
    return (v > 0) - (v < 0)


_EPS = 1e-9


def _float_sign(terms):
    """Sign from a float evaluation of ``sum(coef * sqrt(rad))`` or 0 when
    rounding could flip it."""
    try:
        vals = [float(c) * math.sqrt(float(r)) for c, r in terms]
    except OverflowError:
        return 0
    total = sum(vals)
    scale = sum(abs(v) for v in vals)
    if abs(total) > _EPS * scale:
        return 1 if total > 0 else -1
    return 0


def sign2(a, b, r):
    """Sign of a + b*sqrt(r)."""
    if b and r:
        fs = _float_sign(((a, 1), (b, r)))
        if fs:
            return fs
    sa = _sign(a)
    sb = _sign(b) if r != 0 else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    d = a * a - b * b * r
    return sa if d > 0 else (sb if d < 0 else 0)


def sign3(a, b, r, c, s):
    """Sign of a + b*sqrt(r) + c*sqrt(s)."""
    fs = _float_sign(((a, 1), (b, r), (c, s)))
    if fs:
        return fs
    sx = sign2(a, b, r)
    sy = _sign(c) if s != 0 else 0
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    # |x| vs |y|: x^2 - y^2 = a^2 + b^2 r - c^2 s + 2ab sqrt(r)
    d = sign2(a * a + b * b * r - c * c * s, 2 * a * b, r)
    return sx if d > 0 else (sy if d < 0 else 0)


@total_ordering
class QuadNum:
    """The real number ``a + b*sqrt(r)``."""

    __slots__ = ("a", "b", "r", "_f", "_err")

    def __init__(self, a, b=0, r=0):
        if r < 0:
            raise ValueError("negative radicand")
        if b == 0 or r == 0:
            b, r = 0, 0
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = Fraction(r)
        try:
            fa, fb = float(self.a), float(self.b) * math.sqrt(float(self.r))
            self._f = fa + fb
            self._err = (abs(fa) + abs(fb)) * _EPS
        except OverflowError:
            self._f, self._err = 0.0, math.inf

    def _diff_sign(self, other):
        if other is self:
            return 0
        if isinstance(other, QuadNum):
            gap = self._f - other._f
            if abs(gap) > self._err + other._err:
                return 1 if gap > 0 else -1
            return sign3(self.a - other.a, self.b, self.r, -other.b, other.r)
        return sign2(self.a - other, self.b, self.r)

    def __eq__(self, other):
        return self._diff_sign(other) == 0

    def __lt__(self, other):
        return self._diff_sign(other) < 0

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def __float__(self):
        return self._f

    def __repr__(self):
        if self.b == 0:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.r}))"

    def approx(self, bits):
        """Rational within 2**-bits * |b| of the value (truncated root)."""
        if self.b == 0:
            return self.a
        scale = 1 << bits
        rn = self.r * scale * scale
        root = Fraction(math.isqrt(rn.numerator // rn.denominator), scale)
        return self.a + self.b * root


def rational_between(lo, hi):
    """A rational strictly between two distinct QuadNums ``lo < hi``."""
    try:
        m = Fraction((float(lo) + float(hi)) / 2)
        if lo < m < hi:
            return m
    except (OverflowError, ValueError):
        pass
    bits = 24
    while True:
        m = (Fraction(lo.approx(bits)) + Fraction(hi.approx(bits))) / 2
        if lo < m < hi:
            return m
        bits *= 2


def quad_roots(A, B, C):
    """Real roots of A y^2 + B y + C as sorted QuadNums (A, B, C rational)."""
    if A == 0:
        if B == 0:
            return []
        return [QuadNum(Fraction(-C) / B)]
    disc = Fraction(B) * B - 4 * Fraction(A) * C
    if disc < 0:
        return []
    c = Fraction(-B) / (2 * A)
    if disc == 0:
        return [QuadNum(c)]
    k = 1 / (2 * abs(Fraction(A)))
    return [QuadNum(c, -k, disc), QuadNum(c, k, disc)]
