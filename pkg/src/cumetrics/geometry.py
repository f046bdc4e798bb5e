"""Base spaces, exact piecewise-linear functions and open sets with fattening.

All coordinates and values are exact rationals (fractions.Fraction).  The
circle is R/Z parameterized by phase in [0,1) and carries the normalized
arc-length metric (circumference 1); the interval is [0,1] with |x-y|.
"""

from __future__ import annotations

from fractions import Fraction

POINT = "point"
INTERVAL = "interval"
CIRCLE = "circle"

SPACES = (POINT, INTERVAL, CIRCLE)


def Q(x, y=None):
    """Shorthand rational constructor."""
    if y is None:
        return Fraction(x)
    return Fraction(x, y)


def circle_dist(x, y):
    d = abs(Fraction(x) - Fraction(y)) % 1
    return min(d, 1 - d)


def space_dist(space, x, y):
    if space == CIRCLE:
        return circle_dist(x, y)
    return abs(Fraction(x) - Fraction(y))


class PLFunction:
    """Exact piecewise-linear real function on a base space.

    On the interval the breakpoints run from t=0 to t=1.  On the circle the
    breakpoints live in [0,1) and the function is the real lift over one
    loop: the value approaching t=1 equals value(0) + winding.  Winding may
    be any rational at this level; integrality is a unitary-field concern.
    """

    __slots__ = ("space", "points", "winding")

    def __init__(self, space, points, winding=Fraction(0)):
        assert space in SPACES
        pts = [(Fraction(t), Fraction(v)) for t, v in points]
        pts.sort()
        winding = Fraction(winding)
        if space == POINT:
            assert len(pts) == 1
            pts = [(Fraction(0), pts[0][1])]
            winding = Fraction(0)
        elif space == INTERVAL:
            assert pts and pts[0][0] == 0 and pts[-1][0] == 1, "domain must cover [0,1]"
            winding = Fraction(0)
        else:
            assert pts and 0 <= pts[0][0] and pts[-1][0] < 1
            if pts[0][0] != 0:
                # interpolate the value at 0 along the wrap segment
                t0, v0 = pts[-1]
                t1, v1 = pts[0][0] + 1, pts[0][1] + winding
                v_at_1 = v0 + (v1 - v0) * (1 - t0) / (t1 - t0)
                pts.insert(0, (Fraction(0), v_at_1 - winding))
        ts = [t for t, _ in pts]
        assert len(set(ts)) == len(ts), "duplicate breakpoints"
        self.space = space
        self.points = tuple(self._drop_collinear(space, pts, winding))
        self.winding = winding

    @staticmethod
    def _drop_collinear(space, pts, winding):
        if len(pts) <= (1 if space == CIRCLE else 2):
            return pts
        closed = list(pts)
        if space == CIRCLE:
            closed.append((pts[0][0] + 1, pts[0][1] + winding))
        out = [closed[0]]
        for i in range(1, len(closed) - 1):
            (ta, va), (tb, vb), (tc, vc) = out[-1], closed[i], closed[i + 1]
            if (vb - va) * (tc - ta) == (vc - va) * (tb - ta):
                continue
            out.append(closed[i])
        if space == CIRCLE:
            return out
        out.append(closed[-1])
        return out

    @classmethod
    def constant(cls, space, v):
        if space == POINT:
            return cls(space, [(0, v)])
        if space == INTERVAL:
            return cls(space, [(0, v), (1, v)])
        return cls(space, [(0, v)])

    @classmethod
    def linear(cls, slope, offset=0):
        """t -> slope*t + offset on the interval."""
        return cls(INTERVAL, [(0, Fraction(offset)), (1, Fraction(slope) + Fraction(offset))])

    def segments(self):
        """Yield (t0, v0, t1, v1) linear pieces covering one full domain pass."""
        pts = list(self.points)
        if self.space == POINT:
            return
        if self.space == CIRCLE:
            pts.append((self.points[0][0] + 1, self.points[0][1] + self.winding))
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            yield (t0, v0, t1, v1)

    def eval(self, t):
        t = Fraction(t)
        if self.space == POINT:
            return self.points[0][1]
        if self.space == CIRCLE:
            t = t % 1
        else:
            if not (0 <= t <= 1):
                raise ValueError("point outside [0,1]")
        if len(self.points) == 1 and self.space == CIRCLE:
            t0, v0 = self.points[0]
            return v0 + self.winding * ((t - t0) % 1)
        for t0, v0, t1, v1 in self.segments():
            if t0 <= t <= t1:
                if t1 == t0:
                    return v0
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        raise AssertionError("domain not covered")

    __call__ = eval

    def _binop(self, other, op):
        if isinstance(other, (int, Fraction)):
            other = PLFunction.constant(self.space, other)
        if self.space != other.space:
            raise TypeError("space mismatch")
        ts = sorted({t for t, _ in self.points} | {t for t, _ in other.points})
        pts = [(t, op(self.eval(t), other.eval(t))) for t in ts]
        w = op(self.winding, other.winding)
        return PLFunction(self.space, pts, w)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return PLFunction(self.space, [(t, c * v) for t, v in self.points], c * self.winding)

    def range(self):
        """Exact (min, max) over the domain; attained at breakpoints."""
        vals = [v for _, v in self.points]
        if self.space == CIRCLE:
            vals.append(self.points[0][1] + self.winding)
        return (min(vals), max(vals))

    def sup_norm(self):
        lo, hi = self.range()
        return max(abs(lo), abs(hi))

    def is_constant(self):
        lo, hi = self.range()
        return lo == hi

    def breakpoint_ts(self):
        return [t for t, _ in self.points]

    def __eq__(self, other):
        return (isinstance(other, PLFunction) and self.space == other.space
                and self.points == other.points and self.winding == other.winding)

    def __hash__(self):
        return hash((self.space, self.points, self.winding))

    def __repr__(self):
        return "PLFunction(%s, %s, winding=%s)" % (self.space, list(self.points), self.winding)


class OpenSet:
    """Finite union of relatively open intervals/arcs in canonical
    disjoint-maximal form.

    Interval components are open subintervals of [0,1], except that a
    component may be closed at 0 or at 1 (relative openness in [0,1]: a ball
    around a point near the boundary contains the endpoint).  Passing a
    start < 0 or an end > 1 marks the corresponding closure.  Circle arcs
    are stored as (start, length) with start in [0,1), 0 < length < 1; the
    full circle is a distinguished flag.
    """

    __slots__ = ("space", "arcs", "full", "closed0", "closed1")

    def __init__(self, space, arcs=(), full=False):
        assert space in (INTERVAL, CIRCLE)
        self.space = space
        if space == INTERVAL:
            assert not full
            self.full = False
            self.arcs, self.closed0, self.closed1 = self._canon_interval(arcs)
        else:
            self.closed0 = self.closed1 = False
            if full:
                self.arcs = ()
                self.full = True
            else:
                arcs2, full2 = self._canon_circle(arcs)
                self.arcs = arcs2
                self.full = full2

    @staticmethod
    def _canon_interval(arcs):
        ivs = []
        closed0 = closed1 = False
        for a, b in arcs:
            a, b = Fraction(a), Fraction(b)
            lo, hi = max(a, Fraction(0)), min(b, Fraction(1))
            if lo < hi:
                ivs.append((lo, hi))
                closed0 = closed0 or a < 0
                closed1 = closed1 or b > 1
        ivs.sort()
        out = []
        for a, b in ivs:
            if out and a < out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))
        if closed0:
            closed0 = bool(out) and out[0][0] == 0
        if closed1:
            closed1 = bool(out) and out[-1][1] == 1
        return tuple(out), closed0, closed1

    @staticmethod
    def _canon_circle(arcs):
        segs = []
        for item in arcs:
            a, length = Fraction(item[0]), Fraction(item[1])
            a = a % 1
            if length >= 1:
                return (), True
            if length > 0:
                segs.append((a, a + length))
                segs.append((a + 1, a + 1 + length))
        segs.sort()
        merged = []
        for s, e in segs:
            if merged and s < merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], e))
            else:
                merged.append((s, e))
        picked = [(s, e) for s, e in merged if 0 <= s < 1]
        wrap_end = None
        for s, e in picked:
            if e - s >= 1:
                return (), True
            if e > 1:
                wrap_end = e - 1
        out = []
        for s, e in picked:
            if wrap_end is not None and e <= 1 and e <= wrap_end:
                continue  # swallowed by the arc wrapping through 0
            out.append((s, e - s))
        return tuple(out), False

    @classmethod
    def empty(cls, space):
        return cls(space)

    @classmethod
    def full_circle(cls):
        return cls(CIRCLE, full=True)

    def is_empty(self):
        return not self.full and not self.arcs

    def measure(self):
        if self.full:
            return Fraction(1)
        if self.space == INTERVAL:
            return sum((b - a for a, b in self.arcs), Fraction(0))
        return sum((length for _, length in self.arcs), Fraction(0))

    def components(self):
        """Components as (start, end) pairs; on the circle end may exceed 1."""
        if self.space == INTERVAL:
            return list(self.arcs)
        if self.full:
            return [(Fraction(0), Fraction(1))]
        return [(a, a + length) for a, length in self.arcs]

    def component_flags(self):
        """Components as (start, end, closed_start, closed_end)."""
        out = []
        comps = self.components()
        for i, (s, e) in enumerate(comps):
            cs = self.closed0 and i == 0 and s == 0
            ce = self.closed1 and i == len(comps) - 1 and e == 1
            out.append((s, e, cs, ce))
        return out

    def contains(self, t):
        t = Fraction(t)
        if self.space == CIRCLE:
            if self.full:
                return True
            t = t % 1
            for a, length in self.arcs:
                if a < t < a + length or a < t + 1 < a + length:
                    return True
            return False
        if t == 0 and self.closed0:
            return True
        if t == 1 and self.closed1:
            return True
        for a, b in self.arcs:
            if a < t < b:
                return True
        return False

    def fatten(self, r):
        """The r-fattening U_r, the union of open r-balls around points of U
        (relative balls: on the interval they may absorb the endpoints)."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("negative fattening radius")
        if r == 0 or self.is_empty() or self.full:
            return self
        if self.space == INTERVAL:
            return OpenSet(INTERVAL, [(a - r, b + r) for a, b in self.arcs])
        return OpenSet(CIRCLE, [(a - r, length + 2 * r) for a, length in self.arcs])

    def issubset(self, other):
        if self.space != other.space:
            raise TypeError("space mismatch")
        if other.full or self.is_empty():
            return True
        if self.full:
            return False
        if self.space == INTERVAL:
            for s, e, cs, ce in self.component_flags():
                ok = False
                for s2, e2, ds, de in other.component_flags():
                    left = s2 < s or (s2 == s and (ds or not cs))
                    right = e < e2 or (e == e2 and (de or not ce))
                    if left and right:
                        ok = True
                if not ok:
                    return False
            return True
        for s, e in self.components():
            ok = False
            for s2, e2 in other.components():
                for shift in (0, 1, -1):
                    if s2 <= s + shift and e + shift <= e2:
                        ok = True
            if not ok:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, OpenSet) and self.space == other.space
                and self.arcs == other.arcs and self.full == other.full
                and self.closed0 == other.closed0 and self.closed1 == other.closed1)

    def __hash__(self):
        return hash((self.space, self.arcs, self.full, self.closed0, self.closed1))

    def __repr__(self):
        if self.full:
            return "OpenSet(circle, FULL)"
        if self.space == INTERVAL:
            return "OpenSet(%s, %s)" % (self.space,
                                        [(str(s), str(e), cs, ce)
                                         for s, e, cs, ce in self.component_flags()])
        return "OpenSet(%s, %s)" % (self.space, [(str(s), str(e)) for s, e in self.components()])
