"""Lower semicontinuous step functions with values in N union {inf}.

The model semigroup: finitely many rational breakpoints, pointwise order and
addition, way-below via closure containment of level sets, suprema of finite
increasing chains.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import CIRCLE, INTERVAL, POINT, OpenSet

INF = float("inf")


def _is_value(v):
    return v == INF or (isinstance(v, int) and v >= 0)


class LscFunction:
    """Step function on a base space, canonical form.

    cuts: sorted breakpoints.  On the interval cuts[0] == 0 and
    cuts[-1] == 1; seg[i] is the value on the open gap (cuts[i], cuts[i+1])
    and pts[i] the value at cuts[i].  On the circle cuts live in [0,1) and
    seg[i] is the value on the arc from cuts[i] to the next cut (wrapping).
    Lower semicontinuity forces pts[i] <= min of the neighboring seg values;
    the constructor clamps accordingly.
    """

    __slots__ = ("space", "cuts", "seg", "pts")

    def __init__(self, space, cuts, seg, pts):
        cuts = [Fraction(c) for c in cuts]
        seg = list(seg)
        pts = list(pts)
        assert all(_is_value(v) for v in seg) and all(_is_value(v) for v in pts)
        if space == POINT:
            assert len(pts) == 1 and not seg
            cuts = [Fraction(0)]
        elif space == INTERVAL:
            assert cuts[0] == 0 and cuts[-1] == 1
            assert len(seg) == len(cuts) - 1 and len(pts) == len(cuts)
            assert all(a < b for a, b in zip(cuts, cuts[1:]))
            for i in range(len(pts)):
                bound = min([seg[j] for j in (i - 1, i) if 0 <= j < len(seg)])
                pts[i] = min(pts[i], bound)
            cuts, seg, pts = self._drop_interval(cuts, seg, pts)
        else:
            assert len(seg) == len(cuts) == len(pts) and len(cuts) >= 1
            assert all(0 <= c < 1 for c in cuts)
            assert all(a < b for a, b in zip(cuts, cuts[1:]))
            for i in range(len(pts)):
                pts[i] = min(pts[i], seg[i], seg[i - 1])
            cuts, seg, pts = self._drop_circle(cuts, seg, pts)
        self.space = space
        self.cuts = tuple(cuts)
        self.seg = tuple(seg)
        self.pts = tuple(pts)

    @staticmethod
    def _drop_interval(cuts, seg, pts):
        out_c, out_s, out_p = list(cuts), list(seg), list(pts)
        # removable interior cut: equal flanking segs and matching point value
        i = 1
        while i < len(out_c) - 1:
            if out_s[i - 1] == out_s[i] == out_p[i]:
                del out_c[i], out_s[i], out_p[i]
            else:
                i += 1
        return out_c, out_s, out_p

    @staticmethod
    def _drop_circle(cuts, seg, pts):
        i = 0
        while len(cuts) > 1 and i < len(cuts):
            left = seg[i - 1]
            if left == seg[i] == pts[i]:
                del cuts[i], seg[i], pts[i]
                i = 0
            else:
                i += 1
        if len(cuts) == 1 and pts[0] == seg[0]:
            cuts = [Fraction(0)]
        return cuts, seg, pts

    # ----- constructors -----

    @classmethod
    def constant(cls, space, v):
        if space == POINT:
            return cls(space, [0], [], [v])
        if space == INTERVAL:
            return cls(space, [0, 1], [v], [v, v])
        return cls(space, [0], [v], [v])

    @classmethod
    def zero(cls, space):
        return cls.constant(space, 0)

    @classmethod
    def indicator(cls, U):
        """1_U for an OpenSet U."""
        if not isinstance(U, OpenSet):
            raise TypeError("indicator expects an OpenSet")
        if U.space == INTERVAL:
            return cls.from_regions(U.space, U.component_flags())
        return cls.from_regions(U.space, [(s, e, False, False) for s, e in U.components()],
                                full=U.full)

    @classmethod
    def from_regions(cls, space, regions, value=1, full=False):
        """Indicator-style function: `value` on the given components, 0 off.

        regions: list of (start, end, closed_start, closed_end); closures are
        only honored at the interval endpoints 0 and 1.  On the circle, end
        may exceed start+ wrap via end > 1.
        """
        if space == CIRCLE and full:
            return cls.constant(space, value)
        if space == INTERVAL:
            cuts = {Fraction(0), Fraction(1)}
            for s, e, _, _ in regions:
                cuts |= {Fraction(s), Fraction(e)}
            cuts = sorted(cuts)
            seg, pts = [], []
            for i, c in enumerate(cuts):
                v = 0
                for s, e, cs, ce in regions:
                    if s < c < e or (cs and c == s == 0) or (ce and c == e == 1):
                        v = value
                pts.append(v)
                if i < len(cuts) - 1:
                    mid = (c + cuts[i + 1]) / 2
                    sv = 0
                    for s, e, _, _ in regions:
                        if s < mid < e:
                            sv = value
                    seg.append(sv)
            return cls(space, cuts, seg, pts)
        # circle
        cuts = set()
        for s, e, _, _ in regions:
            cuts |= {Fraction(s) % 1, Fraction(e) % 1}
        if not cuts:
            return cls.constant(space, 0)
        cuts = sorted(cuts)
        seg, pts = [], []
        n = len(cuts)
        for i, c in enumerate(cuts):
            v = 0
            for s, e, _, _ in regions:
                s, e = Fraction(s) % 1, Fraction(s) % 1 + (Fraction(e) - Fraction(s))
                if s < c < e or s < c + 1 < e:
                    v = value
            pts.append(v)
            nxt = cuts[(i + 1) % n] + (1 if i == n - 1 else 0)
            mid = ((c + nxt) / 2) % 1
            sv = 0
            for s, e, _, _ in regions:
                s, e = Fraction(s) % 1, Fraction(s) % 1 + (Fraction(e) - Fraction(s))
                if s < mid < e or s < mid + 1 < e:
                    sv = value
            seg.append(sv)
        return cls(space, cuts, seg, pts)

    @classmethod
    def thomsen_step(cls, t):
        """1_{(t,1]} on the interval, the Thomsen semigroup generator."""
        t = Fraction(t)
        if t >= 1:
            return cls.zero(INTERVAL)
        if t < 0:
            t = Fraction(0)
        if t == 0:
            return cls.from_regions(INTERVAL, [(0, 1, False, True)])
        return cls.from_regions(INTERVAL, [(t, 1, False, True)])

    # ----- evaluation -----

    def eval(self, t):
        t = Fraction(t)
        if self.space == POINT:
            return self.pts[0]
        if self.space == CIRCLE:
            t = t % 1
            n = len(self.cuts)
            for i, c in enumerate(self.cuts):
                if t == c:
                    return self.pts[i]
            for i in range(n):
                nxt = self.cuts[(i + 1) % n] + (1 if i == n - 1 else 0)
                if self.cuts[i] < t < nxt or self.cuts[i] < t + 1 < nxt:
                    return self.seg[i]
            raise AssertionError("unreachable")
        if not (0 <= t <= 1):
            raise ValueError("point outside [0,1]")
        for i, c in enumerate(self.cuts):
            if t == c:
                return self.pts[i]
        for i in range(len(self.seg)):
            if self.cuts[i] < t < self.cuts[i + 1]:
                return self.seg[i]
        raise AssertionError("unreachable")

    __call__ = eval

    def max_value(self):
        return max(list(self.seg) + list(self.pts))

    def is_finite(self):
        return self.max_value() != INF

    # ----- merged-grid machinery -----

    def _on_grid(self, cuts):
        """(pts, seg) values of self on a refinement grid of cuts."""
        pts = [self.eval(c) for c in cuts]
        seg = []
        if self.space == CIRCLE:
            n = len(cuts)
            for i in range(n):
                nxt = cuts[(i + 1) % n] + (1 if i == n - 1 else 0)
                seg.append(self.eval(((cuts[i] + nxt) / 2) % 1))
        else:
            for i in range(len(cuts) - 1):
                seg.append(self.eval((cuts[i] + cuts[i + 1]) / 2))
        return pts, seg

    def _common_grid(self, other):
        if self.space != other.space:
            raise TypeError("space mismatch")
        cuts = sorted(set(self.cuts) | set(other.cuts))
        return cuts

    def _zip_with(self, other, op):
        if self.space == POINT:
            return LscFunction(POINT, [0], [], [op(self.pts[0], other.pts[0])])
        cuts = self._common_grid(other)
        p1, s1 = self._on_grid(cuts)
        p2, s2 = other._on_grid(cuts)
        pts = [op(a, b) for a, b in zip(p1, p2)]
        seg = [op(a, b) for a, b in zip(s1, s2)]
        return LscFunction(self.space, cuts, seg, pts)

    # ----- semigroup structure -----

    def __add__(self, other):
        return self._zip_with(other, lambda a, b: a + b)

    def scale(self, n):
        assert isinstance(n, int) and n >= 0
        if n == 0:
            return LscFunction.zero(self.space)
        return self._zip_with(self, lambda a, _: n * a)

    def max_with(self, other):
        return self._zip_with(other, max)

    def leq(self, other):
        if self.space == POINT:
            return self.pts[0] <= other.pts[0]
        cuts = self._common_grid(other)
        p1, s1 = self._on_grid(cuts)
        p2, s2 = other._on_grid(cuts)
        return all(a <= b for a, b in zip(p1, p2)) and all(a <= b for a, b in zip(s1, s2))

    def __le__(self, other):
        return self.leq(other)

    def __eq__(self, other):
        return (isinstance(other, LscFunction) and self.space == other.space
                and self.cuts == other.cuts and self.seg == other.seg and self.pts == other.pts)

    def __hash__(self):
        return hash((self.space, self.cuts, self.seg, self.pts))

    def __repr__(self):
        return "LscFunction(%s, cuts=%s, seg=%s, pts=%s)" % (
            self.space, [str(c) for c in self.cuts], list(self.seg), list(self.pts))

    # ----- level sets -----

    def level_regions(self, k):
        """Maximal components of {f >= k} as (start, end, closed_start, closed_end).

        On the circle, returns ("full",) when the whole circle qualifies; end
        may exceed 1 for wrapping arcs.  Component ends are open except at
        interval endpoints where the point value qualifies.
        """
        if self.space == POINT:
            return ["full"] if self.pts[0] >= k else []
        if self.space == CIRCLE:
            n = len(self.cuts)
            if all(v >= k for v in self.seg) and all(v >= k for v in self.pts):
                return ["full"]
            # walk arcs; a component is a run of qualifying segs glued over
            # qualifying cut points
            comps = []
            used = [False] * n
            for i in range(n):
                if self.seg[i] < k or used[i]:
                    continue
                # extend left
                j = i
                while self.pts[j] >= k and self.seg[j - 1] >= k and not used[(j - 1) % n]:
                    j = (j - 1) % n
                    used[j] = True
                    if j == i:
                        break
                start = self.cuts[j]
                # extend right
                e = i
                used[i] = True
                while self.pts[(e + 1) % n] >= k and self.seg[(e + 1) % n] >= k:
                    e = (e + 1) % n
                    if used[e]:
                        break
                    used[e] = True
                end = self.cuts[(e + 1) % n]
                if end <= start:
                    end += 1
                comps.append((start, end, False, False))
            return comps
        comps = []
        n = len(self.seg)
        i = 0
        while i < n:
            if self.seg[i] < k:
                i += 1
                continue
            start_idx = i
            while i + 1 < n and self.pts[i + 1] >= k and self.seg[i + 1] >= k:
                i += 1
            s, e = self.cuts[start_idx], self.cuts[i + 1]
            cs = (s == 0 and self.pts[0] >= k)
            ce = (e == 1 and self.pts[-1] >= k)
            comps.append((s, e, cs, ce))
            i += 1
        return comps


def indicator(U):
    return LscFunction.indicator(U)


def lsc_add(x, y):
    return x + y


def lsc_leq(x, y):
    return x.leq(y)


def lsc_waybelow(x, y):
    """Decide x << y by closure containment of level sets."""
    if x.space != y.space:
        raise TypeError("space mismatch")
    if not x.is_finite():
        return False
    if x.space == POINT:
        return x.pts[0] <= y.pts[0]
    for k in range(1, x.max_value() + 1):
        for comp in x.level_regions(k):
            if not _closure_in_levelset(x.space, comp, y, k):
                return False
    return True


def _closure_in_levelset(space, comp, y, k):
    if comp == "full":
        return all(v >= k for v in y.seg) and all(v >= k for v in y.pts)
    s, e, cs, ce = comp
    # the closure always includes both endpoints
    grid = sorted({c for c in y.cuts if s <= c <= e}
                  | ({c + 1 for c in y.cuts if s <= c + 1 <= e} if space == CIRCLE else set())
                  | {s, e})
    for a, b in zip(grid, grid[1:]):
        if y.eval(((a + b) / 2) % 1 if space == CIRCLE else (a + b) / 2) < k:
            return False
    for c in grid:
        if y.eval(c % 1 if space == CIRCLE else c) < k:
            return False
    return True


def lsc_sup(chain):
    """Supremum of a finite increasing chain (checked)."""
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not a.leq(b):
            raise ValueError("chain is not increasing")
    return chain[-1]


def pointwise_max(funcs):
    funcs = list(funcs)
    out = funcs[0]
    for f in funcs[1:]:
        out = out.max_with(f)
    return out


def approx_sequence_term(x, m):
    """The m-th canonical way-below approximant: every level set of x is
    shrunk by 1/m (and values capped at m, so infinite elements are covered
    too)."""
    assert m >= 1
    top = x.max_value()
    cap = m if top == INF else top
    r = Fraction(1, m)
    out = LscFunction.zero(x.space)
    for k in range(1, cap + 1):
        regions = x.level_regions(k)
        shrunk = []
        full = False
        for comp in regions:
            if comp == "full":
                full = True
                continue
            s, e, cs, ce = comp
            s2 = s if cs else s + r
            e2 = e if ce else e - r
            if s2 < e2:
                shrunk.append((s2, e2, cs, ce))
        layer = LscFunction.from_regions(x.space, shrunk, full=full)
        out = out + layer
    return out
