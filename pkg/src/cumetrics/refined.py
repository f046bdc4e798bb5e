"""Cu elements decorated with K-data over their support ideal: the ordered
monoid of pairs, transport under morphisms, fiber diagrams with their norms,
and the refined metrics built on top of d_cu."""

from __future__ import annotations

from fractions import Fraction

from .algebras import UnitaryField
from .determinant import HClass, det_hat, h_norm
from .geometry import CIRCLE, INTERVAL, OpenSet, PLFunction
from .lsc import INF, LscFunction, indicator, lsc_add, lsc_leq, lsc_waybelow
from .morphisms import (apply_pattern, apply_unitary, d_cu, dcu_sample_points,
                        pattern_values, trace_function, _patterns)


def support_openset(f):
    """The open set {f > 0} of an Lsc step function."""
    regions = f.level_regions(1)
    if regions == ["full"]:
        return OpenSet(f.space, full=True)
    if f.space == CIRCLE:
        return OpenSet(CIRCLE, [(s, e - s) for s, e, _, _ in regions])
    arcs = [(s - 1 if cs else s, e + 1 if ce else e) for s, e, cs, ce in regions]
    return OpenSet(INTERVAL, arcs)


def ramp_unitary(space, start, end):
    """The designated K1 generator of the ideal over one open component:
    the arc-rescaled winding unitary, a phase climbing 0 to 1 across the
    component and locked outside it."""
    start, end = Fraction(start), Fraction(end)
    length = end - start
    assert 0 < length <= 1
    if space == INTERVAL:
        pts = [(Fraction(0), Fraction(0)), (start, Fraction(0)),
               (end, Fraction(1)), (Fraction(1), Fraction(1))]
        pts = [(t, v) for t, v in pts if 0 <= t <= 1]
        return UnitaryField.from_phase(PLFunction(INTERVAL, sorted(set(pts))))
    if length == 1:
        return UnitaryField.from_phase(
            PLFunction(CIRCLE, [(Fraction(0), Fraction(0))], winding=1))
    s, e = start % 1, end % 1
    if s < e:
        pts = [(s, Fraction(0)), (e, Fraction(1))]
    else:
        # the ramp wraps through 0; the lift at e is one turn below
        pts = sorted([(s, Fraction(0)), (e, Fraction(0))])
    return UnitaryField.from_phase(PLFunction(CIRCLE, pts, winding=1))


class IdealModel:
    """Declarative ideal of a model block: the open support together with
    its K-data.  k1_ranks holds the rank (0 or 1) of K1 over each support
    component; a rank-1 component's designated generator is the rescaled
    ramp unitary over that component."""

    __slots__ = ("space", "support", "k1_ranks", "hmodel")

    def __init__(self, support, k1_ranks=None, hmodel=None):
        assert isinstance(support, OpenSet)
        self.space = support.space
        self.support = support
        if k1_ranks is None:
            k1_ranks = tuple(self._auto_rank(fl) for fl in support.component_flags())
        self.k1_ranks = tuple(int(r) for r in k1_ranks)
        assert len(self.k1_ranks) == len(support.components())
        self.hmodel = hmodel

    def _auto_rank(self, flags):
        # arcs of the circle base carry a Z worth of winding classes; the
        # interval-base ideals in this model family carry none
        return 1 if self.space == CIRCLE else 0

    def components(self):
        return self.support.components()

    def generator(self, i):
        assert self.k1_ranks[i] == 1
        s, e = self.components()[i]
        return ramp_unitary(self.space, s, e)

    def __eq__(self, other):
        return (isinstance(other, IdealModel) and self.support == other.support
                and self.k1_ranks == other.k1_ranks and self.hmodel == other.hmodel)

    def __repr__(self):
        return "IdealModel(%r, k1=%s)" % (self.support, list(self.k1_ranks))


class CuKElement:
    """A pair (x, g): an Lsc element together with a K-class over the ideal
    supporting it.  The class is stored in generator coordinates: an integer
    per support component, plus an optional H offset for the extended
    flavour."""

    __slots__ = ("x", "ideal", "k1", "hpart")

    def __init__(self, x, ideal, k1, hpart=None):
        assert isinstance(x, LscFunction) and isinstance(ideal, IdealModel)
        assert support_openset(x) == ideal.support
        self.x = x
        self.ideal = ideal
        self.k1 = tuple(int(k) for k in k1)
        assert len(self.k1) == len(ideal.k1_ranks)
        for k, r in zip(self.k1, ideal.k1_ranks):
            assert r == 1 or k == 0
        self.hpart = hpart

    @classmethod
    def inject(cls, x, ideal):
        """x paired with the zero class (the canonical Cu -> Cu_K section
        on objects)."""
        h = None
        if ideal.hmodel is not None:
            h = HClass(PLFunction.constant(ideal.space, 0), ideal.hmodel)
        return cls(x, ideal, (0,) * len(ideal.k1_ranks), h)

    def kpart(self):
        return (self.k1, self.hpart)

    def __repr__(self):
        return "CuKElement(%r, k1=%s)" % (self.x, list(self.k1))


def _h_equal(a, b):
    if a is None or b is None:
        return a is None and b is None
    return (a - b).is_zero()


def transport_kdata(e, target):
    """Push e's K-class along the inclusion of its ideal into target: each
    source component lands in the unique target component containing it and
    contributes its integer there; the H offset is carried unchanged."""
    src = e.ideal.components()
    dst = target.components()
    out = [0] * len(dst)
    for i, (s, sE) in enumerate(src):
        if e.k1[i] == 0:
            continue
        mid = ((s + sE) / 2) % 1 if target.space == CIRCLE else (s + sE) / 2
        hit = [j for j, _ in enumerate(dst) if _contains_point(target.space, dst[j], mid)]
        assert len(hit) == 1, "source component escapes the target support"
        out[hit[0]] += e.k1[i]
    h = e.hpart
    if h is not None and target.hmodel is not None:
        h = HClass(h.rep, target.hmodel)
    return tuple(out), h


def _contains_point(space, comp, t):
    s, e = comp
    if space == CIRCLE:
        return (t - s) % 1 < (e - s) % 1 or (e - s) % 1 == 0
    return s < t < e


def cuk_order(e1, e2):
    """Exact order decision on pairs: 'waybelow', 'leq' or 'incomparable'.
    Comparability forces the transported K-class to match."""
    if not lsc_leq(e1.x, e2.x):
        return "incomparable"
    k1t, ht = transport_kdata(e1, e2.ideal)
    if k1t != e2.k1 or not _h_equal(ht, e2.hpart):
        return "incomparable"
    if lsc_waybelow(e1.x, e2.x):
        return "waybelow"
    return "leq"


def cuk_add(e1, e2):
    """Sum of two pairs over the same ideal."""
    assert e1.ideal == e2.ideal
    h = None
    if e1.hpart is not None:
        h = e1.hpart + e2.hpart
    return CuKElement(lsc_add(e1.x, e2.x), e1.ideal,
                      tuple(a + b for a, b in zip(e1.k1, e2.k1)), h)


def _single(P):
    pats = _patterns(P)
    assert len(pats) == 1, "K-class transport works blockwise"
    return pats[0]


def restricted_generator_image(P, I, hmodel=None):
    """Image data of each rank-1 component generator of I under the pattern:
    (image determinant as an HClass when hmodel is given, else the raw PL
    phase mean; image winding; the image unitary).  None for rank-0
    components."""
    pa = _single(P)
    out = []
    for i, r in enumerate(I.k1_ranks):
        if r == 0:
            out.append(None)
            continue
        img = apply_unitary(pa, I.generator(i))
        k1 = img.winding_total() if pa.codomain == CIRCLE else 0
        d = det_hat(img)
        if hmodel is not None:
            d = HClass(d, hmodel)
        out.append((d, k1, img))
    return out


def cuk_morphism_apply(P, e, hmodel, codomain_k1=None):
    """Functorial action on pairs: the first coordinate moves by the
    Cu-level action, the K-class by the restricted generator images plus the
    trace transport of the H offset."""
    pa = _single(P)
    y = apply_pattern(pa, e.x)
    J = IdealModel(support_openset(y), k1_ranks=codomain_k1, hmodel=hmodel)
    images = restricted_generator_image(pa, e.ideal)
    hacc = PLFunction.constant(pa.codomain, 0)
    wind = 0
    for k, im in zip(e.k1, images):
        if k == 0 or im is None:
            continue
        hacc = hacc + im[0].scale(k)
        wind += k * im[1]
    k1_out = [0] * len(J.k1_ranks)
    carriers = [j for j, r in enumerate(J.k1_ranks) if r == 1]
    if wind != 0:
        assert len(carriers) == 1, "ambiguous winding placement"
        k1_out[carriers[0]] = wind
    h = None
    if hmodel is not None:
        if e.hpart is not None:
            hacc = hacc + trace_function(pa, e.hpart.rep)
        h = HClass(hacc, hmodel)
    return CuKElement(y, J, tuple(k1_out), h)


def _kdist(a, b, metric):
    """Distance between two transported generator images.  'triv' is the
    trivial metric (0 or infinite); 'k1' compares only the winding part;
    'frak' adds the quotient norm of the H difference to the winding term.

    The H difference is weighted by the matrix size of the images: the path
    determinant feeding these classes is the plain (unnormalized) trace, so
    the per-entry mean has to be scaled back up."""
    ha, ka = a[0], a[1]
    hb, kb = b[0], b[1]
    if metric == "k1":
        return Fraction(0) if ka == kb else INF
    if metric == "triv":
        if isinstance(ha, HClass):
            same = ka == kb and (ha - hb).is_zero()
        else:
            # no quotient model: the raw determinant data must agree
            same = ka == kb and ha == hb
        return Fraction(0) if same else INF
    if ka != kb:
        return INF
    return h_norm(ha - hb) * a[2].total_mult()


class FiberDiagram:
    """The corner data of two morphisms at coordinates x <= y: images of
    both under each morphism, the ideal of x with its generators, and the
    conditional cross arrows."""

    __slots__ = ("alpha", "beta", "x", "y", "xideal", "hmodel",
                 "ax", "ay", "bx", "by")

    def __init__(self, alpha, beta, x, y, xideal=None, hmodel=None):
        assert lsc_leq(x, y)
        self.alpha, self.beta = alpha, beta
        self.x, self.y = x, y
        self.xideal = xideal if xideal is not None else IdealModel(support_openset(x))
        self.hmodel = hmodel
        self.ax = apply_pattern(alpha, x)
        self.ay = apply_pattern(alpha, y)
        self.bx = apply_pattern(beta, x)
        self.by = apply_pattern(beta, y)

    def cross_arrows(self):
        """(alpha(x) <= beta(y), beta(x) <= alpha(y)): whether the two
        diagonal transports exist."""
        return lsc_leq(self.ax, self.by), lsc_leq(self.bx, self.ay)


def fiber_norm(F, metric="frak"):
    """Max distance over same-endpoint path pairs in the diagram.  A pair is
    scored only when its cross arrow exists; with no K1 generators over the
    coordinate ideal the diagram commutes and the norm is 0."""
    gens = [i for i, r in enumerate(F.xideal.k1_ranks) if r == 1]
    if not gens:
        return Fraction(0)
    to_b, to_a = F.cross_arrows()
    if not (to_b or to_a):
        return Fraction(0)
    a_im = restricted_generator_image(F.alpha, F.xideal, F.hmodel)
    b_im = restricted_generator_image(F.beta, F.xideal, F.hmodel)
    best = Fraction(0)
    for i in gens:
        d = _kdist(a_im[i], b_im[i], metric)
        if d > best:
            best = d
    return best


def _arc_family(alpha, beta):
    """Candidate windows U: single components with endpoints in the value
    grid of both patterns at their critical points, plus the full space."""
    space = _single(alpha).domain
    ys = dcu_sample_points(alpha, beta)
    grid = set()
    for y in ys:
        grid.update(pattern_values(alpha, y))
        grid.update(pattern_values(beta, y))
    grid = sorted(set(v % 1 for v in grid)) if space == CIRCLE else sorted(grid)
    out = [OpenSet(space, full=True) if space == CIRCLE
           else OpenSet(INTERVAL, [(0, 1)])]
    for i, s in enumerate(grid):
        for e in (grid if space == CIRCLE else grid[i + 1:]):
            if space == CIRCLE:
                length = (e - s) % 1
                if length == 0:
                    continue
                out.append(OpenSet(CIRCLE, [(s, length)]))
            else:
                out.append(OpenSet(INTERVAL, [(s, e)]))
    return out


def _radius_candidates(alpha, beta):
    """Radii where window containments can flip: pairwise distances of the
    eigenvalues at the critical sample points, padded with 0 and 1."""
    space = _single(alpha).domain
    vals = set()
    for y in dcu_sample_points(alpha, beta):
        vals.update(pattern_values(alpha, y))
        vals.update(pattern_values(beta, y))
    vals = sorted(set(v % 1 for v in vals)) if space == CIRCLE else sorted(vals)
    out = {Fraction(0), Fraction(1)}
    for i, a in enumerate(vals):
        for b in vals[i:]:
            d = b - a
            out.add(min(d, 1 - d) if space == CIRCLE else d)
    return sorted(out)


def d_star(alpha, beta, metric="frak", hmodel=None, domain_k1=None):
    """Refined metric: inf over r above the Cu-level distance such that
    every fiber diagram F(1_U, 1_{U_r}) over the critical window family has
    norm at most 4r.

    The generator transport distance of a window does not depend on r; a
    window constrains r exactly while its cross arrow exists and 4r stays
    below that distance.  Each window therefore excludes one r-interval,
    and the metric is the first point above d_cu outside all of them."""
    eps0 = d_cu(alpha, beta)
    if eps0 == INF:
        return INF
    if metric == "k1" and _single(alpha).codomain == INTERVAL:
        # no winding data survives into an interval-base target, so every
        # diagram commutes and the refined metric collapses to d_cu
        return eps0
    cands = _radius_candidates(alpha, beta)
    excluded = []
    for U in _arc_family(alpha, beta):
        ranks = None if domain_k1 is None else (domain_k1,) * len(U.components())
        I = IdealModel(U, k1_ranks=ranks)
        gens = [i for i, r in enumerate(I.k1_ranks) if r == 1]
        if not gens:
            continue
        a_im = restricted_generator_image(alpha, I, hmodel)
        b_im = restricted_generator_image(beta, I, hmodel)
        dU = max(_kdist(a_im[i], b_im[i], metric) for i in gens)
        if dU == 0:
            continue
        if dU != INF and dU / 4 <= eps0:
            # the exclusion interval would end below the starting radius
            continue
        x = indicator(U)
        ax, bx = apply_pattern(alpha, x), apply_pattern(beta, x)

        def arrow(r):
            yr = indicator(U.fatten(r))
            return (lsc_leq(ax, apply_pattern(beta, yr))
                    or lsc_leq(bx, apply_pattern(alpha, yr)))

        lo = _threshold(arrow, cands)
        if lo is None:
            continue
        hi = INF if dU == INF else dU / 4
        if lo < hi:
            excluded.append((lo, hi))
    r = eps0
    for lo, hi in sorted(excluded):
        if lo > r:
            break
        if hi == INF:
            return INF
        if hi > r:
            r = hi
    return r


def _threshold(cond, cands):
    """Infimum of {r : cond(r)} for a monotone condition that only flips at
    candidate radii; None when it never holds."""
    mids = [(a + b) / 2 for a, b in zip(cands, cands[1:])] + [cands[-1] + 1]
    if not cond(mids[-1]):
        return None
    lo, hi = 0, len(mids) - 1
    while lo < hi:
        m = (lo + hi) // 2
        if cond(mids[m]):
            hi = m
        else:
            lo = m + 1
    return cands[lo]


def lower_bound_check(alpha, beta, U, z, metric="frak", hmodel=None, xideal=None):
    """Left side of the lower-bound inequality: the distance between the two
    transports of the K-data of 1_U into the K-group at z.  Requires both
    images of 1_U to sit below z."""
    x = indicator(U)
    ax, bx = apply_pattern(alpha, x), apply_pattern(beta, x)
    if not (lsc_leq(ax, z) and lsc_leq(bx, z)):
        raise ValueError("images of the window are not below z")
    I = xideal if xideal is not None else IdealModel(U)
    a_im = restricted_generator_image(alpha, I, hmodel)
    b_im = restricted_generator_image(beta, I, hmodel)
    best = Fraction(0)
    for ia, ib in zip(a_im, b_im):
        if ia is None:
            continue
        d = _kdist(ia, ib, metric)
        if d > best:
            best = d
    return best
