"""Eigenvalue-pattern models of *-homomorphisms between the model algebras,
the Cu-level metrics they induce (d_cu, d_N, finite-set comparison) and the
trace-level distances (aff_t_distance, h_distance)."""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .algebras import K0Image, PositiveField, UnitaryField, normalized_trace
from .geometry import CIRCLE, INTERVAL, PLFunction, space_dist
from .lsc import INF, LscFunction, lsc_leq
from .matching import multiset_bottleneck

MULT_EXPAND_CAP = 4096


class EigenPattern:
    """Diagonal *-homomorphism model: a weighted list of continuous maps from
    the codomain base space into the domain spectrum space.  Each map is an
    exact PL function (a real lift when the domain is the circle, a function
    into [0,1] when the domain is the interval)."""

    __slots__ = ("domain", "codomain", "maps")

    def __init__(self, domain, codomain, maps):
        assert domain in (INTERVAL, CIRCLE)
        assert codomain in (INTERVAL, CIRCLE)
        maps = tuple((f, int(m)) for f, m in maps)
        assert maps, "a pattern needs at least one eigenvalue map"
        for f, m in maps:
            assert isinstance(f, PLFunction) and f.space == codomain
            assert m >= 1
            if domain == INTERVAL:
                lo, hi = f.range()
                assert 0 <= lo and hi <= 1, "interval-valued map out of range"
        self.domain = domain
        self.codomain = codomain
        self.maps = maps

    def __eq__(self, other):
        return (isinstance(other, EigenPattern) and self.domain == other.domain
                and self.codomain == other.codomain and self.maps == other.maps)

    @classmethod
    def from_unitary(cls, u):
        """The morphism C(T) -> M(C(Y)) sending the circle coordinate to the
        diagonal unitary u; the eigenvalue maps are u's phases."""
        return cls(CIRCLE, u.space, list(u.entries))

    @classmethod
    def point_evaluation(cls, domain, codomain, point, mult=1):
        return cls(domain, codomain, [(PLFunction.constant(codomain, point), mult)])

    def total_mult(self):
        return sum(m for _, m in self.maps)

    def winding_total(self):
        """Signed winding summed with multiplicity (the K1 action on the
        circle-domain generator)."""
        if self.domain != CIRCLE:
            return 0
        return sum(m * int(f.winding) for f, m in self.maps)

    def __repr__(self):
        return "EigenPattern(%s->%s, %d maps, mult=%d)" % (
            self.domain, self.codomain, len(self.maps), self.total_mult())


class CuMorphismModel:
    """A morphism into a direct sum: one eigenvalue pattern per target block,
    all over a common domain spectrum space."""

    __slots__ = ("domain", "patterns")

    def __init__(self, patterns):
        patterns = tuple(patterns)
        assert patterns
        domain = patterns[0].domain
        for p in patterns:
            assert isinstance(p, EigenPattern) and p.domain == domain
        self.domain = domain
        self.patterns = patterns


def _patterns(P):
    if isinstance(P, CuMorphismModel):
        return P.patterns
    return (P,)


def solve_pl(h, targets, mod1=False):
    """All t where the PL function h hits a target value (mod 1 if asked)."""
    out = set()
    targets = [Fraction(c) for c in targets]
    for t0, v0, t1, v1 in h.segments():
        lo, hi = min(v0, v1), max(v0, v1)
        for c in targets:
            if mod1:
                vals = [c + k for k in range(ceil(lo - c), floor(hi - c) + 1)]
            else:
                vals = [c] if lo <= c <= hi else []
            for cv in vals:
                if v1 == v0:
                    if v0 == cv:
                        out.add(t0)
                        out.add(t1)
                    continue
                t = t0 + (cv - v0) * (t1 - t0) / (v1 - v0)
                if t0 <= t <= t1:
                    out.add(t)
    return out


def _canon_ts(space, ts):
    if space == CIRCLE:
        return sorted({Fraction(t) % 1 for t in ts})
    return sorted({min(max(Fraction(t), Fraction(0)), Fraction(1)) for t in ts} | {Fraction(0), Fraction(1)})


def pattern_values(P, y):
    """Eigenvalues of the pattern at y as a flat list (multiplicity copies)."""
    if P.total_mult() > MULT_EXPAND_CAP:
        raise ValueError("pattern too large to expand")
    vals = []
    for f, m in P.maps:
        v = f.eval(y)
        if P.domain == CIRCLE:
            v = v % 1
        vals.extend([v] * m)
    return vals


def pattern_value_multiset(P, y):
    """Eigenvalues at y as (value, multiplicity) pairs."""
    vals = {}
    for f, m in P.maps:
        v = f.eval(y)
        if P.domain == CIRCLE:
            v = v % 1
        vals[v] = vals.get(v, 0) + m
    return sorted(vals.items())


def apply_pattern(P, s):
    """Induced Cu-map on a single level function: result(y) = sum of
    mult * s(map(y)), exact on the refinement by preimages of s's cuts."""
    if s.space != P.domain:
        raise TypeError("level function lives on the wrong space")
    ts = set()
    for f, _ in P.maps:
        ts.update(f.breakpoint_ts())
        ts.update(solve_pl(f, s.cuts, mod1=(P.domain == CIRCLE)))
    cuts = _canon_ts(P.codomain, ts)

    def value_at(t):
        total = 0
        for f, m in P.maps:
            v = f.eval(t)
            if P.domain == CIRCLE:
                v = v % 1
            sv = s.eval(v)
            if sv == INF:
                return INF
            total += m * sv
        return total

    pts = [value_at(t) for t in cuts]
    seg = []
    if P.codomain == INTERVAL:
        for a, b in zip(cuts, cuts[1:]):
            seg.append(value_at((a + b) / 2))
    else:
        n = len(cuts)
        for i in range(n):
            a = cuts[i]
            b = cuts[(i + 1) % n] + (1 if i + 1 == n else 0)
            seg.append(value_at(((a + b) / 2) % 1))
    return LscFunction(P.codomain, cuts, seg, pts)


def critical_points(P, Q=None):
    """Codomain points where the joint eigenvalue configuration can change:
    map breakpoints plus pairwise PL intersections (including the half-gap
    kinks of the circle metric)."""
    pats = _patterns(P) if Q is None else _patterns(P) + _patterns(Q)
    codomain = pats[0].codomain
    circle_dom = pats[0].domain == CIRCLE
    maps = []
    for p in pats:
        maps.extend(f for f, _ in p.maps)
    ys = set()
    for f in maps:
        ys.update(f.breakpoint_ts())
    for i, f in enumerate(maps):
        for g in maps[i + 1:]:
            h = f - g
            if circle_dom:
                ys |= solve_pl(h, [0, Fraction(1, 2)], mod1=True)
            else:
                ys |= solve_pl(h, [0])
    return _canon_ts(codomain, ys)


def dcu_sample_points(P, Q):
    """Evaluation points that carry the sup of the per-point matching cost:
    the critical set, plus (circle domain) wrap points and the crossings of
    pairs of distance curves, where the optimal matching can switch, plus
    gap midpoints."""
    out = []
    for pa, qa in zip(_patterns(P), _patterns(Q)):
        ys = set(critical_points(pa, qa))
        if pa.domain == CIRCLE:
            fs = [f for f, _ in pa.maps]
            gs = [g for g, _ in qa.maps]
            for f in fs + gs:
                ys |= solve_pl(f, [0], mod1=True)
            diffs = [f - g for f in fs for g in gs]
            for i, d1 in enumerate(diffs):
                for d2 in diffs[i + 1:]:
                    ys |= solve_pl(d1 - d2, [0], mod1=True)
                    ys |= solve_pl(d1 + d2, [0], mod1=True)
        out.append(_sample_points(pa.codomain, _canon_ts(pa.codomain, ys)))
    return out if isinstance(P, CuMorphismModel) else out[0]


def _sample_points(codomain, criticals):
    """Criticals plus the midpoints of the gaps between them."""
    pts = list(criticals)
    out = set(pts)
    if codomain == INTERVAL:
        for a, b in zip(pts, pts[1:]):
            out.add((a + b) / 2)
    else:
        n = len(pts)
        for i in range(n):
            a = pts[i]
            b = pts[(i + 1) % n] + (1 if i + 1 == n else 0)
            out.add(((a + b) / 2) % 1)
    return sorted(out)


def d_cu_report(P, Q):
    """Cu-metric between two pattern morphisms with the witness point.

    Returns (value, witness_y); value is INF when the total multiplicities
    differ (the full-space test forbids any finite radius)."""
    ps, qs = _patterns(P), _patterns(Q)
    if len(ps) != len(qs):
        raise TypeError("block count mismatch")
    best = Fraction(0)
    witness = None
    for pa, qa in zip(ps, qs):
        if pa.domain != qa.domain or pa.codomain != qa.codomain:
            raise TypeError("pattern spaces do not match")
        if pa.total_mult() != qa.total_mult():
            return INF, None
        ys = dcu_sample_points(pa, qa)
        for y in ys:
            cost = multiset_bottleneck(pa.domain,
                                       pattern_value_multiset(pa, y),
                                       pattern_value_multiset(qa, y))
            if cost > best:
                best = cost
                witness = y
        if witness is None:
            witness = ys[0]
    return best, witness


def d_cu(P, Q):
    return d_cu_report(P, Q)[0]


def finite_set_compare(P, Q, F):
    """True iff the two induced Cu-maps compare on every pair (g, h) in F:
    P(g) <= Q(h) and Q(g) <= P(h)."""
    for g, h in F:
        if not lsc_leq(apply_pattern(P, g), apply_pattern(Q, h)):
            return False
        if not lsc_leq(apply_pattern(Q, g), apply_pattern(P, h)):
            return False
    return True


def pl_compose(g, f):
    """g o f where f maps the codomain base into g's space.

    When g lives on the circle, f is read mod 1 and g is continued by its
    winding: the continuous lift G(x) = g(x mod 1) + winding * floor(x) is
    used, so phases compose to phases (winding multiplies)."""
    ts = set(f.breakpoint_ts())
    if g.space == CIRCLE:
        ts |= solve_pl(f, list(g.breakpoint_ts()) + [0], mod1=True)
    else:
        ts |= solve_pl(f, g.breakpoint_ts())
    ts = _canon_ts(f.space, ts)

    def val(t):
        v = f.eval(t)
        if g.space == CIRCLE:
            return g.eval(v % 1) + g.winding * (v - v % 1)
        return g.eval(v)

    w = g.winding * f.winding if f.space == CIRCLE else Fraction(0)
    pts = [(t, val(t)) for t in ts]
    return PLFunction(f.space, pts, winding=w)


def apply_unitary(P, u):
    """Image of a diagonal unitary of the domain algebra under the pattern:
    entries phase_i o map_j with multiplicities multiplied."""
    pats = _patterns(P)
    assert len(pats) == 1, "apply_unitary works blockwise"
    pa = pats[0]
    assert u.space == pa.domain
    entries = []
    for f, mf in pa.maps:
        for phase, mp in u.entries:
            entries.append((pl_compose(phase, f), mf * mp))
    return UnitaryField(pa.codomain, entries)


class NuMorphism:
    """Thomsen-semigroup element of a positive diagonal field a, with an
    optional downward shift delta: the generator 1_{(t,1]} is sent to the
    rank function of (a - t - delta)_+."""

    __slots__ = ("field", "delta")

    def __init__(self, field, delta=Fraction(0)):
        assert isinstance(field, PositiveField)
        self.field = field
        self.delta = Fraction(delta)
        assert self.delta >= 0

    def at(self, t):
        """The image of the generator 1_{(t,1]} as an LscFunction."""
        t = Fraction(t) + self.delta
        space = self.field.space
        ts = set()
        for f, _ in self.field.entries:
            ts.update(f.breakpoint_ts())
            ts.update(solve_pl(f, [t]))
        cuts = _canon_ts(space, ts)

        def count(y):
            return sum(m for f, m in self.field.entries if f.eval(y) > t)

        pts = [count(c) for c in cuts]
        if space == INTERVAL:
            seg = [count((a + b) / 2) for a, b in zip(cuts, cuts[1:])]
        else:
            n = len(cuts)
            seg = []
            for i in range(n):
                a = cuts[i]
                b = cuts[(i + 1) % n] + (1 if i + 1 == n else 0)
                seg.append(count(((a + b) / 2) % 1))
        return LscFunction(space, cuts, seg, pts)

    def shift(self, delta):
        return NuMorphism(self.field, self.delta + Fraction(delta))

    def values_at(self, y):
        """Effective generator-test values at y: entries shifted by delta and
        clipped to [0,1] (only thresholds t in [0,1] are generators)."""
        out = []
        for f, m in self.field.entries:
            v = f.eval(y) - self.delta
            v = min(max(v, Fraction(0)), Fraction(1))
            out.extend([v] * m)
        return sorted(out)


def thomsen_nu(a, delta=0):
    return NuMorphism(a, delta)


def nu_delta(nu, delta):
    """The paper's shift: nu_delta(1_{(t,1]}) = nu(1_{(t+delta,1]})."""
    return nu.shift(delta)


def compose_nu(P, nu):
    """The Thomsen element of the composite Cu(phi_P) o nu: push the positive
    field through the eigenvalue maps."""
    assert nu.field.space == P.domain
    entries = []
    for f, mf in P.maps:
        for a, ma in nu.field.entries:
            entries.append((pl_compose(a, f), mf * ma))
    return NuMorphism(PositiveField(P.codomain, entries), nu.delta)


def d_cu_nu(nu1, nu2):
    """Cu-metric between two Thomsen elements over a common base space:
    sup over y of the sorted-matching distance between the clipped value
    lists (zero-padded: rank functions ignore mass at 0)."""
    if nu1.field.space != nu2.field.space:
        raise TypeError("space mismatch")
    space = nu1.field.space
    funcs = [f for f, _ in nu1.field.entries] + [f for f, _ in nu2.field.entries]
    ys = set()
    for f in funcs:
        ys.update(f.breakpoint_ts())
        ys.update(solve_pl(f, [nu1.delta, nu2.delta, nu1.delta + 1, nu2.delta + 1]))
    for i, f in enumerate(funcs):
        for g in funcs[i + 1:]:
            ys |= solve_pl(f - g, [nu1.delta - nu2.delta, nu2.delta - nu1.delta, 0])
    ys = _sample_points(space, _canon_ts(space, ys))
    best = Fraction(0)
    for y in ys:
        va, vb = nu1.values_at(y), nu2.values_at(y)
        n = max(len(va), len(vb))
        va = [Fraction(0)] * (n - len(va)) + va
        vb = [Fraction(0)] * (n - len(vb)) + vb
        cost = max(abs(a - b) for a, b in zip(va, vb)) if n else Fraction(0)
        if cost > best:
            best = cost
    return best


def d_N(P, Q, N):
    """sup over nu in N of d_cu(Cu(P) o nu, Cu(Q) o nu)."""
    if not N:
        raise ValueError("empty Thomsen family")
    best = Fraction(0)
    for nu in N:
        if isinstance(nu, PositiveField):
            nu = NuMorphism(nu)
        val = d_cu_nu(compose_nu(_one_pattern(P), nu), compose_nu(_one_pattern(Q), nu))
        if val > best:
            best = val
    return best


def _one_pattern(P):
    pats = _patterns(P)
    assert len(pats) == 1, "Thomsen composition expects a single-block pattern"
    return pats[0]


def _signed_measure(pa, qa, y):
    """Atom weights of mu_P(y) - mu_Q(y), both normalized by total mult."""
    sigma = {}
    tp = pa.total_mult()
    tq = qa.total_mult()
    for v, m in pattern_value_multiset(pa, y):
        sigma[v] = sigma.get(v, Fraction(0)) + Fraction(m, tp)
    for v, m in pattern_value_multiset(qa, y):
        sigma[v] = sigma.get(v, Fraction(0)) - Fraction(m, tq)
    return {v: w for v, w in sigma.items() if w != 0}


def aff_t_distance(P, Q):
    """Trace distance: sup over self-adjoint contractions h of the sup-norm
    of the difference of induced trace functions; equals the sup over y of
    the total-variation distance of the eigenvalue-counting measures."""
    ps, qs = _patterns(P), _patterns(Q)
    if len(ps) != len(qs):
        raise TypeError("block count mismatch")
    best = Fraction(0)
    for pa, qa in zip(ps, qs):
        ys = _sample_points(pa.codomain, critical_points(pa, qa))
        for y in ys:
            tv = sum(abs(w) for w in _signed_measure(pa, qa, y).values())
            if tv > best:
                best = tv
    return best


def _lattice_dist(x, c):
    r = Fraction(x) % c
    return min(r, c - r)


def h_distance(P, Q, k0image):
    """Trace distance into the quotient H = Aff T_1 / closure(K0 image):
    sup over contractions h of the quotient norm of the difference of
    induced trace functions.

    Zero quotient: equals aff_t_distance.  AllConstants: the quotient norm
    of a function is half its oscillation, and the sup over h reduces to
    pairs of evaluation points (the extremes), exactly.  Lattice: the same
    pair reduction with the lattice quotient norm, maximized over the exact
    achievable-value zonotope of each pair."""
    if k0image.kind == K0Image.ZERO:
        return aff_t_distance(P, Q)
    ps, qs = _patterns(P), _patterns(Q)
    if len(ps) != len(qs):
        raise TypeError("block count mismatch")
    best = Fraction(0)
    half = Fraction(1, 2)
    for pa, qa in zip(ps, qs):
        ys = _sample_points(pa.codomain, critical_points(pa, qa))
        sigmas = [_signed_measure(pa, qa, y) for y in ys]
        keysets = [set(s) for s in sigmas]
        tvs = [sum(abs(w) for w in s.values()) for s in sigmas]
        # high-variation points first so the prune below bites early
        order = sorted(range(len(ys)), key=lambda i: -tvs[i])
        for a in range(len(order)):
            for b in range(a, len(order)):
                i, j = order[a], order[b]
                s1, s2 = sigmas[i], sigmas[j]
                if k0image.kind == K0Image.ALL:
                    if a == b:
                        continue
                    if keysets[i] & keysets[j]:
                        val = half * sum(
                            abs(s1.get(v, Fraction(0))
                                - s2.get(v, Fraction(0)))
                            for v in keysets[i] | keysets[j])
                    else:
                        val = half * (tvs[i] + tvs[j])
                else:
                    c = k0image.step
                    if not (keysets[i] | keysets[j]):
                        continue
                    if a != b and not (keysets[i] & keysets[j]):
                        # disjoint atoms: the achievable set is the full
                        # rectangle and the objective is edge-monotone
                        # toward the corner (tv_i, -tv_j)
                        val = half * (tvs[i] + tvs[j]) + \
                            _lattice_dist((tvs[i] - tvs[j]) / 2, c)
                    else:
                        gens = [(s1.get(v, Fraction(0)),
                                 s2.get(v, Fraction(0)))
                                for v in keysets[i] | keysets[j]]
                        # over the zonotope, |x1 - x2| <= sum |g1 - g2| and
                        # |x1 + x2| <= sum |g1 + g2|, so the pair cannot
                        # beat the running best when this bound fails
                        ub = half * sum(abs(g1 - g2) for g1, g2 in gens) + \
                            min(half * c,
                                half * sum(abs(g1 + g2) for g1, g2 in gens))
                        if ub <= best:
                            continue
                        from .matching import halfdiff_lattice_max
                        val = halfdiff_lattice_max(gens, c)
                if val > best:
                    best = val
    return best


def trace_function(P, h):
    """Normalized trace of the image of a PL observable h under the pattern:
    y -> (1/mult) sum m_i * h(map_i(y)), as an exact PLFunction."""
    pats = _patterns(P)
    assert len(pats) == 1
    pa = pats[0]
    total = pa.total_mult()
    acc = None
    for f, m in pa.maps:
        term = pl_compose(h, f).scale(Fraction(m, total))
        acc = term if acc is None else acc + term
    return acc
