"""Exact bottleneck matching between finite point multisets on the interval
or the circle, chain costs through a shared grid, and the small zonotope
optimizer used by the trace-level distances."""

from __future__ import annotations

from fractions import Fraction

from .geometry import CIRCLE, space_dist

EXPAND_CAP = 4096


def _expand(points):
    out = []
    for p, m in points:
        out.extend([Fraction(p)] * m)
    return sorted(out)


def _normalize(space, points):
    pts = {}
    for p, m in points:
        p = Fraction(p) % 1 if space == CIRCLE else Fraction(p)
        pts[p] = pts.get(p, 0) + m
    return sorted(pts.items())


def multiset_bottleneck(space, A, B):
    """Least r such that A and B (lists of (position, multiplicity)) admit a
    perfect matching moving every point by at most r; None when total
    multiplicities differ (no finite radius works).

    Interval: sorted pairing is optimal.  Circle: best cyclic shift of the
    sorted pairing, scanned with early exit.
    """
    A = _normalize(space, A)
    B = _normalize(space, B)
    ta, tb = sum(m for _, m in A), sum(m for _, m in B)
    if ta != tb:
        return None
    if ta == 0:
        return Fraction(0)
    from math import gcd
    g = 0
    for _, m in A + B:
        g = gcd(g, m)
    A = [(p, m // g) for p, m in A]
    B = [(p, m // g) for p, m in B]
    if sum(m for _, m in A) > EXPAND_CAP:
        raise ValueError("multiset too large to expand")
    ea, eb = _expand(A), _expand(B)
    n = len(ea)
    if space != CIRCLE:
        return max(abs(a - b) for a, b in zip(ea, eb))
    best = None
    for s in range(n):
        cur = Fraction(0)
        for i in range(n):
            d = space_dist(CIRCLE, ea[i], eb[(i + s) % n])
            if d > cur:
                cur = d
                if best is not None and cur >= best:
                    break
        if best is None or cur < best:
            best = cur
            if best == 0:
                break
    return best


def chain_cost(space, grid, p, q):
    """Bottleneck cost of moving p to q through a shared grid of matched
    points (a cascade: p takes the slot of the nearest grid point, which
    takes the next one, until q's slot absorbs the surplus).  Equals the
    minimax step over the two directions around the circle (one direction on
    the interval), where intermediate steps between consecutive grid points
    cost their gap."""
    p, q = Fraction(p), Fraction(q)
    if space == CIRCLE:
        p, q = p % 1, q % 1
    direct = space_dist(space, p, q)
    grid = sorted(set(Fraction(g) % 1 if space == CIRCLE else Fraction(g) for g in grid))
    best = direct
    for forward in (True, False):
        cost = _directed_chain(space, grid, p, q, forward)
        if cost is not None and cost < best:
            best = cost
    return best


def _directed_chain(space, grid, p, q, forward):
    # walk from p to q in one direction, stepping on grid points in between
    if space == CIRCLE:
        span = (q - p) % 1 if forward else (p - q) % 1
        inner = sorted(((g - p) % 1 if forward else (p - g) % 1) for g in grid)
        inner = [d for d in inner if 0 < d < span]
    else:
        if forward:
            inner = sorted(g - p for g in grid if p < g < q)
            span = q - p
        else:
            inner = sorted(p - g for g in grid if q < g < p)
            span = p - q
        if span <= 0:
            return None
    if not inner:
        return None
    steps = [inner[0]]
    for a, b in zip(inner, inner[1:]):
        steps.append(b - a)
    steps.append(span - inner[-1])
    return max(steps)


def two_mover_bottleneck(space, grid, a_movers, b_movers):
    """Chain bound for the bottleneck between grid+{a1,a2} and grid+{b1,b2}:
    pair the movers and route each pair directly or by a cascade through the
    grid.  Always a lower bound on the true matching cost (any matching
    induces one displacement chain per mover, and straightening a chain
    never raises its largest step); attained whenever the two routes use
    disjoint grid stretches."""
    (a1, a2), (b1, b2) = a_movers, b_movers
    e = lambda p, q: chain_cost(space, grid, p, q)
    return min(max(e(a1, b1), e(a2, b2)), max(e(a1, b2), e(a2, b1)))


def zonotope_extreme_points(gens, approx=False):
    """Vertices of the 2D zonotope sum of [-1,1]*g for generators g.

    Standard angular walk; returns the full vertex cycle (exact rationals,
    or floats when approx is set).
    """
    import functools
    ups = []
    for x, y in gens:
        if approx:
            x, y = float(x), float(y)
        else:
            x, y = Fraction(x), Fraction(y)
        if (x, y) == (0, 0):
            continue
        # fold directions into the upper half plane
        ups.append((x, y) if (y > 0 or (y == 0 and x > 0)) else (-x, -y))
    if not ups:
        return [(Fraction(0), Fraction(0))]

    def by_angle(u, v):
        cr = u[0] * v[1] - u[1] * v[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ups.sort(key=functools.cmp_to_key(by_angle))
    # parallel generators only stretch the same edge; merge them
    merged = [ups[0]]
    for u in ups[1:]:
        last = merged[-1]
        if last[0] * u[1] == last[1] * u[0]:
            merged[-1] = (last[0] + u[0], last[1] + u[1])
        else:
            merged.append(u)
    ups = merged
    vx = -sum(u[0] for u in ups)
    vy = -sum(u[1] for u in ups)
    half = [(vx, vy)]
    for x, y in ups:
        vx, vy = vx + 2 * x, vy + 2 * y
        half.append((vx, vy))
    # the other half of the boundary is the reflection through the origin
    cycle = half + [(-x, -y) for x, y in half[1:-1]] + [half[0]]
    return cycle


def zonotope_max(gens, q, lattice_step=None, approx=False):
    """Max of q(x1, x2) over the zonotope.

    Without a lattice step, q must be convex and the vertices suffice.
    With one, q may additionally carry a sawtooth dist((x1+x2)/2, cZ)
    term.  Along an edge that sawtooth peaks where the midrange hits an
    odd multiple of c/2; the peak values follow the convex part, so only
    the first and last peak of each edge can beat the endpoints.

    approx runs the same walk in floats (a fast screen, not exact); the
    peak index range is then widened by one on each side so a rounding
    error in ceil/floor cannot drop a peak."""
    verts = zonotope_extreme_points(gens, approx)
    best = None
    for v in verts:
        val = q(*v)
        if best is None or val > best:
            best = val
    if lattice_step:
        from math import ceil, floor
        c = float(lattice_step) if approx else Fraction(lattice_step)
        for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
            m1, m2 = (x1 + y1) / 2, (x2 + y2) / 2
            if m1 == m2:
                continue
            lo, hi = min(m1, m2), max(m1, m2)
            klo, khi = ceil(2 * lo / c), floor(2 * hi / c)
            if approx:
                klo, khi = klo - 1, khi + 1
            # first and last odd k with lo <= k*c/2 <= hi
            kf = klo if klo % 2 else klo + 1
            kl = khi if khi % 2 else khi - 1
            for k in {kf, kl}:
                if not klo <= k <= khi:
                    continue
                m = k * c / 2 if approx else Fraction(k) * c / 2
                t = (m - m1) / (m2 - m1)
                if approx:
                    t = min(max(t, 0.0), 1.0)
                if 0 <= t <= 1:
                    val = q(x1 + t * (x2 - x1), y1 + t * (y2 - y1))
                    if val > best:
                        best = val
    return best


def halfdiff_lattice_max(gens, step):
    """Exact max of |x1 - x2|/2 + dist((x1 + x2)/2, step*Z) over the
    zonotope of gens.

    Same boundary walk as zonotope_max, but the objective is fixed, so
    everything can be scaled to integers once: with the generators on a
    common denominator d the value at a point is
    (|x1 - x2| + dist(x1 + x2, 2C*Z)) / (2d) with C = step*d, and on an
    edge the extra peak points clear their denominators the same way.
    """
    import functools
    from math import lcm

    step = Fraction(step)
    gens = [(Fraction(a), Fraction(b)) for a, b in gens]
    d = step.denominator
    for a, b in gens:
        d = lcm(d, a.denominator, b.denominator)
    C = int(step * d)
    ups = []
    for a, b in gens:
        x, y = int(a * d), int(b * d)
        if x == 0 and y == 0:
            continue
        ups.append((x, y) if (y > 0 or (y == 0 and x > 0)) else (-x, -y))
    if not ups:
        return Fraction(0)

    def by_angle(u, v):
        cr = u[0] * v[1] - u[1] * v[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ups.sort(key=functools.cmp_to_key(by_angle))
    merged = [ups[0]]
    for u in ups[1:]:
        last = merged[-1]
        if last[0] * u[1] == last[1] * u[0]:
            merged[-1] = (last[0] + u[0], last[1] + u[1])
        else:
            merged.append(u)
    ups = merged
    vx = -sum(u[0] for u in ups)
    vy = -sum(u[1] for u in ups)
    half = [(vx, vy)]
    for x, y in ups:
        vx, vy = vx + 2 * x, vy + 2 * y
        half.append((vx, vy))
    verts = half + [(-x, -y) for x, y in half[1:-1]] + [half[0]]

    two_c = 2 * C
    bn, bd = 0, 1  # best value as bn / bd
    for x, y in verts:
        r = (x + y) % two_c
        n = abs(x - y) + min(r, two_c - r)
        if n * bd > bn * 2 * d:
            bn, bd = n, 2 * d
    for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
        s1, s2 = x1 + y1, x2 + y2
        if s1 == s2:
            continue
        lo, hi = min(s1, s2), max(s1, s2)
        # peaks of the sawtooth sit at odd multiples of C
        klo, khi = -((-lo) // C), hi // C
        kf = klo if klo % 2 else klo + 1
        kl = khi if khi % 2 else khi - 1
        w = s2 - s1
        aw = abs(w)
        for k in {kf, kl}:
            if not klo <= k <= khi:
                continue
            s0 = k * C
            xx = x1 * w + (s0 - s1) * (x2 - x1)
            yy = y1 * w + (s0 - s1) * (y2 - y1)
            r = (xx + yy) % (two_c * aw)
            n = abs(xx - yy) + min(r, two_c * aw - r)
            if n * bd > bn * 2 * d * aw:
                bn, bd = n, 2 * d * aw
    return Fraction(bn, bd)
