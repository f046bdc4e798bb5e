"""Random generators shared by the test suites (seeded, exact rationals)."""

from __future__ import annotations

import random
from fractions import Fraction

from cumetrics.geometry import CIRCLE, INTERVAL, OpenSet, PLFunction
from cumetrics.lsc import LscFunction


def rand_fraction(rng, den_max=12):
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, den), den)


def rand_open_set(rng, space, max_arcs=2):
    arcs = []
    for _ in range(rng.randint(0, max_arcs)):
        a = rand_fraction(rng)
        length = rand_fraction(rng, 8)
        if length == 0:
            continue
        if space == INTERVAL:
            arcs.append((a, min(a + length, Fraction(1))))
        else:
            arcs.append((a % 1, min(length, Fraction(7, 8))))
    return OpenSet(space, arcs)


def rand_lsc(rng, space, max_cuts=4, max_val=3):
    if space == INTERVAL:
        cuts = sorted({Fraction(0), Fraction(1)}
                      | {rand_fraction(rng) for _ in range(rng.randint(0, max_cuts))})
        seg = [rng.randint(0, max_val) for _ in range(len(cuts) - 1)]
        pts = [rng.randint(0, max_val) for _ in range(len(cuts))]
        return LscFunction(space, cuts, seg, pts)
    cuts = sorted({rand_fraction(rng) % 1 for _ in range(rng.randint(1, max_cuts))} or {Fraction(0)})
    seg = [rng.randint(0, max_val) for _ in range(len(cuts))]
    pts = [rng.randint(0, max_val) for _ in range(len(cuts))]
    return LscFunction(space, cuts, seg, pts)


def rand_pl(rng, space, max_pts=4, lo=0, hi=1):
    span = Fraction(hi) - Fraction(lo)
    if space == INTERVAL:
        ts = sorted({Fraction(0), Fraction(1)}
                    | {rand_fraction(rng) for _ in range(rng.randint(0, max_pts))})
        pts = [(t, Fraction(lo) + rand_fraction(rng) * span) for t in ts]
        return PLFunction(space, pts)
    ts = sorted({Fraction(0)} | {rand_fraction(rng) % 1 for _ in range(rng.randint(0, max_pts))})
    pts = [(t, Fraction(lo) + rand_fraction(rng) * span) for t in ts]
    return PLFunction(CIRCLE, pts, winding=rng.randint(-1, 1))


def rand_pattern(rng, domain, codomain, entries=None, max_entries=3,
                 max_pts=3, total=None):
    """Random diagonal pattern; with `total` set the multiplicities sum to
    that value (so two draws are d_cu-comparable)."""
    from cumetrics.morphisms import EigenPattern

    n = entries if entries is not None else rng.randint(1, max_entries)
    if total is None:
        mults = [rng.randint(1, 2) for _ in range(n)]
    else:
        n = min(n, total)
        mults = [1] * n
        for _ in range(total - n):
            mults[rng.randrange(n)] += 1
    maps = []
    for m in mults:
        if domain == INTERVAL:
            f = rand_pl(rng, codomain, max_pts=max_pts, lo=0, hi=1)
            if codomain == CIRCLE:
                f = PLFunction(CIRCLE, f.points, winding=0)
        else:
            f = rand_pl(rng, codomain, max_pts=max_pts)
        maps.append((f, m))
    return EigenPattern(domain, codomain, maps)


def rand_unitary(rng, space, max_entries=3, max_pts=3):
    from cumetrics.algebras import UnitaryField

    entries = []
    for _ in range(rng.randint(1, max_entries)):
        f = rand_pl(rng, space, max_pts=max_pts, lo=-1, hi=2)
        if space == CIRCLE:
            f = PLFunction(CIRCLE, f.points, winding=rng.randint(-2, 2))
        entries.append((f, rng.randint(1, 3)))
    return UnitaryField(space, entries)


def seeded(seed):
    return random.Random(seed)
