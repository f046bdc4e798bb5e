"""K-decorated Cu elements, fiber diagrams and the refined metrics."""

from fractions import Fraction as F

import pytest

from cumetrics.algebras import K0Image
from cumetrics.geometry import CIRCLE, INTERVAL, OpenSet, PLFunction
from cumetrics.lsc import INF, LscFunction, indicator
from cumetrics.morphisms import EigenPattern, d_cu
from cumetrics.refined import (CuKElement, FiberDiagram, IdealModel, cuk_add,
                               cuk_morphism_apply, cuk_order, d_star,
                               fiber_norm, lower_bound_check, ramp_unitary,
                               support_openset, transport_kdata)
from cumetrics.refined import _arc_family

from gen import rand_pattern, seeded


def winding(k, rot=0):
    return PLFunction(CIRCLE, [(0, F(rot))], winding=k)


def toy_pair():
    # two-sheet circle maps differing by a half-turn on both sheets
    alpha = EigenPattern(CIRCLE, CIRCLE,
                         [(winding(1), 1), (PLFunction.constant(CIRCLE, 0), 1)])
    beta = EigenPattern(CIRCLE, CIRCLE,
                        [(winding(1, F(1, 2)), 1),
                         (PLFunction.constant(CIRCLE, F(1, 2)), 1)])
    return alpha, beta


def test_support_openset():
    x = indicator(OpenSet(INTERVAL, [(F(1, 4), F(1, 2))]))
    assert support_openset(x) == OpenSet(INTERVAL, [(F(1, 4), F(1, 2))])
    full = LscFunction.constant(CIRCLE, 3)
    assert support_openset(full).full
    two = indicator(OpenSet(CIRCLE, [(0, F(1, 4)), (F(1, 2), F(1, 8))]))
    assert len(support_openset(two).components()) == 2


def test_ramp_unitary_interval():
    u = ramp_unitary(INTERVAL, F(1, 4), F(3, 4))
    p = u.entries[0][0]
    assert p.eval(0) == 0 and p.eval(F(1, 4)) == 0
    assert p.eval(F(3, 4)) == 1 and p.eval(1) == 1


def test_ramp_unitary_circle():
    u = ramp_unitary(CIRCLE, F(1, 4), F(3, 4))
    p = u.entries[0][0]
    assert p.winding == 1
    u2 = ramp_unitary(CIRCLE, F(3, 4), F(5, 4))
    assert u2.entries[0][0].winding == 1
    full = ramp_unitary(CIRCLE, 0, 1)
    assert full.entries[0][0].winding == 1


def test_ideal_model_ranks():
    arc = IdealModel(OpenSet(CIRCLE, [(0, F(1, 2))]))
    assert arc.k1_ranks == (1,)
    assert arc.generator(0).entries[0][0].winding == 1
    seg = IdealModel(OpenSet(INTERVAL, [(F(1, 4), F(1, 2))]))
    assert seg.k1_ranks == (0,)
    with pytest.raises(AssertionError):
        seg.generator(0)


def test_cuk_inject_and_add():
    I = IdealModel(OpenSet(CIRCLE, [(0, F(1, 2))]))
    x = indicator(I.support)
    e = CuKElement.inject(x, I)
    assert e.k1 == (0,)
    f = CuKElement(x, I, (2,))
    s = cuk_add(e, f)
    assert s.k1 == (2,)
    assert s.x.eval(F(1, 4)) == 2


def test_transport_kdata():
    small = IdealModel(OpenSet(CIRCLE, [(0, F(1, 4))]))
    big = IdealModel(OpenSet(CIRCLE, [(0, F(1, 2))]))
    e = CuKElement(indicator(small.support), small, (3,))
    k1, h = transport_kdata(e, big)
    assert k1 == (3,) and h is None


def test_cuk_order():
    # closure of the small arc sits inside the big one
    small = IdealModel(OpenSet(CIRCLE, [(F(1, 8), F(1, 4))]))
    big = IdealModel(OpenSet(CIRCLE, [(0, F(1, 2))]))
    a = CuKElement(indicator(small.support), small, (0,))
    b = CuKElement(indicator(big.support), big, (0,))
    assert cuk_order(a, b) == "waybelow"
    assert cuk_order(b, a) == "incomparable"
    assert cuk_order(a, a) == "leq"
    twisted = CuKElement(indicator(big.support), big, (1,))
    assert cuk_order(a, twisted) == "incomparable"


def test_cuk_morphism_transports_winding():
    # a winding-2 covering doubles the class of the full-circle generator
    I = IdealModel(OpenSet(CIRCLE, full=True))
    e = CuKElement(indicator(I.support), I, (1,))
    P = EigenPattern(CIRCLE, CIRCLE, [(winding(2), 1)])
    out = cuk_morphism_apply(P, e, hmodel=None)
    assert out.k1 == (2,)
    out3 = cuk_morphism_apply(P, CuKElement(indicator(I.support), I, (3,)),
                              hmodel=None)
    assert out3.k1 == (6,)


def test_fiber_norm_commuting_is_zero():
    alpha, _ = toy_pair()
    U = OpenSet(CIRCLE, full=True)
    lat = K0Image.lattice(1)
    I = IdealModel(U, k1_ranks=(1,), hmodel=lat)
    Fd = FiberDiagram(alpha, alpha, indicator(U), LscFunction.constant(CIRCLE, 2),
                      xideal=I, hmodel=lat)
    assert fiber_norm(Fd, "frak") == 0
    assert fiber_norm(Fd, "triv") == 0


def test_fiber_norm_rank_zero_is_zero():
    alpha, beta = toy_pair()
    U = OpenSet(CIRCLE, full=True)
    I = IdealModel(U, k1_ranks=(0,))
    Fd = FiberDiagram(alpha, beta, indicator(U), LscFunction.constant(CIRCLE, 2),
                      xideal=I)
    assert fiber_norm(Fd, "frak") == 0


def test_fiber_norm_toy_pair():
    # both determinants shift by 1/2; the frak distance scales back by the
    # matrix size, the trivial one just sees a mismatch
    alpha, beta = toy_pair()
    U = OpenSet(CIRCLE, full=True)
    lat = K0Image.lattice(1)
    I = IdealModel(U, k1_ranks=(1,), hmodel=lat)
    Fd = FiberDiagram(alpha, beta, indicator(U), LscFunction.constant(CIRCLE, 2),
                      xideal=I, hmodel=lat)
    assert fiber_norm(Fd, "frak") == 1
    assert fiber_norm(Fd, "k1") == 0
    assert fiber_norm(Fd, "triv") == INF


def test_dstar_toy_pair():
    alpha, beta = toy_pair()
    assert d_cu(alpha, beta) == F(1, 2)
    lat = K0Image.lattice(1)
    assert d_star(alpha, beta, metric="k1", domain_k1=1) == F(1, 2)
    assert d_star(alpha, beta, metric="frak", hmodel=lat, domain_k1=1) == F(1, 2)


def test_dstar_k1_collapses_on_interval_target():
    rng = seeded(81)
    for _ in range(20):
        P = rand_pattern(rng, CIRCLE, INTERVAL, total=3)
        Q = rand_pattern(rng, CIRCLE, INTERVAL, total=3)
        assert d_star(P, Q, metric="k1") == d_cu(P, Q)


def dstar_oracle(alpha, beta, metric, hmodel, domain_k1):
    """Definition chased directly: above d_cu every cross arrow exists, so
    each window constrains the radius by a quarter of its fiber norm."""
    eps0 = d_cu(alpha, beta)
    if eps0 == INF:
        return INF
    best = eps0
    for U in _arc_family(alpha, beta):
        ranks = None if domain_k1 is None else (domain_k1,) * len(U.components())
        I = IdealModel(U, k1_ranks=ranks, hmodel=hmodel)
        if not any(I.k1_ranks):
            continue
        y = indicator(U.fatten(eps0 + 1))
        Fd = FiberDiagram(alpha, beta, indicator(U), y, xideal=I, hmodel=hmodel)
        val = fiber_norm(Fd, metric)
        if val == INF:
            return INF
        if val / 4 > best:
            best = val / 4
    return best


def test_dstar_matches_oracle():
    rng = seeded(82)
    lat = K0Image.lattice(1)
    for i in range(6):
        P = rand_pattern(rng, CIRCLE, CIRCLE, entries=1, total=2, max_pts=1)
        Q = rand_pattern(rng, CIRCLE, CIRCLE, entries=1, total=2, max_pts=1)
        for metric, hm in (("k1", None), ("frak", lat)):
            got = d_star(P, Q, metric=metric, hmodel=hm, domain_k1=1)
            want = dstar_oracle(P, Q, metric, hm, 1)
            assert got == want
            assert got >= d_cu(P, Q)
        if i < 2:
            assert d_star(P, Q, metric="k1", domain_k1=1) == \
                d_star(Q, P, metric="k1", domain_k1=1)


def test_lower_bound_vs_dstar():
    alpha, beta = toy_pair()
    lat = K0Image.lattice(1)
    U = OpenSet(CIRCLE, full=True)
    I = IdealModel(U, k1_ranks=(1,), hmodel=lat)
    z = LscFunction.constant(CIRCLE, 2)
    lb = lower_bound_check(alpha, beta, U, z, metric="frak", hmodel=lat, xideal=I)
    assert lb == 1
    assert lb / 4 <= d_star(alpha, beta, metric="frak", hmodel=lat, domain_k1=1)


def test_lower_bound_requires_containment():
    alpha, beta = toy_pair()
    U = OpenSet(CIRCLE, full=True)
    too_small = LscFunction.constant(CIRCLE, 1)
    with pytest.raises(ValueError):
        lower_bound_check(alpha, beta, U, too_small)
