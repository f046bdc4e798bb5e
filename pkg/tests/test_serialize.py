"""JSON round trips for the exact types."""

import json
from fractions import Fraction as F

import pytest

from cumetrics.algebras import K0Image, UnitaryField
from cumetrics.determinant import HClass
from cumetrics.geometry import CIRCLE, INTERVAL, OpenSet, PLFunction
from cumetrics.lsc import INF, LscFunction, indicator
from cumetrics.ntbasis import NTBasis
from cumetrics.scenarios import novel_patterns, robert_unitary
from cumetrics.serialize import (dump_basis, dump_hclass, dump_lsc,
                                 dump_openset, dump_pattern, dump_pl, dump_q,
                                 dump_unitary, dump_value, load_basis,
                                 load_hclass, load_lsc, load_openset,
                                 load_pattern, load_pl, load_q, load_unitary,
                                 load_value)

from gen import rand_lsc, rand_open_set, rand_pattern, rand_pl, rand_unitary, seeded


def through_json(d):
    return json.loads(json.dumps(d))


def test_rational_strings():
    assert dump_q(F(3, 4)) == "3/4"
    assert dump_q(2) == "2"
    assert load_q("3/4") == F(3, 4)
    assert dump_value(INF) == "inf" and load_value("inf") == INF


def test_pl_round_trip():
    rng = seeded(41)
    for _ in range(60):
        space = rng.choice([INTERVAL, CIRCLE])
        f = rand_pl(rng, space)
        assert load_pl(through_json(dump_pl(f))) == f


def test_openset_round_trip():
    rng = seeded(42)
    for _ in range(60):
        space = rng.choice([INTERVAL, CIRCLE])
        U = rand_open_set(rng, space)
        assert load_openset(through_json(dump_openset(U))) == U
    full = OpenSet(CIRCLE, full=True)
    assert load_openset(dump_openset(full)) == full
    closed = OpenSet(INTERVAL, [(-F(1, 2), F(1, 2))])
    assert load_openset(dump_openset(closed)) == closed


def test_lsc_round_trip():
    rng = seeded(43)
    for _ in range(60):
        space = rng.choice([INTERVAL, CIRCLE])
        x = rand_lsc(rng, space)
        assert load_lsc(through_json(dump_lsc(x))) == x
    y = indicator(OpenSet(CIRCLE, [(F(1, 8), F(1, 4))]))
    assert load_lsc(dump_lsc(y)) == y


def test_unitary_round_trip():
    rng = seeded(44)
    for _ in range(40):
        space = rng.choice([INTERVAL, CIRCLE])
        u = rand_unitary(rng, space)
        assert load_unitary(through_json(dump_unitary(u))) == u
    assert load_unitary(dump_unitary(robert_unitary(3, 2))) == robert_unitary(3, 2)


def test_pattern_round_trip():
    rng = seeded(45)
    for _ in range(40):
        domain = rng.choice([INTERVAL, CIRCLE])
        codomain = rng.choice([INTERVAL, CIRCLE])
        P = rand_pattern(rng, domain, codomain)
        assert load_pattern(through_json(dump_pattern(P))) == P
    a, b = novel_patterns(2)
    for P in (a, b):
        assert load_pattern(dump_pattern(P)) == P


def test_pattern_winding_shorthand():
    d = {"domain": CIRCLE, "codomain": CIRCLE,
         "maps": [{"kind": "winding", "w": "2", "offset": "1/4"}]}
    P = load_pattern(d)
    f = P.maps[0][0]
    assert f.winding == 2 and f.eval(0) == F(1, 4)


def test_basis_and_hclass_round_trip():
    B = NTBasis.canonical_circle(K0Image.lattice(F(1, 2)))
    assert load_basis(through_json(dump_basis(B))) == B
    h = HClass(PLFunction.linear(1), K0Image.all_constants())
    h2 = load_hclass(through_json(dump_hclass(h)))
    assert (h - h2).is_zero() and h2.k0image.kind == h.k0image.kind


def test_dump_is_idempotent():
    rng = seeded(46)
    for _ in range(20):
        P = rand_pattern(rng, CIRCLE, CIRCLE)
        once = dump_pattern(P)
        again = dump_pattern(load_pattern(once))
        assert once == again


def test_bad_space_rejected():
    with pytest.raises(ValueError):
        load_pl({"space": "plane", "points": [["0", "0"]], "winding": "0"})
    with pytest.raises(ValueError):
        load_pattern({"domain": CIRCLE, "codomain": CIRCLE,
                      "maps": [{"kind": "mystery"}]})
