"""Path determinants, H classes and quotient norms."""

from fractions import Fraction as F

from cumetrics.algebras import K0Image, UnitaryField
from cumetrics.determinant import (HClass, det_hat, extended_det, h_norm,
                                   numeric_det_oracle, sample_unitary_path)
from cumetrics.geometry import CIRCLE, INTERVAL, PLFunction
from cumetrics.ntbasis import NTBasis

from gen import rand_unitary, seeded


def test_det_hat_weighted_mean():
    u = UnitaryField(INTERVAL, [(PLFunction.linear(1), 1),
                                (PLFunction.constant(INTERVAL, F(1, 2)), 3)])
    d = det_hat(u)
    assert d.eval(0) == F(3, 8) and d.eval(1) == F(5, 8)


def test_det_additive_and_adjoint():
    rng = seeded(61)
    for _ in range(60):
        space = rng.choice([INTERVAL, CIRCLE])
        u = rand_unitary(rng, space)
        v = rand_unitary(rng, space)
        n, m = u.total_mult(), v.total_mult()
        lhs = det_hat(u.stack(v)).scale(n + m)
        rhs = det_hat(u).scale(n) + det_hat(v).scale(m)
        assert lhs == rhs
        assert det_hat(u).scale(n) + det_hat(u.adjoint()).scale(n) == \
            PLFunction.constant(space, 0)


def test_h_norm_all_constants():
    # quotient by all constants leaves half the oscillation
    x = HClass(PLFunction.linear(1), K0Image.all_constants())
    assert h_norm(x) == F(1, 2)
    assert HClass(PLFunction.constant(INTERVAL, 7), K0Image.all_constants()).is_zero()


def test_h_norm_lattice():
    lat = K0Image.lattice(F(1, 4))
    assert h_norm(HClass(PLFunction.constant(INTERVAL, F(1, 4)), lat)) == 0
    assert h_norm(HClass(PLFunction.constant(INTERVAL, F(1, 8)), lat)) == F(1, 8)
    assert h_norm(HClass(PLFunction.constant(INTERVAL, F(7, 8)), lat)) == 0 + F(1, 8)


def test_h_norm_zero_image():
    x = HClass(PLFunction.linear(1), K0Image.zero())
    assert h_norm(x) == 1


def test_extended_det_canonical():
    C = NTBasis.canonical_circle()
    z = C.generator(1)
    assert extended_det(z, C).is_zero()
    # scalar rotations die in the all-constants quotient but not mod Z
    assert extended_det(z.rotate(F(1, 4)), C).is_zero()
    L = NTBasis.canonical_circle(K0Image.lattice(1))
    assert extended_det(L.generator(1).rotate(F(1, 4)), L).norm() == F(1, 4)


def test_numeric_oracle_matches():
    rng = seeded(62)
    for _ in range(12):
        space = rng.choice([INTERVAL, CIRCLE])
        u = rand_unitary(rng, space)
        d = det_hat(u)
        for t in (F(0), F(1, 3), F(2, 3)):
            rows = sample_unitary_path(u, t, 4000)
            assert abs(numeric_det_oracle(rows) - float(d.eval(t))) < 1e-6
