"""K1 bases, rotation rows, the combined invariant and basis equivalence."""

from fractions import Fraction as F

import pytest

from cumetrics.algebras import K0Image, UnitaryField
from cumetrics.determinant import HClass, det_hat, h_norm
from cumetrics.geometry import CIRCLE, INTERVAL, PLFunction
from cumetrics.morphisms import EigenPattern, apply_unitary, trace_function
from cumetrics.ntbasis import (NTBasis, d_R, frak_d, is_diagonalisable,
                               k1_action, nt_matrix, relative_rotation)
from cumetrics.scenarios import diagonalisation_search

from gen import rand_pl, seeded


def wrap_map():
    """C(T) -> C([0,1]) along the full unwinding of the circle."""
    return EigenPattern(CIRCLE, INTERVAL, [(PLFunction.linear(1), 1)])


def shifted_basis(basis, g):
    c1 = UnitaryField(basis.space, [(p + g, m) for p, m in basis.c1.entries])
    return NTBasis(basis.space, basis.k0image, c1)


def rand_winding_basis(rng, k0image):
    g = rand_pl(rng, CIRCLE, max_pts=2, lo=0, hi=F(1, 2))
    g = PLFunction(CIRCLE, g.points, winding=0)
    return shifted_basis(NTBasis.canonical_circle(k0image), g)


def rand_k1_matched_pair(rng, codomain, k0image):
    """Two patterns with the same windings entry by entry, so the K1 parts
    agree and the rotation difference is basis-section free."""
    maps_p, maps_q = [], []
    for _ in range(rng.randint(1, 3)):
        w = rng.randint(-1, 1)
        m = rng.randint(1, 2)
        for maps in (maps_p, maps_q):
            if codomain == CIRCLE:
                f = rand_pl(rng, CIRCLE, max_pts=2)
                f = PLFunction(CIRCLE, f.points, winding=w)
            else:
                f = rand_pl(rng, INTERVAL, max_pts=2, lo=0, hi=1)
            maps.append((f, m))
    P = EigenPattern(CIRCLE, codomain, maps_p)
    Q = EigenPattern(CIRCLE, codomain, maps_q)
    return P, Q


def test_k1_action():
    P = wrap_map()
    D = NTBasis.trivial(INTERVAL, K0Image.all_constants())
    assert k1_action(P, D) == 0
    z2 = EigenPattern(CIRCLE, CIRCLE,
                      [(PLFunction(CIRCLE, [(0, 0)], winding=2), 1)])
    assert k1_action(z2, NTBasis.canonical_circle()) == 2


def test_wrap_map_rotation_row():
    P = wrap_map()
    C = NTBasis.canonical_circle()
    D = NTBasis.trivial(INTERVAL, K0Image.all_constants())
    M = nt_matrix(P, C, D)
    assert M.rotation[1].rep == PLFunction.linear(1)
    assert h_norm(M.rotation[1]) == F(1, 2)
    assert not M.rotation_vanishes()


def test_wrap_map_not_diagonalisable():
    P = wrap_map()
    C = NTBasis.canonical_circle()
    D = NTBasis.trivial(INTERVAL, K0Image.all_constants())
    flag, reason = is_diagonalisable(P, C, D)
    assert not flag and "every basis" in reason
    assert diagonalisation_search(P, C, D) is None


def test_point_evaluation_diagonalisable():
    P = EigenPattern(CIRCLE, INTERVAL,
                     [(PLFunction.constant(INTERVAL, F(1, 3)), 2)])
    C = NTBasis.canonical_circle()
    D = NTBasis.trivial(INTERVAL, K0Image.all_constants())
    flag, _ = is_diagonalisable(P, C, D)
    assert flag


def test_rotation_distance_rotated_pair():
    # a half turn shifts every generator determinant by exactly 1/2,
    # independently of the winding
    C = NTBasis.canonical_circle(K0Image.lattice(1))
    D = NTBasis.canonical_circle(K0Image.lattice(1))
    for k in (3, 4):
        uk = EigenPattern(CIRCLE, CIRCLE,
                          [(PLFunction(CIRCLE, [(0, 0)], winding=k), 1)])
        rk = EigenPattern(CIRCLE, CIRCLE,
                          [(PLFunction(CIRCLE, [(0, F(1, 2))], winding=k), 1)])
        assert d_R(uk, uk, C, D) == 0
        assert d_R(uk, rk, C, D) == F(1, 2)
        assert frak_d(uk, rk, C, D)["rotation"] == F(1, 2)


def test_lma_key_i_section_free():
    # equal K1 parts: the rotation difference ignores the codomain section
    rng = seeded(71)
    for _ in range(40):
        k0 = K0Image.lattice(1)
        P, Q = rand_k1_matched_pair(rng, CIRCLE, k0)
        C = rand_winding_basis(rng, k0)
        D1 = rand_winding_basis(rng, k0)
        D2 = rand_winding_basis(rng, k0)
        r1 = relative_rotation(P, Q, C, D1)
        r2 = relative_rotation(P, Q, C, D2)
        for k in r1:
            assert h_norm(r1[k] - r2[k]) == 0
            # closed form: difference of image determinants
            u = apply_unitary(P, C.generator(k))
            v = apply_unitary(Q, C.generator(k))
            closed = HClass(det_hat(u) - det_hat(v), k0)
            assert h_norm(r1[k] - closed) == 0


def test_lma_key_ii_basis_change():
    rng = seeded(72)
    for _ in range(40):
        k0 = K0Image.lattice(1)
        P, Q = rand_k1_matched_pair(rng, CIRCLE, k0)
        C1 = rand_winding_basis(rng, k0)
        C2 = rand_winding_basis(rng, k0)
        D = rand_winding_basis(rng, k0)
        r1 = relative_rotation(P, Q, C1, D)
        r2 = relative_rotation(P, Q, C2, D)
        for k in r1:
            h = det_hat(C1.generator(k)) - det_hat(C2.generator(k))
            push = trace_function(P, h) - trace_function(Q, h)
            assert h_norm((r1[k] - r2[k]) - HClass(push, k0)) == 0


def test_frak_two_lipschitz():
    rng = seeded(73)
    for _ in range(60):
        k0 = K0Image.lattice(1)
        P, Q = rand_k1_matched_pair(rng, CIRCLE, k0)
        C1, D1 = rand_winding_basis(rng, k0), rand_winding_basis(rng, k0)
        C2, D2 = rand_winding_basis(rng, k0), rand_winding_basis(rng, k0)
        t1 = frak_d(P, Q, C1, D1)["total"]
        t2 = frak_d(P, Q, C2, D2)["total"]
        assert t1 <= 2 * t2 and t2 <= 2 * t1


def test_frak_k1_mismatch_infinite():
    z1 = EigenPattern(CIRCLE, CIRCLE,
                      [(PLFunction(CIRCLE, [(0, 0)], winding=1), 1)])
    z2 = EigenPattern(CIRCLE, CIRCLE,
                      [(PLFunction(CIRCLE, [(0, 0)], winding=2), 1)])
    C = D = NTBasis.canonical_circle(K0Image.lattice(1))
    assert frak_d(z1, z2, C, D)["total"] == float("inf")


def test_diagonalisation_search_finds_shift():
    # a constant rotation offset is killed by shifting the codomain basis
    P = EigenPattern(CIRCLE, CIRCLE,
                     [(PLFunction(CIRCLE, [(0, F(1, 4))], winding=1), 1)])
    C = NTBasis.canonical_circle(K0Image.lattice(1))
    D = NTBasis.canonical_circle(K0Image.lattice(1))
    if is_diagonalisable(P, C, D)[0]:
        pytest.skip("already diagonal in the canonical bases")
    found = diagonalisation_search(P, C, D)
    assert found is not None
    C2, D2 = found
    assert is_diagonalisable(P, C2, D2)[0]
