"""Upper-triangular matrix presentations of morphisms: K1 bases, the
rotation row computed through extended determinants, rotation distances and
the combined invariant built from trace, rotation and K1 data."""

from __future__ import annotations

from fractions import Fraction

from .algebras import K0Image, UnitaryField
from .determinant import HClass, det_hat, extended_det, h_norm
from .geometry import CIRCLE, INTERVAL, PLFunction
from .lsc import INF
from .morphisms import apply_unitary, h_distance


class NTBasis:
    """A K1 basis for one model block: a chosen unitary c1 generating K1
    (None when K1 is trivial) together with the block's K0 image tag.
    c_k is the k-fold diagonal stacking of c1, adjoints for negative k and
    c_0 = 1."""

    __slots__ = ("space", "k0image", "c1")

    def __init__(self, space, k0image, c1=None):
        assert space in (INTERVAL, CIRCLE)
        assert isinstance(k0image, K0Image)
        if c1 is not None:
            assert isinstance(c1, UnitaryField) and c1.space == space
            assert space == CIRCLE, "only circle blocks carry K1 = Z here"
            assert c1.winding_total() == 1, "c1 must generate K1"
        self.space = space
        self.k0image = k0image
        self.c1 = c1

    def __eq__(self, other):
        return (isinstance(other, NTBasis) and self.space == other.space
                and self.k0image == other.k0image and self.c1 == other.c1)

    @classmethod
    def canonical_circle(cls, k0image=None):
        """The coordinate unitary z as generator."""
        if k0image is None:
            k0image = K0Image.all_constants()
        z = UnitaryField.from_phase(PLFunction(CIRCLE, [(0, 0)], winding=1))
        return cls(CIRCLE, k0image, z)

    @classmethod
    def trivial(cls, space, k0image):
        return cls(space, k0image, None)

    def generator_indices(self):
        """The designated K1 generator set the rotation row is tested on."""
        return (1,) if self.c1 is not None else ()

    def generator(self, k):
        """The basis unitary at K1 class k."""
        if self.c1 is None or k == 0:
            return UnitaryField.identity(self.space)
        base = self.c1 if k > 0 else self.c1.adjoint()
        u = base
        for _ in range(abs(k) - 1):
            u = u.stack(base)
        return u

    def __repr__(self):
        return "NTBasis(%s, %r, K1=%s)" % (
            self.space, self.k0image, "Z" if self.c1 is not None else "0")


class NTMatrixRep:
    """Upper-triangular presentation of a morphism with respect to a pair of
    bases: the trace action sits on the diagonal (carried by the pattern),
    the rotation row in the corner, and the K1 corner acts as multiplication
    by an integer (0 covers both the zero map and trivial K1 groups)."""

    __slots__ = ("pattern", "domain_basis", "codomain_basis", "rotation", "k1_part")

    def __init__(self, pattern, domain_basis, codomain_basis, rotation, k1_part):
        self.pattern = pattern
        self.domain_basis = domain_basis
        self.codomain_basis = codomain_basis
        self.rotation = dict(rotation)
        self.k1_part = int(k1_part)

    def rotation_vanishes(self):
        return all(v.is_zero() for v in self.rotation.values())

    def __repr__(self):
        return "NTMatrixRep(rotation on %s, k1=x%d)" % (
            sorted(self.rotation), self.k1_part)


def k1_action(P, D):
    """The corner integer: total signed winding of the pattern when the
    codomain block has K1 = Z, else 0."""
    if D.c1 is None:
        return 0
    return P.winding_total()


def nt_matrix(P, C, D):
    """Matrix presentation of the pattern in the bases C (domain) and D
    (codomain).  The rotation at generator index k is the extended
    determinant of the image of c_k."""
    assert P.domain == C.space and P.codomain == D.space
    rotation = {}
    for k in C.generator_indices():
        rotation[k] = extended_det(apply_unitary(P, C.generator(k)), D)
    return NTMatrixRep(P, C, D, rotation, k1_action(P, D))


def relative_rotation(P, Q, C, D):
    """Rotation row of P minus that of Q, index by index.  When the K1
    corners agree the codomain section drops out and the value is the bare
    difference of the image determinants, independent of D's generator."""
    MP, MQ = nt_matrix(P, C, D), nt_matrix(Q, C, D)
    out = {}
    for k in C.generator_indices():
        if MP.k1_part == MQ.k1_part:
            u, v = apply_unitary(P, C.generator(k)), apply_unitary(Q, C.generator(k))
            out[k] = HClass(det_hat(u) - det_hat(v), D.k0image)
        else:
            out[k] = MP.rotation[k] - MQ.rotation[k]
    return out


def d_R(P, Q, C, D):
    """Rotation distance: sup of the quotient norm of the relative rotation
    over the designated generator set."""
    rel = relative_rotation(P, Q, C, D)
    if not rel:
        return Fraction(0)
    return max(h_norm(v) for v in rel.values())


def frak_d(P, Q, C, D):
    """The combined invariant: trace distance in the H quotient plus the
    rotation distance plus the K1 term (0 when the corners agree, infinite
    otherwise).  Returns a dict with the three summands and the total."""
    m1, m2 = k1_action(P, D), k1_action(Q, D)
    dh = h_distance(P, Q, D.k0image)
    dr = d_R(P, Q, C, D)
    dk = Fraction(0) if m1 == m2 else INF
    total = INF if dk == INF else dh + dr
    return {"trace": dh, "rotation": dr, "k1": dk, "total": total}


def _covers_circle(f):
    """Whether the eigenvalue map passes through every point of the domain
    circle."""
    if f.space == CIRCLE and f.winding != 0:
        return True
    lo, hi = f.range()
    return hi - lo >= 1


def is_diagonalisable(P, C, D):
    """Whether the presentation can be conjugated to diagonal form: the
    rotation row must vanish on the generators.  Returns (flag, reason).

    For a multiplicity-one pattern into an interval block whose single
    eigenvalue map runs through the whole circle the obstruction is basis
    independent: the image of any winding-1 unitary gains a full turn over
    the map's range, so its determinant class is nonzero for every choice
    of c1."""
    M = nt_matrix(P, C, D)
    if M.rotation_vanishes():
        return True, "rotation vanishes on the generators"
    if (P.domain == CIRCLE and P.codomain == INTERVAL and len(P.maps) == 1
            and P.maps[0][1] == 1 and _covers_circle(P.maps[0][0])):
        return False, "obstructed for every basis: the eigenvalue map wraps the circle"
    return False, "rotation does not vanish in the given bases"
