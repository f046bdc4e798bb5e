"""Path determinants of diagonal unitary fields: the exact symbolic value,
its class in the trace quotient H, quotient norms, the basis-extended
determinant, and a floating-point quadrature oracle."""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import ceil, floor

from .algebras import K0Image, ModelAlgebra, UnitaryField, normalized_trace
from .geometry import CIRCLE, PLFunction


def det_hat(u):
    """Exact determinant of the linear phase path s -> diag(e^{2i pi s h_j}):
    the multiplicity-weighted mean of the phases."""
    return normalized_trace(u)


class HClass:
    """An element of H = Aff T_1 / closure(K0 image): a PL representative
    together with the quotient tag deciding which differences vanish."""

    __slots__ = ("rep", "k0image")

    def __init__(self, rep, k0image):
        assert isinstance(rep, PLFunction)
        assert isinstance(k0image, K0Image)
        self.rep = rep
        self.k0image = k0image

    def __add__(self, other):
        assert self.k0image == other.k0image
        return HClass(self.rep + other.rep, self.k0image)

    def __sub__(self, other):
        assert self.k0image == other.k0image
        return HClass(self.rep - other.rep, self.k0image)

    def __neg__(self):
        return HClass(self.rep.scale(-1), self.k0image)

    def scale(self, c):
        return HClass(self.rep.scale(c), self.k0image)

    def norm(self):
        return h_norm(self)

    def is_zero(self):
        return h_norm(self) == 0

    def __eq__(self, other):
        return (isinstance(other, HClass) and self.k0image == other.k0image
                and h_norm(HClass(self.rep - other.rep, self.k0image)) == 0)

    def __repr__(self):
        return "HClass(%r, %r)" % (self.rep, self.k0image)


def _block_k0image(A):
    if isinstance(A, K0Image):
        return A
    if isinstance(A, ModelAlgebra):
        assert len(A.blocks) == 1, "det_bar needs a single-block algebra"
        return A.blocks[0].k0image
    return A.k0image  # a Block


def det_bar(u, A):
    """The determinant class in H of the ambient algebra."""
    return HClass(det_hat(u), _block_k0image(A))


def h_norm(x, k0image=None):
    """Quotient norm on H: AllConstants -> half the oscillation;
    Lattice(c) -> least sup-norm over lattice shifts; Zero -> sup-norm."""
    if isinstance(x, HClass):
        f, k0 = x.rep, x.k0image
    else:
        f, k0 = x, k0image
    lo, hi = f.range()
    if k0.kind == K0Image.ZERO:
        return max(abs(lo), abs(hi))
    if k0.kind == K0Image.ALL:
        return (hi - lo) / 2
    c = k0.step
    best = None
    for k in range(floor(lo / c) - 1, ceil(hi / c) + 2):
        p = Fraction(k) * c
        val = max(abs(lo - p), abs(hi - p))
        if best is None or val < best:
            best = val
    return best


def extended_det(u, basis):
    """Determinant extended to all unitaries via a section of K1: the class
    of diag(u, c*) where c is the basis unitary at u's K1 class.  In the
    normalized picture this is the difference of the two phase means."""
    k = u.winding_total() if u.space == CIRCLE else 0
    c = basis.generator(k)
    if c.space != u.space:
        raise ValueError("basis lives over a different base space")
    return HClass(det_hat(u) - det_hat(c), basis.k0image)


def sample_unitary_path(u, t, steps):
    """Sample the linear phase path of u at base point t: rows (s, values)
    of complex diagonal entries (multiplicity expanded)."""
    phases = []
    for f, m in u.entries:
        phases.extend([float(f.eval(t))] * m)
    rows = []
    for i in range(steps + 1):
        s = i / steps
        rows.append((s, [cmath.exp(2j * cmath.pi * s * h) for h in phases]))
    return rows


def numeric_det_oracle(rows):
    """Quadrature of (1/2i pi) integral of Tr(xi' xi^{-1}) along a sampled
    diagonal path; normalized by the diagonal size.  Validation only."""
    n = len(rows[0][1])
    for _, zs in rows:
        for z in zs:
            if abs(abs(z) - 1.0) > 1e-9:
                raise ValueError("path sample is not unitary")
    total = 0.0
    for (s0, z0), (s1, z1) in zip(rows, rows[1:]):
        for j in range(n):
            # trapezoid on the logarithmic derivative, branch-safe because
            # consecutive samples stay close on the unit circle
            total += cmath.log(z1[j] / z0[j]).imag
    return total / (2.0 * cmath.pi) / n
