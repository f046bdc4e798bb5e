"""Finite-stage model algebras: matrix blocks over C(Y), K0-image tags,
diagonal unitary and positive fields with multiplicity weights."""

from __future__ import annotations

from fractions import Fraction

from .geometry import CIRCLE, INTERVAL, POINT, PLFunction

K1_ZERO = "zero"
K1_Z = "Z"


class K0Image:
    """Closure of the trace image of K0 inside Aff T_1: all real constants,
    a lattice of constants with a given step, or zero."""

    __slots__ = ("kind", "step")

    ALL = "all_constants"
    LATTICE = "lattice"
    ZERO = "zero"

    def __init__(self, kind, step=None):
        assert kind in (self.ALL, self.LATTICE, self.ZERO)
        if kind == self.LATTICE:
            step = Fraction(step)
            assert step > 0
        else:
            step = None
        self.kind = kind
        self.step = step

    @classmethod
    def all_constants(cls):
        return cls(cls.ALL)

    @classmethod
    def lattice(cls, step):
        return cls(cls.LATTICE, step)

    @classmethod
    def zero(cls):
        return cls(cls.ZERO)

    def __eq__(self, other):
        return isinstance(other, K0Image) and (self.kind, self.step) == (other.kind, other.step)

    def __hash__(self):
        return hash((self.kind, self.step))

    def __repr__(self):
        if self.kind == self.LATTICE:
            return "K0Image(lattice, %s)" % self.step
        return "K0Image(%s)" % self.kind


class Block:
    __slots__ = ("base", "size", "k1", "k0image")

    def __init__(self, base, size, k1=None, k0image=None):
        assert base in (POINT, INTERVAL, CIRCLE)
        assert size >= 1
        if k1 is None:
            k1 = K1_Z if base == CIRCLE else K1_ZERO
        assert (k1 == K1_Z) == (base == CIRCLE)
        if k0image is None:
            k0image = K0Image.lattice(Fraction(1, size))
        self.base = base
        self.size = size
        self.k1 = k1
        self.k0image = k0image

    def __repr__(self):
        return "Block(%s, size=%s, k1=%s)" % (self.base, self.size, self.k1)


class ModelAlgebra:
    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = tuple(blocks)

    def __repr__(self):
        return "ModelAlgebra(%s)" % (list(self.blocks),)


def direct_sum(*algebras):
    blocks = []
    for a in algebras:
        blocks.extend(a.blocks)
    return ModelAlgebra(blocks)


class UnitaryField:
    """Diagonal unitary over one base space: multiplicity-weighted exact PL
    phase functions (u = diag of e^{2i pi phase_j}).  On the circle each
    phase's winding must be an integer for e^{2i pi phase} to close up."""

    __slots__ = ("space", "entries")

    def __init__(self, space, entries):
        entries = [(phase, int(m)) for phase, m in entries]
        assert entries, "a unitary field needs at least one entry"
        for phase, m in entries:
            assert isinstance(phase, PLFunction) and phase.space == space
            assert m >= 1
            if space == CIRCLE:
                assert phase.winding.denominator == 1, "non-integer winding"
        self.space = space
        self.entries = tuple(entries)

    @classmethod
    def identity(cls, space, size=1):
        return cls(space, [(PLFunction.constant(space, 0), size)])

    @classmethod
    def from_phase(cls, phase, mult=1):
        return cls(phase.space, [(phase, mult)])

    def __eq__(self, other):
        return (isinstance(other, UnitaryField) and self.space == other.space
                and self.entries == other.entries)

    def total_mult(self):
        return sum(m for _, m in self.entries)

    def adjoint(self):
        return UnitaryField(self.space, [(phase.scale(-1), m) for phase, m in self.entries])

    def power(self, k):
        """u^k for integer k (diagonal: phases scale by k)."""
        assert isinstance(k, int)
        if k == 0:
            return UnitaryField.identity(self.space, self.total_mult())
        return UnitaryField(self.space, [(phase.scale(k), m) for phase, m in self.entries])

    def rotate(self, c):
        """Multiply by the scalar e^{2i pi c}."""
        c = Fraction(c)
        return UnitaryField(self.space, [(phase + PLFunction.constant(self.space, c), m)
                                         for phase, m in self.entries])

    def stack(self, other):
        """diag(self, other) over the same base space."""
        if self.space != other.space:
            raise TypeError("space mismatch")
        return UnitaryField(self.space, list(self.entries) + list(other.entries))

    def winding_total(self):
        """Sum of mult * winding over entries (the K1 class in C(T) terms)."""
        if self.space != CIRCLE:
            return 0
        return sum(m * int(phase.winding) for phase, m in self.entries)

    def __repr__(self):
        return "UnitaryField(%s, %d entries, mult=%d)" % (
            self.space, len(self.entries), self.total_mult())


class PositiveField:
    """Diagonal positive element: nonnegative PL values with multiplicities."""

    __slots__ = ("space", "entries")

    def __init__(self, space, entries):
        entries = [(f, int(m)) for f, m in entries]
        assert entries
        for f, m in entries:
            assert isinstance(f, PLFunction) and f.space == space
            assert m >= 1
            assert f.range()[0] >= 0, "positive field with negative values"
        self.space = space
        self.entries = tuple(entries)

    def total_mult(self):
        return sum(m for _, m in self.entries)


def normalized_trace(field):
    """(sum mult_i * f_i) / (sum mult_i) as an exact PLFunction."""
    total = field.total_mult()
    acc = None
    for f, m in field.entries:
        term = f.scale(Fraction(m, total))
        acc = term if acc is None else acc + term
    return acc


def spectrum_arcs(u):
    """Closed arcs of the unit circle swept by the phases, as (start, end)
    pairs mod 1 with end possibly > 1 for wrapping; "full" when covered."""
    arcs = []
    for phase, _ in u.entries:
        lo, hi = phase.range()
        if hi - lo >= 1:
            return "full"
        arcs.append((lo % 1, hi - lo))
    # merge closed arcs (touching endpoints merge, unlike open sets)
    segs = []
    for a, length in arcs:
        segs.append((a, a + length))
        segs.append((a + 1, a + 1 + length))
    segs.sort()
    merged = []
    for s, e in segs:
        if merged and s <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], e))
        else:
            merged.append((s, e))
    out = []
    wrap_end = None
    for s, e in merged:
        if not 0 <= s < 1:
            continue
        if e - s >= 1:
            return "full"
        if e > 1:
            wrap_end = e - 1
    for s, e in merged:
        if not 0 <= s < 1:
            continue
        if wrap_end is not None and e <= 1 and e <= wrap_end:
            continue
        out.append((s, e))
    return out
