"""JSON record formats for the exact types.  Rationals travel as "p/q"
strings, functions as breakpoint tables, patterns as tagged map lists.
Every dump_* returns plain dicts/lists ready for json.dump; the matching
load_* inverts it exactly (canonical forms make the round trip the
identity)."""

from fractions import Fraction

from .algebras import K0Image, UnitaryField
from .determinant import HClass
from .geometry import CIRCLE, INTERVAL, OpenSet, PLFunction
from .lsc import INF, LscFunction
from .morphisms import EigenPattern
from .ntbasis import NTBasis

SPACES = (INTERVAL, CIRCLE)


def dump_q(v):
    v = Fraction(v)
    return "%d/%d" % (v.numerator, v.denominator) if v.denominator != 1 \
        else str(v.numerator)


def load_q(s):
    return Fraction(s)


def dump_value(v):
    return "inf" if v is INF else dump_q(v)


def load_value(s):
    return INF if s == "inf" else (Fraction(s) if "/" in str(s) else int(s))


def _space(s):
    if s not in SPACES:
        raise ValueError("unknown space %r" % (s,))
    return s


def dump_pl(f):
    return {"space": f.space,
            "points": [[dump_q(t), dump_q(v)] for t, v in f.points],
            "winding": dump_q(f.winding)}


def load_pl(d):
    return PLFunction(_space(d["space"]),
                      [(load_q(t), load_q(v)) for t, v in d["points"]],
                      winding=load_q(d.get("winding", 0)))


def dump_openset(U):
    """Interval components closed at a boundary are marked by out-of-range
    endpoints, matching the constructor convention."""
    if U.space == CIRCLE and U.full:
        return {"space": CIRCLE, "arcs": [], "full": True}
    arcs = []
    if U.space == INTERVAL:
        for s, e, cs, ce in U.component_flags():
            arcs.append([dump_q(Fraction(-1) if cs else s),
                         dump_q(Fraction(2) if ce else e)])
    else:
        for s, e in U.components():
            arcs.append([dump_q(s), dump_q(e)])
    return {"space": U.space, "arcs": arcs}


def load_openset(d):
    space = _space(d["space"])
    if d.get("full"):
        return OpenSet(space, full=True)
    pairs = [(load_q(a), load_q(b)) for a, b in d["arcs"]]
    if space == INTERVAL:
        return OpenSet(space, pairs)
    return OpenSet(space, [(a, b - a) for a, b in pairs])


def dump_lsc(x):
    """Gap pieces carry the open-segment values; degenerate from == to
    pieces carry the values at the cuts themselves."""
    pieces = []
    cuts = x.cuts
    for i, c in enumerate(cuts):
        pieces.append({"from": dump_q(c), "to": dump_q(c),
                       "value": dump_value(x.pts[i])})
        if i < len(x.seg):
            nxt = cuts[i + 1] if i + 1 < len(cuts) else \
                (cuts[0] + 1 if x.space == CIRCLE else None)
            if nxt is not None:
                pieces.append({"from": dump_q(c), "to": dump_q(nxt),
                               "value": dump_value(x.seg[i])})
    return {"space": x.space, "pieces": pieces}


def load_lsc(d):
    space = _space(d["space"])
    pts = {}
    seg = {}
    for p in d["pieces"]:
        a, b = load_q(p["from"]), load_q(p["to"])
        v = load_value(p["value"])
        if a == b:
            pts[a] = v
        else:
            seg[a] = v
    cuts = sorted(pts)
    if space == INTERVAL:
        return LscFunction(space, cuts, [seg[c] for c in cuts[:-1]],
                           [pts[c] for c in cuts])
    return LscFunction(space, cuts, [seg[c] for c in cuts],
                       [pts[c] for c in cuts])


def dump_unitary(u):
    return {"space": u.space,
            "entries": [{"phase": dump_pl(phase), "mult": m}
                        for phase, m in u.entries]}


def load_unitary(d):
    return UnitaryField(_space(d["space"]),
                        [(load_pl(e["phase"]), e["mult"])
                         for e in d["entries"]])


def dump_pattern(P):
    maps = []
    for f, m in P.maps:
        if f.is_constant():
            maps.append({"kind": "const", "value": dump_q(f.points[0][1]),
                         "mult": m})
        else:
            maps.append({"kind": "pl", "points": dump_pl(f)["points"],
                         "winding": dump_q(f.winding), "mult": m})
    return {"domain": P.domain, "codomain": P.codomain, "maps": maps}


def load_pattern(d):
    dom, cod = _space(d["domain"]), _space(d["codomain"])
    maps = []
    for e in d["maps"]:
        kind = e.get("kind", "pl")
        if kind == "const":
            f = PLFunction.constant(cod, load_q(e["value"]))
        elif kind == "winding":
            # shorthand for t -> w*t + offset as a real lift over the circle
            f = PLFunction(cod, [(Fraction(0), load_q(e.get("offset", 0)))],
                           winding=load_q(e["w"]))
        elif kind == "pl":
            f = PLFunction(cod, [(load_q(t), load_q(v)) for t, v in e["points"]],
                           winding=load_q(e.get("winding", 0)))
        else:
            raise ValueError("unknown map kind %r" % (kind,))
        maps.append((f, e.get("mult", 1)))
    return EigenPattern(dom, cod, maps)


def dump_k0image(im):
    out = {"kind": im.kind}
    if im.step is not None:
        out["step"] = dump_q(im.step)
    return out


def load_k0image(d):
    if d["kind"] == K0Image.LATTICE:
        return K0Image.lattice(load_q(d["step"]))
    return K0Image(d["kind"])


def dump_basis(B):
    return {"space": B.space, "k0image": dump_k0image(B.k0image),
            "generator": None if B.c1 is None else dump_unitary(B.c1)}


def load_basis(d):
    gen = d.get("generator")
    return NTBasis(_space(d["space"]), load_k0image(d["k0image"]),
                   None if gen is None else load_unitary(gen))


def dump_hclass(h):
    return {"rep": dump_pl(h.rep), "k0image": dump_k0image(h.k0image)}


def load_hclass(d):
    return HClass(load_pl(d["rep"]), load_k0image(d["k0image"]))
