"""Command line front end: the three example families, one-off metric
queries between pattern files, and determinant checks on unitary files.
Every command prints a report table and exits 0 only when all embedded
checks pass."""

import argparse
import csv
import json
import sys
from fractions import Fraction

from .algebras import K0Image
from .determinant import det_hat, numeric_det_oracle, sample_unitary_path
from .geometry import CIRCLE, INTERVAL
from .morphisms import d_cu_report
from .ntbasis import NTBasis, frak_d, is_diagonalisable, nt_matrix
from .refined import d_star
from .scenarios import (DERIVED, TRIVIAL, ScenarioReport, diagonalisation_search,
                        format_value, gjl_report, novel_report, robert_report)
from .serialize import load_basis, load_pattern, load_unitary

NUMERIC_TOL = 1e-9


def _load(path, loader):
    with open(path) as fh:
        return loader(json.load(fh))


def _pl_str(f):
    """Short text form of a PL function for report cells."""
    if f.is_constant():
        return format_value(f.points[0][1])
    if len(f.points) == (1 if f.space == CIRCLE else 2) and f.points[0] == (0, 0):
        slope = f.winding if f.space == CIRCLE else f.points[-1][1]
        return "t->%s*t" % format_value(slope)
    body = ";".join("%s:%s" % (format_value(t), format_value(v))
                    for t, v in f.points)
    return "pl[%s]w=%s" % (body, format_value(f.winding))


def _default_basis(space):
    if space == CIRCLE:
        return NTBasis.canonical_circle()
    return NTBasis.trivial(INTERVAL, K0Image.all_constants())


def cmd_examples(args):
    if args.family == "robert":
        return robert_report(args.k, args.l, n_stage=args.stage)
    if args.family == "gjl":
        k_seq = tuple(int(x) for x in args.kseq.split(","))
        if args.nmax is not None:
            k_seq = k_seq[:args.nmax]
        return gjl_report(k_seq)
    return novel_report(args.stage, full_dstar=args.full_dstar)


def cmd_metric(args):
    P = _load(args.a, load_pattern)
    Q = _load(args.b, load_pattern)
    rep = ScenarioReport("metric %s" % args.metric, {"a": args.a, "b": args.b})
    if args.metric == "dcu":
        val, witness = d_cu_report(P, Q)
        rep.add("dcu", val, DERIVED, witness=witness)
        if witness is not None:
            rep.add("witness_y", witness, DERIVED)
        return rep
    if args.metric == "frakd":
        C = _load(args.basis_a, load_basis) if args.basis_a \
            else _default_basis(P.domain)
        D = _load(args.basis_b, load_basis) if args.basis_b \
            else _default_basis(P.codomain)
        parts = frak_d(P, Q, C, D)
        rep.add("trace", parts["trace"], DERIVED)
        rep.add("rotation", parts["rotation"], DERIVED)
        rep.add("k1", parts["k1"], DERIVED)
        rep.add("total", parts["total"], DERIVED)
        M = nt_matrix(P, C, D)
        for k in sorted(M.rotation):
            rep.add("rotation_rep(%d)" % k, _pl_str(M.rotation[k].rep), DERIVED)
            rep.add("rotation_norm(%d)" % k, M.rotation[k].norm(), DERIVED)
        flag, reason = is_diagonalisable(P, C, D)
        if not flag and diagonalisation_search(P, C, D) is not None:
            flag, reason = True, "diagonalised after a basis perturbation"
        rep.add("diagonalisable", flag, DERIVED)
        rep.add("diagonalisable_reason", reason, TRIVIAL)
        return rep
    # dstar
    metric = "k1" if args.fiber_metric is None else \
        {"triv": "triv", "frakd": "frak"}[args.fiber_metric]
    hmodel = K0Image.all_constants() if metric == "frak" else None
    domain_k1 = 1 if args.k == "kbar1" else None
    val = d_star(P, Q, metric=metric, hmodel=hmodel, domain_k1=domain_k1)
    rep.add("dstar", val, DERIVED)
    return rep


def cmd_det(args):
    u = _load(args.unitary, load_unitary)
    rep = ScenarioReport("det", {"file": args.unitary})
    d = det_hat(u)
    rep.add("det_hat", _pl_str(d), DERIVED)
    rep.add("winding", u.winding_total(), TRIVIAL)
    if args.numeric:
        ts = sorted(set(d.breakpoint_ts()) |
                    {Fraction(j, 8) for j in range(8 if u.space == CIRCLE else 9)})
        worst = 0.0
        for t in ts:
            rows = sample_unitary_path(u, t, args.steps)
            err = abs(numeric_det_oracle(rows) - float(d.eval(t)))
            worst = max(worst, err)
        rep.add("numeric_max_err", "%.3e" % worst, DERIVED,
                ok=worst <= NUMERIC_TOL)
    return rep


def write_outputs(rep, args):
    print(rep.table())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows(rep.csv_rows())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.to_dict(), fh, indent=2)


def build_parser():
    parser = argparse.ArgumentParser(prog="cumetrics")
    parser.add_argument("--csv", metavar="PATH", help="write plot-ready csv")
    parser.add_argument("--json", metavar="PATH", help="write the full report")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("examples", help="run one of the worked families")
    exsub = ex.add_subparsers(dest="family", required=True)
    rob = exsub.add_parser("robert", help="two-parameter winding family")
    rob.add_argument("--k", type=int, required=True)
    rob.add_argument("--l", type=int, required=True)
    rob.add_argument("--stage", type=int, default=10)
    gjl = exsub.add_parser("gjl", help="prime-tower pair of inductive systems")
    gjl.add_argument("--nmax", type=int, default=None)
    gjl.add_argument("--kseq", default="2,3,4,5",
                     help="comma separated exponent sequence")
    nov = exsub.add_parser("novel", help="rotated-pair example")
    nov.add_argument("--stage", type=int, default=10)
    nov.add_argument("--full-dstar", action="store_true",
                     help="also run the full refined-metric sweep (slow)")

    met = sub.add_parser("metric", help="distance between two pattern files")
    metsub = met.add_subparsers(dest="metric", required=True)
    dcu = metsub.add_parser("dcu")
    dcu.add_argument("a")
    dcu.add_argument("b")
    frakd = metsub.add_parser("frakd")
    frakd.add_argument("a")
    frakd.add_argument("b")
    frakd.add_argument("--basis-a", default=None)
    frakd.add_argument("--basis-b", default=None)
    dstar = metsub.add_parser("dstar")
    dstar.add_argument("a")
    dstar.add_argument("b")
    dstar.add_argument("--k", choices=("k1", "kbar1"), default="k1")
    dstar.add_argument("--fiber-metric", choices=("triv", "frakd"), default=None)

    det = sub.add_parser("det", help="determinant of a unitary file")
    det.add_argument("unitary")
    det.add_argument("--numeric", action="store_true")
    det.add_argument("--steps", type=int, default=100000)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "examples":
        rep = cmd_examples(args)
    elif args.command == "metric":
        rep = cmd_metric(args)
    else:
        rep = cmd_det(args)
    write_outputs(rep, args)
    return 0 if rep.passed() else 1


if __name__ == "__main__":
    sys.exit(main())
