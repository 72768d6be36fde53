"""Command-line front end.

Every verb reads JSON files, prints canonical JSON on stdout and exits with
0 on success, 2 on malformed input and 3 when a precondition fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as cio
from .closure import CutFamily, closure, iterate_closure, pruned_indices
from .errors import ClosureLabError, PreconditionError, ValidationError
from .lattice import (
    MixedIntegerSpace,
    chvatal_closure_bounded,
    enumerate_splits,
    is_lattice_free,
    is_maximal_lattice_free,
    mixed_integer_hull,
)
from .numeric import INF, format_rational, to_fraction
from .polyhedra import max_facet_width
from .reduction import ReducerClass, classify_reducer, nonclosed_witness, reduce

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3


def _load_polyhedron(path):
    return cio.parse_polyhedron(cio.load_json(path))


def _family_from_args(args, P):
    """Family from a file, or every split up to ``--splits-bound`` meeting P."""
    if args.family is not None and args.splits_bound is not None:
        raise ValidationError("give either a family file or --splits-bound, not both")
    if args.family is not None:
        return cio.parse_family(cio.load_json(args.family)), None
    if args.splits_bound is None:
        raise ValidationError("a family file or --splits-bound is required")
    splits = enumerate_splits(P, args.splits_bound)
    caveat = (
        f"family truncated to splits with norm bound {args.splits_bound}; "
        "the result is exact relative to this finite family only"
    )
    return CutFamily(tuple(s.polyhedron() for s in splits)), caveat


def _result(P, **extra) -> dict:
    out = {"result": cio.polyhedron_to_json(P)}
    out.update(extra)
    return out


def cmd_reduce(args):
    P, L = _load_polyhedron(args.P), _load_polyhedron(args.L)
    return _result(reduce(P, L), reducer_class=str(classify_reducer(L)))


def cmd_closure(args):
    P = _load_polyhedron(args.P)
    fam, caveat = _family_from_args(args, P)
    if not fam.members and caveat:
        # no split meets P, so nothing is cut off
        R = P
    else:
        R = closure(P, fam, jobs=args.jobs)
    out = _result(R, family_size=len(fam.members))
    if caveat:
        out["caveat"] = caveat
    return out


def cmd_iterate(args):
    P = _load_polyhedron(args.P)
    ref = _load_polyhedron(args.reference) if args.reference else None
    fam, caveat = _family_from_args(args, P)
    trace = iterate_closure(P, fam, args.max_iter, reference=ref, tol=to_fraction(args.tol), jobs=args.jobs)
    if args.out:
        summary = _result(
            trace.final,
            iterations=len(trace.iterates) - 1,
            stopped_because=str(trace.stopped_because),
            hausdorff_norm="linf",
        )
        if caveat:
            summary["caveat"] = caveat
        Path(args.out).write_text(cio.dumps(summary), encoding="utf-8")
    return trace.to_csv()


def cmd_chvatal(args):
    P = _load_polyhedron(args.P)
    return _result(chvatal_closure_bounded(P, args.bound), label=f"relaxation (norm bound {args.bound})")


def cmd_splits(args):
    P = _load_polyhedron(args.P)
    return {"splits": [cio.split_to_json(s) for s in enumerate_splits(P, args.bound)]}


def cmd_check_latticefree(args):
    return {"lattice_free": is_lattice_free(_load_polyhedron(args.L))}


def cmd_check_maximal(args):
    L = _load_polyhedron(args.L)
    w = max_facet_width(L)
    return {
        "maximal_lattice_free": is_maximal_lattice_free(L),
        "max_facet_width": "inf" if w is INF else format_rational(w),
    }


def cmd_mih(args):
    P = _load_polyhedron(args.P)
    m = args.m if args.m is not None else P.dim
    return _result(mixed_integer_hull(P, MixedIntegerSpace(m, P.dim - m)))


def cmd_classify(args):
    L = _load_polyhedron(args.L)
    cls = classify_reducer(L)
    out = {"class": str(cls)}
    if cls is ReducerClass.NON_PRESERVING:
        w = nonclosed_witness(L)
        out["witness"] = {
            "K": cio.polyhedron_to_json(w.K),
            "p": [format_rational(x) for x in w.p],
            "u1": list(w.u1),
            "u2": list(w.u2),
            "t": format_rational(w.t),
        }
    return out


def cmd_prune(args):
    P = _load_polyhedron(args.P)
    fam, caveat = _family_from_args(args, P)
    kept = pruned_indices(P, fam)
    pruned = CutFamily(tuple(fam.members[i] for i in kept), fam.bounds)
    out = {"retained": kept, "family": cio.family_to_json(pruned)}
    if caveat:
        out["caveat"] = caveat
    return out


def cmd_validate(args):
    return cio.validate(cio.load_json(args.file)).to_json()


def _add_family_args(p):
    p.add_argument("family", nargs="?", help="cut family JSON")
    p.add_argument("--splits-bound", type=int, help="use all splits with |u|_inf <= B meeting P")


def _add_jobs(p):
    p.add_argument("--jobs", type=int, default=1, help="evaluate reductions in N worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="closurelab", description="Exact L-reductions and closures of rational polyhedra.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("reduce", help="conv(P minus int L)")
    p.add_argument("P")
    p.add_argument("L")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("closure", help="intersection of reductions over a family")
    p.add_argument("P")
    _add_family_args(p)
    _add_jobs(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("iterate", help="iterated closure; CSV trace on stdout")
    p.add_argument("P")
    _add_family_args(p)
    p.add_argument("--reference", help="reference body for Hausdorff distances")
    p.add_argument("--tol", default="0", help="stop once the distance is at most this rational")
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--out", help="write the final iterate and stop reason as JSON here")
    _add_jobs(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("chvatal", help="Chvatal cuts up to a norm bound")
    p.add_argument("P")
    p.add_argument("--bound", type=int, default=1)
    p.set_defaults(func=cmd_chvatal)

    p = sub.add_parser("splits", help="splits meeting P up to a norm bound")
    p.add_argument("P")
    p.add_argument("--bound", type=int, default=1)
    p.set_defaults(func=cmd_splits)

    p = sub.add_parser("check-latticefree")
    p.add_argument("L")
    p.set_defaults(func=cmd_check_latticefree)

    p = sub.add_parser("check-maximal")
    p.add_argument("L")
    p.set_defaults(func=cmd_check_maximal)

    p = sub.add_parser("mih", help="mixed-integer hull of a polytope")
    p.add_argument("P")
    p.add_argument("--m", type=int, help="number of integer coordinates (default: all)")
    p.set_defaults(func=cmd_mih)

    p = sub.add_parser("classify", help="reducer class, with a witness when not preserving")
    p.add_argument("L")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("prune", help="drop members with dominated remainder matrices")
    p.add_argument("P")
    _add_family_args(p)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("validate", help="structural check of a JSON document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except PreconditionError as exc:
        sys.stderr.write(cio.dumps({"error": exc.code, "message": str(exc)}))
        return EXIT_PRECONDITION
    except ClosureLabError as exc:
        sys.stderr.write(cio.dumps({"error": exc.code, "message": str(exc)}))
        return EXIT_VALIDATION
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        sys.stdout.write(cio.dumps(result))
    if args.verb == "validate" and not result["ok"]:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
