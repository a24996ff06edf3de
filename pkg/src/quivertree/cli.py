"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .basis import coefficient_quiver, is_tree, to_dot
from .decompose import DecompositionError, is_indecomposable
from .dynkin import E8_MAXIMAL, dynkin_quiver, dynkin_type, e8_maximal_tree_basis, hammock, sweep_thin_radiation
from .kronecker import (
    KroneckerRep,
    ResourceLimitError,
    dim_recursion_oracle,
    end_dim,
    kron_preprojective,
    self_ext_dim,
)
from .linalg import DEFAULT_PRIME, Field, LinearAlgebraError, PrimeField, field_from_name
from .preprojective import grow_preprojective_tree, preprojective, split_at_origin, shells
from .quiver import QuiverError, regular_tree_ball
from .radiation import NotRadiationError, analyze_thin_vertex, radiation_basis
from .rep import Representation, RepresentationError, ext1_dim, hom_dim, rep_from_json, rep_to_json
from .schofield import ExceptionalTriple, GluingError, SynthesisError, glue_tree_basis, synthesize


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _prime_field(args) -> Field:
    if not isinstance(args.field_obj, PrimeField):
        raise UsageError("this command decomposes modules, which needs a prime field (use --field fp:<p>)")
    return args.field_obj


def _load_rep(path: str, field: Field) -> Representation:
    try:
        return rep_from_json(Path(path).read_text(), field)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{path} is not a representation: {e}") from e


# ---------------------------------------------------------------------------
# commands


def cmd_verify_exceptional(args) -> None:
    m = _load_rep(args.rep, _prime_field(args))
    end, ext = hom_dim(m, m), ext1_dim(m, m)
    indec = is_indecomposable(m) if m.total_dim else False
    report = {"dims": m.dims, "end_dim": end, "ext1_dim": ext, "indecomposable": indec, "exceptional": indec and ext == 0}
    _emit(report)
    if not indec:
        raise VerificationFailed("not exceptional: the module is decomposable")
    if ext:
        raise VerificationFailed(f"not exceptional: it has self-extensions (dim Ext^1(M, M) = {ext})")


def cmd_analyze_thin(args) -> None:
    m = _load_rep(args.rep, _prime_field(args))
    _emit(analyze_thin_vertex(m, args.vertex, args.seed).to_dict())


def cmd_radiation(args) -> None:
    m = _load_rep(args.rep, _prime_field(args))
    try:
        tree, basis = radiation_basis(m, args.origin, seed=args.seed)
    except NotRadiationError as e:
        _emit({"origin": args.origin, "radiation": False, "reason": str(e)})
        raise VerificationFailed(f"not a radiation module at {args.origin}") from e
    g = coefficient_quiver(m, basis)
    _write(args.dot, to_dot(g, m.field))
    _emit({"origin": args.origin, "radiation": True, "tree": tree.to_dict(), "is_tree": is_tree(g)})


def cmd_dynkin(args) -> None:
    field = _prime_field(args)
    try:
        q = dynkin_quiver(args.type, args.orientation)
    except (QuiverError, ValueError) as e:
        raise UsageError(str(e)) from e
    if args.check == "radiation-sweep":
        rep = sweep_thin_radiation(q, field, args.seed)
        _emit({
            "type": dynkin_type(q),
            "modules": rep.modules,
            "pairs_checked": rep.pairs_checked,
            "failures": [{"dims": d, "vertex": x} for d, x in rep.failures],
            "without_thin_vertex": rep.without_thin,
        })
        if not rep.ok:
            raise VerificationFailed("some indecomposable is not a radiation module at a thin vertex")
    elif args.check == "hammock":
        y = args.vertex or "a1"
        if y not in q.vertices:
            raise UsageError(f"no vertex {y}")
        h = hammock(q, y, field)
        triples = h.antichains(3)
        _emit({
            "vertex": y,
            "members": len(h.members),
            "antisymmetric": h.antisymmetric,
            "three_antichains": [[{v: k for v, k in h.members[i].dims.items() if k} for i in t] for t in triples],
        })
        if not h.antisymmetric:
            raise VerificationFailed("Hom order on the hammock is not antisymmetric")
    else:
        if dynkin_type(q) != "E8":
            raise UsageError("--check e8 needs --type E8")
        if args.orientation != "subspace":
            raise UsageError("--check e8 uses the subspace orientation")
        glued = e8_maximal_tree_basis(field, args.seed)
        g = glued.coefficient_quiver()
        ok = is_tree(g) and glued.rep.dims == E8_MAXIMAL and is_indecomposable(glued.rep)
        _emit({"dims": glued.rep.dims, "nodes": len(g.nodes), "edges": len(g.edges), "tree": is_tree(g), "indecomposable": ok})
        _write(args.dot, to_dot(g, field))
        if not ok:
            raise VerificationFailed("glued basis of the maximal E8 module is not a tree basis")


def cmd_preproj(args) -> None:
    field = args.field_obj
    if args.t < 0 or args.n < 2:
        raise UsageError("need --n >= 2 and --t >= 0")
    host = regular_tree_ball(args.n, args.center, max(args.t, 1))
    try:
        m = preprojective(host, "c", args.t, field)
    except RepresentationError as e:
        raise UsageError(str(e)) from e
    out = {"n": args.n, "center": args.center, "t": args.t, "shells": shells(host, m, "c"), "total_dim": m.total_dim}
    if args.dot:
        tree = grow_preprojective_tree(host, "c", args.t)
        _write(args.dot, to_dot(tree.radiation_tree().to_coefficient_quiver(), field))
    if args.split_at:
        _prime_field(args)
        if args.split_at not in host.vertices:
            raise UsageError(f"no vertex {args.split_at} in the ball")
        rep = split_at_origin(host, "c", args.split_at, field, args.seed)
        out["split_at"] = {
            "origin": rep.y,
            "t": rep.t,
            "expected": [{"vertex": z, "t": a} for z, a in rep.expected],
            "found": [{"dims": d, "multiplicity": k} for d, k in rep.found],
            "matched": rep.matched,
            "pairwise_orthogonal_bricks": rep.pairwise_orthogonal_bricks,
        }
        _emit(out)
        if not rep.ok:
            raise VerificationFailed("kernel does not split as predicted")
        return
    _emit(out)


def cmd_kron(args) -> None:
    field = _prime_field(args)
    if args.n < 2 or args.t < 0:
        raise UsageError("need --n >= 2 and --t >= 0")
    k, _ = kron_preprojective(args.n, args.t, field)
    out = {"n": args.n, "t": args.t, "dims": list(k.dims), "oracle": list(dim_recursion_oracle(args.n, args.t)), "tree_basis": k.has_tree_basis()}
    if args.dot:
        _write(args.dot, to_dot(k.coefficient_quiver(), field))
    if args.out:
        _write(args.out, k.to_json())
    failed = out["dims"] != out["oracle"] or not out["tree_basis"]
    if args.verify:
        try:
            out["end_dim"] = end_dim(k, args.max_unknowns)
            out["ext1_dim"] = self_ext_dim(k, args.max_unknowns)
            out["exceptional"] = out["end_dim"] == 1 and out["ext1_dim"] == 0
            failed = failed or not out["exceptional"]
        except ResourceLimitError as e:
            out["exceptional"] = None
            out["not_verified"] = str(e)
            failed = True
    _emit(out)
    if failed:
        raise VerificationFailed("Kronecker module failed a check or could not be verified")


def cmd_schofield(args) -> None:
    field = _prime_field(args)
    x = _load_rep(args.x, field)
    y = _load_rep(args.y, field)
    try:
        e = KroneckerRep.from_dict(json.loads(Path(args.e).read_text()))
    except (OSError, ValueError, KeyError) as err:
        raise UsageError(f"cannot read {args.e}: {err}") from err
    if e.field != field:
        e = KroneckerRep(e.n, e.dims, e.mats, field)
    triple = ExceptionalTriple(x, y, e)
    bad = triple.violations()
    if bad:
        _emit({"valid_triple": False, "violations": bad})
        raise VerificationFailed("invalid triple")
    try:
        if args.glue:
            m, basis = glue_tree_basis(triple)
            g = coefficient_quiver(m, basis)
            _write(args.dot, to_dot(g, field))
        else:
            m = synthesize(triple)
    except (SynthesisError, GluingError) as err:
        _emit({"valid_triple": True, "error": str(err)})
        raise VerificationFailed(str(err)) from err
    out = {"valid_triple": True, "dims": m.dims, "exceptional": True}
    if args.glue:
        out["glued_nodes"] = len(g.nodes)
        out["glued_edges"] = len(g.edges)
        out["tree_basis"] = is_tree(g)
    _write(args.out, rep_to_json(m))
    _emit(out)


def cmd_demo(args) -> None:
    field = _prime_field(args)
    name = args.example
    if not name.startswith("example") or not name[7:].isdigit() or int(name[7:]) not in fixtures.EXAMPLE_IDS:
        raise UsageError(f"unknown demo {name!r}; choose from {', '.join(f'example{k}' for k in fixtures.EXAMPLE_IDS)}")
    k = int(name[7:])
    got, diffs = fixtures.check_example(k, field, args.seed)
    _emit({"example": name, "report": got, "differences": diffs})
    if args.rep_out:
        builders = {
            1: fixtures.example1_module,
            3: fixtures.example3_module,
            4: fixtures.example4_module,
            5: fixtures.example5_module,
            6: fixtures.example6_gamma,
        }
        if k not in builders:
            raise UsageError(f"{name} has no single module to export")
        _write(args.rep_out, rep_to_json(builders[k](field)))
    if diffs:
        raise VerificationFailed(f"{name} differs from the bundled expectation")


# ---------------------------------------------------------------------------
# parser


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    # the copies on subcommands must not overwrite values given before the subcommand
    def default(v):
        return argparse.SUPPRESS if suppress else v

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=default(0), help="seed for randomized linear algebra (default 0)")
    g.add_argument("--jobs", type=int, default=default(1), help="accepted for compatibility; work runs in one process")
    g.add_argument("--field", default=default(f"fp:{DEFAULT_PRIME}"), help=f"q or fp:<p> (default fp:{DEFAULT_PRIME})")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(True)
    p = argparse.ArgumentParser(prog="quivertree", description="Tree bases and radiation modules for quiver representations.", parents=[_global_options(False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-exceptional", parents=[common], help="indecomposable without self-extensions?")
    s.add_argument("--rep", required=True)
    s.set_defaults(func=cmd_verify_exceptional)

    s = sub.add_parser("analyze-thin", parents=[common], help="split the restriction away from a thin vertex")
    s.add_argument("--rep", required=True)
    s.add_argument("--vertex", required=True)
    s.set_defaults(func=cmd_analyze_thin)

    s = sub.add_parser("radiation", parents=[common], help="radiation tree and basis at an origin")
    s.add_argument("--rep", required=True)
    s.add_argument("--origin", required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_radiation)

    s = sub.add_parser("dynkin", parents=[common], help="checks on Dynkin quivers")
    s.add_argument("--type", required=True)
    s.add_argument("--orientation", default="subspace", choices=["subspace", "alternating"])
    s.add_argument("--check", required=True, choices=["radiation-sweep", "hammock", "e8"])
    s.add_argument("--vertex", help="hammock vertex (default a1)")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_dynkin)

    s = sub.add_parser("preproj", parents=[common], help="preprojective P(c, t) on a regular tree")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--center", choices=["sink", "source"], required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--split-at", metavar="Y", help="split at the source Y and compare with the predicted summands")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_preproj)

    s = sub.add_parser("kron", parents=[common], help="preprojective of the n-Kronecker quiver with its tree basis")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--dot")
    s.add_argument("--out", help="write the KroneckerRep JSON here")
    s.add_argument("--verify", action="store_true", help="also compute End and Ext^1")
    s.add_argument("--max-unknowns", type=int, default=4000)
    s.set_defaults(func=cmd_kron)

    s = sub.add_parser("schofield", parents=[common], help="extension of copies of an orthogonal exceptional pair")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--e", required=True)
    s.add_argument("--glue", action="store_true")
    s.add_argument("--dot")
    s.add_argument("--out")
    s.set_defaults(func=cmd_schofield)

    s = sub.add_parser("demo", parents=[common], help="rerun a worked example and compare with the bundled result")
    s.add_argument("example")
    s.add_argument("--rep-out", help="write the example's module as JSON")
    s.set_defaults(func=cmd_demo)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.field_obj = field_from_name(args.field)
    except (ValueError, LinearAlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except VerificationFailed as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except (RepresentationError, QuiverError, DecompositionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
