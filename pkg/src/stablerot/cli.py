"""Command-line interface.  Results are JSON with sorted keys on stdout.

Exit codes: 0 success, 1 domain error (bad instance, failed check,
infeasible request), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import affine, bruteforce, mincost, optimal, poset, sequential
from .choice import ChoiceError, verify_axioms
from .instance import InstanceError, dumps_instance, load_instance, load_smodel
from .rotations import RouteWalker, rotations_at
from .stability import is_stable
from .verify import run_verification


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _instance(args):
    return load_instance(_read(args.instance), check_axioms=not args.unchecked)


def _rot(inst, R, rid=None):
    doc = {"plus": inst.labels(R.plus), "minus": inst.labels(R.minus)}
    if rid is not None:
        doc["id"] = rid
    return doc


def cmd_xmin(args):
    inst = _instance(args)
    X, trace = optimal.compute_xmin(inst)
    if not args.trace:
        return inst.labels(X)
    return {
        "matching": inst.labels(X),
        "rounds": [{"B": inst.labels(r.B), "X": inst.labels(r.X), "Y": inst.labels(r.Y)} for r in trace.rounds],
    }


def cmd_xmax(args):
    inst = _instance(args)
    return inst.labels(optimal.compute_xmax(inst))


def cmd_rotations(args):
    inst = _instance(args)
    if args.at:
        try:
            X = inst.matching(json.loads(_read(args.at)))
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise DomainError(f"bad matching file: {exc}") from None
        if not is_stable(inst, X):
            raise DomainError("the given matching is not stable")
        rots = rotations_at(inst, X, check=False)
    else:
        rots = RouteWalker(inst, optimal.compute_xmin(inst)[0]).rotations()
    return [_rot(inst, R) for R in rots]


def cmd_poset(args):
    inst = _instance(args)
    P = poset.build_poset(inst)
    if args.dot:
        return poset.poset_to_dot(P)
    return {
        "rotations": [_rot(inst, R, i) for i, R in enumerate(P.rotations)],
        "hasse": [list(p) for p in sorted(P.hasse)],
    }


def cmd_enumerate(args):
    inst = _instance(args)
    P = poset.build_poset(inst)
    try:
        found = poset.enumerate_stable(P, args.limit)
    except poset.EnumerationLimitError as exc:
        raise DomainError(str(exc)) from None
    return [inst.labels(X) for X in sorted(found, key=sorted)]


def cmd_affine(args):
    inst = _instance(args)
    P = poset.build_poset(inst)
    rep = affine.build_affine(P)
    return {
        "base": inst.labels(P.xmin),
        "columns": [_rot(inst, R) for R in P.rotations],
        "pivots": [list(inst.label(e)) for e in rep.pivots],
        "facets": affine.facets(P),
    }


def cmd_mincost(args):
    inst = _instance(args)
    try:
        costs = mincost.load_costs(inst, _read(args.costs))
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad cost file: {exc}") from None
    X, total = mincost.min_cost_stable(inst, costs)
    return {"matching": inst.labels(X), "cost": str(total)}


def cmd_verify(args):
    inst = _instance(args)
    try:
        props = run_verification(inst, cap=args.oracle_cap)
    except bruteforce.BruteForceCapError as exc:
        raise DomainError(str(exc)) from None
    passed = all(p["pass"] for p in props.values())
    args.exit_code = 0 if passed else 1
    return {"passed": passed, "properties": props}


def cmd_reduce(args):
    s = load_smodel(_read(args.instance), check_axioms=not args.unchecked)
    inst, _ = sequential.replicate(s)
    return dumps_instance(inst) + "\n"


def cmd_smodel_enumerate(args):
    s = load_smodel(_read(args.instance), check_axioms=not args.unchecked)
    inst, rmap = sequential.replicate(s)
    P = poset.build_poset(inst)
    try:
        found = [sequential.project_matching(rmap, X) for X in poset.enumerate_stable(P, args.limit)]
    except poset.EnumerationLimitError as exc:
        raise DomainError(str(exc)) from None
    projected = sequential.project_poset(s, rmap, P)
    return {
        "stable": [s.labels(X) for X in sorted(found, key=sorted)],
        "rotations": [
            {
                "id": i,
                "plus": s.labels(r.plus),
                "minus": s.labels(r.minus),
                "delta": s.labels(r.delta),
                "repeated_workers": list(r.repeated_workers),
            }
            for i, r in enumerate(projected.rotations)
        ],
        "hasse": [list(p) for p in sorted(P.hasse)],
        "anomalies": projected.anomalies(),
    }


def cmd_axioms(args):
    inst = load_instance(_read(args.instance), check_axioms=False)
    out = {}
    for f in inst.firms:
        try:
            out[f.id] = verify_axioms(f.cf).as_dict()
        except ChoiceError as exc:
            out[f.id] = {"error": str(exc)}
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", metavar="FILE", help="write the result to FILE")
    common.add_argument("--unchecked", action="store_true", help="load table CFs that break the axioms")

    p = argparse.ArgumentParser(prog="stablerot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("instance")
        sp.set_defaults(func=func)
        return sp

    add("xmin", cmd_xmin, "worker-optimal stable matching").add_argument(
        "--trace", action="store_true", help="include every (B, X, Y) round")
    add("xmax", cmd_xmax, "firm-optimal stable matching")
    add("rotations", cmd_rotations, "rotations exposed at a matching (default Xmin)").add_argument(
        "--at", metavar="MATCHING.json", help="list of [workerId, firmId] pairs")
    add("poset", cmd_poset, "rotation poset").add_argument(
        "--dot", action="store_true", help="emit Graphviz DOT")
    add("enumerate", cmd_enumerate, "all stable matchings").add_argument(
        "--limit", type=int, default=poset.DEFAULT_ENUM_LIMIT, metavar="N")
    add("affine", cmd_affine, "affine representation and facets")
    add("mincost", cmd_mincost, "minimum-cost stable matching").add_argument(
        "--costs", required=True, metavar="COSTS.json")
    add("verify", cmd_verify, "fast path against exhaustive search").add_argument(
        "--oracle-cap", type=int, default=bruteforce.DEFAULT_CAP, metavar="N")
    add("reduce-sequential", cmd_reduce, "replicate an S-model instance into CBM")
    add("smodel-enumerate", cmd_smodel_enumerate, "stable matchings of an S-model instance").add_argument(
        "--limit", type=int, default=poset.DEFAULT_ENUM_LIMIT, metavar="N")
    add("axioms", cmd_axioms, "check the choice function axioms of every firm")
    return p


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, sort_keys=True) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.exit_code = 0
    try:
        text = _render(args.func(args))
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    except (DomainError, InstanceError, ChoiceError, ValueError, KeyError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return args.exit_code


def main():
    sys.exit(run())
