"""Command-line front end.

Exit status: 0 on success (or no violated axiom), 1 when an axiom check is
violated, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import axioms, impossibility, network, transforms, walk
from .errors import GroupRecError
from .systems import SYSTEMS, get_system


class InputError(Exception):
    pass


def _read_graph(path: str) -> network.VotingNetwork:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"--graph {path}: {exc.strerror}") from None
    try:
        return network.loads(text)
    except (ValueError, GroupRecError) as exc:
        raise InputError(f"--graph {path}: {type(exc).__name__}: {exc}") from None


def _group(net: network.VotingNetwork, csv: str | None) -> network.Group:
    if not csv:
        raise InputError("--group is required")
    members = [m.strip() for m in csv.split(",") if m.strip()]
    try:
        return network.as_group(net, members)
    except GroupRecError as exc:
        raise InputError(f"--group: {type(exc).__name__}: {exc}") from None


def _fraction(flag: str, value: str | None):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{flag}: not a rational number: {value!r}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_recommend(args) -> int:
    net = _read_graph(args.graph)
    group = _group(net, args.group)
    result = get_system(args.system)(net, group)
    _emit(args, result.symbol + "\n")
    return 0


def cmd_solve(args) -> int:
    net = _read_graph(args.graph)
    sol = walk.solve_walk(net)
    lines = []
    for n in net.nodes:
        v = sol[n]
        line = f"{n} = {v}"
        if args.decimal:
            line += f"  ({float(v):.6f})"
        lines.append(line)
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    net = _read_graph(args.graph)
    group = _group(net, args.group)
    if args.axiom == "all":
        which = list(range(1, 10))
    else:
        try:
            which = [int(a) for a in args.axiom.split(",")]
        except ValueError:
            raise InputError(f"--axiom: expected 1..9 or 'all', got {args.axiom!r}") from None
        if any(a not in axioms.AXIOM_NAMES for a in which):
            raise InputError(f"--axiom: expected 1..9 or 'all', got {args.axiom!r}")
    reports = axioms.check_all(
        get_system(args.system), net, group,
        trials=args.trials, seed=args.seed,
        alpha=_fraction("--alpha", args.alpha),
        beta=_fraction("--beta", args.beta),
        r=_fraction("--r", args.r),
        k=args.k, max_group=args.max_group, axioms=which,
    )
    _emit(args, "".join(json.dumps(r.to_dict()) + "\n" for r in reports))
    return 1 if any(r.violated for r in reports) else 0


def cmd_transform(args) -> int:
    net = _read_graph(args.graph)
    if args.kind == "trust-propagation":
        if not (args.u and args.v):
            raise InputError("--u and --v are required for trust-propagation")
        out = {"graph": network.network_to_dict(transforms.trust_propagate(net, args.u, args.v))}
    elif args.kind == "scale":
        if not args.node:
            raise InputError("--node is required for scale")
        out = {"graph": network.network_to_dict(transforms.scale_edges(net, args.node, args.k))}
    else:
        if not args.node:
            raise InputError("--node is required for prop-incl")
        res = transforms.include_influencers(net, _group(net, args.group), args.node)
        out = {
            "graph": network.network_to_dict(res.network),
            "group": sorted(res.group),
            "marked": list(res.marked),
            "extras": list(res.extras),
        }
    _emit(args, _json(out))
    return 0


def cmd_reduce(args) -> int:
    net = _read_graph(args.graph)
    group = _group(net, args.group)
    final_net, final_group, steps = transforms.reduce_group(net, group)
    _emit(args, _json([s.to_dict(snapshots=not args.no_snapshots) for s in steps]))
    plur = transforms.plurality(final_net, final_group)
    sys.stderr.write(f"final group {len(final_group)} members, plurality {plur.symbol}\n")
    return 0


def cmd_witness(args) -> int:
    w = impossibility.build_witness(
        _fraction("--alpha", args.alpha), _fraction("--beta", args.beta), _fraction("--r", args.r)
    )
    _emit(args, _json(w.to_dict()))
    return 0


def cmd_witness_verify(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise InputError(f"--in {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"--in {args.input}: invalid JSON: {exc}") from None
    w = impossibility.witness_from_dict(data)
    verdict = impossibility.verify_witness(w, get_system(args.system))
    _emit(args, _json(verdict.to_dict()))
    return 0


def cmd_gen_star(args) -> int:
    degrees = [int(d) for d in args.degrees.split(",") if d.strip()] if args.degrees else []
    spec = network.StarGroupSpec(args.n, args.m, network.Vote.parse(args.inner), tuple(degrees))
    net, group = network.generate_star_group(spec)
    out = network.network_to_dict(net)
    out["group"] = sorted(group)
    _emit(args, _json(out))
    return 0


def cmd_export_dot(args) -> int:
    net = _read_graph(args.graph)
    group = _group(net, args.group) if args.group else ()
    _emit(args, network.to_dot(net, group=group))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grouprec", description="Group random-walk recommendations on trust networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, group=False, system=False):
        if graph:
            sp.add_argument("--graph", required=True, help="graph JSON file")
        if group:
            sp.add_argument("--group", help="comma-separated node ids")
        if system:
            sp.add_argument("--system", default="random-walk", choices=sorted(SYSTEMS))
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("recommend")
    common(sp, group=True, system=True)
    sp.set_defaults(func=cmd_recommend)

    sp = sub.add_parser("solve")
    common(sp)
    sp.add_argument("--decimal", action="store_true", help="also print decimal approximations")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("check")
    common(sp, group=True, system=True)
    sp.add_argument("--axiom", default="all")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--r")
    sp.add_argument("--k", type=int, default=1, help="copies added by the scale-invariance check")
    sp.add_argument("--max-group", type=int, default=8)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("transform")
    common(sp, group=True)
    sp.add_argument("--kind", required=True, choices=["trust-propagation", "scale", "prop-incl"])
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp.add_argument("--node")
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("reduce")
    common(sp, group=True)
    sp.add_argument("--no-snapshots", action="store_true", help="omit before/after graphs from the trace")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("witness")
    common(sp, graph=False)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--r", required=True)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("witness-verify")
    common(sp, graph=False, system=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(func=cmd_witness_verify)

    sp = sub.add_parser("gen-star")
    common(sp, graph=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--inner", default="+")
    sp.add_argument("--degrees", default="", help="comma-separated |D^i| per nonvoter")
    sp.set_defaults(func=cmd_gen_star)

    sp = sub.add_parser("export-dot")
    common(sp, group=True)
    sp.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (GroupRecError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
