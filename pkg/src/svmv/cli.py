"""Command-line front end.

Exit codes: 0 success, 1 criterion failure, 2 usage error, 3 resource cap.
All randomised commands require an explicit --seed, which is recorded in
their output; identical invocations produce identical files (modulo the
timings_ms fields of experiment reports).
"""

from __future__ import annotations

import argparse
import json
import sys

from .bisim import PointedInstance, bisimilar, max_bisim_radius
from .errors import FormatError, ResourceLimitError, SvmvError
from .families import (FamilyView, build_ball, family_collapse, format_path,
                       parse_path)
from .graphs import PortNumberedGraph
from .problem import check_pi, solve_pi_mv
from .reproduce import rows_to_csv, run_reproduction
from .simulate import multiset_echo, run_simulation
from .experiments import run_theorem1, run_theorem2
from .walks import find_critical_psw, verify_psw

INNER_MACHINES = {
    "pi-solver": lambda delta: solve_pi_mv(delta),
    "multiset-echo": lambda delta: multiset_echo(delta),
}

EXIT_OK = 0
EXIT_CRITERION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_json(path: str | None, payload) -> None:
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_build(args) -> int:
    graph = build_ball(args.family, args.d, parse_path(args.center, args.family),
                       args.radius, max_nodes=args.max_nodes)
    if args.collapse:
        graph = family_collapse(args.family, args.d).apply_graph(graph)
    base = args.out or f"{args.family}_d{args.d}_r{args.radius}"
    _write_text(base + ".json", graph.to_json(node_fmt=format_path) + "\n")
    with open(base + ".dot", "w") as fh:
        fh.write(graph.to_dot(node_fmt=format_path))
    print(f"{len(graph.nodes)} nodes, {len(graph.edges())} edges "
          f"-> {base}.json, {base}.dot")
    return EXIT_OK


def cmd_psw(args) -> int:
    k, witness = find_critical_psw(args.d, max_pairs=args.max_pairs)
    audit = verify_psw(witness, args.d, allow_mirrored=True)
    payload = {
        "d": args.d,
        "k": k,
        "labels": list(witness.labels),
        "walk1": [format_path(v) for v in witness.walk1],
        "walk2": [format_path(v) for v in witness.walk2],
        "separating_label": witness.separating_label,
        "extension": format_path(witness.extension),
        "mirrored": witness.mirrored,
        "verified": audit.status,
    }
    _write_json(args.out, payload)
    if args.format == "dot":
        marked = set(witness.walk1) | set(witness.walk2)
        ball = build_ball("g", args.d, (), 2 * args.d)
        _write_text((args.out or "psw") + ".dot",
                    ball.to_dot(node_fmt=format_path, highlight=marked))
    return EXIT_OK


def cmd_bisim(args) -> int:
    collapse = family_collapse(args.family, args.d) if args.collapsed else None
    view = FamilyView(args.family, args.d, collapse)
    a = PointedInstance(view, parse_path(args.a, args.family))
    b = PointedInstance(view, parse_path(args.b, args.family))
    similar = bisimilar(a, b, args.radius)
    failing = None
    if not similar:
        best = max_bisim_radius(a, b, args.radius)
        failing = 0 if best == -1 else best + 1
    _write_json(args.out, {"similar": similar, "failing_radius": failing})
    return EXIT_OK


def cmd_theorem1(args) -> int:
    _write_json(args.out, run_theorem1(args.delta))
    return EXIT_OK


def cmd_theorem2(args) -> int:
    _write_json(args.out, run_theorem2(args.d))
    return EXIT_OK


def _load_graph(path: str) -> PortNumberedGraph:
    with open(path) as fh:
        return PortNumberedGraph.from_json(fh.read())


def cmd_simulate(args) -> int:
    graph = _load_graph(args.graph)
    delta = max(1, graph.max_degree())
    inner = INNER_MACHINES[args.inner](delta)
    report = run_simulation(inner, graph, graph.colours or None,
                            max_rounds=args.max_rounds)
    _write_json(args.out, report.to_json_dict())
    return EXIT_OK if report.outputs_equal else EXIT_CRITERION


def cmd_check_pi(args) -> int:
    graph = _load_graph(args.graph)
    with open(args.candidate) as fh:
        candidate = json.load(fh)
    ok, violation = check_pi(graph, graph.colours, candidate)
    _write_json(args.out, {"ok": ok, "violation": violation})
    return EXIT_OK if ok else EXIT_CRITERION


def cmd_reproduce(args) -> int:
    rows = run_reproduction(args.seed, d_max=args.d_max,
                            inject_collapse_fault=args.inject_collapse_fault)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            rows_to_csv(rows, fh)
    else:
        rows_to_csv(rows, sys.stdout)
    failed = [row for row in rows if not row.passed]
    for row in rows:
        status = "pass" if row.passed else "FAIL"
        print(f"[{status}] {row.criterion} {row.parameter}", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_CRITERION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svmv",
        description="Simulator and verification toolkit for set- vs "
                    "multiset-reception anonymous networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="materialise a tree ball as JSON + DOT")
    p.add_argument("--family", choices=("g", "hb", "hw"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--center", default="()")
    p.add_argument("--collapse", action="store_true",
                   help="apply the family's port collapse")
    p.add_argument("--max-nodes", type=int, default=500_000)
    p.add_argument("--out", help="output base path (writes .json and .dot)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("psw", help="critical separating-walk search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-pairs", type=int, default=50_000_000)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_psw)

    p = sub.add_parser("bisim", help="radius-bounded bisimilarity query")
    p.add_argument("--family", choices=("g", "hb", "hw"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True, help='node path, e.g. "(1,0)"')
    p.add_argument("--b", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--collapsed", action="store_true",
                   help="query under the collapsed integer ports")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("theorem1", help="message-equality experiment")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("theorem2", help="coloured-tree root experiment")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_theorem2)

    p = sub.add_parser("simulate",
                       help="differential multiset-by-set simulation run")
    p.add_argument("--inner", choices=sorted(INNER_MACHINES), required=True)
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--max-rounds", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check-pi",
                       help="check a candidate majority-colour solution")
    p.add_argument("--graph", required=True)
    p.add_argument("--candidate", required=True,
                   help="JSON file mapping node id to colour")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_pi)

    p = sub.add_parser("reproduce", help="run the full acceptance table")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--d-max", type=int, default=5)
    p.add_argument("--inject-collapse-fault", action="store_true",
                   help=argparse.SUPPRESS)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FormatError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SvmvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CRITERION


if __name__ == "__main__":
    sys.exit(main())
