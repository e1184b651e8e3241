"""
Command-line front end.

    qwequiv graph gen --family complete --n 4
    qwequiv graph bdc --input paw.el
    qwequiv verify --family complete --n 8 --marked 0,3 [--format json]
    qwequiv search --family complete --n 1024 --marked 0 --walk wq2 --steps 75
    qwequiv peak --family complete --n 1024 --marked 0 --walk wq2 --compare

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from qwequiv.arcspace import CONVENTIONS, INIT_MODES, build_basis, uniform_state
from qwequiv.equivalence import DEFAULT_OPERATOR_TOL, run_equivalence_suite
from qwequiv.graph import (
    FAMILIES,
    Graph,
    GraphError,
    bipartite_double_cover,
    export,
    from_edge_list,
    generate,
    parse_marked,
)
from qwequiv.operators import WALK_KINDS, walk_operator
from qwequiv.search import PREDICTED_KINDS, default_horizon, evolve, find_peak, predicted_peak

WALK_ALIASES = {
    "w": "szegedy_W",
    "wprime": "szegedy_Wprime",
    "wq1": "szegedy_Wq1",
    "wq2": "szegedy_Wq2",
    "u": "coined_U",
    "uskw": "coined_USKW",
    "scq": "coined_SCQ",
    "u2q": "coined_U2Q",
}
WALK_ALIASES.update({k: k for k in WALK_KINDS})

PEAK_T_TOL = 1.0
PEAK_P_TOL = 0.05


class UsageError(Exception):
    pass


# -- argument parsing ---------------------------------------------------------------


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph")
    src.add_argument("--input", "-i", help="edge-list file ('-' for stdin)")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--n", type=int, help="family size parameter (N, side, dimension or prime)")
    src.add_argument("--allow-loops", action="store_true", help="accept self-loops in --input")


def _add_search_args(p: argparse.ArgumentParser) -> None:
    _add_graph_source(p)
    p.add_argument("--marked", "-m", default="", help="comma-separated 0-based marked vertices")
    p.add_argument("--walk", "-w", required=True, help="walk kind: " + ", ".join(sorted(set(WALK_ALIASES) - set(WALK_KINDS))))
    p.add_argument("--steps", type=int, help="number of applications (default: ceil(2 t*) where predicted)")
    p.add_argument("--convention", choices=CONVENTIONS, default="tail")
    p.add_argument("--init", choices=INIT_MODES, default="arc_uniform")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwequiv", description="Szegedy and coined quantum walk equivalence toolkit")
    parser.add_argument("--output", "-o", help="write to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="generate or transform graphs")
    gsub = graph.add_subparsers(dest="graph_command", required=True)
    gen = gsub.add_parser("gen", help="generate a standard family")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--n", type=int)
    gen.add_argument("--format", choices=("edge_list", "dot"), default="edge_list")
    bdc = gsub.add_parser("bdc", help="bipartite double cover of an edge-list file")
    bdc.add_argument("--input", "-i", required=True)
    bdc.add_argument("--format", choices=("edge_list", "dot"), default="edge_list")

    verify = sub.add_parser("verify", help="run the operator-equivalence suite")
    _add_graph_source(verify)
    verify.add_argument("--marked", "-m", default="")
    verify.add_argument("--tol", type=float, default=DEFAULT_OPERATOR_TOL)
    verify.add_argument("--format", choices=("text", "json"), default="text")

    search = sub.add_parser("search", help="success-probability trajectory as CSV")
    _add_search_args(search)

    peak = sub.add_parser("peak", help="peak success probability and its step")
    _add_search_args(peak)
    mode = peak.add_mutually_exclusive_group()
    mode.add_argument("--predict", action="store_true", help="closed-form complete-graph prediction only")
    mode.add_argument("--compare", action="store_true", help="simulate and compare with the prediction")
    return parser


# -- helpers -------------------------------------------------------------------------


def _read_graph(path: str, allow_loops: bool = False) -> Graph:
    if path == "-":
        return from_edge_list(sys.stdin, allow_self_loops=allow_loops)
    with open(path, encoding="utf-8") as fh:
        return from_edge_list(fh, allow_self_loops=allow_loops)


def _graph_from_args(args) -> Graph:
    if args.input and args.family:
        raise UsageError("give either --input or --family, not both")
    if args.input:
        return _read_graph(args.input, args.allow_loops)
    if args.family:
        return generate(args.family, args.n)
    raise UsageError("a graph is required: --input PATH or --family NAME [--n N]")


def _walk_kind(name: str) -> str:
    try:
        return WALK_ALIASES[name]
    except KeyError:
        raise UsageError(f"unknown walk kind {name!r}") from None


def _is_complete(g: Graph) -> bool:
    n = g.vertex_count
    return not g.has_self_loops and bool((g.degrees == n - 1).all())


# -- subcommands -------------------------------------------------------------------


def cmd_graph(args) -> tuple[int, str]:
    if args.graph_command == "gen":
        g = generate(args.family, args.n)
    else:
        g = bipartite_double_cover(_read_graph(args.input))
    return 0, export(g, args.format)


def cmd_verify(args) -> tuple[int, str]:
    g = _graph_from_args(args)
    marked = parse_marked(args.marked, g.vertex_count)
    report = run_equivalence_suite(g, marked, args.tol)
    text = report.to_json() if args.format == "json" else report.to_text()
    return (0 if report.passed else 1), text


def _simulate(args, kind: str, g: Graph):
    marked = parse_marked(args.marked, g.vertex_count)
    steps = args.steps
    if steps is None:
        if kind in PREDICTED_KINDS and _is_complete(g) and marked:
            steps = default_horizon(kind, g.vertex_count, len(marked))
        else:
            raise UsageError("--steps is required for this walk and graph")
    if steps < 0:
        raise UsageError("--steps must be non-negative")
    basis = build_basis(g)
    op = walk_operator(kind, g, basis, marked)
    traj = evolve(op, uniform_state(basis, args.init), steps, basis, marked, args.convention, walk=kind)
    return marked, traj


def cmd_search(args) -> tuple[int, str]:
    kind = _walk_kind(args.walk)
    g = _graph_from_args(args)
    _, traj = _simulate(args, kind, g)
    return 0, traj.to_csv()


def cmd_peak(args) -> tuple[int, str]:
    kind = _walk_kind(args.walk)
    if (args.predict or args.compare) and kind not in PREDICTED_KINDS:
        raise UsageError(f"no closed-form peak is tabulated for walk {args.walk!r}")
    g = _graph_from_args(args)
    marked = parse_marked(args.marked, g.vertex_count)
    n, k = g.vertex_count, len(marked)
    if args.predict or args.compare:
        if not _is_complete(g):
            raise UsageError("closed-form peaks are only tabulated for the complete graph")
        if k < 1:
            raise UsageError("closed-form peaks need at least one marked vertex")
        predicted = predicted_peak(kind, n, k).record(kind, n, k)
        if args.predict:
            return 0, json.dumps(predicted) + "\n"
    _, traj = _simulate(args, kind, g)
    simulated = find_peak(traj).record(kind, n, k)
    if not args.compare:
        return 0, json.dumps(simulated) + "\n"
    ok = (
        abs(simulated["t_star"] - predicted["t_star"]) <= PEAK_T_TOL
        and abs(simulated["p_star"] - predicted["p_star"]) <= PEAK_P_TOL
    )
    out = {"simulated": simulated, "predicted": predicted, "passed": ok}
    return (0 if ok else 1), json.dumps(out) + "\n"


COMMANDS = {"graph": cmd_graph, "verify": cmd_verify, "search": cmd_search, "peak": cmd_peak}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, text = COMMANDS[args.command](args)
    except (UsageError, GraphError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qwequiv: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"qwequiv: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
