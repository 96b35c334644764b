"""Command line front end

    python -m flexcolor <command> [graph file] [options]

Reports go to stdout, logs and one-line errors (`error <code> <message>`) to
stderr. Exit status: 0 success, 1 a "no" answer, 2 bad input, 3 a theorem
violation diagnostic.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from flexcolor import __version__
from flexcolor.configurations import Configuration, ExtendedStalk, find_reducible
from flexcolor.constants import EXIT_INPUT_ERROR, EXIT_NO, EXIT_OK
from flexcolor.discharging import format_rational, format_report, prepare_and_verify
from flexcolor.exceptions import FlexColorError, PreconditionViolated, get_user_friendly_error
from flexcolor.flexibility import (
    check_counting_bound,
    estimate_avoidance,
    estimate_probabilities,
    satisfy_request,
    satisfy_weighted,
)
from flexcolor.formats import (
    default_lists,
    emit_graph,
    parse_lists,
    parse_request,
    parse_weights,
    read_graph,
)
from flexcolor.generate import random_quadrangulation
from flexcolor.list_coloring import solve
from flexcolor.logging_config import get_logger, setup_logging
from flexcolor.planar_graph import PlanarGraph
from flexcolor.reducibility import ReducibilityVerdict, is_reducible
from flexcolor.settings import RunConfig, load_config

logger = get_logger(__name__)


def _ids(text: str) -> List[int]:
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected vertex ids, got '{text}'") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="list size (default 4)")
    common.add_argument("--d", type=int, help="independence distance in FORB (default 1)")
    common.add_argument("--b", type=int, help="configuration size bound (default 31)")
    common.add_argument("--seed", type=int, help="first sampling seed")
    common.add_argument("--trials", type=int, help="number of samples")
    common.add_argument("--cap", type=int, help="reducibility oracle vertex cap")
    common.add_argument("--jobs", type=int, help="worker processes for sampling")
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--log-json", dest="log_json", action="store_const", const=True, help="JSON log records")

    parser = argparse.ArgumentParser(prog="flexcolor", description="Flexible list colorings of triangle-free planar graphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, graph: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("graph", type=Path, help="graph file")
        return p

    command("faces", "print the facial walks")
    p = command("check-reducible", "decide (d,k)-reducibility of an induced subgraph")
    p.add_argument("--subgraph", type=_ids, nargs="+", required=True, help="vertex ids")
    p = command("find-config", "find a reducible configuration")
    p.add_argument("--verify", action="store_const", const=True, help="confirm it with the oracle")
    command("discharge", "print the charge ledger of the minimal disk")
    for name, help_text in (
        ("color", "find an L-coloring"),
        ("count", "count L-colorings"),
        ("estimate", "estimate (vertex, color) probabilities of the sampler"),
    ):
        p = command(name, help_text)
        p.add_argument("--lists", type=Path, help="list file (default {1..k} everywhere)")
    # p is the estimate parser here
    p.add_argument("--avoid", type=_ids, nargs="+", help="estimate P[no vertex of these gets --color] instead")
    p.add_argument("--color", type=int, help="the color to avoid")
    p = command("flex", "satisfy a request or a weighted request")
    p.add_argument("--lists", type=Path, help="list file (default {1..k} everywhere)")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--request", type=Path, help="request file")
    target.add_argument("--weights", type=Path, help="weighted request file")
    p = command("gen", "generate a random triangle-free plane graph", graph=False)
    p.add_argument("--n", type=int, required=True, help="vertex count before deletions (at least 8)")
    p.add_argument("--drop", type=float, default=0.0, help="edge deletion probability")
    p.add_argument("--three-core", dest="three_core", action="store_true", help="strip vertices of degree < 3")
    return parser


def _lists(args: argparse.Namespace, g: PlanarGraph, config: RunConfig) -> Dict[int, FrozenSet[int]]:
    path = getattr(args, "lists", None)
    if path is None:
        return default_lists(g, config.k)
    return parse_lists(path.read_text(encoding="utf-8"))


def _line(out: TextIO, text: str) -> None:
    out.write(text + "\n")


# ===== COMMANDS =====

def cmd_faces(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    for face in g.faces:
        _line(out, f"face {face.id} len {face.length} : {' '.join(map(str, face.walk))}")
    if g.outer_face is not None:
        _line(out, f"outer {g.outer_face}")
    return EXIT_OK


def print_verdict(verdict: ReducibilityVerdict, out: TextIO) -> int:
    if verdict.reducible:
        _line(out, "reducible yes")
        return EXIT_OK
    witness = verdict.witness
    if witness.condition == "FIX":
        _line(out, f"reducible no FIX vertex {witness.vertex}")
    else:
        members = " ".join(map(str, witness.independent_set)) or "-"
        _line(out, f"reducible no FORB I {members}")
    for v in sorted(witness.lists):
        _line(out, f"L {v} : {' '.join(map(str, sorted(witness.lists[v])))}".rstrip())
    return EXIT_NO


def cmd_check_reducible(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    subgraph = sorted({v for group in args.subgraph for v in group})
    verdict = is_reducible(g, subgraph, d=config.d, k=config.k, cap=config.cap, time_budget=config.time_budget)
    return print_verdict(verdict, out)


def print_configuration(config: Configuration, out: TextIO, verify: bool = False) -> None:
    _line(out, f"config {config.kind} vertices: {' '.join(map(str, sorted(config.vertices)))}")
    for witness in config.stalks:
        stalk = witness.stalk if isinstance(witness, ExtendedStalk) else witness
        extras = ""
        if stalk.bud is not None:
            extras += f" bud {stalk.bud}"
        if isinstance(witness, ExtendedStalk) and witness.extension is not None:
            extras += f" extension {witness.extension}"
        _line(out, f"stalk {stalk.kind} root {stalk.root}{extras} vertices: {' '.join(map(str, sorted(witness.vertices)))}")
    if verify:
        status = {True: "yes", False: "no", None: "skipped"}[config.oracle_verified]
        _line(out, f"verified {status}")


def cmd_find_config(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    verify = bool(args.verify) or config.verify
    found = find_reducible(g, verify=verify, cap=config.cap)
    print_configuration(found, out, verify)
    return EXIT_NO if found.oracle_verified is False else EXIT_OK


def cmd_discharge(args, config: RunConfig, out: TextIO) -> int:
    out.write(format_report(prepare_and_verify(read_graph(args.graph))))
    return EXIT_OK


def cmd_color(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    coloring = solve(g, _lists(args, g, config))
    if coloring is None:
        _line(out, "uncolorable")
        return EXIT_NO
    for v in sorted(coloring):
        _line(out, f"color {v} {coloring[v]}")
    return EXIT_OK


def cmd_count(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    count, bound, holds = check_counting_bound(g, _lists(args, g, config), b=config.b)
    _line(out, f"count {count}")
    _line(out, f"bound 2^({len(g)}/{config.b}) {bound:.6f} holds {'yes' if holds else 'no'}")
    return EXIT_OK if count > 0 else EXIT_NO


def cmd_flex(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    lists = _lists(args, g, config)
    if args.request is not None:
        request = parse_request(args.request.read_text(encoding="utf-8"))
        best, fraction = satisfy_request(g, lists, request, config.trials, config.seed)
        label = "satisfied"
    else:
        weights = parse_weights(args.weights.read_text(encoding="utf-8"))
        best, fraction = satisfy_weighted(g, lists, weights, config.trials, config.seed)
        label = "ratio"
    for v in sorted(best):
        _line(out, f"color {v} {best[v]}")
    _line(out, f"{label} {format_rational(fraction)}")
    return EXIT_OK


def print_avoidance(
    args, config: RunConfig, g: PlanarGraph, lists: Dict[int, FrozenSet[int]], out: TextIO
) -> int:
    if args.color is None:
        raise PreconditionViolated(get_user_friendly_error("avoid_needs_color"), field="color")
    vertices = sorted({v for group in args.avoid for v in group})
    result = estimate_avoidance(g, lists, vertices, args.color, config.trials, config.seed, k=config.k, b=config.b)
    _line(out, f"trials {result.trials}")
    _line(out, f"avoid {' '.join(map(str, result.vertices))} color {result.color} hits {result.hits}")
    _line(
        out,
        f"prob {format_rational(result.probability)} bound {format_rational(result.bound)} "
        f"holds {'yes' if result.holds else 'no'}",
    )
    return EXIT_OK


def cmd_estimate(args, config: RunConfig, out: TextIO) -> int:
    g = read_graph(args.graph)
    lists = _lists(args, g, config)
    if args.avoid is not None:
        return print_avoidance(args, config, g, lists, out)
    stats = estimate_probabilities(
        g,
        lists,
        config.trials,
        config.seed,
        jobs=config.jobs,
        enum_cap=config.enum_cap,
        time_budget=config.time_budget,
    )
    _line(out, f"trials {stats.trials}")
    _line(out, f"min-prob {format_rational(stats.min_empirical_prob)}")
    for v, c in stats.pairs:
        _line(out, f"hit {v} {c} {stats.count(v, c)}")
    return EXIT_OK


def cmd_gen(args, config: RunConfig, out: TextIO) -> int:
    out.write(emit_graph(random_quadrangulation(args.n, config.seed, args.drop, args.three_core)))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig, TextIO], int]] = {
    "faces": cmd_faces,
    "check-reducible": cmd_check_reducible,
    "find-config": cmd_find_config,
    "discharge": cmd_discharge,
    "color": cmd_color,
    "count": cmd_count,
    "flex": cmd_flex,
    "estimate": cmd_estimate,
    "gen": cmd_gen,
}


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Parse arguments, dispatch one subcommand and return its exit status

    Args:
        argv: Arguments without the program name (sys.argv[1:] when None)
        out: Report stream (stdout when None)
        err: Error stream (stderr when None)
    """
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = load_config(
            command=args.command,
            k=args.k,
            d=args.d,
            b=args.b,
            seed=args.seed,
            trials=args.trials,
            cap=args.cap,
            jobs=args.jobs,
            log_level=args.log_level,
            log_json=args.log_json,
            verify=getattr(args, "verify", None),
        )
    except ValidationError as e:
        first = e.errors()[0]
        err.write(f"error config {'.'.join(map(str, first['loc']))}: {first['msg']}\n")
        return EXIT_INPUT_ERROR

    setup_logging(config.log_level, json_format=config.log_json)
    logger.debug(f"Running {config.command} with k={config.k} d={config.d} b={config.b} seed={config.seed}")
    try:
        return COMMANDS[args.command](args, config, out)
    except FlexColorError as e:
        err.write(e.one_line() + "\n")
        return e.exit_code
    except OSError as e:
        err.write(f"error io {e.filename}: {e.strerror}\n")
        return EXIT_INPUT_ERROR
