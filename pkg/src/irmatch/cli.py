"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 solver node limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .decomposition import build_partition, edmonds_gallai, verify_claim1
from .experiments import (DEFAULT_DELTA, DEFAULT_TRIALS, RUNNERS, ExperimentConfig,
                          instance_from_graph)
from .generators import GENERATORS, make_instance
from .graph import GraphFormatError, format_graph, parse_graph, to_undirected
from .mechanisms import augment_mechanism, veto_mechanism
from .ownership import PlayerProfile, sample_ownership
from .report import emit_report, format_value
from .solver import DEFAULT_NODE_LIMIT, SolverLimitError, max_cycle_cover

EXIT_OK, EXIT_INVALID, EXIT_SOLVER_CAP = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _read_graph(path: str):
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _profile(args) -> PlayerProfile:
    if args.probs:
        return PlayerProfile.parse(args.probs)
    return PlayerProfile.uniform(args.players or 2)


def _add_profile(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--probs", help="comma separated, e.g. 0.5,0.5")
    group.add_argument("--players", type=int, help="k players with probability 1/k")


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    m = max_cycle_cover(g, args.cap, node_limit=args.node_limit)
    print(f"matched {m.size}")
    for c in m.cycles:
        print(" ".join(map(str, c)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    ug = to_undirected(_read_graph(args.graph))
    eg = edmonds_gallai(ug)
    parts = build_partition(ug, eg)
    report = verify_claim1(ug, parts)
    print("set,vertices")
    for name in ("A", "C", "D"):
        print(f"{name},{' '.join(map(str, sorted(getattr(eg, name))))}")
    print("part,kind,edges,opt")
    for j, (part, size) in enumerate(zip(parts.parts, report.part_sizes)):
        edges = " ".join(f"{u}-{v}" for u, v in sorted(part.edges))
        print(f"{j},{part.kind},{edges},{size}")
    print(f"claim1,{report.lhs},{report.rhs},{'holds' if report.holds else 'fails'}")
    return EXIT_OK


def cmd_generate(args) -> int:
    inst = make_instance(args.name, n=args.n, copies=args.copies)
    Path(args.out).write_text(format_graph(inst.graph), encoding="utf-8")
    print(f"{inst.name}: {inst.graph.vertex_count} vertices, "
          f"{len(inst.graph.edges)} edges, known opt {inst.known_opt}")
    return EXIT_OK


def cmd_mechanism(args) -> int:
    g = _read_graph(args.graph)
    profile = _profile(args)
    a = sample_ownership(g, profile, args.seed, args.trial)
    print("owner," + " ".join(map(str, a.owner.tolist())))
    if args.kind == "augment":
        m = augment_mechanism(g, a, profile.k)
        print(f"matched {m.size}")
        for c in m.cycles:
            print(" ".join(map(str, c)))
        return EXIT_OK
    pinned = max_cycle_cover(g, args.cap, node_limit=args.node_limit)
    out = veto_mechanism(g, a, args.cap, pinned, profile.k, node_limit=args.node_limit)
    print("trial,player,internal_opt,share,gap,accepted,final_allocation")
    for p in out.per_player:
        print(",".join(format_value(v) for v in (
            args.trial, p.player, p.internal_opt, p.share,
            p.internal_opt - p.share, out.accepted, p.final_allocation)))
    return EXIT_OK


def cmd_experiment(args) -> int:
    profile = _profile(args)
    if args.graph:
        g = _read_graph(args.graph)
        inst = instance_from_graph(g, args.cap or 3, Path(args.graph).stem)
    else:
        inst = make_instance(args.instance, n=args.n, copies=args.copies)
    cfg = ExperimentConfig(inst, profile, cycle_cap=args.cap, trials=args.trials,
                           seed=args.seed, delta=args.delta, workers=args.workers,
                           exact=args.exact)
    report = RUNNERS[args.kind](cfg)
    text = emit_report(report, args.out, "csv")
    if args.plot:
        emit_report(report, args.plot, "plot")
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="irmatch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="exact maximum matching under a cycle cap")
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decompose", help="Edmonds-Gallai decomposition of the 2-cycle graph")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("generate", help="write a named instance in graph format")
    p.add_argument("name", choices=sorted(GENERATORS))
    p.add_argument("--n", type=int)
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("mechanism", help="run a mechanism on one random assignment")
    p.add_argument("kind", choices=("veto", "augment"))
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int, default=3)
    _add_profile(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.set_defaults(func=cmd_mechanism)

    p = sub.add_parser("experiment", help="Monte Carlo validation runs")
    p.add_argument("kind", choices=sorted(RUNNERS))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--instance", choices=sorted(GENERATORS))
    p.add_argument("--n", type=int)
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--cap", type=int)
    _add_profile(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--plot", help="also write plot data to this file")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER_CAP
    except (GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
