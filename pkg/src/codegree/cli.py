"""Command-line entry point: ``codegree <subcommand> ...``.

Exit codes: 0 success, 1 internal invariant violated, 2 usage or parse
error, 3 forbidden subgraph found, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from . import experiments as X
from .families import BUILTIN_NAMES, builtin, resolve_family
from .formats import (
    format_trisystem,
    read_colouring,
    read_pairgraph,
    read_trisystem,
    read_tournament,
    write_trisystem,
)
from .hypergraph import InputError, PairGraph, TriSystem, complete, complete_pairgraph, find_any, min_codegree
from .search import coex_exact, coex_naive, default_budget, ex_exact, ex_naive
from .steiner import SteinerSystem, generate_sts, is_steiner

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CONTAINED, EXIT_BUDGET = 0, 1, 2, 3, 4

CONSTRUCTION_NAMES = (
    "colouring", "tournament", "steiner-blowup", "ramsey", "rainbow",
    "iterated-steiner", "suspension", "cospan", "winding", "bipartite", "complete",
)
EXPERIMENT_KINDS = ("independence", "k5-rate", "concentration", "expected-codegree",
                    "density-iterated", "restriction")


class UsageError(Exception):
    pass


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'name', '')}: missing {', '.join(missing)}")


def _pairgraph(spec: str) -> PairGraph:
    if spec == "triangle":
        return complete_pairgraph(3)
    if spec.startswith("complete:"):
        return complete_pairgraph(int(spec.split(":", 1)[1]))
    if os.path.exists(spec):
        return read_pairgraph(spec)
    raise UsageError(f"--pairgraph must be 'triangle', 'complete:<k>' or a file, got {spec!r}")


def _trisystem(spec: str) -> TriSystem:
    if os.path.exists(spec):
        return read_trisystem(spec)
    return builtin(spec)


def _steiner(args, v: int) -> SteinerSystem:
    if args.sts:
        return SteinerSystem(read_trisystem(args.sts))
    return generate_sts(v)


def _build(args) -> TriSystem:
    name = args.name
    if name == "colouring":
        if args.colouring:
            return C.from_colouring(read_colouring(args.colouring))
        _require(args, "n", "s")
        return C.from_colouring(C.random_colouring(args.n, args.s, args.seed))
    if name == "tournament":
        if args.tournament:
            return C.from_tournament(read_tournament(args.tournament))
        _require(args, "n")
        return C.from_tournament(C.random_tournament(args.n, args.seed))
    if name == "ramsey":
        if args.colouring:
            return C.ramsey_construction(read_colouring(args.colouring))
        _require(args, "n")
        return C.ramsey_construction(C.random_colouring(args.n, 2, args.seed))
    if name == "rainbow":
        if args.colouring:
            return C.rainbow_construction(read_colouring(args.colouring))
        _require(args, "n", "s")
        return C.rainbow_construction(C.random_colouring(args.n, args.s - 1, args.seed))
    if name == "steiner-blowup":
        _require(args, "n", "s")
        return C.steiner_blowup(_steiner(args, args.s - 2), args.n)
    if name == "iterated-steiner":
        _require(args, "n", "s")
        return C.iterated_steiner(_steiner(args, 2 * args.s - 1), args.n)
    if name == "suspension":
        _require(args, "pairgraph")
        return C.suspension(_pairgraph(args.pairgraph))
    if name == "cospan":
        _require(args, "graph")
        return C.cospan(_trisystem(args.graph))
    if name == "winding":
        _require(args, "n")
        return C.winding_tripartite(args.n)
    if name == "bipartite":
        _require(args, "n")
        return C.complete_bipartite(args.n)
    if name == "complete":
        _require(args, "n")
        return complete(args.n)
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(args) -> int:
    G = _build(args)
    if args.out:
        write_trisystem(G, args.out)
        if read_trisystem(args.out) != G:
            print("error: written file does not re-parse to the same 3-graph", file=sys.stderr)
            return EXIT_INVARIANT
    else:
        sys.stdout.write(format_trisystem(G))
    delta = min_codegree(G) if G.n >= 2 else 0
    stream = sys.stdout if args.out else sys.stderr
    print(f"n={G.n} edges={G.m} min_codegree={delta}", file=stream)
    return EXIT_OK


def cmd_check(args) -> int:
    G = read_trisystem(args.graph)
    F = resolve_family(args.forbid)
    hit = find_any(G, F)
    if hit is None:
        print("FREE")
        return EXIT_OK
    name, phi = hit
    print(f"CONTAINED {name}")
    print("witness " + " ".join(f"{u}->{v}" for u, v in enumerate(phi)))
    return EXIT_CONTAINED


def _search(args, exact_fn, naive_fn) -> int:
    F = resolve_family(args.forbid)
    if args.naive:
        res = naive_fn(args.n, F)
    else:
        res = exact_fn(args.n, F, budget=args.budget)
    witness_path = "-"
    if args.witness:
        write_trisystem(res.witness, args.witness)
        witness_path = args.witness
    print(f"value {res.value}")
    print(f"witness {witness_path}")
    print(f"nodes {res.nodes_explored}")
    print(f"status {res.status}")
    if args.out:
        payload = res.to_dict(include_timing=args.timing)
        payload["witness_path"] = witness_path
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_coex(args) -> int:
    return _search(args, coex_exact, coex_naive)


def cmd_ex(args) -> int:
    return _search(args, ex_exact, ex_naive)


def cmd_experiment(args) -> int:
    kind = args.kind
    if kind == "independence":
        _require(args, "n", "s")
        report = X.indicator_independence_check(args.n, args.s)
    elif kind == "k5-rate":
        report = X.k5_rate_exact(args.mode)
    elif kind == "concentration":
        _require(args, "n")
        report = X.codegree_concentration(
            args.construction, args.n, args.s if args.s is not None else 2,
            Fraction(args.eps), args.trials, args.seed, args.threads,
        )
    elif kind == "expected-codegree":
        report = X.expected_codegree_report(args.construction, args.s if args.s is not None else 2)
    elif kind == "density-iterated":
        _require(args, "n", "s")
        report = X.density_check_iterated(args.s, args.n)
    elif kind == "restriction":
        report = X.restriction_check(args.n or 20, args.trials, Fraction(args.min_frac), args.seed)
    else:
        raise UsageError(f"unknown experiment {kind!r}")

    for label, num, den in report.exact_rationals:
        print(f"{label} {Fraction(num, den)}")
    for label, mean, lo, hi, fails in report.empirical:
        print(f"{label} mean={mean:.4f} min={lo} max={hi} failures={fails}")
    for name, ok in report.checks.items():
        print(f"check {name} {'PASS' if ok else 'FAIL'}")
    for note in report.notes:
        print(f"note {note}")
    if args.out:
        Path(args.out).write_text(report.to_json(include_timing=args.timing))
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return EXIT_OK


def cmd_sts(args) -> int:
    if args.validate:
        G = read_trisystem(args.validate)
        if is_steiner(G):
            print("VALID")
            return EXIT_OK
        print("INVALID")
        return EXIT_INVARIANT
    _require(args, "v")
    S = generate_sts(args.v)
    if args.out:
        write_trisystem(S.graph, args.out)
    else:
        sys.stdout.write(format_trisystem(S.graph))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codegree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a 3-graph and write it in text format")
    p.add_argument("name", choices=CONSTRUCTION_NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int, help="colour count (colouring), clique size (steiner-blowup), "
                   "suspension size (rainbow, iterated-steiner)")
    p.add_argument("--seed", type=int, default=C.DEFAULT_SEED)
    p.add_argument("--colouring", help="pair colouring file instead of a random one")
    p.add_argument("--tournament", help="tournament file instead of a random one")
    p.add_argument("--sts", help="Steiner system file instead of a generated one")
    p.add_argument("--pairgraph", help="'triangle', 'complete:<k>' or a graph file")
    p.add_argument("--graph", help="built-in name or 3-graph file (cospan)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="test a 3-graph file for forbidden subgraphs")
    p.add_argument("graph")
    p.add_argument("--forbid", required=True, help=f"names ({', '.join(BUILTIN_NAMES)}) or files")
    p.set_defaults(func=cmd_check)

    for name, func, what in (("coex", cmd_coex, "codegree threshold"), ("ex", cmd_ex, "Turán number")):
        p = sub.add_parser(name, help=f"exact {what} for small n")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--forbid", required=True)
        p.add_argument("--budget", type=float, default=None,
                       help=f"seconds (default {default_budget():g}; env CODEGREE_BUDGET)")
        p.add_argument("--naive", action="store_true", help="brute-force enumeration (n <= 6)")
        p.add_argument("--witness", help="write the witness 3-graph here")
        p.add_argument("--out", help="JSON report path")
        p.add_argument("--timing", action="store_true", help="include elapsed time in JSON")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="accepted for uniformity; the search itself is sequential so "
                       "reports do not depend on scheduling")
        p.set_defaults(func=func)

    p = sub.add_parser("experiment", help="exact enumeration and Monte-Carlo checks")
    p.add_argument("kind", choices=EXPERIMENT_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--eps", default="1/10")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=C.DEFAULT_SEED)
    p.add_argument("--mode", choices=sorted(X.STATED_K5_RATE), default="colouring4")
    p.add_argument("--construction", choices=X.CONSTRUCTIONS, default="colouring")
    p.add_argument("--min-frac", default="3/5")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="per-trial minimum codegrees as CSV")
    p.add_argument("--timing", action="store_true", help="include elapsed time in JSON")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sts", help="generate or validate a Steiner triple system")
    p.add_argument("--v", type=int)
    p.add_argument("--out")
    p.add_argument("--validate", metavar="FILE")
    p.set_defaults(func=cmd_sts)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
