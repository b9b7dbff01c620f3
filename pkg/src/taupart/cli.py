"""Command-line interface.

Five subcommands: analyze (per-graph structure report), partition (one
certificate per target), color (detour or star colouring certificates),
hunt (corpus sweep for counterexamples), verify (re-check certificate
files).  Output is JSON lines on stdout with sorted keys; human tables sit
behind --table.  Exit codes: 0 success, 2 usage or target errors, 3
verification failures or counterexamples, 4 capacity overruns.

TAUPART_MAX_N overrides the library capacity caps for every subcommand.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .detour import detour_order
from .ears import is_two_connected
from .errors import (
    CapacityError,
    CounterexampleError,
    Graph6Error,
    GraphError,
    TargetError,
    VerificationError,
)
from .graphs import blocks, mask_to_ids, parse_graph6, random_2connected, to_dot
from .multiway import detour_coloring
from .oracle import sweep_ppc, verify_record
from .partition import PartitionTarget, tau_partition
from .starcolor import star_coloring


def _max_n() -> int | None:
    val = os.environ.get("TAUPART_MAX_N")
    return int(val) if val else None


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_lines(path: str):
    if path == "-":
        for i, line in enumerate(sys.stdin, start=1):
            yield i, line
    else:
        with open(path, "r", encoding="ascii") as fh:
            for i, line in enumerate(fh, start=1):
                yield i, line


def cmd_analyze(args: argparse.Namespace) -> int:
    max_n = _max_n()
    rows = []
    for lineno, raw in _read_lines(args.input):
        s = raw.strip()
        if not s:
            continue
        try:
            g = parse_graph6(s)
        except (Graph6Error, CapacityError) as exc:
            err = {"line": lineno, "error": str(exc)}
            if not args.keep_going:
                _emit(err)
                return 2
            rows.append(err)
            continue
        if args.dot:
            print(to_dot(g, name=f"g{lineno}"))
            continue
        try:
            tau_g = detour_order(g, max_n=max_n).tau if g.n else 0
        except CapacityError as exc:
            rows.append({"line": lineno, "error": str(exc)})
            continue
        blks, cut_mask = blocks(g)
        rows.append({
            "line": lineno,
            "graph6": s,
            "n": g.n,
            "m": g.m,
            "tau": tau_g,
            "two_connected": is_two_connected(g),
            "blocks": sorted(mask_to_ids(m) for m, _ in blks),
            "bridges": sum(1 for _, is_bridge in blks if is_bridge),
            "cut_vertices": mask_to_ids(cut_mask),
        })
    if args.dot:
        return 0
    if args.table:
        print(f"{'line':>5} {'n':>3} {'m':>3} {'tau':>4}  {'2conn':<5} graph6")
        for r in rows:
            if "error" in r:
                print(f"{r['line']:>5} error: {r['error']}")
            else:
                print(f"{r['line']:>5} {r['n']:>3} {r['m']:>3} {r['tau']:>4}  "
                      f"{str(r['two_connected']).lower():<5} {r['graph6']}")
    else:
        for r in rows:
            _emit(r)
    return 0


def cmd_partition(args: argparse.Namespace) -> int:
    if args.all_pairs == (args.a is not None or args.b is not None):
        print("error: give either -a and -b, or --all-pairs", file=sys.stderr)
        return 2
    if not args.all_pairs and (args.a is None or args.b is None):
        print("error: -a and -b go together", file=sys.stderr)
        return 2
    g = parse_graph6(args.graph)
    max_n = _max_n()
    if args.all_pairs:
        tau_g = detour_order(g, max_n=max_n).tau
        for a in range(1, tau_g):
            cert = tau_partition(g, PartitionTarget(a, tau_g - a), max_n=max_n)
            _emit(cert.to_json_dict())
        return 0
    cert = tau_partition(g, PartitionTarget(args.a, args.b), max_n=max_n)
    _emit(cert.to_json_dict())
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    g = parse_graph6(args.graph)
    max_n = _max_n()
    if args.mode == "detour":
        if args.n is None or args.n < 1:
            print("error: --mode detour needs --n with a positive class bound", file=sys.stderr)
            return 2
        cert = detour_coloring(g, args.n, max_n=max_n)
    else:
        if args.n is not None:
            print("error: --n only applies to --mode detour", file=sys.stderr)
            return 2
        cert = star_coloring(g, max_n=max_n)
    if not cert.verified:
        print(f"error: colouring failed verification on {cert.graph6}", file=sys.stderr)
        return 3
    _emit(cert.to_json_dict())
    return 0


def cmd_hunt(args: argparse.Namespace) -> int:
    max_n = _max_n()
    graphs = []
    prelude = []
    if args.random:
        n, seed, count = args.random
        rng = random.Random(seed)
        for _ in range(count):
            extra = rng.randint(0, max(0, n // 2))
            graphs.append(random_2connected(n, extra_ears=extra, seed=rng.randrange(1 << 30)))
        corpus = f"random(n={n},seed={seed},count={count})"
    else:
        corpus = args.source
        for lineno, raw in _read_lines(args.source):
            s = raw.strip()
            if not s:
                continue
            try:
                graphs.append(parse_graph6(s))
            except (Graph6Error, CapacityError) as exc:
                err = {"line": lineno, "error": str(exc)}
                if not args.keep_going:
                    _emit(err)
                    return 2
                prelude.append(err)
    report = sweep_ppc(graphs, corpus=corpus, max_n=max_n, deterministic=args.deterministic)
    for err in prelude:
        _emit(err)
    for line in report.to_json_lines():
        print(line)
    with open(args.witness_file, "w", encoding="ascii") as fh:
        for w in report.witnesses:
            fh.write(json.dumps(w, sort_keys=True) + "\n")
    return 0 if report.counterexamples == 0 else 3


def cmd_verify(args: argparse.Namespace) -> int:
    total = 0
    failed = 0
    for lineno, raw in _read_lines(args.input):
        s = raw.strip()
        if not s:
            continue
        total += 1
        try:
            rec = json.loads(s)
        except json.JSONDecodeError as exc:
            ok, msg = False, f"schema: invalid JSON: {exc.msg}"
        else:
            ok, msg = verify_record(rec)
        failed += 0 if ok else 1
        _emit({"line": lineno, "ok": ok, "detail": msg})
    _emit({"summary": True, "records": total, "failed": failed})
    return 0 if failed == 0 else 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="taupart",
                                description="Detour-order path partitions and colourings of small graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="structure report for graph6 input, one JSON line per graph")
    pa.add_argument("input", nargs="?", default="-", help="graph6 file, or - for stdin (default)")
    pa.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    pa.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    pa.add_argument("--keep-going", action=argparse.BooleanOptionalAction, default=True,
                    help="record malformed lines and continue (default on)")
    pa.set_defaults(func=cmd_analyze)

    pp = sub.add_parser("partition", help="(a,b) partition certificate for one graph")
    pp.add_argument("graph", help="graph6 string")
    pp.add_argument("-a", type=int, default=None, help="detour bound for part A")
    pp.add_argument("-b", type=int, default=None, help="detour bound for part B")
    pp.add_argument("--all-pairs", action="store_true",
                    help="every target (a, tau-a) for a in 1..tau-1")
    pp.set_defaults(func=cmd_partition)

    pc = sub.add_parser("color", help="detour or star colouring certificate for one graph")
    pc.add_argument("graph", help="graph6 string")
    pc.add_argument("--mode", choices=("detour", "star"), required=True)
    pc.add_argument("--n", type=int, default=None, help="class detour bound (detour mode)")
    pc.set_defaults(func=cmd_color)

    ph = sub.add_parser("hunt", help="sweep a corpus for partition counterexamples")
    src = ph.add_mutually_exclusive_group(required=True)
    src.add_argument("--source", help="graph6 file, or - for stdin")
    src.add_argument("--random", nargs=3, type=int, metavar=("N", "SEED", "COUNT"),
                     help="random 2-connected corpus of COUNT graphs on N vertices")
    ph.add_argument("--witness-file", default="witnesses.jsonl",
                    help="where construction witnesses are written (JSON lines)")
    ph.add_argument("--deterministic", action="store_true",
                    help="omit timing fields so identical runs are byte-identical")
    ph.add_argument("--keep-going", action=argparse.BooleanOptionalAction, default=True,
                    help="record malformed lines and continue (default on)")
    ph.set_defaults(func=cmd_hunt)

    pv = sub.add_parser("verify", help="re-check a file of certificate JSON lines")
    pv.add_argument("input", nargs="?", default="-", help="certificate file, or - for stdin (default)")
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (TargetError, GraphError) as exc:  # Graph6Error is a GraphError
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CounterexampleError as exc:
        print(f"counterexample candidate: {exc} on {exc.graph6}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 4


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
