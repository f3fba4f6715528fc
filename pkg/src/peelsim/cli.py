"""Command-line front end.

Subcommands: gen (sample a pattern), decode (peel a pattern), detect
(witnesses, short cycles, exact-tree counts), theory (closed forms),
sweep (Monte Carlo).  Exit codes: 0 on success, 1 when --strict decoding
fails, 2 on usage or input-format errors.  All randomness flows from
--seed (default 0); nothing reads the clock.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .decode import DecodeParams, decode, decode_fixpoint
from .experiment import load_spec, run_sweep, write_results
from .graph import from_grid, parse_graph, parse_grid, sample_bipartite, serialize_graph
from .theory import asymptotic_success, threshold_p, tree_stats
from .witness import count_exact_trees, find_config, find_short_cycle, serialize_config

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default 0)")
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="peelsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[common], help="sample a random erasure pattern")
    p_gen.add_argument("-n", "--n-left", type=int, required=True)
    p_gen.add_argument("--n-right", type=int, default=None, help="defaults to n-left")
    p_gen.add_argument("-p", type=float, required=True, help="per-cell erasure probability")

    p_dec = sub.add_parser("decode", parents=[common], help="run the peeling decoder")
    _input_flags(p_dec)
    p_dec.add_argument("-r", "--rounds", type=int, default=None)
    p_dec.add_argument("-t", type=int, required=True)
    p_dec.add_argument("--fixpoint", action="store_true", help="peel until nothing moves")
    p_dec.add_argument("--strict", action="store_true", help="exit 1 when decoding fails")

    p_det = sub.add_parser("detect", parents=[common], help="find failure witnesses")
    _input_flags(p_det)
    p_det.add_argument("--kind", choices=("config", "cycle", "trees"), default="config")
    p_det.add_argument("-r", "--rounds", type=int, default=None)
    p_det.add_argument("-t", type=int, default=None)
    p_det.add_argument("--max-len", type=int, default=4, help="cycle length bound (even, >= 4)")

    p_thy = sub.add_parser("theory", parents=[common], help="closed-form predictions")
    p_thy.add_argument("-r", type=int, required=True)
    p_thy.add_argument("-t", type=int, required=True)
    p_thy.add_argument("--r-max", type=int, default=None, help="table up to this r")
    p_thy.add_argument("--t-max", type=int, default=None, help="table up to this t")
    p_thy.add_argument("-c", type=float, default=None, help="also report asymptotic success at c")
    p_thy.add_argument("-n", type=int, default=None, help="also report threshold_p at n")

    p_swp = sub.add_parser("sweep", parents=[common], help="run a Monte Carlo sweep")
    p_swp.add_argument("--config", default=None, help="spec file (JSON or key=value)")
    p_swp.add_argument("--mode", default=None)
    p_swp.add_argument("--n-values", default=None, help="comma-separated")
    p_swp.add_argument("-r", "--rounds", type=int, default=None)
    p_swp.add_argument("-t", type=int, default=None)
    p_swp.add_argument("--alpha", type=float, default=None)
    p_swp.add_argument("--c-values", default=None, help="comma-separated")
    p_swp.add_argument("--p-values", default=None, help="comma-separated")
    p_swp.add_argument("--trials", type=int, default=None)
    p_swp.add_argument("--confidence", type=float, default=None)
    p_swp.add_argument("--workers", type=int, default=1)
    return parser


def _input_flags(p):
    p.add_argument("--edges", default=None, help="edge-list file")
    p.add_argument("--grid", default=None, help="grid file ('.'/'X')")


def _load_graph(args):
    if (args.edges is None) == (args.grid is None):
        raise ValueError("pass exactly one of --edges or --grid")
    if args.edges is not None:
        with open(args.edges) as fh:
            return parse_graph(fh.read())
    with open(args.grid) as fh:
        return from_grid(parse_grid(fh.read()))


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = {
        "gen": _cmd_gen,
        "decode": _cmd_decode,
        "detect": _cmd_detect,
        "theory": _cmd_theory,
        "sweep": _cmd_sweep,
    }[args.command]
    try:
        return handler(args)
    except (ValueError, OSError) as exc:
        print(f"peelsim {args.command}: {exc}", file=sys.stderr)
        return 2


def _cmd_gen(args) -> int:
    if args.format != "text":
        raise ValueError("gen emits the edge-list text format only")
    n_right = args.n_left if args.n_right is None else args.n_right
    seed = 0 if args.seed is None else args.seed
    g = sample_bipartite(args.n_left, n_right, args.p, seed)
    _emit(args, serialize_graph(g))
    return 0


def _cmd_decode(args) -> int:
    g = _load_graph(args)
    if args.fixpoint:
        if args.rounds is not None:
            raise ValueError("--fixpoint and --rounds are mutually exclusive")
        outcome = decode_fixpoint(g, args.t)
    else:
        if args.rounds is None:
            raise ValueError("pass --rounds (or --fixpoint)")
        outcome = decode(g, DecodeParams(rounds=args.rounds, t=args.t))
    if args.format == "json":
        payload = {
            "success": outcome.success,
            "residual_edges": outcome.residual.edge_count,
            "rounds_executed": outcome.rounds_executed,
            "trace": [
                {"side": rec.side, "cleared": list(rec.cleared), "edges_removed": rec.edges_removed}
                for rec in outcome.trace
            ],
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    elif args.format == "text":
        lines = [
            f"{'SUCCESS' if outcome.success else 'FAILURE'} residual_edges={outcome.residual.edge_count}",
            f"rounds_executed={outcome.rounds_executed}",
        ]
        for i, rec in enumerate(outcome.trace, start=1):
            lines.append(
                f"round {i} side={rec.side} cleared={len(rec.cleared)} edges_removed={rec.edges_removed}"
            )
        _emit(args, "\n".join(lines) + "\n")
    else:
        raise ValueError("decode supports text or json output")
    return 1 if args.strict and not outcome.success else 0


def _cmd_detect(args) -> int:
    g = _load_graph(args)
    if args.format == "csv":
        raise ValueError("detect supports text or json output")
    if args.kind == "config":
        if args.rounds is None or args.t is None:
            raise ValueError("detect --kind config needs --rounds and -t")
        cfg = find_config(g, args.rounds, args.t)
        if args.format == "json":
            payload = None if cfg is None else {
                "root": cfg.root,
                "layers": [sorted(layer) for layer in cfg.layers],
                "edges": sorted(cfg.edges),
            }
            _emit(args, json.dumps({"config": payload}, indent=2) + "\n")
        elif cfg is None:
            _emit(args, "CONFIG ABSENT\n")
        else:
            _emit(args, "CONFIG PRESENT\n" + serialize_config(cfg, g.n_left, g.n_right))
    elif args.kind == "cycle":
        cycle = find_short_cycle(g, args.max_len)
        if args.format == "json":
            payload = None if cycle is None else [list(e) for e in cycle]
            _emit(args, json.dumps({"cycle": payload}, indent=2) + "\n")
        elif cycle is None:
            _emit(args, "CYCLE ABSENT\n")
        else:
            body = "\n".join(f"{i} {j}" for i, j in cycle)
            _emit(args, f"CYCLE PRESENT length={len(cycle)}\n{body}\n")
    else:
        if args.rounds is None or args.t is None:
            raise ValueError("detect --kind trees needs --rounds and -t")
        count = count_exact_trees(g, args.rounds, args.t)
        if args.format == "json":
            _emit(args, json.dumps({"exact_trees": count}) + "\n")
        else:
            _emit(args, f"exact_trees={count}\n")
    return 0


def _cmd_theory(args) -> int:
    r_hi = args.r if args.r_max is None else args.r_max
    t_hi = args.t if args.t_max is None else args.t_max
    rows = []
    for r in range(args.r, r_hi + 1):
        for t in range(args.t, t_hi + 1):
            s = tree_stats(r, t)
            row = {
                "r": r,
                "t": t,
                "edges": s.edges,
                "vertices": s.vertices,
                "left_vertices": s.left_vertices,
                "right_vertices": s.right_vertices,
                "automorphisms": s.automorphisms,
                "log_automorphisms": s.log_automorphisms,
                "threshold_exponent": -(1.0 + 1.0 / s.edges),
            }
            if args.n is not None:
                row["threshold_p"] = threshold_p(args.n, r, t)
            if args.c is not None:
                row["asymptotic_success"] = asymptotic_success(args.c, r, t)
            rows.append(row)
    if args.format == "json":
        # exact integers as decimal strings; floats stay floats
        enc = [
            {k: (str(v) if isinstance(v, int) and k != "r" and k != "t" else v) for k, v in row.items()}
            for row in rows
        ]
        _emit(args, json.dumps(enc, indent=2) + "\n")
    elif args.format == "text":
        lines = []
        for row in rows:
            parts = [f"{k}={_fmt_theory(v)}" for k, v in row.items()]
            lines.append(" ".join(parts))
        _emit(args, "\n".join(lines) + "\n")
    else:
        raise ValueError("theory supports text or json output")
    return 0


def _fmt_theory(v):
    if isinstance(v, float):
        return format(v, ".6f") if 1e-4 <= abs(v) < 1e7 or v == 0 else format(v, ".6e")
    return str(v)


def _cmd_sweep(args) -> int:
    overrides = {
        "mode": args.mode,
        "n_values": args.n_values,
        "r": args.rounds,
        "t": args.t,
        "alpha": args.alpha,
        "c_values": args.c_values,
        "p_values": args.p_values,
        "trials_per_point": args.trials,
        "master_seed": args.seed,
        "confidence": args.confidence,
    }
    text = ""
    if args.config is not None:
        with open(args.config) as fh:
            text = fh.read()
    spec = load_spec(text, overrides)
    results = run_sweep(spec, workers=args.workers)
    fmt = "csv" if args.format in ("csv", "text") else "json"
    _emit(args, write_results(results, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
