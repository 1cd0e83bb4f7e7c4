"""Command line interface: ``acgraph {generate,variant-generate,calibrate,stats,sweep}``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .config import RunConfig, load_config
from .copula import calibrate_lambda, rho_bounds
from .erasure import erase
from .errors import AcgraphError, ValidationError
from .export import GraphFormat, export_graph, read_graph, stats_document, write_stats
from .generator import generate
from .metrics import empirical_summary
from .sweep import sweep, write_sweep_csv
from .variant import generate_variant, variant_summary


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "seed", None) is not None:
        if not 0 <= args.seed < 2**64:
            raise ValidationError("--seed: must fit in 64 unsigned bits")
        cfg.seed = args.seed
    if getattr(args, "retry", None) is not None:
        if args.retry < 1:
            raise ValidationError("--retry: must be at least 1")
        cfg.max_attempts = args.retry
    if getattr(args, "erase", False):
        cfg.erase = True
    if getattr(args, "rho", None) is not None:
        cfg.lam, cfg.Q = calibrate_lambda(cfg.P, args.rho)
        cfg.q_source = "rho"
    return cfg


def _write_graph(g, args, cfg: RunConfig, out_out: bool) -> None:
    edges_path = args.out_edges or cfg.outputs.get("edges")
    nodes_path = args.out_nodes or cfg.outputs.get("nodes")
    fmt = args.format or cfg.outputs.get("format", "csv")
    if fmt == "csv":
        if edges_path:
            export_graph(g, GraphFormat.EDGE_LIST_CSV, edges_path)
        if nodes_path:
            export_graph(g, GraphFormat.NODE_LIST_CSV, nodes_path)
    elif edges_path:
        export_graph(g, GraphFormat(fmt), edges_path, out_out=out_out)


def _emit_stats(doc_args, path) -> None:
    summary, report, erase_report, out_out = doc_args
    if path:
        write_stats(summary, report, erase_report, path, out_out=out_out)
    else:
        json.dump(stats_document(summary, report, erase_report, out_out), sys.stdout, indent=2)
        sys.stdout.write("\n")


def _run(args, variant: bool) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if cfg.n is None:
        raise ValidationError("config: field 'n' is required for generation")
    if variant:
        if cfg.Qv is None:
            raise ValidationError("config: variant-generate needs a Qv section")
        g = generate_variant(cfg.P, cfg.Qv, cfg.n, cfg.delta, cfg.seed, cfg.max_attempts)
    else:
        if cfg.Q is None:
            raise ValidationError("config: generate needs a Q section")
        g = generate(cfg.P, cfg.Q, cfg.n, cfg.delta, cfg.seed, cfg.max_attempts)
    report = g.report
    erase_report = None
    if cfg.erase:
        g, erase_report = erase(g)
    summary = variant_summary(g, cfg.P, cfg.Qv) if variant else empirical_summary(g, cfg.P, cfg.Q)
    _write_graph(g, args, cfg, out_out=variant)
    stats_path = args.out_stats or cfg.outputs.get("stats")
    if stats_path:
        _emit_stats((summary, report, erase_report, variant), stats_path)
    status = "accepted" if report.accepted else "rejected, fallback graph returned"
    print(
        f"n={g.n} edges={g.num_edges} attempts={report.attempts} ({status})",
        file=sys.stderr,
    )
    return 0


def cmd_generate(args) -> int:
    return _run(args, variant=False)


def cmd_variant_generate(args) -> int:
    return _run(args, variant=True)


def cmd_calibrate(args) -> int:
    cfg = load_config(args.config, require_edges=False)
    rho = args.rho
    if rho is None:
        raise ValidationError("calibrate: --rho is required")
    rho_min, rho_max = rho_bounds(cfg.P)
    lam, Q = calibrate_lambda(cfg.P, rho)
    print(f"rho_bounds = [{rho_min!r}, {rho_max!r}]")
    print(f"lambda = {lam!r}")
    print("Q (rows k = 1..K, columns j = 1..J):")
    for row in Q.q:
        print(" ".join(f"{x:.12g}" for x in row))
    return 0


def cmd_stats(args) -> int:
    cfg = load_config(args.config)
    g = read_graph(args.in_edges, args.in_nodes)
    out_out = cfg.Qv is not None
    summary = variant_summary(g, cfg.P, cfg.Qv) if out_out else empirical_summary(g, cfg.P, cfg.Q)
    _emit_stats((summary, None, None, out_out), args.out_stats)
    return 0


def cmd_sweep(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if cfg.Q is None:
        raise ValidationError("config: sweep needs a Q section")
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise ValidationError(f"--sizes: {exc}") from exc
    rows = sweep(
        cfg.P,
        cfg.Q,
        sizes,
        args.reps,
        base_seed=cfg.seed,
        delta=cfg.delta,
        max_attempts=cfg.max_attempts,
        do_erase=cfg.erase or args.erase,
        workers=args.workers,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(rows, fh)
    else:
        write_sweep_csv(rows, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acgraph", description="Directed assortative configuration graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, outputs=True):
        p.add_argument("--config", required=True, metavar="PATH")
        p.add_argument("--seed", type=int, metavar="U64")
        p.add_argument("--retry", type=int, metavar="N", help="max sampling attempts")
        p.add_argument("--erase", action="store_true", help="erase self-loops and multi-edges")
        if outputs:
            p.add_argument("--out-edges", metavar="PATH")
            p.add_argument("--out-nodes", metavar="PATH")
            p.add_argument("--out-stats", metavar="PATH")
            p.add_argument("--format", choices=["csv", "graphml", "dot"])

    p = sub.add_parser("generate", help="generate one graph")
    common(p)
    p.add_argument("--rho", type=float, help="override Q with a target assortativity")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("variant-generate", help="generate one graph with out-out edge types")
    common(p)
    p.set_defaults(func=cmd_variant_generate)

    p = sub.add_parser("calibrate", help="mixture weight and Q for a target assortativity")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--rho", type=float)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("stats", help="statistics of an exported CSV graph")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--in-edges", required=True, metavar="PATH")
    p.add_argument("--in-nodes", required=True, metavar="PATH")
    p.add_argument("--out-stats", metavar="PATH")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="replicated runs over several sizes, CSV output")
    common(p, outputs=False)
    p.add_argument("--rho", type=float)
    p.add_argument("--sizes", required=True, metavar="CSV-list")
    p.add_argument("--reps", type=int, default=1, metavar="N")
    p.add_argument("--workers", type=int, default=1, metavar="N")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AcgraphError as exc:
        print(f"{exc.category}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"validation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
