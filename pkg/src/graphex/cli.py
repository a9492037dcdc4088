"""Command-line surface.

Subcommands: simulate, sample, estimate, sequence, verify.  Exit codes:
0 success, 1 verification failure, 2 bad config or input, 3 I/O error.
When --seed is omitted the value is taken from the model config (if any),
then the GRAPHEX_SEED environment variable, then 0.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io as gio
from .errors import GraphexError, TrivialGraphexError, UnknownSuiteError
from .estimate import dilated_empirical_graphon, empirical_graphon
from .graphs import forget_labels
from .rng import RngStream
from .sample import p_sample
from .simulate import SimConfig, simulate
from .verify import SuiteConfig, bonferroni_passed, run_suite, suite_names

_DEFAULT_EPSILON = 1e-3


def _resolve_seed(flag_value, config_value=None) -> int:
    if flag_value is not None:
        return flag_value
    if config_value is not None:
        return config_value
    env = os.environ.get("GRAPHEX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise GraphexError(f"GRAPHEX_SEED must be an integer, got {env!r}") from None
    return 0


def _cmd_simulate(args) -> int:
    gx, cfg_eps, cfg_seed = gio.load_model_config(args.model)
    if not gx.nontrivial():
        raise TrivialGraphexError("model config describes a trivial graphex")
    seed = _resolve_seed(args.seed, cfg_seed)
    epsilon = args.epsilon if args.epsilon is not None else (cfg_eps or _DEFAULT_EPSILON)
    graph = simulate(gx, SimConfig(size=args.size, epsilon=epsilon, seed=seed))
    unlabeled = forget_labels(graph)
    gio.write_labeled_csv(f"{args.out}.labeled.csv", graph)
    gio.write_edge_list(f"{args.out}.edges.txt", unlabeled)
    gio.write_manifest(
        f"{args.out}.manifest.json",
        {
            "seed": seed,
            "epsilon": epsilon,
            "size": args.size,
            "edges": unlabeled.n_edges,
            "vertices": unlabeled.n_vertices,
            "component_counts": graph.component_counts(),
        },
    )
    return 0


def _cmd_sample(args) -> int:
    g = gio.read_edge_list(args.graph)
    seed = _resolve_seed(args.seed)
    sampled = p_sample(g, args.p, RngStream(seed))
    gio.write_edge_list(args.out, sampled.canonical())
    gio.write_manifest(
        f"{args.out}.manifest.json",
        {"p": args.p, "seed": seed, "edges": sampled.n_edges, "vertices": sampled.n_vertices},
    )
    return 0


def _cmd_estimate(args) -> int:
    g = gio.read_edge_list(args.graph)
    if g.n_vertices == 0:
        raise GraphexError("cannot estimate from an empty graph")
    if args.no_size:
        pg = empirical_graphon(g)
    else:
        pg = dilated_empirical_graphon(g, args.size)
    gio.write_pixel(f"{args.out}.csv", pg)
    gio.write_pgm(f"{args.out}.pgm", pg)
    return 0


def _cmd_sequence(args) -> int:
    g = gio.read_labeled_csv(args.labeled)
    gio.write_sequence_blocks(args.out, g)
    return 0


def _cmd_verify(args) -> int:
    model = None
    cfg_seed = None
    if args.model is not None:
        model, _, cfg_seed = gio.load_model_config(args.model)
    seed = _resolve_seed(args.seed, cfg_seed)
    cfg = SuiteConfig(seed=seed, replicates=args.replicates, model=model)
    reports = run_suite(args.suite, cfg)
    if args.out:
        gio.write_report_csv(args.out, reports, seed)
    for rep in reports:
        status = "pass" if rep.passed else "FAIL"
        print(f"[{status}] {rep.suite}/{rep.name}: observed={rep.observed:.6g} threshold={rep.threshold:.6g}")
    print(f"bonferroni-adjusted outcome: {'pass' if bonferroni_passed(reports) else 'FAIL'}")
    return 0 if all(rep.passed for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphex",
        description="Simulate, subsample, estimate, and verify sparse exchangeable graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="generate a graph from a model config")
    p_sim.add_argument("model", help="JSON model config")
    p_sim.add_argument("--size", type=float, required=True)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--epsilon", type=float, default=None)
    p_sim.add_argument("--out", required=True, help="output file prefix")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sam = sub.add_parser("sample", help="p-sample an edge list")
    p_sam.add_argument("graph", help="edge list file")
    p_sam.add_argument("--p", type=float, required=True)
    p_sam.add_argument("--seed", type=int, default=None)
    p_sam.add_argument("--out", required=True)
    p_sam.set_defaults(func=_cmd_sample)

    p_est = sub.add_parser("estimate", help="empirical graphon of an edge list")
    p_est.add_argument("graph", help="edge list file")
    group = p_est.add_mutually_exclusive_group(required=True)
    group.add_argument("--size", type=float, help="known observation size (dilated estimator)")
    group.add_argument("--no-size", action="store_true", help="unknown size (cells of width 1/v)")
    p_est.add_argument("--out", required=True, help="output file prefix")
    p_est.set_defaults(func=_cmd_estimate)

    p_seq = sub.add_parser("sequence", help="jump-time blocks of a labeled CSV")
    p_seq.add_argument("labeled", help="labeled edge CSV")
    p_seq.add_argument("--out", required=True)
    p_seq.set_defaults(func=_cmd_sequence)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, help=f"one of: {', '.join(suite_names())}")
    p_ver.add_argument("--model", default=None, help="optional JSON model config")
    p_ver.add_argument("--replicates", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--out", default=None, help="report CSV path")
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
