"""Command-line interface binding generation, learning, navigation and the
experiment drivers into reproducible runs.

One master --seed drives everything: every stochastic component derives its
stream from (seed, role, index), so identical invocations produce identical
output files. Set NAVLOG=debug|info for progress logging on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import NavlearnError
from .experiments import (
    FLAG_CURVE_HEADER,
    PSI_HEADER,
    STABILITY_HEADER,
    STRETCH_HEADER,
    LearnConfig,
    build_graph,
    flag_curve_experiment,
    flag_curve_rows,
    psi_experiment,
    psi_rows,
    stability_experiment,
    stability_rows,
    stretch_experiment,
    stretch_rows,
    write_csv,
    write_json_mirror,
)
from .graph import (
    Graph,
    components,
    gen_barabasi_albert,
    gen_erdos_renyi,
    largest_component,
    read_edge_list,
    write_edge_list,
)
from .learning import build_hotspot_table, learn, load_model, pair_schedule, save_model
from .navigation import pca_navigate
from .seeds import derive_seed

log = logging.getLogger("navlearn")

MAX_VERTICES = 1_000_000


def _configure_logging() -> None:
    level = {"debug": logging.DEBUG, "info": logging.INFO}.get(
        os.environ.get("NAVLOG", "").lower(), logging.WARNING
    )
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _check_output(path: Path, force: bool) -> Path:
    if path.exists() and not force:
        raise NavlearnError(f"refusing to overwrite {path} (pass --force)")
    parent = path.parent
    if parent and not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)
    return path


def _out_file(args: argparse.Namespace, name: str) -> Path:
    return _check_output(Path(args.out) / name, args.force)


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return read_edge_list(fh)


def _load_reduced(path: str) -> Graph:
    full = _load_graph(path)
    reduced, _ = largest_component(full)
    if reduced.n < full.n:
        log.info(
            "graph is disconnected; using largest component (%d of %d vertices)",
            reduced.n, full.n,
        )
    return reduced


def _family_param(args: argparse.Namespace, family: str) -> float:
    if family == "er":
        if args.p is None:
            raise NavlearnError("--p is required for family 'er'")
        if not (0.0 <= args.p <= 1.0):
            raise NavlearnError(f"edge probability must be in [0, 1], got {args.p}")
        return args.p
    if family == "ba":
        if args.m is None:
            raise NavlearnError("--m is required for family 'ba'")
        return args.m
    raise NavlearnError(f"unknown family {family!r}")


def _validate_n(n: int) -> int:
    if not (1 <= n <= MAX_VERTICES):
        raise NavlearnError(f"n must be in 1..{MAX_VERTICES}, got {n}")
    return n


def _csv_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    n = _validate_n(args.n)
    param = _family_param(args, args.family)
    if args.family == "er":
        g = gen_erdos_renyi(n, param, args.seed)
    else:
        g = gen_barabasi_albert(n, int(param), args.seed)
    path = _check_output(Path(args.output), args.force)
    with open(path, "w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    print(f"n={g.n} m={g.m} components={len(components(g))}")
    return 0


def cmd_learn(args: argparse.Namespace) -> int:
    g = _load_reduced(args.graph)
    if g.n < 2:
        raise NavlearnError("graph has no usable component (fewer than 2 vertices)")
    pairs = pair_schedule(g.n, args.seed, args.iterations)
    log.info("learning over %d pair iterations on n=%d", len(pairs), g.n)
    model = learn(g, pairs, args.seed, workers=args.threads)
    table = build_hotspot_table(g, model, args.alpha)
    path = _check_output(Path(args.output), args.force)
    save_model(path, model, table)
    print(f"alpha={table.alpha} iterations={model.iterations_done} model={path}")
    for position, h in enumerate(table.hotspots[:10], start=1):
        print(f"hotspot {position}: vertex {h} flags {model.flags[h]}")
    return 0


def cmd_navigate(args: argparse.Namespace) -> int:
    g = _load_reduced(args.graph)
    model, table = load_model(args.model, g)
    if not (0 <= args.s < g.n and 0 <= args.t < g.n):
        raise NavlearnError(f"endpoints must be in 0..{g.n - 1}")
    outcome = pca_navigate(g, model, table, args.s, args.t)
    print(" ".join(str(v) for v in outcome.path))
    record = {
        "s": args.s,
        "t": args.t,
        "len": outcome.length,
        "mode": outcome.mode,
        "via": list(outcome.via) if outcome.via else None,
    }
    print(json.dumps(record, sort_keys=True))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    families = [part for part in args.families.split(",") if part]
    sizes = _csv_ints(args.sizes)
    for n in sizes:
        _validate_n(n)
    reports = []
    for family in families:
        param = _family_param(args, family)
        seeds = [
            derive_seed(args.seed, f"bench-{family}", i) for i in range(args.seeds)
        ]
        log.info("bench family=%s sizes=%s seeds=%d", family, sizes, args.seeds)
        reports.extend(
            stretch_experiment(
                family, sizes, param, seeds,
                pair_budget=args.pair_budget,
                iterations=args.iterations,
                workers=args.threads,
            )
        )
    rows = stretch_rows(reports)
    write_csv(_out_file(args, "stretch.csv"), STRETCH_HEADER, rows)
    write_json_mirror(
        _out_file(args, "stretch.json"), STRETCH_HEADER, rows,
        config={
            "command": "bench",
            "seed": args.seed,
            "families": families,
            "sizes": sizes,
            "p": args.p,
            "m": args.m,
            "seeds_per_cell": args.seeds,
            "pair_budget": args.pair_budget,
            "iterations": args.iterations,
        },
    )
    for r in reports:
        print(
            f"{r.family} n={r.n} seed={r.seed} beta={r.beta:.3f} "
            f"gamma={r.gamma:.3f} delta={r.delta:.3f} pairs={r.pairs_evaluated} "
            f"failures={r.failures_one_way}/{r.failures_two_way}/{r.failures_pca}"
        )
    return 0


def cmd_flags(args: argparse.Namespace) -> int:
    param = _family_param(args, args.family)
    g = build_graph(args.family, _validate_n(args.n), param,
                    derive_seed(args.seed, "flags-graph"))
    curve, alpha = flag_curve_experiment(
        g,
        LearnConfig(seed=args.seed, iterations=args.iterations,
                    workers=args.threads, alpha=args.alpha),
    )
    rows = flag_curve_rows(curve)
    write_csv(_out_file(args, "flag_curve.csv"), FLAG_CURVE_HEADER, rows)
    write_json_mirror(
        _out_file(args, "flag_curve.json"), FLAG_CURVE_HEADER, rows,
        config={
            "command": "flags",
            "seed": args.seed,
            "family": args.family,
            "n": args.n,
            "p": args.p,
            "m": args.m,
            "iterations": args.iterations,
        },
    )
    print(f"alpha={alpha} top_flag={curve[0]} vertices={len(curve)}")
    return 0


def cmd_psi(args: argparse.Namespace) -> int:
    param = _family_param(args, args.family)
    g = build_graph(args.family, _validate_n(args.n), param,
                    derive_seed(args.seed, "psi-graph"))
    checkpoints = _csv_ints(args.checkpoints)
    curve = psi_experiment(
        g, checkpoints, pair_budget=args.pair_budget, seed=args.seed,
        workers=args.threads, alpha=args.alpha,
    )
    rows = psi_rows(curve)
    write_csv(_out_file(args, "psi.csv"), PSI_HEADER, rows)
    write_json_mirror(
        _out_file(args, "psi.json"), PSI_HEADER, rows,
        config={
            "command": "psi",
            "seed": args.seed,
            "family": args.family,
            "n": args.n,
            "p": args.p,
            "m": args.m,
            "checkpoints": checkpoints,
            "pair_budget": args.pair_budget,
        },
    )
    for point in curve.checkpoints:
        print(f"k={point.k} psi={point.psi:.4f} pairs={point.pairs} "
              f"failures={point.failures}")
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    param = _family_param(args, args.family)
    g = build_graph(args.family, _validate_n(args.n), param,
                    derive_seed(args.seed, "stability-graph"))
    report = stability_experiment(
        g, args.runs,
        LearnConfig(seed=args.seed, iterations=args.iterations,
                    workers=args.threads, alpha=args.alpha),
    )
    rows = stability_rows(report)
    write_csv(_out_file(args, "stability.csv"), STABILITY_HEADER, rows)
    write_json_mirror(
        _out_file(args, "stability.json"), STABILITY_HEADER, rows,
        config={
            "command": "stability",
            "seed": args.seed,
            "family": args.family,
            "n": args.n,
            "p": args.p,
            "m": args.m,
            "runs": args.runs,
            "iterations": args.iterations,
            "alphas": report.alphas,
        },
    )
    print(f"runs={args.runs} mean_jaccard={report.mean_off_diagonal():.4f}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=1, help="master seed")
    parser.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="worker cap (results are identical for any value)",
    )
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--force", action="store_true",
                        help="overwrite existing output files")


def _add_family(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, choices=["er", "ba"])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--p", type=float, help="edge probability (er)")
    parser.add_argument("--m", type=int, help="attachment count (ba)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="navlearn",
        description="Hotspot-learning graph navigation engine and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic graph edge list")
    _add_family(p)
    p.add_argument("-o", "--output", required=True, help="edge-list file")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("learn", help="learn rewards/hotspots for a graph file")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--iterations", type=int, default=None,
                   help="pair iterations (default: exhaustive or 100n)")
    p.add_argument("--alpha", type=int, default=None,
                   help="hotspot count override (default: knee of flag curve)")
    p.add_argument("-o", "--output", required=True, help="model JSON file")
    _add_common(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("navigate", help="find a path with a learned model")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_navigate)

    p = sub.add_parser("bench", help="stretch comparison vs baselines")
    p.add_argument("--families", default="er,ba", help="comma list: er,ba")
    p.add_argument("--sizes", default="100,200,400", help="comma list of n")
    p.add_argument("--seeds", type=int, default=3, help="runs per (family, n)")
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--pair-budget", type=int, default=20_000)
    p.add_argument("--iterations", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("flags", help="flag curve and knee-selected alpha")
    _add_family(p)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--alpha", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("psi", help="center-strategic ratio vs learning budget")
    _add_family(p)
    p.add_argument("--checkpoints", default="100,300,1000,3000,10000",
                   help="comma list of ascending iteration counts (first >= 100)")
    p.add_argument("--pair-budget", type=int, default=20_000)
    p.add_argument("--alpha", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("stability", help="hotspot overlap across learning reruns")
    _add_family(p)
    p.add_argument("--runs", type=int, default=4)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--alpha", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_stability)

    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NavlearnError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
