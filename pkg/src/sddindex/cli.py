"""Command-line front end: ``sddindex {compute,verify,sweep,collapse,enumerate}``.

Exit codes: 0 success, 1 a bound or invariant failed, 2 usage error,
3 unreadable or malformed input, 4 edgeless graph given to ``verify``.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import bounds, ensembles, graph, indices
from .ensembles import CSV_FIELDS, ModelSpec, write_rows_csv

DEFAULT_SEED = 12345
DEFAULT_P_GRID = "log:0.001..1:25"
DEFAULT_VERIFY_ALPHAS = "0.25,0.5,1,2,4"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_EDGELESS = 0, 1, 2, 3, 4

INDEX_CHOICES = {
    "sdd": indices.IndexKind.SDD,
    "m1": indices.IndexKind.M1,
    "m2": indices.IndexKind.M2,
    "isd": indices.IndexKind.ISD,
    "isi": indices.IndexKind.ISI,
    "nk": indices.IndexKind.LOG_NK_STAR,
}

REPORT_FIELDS = (
    "theorem", "alpha", "beta", "lower", "value", "upper", "satisfied",
    "equality_lower", "equality_upper", "slack_lower", "slack_upper",
    "expected_equality", "has_isolated", "skipped", "note",
)


def parse_grid(text: str) -> list[float]:
    """Parse a value list.

    Comma-separated items, each a number, an inclusive linear range
    ``start..end:step``, or a log-spaced range ``log:start..end:count``.
    """
    values: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if item.startswith("log:"):
                span, count = item[4:].split(":")
                lo, hi = (float(x) for x in span.split(".."))
                if lo <= 0 or hi <= 0 or int(count) < 1:
                    raise ValueError
                values.extend(ensembles.log_grid(lo, hi, int(count)))
            elif ".." in item:
                span, step = item.split(":") if ":" in item else (item, "1")
                lo, hi = (float(x) for x in span.split(".."))
                step = float(step)
                if step <= 0 or hi < lo:
                    raise ValueError
                count = int(math.floor((hi - lo) / step + 1e-9)) + 1
                values.extend(round(lo + i * step, 12) for i in range(count))
            else:
                values.append(float(item))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid grid item {item!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def _emit(rows: list[dict], fields: Sequence[str], fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        write_rows_csv(rows, fields, buf)
        text = buf.getvalue()
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load(path: str, relabel: bool) -> graph.Graph:
    return graph.read_edge_list(path, relabel=relabel)


def cmd_compute(args) -> int:
    g = _load(args.input, args.relabel)
    kinds = list(INDEX_CHOICES.values()) if args.index == "all" else [INDEX_CHOICES[args.index]]
    rows = []
    for kind in kinds:
        if kind in (indices.IndexKind.ISI, indices.IndexKind.LOG_NK_STAR):
            r = indices.compute(g, kind)
            rows.append({"index": kind.value, "alpha": r.alpha, "value": r.value})
            continue
        for a in args.alpha:
            r = indices.compute(g, kind, a)
            rows.append({"index": kind.value, "alpha": r.alpha, "value": r.value})
    _emit(rows, ("index", "alpha", "value"), args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.input, args.relabel)
    if g.m == 0:
        print("error: graph has no edges; bounds need at least one", file=sys.stderr)
        return EXIT_EDGELESS
    reports = bounds.check_all(g, args.alpha)
    rows = [r.as_dict() for r in reports]
    _emit(rows, REPORT_FIELDS, args.format, args.out)
    ok = all(r.satisfied and r.equality_consistent for r in reports)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.model == "er":
        if args.n is None:
            raise argparse.ArgumentTypeError("sweep er needs --n")
        model = ModelSpec.er(args.n, 0.0)
    else:
        if args.n1 is None or args.n2 is None:
            raise argparse.ArgumentTypeError("sweep br needs --n1 and --n2")
        model = ModelSpec.bipartite(args.n1, args.n2, 0.0)
    p_grid = args.p if args.p is not None else parse_grid(args.p_grid)
    p_grid = sorted(p_grid)
    if any(not 0.0 <= p <= 1.0 for p in p_grid):
        raise argparse.ArgumentTypeError("p values must lie in [0, 1]")
    if any(a < 0 for a in args.alpha):
        raise argparse.ArgumentTypeError("alphas must be >= 0")
    replicas = args.replicas or ensembles.default_replicas(model.order)
    rows = ensembles.sweep(model, p_grid, args.alpha, replicas, args.seed, args.workers)
    _emit([r.as_dict() for r in rows], CSV_FIELDS, args.format, args.out)
    return EXIT_OK


COLLAPSE_FIELDS = ("model", "n", "alpha", "mean_degree", "mean_sdd_over_n", "ratio")


def cmd_collapse(args) -> int:
    rows = []
    for path in args.inputs:
        with open(path, encoding="utf-8") as fh:
            try:
                rows.extend(ensembles.read_sweep_csv(fh))
            except ValueError as exc:
                print(f"error: {path}: {exc}", file=sys.stderr)
                return EXIT_INPUT
    points = ensembles.collapse(rows)
    out = [
        {
            "model": c.model, "n": c.n, "alpha": c.alpha, "mean_degree": c.mean_degree,
            "mean_sdd_over_n": c.mean_sdd_over_n, "ratio": c.ratio,
        }
        for c in points
    ]
    _emit(out, COLLAPSE_FIELDS, args.format, args.out)
    if len({c.n for c in points}) > 1:
        for a in sorted({c.alpha for c in points}):
            spread = ensembles.collapse_spread(points, a)
            print(f"alpha={a:g} max relative spread between sizes: {spread:.4%}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if not 2 <= args.max_n <= 7:
        raise argparse.ArgumentTypeError("--max-n must be between 2 and 7")
    exhaustive_top = min(args.max_n, 5)

    def graphs():
        for n in range(2, exhaustive_top + 1):
            yield from graph.all_labeled_graphs(n)
        if args.max_n > 5 and args.samples:
            rng = np.random.default_rng(args.seed)
            sizes = list(range(6, args.max_n + 1))
            for i in range(args.samples):
                yield graph.random_labeled_graph(sizes[i % len(sizes)], rng, rng.uniform(0.1, 0.9))

    summary = bounds.certify(graphs(), args.alpha)
    for g, what in summary.failures:
        label = what if isinstance(what, str) else f"{what.theorem.value} alpha={what.alpha:g}"
        print(f"failure: {label} on edges {g.edge_list()}", file=sys.stderr)
    _emit([summary.as_dict()], tuple(summary.as_dict()), args.format, args.out)
    return EXIT_OK if summary.clean else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sddindex",
        description="Variable symmetric division deg index: indices, bounds and random-graph sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha_default):
        p.add_argument("--alpha", "--alphas", dest="alpha", type=parse_grid, default=parse_grid(alpha_default),
                       help="exponents: comma list, start..end:step, or log:start..end:count")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("compute", help="compute indices on an edge-list file")
    p.add_argument("input")
    p.add_argument("--index", choices=[*INDEX_CHOICES, "all"], default="sdd")
    p.add_argument("--relabel", action="store_true", help="compact sparse vertex ids")
    common(p, "1")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="evaluate every inequality on an edge-list file")
    p.add_argument("input")
    p.add_argument("--relabel", action="store_true")
    common(p, DEFAULT_VERIFY_ALPHAS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="ensemble averages over a grid of edge probabilities")
    p.add_argument("model", choices=("er", "br"))
    p.add_argument("--n", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--p", type=parse_grid, default=None, help="explicit p values")
    p.add_argument("--p-grid", default=DEFAULT_P_GRID, help=f"p grid (default {DEFAULT_P_GRID})")
    p.add_argument("--replicas", type=int, default=None,
                   help=f"replicas per cell (default ceil(budget/n), budget from ${ensembles.REPLICA_BUDGET_ENV} or 10^6)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    common(p, "0..4:0.5")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("collapse", help="merge sweep CSVs into <SDD>/n versus mean degree")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("enumerate", help="check every inequality on all small labelled graphs")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--samples", type=int, default=0, help="random 6-7 vertex graphs when --max-n > 5")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p, DEFAULT_VERIFY_ALPHAS)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (OSError, graph.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (bounds.ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
