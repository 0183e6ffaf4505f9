"""Command-line interface.

    dirnull stats INPUT                 measure an edge list
    dirnull generate --model frd ...    build a null-model replica
    dirnull expected --dists F ...      predict realized degree counts
    dirnull compare A B                 log-binned side-by-side comparison

Exit codes: 0 ok, 2 usage, 3 unreadable/malformed input, 4 invalid target
distributions, 5 compare tolerance exceeded, 6 compare supports disagree.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import secrets
import sys

from dirnull.errors import DistributionError, GraphInputError
from dirnull.expectation import DEFAULT_X_MAX, expected_realized_counts
from dirnull.generators import DEFAULT_BLOWUP, GenerationConfig, fd_generate, frd_generate
from dirnull.graph_core import KINDS, compute_stats
from dirnull.graph_io import (
    STATS_HEADER,
    export_stats,
    load_graph,
    log_bin,
    read_stats,
    write_edge_list,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_VALIDATION = 4
EXIT_TOLERANCE = 5
EXIT_SUPPORT = 6

DEFAULT_TOLERANCE = 0.15
DEFAULT_MIN_COUNT = 50


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_target(path):
    """Histograms from either a stats document or an edge-list file."""
    with open(path) as fh:
        first = fh.readline()
    if first.strip() == STATS_HEADER:
        with open(path) as fh:
            try:
                return read_stats(fh).histograms
            except GraphInputError as exc:
                raise GraphInputError(f"{path}: {exc}") from None
    g, _ = load_graph(path)
    return compute_stats(g).histograms


def cmd_stats(args) -> int:
    g, _ = load_graph(args.input)
    with _open_out(args.output) as out:
        export_stats(compute_stats(g), stream=out)
    return EXIT_OK


def cmd_generate(args) -> int:
    hists = _load_target(args.input or args.dists)
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    print(f"seed\t{seed}", file=sys.stderr)
    b = args.blowup
    cfg = GenerationConfig(
        b_rec=args.blowup_rec or b,
        b_in=args.blowup_in or b,
        b_out=args.blowup_out or b,
        seed=seed,
        n=args.nodes,
        shared_reciprocal_labels=not args.independent_reciprocal_labels,
    )
    needed = ("total-in", "total-out") if args.model == "fd" else ("rec", "in", "out")
    missing = [k for k in needed if k not in hists]
    if missing:
        raise DistributionError(f"target lacks distributions: {', '.join(missing)}")
    if args.model == "fd":
        g, report = fd_generate(hists["total-in"], hists["total-out"], cfg)
    else:
        g, report = frd_generate(hists["rec"], hists["in"], hists["out"], cfg)
    with _open_out(args.output) as out:
        write_edge_list(g, out, header=f"model: {args.model} seed: {seed}")
    if args.report:
        with open(args.report, "w") as fh:
            export_stats(compute_stats(g), report, fh)
    print(
        f"emitted {report.emitted_edges} of {report.requested_edges} edges "
        f"in {report.elapsed:.3f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_expected(args) -> int:
    hists = _load_target(args.input or args.dists)
    if args.kind not in hists:
        raise DistributionError(f"target lacks the {args.kind} distribution")
    hist = hists[args.kind]
    exp = expected_realized_counts(hist, args.blowup, args.xmax)
    with _open_out(args.output) as out:
        out.write(f"# kind: {args.kind} blowup: {args.blowup} slots: {exp.total_slots}\n")
        out.write("x\ttarget\texpected\n")
        for x in range(exp.x_max + 1):
            out.write(f"{x}\t{hist[x]}\t{exp[x]:.6f}\n")
        out.write(f"# tail (x > {exp.x_max}): {exp.tail:.6g}\n")
    return EXIT_OK


def _rel_err(a: int, b: int) -> float:
    if a == 0:
        return 0.0 if b == 0 else math.inf
    return (b - a) / a


def compare_histograms(hists_a, hists_b, kinds, min_count=DEFAULT_MIN_COUNT):
    """Per-kind rows ``(lo, hi, count_a, count_b, rel_err, gated)`` plus the
    worst gated relative error and whether any sizeable bin is missing on one
    side.  Graph A is the reference."""
    out = {}
    for kind in kinds:
        a = log_bin(hists_a[kind]).as_dict()
        b = log_bin(hists_b[kind]).as_dict()
        rows = []
        worst = 0.0
        absent = False
        for lo in sorted(set(a) | set(b)):
            ca, cb = a.get(lo, 0), b.get(lo, 0)
            err = _rel_err(ca, cb)
            gated = ca >= min_count
            if (gated and cb == 0) or (cb >= min_count and ca == 0):
                absent = True
            if gated:
                worst = max(worst, abs(err))
            rows.append((lo, 2 * lo, ca, cb, err, gated))
        out[kind] = (rows, worst, absent)
    return out


def _fmt_err(err: float) -> str:
    return "inf" if math.isinf(err) else format(err, ".6f")


def cmd_compare(args) -> int:
    hists_a = _load_target(args.graph_a)
    hists_b = _load_target(args.graph_b)
    kinds = args.kinds.split(",") if args.kinds else list(KINDS)
    for k in kinds:
        if k not in KINDS:
            raise DistributionError(f"unknown kind {k!r}")
        if k not in hists_a or k not in hists_b:
            raise DistributionError(f"{k} distribution missing from an input")
    result = compare_histograms(hists_a, hists_b, kinds, args.min_count)
    status = EXIT_OK
    with _open_out(args.output) as out:
        out.write(f"# compare tolerance: {args.tolerance} min_count: {args.min_count}\n")
        for kind in kinds:
            rows, worst, absent = result[kind]
            out.write(f"[{kind}]\nlo\thi\tcount_a\tcount_b\trel_err\tgated\n")
            for lo, hi, ca, cb, err, gated in rows:
                mark = "absent" if (ca == 0) != (cb == 0) else ("yes" if gated else "no")
                out.write(f"{lo}\t{hi}\t{ca}\t{cb}\t{_fmt_err(err)}\t{mark}\n")
        out.write("[summary]\nkind\tmax_rel_err\tverdict\n")
        for kind in kinds:
            _, worst, absent = result[kind]
            if absent:
                verdict = "support-mismatch"
                status = EXIT_SUPPORT
            elif worst > args.tolerance:
                verdict = "fail"
                if status == EXIT_OK:
                    status = EXIT_TOLERANCE
            else:
                verdict = "pass"
            out.write(f"{kind}\t{_fmt_err(worst)}\t{verdict}\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirnull",
        description="Directed null-model graphs matching in-, out- and reciprocal-degree distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=_seed, help="unsigned 64-bit seed; random if omitted")
        p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("stats", help="measure an edge-list file")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="generate an FD or FRD replica")
    p.add_argument("--model", choices=("fd", "frd"), default="frd")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge list whose distributions are the target")
    src.add_argument("--dists", help="stats document whose distributions are the target")
    p.add_argument("--blowup", type=_positive_int, default=DEFAULT_BLOWUP)
    p.add_argument("--blowup-rec", type=_positive_int)
    p.add_argument("--blowup-in", type=_positive_int)
    p.add_argument("--blowup-out", type=_positive_int)
    p.add_argument("--nodes", type=_positive_int, help="node count (default: from target)")
    p.add_argument("--report", help="write stats and generation report here")
    p.add_argument(
        "--independent-reciprocal-labels",
        action="store_true",
        help="relabel the two reciprocal halves independently",
    )
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("expected", help="expected realized degree counts for a target")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dists")
    src.add_argument("--input")
    p.add_argument("--kind", choices=KINDS, default="total-in")
    p.add_argument("--blowup", type=_positive_int, default=DEFAULT_BLOWUP)
    p.add_argument("--xmax", type=_positive_int, default=DEFAULT_X_MAX)
    common(p)
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("compare", help="compare log-binned distributions of two graphs")
    p.add_argument("graph_a", help="reference edge list or stats document")
    p.add_argument("graph_b")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--min-count", type=int, default=DEFAULT_MIN_COUNT)
    p.add_argument("--kinds", help=f"comma-separated subset of {','.join(KINDS)}")
    common(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphInputError, OSError) as exc:
        print(f"dirnull: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DistributionError as exc:
        print(f"dirnull: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
