"""Command line: ring info, single counts, golden tables and cross-checks.

Exit status is 0 when everything passes, 1 on a count mismatch or failed
property, and 2 on usage, parse or build errors.
"""

from __future__ import annotations

import argparse
import sys

from .. import enumeration as E
from ..rings import build_ring, nonunits, parse_spec
from .compute import RunConfig, default_target
from .crosscheck import crosscheck
from .golden import TABLE_NAMES, load_table
from .records import FORMATS, serialize
from .runner import canonical, count_records, open_cache, table_records

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _global_flags(suppress):
    # accepted both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--budget-brute", type=_positive, default=d(E.BRUTE_BUDGET),
                   help="max leaves for brute force (default %(default)s)")
    p.add_argument("--budget-sl2", type=_positive, default=d(E.SL2_MAX_RING),
                   help="max ring size for the SL_2 table behind the DP")
    p.add_argument("--ring-cap", type=_positive, default=d(4096), help="max ring size to build")
    p.add_argument("--workers", type=_positive, default=d(1), help="processes for table cells")
    p.add_argument("--cache", default=d(None), metavar="PATH", help="JSON result cache")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="continuants", parents=[_global_flags(False)],
        description="Count continuant roots and lambda-quiddities over finite rings.")
    common = [_global_flags(True)]
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", parents=common, help="ring information")
    ring_sub = ring.add_subparsers(dest="ring_command", required=True)
    info = ring_sub.add_parser("info", parents=common, help="size, units, locality")
    info.add_argument("spec")

    count = sub.add_parser("count", parents=common, help="one count")
    count.add_argument("kind", choices=("roots", "quiddity", "sum-w"))
    count.add_argument("--ring", required=True)
    count.add_argument("--n", type=_positive, required=True)
    count.add_argument("--target", help="element literal (default 0 for roots, 1 for quiddity)")
    count.add_argument("--method", default="auto", choices=("auto", "brute", "dp", "formula", "all"))
    count.add_argument("--format", default="csv", choices=sorted(FORMATS))

    table = sub.add_parser("table", parents=common, help="recompute a published table")
    table.add_argument("--name", required=True, choices=TABLE_NAMES)
    table.add_argument("--format", default="csv", choices=sorted(FORMATS))
    table.add_argument("--method", default="auto", choices=("auto", "brute", "dp", "formula"))

    cc = sub.add_parser("crosscheck", parents=common, help="run the property suites on one ring")
    cc.add_argument("--ring", required=True)
    cc.add_argument("--max-n", type=_positive, required=True)
    return parser


def _config(args):
    return RunConfig(brute_budget=args.budget_brute, sl2_max_ring=args.budget_sl2,
                     ring_cap=args.ring_cap, workers=args.workers, cache=args.cache)


def cmd_ring_info(args, cfg, out):
    ring = build_ring(parse_spec(args.spec), cfg.ring_cap)
    non = nonunits(ring)
    out.write(f"ring: {ring.name}\n")
    out.write(f"size: {ring.size}\n")
    out.write(f"units: {ring.n_units}\n")
    out.write(f"nonunits: {len(non)}\n")
    out.write(f"is_local: {str(ring.is_local).lower()}\n")
    out.write(f"q: {ring.residue_size if ring.is_local else '-'}\n")
    out.write("sample nonunits: " + ", ".join(ring.format(int(a)) for a in non[:6]) + "\n")
    return EXIT_OK


def cmd_count(args, cfg, out):
    kind = args.kind.replace("-", "_")
    target = args.target if args.target is not None else default_target(kind)
    if kind == "sum_w":
        target = ""
    else:
        build_ring(parse_spec(args.ring), cfg.ring_cap).element(target)  # validate early
    cache = open_cache(cfg)
    recs = count_records(args.ring, args.n, kind, target, args.method, cfg, cache)
    if cache is not None:
        cache.save()
    out.write(serialize(recs, args.format))
    if all(r.value is None for r in recs):
        sys.stderr.write(f"no method could compute this count: {recs[0].status}\n")
        return EXIT_USAGE
    return EXIT_MISMATCH if any(r.failed for r in recs) else EXIT_OK


def cmd_table(args, cfg, out):
    cache = open_cache(cfg)
    recs = table_records(args.name, cfg, cache, args.method)
    if cache is not None:
        cache.save()
    out.write(serialize(recs, args.format))
    return EXIT_MISMATCH if any(r.failed for r in recs) else EXIT_OK


def cmd_crosscheck(args, cfg, out):
    ring = build_ring(parse_spec(args.ring), cfg.ring_cap)
    out.write(f"crosscheck {canonical(args.ring)} max_n={args.max_n}\n")
    results = crosscheck(ring, args.max_n, cfg)
    for r in results:
        out.write(r.line() + "\n")
    return EXIT_MISMATCH if any(r.status == "FAIL" for r in results) else EXIT_OK


COMMANDS = {"count": cmd_count, "table": cmd_table, "crosscheck": cmd_crosscheck}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "ring":
            return cmd_ring_info(args, cfg, out)
        return COMMANDS[args.command](args, cfg, out)
    except (ValueError, KeyError, OSError, E.BudgetExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
