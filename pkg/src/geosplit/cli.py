"""Batch front end.

Exit codes: 0 success, 1 usage error, 2 resource cap exceeded, 3 internal
consistency failure (e.g. the cycle and Moebius routes disagreeing, or a
stale census cache).  All output orderings are fixed, so identical flags
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .census import (
    census_payload,
    density_table,
    density_table_closed_form,
    density_table_composite,
    load_census,
    write_census,
)
from .core import (
    CapExceeded,
    ConsistencyError,
    Family,
    IntegerMatrix,
    SubgroupSpec,
    factorize,
    partition_str,
)
from .cosets import build_coset_table, splitting_type_cycles, splitting_type_moebius
from .core import order_in_xi_tuple
from .geodesics import empirical_tally, tally_json, tally_tsv
from .zeta import ClassData, ratio_identity_check, venkov_zograf_check

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_INCONSISTENT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _family(value):
    try:
        return Family(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown family {value!r}")


def build_parser():
    parser = _Parser(prog="geosplit", description=__doc__)
    parser.add_argument("--cache-dir", default=".geosplit-cache",
                        help="census cache directory (GEODESIC_CACHE_DIR overrides)")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallelism degree for the trace enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("densities", help="theoretical density table")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--closed-form", action="store_true",
                   help="also compute the closed-form table and diff it")
    p.add_argument("--composite", action="store_true",
                   help="assemble the table by coprime-factor convolution")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--output", default=None)

    p = sub.add_parser("type", help="splitting type of one matrix")
    p.add_argument("--matrix", required=True, help="a,b,c,d with det 1")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--level", type=int, required=True)

    p = sub.add_parser("empirical", help="empirical vs theoretical densities")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--scan-anomalous", action="store_true")
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.add_argument("--output", default=None)

    p = sub.add_parser("census", help="write or verify the census cache")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--family", type=_family, default=Family.GAMMA0)
    p.add_argument("--trust-cache", action="store_true",
                   help="accept an existing cache file without recomputation")

    p = sub.add_parser("zeta-check", help="numerical zeta identity checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--check", choices=("ratio", "venkov"), default="ratio")
    p.add_argument("--family", type=_family, default=Family.GAMMA1,
                   help="cover family for --check venkov")
    p.add_argument("--level", type=int, default=None,
                   help="cover level for --check venkov (default: p)")
    return parser


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_rows(table):
    rows = []
    for lam in sorted(table.entries, reverse=True):
        frac = table.entries[lam]
        rows.append((partition_str(lam), f"{frac.numerator}/{frac.denominator}"))
    return rows


def _table_text(table, fmt):
    rows = _table_rows(table)
    if fmt == "tsv":
        lines = ["partition\tdensity"]
        lines += [f"{a}\t{b}" for a, b in rows]
        return "\n".join(lines) + "\n"
    doc = {
        "family": table.subgroup.family.value,
        "level": table.subgroup.level,
        "xi_order": table.xi_order,
        "index": table.index,
        "densities": dict(rows),
    }
    return json.dumps(doc, indent=2) + "\n"


def cmd_densities(args):
    spec = SubgroupSpec(args.family, args.level)
    if args.composite:
        if len(factorize(args.level)) < 2:
            print("error: --composite needs a level with at least two prime factors",
                  file=sys.stderr)
            return EXIT_USAGE
        table = density_table_composite(spec)
    else:
        table = density_table(spec)
    out = _table_text(table, args.format)
    if args.closed_form:
        closed = density_table_closed_form(spec)
        out += _table_text(closed, args.format)
        diff = {
            lam: (table.entries.get(lam), closed.entries.get(lam))
            for lam in set(table.entries) | set(closed.entries)
            if table.entries.get(lam) != closed.entries.get(lam)
        }
        out += f"closed-form diff entries: {len(diff)}\n"
        if diff:
            _emit(out, args.output)
            print("error: closed-form table disagrees with the census", file=sys.stderr)
            return EXIT_INCONSISTENT
    _emit(out, args.output)
    return EXIT_OK


def cmd_type(args):
    try:
        a, b, c, d = (int(v) for v in args.matrix.split(","))
        m = IntegerMatrix(a, b, c, d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    spec = SubgroupSpec(args.family, args.level)
    table = build_coset_table(spec)
    g = m.reduce_mod(args.level).tuple
    lam_cycles = splitting_type_cycles(g, table)
    lam_moebius = splitting_type_moebius(g, table)
    print(partition_str(lam_cycles))
    print(f"moebius: {partition_str(lam_moebius)}")
    print(f"M(gamma): {order_in_xi_tuple(g, args.level)}")
    if lam_cycles != lam_moebius:
        print("error: cycle and Moebius types disagree", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_empirical(args):
    spec = SubgroupSpec(args.family, args.level)
    theory = density_table(spec)
    tally = empirical_tally(spec, args.x, jobs=args.jobs,
                            scan_anomalous=args.scan_anomalous)
    text = tally_tsv(tally, theory) if args.format == "tsv" else tally_json(tally, theory)
    _emit(text, args.output)
    return EXIT_OK


def _cache_dir(args):
    return os.environ.get("GEODESIC_CACHE_DIR") or args.cache_dir


def cmd_census(args):
    cache_dir = _cache_dir(args)
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"census-{args.family.value}-{args.level}.json")
    if os.path.exists(path):
        cached = load_census(path)
        if args.trust_cache:
            print(f"cache trusted: {path}")
            return EXIT_OK
        fresh = census_payload(args.family, args.level)
        if cached == fresh:
            print(f"cache verified: {path}")
            return EXIT_OK
        print(f"error: stale census cache {path}", file=sys.stderr)
        return EXIT_INCONSISTENT
    payload = census_payload(args.family, args.level)
    write_census(path, payload)
    print(f"cache written: {path} ({len(payload['classes'])} classes)")
    return EXIT_OK


def cmd_zeta_check(args):
    if args.check == "ratio":
        result = ratio_identity_check(args.p, args.s, args.x, jobs_data(args))
    else:
        level = args.level if args.level is not None else args.p
        spec = SubgroupSpec(args.family, level)
        result = venkov_zograf_check(args.s, args.x, spec, jobs_data(args))
        result = {"p": args.p, "s": args.s, "cutoff": float(args.x),
                  "family": args.family.value, "level": level, **result}
    sys.stdout.write(json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def jobs_data(args):
    return ClassData(args.x, jobs=args.jobs)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "densities": cmd_densities,
        "type": cmd_type,
        "empirical": cmd_empirical,
        "census": cmd_census,
        "zeta-check": cmd_zeta_check,
    }
    try:
        return handlers[args.command](args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
