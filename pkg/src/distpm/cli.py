"""Command-line front end.

Exit codes: 0 success, 1 a discrepancy or counterexample was found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Iterable, Sequence

from distpm import reports
from distpm.graph import (
    Family,
    FamilyParams,
    Graph,
    all_pairs_distances,
    build_family,
    is_connected,
    read_graph6_lines,
    two_coloring,
    wiener_index,
    write_graph6,
)
from distpm.matching import MAX_TUTTE_ORDER, maximum_matching, tutte_witness
from distpm.spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, perron_estimate, rayleigh_floor
from distpm.verifier import (
    CLAIM_IDS,
    COMPUTED,
    PAPER_SPLIT,
    Verdict,
    audit_closed_forms,
    certify_bipartite,
    certify_general,
    sweep,
    verify_claim,
)

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2

KIND_NAMES = {
    "complete": Family.COMPLETE,
    "empty": Family.EMPTY,
    "complete-bipartite": Family.COMPLETE_BIPARTITE,
    "path": Family.PATH,
    "snk": Family.SNK,
    "gstar": Family.GSTAR,
    "gtilde": Family.GTILDE,
    "gdoubleprime": Family.GDOUBLEPRIME,
    "gprime": Family.GPRIME,
    "bsp": Family.BSP,
}
for _f in Family:
    KIND_NAMES.setdefault(_f.value.lower(), _f)

MODE_NAMES = {"paper": PAPER_SPLIT, PAPER_SPLIT: PAPER_SPLIT, COMPUTED: COMPUTED}


class UsageError(ValueError):
    pass


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def parse_range(text: str) -> list[int]:
    """``"4..20"``, ``"4..20:2"`` or ``"7"``."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*(?::\s*(\d+)\s*)?)?", text)
    if not m:
        raise UsageError(f"bad range {text!r} (expected a..b, a..b:step or a)")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    step = int(m.group(3) or 1)
    if step < 1:
        raise UsageError("range step must be >= 1")
    return list(range(lo, hi + 1, step))


def parse_grid(text: str) -> dict[str, list[int]]:
    """``"n=4..20,s=1..3"`` to ``{"n": [4..20], "s": [1, 2, 3]}``."""
    grid: dict[str, list[int]] = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or name.strip() not in ("n", "s", "q", "p"):
            raise UsageError(f"bad grid item {item!r} (expected n=, s=, q= or p=)")
        grid[name.strip()] = parse_range(value)
    if "n" not in grid:
        raise UsageError("grid needs an n range")
    return grid


def _parse_params(text: str) -> dict[str, object]:
    out: dict[str, object] = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad parameter {item!r} (expected name=value)")
        name = name.strip()
        if name == "parts":
            out[name] = tuple(int(v) for v in re.split(r"[/ ]+", value.strip()) if v)
        elif name in ("n", "k", "s", "q", "p", "a", "b"):
            out[name] = int(value)
        else:
            raise UsageError(f"unknown parameter {name!r}")
    return out


def _graph_lines(source: str, stdin) -> Iterable[tuple[int, str]]:
    if source == "-":
        for lineno, line in enumerate(stdin, 1):
            if line.strip():
                yield lineno, line
    else:
        yield 1, source


def _graphs(source: str, stdin) -> list[Graph]:
    out = []
    for lineno, line in _graph_lines(source, stdin):
        for _, item in read_graph6_lines([line]):
            if isinstance(item, Exception):
                raise UsageError(f"line {lineno}: {item}")
            out.append(item)
    if not out:
        raise UsageError("no graph given")
    return out


# -- subcommands ---------------------------------------------------------------------

def _analysis(g: Graph, tol: float, max_iter: int) -> dict:
    if not is_connected(g):
        raise UsageError(f"{write_graph6(g)}: graph is disconnected; distance undefined")
    d = all_pairs_distances(g)
    est = perron_estimate(d, tol, max_iter)
    w = wiener_index(d)
    m = maximum_matching(g)
    pm = 2 * m.size == g.n
    witness = None
    if not pm and g.n % 2 == 0 and g.n <= MAX_TUTTE_ORDER:
        witness = tutte_witness(g)
    rows = d.row_sums()
    return {
        "graph6": write_graph6(g),
        "n": g.n,
        "edges": g.edge_count(),
        "lambda1": reports.estimate_dict(est),
        "wiener": w,
        "rayleigh_floor": reports.real(rayleigh_floor(w, g.n)),
        "transmission_regular": bool(rows.min() == rows.max()),
        "bipartite": two_coloring(g) is not None,
        "matching_number": m.size,
        "pm": pm,
        "witness": reports.witness_dict(witness),
    }


def cmd_analyze(args, out, stdin) -> int:
    items = [_analysis(g, args.tol, args.max_iter) for g in _graphs(args.graph, stdin)]
    if args.format == "json":
        out.write(reports.dumps(items if len(items) > 1 else items[0]))
    elif args.format == "csv":
        out.write("graph6,n,lambda1,lambda1_lo,lambda1_hi,wiener,pm\n")
        for a in items:
            lam = a["lambda1"]
            out.write(f"{a['graph6']},{a['n']},{lam['value']},{lam['lo']},{lam['hi']},"
                      f"{a['wiener']},{str(a['pm']).lower()}\n")
    else:
        for a in items:
            lam = a["lambda1"]
            out.write(
                f"graph    {a['graph6']}  (n = {a['n']}, {a['edges']} edges)\n"
                f"lambda1  {lam['value']}  in [{lam['lo']}, {lam['hi']}]\n"
                f"wiener   {a['wiener']}  (2W/n = {a['rayleigh_floor']})\n"
                f"pm       {str(a['pm']).lower()}  (matching number {a['matching_number']})\n"
            )
            if a["witness"]:
                out.write(f"witness  S = {a['witness']['S']}, odd components {a['witness']['odd_components']}\n")
    return EXIT_OK


def _family_params(args) -> FamilyParams:
    try:
        kind = KIND_NAMES[args.kind.lower()]
    except KeyError:
        raise UsageError(f"unknown family {args.kind!r}; choose from {', '.join(sorted(KIND_NAMES))}") from None
    fields = _parse_params(args.params) if args.params else {}
    for name in ("n", "k", "s", "q", "p", "a", "b"):
        value = getattr(args, name)
        if value is not None:
            fields[name] = value
    if args.parts:
        fields["parts"] = tuple(int(v) for v in re.split(r"[,/ ]+", args.parts.strip()) if v)
    return FamilyParams(kind, **fields)


def cmd_family(args, out, stdin) -> int:
    params = _family_params(args)
    g = build_family(params)
    if args.emit == "g6":
        out.write(write_graph6(g) + "\n")
    elif args.emit == "json":
        out.write(reports.dumps({
            "family": params.label(),
            "graph6": write_graph6(g),
            "n": g.n,
            "edges": [list(e) for e in g.edges()],
            "bipartition": [sorted(c) for c in g.bipartition] if g.bipartition else None,
        }))
    else:
        out.write(f"{params.label()}  n = {g.n}, {g.edge_count()} edges\n")
        for v in range(g.n):
            out.write(f"{v}: {' '.join(map(str, g.neighbors(v)))}\n")
    return EXIT_OK


def _emit_certificates(records, fmt: str, out) -> None:
    if fmt == "json":
        items = [reports.certificate_dict(r) for r in records]
        out.write(reports.dumps(items if len(items) > 1 else items[0]))
    elif fmt == "csv":
        out.write(reports.certificates_csv(records))
    else:
        out.write("\n".join(reports.certificate_text(r) for r in records))


def cmd_certify(args, out, stdin) -> int:
    mode = MODE_NAMES[args.threshold]
    records = []
    for g in _graphs(args.graph, stdin):
        if args.theorem == "general":
            records.append(certify_general(g, mode, args.tol, args.max_iter))
        else:
            records.append(certify_bipartite(g, args.tol, args.max_iter, mode))
    _emit_certificates(records, args.format, out)
    found = any(r.verdict is Verdict.THEOREM_DISCREPANCY for r in records)
    return EXIT_FOUND if found else EXIT_OK


def cmd_sweep(args, out, stdin) -> int:
    mode = MODE_NAMES[args.threshold]
    common = dict(tol=args.tol, max_iter=args.max_iter, threads=args.threads)
    if args.stream is not None:
        if args.stream == "-":
            report = sweep(args.theorem, mode, stream=stdin, **common)
        else:
            with open(args.stream, encoding="ascii", errors="replace") as fh:
                report = sweep(args.theorem, mode, stream=fh, **common)
    else:
        report = sweep(args.theorem, mode, n=args.n, **common)
    if args.format == "json":
        out.write(reports.dumps(reports.sweep_dict(report)))
    elif args.format == "csv":
        out.write(reports.certificates_csv(report.records))
    else:
        out.write(reports.sweep_text(report))
    for e in report.errors:
        print(f"distpm: {e}", file=sys.stderr)
    return EXIT_FOUND if report.discrepancies else EXIT_OK


def _emit_claims(checks, fmt: str, out) -> None:
    if fmt == "json":
        out.write(reports.dumps([reports.claim_dict(c) for c in checks]))
    elif fmt == "csv":
        out.write(reports.claims_csv(checks))
    else:
        out.write(reports.claims_text(checks))


def cmd_claims(args, out, stdin) -> int:
    grid = parse_grid(args.grid)
    ids = list(CLAIM_IDS) if "all" in args.id else args.id
    checks = []
    for cid in ids:
        checks.extend(verify_claim(cid, grid, args.tol))
    _emit_claims(checks, args.format, out)
    return EXIT_FOUND if any(c.satisfied is False for c in checks) else EXIT_OK


def cmd_audit(args, out, stdin) -> int:
    checks = audit_closed_forms(args.n_max, tol=args.tol)
    _emit_claims(checks, args.format, out)
    return EXIT_FOUND if any(c.satisfied is False for c in checks) else EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                        help="power iteration stops once hi - lo <= tol (default 1e-10)")
    common.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER,
                        help="power iteration cap (default 1e6)")
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes for sweeps (default: available CPUs)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")

    parser = argparse.ArgumentParser(
        prog="distpm",
        description="Distance spectral radius conditions for perfect matchings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="spectral and matching data for one graph")
    p.add_argument("graph", help="graph6 string, or - to read one per stdin line")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("family", parents=[common], help="build a family member")
    p.add_argument("--kind", required=True, help="family name, e.g. gstar, snk, gtilde, bsp")
    for name in ("n", "k", "s", "q", "p", "a", "b"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--parts", help="odd clique sizes for gprime, e.g. 3,3,1")
    p.add_argument("--params", help="alternative form: n=10,s=2,parts=3/3/1")
    p.add_argument("--emit", choices=("g6", "json", "text"), default="g6")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("certify", parents=[common], help="spectral perfect-matching certificate")
    p.add_argument("graph", help="graph6 string, or - to read one per stdin line")
    p.add_argument("--theorem", choices=("general", "bipartite"), default="general")
    p.add_argument("--threshold", choices=sorted(MODE_NAMES), default="paper")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", parents=[common], help="certify every graph of an order or stream")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="built-in enumeration: order (general) or side size (bipartite)")
    src.add_argument("--stream", help="graph6 file, or - for stdin")
    p.add_argument("--theorem", choices=("general", "bipartite"), default="general")
    p.add_argument("--threshold", choices=sorted(MODE_NAMES), default="paper")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("claims", parents=[common], help="check extremality claims on a grid")
    p.add_argument("--id", action="append", required=True, choices=CLAIM_IDS + ("all",))
    p.add_argument("--grid", required=True, help='e.g. "n=4..20,s=1..3"')
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("audit", parents=[common], help="compare closed forms with computed values")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Sequence[str] | None = None, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, stdin)
    except (ValueError, OSError) as exc:
        print(f"distpm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
