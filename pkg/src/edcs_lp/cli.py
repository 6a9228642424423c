"""Command line interface: ``edcs-lp <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 operational
error (solver, realization or I/O trouble).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import EdcsError, InternalError, ParameterError
from .graphs import (BipartiteGraph, EdcsInstance, dump_instance, hall_witness, max_matching,
                     parse_graph_json, tight_example)
from .lp import build_lp, export_lp_json, export_lp_text
from .profiles import Params, enumerate_edge_profiles, enumerate_vertex_profiles
from .reports import decimal_text, frac_text, grid_cells, solve_ratio, sweep
from .roundtrip import solution_to_instance, verify_instance
from .simplex import solve_exact

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_OPERATIONAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _params(args) -> Params:
    try:
        return Params(args.beta, args.beta_minus)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def _mode(args) -> Optional[str]:
    return getattr(args, "mode", None)


def _write(path: Optional[str], text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def cmd_ratio(args, out) -> int:
    entry = solve_ratio(_params(args), _mode(args))
    if entry.exact is not None:
        out.write(f"{frac_text(entry.exact)} = {decimal_text(entry.exact, 10)}\n")
    else:
        out.write(f"{decimal_text(entry.value, 10)} (float)\n")
    return EXIT_OK


def _offsets(text: str) -> list[int]:
    try:
        cs = [int(c) for c in text.split(",") if c.strip()]
    except ValueError as exc:
        raise UsageError(f"--diagonal expects comma-separated integers, got {text!r}") from exc
    if not cs or min(cs) < 1:
        raise UsageError("--diagonal offsets must be positive")
    return cs


def cmd_sweep(args, out) -> int:
    max_beta = args.max_beta if args.max_beta is not None else args.max_beta_pos
    if max_beta is None:
        raise UsageError("sweep needs a maximum beta")
    if max_beta < 2:
        raise UsageError("maximum beta must be at least 2")
    offsets = _offsets(args.diagonal) if args.diagonal else None
    table = sweep(grid_cells(max_beta, offsets), _mode(args))
    csv_text = table.to_diagonal_csv(offsets) if offsets else table.to_csv()
    formats = set(args.format or [])
    unknown = formats - {"csv", "json", "svg"}
    if unknown:
        raise UsageError(f"sweep cannot write format(s) {sorted(unknown)}")
    if args.out:
        stem = Path(args.out)
        stem.with_suffix(".csv").write_text(csv_text)
        stem.with_suffix(".json").write_text(table.dumps())
        if "svg" in formats:
            stem.with_suffix(".svg").write_text(table.to_svg())
    elif "json" in formats:
        out.write(table.dumps())
    elif "svg" in formats:
        out.write(table.to_svg())
    else:
        out.write(csv_text)
    best = table.best()
    if best is not None and args.out:
        out.write(f"best ratio {decimal_text(best.value)} at ({best.beta},{best.beta_minus})\n")
    return EXIT_OK


def cmd_construct(args, out) -> int:
    params = _params(args)
    if args.min_scale < 1:
        raise UsageError("--min-scale must be a positive integer")
    result = solve_exact(build_lp(params))
    try:
        inst = solution_to_instance(params, result, args.min_scale)
    except InternalError as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    _write(args.out, dump_instance(inst), out)
    sys.stderr.write(
        f"instance for {params}: {inst.g.n_left}+{inst.g.n_right} vertices, "
        f"{len(inst.g.edges)} edges, mu(G)/mu(H) = {len(inst.mstar)}/{len(inst.m)}\n")
    return EXIT_OK


def _load_instance(text: str, args) -> EdcsInstance:
    doc = parse_graph_json(text)
    params = doc.params
    if args.beta is not None or args.beta_minus is not None:
        if args.beta is None or args.beta_minus is None:
            raise UsageError("give both --beta and --beta-minus")
        params = _params(args)
    if params is None:
        raise UsageError("the file has no beta/beta_minus; pass --beta and --beta-minus")
    if doc.h is None:
        raise UsageError("the file has no 'h' edge list to verify")
    g = doc.g
    hg = BipartiteGraph.from_edges(g.n_left, g.n_right, doc.h & g.edge_set)
    m = doc.m if doc.m is not None else max_matching(hg)
    mstar = doc.mstar if doc.mstar is not None else max_matching(g)
    if doc.witness_a is not None:
        witness = doc.witness_a
    else:
        try:
            witness = hall_witness(hg, m)
        except EdcsError:
            witness = frozenset()
    return EdcsInstance(g, doc.h, m, mstar, witness, params)


def cmd_verify(args, out) -> int:
    try:
        text = Path(args.path).read_text() if args.path != "-" else sys.stdin.read()
    except OSError as exc:
        raise EdcsError(f"cannot read {args.path}: {exc.strerror}") from exc
    inst = _load_instance(text, args)
    report = verify_instance(inst, inst.params)
    fmt = (args.format or ["text"])[-1]
    if fmt == "json":
        out.write(report.dumps())
    else:
        out.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_export_lp(args, out) -> int:
    params = _params(args)
    fmt = (args.format or ["lp"])[-1]
    if fmt not in ("lp", "json"):
        raise UsageError(f"export-lp writes 'lp' or 'json', not {fmt!r}")
    lp = build_lp(params, include_isolated=args.include_isolated)
    _write(args.out, export_lp_text(lp) if fmt == "lp" else export_lp_json(lp), out)
    return EXIT_OK


def cmd_tight_example(args, out) -> int:
    if args.k < 1 or args.n < args.k:
        raise UsageError(f"need n >= k >= 1, got k={args.k}, n={args.n}")
    _write(args.out, dump_instance(tight_example(args.k, args.n)), out)
    return EXIT_OK


def cmd_dump_profiles(args, out) -> int:
    params = _params(args)
    vps = enumerate_vertex_profiles(params, include_isolated=args.include_isolated)
    eps = enumerate_edge_profiles(params, vps)
    fmt = (args.format or ["csv"])[-1]
    if fmt == "json":
        payload = {"params": {"beta": params.beta, "beta_minus": params.beta_minus},
                   "vertex_profiles": [v.to_json() for v in vps],
                   "edge_profiles": [e.to_json() for e in eps]}
        _write(args.out, json.dumps(payload, indent=1) + "\n", out)
        return EXIT_OK
    if fmt != "csv":
        raise UsageError(f"dump-profiles writes 'csv' or 'json', not {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "label", "side", "region", "degree", "in_h", "in_m", "in_mstar"])
    for v in vps:
        w.writerow(["vertex", v.label(), v.side.value, v.region.value, v.deg_h, "",
                    int(v.in_m), int(v.in_mstar)])
    for e in eps:
        w.writerow(["edge", e.label(), "", "", e.left.deg_h + e.right.deg_h, int(e.in_h),
                    int(e.in_m), int(e.in_mstar)])
    _write(args.out, buf.getvalue(), out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="edcs-lp",
                description="Approximation ratios of (beta, beta_minus)-EDCS via a "
                            "factor-revealing LP.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_params(sp):
        sp.add_argument("beta", type=int)
        sp.add_argument("beta_minus", type=int)

    def with_mode(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--exact", dest="mode", action="store_const", const="exact",
                       help="rational simplex (default for beta <= 12)")
        g.add_argument("--float", dest="mode", action="store_const", const="float",
                       help="double-precision simplex (default above 12)")

    def with_common(sp):
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", action="append", choices=["csv", "json", "svg", "lp"])

    sp = sub.add_parser("ratio", help="approximation ratio for one parameter pair")
    with_params(sp)
    with_mode(sp)
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("sweep", help="ratio table over a grid of parameters")
    sp.add_argument("max_beta_pos", nargs="?", type=int, metavar="MAX_BETA")
    sp.add_argument("--max-beta", type=int)
    sp.add_argument("--diagonal", metavar="C1,C2,...",
                    help="only the pairs (beta, beta - c) for the given offsets")
    with_mode(sp)
    sp.add_argument("--out", help="output stem; writes STEM.csv, STEM.json and, "
                                  "with --format svg, STEM.svg")
    sp.add_argument("--format", action="append", choices=["csv", "json", "svg", "lp"])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("construct", help="build a tight instance from the exact optimum")
    with_params(sp)
    sp.add_argument("--min-scale", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a graph JSON instance")
    sp.add_argument("path")
    sp.add_argument("--beta", type=int)
    sp.add_argument("--beta-minus", type=int)
    sp.add_argument("--format", action="append", choices=["csv", "json", "svg", "lp", "text"])
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export-lp", help="write the LP as CPLEX LP text or JSON")
    with_params(sp)
    with_common(sp)
    sp.add_argument("--include-isolated", action="store_true",
                    help="keep the profiles of vertices with no edges at all")
    sp.set_defaults(func=cmd_export_lp)

    sp = sub.add_parser("tight-example", help="the 2/3 family for (2k+1, 2k)")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tight_example)

    sp = sub.add_parser("dump-profiles", help="list vertex and edge profiles")
    with_params(sp)
    with_common(sp)
    sp.add_argument("--include-isolated", action="store_true")
    sp.set_defaults(func=cmd_dump_profiles)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"edcs-lp: usage error: {exc}\n")
        return EXIT_USAGE
    except ParameterError as exc:
        sys.stderr.write(f"edcs-lp: usage error: {exc}\n")
        return EXIT_USAGE
    except (EdcsError, OSError) as exc:
        sys.stderr.write(f"edcs-lp: error: {exc}\n")
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())
