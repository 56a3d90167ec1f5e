"""Command-line interface: ``varsurf run|curve|table|export-mesh|list``.

Exit codes: 0 success, 1 invalid input or unreadable files, 3 the engine
stopped early (a partial report with an ``error`` field is still written).
Set ``VARSURF_THREADS`` to evaluate quadrature nodes on several threads.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .catalog import CatalogError
from .curve1d import CurvePoly, curve_iterate, starting_curve
from .engine import THREADS_ENV, SurfaceSpec, iterate
from .quadrature import build_rule
from .report import (
    ReportError,
    RunConfig,
    curve_report_dict,
    export_mesh,
    format_table,
    load_report,
    records_from_doc,
    spec_from_dict,
    surface_report_dict,
    write_atomic,
    write_report,
)

EXIT_INPUT = 1
EXIT_ENGINE = 3


def _param(text: str) -> tuple:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} needs a number, got {value!r}") from None


def _bracket(text: str) -> tuple:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="varsurf", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="iterate a surface and write a JSON report")
    r.add_argument("--surface", default=None, help="catalog name, or 'custom' with --config")
    r.add_argument("--param", action="append", type=_param, default=[], metavar="K=V")
    r.add_argument("--steps", type=int, required=True)
    r.add_argument("--quad", type=int, default=32)
    r.add_argument("--bracket", type=_bracket, default=(-1.0, 1.0), metavar="LO,HI")
    r.add_argument("--h0-mode", choices=catalog.H_MODES, default=None)
    r.add_argument("--config", help="custom-surface JSON document")
    r.add_argument("--resume", help="continue from an existing report")
    r.add_argument("--out", required=True)

    c = sub.add_parser("curve", help="shorten the planar test curve")
    c.add_argument("--steps", type=int, default=8)
    c.add_argument("--coeffs", help="comma-separated y coefficients, lowest power first")
    c.add_argument("--allow-long", action="store_true", help="permit more than 8 steps")
    c.add_argument("--out", required=True)

    t = sub.add_parser("table", help="print a report as a table")
    t.add_argument("file")
    t.add_argument("--format", choices=("csv", "text"), default="text")
    t.add_argument("--out", help="write to a file instead of stdout")

    m = sub.add_parser("export-mesh", help="sample a surface of a report on a uniform grid")
    m.add_argument("file")
    m.add_argument("--step", type=int, required=True)
    m.add_argument("--res", type=int, required=True)
    m.add_argument("--format", choices=("obj", "grid"), default="obj")
    m.add_argument("--out", help="write to a file instead of stdout")

    sub.add_parser("list", help="list built-in surfaces")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    if args.resume:
        prior = load_report(args.resume)
        if prior["kind"] != "surface":
            raise ReportError("only surface reports can be resumed")
        spec = spec_from_dict(prior["spec"])
        records = records_from_doc(prior)[: spec.depth + 1]
        quad = int(prior["config"].get("quad_order", args.quad))
        bracket = tuple(prior["config"].get("bracket", args.bracket))
        RunConfig(spec.entry.name, steps=args.steps, quad_order=quad, bracket=bracket)
    else:
        params = dict(args.param)
        name = args.surface
        if args.config:
            params["document"] = json.loads(Path(args.config).read_text(encoding="utf-8"))
            name = name or "custom"
        if name is None:
            raise CatalogError("--surface is required")
        cfg = RunConfig(name, params, args.steps, args.quad, args.bracket, args.h0_mode, args.out)
        entry = catalog.get_entry(cfg.surface, cfg.params, cfg.h0_mode)
        if args.config and cfg.h0_mode:
            entry = entry.replace(h0_mode=cfg.h0_mode)
        spec, records, quad, bracket = SurfaceSpec(entry), None, cfg.quad_order, cfg.bracket
    rule = build_rule(quad, spec.domain)
    report = iterate(spec, args.steps, rule, bracket, records=records)
    write_report(args.out, surface_report_dict(report))
    if report.error:
        print(f"varsurf: {report.error} (partial report written to {args.out})", file=sys.stderr)
        return EXIT_ENGINE
    return 0


def cmd_curve(args) -> int:
    if args.steps > 8 and not args.allow_long:
        raise ValueError("more than 8 steps needs --allow-long")
    c0 = starting_curve()
    if args.coeffs:
        c0 = CurvePoly(tuple(float(x) for x in args.coeffs.split(",")))
    RunConfig("curve", steps=args.steps)
    records = curve_iterate(c0, args.steps)
    chord = float(np.hypot(1.0, c0(1.0) - c0(0.0)))
    write_report(args.out, curve_report_dict(records, {"steps": args.steps, "chord": chord}))
    return 0


def cmd_table(args) -> int:
    _emit(format_table(load_report(args.file), args.format), args.out)
    return 0


def cmd_export_mesh(args) -> int:
    RunConfig(mesh_res=args.res, mesh_format=args.format)
    _emit(export_mesh(load_report(args.file), args.step, args.res, args.format), args.out)
    return 0


def cmd_list(args) -> int:
    for name in catalog.builtin_names():
        e = catalog.get_entry(name)
        print(f"{name:14s} domain={list(e.domain)} direction={list(e.direction)} reference_area={e.reference_area}")
    print("custom         from a JSON document passed with --config")
    print(f"threads: set {THREADS_ENV}=N")
    return 0


COMMANDS = {
    "run": cmd_run,
    "curve": cmd_curve,
    "table": cmd_table,
    "export-mesh": cmd_export_mesh,
    "list": cmd_list,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"varsurf: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
