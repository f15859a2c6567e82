"""Command-line front door.

Exit codes: 0 success, 1 usage error, 2 data error.  Results print as
aligned text tables by default; ``--format csv|json|svg`` emits machine
formats (to ``--output`` when given, stdout otherwise).  The CLI performs
no arithmetic of its own; every number comes from the analysis module.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, serialize
from .charts import ChartSpec, emit_chart
from .errors import CohortLensError, MalformedRow
from .scheme import resolve_group
from .store import ColumnMap, Dataset, IngestOptions, ingest_canonical, ingest_raw

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _years_arg(text: str):
    if "-" in text:
        a, b = text.split("-", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _metric_specs_arg(text: str):
    # "standard:Hispanic,Women;cohort:Hispanic"
    specs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise MalformedRow(f"metric spec needs 'standard:GROUP' form: {part!r}")
        metric, group = part.split(":", 1)
        if metric not in ("standard", "cohort"):
            raise MalformedRow(f"unknown comparison metric: {metric!r}")
        specs.append((metric, group.strip()))
    if not specs:
        raise MalformedRow("no metric specs given")
    return specs


def _add_common(p, institutions="*"):
    p.add_argument("--dataset", required=True, help="dataset directory")
    p.add_argument("--format", choices=["text", "csv", "json", "svg"], default="text")
    p.add_argument("--output", "-o", help="write output to this file instead of stdout")
    p.add_argument("--scope", default="cip11", help="field scope: cip11, all, or cip:<prefix>")
    p.add_argument("--award-level", default="Bachelors")


def build_parser() -> _Parser:
    parser = _Parser(prog="cohortlens", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a raw or canonical file into a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--canonical", help="canonical long-format CSV")
    p.add_argument("--raw", help="raw IPEDS-style completions file")
    p.add_argument("--column-map", help="column map file for --raw")
    p.add_argument("--year", type=int, help="survey year for --raw")
    p.add_argument("--award-level", default="Bachelors")
    p.add_argument("--include-second-majors", action="store_true")
    p.add_argument("--include-nonresident", action="store_true")
    p.add_argument("--include-unknown", action="store_true")

    p = sub.add_parser("standard", help="a group's share of program degrees")
    _add_common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--institution", action="append", help="repeatable; default: whole dataset")
    p.add_argument("--year", type=int, required=True)

    p = sub.add_parser("cohort", help="a group's program degrees as share of its own degrees")
    _add_common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--institution", action="append")
    p.add_argument("--year", type=int, required=True)

    p = sub.add_parser("series", help="per-year standard or cohort shares")
    _add_common(p)
    p.add_argument("--metric", choices=["standard", "cohort"], required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--institution", action="append")
    p.add_argument("--years", type=_years_arg, required=True, help="e.g. 2010-2020")

    p = sub.add_parser("gap", help="per-cell program vs university share gaps")
    _add_common(p)
    p.add_argument("--institution", action="append")
    p.add_argument("--year", type=int, required=True)

    p = sub.add_parser("evenness", help="equitability index per year")
    _add_common(p)
    p.add_argument("--institution", required=True)
    p.add_argument("--axis", choices=["gender", "race", "intersectional"], required=True)
    p.add_argument("--years", type=_years_arg, required=True)

    p = sub.add_parser("jsdistance", help="JS distance program vs reference per institution")
    _add_common(p)
    p.add_argument("--institutions", required=True, help="comma-separated ids")
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--reference-scope", default="all")

    p = sub.add_parser("compare", help="side-by-side metric table for institutions")
    _add_common(p)
    p.add_argument("--institutions", required=True)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--metrics", type=_metric_specs_arg, required=True,
                   help='e.g. "cohort:Hispanic;cohort:Hispanic,Women"')

    p = sub.add_parser("export-chart", help="render a saved chart spec")
    p.add_argument("--input", required=True, help="chart spec JSON file")
    p.add_argument("--format", choices=["csv", "json", "svg"], default="svg")
    p.add_argument("--output", "-o")

    p = sub.add_parser("serve", help="start the read-only HTTP API")
    p.add_argument("--dataset", required=True)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", help="allow this origin for browser clients")

    return parser


def _emit(args, text_lines, payload, chart_spec=None):
    if args.format == "text":
        out = "\n".join(text_lines) + "\n"
    elif args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.format in ("csv", "svg"):
        if chart_spec is None:
            raise MalformedRow(f"{args.command}: no {args.format} form for this command")
        out = emit_chart(chart_spec, args.format)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _series_chart(title, points_by_label, y_label):
    payload = [
        {"label": label, "points": [{"year": p.year, "value": p.value} for p in pts]}
        for label, pts in points_by_label
    ]
    return ChartSpec("line", title, payload, x_label="year", y_label=y_label)


def _institutions_list(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def _cmd_ingest(args):
    warnings = []
    options = IngestOptions(
        award_level=args.award_level,
        include_second_majors=args.include_second_majors,
        include_nonresident=args.include_nonresident,
        include_unknown=args.include_unknown,
    )
    if bool(args.canonical) == bool(args.raw):
        print("ingest: exactly one of --canonical/--raw required", file=sys.stderr)
        return USAGE_EXIT
    if args.canonical:
        manifest = ingest_canonical(args.canonical, args.dataset, options=options, warnings=warnings)
    else:
        if not args.column_map or args.year is None:
            print("ingest --raw needs --column-map and --year", file=sys.stderr)
            return USAGE_EXIT
        manifest = ingest_raw(
            args.raw, ColumnMap.load(args.column_map), args.dataset, args.year,
            options=options, warnings=warnings,
        )
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(
        f"dataset {manifest.name}: {manifest.record_count} records, "
        f"{manifest.institutions} institutions, years "
        f"{manifest.year_min}-{manifest.year_max}"
    )
    return 0


def _cmd_scalar(args, metric):
    ds = Dataset(args.dataset)
    group = resolve_group(args.group, ds.scheme)
    insts = args.institution
    if insts is not None:
        ds.check_institutions(insts)
    field_table = ds.table(insts, [args.year], args.scope, args.award_level)
    if metric == "standard":
        value = analysis.standard_share(field_table, group)
    else:
        all_table = ds.table(insts, [args.year], "all", args.award_level)
        value = analysis.cohort_share(field_table, all_table, group)
    payload = serialize.scalar_payload(value, group.describe(), metric)
    _emit(args, [f"{value:.1f}"], payload)
    return 0


def _cmd_series(args):
    ds = Dataset(args.dataset)
    points, warnings = analysis.series(
        ds, args.metric, args.group, args.years, args.institution, args.scope, args.award_level
    )
    payload = serialize.series_payload(points, warnings)
    lines = [f"{'year':>6}  {'value':>8}"]
    lines += [f"{p.year:>6}  {p.value:>8.1f}" for p in points]
    lines += [f"warning: {w}" for w in warnings]
    label = points[0].group if points else args.group
    chart = None
    if points:
        chart = _series_chart(
            f"{args.metric} share: {label}", [(label, points)], "percent"
        )
    _emit(args, lines, payload, chart)
    return 0


def _cmd_gap(args):
    ds = Dataset(args.dataset)
    insts = args.institution
    if insts is not None:
        ds.check_institutions(insts)
    program = ds.table(insts, [args.year], args.scope, args.award_level)
    university = ds.table(insts, [args.year], "all", args.award_level)
    rows = analysis.opportunity_gap(program, university)
    payload = serialize.gap_payload(rows)
    lines = [f"{'cell':<55} {'program':>8} {'university':>11} {'gap':>7}"]
    lines += [
        f"{r.cell.label():<55} {r.program_share:>8.1f} {r.university_share:>11.1f} {r.gap:>+7.1f}"
        for r in rows
    ]
    chart = ChartSpec(
        "grouped-bar",
        f"program vs university shares, {args.year}",
        [
            {"label": r.cell.label(), "primary": r.program_share, "reference": r.university_share}
            for r in rows
        ],
        y_label="percent",
    )
    _emit(args, lines, payload, chart)
    return 0


def _cmd_evenness(args):
    ds = Dataset(args.dataset)
    points, warnings = analysis.evenness_series(
        ds, args.institution, args.axis, args.years, args.scope, args.award_level
    )
    payload = serialize.series_payload(points, warnings)
    lines = [f"{'year':>6}  {'evenness %':>10}"]
    lines += [f"{p.year:>6}  {p.value:>10.1f}" for p in points]
    lines += [f"warning: {w}" for w in warnings]
    chart = None
    if points:
        chart = _series_chart(
            f"evenness ({args.axis}): {args.institution}", [(args.axis, points)], "evenness %"
        )
    _emit(args, lines, payload, chart)
    return 0


def _cmd_jsdistance(args):
    ds = Dataset(args.dataset)
    rows, skipped = analysis.js_distance_report(
        ds, _institutions_list(args.institutions), args.year, args.scope,
        args.reference_scope, args.award_level,
    )
    payload = serialize.distances_payload(rows, skipped)
    lines = [f"{'institution':<20} {'js_distance':>11}"]
    lines += [f"{r.institution_id:<20} {r.distance:>11.4f}" for r in rows]
    lines += [f"warning: skipped {s}" for s in skipped]
    chart = ChartSpec(
        "dumbbell",
        f"JS distance, program vs reference, {args.year}",
        [{"label": r.institution_id, "markers": {"jsdistance": r.distance}} for r in rows],
    ) if rows else None
    _emit(args, lines, payload, chart)
    return 0


def _cmd_compare(args):
    ds = Dataset(args.dataset)
    insts = _institutions_list(args.institutions)
    rows = analysis.compare_institutions(
        ds, insts, args.year, args.metrics, args.scope, args.award_level
    )
    payload = serialize.comparison_payload(rows)
    width = max((len(r.metric_label) for r in rows), default=10)
    lines = [f"{'metric':<{width}} " + " ".join(f"{i:>12}" for i in insts)]
    by_label: dict = {}
    for r in rows:
        by_label.setdefault(r.metric_label, {})[r.institution_id] = r
    for label, per_inst in by_label.items():
        cells = []
        for inst in insts:
            r = per_inst.get(inst)
            cells.append(f"{r.value:>12.1f}" if r and r.value is not None
                         else f"{'(' + (r.note or 'n/a') + ')':>12}")
        lines.append(f"{label:<{width}} " + " ".join(cells))
    _emit(args, lines, payload)
    return 0


def _cmd_export_chart(args):
    spec = ChartSpec.from_json(Path(args.input).read_text())
    out = emit_chart(spec, args.format)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_serve(args):
    from .api import serve

    serve(args.dataset, host=args.host, port=args.port, cors_origin=args.cors_origin)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_EXIT
    handlers = {
        "ingest": _cmd_ingest,
        "standard": lambda a: _cmd_scalar(a, "standard"),
        "cohort": lambda a: _cmd_scalar(a, "cohort"),
        "series": _cmd_series,
        "gap": _cmd_gap,
        "evenness": _cmd_evenness,
        "jsdistance": _cmd_jsdistance,
        "compare": _cmd_compare,
        "export-chart": _cmd_export_chart,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except CohortLensError as e:
        print(f"error [{e.name}]: {e}", file=sys.stderr)
        return DATA_EXIT
    except FileNotFoundError as e:
        print(f"error [not_found]: {e}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
