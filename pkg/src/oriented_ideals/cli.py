"""Command line entry points.

Exit codes: 0 success, 1 a check failed (hypotheses, agreement, or a
reference row), 2 the input could not be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cases import REFERENCE_CASES, REFERENCE_LATTICE_CAP, evaluate_all_cases
from .fuzz import FuzzConfig, render_fuzz_markdown, run_fuzz
from .graphs import GraphError, hypothesis_report, load_graph, parse_graph
from .ideals import edge_ideal, power
from .report import build_report, render_csv, render_markdown
from .resolution import (
    CapExceeded,
    GroundSetTooLarge,
    betti_table,
    export_multigraded_csv,
)


def _load(path: str):
    # Unreadable files and broken JSON are input errors just like schema
    # violations, so they all land on the same exit code.
    try:
        return load_graph(path)
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None


def _cmd_check(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if g is None:
        return 2
    report = hypothesis_report(g)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.applicable else 1


def _cmd_invariants(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if g is None:
        return 2
    if args.power < 1:
        print("error: --power must be a positive integer", file=sys.stderr)
        return 2
    report = build_report(g, t_max=args.power, cap=args.lattice_cap)
    if args.format == "json":
        print(report.to_json(indent=2))
    elif args.format == "csv":
        print(render_csv(report), end="")
    else:
        print(render_markdown(report))
    if args.betti_csv or args.figure:
        try:
            table = betti_table(power(edge_ideal(g), args.power), cap=args.lattice_cap)
        except (CapExceeded, GroundSetTooLarge) as exc:
            print(
                f"warning: no Betti table for t={args.power}: {exc}",
                file=sys.stderr,
            )
            table = None
        if table is not None:
            if args.betti_csv:
                Path(args.betti_csv).write_text(
                    export_multigraded_csv(table, g.names)
                )
            if args.figure:
                from .plots import render_betti_figure

                render_betti_figure(
                    table, args.figure, title=f"Betti numbers, power {args.power}"
                )
    return 0 if not report.binding_violations() else 1


def _fmt_cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, (tuple, list)):
        return f"[{value[0]}, {value[1]}]"
    return str(value)


def _cmd_reproduce(args: argparse.Namespace) -> int:
    cap = args.lattice_cap if args.lattice_cap else REFERENCE_LATTICE_CAP
    rows = evaluate_all_cases(cap=cap)
    ok = all(r["match"] for r in rows)
    variants = []
    if not args.skip_variants:
        for case in REFERENCE_CASES:
            if case.variant_document is None:
                continue
            g = parse_graph(case.variant_document)
            variants.append(
                (case.variant_id, build_report(g, t_max=case.max_power, cap=cap))
            )
    if args.format == "json":
        payload = {
            "rows": rows,
            "pass": ok,
            "variants": [
                {"id": vid, "report": rep.to_dict()} for vid, rep in variants
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("| case | quantity | t | expected | formula | oracle | status |")
        print("|------|----------|---|----------|---------|--------|--------|")
        for r in rows:
            status = "ok" if r["match"] else "MISMATCH"
            print(
                f"| {r['case']} | {r['quantity']} | {r['t']} | {r['expected']} "
                f"| {_fmt_cell(r['formula'])} | {_fmt_cell(r['oracle'])} | {status} |"
            )
        print()
        print("all rows match" if ok else "MISMATCH in at least one row")
        for vid, rep in variants:
            print()
            print(f"## Variant {vid} (orientation made proper, informational)")
            print()
            print(render_markdown(rep))
    return 0 if ok else 1


def _cmd_fuzz(args: argparse.Namespace) -> int:
    config = FuzzConfig(
        count=args.count,
        seed=args.seed,
        max_x=args.max_x,
        max_y=args.max_y,
        max_weight=args.max_weight,
        max_power=args.max_power,
        max_components=args.max_components,
        scramble=args.scramble_orientation,
        lattice_cap=args.lattice_cap,
        jobs=args.jobs,
    )
    summary = run_fuzz(config)
    if args.format == "json":
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        print(render_fuzz_markdown(summary))
    if args.figure:
        from .plots import render_fuzz_figure

        render_fuzz_figure(summary.to_dict(), args.figure)
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oriented-ideals",
        description="Homological invariants of powers of edge ideals "
        "of weighted oriented graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a graph file and its hypotheses")
    p.add_argument("file", help="graph JSON file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "invariants", help="formula and oracle invariants for powers 1..T"
    )
    p.add_argument("file", help="graph JSON file")
    p.add_argument("--power", type=int, default=1, metavar="T")
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.add_argument("--lattice-cap", type=int, default=None, metavar="N")
    p.add_argument("--betti-csv", metavar="PATH", help="write a multigraded Betti CSV")
    p.add_argument("--figure", metavar="PATH", help="write a Betti diagram image")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser(
        "reproduce-paper", help="recompute the bundled reference cases"
    )
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--lattice-cap", type=int, default=None, metavar="N")
    p.add_argument("--skip-variants", action="store_true")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("fuzz", help="random instances, formulas vs oracle")
    p.add_argument("--count", type=int, default=100, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--max-x", type=int, default=3, metavar="L")
    p.add_argument("--max-y", type=int, default=3, metavar="M")
    p.add_argument("--max-weight", type=int, default=2, metavar="W")
    p.add_argument("--max-power", type=int, default=2, metavar="T")
    p.add_argument("--max-components", type=int, default=2, metavar="S")
    p.add_argument("--scramble-orientation", action="store_true")
    p.add_argument("--lattice-cap", type=int, default=None, metavar="N")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--figure", metavar="PATH", help="write a pass/fail bar chart")
    p.set_defaults(func=_cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
