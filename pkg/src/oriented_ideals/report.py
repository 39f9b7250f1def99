"""Comparison reports: formulas next to oracle truth, power by power.

The report is built as JSON-native data (dicts, lists, scalars) so that
serializing and re-parsing gives back an equal value.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass

from . import formulas as F
from . import graphs as G
from .ideals import edge_ideal, power
from .resolution import (
    CapExceeded,
    GroundSetTooLarge,
    betti_table,
    invariants_from_table,
)


@dataclass
class InvariantReport:
    """Everything the harness knows about one graph, JSON-native."""

    graph: dict  # original document plus summary counts
    hypothesis: dict
    powers: list  # one dict per t: formulas, oracle, agreements
    timing_seconds: float

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "hypothesis": self.hypothesis,
            "powers": self.powers,
            "timing_seconds": self.timing_seconds,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(
            graph=data["graph"],
            hypothesis=data["hypothesis"],
            powers=data["powers"],
            timing_seconds=data["timing_seconds"],
        )

    @classmethod
    def from_json(cls, text: str) -> "InvariantReport":
        return cls.from_dict(json.loads(text))

    def binding_violations(self) -> list[dict]:
        out = []
        for p in self.powers:
            for a in p["agreements"]:
                if a["binding"] and a["match"] is False:
                    out.append({"t": p["t"], **a})
        return out

    def nonbinding_disagreements(self) -> list[dict]:
        out = []
        for p in self.powers:
            for a in p["agreements"]:
                if not a["binding"] and a["match"] is False:
                    out.append({"t": p["t"], **a})
        return out


def _agreement(name, t, formula_value, oracle_value, binding) -> dict:
    if formula_value is None or oracle_value is None:
        match = None
    elif isinstance(formula_value, list):
        lo, hi = formula_value
        match = lo <= oracle_value <= hi
    else:
        match = formula_value == oracle_value
    return {
        "name": name,
        "t": t,
        "formula": formula_value,
        "oracle": oracle_value,
        "binding": bool(binding) and match is not None,
        "match": match,
    }


def build_report(
    g: G.WeightedOrientedGraph,
    t_max: int = 1,
    cap: int | None = None,
    with_oracle: bool = True,
    document: dict | None = None,
) -> InvariantReport:
    """Run formulas and (optionally) the oracle for t = 1..t_max."""
    start = time.perf_counter()
    rep = G.hypothesis_report(g)
    stats = F.all_component_stats(g)
    s = len(rep.components)
    all_stars = all(st is not None and st.is_star for st in stats)
    unweighted = all(w == 1 for w in g.weights)
    ideal = edge_ideal(g)
    powers = []
    for t in range(1, t_max + 1):
        formulas: dict[str, dict] = {}
        reg_f = F.reg_power_formula(g, t, rep)
        formulas["reg"] = reg_f.to_dict()
        pd_f = F.pd_union_formula(g, rep) if t == 1 else None
        if pd_f is not None:
            formulas["pd"] = pd_f.to_dict()
        bounds_f = F.pd_power_bounds(g, t, rep)
        formulas["pd-bounds"] = bounds_f.to_dict()
        depth_f = F.depth_bounds(g, t, rep)
        formulas["depth-bounds"] = depth_f.to_dict()
        star_f = F.star_case_formula(g, t, rep) if all_stars else None
        if star_f is not None:
            formulas["star-reg"] = star_f[0].to_dict()
            formulas["star-pd"] = star_f[1].to_dict()
        unw_f = F.unweighted_reg_formula(g, t, rep) if unweighted else None
        if unw_f is not None:
            formulas["unweighted-reg"] = unw_f.to_dict()

        oracle = None
        skipped = None
        if with_oracle:
            try:
                table = betti_table(power(ideal, t), cap=cap)
                oracle = invariants_from_table(table, g.n_vertices).to_dict()
            except CapExceeded as exc:
                skipped = f"skipped: cap ({exc.count})"
            except GroundSetTooLarge as exc:
                skipped = f"skipped: ground set ({exc})"

        agreements = []
        if oracle is not None:
            agreements.append(
                _agreement(
                    "reg", t, reg_f.value, oracle["reg"], reg_f.applicable
                )
            )
            if pd_f is not None:
                agreements.append(
                    _agreement("pd", t, pd_f.value, oracle["pd"], pd_f.applicable)
                )
            bounds_value = (
                list(bounds_f.value)
                if isinstance(bounds_f.value, tuple)
                else bounds_f.value
            )
            agreements.append(
                _agreement(
                    "pd-bounds", t, bounds_value, oracle["pd"], bounds_f.applicable
                )
            )
            if bounds_f.exact and isinstance(bounds_f.value, tuple):
                agreements.append(
                    _agreement(
                        "pd-attained",
                        t,
                        bounds_f.value[1],
                        oracle["pd"],
                        bounds_f.applicable,
                    )
                )
            depth_value = (
                list(depth_f.value)
                if isinstance(depth_f.value, tuple)
                else depth_f.value
            )
            agreements.append(
                _agreement(
                    "depth-bounds", t, depth_value, oracle["depth"], depth_f.applicable
                )
            )
            if star_f is not None:
                agreements.append(
                    _agreement(
                        "star-reg", t, star_f[0].value, oracle["reg"],
                        star_f[0].applicable,
                    )
                )
                agreements.append(
                    _agreement(
                        "star-pd", t, star_f[1].value, oracle["pd"],
                        star_f[1].applicable,
                    )
                )
            if unw_f is not None:
                agreements.append(
                    _agreement(
                        "unweighted-reg", t, unw_f.value, oracle["reg"],
                        unw_f.applicable,
                    )
                )
        powers.append(
            {
                "t": t,
                "formulas": formulas,
                "oracle": oracle,
                "oracle_skipped": skipped,
                "agreements": agreements,
            }
        )
    doc = document if document is not None else g.to_document()
    graph = {
        "document": doc,
        "n_vertices": g.n_vertices,
        "n_edges": len(g.edges),
        "weight_sum": sum(g.weights),
        "max_weight": max(g.weights),
        "components": s,
    }
    return InvariantReport(
        graph=graph,
        hypothesis=rep.to_dict(),
        powers=powers,
        timing_seconds=time.perf_counter() - start,
    )


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return f"[{value[0]}, {value[1]}]"
    return str(value)


def render_markdown(report: InvariantReport) -> str:
    lines = []
    graph = report.graph
    lines.append(
        f"Graph: {graph['n_vertices']} vertices, {graph['n_edges']} edges, "
        f"{graph['components']} component(s), weight sum {graph['weight_sum']}"
    )
    lines.append(
        "Hypotheses: "
        + ("applicable" if report.hypothesis["applicable"] else "not applicable")
    )
    for c in report.hypothesis["components"]:
        if c["failures"]:
            for msg in c["failures"]:
                lines.append(f"  - {msg}")
    lines.append("")
    lines.append("| t | quantity | formula | oracle | binding | match |")
    lines.append("|---|----------|---------|--------|---------|-------|")
    for p in report.powers:
        if p["oracle"] is None:
            lines.append(
                f"| {p['t']} | (oracle) | | {p['oracle_skipped']} | | |"
            )
        for a in p["agreements"]:
            match = "-" if a["match"] is None else ("yes" if a["match"] else "NO")
            binding = "yes" if a["binding"] else "info"
            lines.append(
                f"| {a['t']} | {a['name']} | {_fmt(a['formula'])} "
                f"| {_fmt(a['oracle'])} | {binding} | {match} |"
            )
    lines.append("")
    lines.append(f"Elapsed: {report.timing_seconds:.2f}s")
    return "\n".join(lines)


def render_csv(report: InvariantReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["t", "quantity", "formula", "oracle", "binding", "match"])
    for p in report.powers:
        for a in p["agreements"]:
            writer.writerow(
                [
                    a["t"],
                    a["name"],
                    _fmt(a["formula"]),
                    _fmt(a["oracle"]),
                    a["binding"],
                    a["match"],
                ]
            )
        if p["oracle"] is None:
            writer.writerow([p["t"], "oracle", "", p["oracle_skipped"], "", ""])
    return buf.getvalue()
