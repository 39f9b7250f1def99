"""Random-instance checking of every formula-oracle agreement.

Instances are generated from per-index seeds derived from the master
seed, so results are identical no matter how the work is scheduled.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import graphs as G
from .formulas import NotApplicable, colon_power_identity_check
from .report import build_report


@dataclass(frozen=True)
class FuzzConfig:
    count: int = 100
    seed: int = 0
    max_x: int = 3
    max_y: int = 3
    max_weight: int = 2
    max_power: int = 2
    max_components: int = 2
    scramble: bool = False
    lattice_cap: int | None = None
    jobs: int = 1


def instance_graph(config: FuzzConfig, index: int) -> G.WeightedOrientedGraph:
    g = G.random_applicable_graph(
        seed=f"{config.seed}:{index}",
        max_components=config.max_components,
        max_x=config.max_x,
        max_y=config.max_y,
        max_weight=config.max_weight,
    )
    if config.scramble:
        g = G.scramble_orientation(g, seed=f"{config.seed}:{index}:flip")
    return g


def run_instance(config: FuzzConfig, index: int) -> dict:
    """All checks for one instance, as a JSON-native record."""
    g = instance_graph(config, index)
    report = build_report(g, t_max=config.max_power, cap=config.lattice_cap)
    items = []
    tallies: dict[str, list[int]] = {}
    for p in report.powers:
        for a in p["agreements"]:
            if not a["binding"]:
                continue
            bucket = tallies.setdefault(a["name"], [0, 0])
            if a["match"]:
                bucket[0] += 1
            else:
                bucket[1] += 1
                items.append({"t": p["t"], **a})
    for t in range(2, config.max_power + 1):
        try:
            ok = colon_power_identity_check(g, t)
        except NotApplicable:
            continue
        bucket = tallies.setdefault("colon-identity", [0, 0])
        if ok:
            bucket[0] += 1
        else:
            bucket[1] += 1
            items.append(
                {
                    "t": t,
                    "name": "colon-identity",
                    "formula": True,
                    "oracle": False,
                    "binding": True,
                    "match": False,
                }
            )
    capped = [p["t"] for p in report.powers if p["oracle"] is None]
    record = {
        "index": index,
        "applicable": report.hypothesis["applicable"],
        "violations": items,
        "nonbinding_disagreements": len(report.nonbinding_disagreements()),
        "capped_powers": capped,
        "tallies": tallies,
    }
    if items:
        record["document"] = report.graph["document"]
    return record


def _worker(args) -> dict:
    config, index = args
    return run_instance(config, index)


@dataclass
class FuzzSummary:
    config: FuzzConfig
    records: list
    elapsed_seconds: float

    @property
    def violations(self) -> list[dict]:
        out = []
        for r in self.records:
            if r["violations"]:
                out.append(
                    {
                        "index": r["index"],
                        "document": r["document"],
                        "items": r["violations"],
                    }
                )
        return out

    @property
    def exit_code(self) -> int:
        return 0 if not self.violations else 1

    def to_dict(self) -> dict:
        """Deterministic summary: identical runs give identical dicts."""
        checks: dict[str, dict[str, int]] = {}
        for r in self.records:
            for name, (ok, bad) in r["tallies"].items():
                entry = checks.setdefault(name, {"pass": 0, "fail": 0})
                entry["pass"] += ok
                entry["fail"] += bad
        return {
            "config": asdict(self.config),
            "instances": len(self.records),
            "applicable": sum(1 for r in self.records if r["applicable"]),
            "capped_instances": sum(
                1 for r in self.records if r["capped_powers"]
            ),
            "nonbinding_disagreements": sum(
                r["nonbinding_disagreements"] for r in self.records
            ),
            "violation_count": len(self.violations),
            "violations": self.violations,
            "checks": {k: checks[k] for k in sorted(checks)},
        }


def run_fuzz(config: FuzzConfig) -> FuzzSummary:
    start = time.perf_counter()
    indices = range(config.count)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_worker, [(config, i) for i in indices]))
    else:
        records = [run_instance(config, i) for i in indices]
    records.sort(key=lambda r: r["index"])
    return FuzzSummary(config, records, time.perf_counter() - start)


def render_fuzz_markdown(summary: FuzzSummary) -> str:
    d = summary.to_dict()
    lines = [
        f"Instances: {d['instances']} "
        f"(applicable {d['applicable']}, capped {d['capped_instances']})",
        f"Binding violations: {d['violation_count']}",
        f"Non-binding formula disagreements: {d['nonbinding_disagreements']}",
        "",
        "| check | pass | fail |",
        "|-------|------|------|",
    ]
    for name, entry in d["checks"].items():
        lines.append(f"| {name} | {entry['pass']} | {entry['fail']} |")
    for v in d["violations"]:
        lines.append("")
        lines.append(f"Counterexample (instance {v['index']}):")
        lines.append(f"```json\n{v['document']}\n```")
    lines.append("")
    lines.append(f"Elapsed: {summary.elapsed_seconds:.2f}s")
    return "\n".join(lines)
