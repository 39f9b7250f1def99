"""Closed-form invariants and identities for edge ideals of unions of
properly oriented gap-free bipartite graphs, each gated by hypothesis
applicability.

Every formula returns a FormulaResult.  When a graph violates the
hypotheses the value is still computed mechanically where possible and
flagged non-binding; the bundled mixed-orientation cases rely on
comparing those non-binding values against oracle truth.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs as G
from .graphs import HypothesisReport, WeightedOrientedGraph
from .ideals import Monomial, MonomialIdeal, colon, edge_ideal, power
from .resolution import oracle_invariants


class NotApplicable(RuntimeError):
    """A check's preconditions fail for the given graph."""


@dataclass(frozen=True)
class FormulaResult:
    """A formula value with its applicability verdict.

    value is an int, an interval (lo, hi), or None when the quantity
    cannot even be evaluated mechanically (e.g. a pd formula on a
    non-bipartite component).  For interval results, exact=True means a
    sufficient condition holds under which the pd upper endpoint (depth
    lower endpoint) is attained.
    """

    value: int | tuple[int, int] | None
    applicable: bool
    hypothesis_failures: tuple[str, ...]
    source: str
    exact: bool = False

    def to_dict(self) -> dict:
        v = list(self.value) if isinstance(self.value, tuple) else self.value
        return {
            "value": v,
            "applicable": self.applicable,
            "hypothesis_failures": list(self.hypothesis_failures),
            "source": self.source,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class ComponentStats:
    """Shape data of one gap-free bipartite component in nested order."""

    vertices: tuple[int, ...]
    x_order: tuple[int, ...]
    y_order: tuple[int, ...]
    ell: int
    m: int
    b: int
    k_sequence: tuple[int, ...]
    x_degrees: tuple[int, ...]
    y_degrees: tuple[int, ...]
    r: int
    w_max: int
    weight_sum: int
    is_star: bool
    is_complete_bipartite: bool


def component_stats(
    g: WeightedOrientedGraph, component: tuple[int, ...]
) -> ComponentStats | None:
    """Stats for one component; None when it is not a chain graph."""
    free, _ = G.is_gap_free(g, component)
    if not free or G.bipartition(g, component) is None:
        return None
    order = G.nested_order(g, component)
    x_deg = tuple(g.degree(v) for v in order.x_order)
    y_deg = tuple(g.degree(v) for v in order.y_order)
    ks = order.k_sequence
    m = len(order.y_order)
    ell = len(order.x_order)
    r = max(x_deg[i] + y_deg[ks[i] - 1] for i in range(ell)) - 2
    return ComponentStats(
        vertices=component,
        x_order=order.x_order,
        y_order=order.y_order,
        ell=ell,
        m=m,
        b=max(ell, m),
        k_sequence=ks,
        x_degrees=x_deg,
        y_degrees=y_deg,
        r=r,
        w_max=max(g.weights[v] for v in component),
        weight_sum=sum(g.weights[v] for v in component),
        is_star=(ell == 1 or m == 1),
        is_complete_bipartite=all(k == m for k in ks),
    )


def all_component_stats(
    g: WeightedOrientedGraph,
) -> list[ComponentStats | None]:
    return [component_stats(g, c) for c in G.components(g).components]


def _report(g, report):
    return report if report is not None else G.hypothesis_report(g)


def pd_single_formula(
    g: WeightedOrientedGraph, report: HypothesisReport | None = None
) -> FormulaResult:
    """pd(I(D)) = max{d(x_i) + d(y_{k_i})} - 2 for one connected graph."""
    comps = G.components(g)
    if comps.count != 1:
        raise ValueError("pd_single_formula expects a connected graph")
    rep = _report(g, report)
    stats = component_stats(g, comps.components[0])
    value = stats.r if stats is not None else None
    return FormulaResult(
        value=value,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="pd-single",
    )


def pd_union_formula(
    g: WeightedOrientedGraph, report: HypothesisReport | None = None
) -> FormulaResult:
    """pd(I(D)) = sum of r over components plus s - 1."""
    rep = _report(g, report)
    stats = all_component_stats(g)
    if any(st is None for st in stats):
        value = None
    else:
        value = sum(st.r for st in stats) + len(stats) - 1
    return FormulaResult(
        value=value,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="pd-union",
    )


def pd_power_bounds(
    g: WeightedOrientedGraph, t: int, report: HypothesisReport | None = None
) -> FormulaResult:
    """sum(b_i) - 1 <= pd(I(D)^t) <= |V| - s - 1 for every t >= 1.

    exact=True marks the sufficient conditions for attaining the upper
    endpoint: every component complete bipartite (stars included, where
    the interval collapses entirely).
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    rep = _report(g, report)
    s = len(rep.components)
    if any(c.b is None for c in rep.components):
        value = None
        exact = False
    else:
        lo = sum(c.b for c in rep.components) - 1
        hi = g.n_vertices - s - 1
        value = (lo, hi)
        stats = all_component_stats(g)
        exact = all(st is not None and st.is_complete_bipartite for st in stats)
    return FormulaResult(
        value=value,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="pd-bounds",
        exact=exact,
    )


def reg_single_formula(
    g: WeightedOrientedGraph, report: HypothesisReport | None = None
) -> FormulaResult:
    """reg(I(D)) = sum of weights - |V| + 2 for one connected graph."""
    if G.components(g).count != 1:
        raise ValueError("reg_single_formula expects a connected graph")
    rep = _report(g, report)
    return FormulaResult(
        value=sum(g.weights) - g.n_vertices + 2,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="reg-single",
    )


def reg_union_formula(
    g: WeightedOrientedGraph, report: HypothesisReport | None = None
) -> FormulaResult:
    """reg(I(D)) = sum of weights - |V| + s + 1."""
    rep = _report(g, report)
    s = len(rep.components)
    return FormulaResult(
        value=sum(g.weights) - g.n_vertices + s + 1,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="reg-union",
    )


def reg_power_formula(
    g: WeightedOrientedGraph, t: int, report: HypothesisReport | None = None
) -> FormulaResult:
    """reg(I(D)^t) = reg(I(D)) + (t-1)(w+1), w the global maximum weight."""
    if t < 1:
        raise ValueError("t must be at least 1")
    rep = _report(g, report)
    s = len(rep.components)
    base = sum(g.weights) - g.n_vertices + s + 1
    w = max(g.weights)
    return FormulaResult(
        value=base + (t - 1) * (w + 1),
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="reg-power",
    )


def depth_bounds(
    g: WeightedOrientedGraph, t: int, report: HypothesisReport | None = None
) -> FormulaResult:
    """s + 1 <= depth(I(D)^t) <= |V| - sum(b_i) + 1, via depth = |V| - pd.

    exact=True marks the complete-bipartite condition, under which the
    lower endpoint s + 1 is attained.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    rep = _report(g, report)
    s = len(rep.components)
    if any(c.b is None for c in rep.components):
        value = None
        exact = False
    else:
        value = (s + 1, g.n_vertices - sum(c.b for c in rep.components) + 1)
        stats = all_component_stats(g)
        exact = all(st is not None and st.is_complete_bipartite for st in stats)
    return FormulaResult(
        value=value,
        applicable=rep.applicable,
        hypothesis_failures=rep.failures,
        source="depth-bounds",
        exact=exact,
    )


def star_case_formula(
    g: WeightedOrientedGraph, t: int, report: HypothesisReport | None = None
) -> tuple[FormulaResult, FormulaResult]:
    """(reg, pd) of I(D)^t when every component is a star, exact for all t."""
    if t < 1:
        raise ValueError("t must be at least 1")
    rep = _report(g, report)
    s = len(rep.components)
    stats = all_component_stats(g)
    failures = list(rep.failures)
    for idx, st in enumerate(stats):
        if st is None or not st.is_star:
            failures.append(f"component {idx} is not a star")
    applicable = rep.applicable and not any(
        st is None or not st.is_star for st in stats
    )
    w = max(g.weights)
    reg_value = sum(g.weights) - g.n_vertices + s + 1 + (t - 1) * (w + 1)
    pd_value = g.n_vertices - s - 1
    failures_t = tuple(failures)
    return (
        FormulaResult(reg_value, applicable, failures_t, "star-reg"),
        FormulaResult(pd_value, applicable, failures_t, "star-pd"),
    )


def unweighted_reg_formula(
    g: WeightedOrientedGraph, t: int, report: HypothesisReport | None = None
) -> FormulaResult:
    """reg(I(G)^t) = 2t + s - 1 when every weight is 1.

    The induced matching number of a union of gap-free bipartite graphs
    equals its component count, which is how s enters.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    rep = _report(g, report)
    s = len(rep.components)
    failures = list(rep.failures)
    unweighted = all(w == 1 for w in g.weights)
    if not unweighted:
        failures.append("graph has a vertex of weight > 1")
    return FormulaResult(
        value=2 * t + s - 1,
        applicable=rep.applicable and unweighted,
        hypothesis_failures=tuple(failures),
        source="unweighted-reg",
    )


def colon_power_identity_check(g: WeightedOrientedGraph, t: int) -> bool:
    """Check (I^t : x_{i1} y^{w_y}) = I^{t-1} for every component.

    x_{i1} is the minimum-degree X-vertex of the component and y runs
    over its out-neighbours.  Raises NotApplicable when the hypotheses
    fail or t < 2.
    """
    if t < 2:
        raise NotApplicable("the colon identity concerns t >= 2")
    rep = G.hypothesis_report(g)
    if not rep.applicable:
        raise NotApplicable("; ".join(rep.failures))
    ideal = edge_ideal(g)
    i_t = power(ideal, t)
    i_prev = power(ideal, t - 1)
    n = g.n_vertices
    for comp in G.components(g).components:
        stats = component_stats(g, comp)
        x1 = stats.x_order[0]
        for y in g.out_neighbors(x1):
            exps = [0] * n
            exps[x1] += 1
            exps[y] += g.weights[y]
            quotient = colon(i_t, Monomial(exps))
            if quotient != i_prev:
                return False
    return True


def colon_pd_lemma_check(
    g: WeightedOrientedGraph, x_vertex: int, cap: int | None = None
) -> bool:
    """Check pd((I(D minus e) : x_i y_{k_i}^w)) = d(x_i) + d(y_{k_i}) - 3
    for the edge e joining x_i to the top of its nested neighbourhood.

    The deleted-edge ideal keeps the full ambient variable set, so a
    vertex isolated by the deletion simply stops appearing.
    """
    rep = G.hypothesis_report(g)
    comps = G.components(g).components
    if len(comps) != 1 or not rep.applicable:
        raise NotApplicable("needs a single component satisfying the hypotheses")
    if len(g.edges) < 2:
        raise NotApplicable("needs at least two edges")
    stats = component_stats(g, comps[0])
    if x_vertex not in stats.x_order:
        raise ValueError(f"vertex {x_vertex} is not on the X side")
    i = stats.x_order.index(x_vertex)
    y_top = stats.y_order[stats.k_sequence[i] - 1]
    n = g.n_vertices
    removed = [0] * n
    removed[x_vertex] += 1
    removed[y_top] += g.weights[y_top]
    f = Monomial(removed)
    gens = []
    for t_, h_ in g.edges:
        if (t_, h_) == (x_vertex, y_top):
            continue
        exps = [0] * n
        exps[t_] += 1
        exps[h_] += g.weights[h_]
        gens.append(tuple(exps))
    deleted = MonomialIdeal(n, gens)
    quotient = colon(deleted, f)
    expected = g.degree(x_vertex) + g.degree(y_top) - 3
    return oracle_invariants(quotient, n, cap=cap).pd == expected


def stabilization_check(
    g: WeightedOrientedGraph, t0: int, t_max: int, cap: int | None = None
) -> bool:
    """Once pd(I^t) hits |V| - s - 1 at t0, it stays there through t_max."""
    rep = G.hypothesis_report(g)
    if not rep.applicable:
        raise NotApplicable("; ".join(rep.failures))
    if not 1 <= t0 <= t_max:
        raise ValueError("need 1 <= t0 <= t_max")
    bound = g.n_vertices - len(rep.components) - 1
    ideal = edge_ideal(g)
    if oracle_invariants(power(ideal, t0), cap=cap).pd != bound:
        raise NotApplicable(f"pd at t={t0} does not equal |V|-s-1={bound}")
    for t in range(t0 + 1, t_max + 1):
        if oracle_invariants(power(ideal, t), cap=cap).pd != bound:
            return False
    return True
