"""Closed-form invariants against the oracle, plus the identity checks."""

import pytest

from oriented_ideals.cases import case_by_id
from oriented_ideals.formulas import (
    NotApplicable,
    all_component_stats,
    colon_pd_lemma_check,
    colon_power_identity_check,
    component_stats,
    depth_bounds,
    pd_power_bounds,
    pd_single_formula,
    pd_union_formula,
    reg_power_formula,
    reg_single_formula,
    reg_union_formula,
    stabilization_check,
    star_case_formula,
    unweighted_reg_formula,
)
from oriented_ideals.graphs import components, parse_graph
from oriented_ideals.ideals import edge_ideal, power
from oriented_ideals.resolution import oracle_invariants


def doc(weights, edges):
    return {
        "vertices": [{"name": n, "weight": w} for n, w in weights.items()],
        "edges": [list(e) for e in edges],
    }


UNION = case_by_id("union-k22-chain").document
SQUARE = case_by_id("mixed-square").document
MIXED_UNION = case_by_id("mixed-union").document
FAN = case_by_id("mixed-fan").document

K22 = doc({"x1": 1, "x2": 1, "y1": 2, "y2": 3},
          [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")])

STAR = doc({"x1": 1, "y1": 2, "y2": 2},
           [("x1", "y1"), ("x1", "y2")])


class TestComponentStats:
    def test_k22(self):
        g = parse_graph(K22)
        st = component_stats(g, components(g).components[0])
        assert (st.ell, st.m, st.b) == (2, 2, 2)
        assert st.k_sequence == (2, 2)
        assert st.r == 2
        assert st.is_complete_bipartite and not st.is_star
        assert (st.w_max, st.weight_sum) == (3, 7)

    def test_chain_component_r(self):
        g = parse_graph(UNION)
        stats = all_component_stats(g)
        assert [st.r for st in stats] == [2, 1]

    def test_non_chain_is_none(self):
        g = parse_graph(
            doc({"a": 1, "b": 1, "c": 1, "d": 1, "e": 1},
                [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")])
        )
        assert component_stats(g, components(g).components[0]) is None

    def test_star_flag(self):
        g = parse_graph(STAR)
        st = component_stats(g, components(g).components[0])
        assert st.is_star and st.is_complete_bipartite


class TestProjectiveDimension:
    def test_single_k22_matches_oracle(self):
        g = parse_graph(K22)
        res = pd_single_formula(g)
        assert res.applicable and res.value == 2
        assert oracle_invariants(edge_ideal(g), g.n_vertices).pd == 2

    def test_single_needs_connected(self):
        with pytest.raises(ValueError):
            pd_single_formula(parse_graph(UNION))

    def test_union_formula_matches_oracle(self):
        g = parse_graph(UNION)
        res = pd_union_formula(g)
        assert res.applicable and res.value == 4
        assert res.source == "pd-union"
        assert oracle_invariants(edge_ideal(g), g.n_vertices).pd == 4

    def test_power_bounds_union(self):
        g = parse_graph(UNION)
        res = pd_power_bounds(g, 2)
        assert res.value == (3, 5)
        assert res.applicable and not res.exact

    def test_power_bounds_complete_bipartite_exact(self):
        g = parse_graph(K22)
        res = pd_power_bounds(g, 3)
        assert res.value == (1, 2) and res.exact

    def test_bounds_collapse_for_stars(self):
        g = parse_graph(STAR)
        res = pd_power_bounds(g, 2)
        assert res.value == (1, 1) and res.exact

    def test_t_validated(self):
        with pytest.raises(ValueError):
            pd_power_bounds(parse_graph(K22), 0)


class TestRegularity:
    def test_single(self):
        g = parse_graph(K22)
        res = reg_single_formula(g)
        assert res.applicable and res.value == 5
        assert oracle_invariants(edge_ideal(g), g.n_vertices).reg == 5

    def test_union(self):
        g = parse_graph(UNION)
        assert reg_union_formula(g).value == 7

    def test_power_growth_is_linear_in_max_weight(self):
        g = parse_graph(UNION)
        assert reg_power_formula(g, 1).value == 7
        assert reg_power_formula(g, 2).value == 10
        assert reg_power_formula(g, 5).value == 19

    def test_power_matches_oracle_for_square(self):
        g = parse_graph(K22)
        I = edge_ideal(g)
        for t in (1, 2):
            assert (
                reg_power_formula(g, t).value
                == oracle_invariants(power(I, t), g.n_vertices).reg
            )


class TestDepth:
    def test_bounds_and_convention(self):
        g = parse_graph(UNION)
        res = depth_bounds(g, 1)
        assert res.value == (3, 5)
        inv = oracle_invariants(edge_ideal(g), g.n_vertices)
        assert inv.depth == g.n_vertices - inv.pd
        assert res.value[0] <= inv.depth <= res.value[1]

    def test_exact_for_complete_bipartite(self):
        g = parse_graph(K22)
        res = depth_bounds(g, 2)
        assert res.exact
        assert res.value == (2, 3)


class TestStarCase:
    def test_exact_for_all_powers(self):
        g = parse_graph(STAR)
        I = edge_ideal(g)
        for t in (1, 2, 3):
            reg_res, pd_res = star_case_formula(g, t)
            assert reg_res.applicable and pd_res.applicable
            inv = oracle_invariants(power(I, t), g.n_vertices)
            assert reg_res.value == inv.reg
            assert pd_res.value == inv.pd

    def test_not_a_star_flagged(self):
        g = parse_graph(K22)
        reg_res, pd_res = star_case_formula(g, 1)
        assert not reg_res.applicable and not pd_res.applicable
        assert any("not a star" in f for f in reg_res.hypothesis_failures)

    def test_to_dict_turns_tuples_into_lists(self):
        d = pd_power_bounds(parse_graph(UNION), 2).to_dict()
        assert d["value"] == [3, 5]
        assert d["source"] == "pd-bounds"


class TestUnweighted:
    def test_formula_and_oracle(self):
        g = parse_graph(
            doc({"x1": 1, "x2": 1, "y1": 1, "y2": 1},
                [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")])
        )
        I = edge_ideal(g)
        for t in (1, 2):
            res = unweighted_reg_formula(g, t)
            assert res.applicable
            assert res.value == 2 * t + 1 - 1
            assert res.value == oracle_invariants(power(I, t), 4).reg

    def test_weighted_graph_not_applicable(self):
        res = unweighted_reg_formula(parse_graph(K22), 1)
        assert not res.applicable
        assert any("weight" in f for f in res.hypothesis_failures)


class TestOrientationSensitivity:
    """The mixed-orientation cases: formulas compute but are non-binding,
    and the oracle disagrees with them, which is the entire point."""

    def test_square(self):
        g = parse_graph(SQUARE)
        assert not reg_power_formula(g, 1).applicable
        assert reg_power_formula(g, 1).value == 6
        assert reg_power_formula(g, 2).value == 9
        assert pd_union_formula(g).value == 2
        inv = oracle_invariants(edge_ideal(g), g.n_vertices)
        assert (inv.reg, inv.pd) == (5, 3)

    def test_mixed_union(self):
        g = parse_graph(MIXED_UNION)
        assert not pd_union_formula(g).applicable
        assert reg_power_formula(g, 1).value == 7
        assert reg_power_formula(g, 2).value == 10
        assert pd_union_formula(g).value == 4
        inv = oracle_invariants(edge_ideal(g), g.n_vertices)
        assert (inv.reg, inv.pd) == (6, 5)

    def test_fan_bound_fails_when_hypotheses_do(self):
        g = parse_graph(FAN)
        res = pd_power_bounds(g, 3)
        assert not res.applicable
        assert res.value == (2, 3)  # the cube's true pd is 4

    def test_proper_variants_restore_agreement(self):
        for case_id, t_max in (("mixed-square", 2), ("mixed-union", 2),
                               ("mixed-fan", 1)):
            case = case_by_id(case_id)
            g = parse_graph(case.variant_document)
            I = edge_ideal(g)
            for t in range(1, t_max + 1):
                inv = oracle_invariants(power(I, t), g.n_vertices)
                assert reg_power_formula(g, t).value == inv.reg
                if t == 1:
                    res = pd_union_formula(g)
                    assert res.applicable and res.value == inv.pd
                lo, hi = pd_power_bounds(g, t).value
                assert lo <= inv.pd <= hi


class TestColonChecks:
    def test_power_identity_holds(self):
        g = parse_graph(UNION)
        assert colon_power_identity_check(g, 2)

    def test_power_identity_gating(self):
        with pytest.raises(NotApplicable):
            colon_power_identity_check(parse_graph(UNION), 1)
        with pytest.raises(NotApplicable):
            colon_power_identity_check(parse_graph(SQUARE), 2)

    def test_pd_lemma_on_k22(self):
        g = parse_graph(K22)
        for x_name in ("x1", "x2"):
            assert colon_pd_lemma_check(g, g.index_of(x_name))

    def test_pd_lemma_gating(self):
        with pytest.raises(NotApplicable):
            colon_pd_lemma_check(parse_graph(UNION), 0)
        single_edge = parse_graph(doc({"x": 1, "y": 4}, [("x", "y")]))
        with pytest.raises(NotApplicable):
            colon_pd_lemma_check(single_edge, 0)
        g = parse_graph(K22)
        with pytest.raises(ValueError):
            colon_pd_lemma_check(g, g.index_of("y1"))


class TestStabilization:
    def test_star_attains_immediately(self):
        g = parse_graph(STAR)
        assert stabilization_check(g, 1, 3)

    def test_rejected_before_attainment(self):
        g = parse_graph(UNION)
        with pytest.raises(NotApplicable):
            stabilization_check(g, 1, 2)

    def test_range_validated(self):
        with pytest.raises(ValueError):
            stabilization_check(parse_graph(STAR), 2, 1)
