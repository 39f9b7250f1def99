"""Graph parsing, structure checks, and the instance generators."""

import random

import pytest

from oriented_ideals.graphs import (
    GraphError,
    NestedOrderViolation,
    WeightedOrientedGraph,
    bipartition,
    components,
    disjoint_union,
    hypothesis_report,
    is_gap_free,
    nested_order,
    parse_graph,
    random_applicable_graph,
    random_gap_free_bipartite,
    scramble_orientation,
)


def doc(weights, edges):
    return {
        "vertices": [{"name": n, "weight": w} for n, w in weights.items()],
        "edges": [list(e) for e in edges],
    }


K22 = doc({"x1": 1, "x2": 1, "y1": 2, "y2": 3},
          [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")])

# path on five vertices; contains two edges with no edge between them
P5 = doc({"a": 1, "b": 1, "c": 1, "d": 1, "e": 1},
         [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")])


class TestParsing:
    def test_round_trip(self):
        g = parse_graph(K22)
        assert parse_graph(g.to_document()) == g

    def test_names_and_weights(self):
        g = parse_graph(K22)
        assert g.names == ("x1", "x2", "y1", "y2")
        assert g.weights == (1, 1, 2, 3)
        assert g.index_of("y2") == 3

    @pytest.mark.parametrize(
        "document",
        [
            {"vertices": []},
            {"edges": []},
            {"vertices": "x", "edges": []},
            doc({"x": 1}, []),  # isolated vertex
            doc({"x": 1, "y": 1}, [("x", "z")]),  # unknown endpoint
            doc({"x": 1, "y": 1}, [("x", "x")]),  # loop
            doc({"x": 1, "y": 1}, [("x", "y"), ("x", "y")]),  # duplicate
            doc({"x": 1, "y": 1}, [("x", "y"), ("y", "x")]),  # anti-parallel
            doc({"x": 0, "y": 1}, [("x", "y")]),  # weight < 1
            doc({"x": 1.5, "y": 1}, [("x", "y")]),  # non-integer weight
            doc({"x": True, "y": 1}, [("x", "y")]),  # bool is not a weight
            doc({"x": 2, "y": 1}, [("x", "y")]),  # source must have weight 1
        ],
    )
    def test_rejects(self, document):
        with pytest.raises(GraphError):
            parse_graph(document)

    def test_duplicate_names(self):
        bad = {
            "vertices": [{"name": "x", "weight": 1}, {"name": "x", "weight": 1}],
            "edges": [["x", "x"]],
        }
        with pytest.raises(GraphError):
            parse_graph(bad)

    def test_source_weight_must_be_one_but_heads_are_free(self):
        g = parse_graph(doc({"x": 1, "y": 7}, [("x", "y")]))
        assert g.weights == (1, 7)


class TestStructure:
    def test_components(self):
        g = parse_graph(
            doc({"x1": 1, "y1": 2, "x2": 1, "y2": 5},
                [("x1", "y1"), ("x2", "y2")])
        )
        comps = components(g).components
        assert len(comps) == 2
        assert sorted(len(c) for c in comps) == [2, 2]

    def test_bipartition_even_cycle(self):
        g = parse_graph(K22)
        x, y = bipartition(g, components(g).components[0])
        assert x == (0, 1) and y == (2, 3)

    def test_bipartition_odd_cycle_is_none(self):
        g = parse_graph(
            doc({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])
        )
        assert bipartition(g, components(g).components[0]) is None

    def test_x_side_follows_first_tail(self):
        # first edge y1 -> x1, so the X side is the one holding y1
        g = parse_graph(doc({"x1": 1, "y1": 1}, [("y1", "x1")]))
        x, y = bipartition(g, components(g).components[0])
        assert g.names[x[0]] == "y1"

    def test_degree_is_undirected(self):
        g = parse_graph(P5)
        assert g.degree(g.index_of("b")) == 2
        assert g.out_neighbors(g.index_of("c")) == (
            g.index_of("b"), g.index_of("d"),
        )

    def test_gap_free_k22(self):
        g = parse_graph(K22)
        free, witness = is_gap_free(g, components(g).components[0])
        assert free and witness is None

    def test_path_four_vertices_gap_free(self):
        g = parse_graph(
            doc({"x1": 1, "y1": 1, "x2": 1, "y2": 1},
                [("x1", "y1"), ("x2", "y1"), ("x2", "y2")])
        )
        assert is_gap_free(g, components(g).components[0])[0]

    @pytest.mark.parametrize("extra", [0, 1])
    def test_long_paths_have_gaps(self, extra):
        # P5 and P6 both contain an induced pair of disjoint edges
        weights = {"a": 1, "b": 1, "c": 1, "d": 1, "e": 1}
        edges = [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")]
        if extra:
            weights["f"] = 1
            edges.append(("e", "f"))
        g = parse_graph(doc(weights, edges))
        free, witness = is_gap_free(g, components(g).components[0])
        assert not free
        (a, b), (c, d) = witness
        assert {a, b}.isdisjoint({c, d})

    def test_gap_free_matches_brute_force(self):
        rng = random.Random(207)
        for _ in range(120):
            n = rng.randint(2, 7)
            names = tuple(f"v{i}" for i in range(n))
            pairs = [
                (i, j) for i in range(n) for j in range(i + 1, n)
            ]
            rng.shuffle(pairs)
            edges = tuple(pairs[: rng.randint(1, min(len(pairs), 12))])
            touched = {v for e in edges for v in e}
            if len(touched) != n:
                continue
            g = WeightedOrientedGraph(names, (1,) * n, edges)
            for comp in components(g).components:
                free, _ = is_gap_free(g, comp)
                local = [e for e in edges if e[0] in set(comp)]
                und = {frozenset(e) for e in local}
                expected = True
                for e in local:
                    for f in local:
                        if set(e) & set(f):
                            continue
                        if not any(
                            frozenset((u, v)) in und for u in e for v in f
                        ):
                            expected = False
                assert free == expected


class TestNestedOrder:
    def test_k22(self):
        g = parse_graph(K22)
        order = nested_order(g, components(g).components[0])
        assert order.k_sequence == (2, 2)
        assert set(order.y_order) == {2, 3}

    def test_three_step_chain(self):
        g = parse_graph(
            doc({"x3": 1, "x4": 1, "x5": 1, "y3": 2, "y4": 2},
                [("x3", "y3"), ("x4", "y3"), ("x4", "y4"),
                 ("x5", "y3"), ("x5", "y4")])
        )
        order = nested_order(g, components(g).components[0])
        assert order.k_sequence == (1, 2, 2)
        assert [g.names[v] for v in order.x_order] == ["x3", "x4", "x5"]
        assert [g.names[v] for v in order.y_order] == ["y3", "y4"]

    def test_star(self):
        g = parse_graph(
            doc({"x1": 1, "y1": 2, "y2": 2, "y3": 4},
                [("x1", "y1"), ("x1", "y2"), ("x1", "y3")])
        )
        order = nested_order(g, components(g).components[0])
        assert order.k_sequence == (3,)

    def test_gap_breaks_the_prefix_property(self):
        g = parse_graph(P5)
        with pytest.raises(NestedOrderViolation):
            nested_order(g, components(g).components[0])

    def test_chain_structure_iff_gap_free(self):
        # on connected bipartite graphs the nested order exists exactly
        # when the graph is gap-free
        rng = random.Random(99)
        seen_both = set()
        for _ in range(300):
            nx, ny = rng.randint(1, 4), rng.randint(1, 4)
            all_pairs = [(i, nx + j) for i in range(nx) for j in range(ny)]
            rng.shuffle(all_pairs)
            edges = tuple(sorted(all_pairs[: rng.randint(1, len(all_pairs))]))
            names = tuple(
                [f"x{i}" for i in range(nx)] + [f"y{j}" for j in range(ny)]
            )
            touched = {v for e in edges for v in e}
            if len(touched) != nx + ny:
                continue
            g = WeightedOrientedGraph(names, (1,) * (nx + ny), edges)
            comps = components(g).components
            if len(comps) != 1:
                continue
            free, _ = is_gap_free(g, comps[0])
            try:
                nested_order(g, comps[0])
                ordered = True
            except NestedOrderViolation:
                ordered = False
            assert ordered == free
            seen_both.add(free)
        assert seen_both == {True, False}


class TestHypothesisReport:
    def test_applicable_union(self):
        g = parse_graph(
            doc({"x1": 1, "y1": 2, "x2": 1, "y2": 5},
                [("x1", "y1"), ("x2", "y2")])
        )
        rep = hypothesis_report(g)
        assert rep.applicable
        assert rep.failures == ()
        assert [c.b for c in rep.components] == [1, 1]
        assert [c.k_sequence for c in rep.components] == [(1,), (1,)]

    def test_wrong_orientation_reported(self):
        g = parse_graph(
            doc({"x1": 1, "x2": 1, "y1": 2, "y2": 2},
                [("x1", "y1"), ("y2", "x1"), ("y1", "x2"), ("x2", "y2")])
        )
        rep = hypothesis_report(g)
        assert not rep.applicable
        assert any("not oriented from the X side" in f for f in rep.failures)
        assert rep.components[0].bipartite
        assert rep.components[0].gap_free

    def test_odd_cycle_reported(self):
        g = parse_graph(
            doc({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])
        )
        rep = hypothesis_report(g)
        assert not rep.applicable
        assert any("not bipartite" in f for f in rep.failures)
        assert rep.components[0].b is None

    def test_gap_reported_with_witness(self):
        g = parse_graph(P5)
        rep = hypothesis_report(g)
        assert not rep.applicable
        assert rep.components[0].gap_witness is not None
        assert any("gap" in f for f in rep.failures)

    def test_to_dict_shape(self):
        d = hypothesis_report(parse_graph(K22)).to_dict()
        assert d["applicable"] is True
        assert d["components"][0]["bipartite"] is True


class TestGenerators:
    def test_deterministic(self):
        a = random_applicable_graph(seed="5:3")
        b = random_applicable_graph(seed="5:3")
        assert a == b
        assert random_applicable_graph(seed="5:4") != a

    def test_always_applicable(self):
        for i in range(1000):
            g = random_applicable_graph(
                seed=f"prop:{i}", max_components=3, max_x=4, max_y=4,
                max_weight=3,
            )
            rep = hypothesis_report(g)
            assert rep.applicable, (i, rep.failures)

    def test_chain_shape(self):
        g = random_gap_free_bipartite(3, 4, 2, seed=41)
        comp = components(g).components
        assert len(comp) == 1
        order = nested_order(g, comp[0])
        assert order.k_sequence[-1] == 4
        assert all(
            a <= b for a, b in zip(order.k_sequence, order.k_sequence[1:])
        )

    def test_union_numbering_stays_global(self):
        g = random_applicable_graph(seed="union:1", max_components=3)
        assert len(set(g.names)) == g.n_vertices

    def test_disjoint_union_rejects_name_clash(self):
        g = random_gap_free_bipartite(1, 1, 1, seed=0)
        with pytest.raises(GraphError):
            disjoint_union([g, g])

    def test_scramble_orientation(self):
        g = random_applicable_graph(seed="flip:0", max_x=3, max_y=3)
        s1 = scramble_orientation(g, seed="flip")
        s2 = scramble_orientation(g, seed="flip")
        assert s1 == s2
        assert {frozenset(e) for e in s1.edges} == {
            frozenset(e) for e in g.edges
        }
        heads = {h for _, h in s1.edges}
        for v in range(s1.n_vertices):
            if v not in heads:
                assert s1.weights[v] == 1
