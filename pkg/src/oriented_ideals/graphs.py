"""Vertex-weighted oriented graphs and the hypothesis checks for them.

A weighted oriented graph is a finite simple directed graph with a
positive integer weight on every vertex.  Sources (in-degree zero) must
carry weight 1, isolated vertices are not allowed, and neither are
loops, parallel edges, or anti-parallel edge pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised for documents or graphs that violate the input contract."""


class NestedOrderViolation(RuntimeError):
    """Internal consistency failure while ordering a chain component."""


@dataclass(frozen=True)
class WeightedOrientedGraph:
    """Immutable weighted oriented graph over vertices 0..n-1.

    ``names[i]`` and ``weights[i]`` describe vertex i; each edge is a
    (tail, head) index pair.  Validation of the structural rules happens
    on construction, so every instance in circulation is legal.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.weights) != n:
            raise GraphError("weights and names must have equal length")
        if n == 0:
            raise GraphError("graph must have at least one vertex")
        for i, w in enumerate(self.weights):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise GraphError(
                    f"vertex {self.names[i]!r} has weight {w!r}; weights must be positive integers"
                )
        seen: set[tuple[int, int]] = set()
        touched = [False] * n
        heads = set()
        for t, h in self.edges:
            if not (0 <= t < n and 0 <= h < n):
                raise GraphError(f"edge ({t}, {h}) references a missing vertex")
            if t == h:
                raise GraphError(f"loop at vertex {self.names[t]!r} is not allowed")
            if (t, h) in seen:
                raise GraphError(
                    f"duplicate edge {self.names[t]!r} -> {self.names[h]!r}"
                )
            if (h, t) in seen:
                raise GraphError(
                    f"anti-parallel pair between {self.names[t]!r} and {self.names[h]!r}"
                )
            seen.add((t, h))
            touched[t] = touched[h] = True
            heads.add(h)
        for i, ok in enumerate(touched):
            if not ok:
                raise GraphError(f"vertex {self.names[i]!r} is isolated")
        for i in range(n):
            if i not in heads and self.weights[i] != 1:
                raise GraphError(
                    f"vertex {self.names[i]!r} is a source but has weight "
                    f"{self.weights[i]}; sources must have weight 1"
                )

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def neighbors(self, v: int) -> set[int]:
        """Neighbours of v in the underlying undirected graph."""
        out = set()
        for t, h in self.edges:
            if t == v:
                out.add(h)
            elif h == v:
                out.add(t)
        return out

    def degree(self, v: int) -> int:
        """Degree of v in the underlying undirected graph."""
        return sum(1 for t, h in self.edges if v in (t, h))

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(h for t, h in self.edges if t == v)

    def to_document(self) -> dict:
        return {
            "vertices": [
                {"name": nm, "weight": w} for nm, w in zip(self.names, self.weights)
            ],
            "edges": [[self.names[t], self.names[h]] for t, h in self.edges],
        }


def parse_graph(document: dict) -> WeightedOrientedGraph:
    """Build a graph from a plain document of the form

        {"vertices": [{"name": "x1", "weight": 1}, ...],
         "edges": [["x1", "y1"], ...]}

    where each edge is a [tail, head] pair of vertex names.
    """
    if not isinstance(document, dict):
        raise GraphError("graph document must be a mapping")
    verts = document.get("vertices")
    edges = document.get("edges")
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise GraphError("graph document needs 'vertices' and 'edges' lists")
    names: list[str] = []
    weights: list[int] = []
    for entry in verts:
        if not isinstance(entry, dict) or "name" not in entry or "weight" not in entry:
            raise GraphError(f"malformed vertex entry: {entry!r}")
        name = entry["name"]
        if not isinstance(name, str) or not name:
            raise GraphError(f"vertex name must be a nonempty string, got {name!r}")
        if name in names:
            raise GraphError(f"duplicate vertex name {name!r}")
        names.append(name)
        weights.append(entry["weight"])
    index = {nm: i for i, nm in enumerate(names)}
    edge_idx: list[tuple[int, int]] = []
    for entry in edges:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise GraphError(f"malformed edge entry: {entry!r}")
        t, h = entry
        if t not in index:
            raise GraphError(f"edge references unknown vertex {t!r}")
        if h not in index:
            raise GraphError(f"edge references unknown vertex {h!r}")
        edge_idx.append((index[t], index[h]))
    return WeightedOrientedGraph(tuple(names), tuple(weights), tuple(edge_idx))


def load_graph(path: str) -> WeightedOrientedGraph:
    import json

    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"not valid JSON: {exc}") from exc
    return parse_graph(doc)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of the underlying undirected graph."""

    components: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)


def components(g: WeightedOrientedGraph) -> ComponentDecomposition:
    """Connected components, each a sorted vertex tuple, ordered by least vertex."""
    n = g.n_vertices
    adj: list[set[int]] = [set() for _ in range(n)]
    for t, h in g.edges:
        adj[t].add(h)
        adj[h].add(t)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return ComponentDecomposition(tuple(comps))


def bipartition(
    g: WeightedOrientedGraph, component: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-colour one component; None if an odd cycle makes that impossible.

    The X side is the one containing the tail of the component's first
    edge in input order, so a properly oriented component always gets
    its source side as X.
    """
    members = set(component)
    color: dict[int, int] = {}
    start = component[0]
    color[start] = 0
    queue = [start]
    adj: dict[int, set[int]] = {v: set() for v in component}
    first_tail = None
    for t, h in g.edges:
        if t in members:
            adj[t].add(h)
            adj[h].add(t)
            if first_tail is None:
                first_tail = t
    while queue:
        v = queue.pop()
        for u in adj[v]:
            if u not in color:
                color[u] = 1 - color[v]
                queue.append(u)
            elif color[u] == color[v]:
                return None
    x_color = color[first_tail]
    x = tuple(sorted(v for v in component if color[v] == x_color))
    y = tuple(sorted(v for v in component if color[v] != x_color))
    return x, y


def is_gap_free(
    g: WeightedOrientedGraph, component: tuple[int, ...]
) -> tuple[bool, tuple[tuple[int, int], tuple[int, int]] | None]:
    """Check that no two vertex-disjoint edges lack a connecting edge.

    Returns (True, None) or (False, witness) where the witness is the
    first offending edge pair in input order.
    """
    members = set(component)
    local = [e for e in g.edges if e[0] in members]
    undirected = {frozenset(e) for e in local}
    for i, (a, b) in enumerate(local):
        for c, d in local[i + 1 :]:
            if {a, b} & {c, d}:
                continue
            if any(
                frozenset((u, v)) in undirected for u in (a, b) for v in (c, d)
            ):
                continue
            return False, ((a, b), (c, d))
    return True, None


@dataclass(frozen=True)
class NestedOrder:
    """Canonical ordering of a connected chain-graph component.

    ``x_order`` lists the X side by (degree, index) ascending, ``y_order``
    the Y side by degree descending then index, and ``k_sequence[i]`` is
    the neighbourhood size of ``x_order[i]``; the neighbourhood of each
    x is exactly the first k_i vertices of ``y_order``.
    """

    x_order: tuple[int, ...]
    y_order: tuple[int, ...]
    k_sequence: tuple[int, ...]


def nested_order(
    g: WeightedOrientedGraph, component: tuple[int, ...]
) -> NestedOrder:
    """Order a bipartite gap-free component by nested neighbourhoods.

    Raises NestedOrderViolation if the prefix property fails, which
    cannot happen when the component really is bipartite and gap-free.
    """
    sides = bipartition(g, component)
    if sides is None:
        raise NestedOrderViolation("component is not bipartite")
    x_side, y_side = sides
    x_order = tuple(sorted(x_side, key=lambda v: (g.degree(v), v)))
    y_order = tuple(sorted(y_side, key=lambda v: (-g.degree(v), v)))
    k_sequence = []
    prev = 0
    for x in x_order:
        nb = g.neighbors(x)
        k = len(nb)
        if k < prev:
            raise NestedOrderViolation("neighbourhood sizes not nondecreasing")
        if nb != set(y_order[:k]):
            raise NestedOrderViolation(
                f"neighbourhood of {g.names[x]!r} is not an initial segment"
            )
        k_sequence.append(k)
        prev = k
    if k_sequence and k_sequence[-1] != len(y_order):
        raise NestedOrderViolation("largest neighbourhood does not cover the Y side")
    return NestedOrder(x_order, y_order, tuple(k_sequence))


@dataclass(frozen=True)
class ComponentCheck:
    vertices: tuple[int, ...]
    bipartite: bool
    x_side: tuple[int, ...] | None
    y_side: tuple[int, ...] | None
    gap_free: bool
    gap_witness: tuple[tuple[int, int], tuple[int, int]] | None
    properly_oriented: bool
    b: int | None  # max(|X|, |Y|) when bipartite
    k_sequence: tuple[int, ...] | None  # defined when bipartite and gap-free
    failures: tuple[str, ...]


@dataclass(frozen=True)
class HypothesisReport:
    """Which formula hypotheses hold, component by component."""

    components: tuple[ComponentCheck, ...]
    applicable: bool

    @property
    def failures(self) -> tuple[str, ...]:
        out: list[str] = []
        for c in self.components:
            out.extend(c.failures)
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "components": [
                {
                    "vertices": list(c.vertices),
                    "bipartite": c.bipartite,
                    "gap_free": c.gap_free,
                    "properly_oriented": c.properly_oriented,
                    "failures": list(c.failures),
                }
                for c in self.components
            ],
        }


def hypothesis_report(g: WeightedOrientedGraph) -> HypothesisReport:
    """Check every component for: bipartite, gap-free, edges oriented X to Y."""
    checks = []
    for ci, comp in enumerate(components(g).components):
        failures = []
        sides = bipartition(g, comp)
        x_side = y_side = None
        oriented = False
        if sides is None:
            failures.append(f"component {ci} is not bipartite")
        else:
            x_side, y_side = sides
            xset = set(x_side)
            # a successful two-colouring leaves no edge inside a side,
            # so orientation is proper exactly when every tail is in X
            bad = [e for e in g.edges if e[0] in set(comp) and e[0] not in xset]
            oriented = not bad
            if bad:
                t, h = bad[0]
                failures.append(
                    f"component {ci} has edge {g.names[t]} -> {g.names[h]} "
                    "not oriented from the X side"
                )
        free, witness = is_gap_free(g, comp)
        if not free:
            (a, b), (c, d) = witness
            failures.append(
                f"component {ci} has a gap: edges {g.names[a]}{g.names[b]} "
                f"and {g.names[c]}{g.names[d]}"
            )
        k_seq = None
        if sides is not None and free:
            k_seq = nested_order(g, comp).k_sequence
        checks.append(
            ComponentCheck(
                vertices=comp,
                bipartite=sides is not None,
                x_side=x_side,
                y_side=y_side,
                gap_free=free,
                gap_witness=witness,
                properly_oriented=oriented,
                b=max(len(x_side), len(y_side)) if sides is not None else None,
                k_sequence=k_seq,
                failures=tuple(failures),
            )
        )
    return HypothesisReport(
        components=tuple(checks), applicable=all(not c.failures for c in checks)
    )


def _uniform_k_sequence(rng: random.Random, n_x: int, n_y: int) -> list[int]:
    # Nondecreasing k_1 <= ... <= k_{n_x} = n_y, uniform over all such
    # sequences via the multiset <-> combination bijection.
    if n_x == 1:
        return [n_y]
    picks = sorted(rng.sample(range(1, n_y + n_x - 1), n_x - 1))
    return [c - i for i, c in enumerate(picks)] + [n_y]


def random_gap_free_bipartite(
    n_x: int,
    n_y: int,
    max_weight: int,
    seed,
    x_start: int = 1,
    y_start: int = 1,
) -> WeightedOrientedGraph:
    """Random connected chain graph on parts of size n_x, n_y.

    Edges run x_i -> y_j for j <= k_i where the k-sequence is drawn
    uniformly among nondecreasing sequences ending at n_y.  X vertices
    get weight 1, Y weights are uniform in [1, max_weight].  Vertex
    names start at x{x_start} / y{y_start} so unions can keep global
    numbering.
    """
    if n_x < 1 or n_y < 1:
        raise ValueError("both sides need at least one vertex")
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    rng = random.Random(seed)
    ks = _uniform_k_sequence(rng, n_x, n_y)
    names = [f"x{x_start + i}" for i in range(n_x)]
    names += [f"y{y_start + j}" for j in range(n_y)]
    weights = [1] * n_x + [rng.randint(1, max_weight) for _ in range(n_y)]
    edges = []
    for i, k in enumerate(ks):
        for j in range(k):
            edges.append((i, n_x + j))
    return WeightedOrientedGraph(tuple(names), tuple(weights), tuple(edges))


def disjoint_union(graphs: list[WeightedOrientedGraph]) -> WeightedOrientedGraph:
    """Concatenate graphs with distinct vertex names into one graph."""
    names: list[str] = []
    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    for g in graphs:
        offset = len(names)
        if set(g.names) & set(names):
            raise GraphError("union requires disjoint vertex names")
        names.extend(g.names)
        weights.extend(g.weights)
        edges.extend((t + offset, h + offset) for t, h in g.edges)
    return WeightedOrientedGraph(tuple(names), tuple(weights), tuple(edges))


def random_applicable_graph(
    seed,
    max_components: int = 2,
    max_x: int = 4,
    max_y: int = 4,
    max_weight: int = 3,
) -> WeightedOrientedGraph:
    """Random disjoint union of chain graphs, always formula-applicable."""
    rng = random.Random(seed)
    s = rng.randint(1, max_components)
    parts = []
    x_next = y_next = 1
    for c in range(s):
        n_x = rng.randint(1, max_x)
        n_y = rng.randint(1, max_y)
        sub_seed = rng.randrange(2**62)
        parts.append(
            random_gap_free_bipartite(
                n_x, n_y, max_weight, sub_seed, x_start=x_next, y_start=y_next
            )
        )
        x_next += n_x
        y_next += n_y
    return disjoint_union(parts)


def scramble_orientation(g: WeightedOrientedGraph, seed) -> WeightedOrientedGraph:
    """Re-orient each edge by a fair coin toss, for negative controls.

    Weights follow the re-orientation convention: a vertex that becomes
    a source gets weight 1, every other vertex keeps its weight.
    """
    rng = random.Random(seed)
    new_edges = tuple(
        (h, t) if rng.random() < 0.5 else (t, h) for t, h in g.edges
    )
    heads = {h for _, h in new_edges}
    new_weights = tuple(
        w if i in heads else 1 for i, w in enumerate(g.weights)
    )
    return WeightedOrientedGraph(g.names, new_weights, new_edges)
