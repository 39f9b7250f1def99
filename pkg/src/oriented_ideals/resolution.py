"""Multigraded Betti numbers of monomial ideals, from first principles.

For each multidegree a in the lcm lattice of I, the Betti number
β_{i,a}(I) is the dimension of the reduced homology H̃_{i-1} of the
upper Koszul complex K^a(I) = { τ ⊆ supp(a) : x^{a-τ} ∈ I }.  Homology
is computed over the rationals with exact integer arithmetic, so the
numbers are characteristic-zero ground truth.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from .ideals import Monomial, MonomialIdeal

DEFAULT_LATTICE_CAP = 200_000
DEFAULT_GROUND_LIMIT = 20
CAP_ENV_VAR = "ORIENTED_IDEAL_LATTICE_CAP"


class CapExceeded(RuntimeError):
    """Lcm lattice grew past the configured size cap."""

    def __init__(self, count: int):
        super().__init__(f"lcm lattice exceeded the cap at {count} elements")
        self.count = count


class GroundSetTooLarge(RuntimeError):
    """A multidegree's support is too large for face enumeration."""


def effective_cap(cap: int | None = None) -> int:
    """Explicit cap, else the environment override, else the default."""
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_LATTICE_CAP


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def lcm_lattice(
    ideal: MonomialIdeal, cap: int | None = None
) -> tuple[tuple[int, ...], ...]:
    """All lcms of nonempty generator subsets, graded-lex sorted.

    Computed as the closure of the generator set under lcm with a
    generator; raises CapExceeded once the element count passes the cap.
    """
    if ideal.is_zero:
        raise ValueError("zero ideal has no lcm lattice")
    limit = effective_cap(cap)
    gens = [g.exponents for g in ideal.gens]
    gens_arr = np.array(gens, dtype=np.int64)
    seen = set(gens)
    if len(seen) > limit:
        raise CapExceeded(len(seen))
    work = list(gens)
    while work:
        a = work.pop()
        ups = np.maximum(gens_arr, np.array(a, dtype=np.int64)).tolist()
        for row in ups:
            m = tuple(row)
            if m not in seen:
                seen.add(m)
                if len(seen) > limit:
                    raise CapExceeded(len(seen))
                work.append(m)
    return tuple(sorted(seen, key=lambda e: (sum(e), e)))


class UpperKoszulComplex:
    """The complex K^a(I) described by its maximal faces.

    Ground set is supp(a) as variable indices.  Every face is a subset
    of S_g = { v : g_v < a_v } for some generator g dividing x^a, and
    the facets are the maximal such S_g.
    """

    __slots__ = ("ground", "facets")

    def __init__(self, ground: tuple[int, ...], facets: tuple[frozenset, ...]):
        self.ground = ground
        self.facets = facets

    def is_face(self, tau) -> bool:
        t = frozenset(tau)
        if not t <= set(self.ground):
            return False
        return any(t <= f for f in self.facets)

    @property
    def dimension(self) -> int:
        """Dimension of the complex; -1 for {∅}, -2 for the void complex."""
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1


def upper_koszul_complex(ideal: MonomialIdeal, a) -> UpperKoszulComplex:
    """Build K^a(I) for a multidegree a (exponent tuple or Monomial)."""
    exps = a.exponents if isinstance(a, Monomial) else tuple(a)
    ground = tuple(i for i, e in enumerate(exps) if e > 0)
    masks: set[frozenset] = set()
    for g in ideal.gens:
        ge = g.exponents
        if all(x <= y for x, y in zip(ge, exps)):
            masks.add(frozenset(v for v in ground if ge[v] < exps[v]))
    facets = tuple(m for m in masks if not any(m < o for o in masks))
    return UpperKoszulComplex(ground, facets)


def _matrix_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows if any(row)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    row_at = 0
    for col in range(ncols):
        # pivot with the smallest nonzero magnitude to limit growth
        best = None
        for r in range(row_at, len(m)):
            v = m[r][col]
            if v:
                if best is None or abs(v) < abs(m[best][col]):
                    best = r
                    if abs(v) == 1:
                        break
        if best is None:
            continue
        m[row_at], m[best] = m[best], m[row_at]
        piv_row = m[row_at]
        piv = piv_row[col]
        for r in range(row_at + 1, len(m)):
            cur = m[r]
            factor = cur[col]
            for c in range(col, ncols):
                cur[c] = (piv * cur[c] - factor * piv_row[c]) // prev
        prev = piv
        rank += 1
        row_at += 1
        if row_at == len(m):
            break
    return rank


def _closure_by_card(facet_masks: tuple[int, ...]) -> list[set[int]]:
    """All faces of the generated complex, grouped by cardinality."""
    top = max(mask.bit_count() for mask in facet_masks)
    by_card: list[set[int]] = [set() for _ in range(top + 1)]
    for mask in facet_masks:
        by_card[mask.bit_count()].add(mask)
    for card in range(top, 0, -1):
        lower = by_card[card - 1]
        for mask in by_card[card]:
            m = mask
            while m:
                bit = m & -m
                lower.add(mask ^ bit)
                m ^= bit
    return by_card


def _collapse(by_card: list[set[int]], ground_size: int) -> None:
    """Remove free face pairs in place until none are left.

    A pair (τ, σ) is removable when σ is the only face covering τ and σ
    itself is maximal; the removal is an elementary collapse, so the
    homotopy type never changes.  The empty face takes part (card 0),
    which lets contractible complexes collapse all the way to nothing.
    """
    count: dict[int, int] = {}
    for faces in by_card:
        for f in faces:
            count[f] = 0
    for card in range(1, len(by_card)):
        for f in by_card[card]:
            m = f
            while m:
                bit = m & -m
                count[f ^ bit] += 1
                m ^= bit
    queue = deque(f for f, c in count.items() if c == 1)

    def drop_coface_of_subfaces(face: int, skip: int) -> None:
        m = face
        while m:
            bit = m & -m
            sub = face ^ bit
            m ^= bit
            if sub == skip or sub not in count:
                continue
            count[sub] -= 1
            c = count[sub]
            if c == 1:
                queue.append(sub)
            elif c == 0:
                # sub became maximal: its free subfaces are live again
                mm = sub
                while mm:
                    b2 = mm & -mm
                    s2 = sub ^ b2
                    mm ^= b2
                    if count.get(s2) == 1:
                        queue.append(s2)

    while queue:
        tau = queue.popleft()
        if count.get(tau) != 1:
            continue
        card = tau.bit_count()
        if card + 1 >= len(by_card):
            continue
        sigma = -1
        for v in range(ground_size):
            cand = tau | (1 << v)
            if cand != tau and cand in by_card[card + 1]:
                sigma = cand
                break
        if sigma < 0 or count[sigma] != 0:
            continue
        del count[tau]
        del count[sigma]
        by_card[card].remove(tau)
        by_card[card + 1].remove(sigma)
        drop_coface_of_subfaces(sigma, skip=tau)
        drop_coface_of_subfaces(tau, skip=-1)


def _ranks_from_faces(by_card: list[set[int]]) -> list[int]:
    """ranks[c] = rank of the boundary map from card c to card c-1."""
    top = len(by_card) - 1
    ranks = [0] * (top + 2)
    for card in range(1, top + 1):
        if not by_card[card]:
            continue
        cols = {mask: i for i, mask in enumerate(sorted(by_card[card - 1]))}
        rows = []
        for mask in sorted(by_card[card]):
            row = [0] * len(cols)
            pos = 0
            m = mask
            while m:
                bit = m & -m
                row[cols[mask ^ bit]] = 1 if pos % 2 == 0 else -1
                pos += 1
                m ^= bit
            rows.append(row)
        ranks[card] = _matrix_rank(rows)
    return ranks


def _homology_from_masks(
    ground_size: int,
    facet_masks: tuple[int, ...],
    collapse: bool = True,
) -> dict[int, int]:
    """Reduced homology dims {k: dim} of the complex with the given facets.

    Facets are bitmasks over 0..ground_size-1; the empty complex (no
    facets at all) has no homology, and the complex {∅} has H̃_{-1}=1.
    Degrees with dimension zero are omitted.
    """
    if not facet_masks:
        return {}
    by_card = _closure_by_card(facet_masks)
    if collapse:
        _collapse(by_card, ground_size)
    ranks = _ranks_from_faces(by_card)
    dims = {}
    for card in range(0, len(by_card)):
        d = len(by_card[card]) - ranks[card] - ranks[card + 1]
        if d:
            dims[card - 1] = d
    return dims


def _compact_masks(masks: list[int]) -> tuple[int, tuple[int, ...]]:
    """Renumber the vertices that actually occur to 0..size-1."""
    used = 0
    for m in masks:
        used |= m
    remap = {}
    u = used
    while u:
        bit = u & -u
        remap[bit] = len(remap)
        u ^= bit
    out = []
    for m in masks:
        nm = 0
        while m:
            bit = m & -m
            nm |= 1 << remap[bit]
            m ^= bit
        out.append(nm)
    return len(remap), tuple(sorted(out))


def _dowker_reduce(
    masks, stop_on_cone: bool = True
) -> tuple[int, tuple[int, ...], bool]:
    """Shrink a generated complex without changing its homotopy type.

    The complex generated by facets {S_i} is covered by the full
    simplices on the S_i; all intersections of cover members are again
    simplices, so the nerve lemma applies and the complex is homotopy
    equivalent to the complex generated by {F_v}, where F_v indexes the
    facets containing vertex v (Dowker duality).  Swapping to the side
    with fewer vertices shrinks the middle binomials that drive the
    rank computations; iterate while it keeps shrinking.

    Returns (ground_size, facet_masks, contractible).  With
    stop_on_cone, a detected cone returns immediately with the flag set
    (its reduced homology vanishes); otherwise cones are normalized
    like everything else and the flag stays False.
    """
    masks = set(masks)
    if not masks:
        return 0, (), False
    if masks == {0}:
        return 0, (0,), False
    masks.discard(0)  # the empty face lies in every nonempty complex
    while True:
        maximal = [
            m for m in masks if not any(m != o and m & o == m for o in masks)
        ]
        size, norm = _compact_masks(maximal)
        inter = norm[0]
        for m in norm[1:]:
            inter &= m
        if inter and stop_on_cone:
            return size, norm, True
        k = len(norm)
        if k >= size:
            return size, norm, False
        dual = [0] * size
        for i, m in enumerate(norm):
            v = 0
            while m:
                bit = m & -m
                dual[bit.bit_length() - 1] |= 1 << i
                m ^= bit
        masks = set(dual)


def reduced_homology_dims(
    complex_: UpperKoszulComplex,
    top_dim: int | None = None,
    ground_limit: int | None = None,
    dowker: bool = True,
) -> dict[int, int]:
    """dim H̃_k for k = -1 .. top_dim (defaults to the complex dimension).

    dowker=False skips every homotopy-preserving reduction (duality and
    collapsing both) and ranks the full boundary matrices; results must
    agree either way, which the test suite exercises.
    """
    limit = ground_limit if ground_limit is not None else DEFAULT_GROUND_LIMIT
    pos = {v: i for i, v in enumerate(complex_.ground)}
    masks = tuple(
        sum(1 << pos[v] for v in f) for f in complex_.facets
    )
    if dowker:
        size, masks, _ = _dowker_reduce(masks, stop_on_cone=False)
    else:
        size = len(complex_.ground)
    if size > limit:
        raise GroundSetTooLarge(
            f"ground set of size {size} exceeds limit {limit}"
        )
    dims = _homology_from_masks(size, masks, collapse=dowker)
    hi = top_dim if top_dim is not None else max(dims, default=-1)
    return {k: dims.get(k, 0) for k in range(-1, hi + 1)}


def face_counts(complex_: UpperKoszulComplex) -> dict[int, int]:
    """Number of faces by dimension (the empty face counts at dim -1)."""
    pos = {v: i for i, v in enumerate(complex_.ground)}
    masks = tuple(sum(1 << pos[v] for v in f) for f in complex_.facets)
    if not masks:
        return {}
    top = max(m.bit_count() for m in masks)
    by_card: list[set[int]] = [set() for _ in range(top + 1)]
    for m in masks:
        by_card[m.bit_count()].add(m)
    for card in range(top, 0, -1):
        lower = by_card[card - 1]
        for mask in by_card[card]:
            m = mask
            while m:
                bit = m & -m
                lower.add(mask ^ bit)
                m ^= bit
    return {card - 1: len(faces) for card, faces in enumerate(by_card)}


@dataclass
class BettiTable:
    """Multigraded Betti numbers plus their total-degree aggregation."""

    n_vars: int
    entries: dict  # (i, exponent tuple) -> β_{i,a} > 0
    lattice_size: int

    def totals(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (i, a), b in self.entries.items():
            key = (i, sum(a))
            out[key] = out.get(key, 0) + b
        return out

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        return max(sum(a) - i for i, a in self.entries)

    @property
    def beta0_total(self) -> int:
        return sum(b for (i, _), b in self.entries.items() if i == 0)


def _support_groups(ideal: MonomialIdeal) -> list[list[Monomial]]:
    """Generators grouped by connectivity of shared support variables."""
    parent = list(range(ideal.n_vars))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in ideal.gens:
        sup = g.support
        for v in sup[1:]:
            parent[find(v)] = find(sup[0])
    groups: dict[int, list[Monomial]] = {}
    for g in ideal.gens:
        groups.setdefault(find(g.support[0]), []).append(g)
    return list(groups.values())


def _tensor_combine(t1: dict, t2: dict) -> dict:
    """Betti entries of I+J from those of I and J when supports are disjoint."""
    out = dict(t1)
    for key, b in t2.items():
        out[key] = out.get(key, 0) + b
    for (i1, a1), b1 in t1.items():
        for (i2, a2), b2 in t2.items():
            key = (i1 + i2 + 1, tuple(x + y for x, y in zip(a1, a2)))
            out[key] = out.get(key, 0) + b1 * b2
    return out


def betti_table(
    ideal: MonomialIdeal,
    cap: int | None = None,
    ground_limit: int | None = None,
    split: bool = True,
    cone_shortcut: bool = True,
) -> BettiTable:
    """Full multigraded Betti table of a nonzero monomial ideal.

    With split=True, generators whose supports never touch are resolved
    independently and combined by the standard tensor formula for sums
    of ideals in disjoint variables; split=False forces the single
    whole-lattice computation (slower, used to cross-check the split).
    """
    if ideal.is_zero:
        raise ValueError("Betti table of the zero ideal is not defined here")
    groups = _support_groups(ideal) if split else [list(ideal.gens)]
    tables = []
    total_lattice = 0
    for gens in groups:
        sub = MonomialIdeal(ideal.n_vars, gens)
        lattice = lcm_lattice(sub, cap)
        total_lattice += len(lattice)
        gens_arr = np.array([g.exponents for g in sub.gens], dtype=np.int64)
        entries: dict = {}
        cache: dict = {}
        for a in lattice:
            ground = [i for i, e in enumerate(a) if e > 0]
            if len(ground) > 62:
                raise GroundSetTooLarge(
                    f"support of size {len(ground)} exceeds the mask width"
                )
            arr_a = np.array(a, dtype=np.int64)
            dividing = gens_arr[(gens_arr <= arr_a).all(axis=1)]
            # bit v of the facet mask: generator exponent strictly below a_v
            weights = np.zeros(len(a), dtype=np.int64)
            weights[ground] = 1 << np.arange(len(ground), dtype=np.int64)
            masks = set(((dividing < arr_a) @ weights).tolist())
            size, norm, contractible = _dowker_reduce(
                masks, stop_on_cone=cone_shortcut
            )
            if contractible:
                continue
            if size > (
                ground_limit if ground_limit is not None else DEFAULT_GROUND_LIMIT
            ):
                raise GroundSetTooLarge(
                    f"reduced support of size {size} exceeds the ground-set limit"
                )
            key = (size, norm)
            dims = cache.get(key)
            if dims is None:
                dims = _homology_from_masks(size, norm)
                cache[key] = dims
            for k, d in dims.items():
                if d:
                    entries[(k + 1, a)] = entries.get((k + 1, a), 0) + d
        tables.append(entries)
    combined = tables[0]
    for t in tables[1:]:
        combined = _tensor_combine(combined, t)
    return BettiTable(ideal.n_vars, combined, total_lattice)


@dataclass(frozen=True)
class OracleInvariants:
    reg: int
    pd: int
    depth: int
    field_note: str = "characteristic 0"

    def to_dict(self) -> dict:
        return {
            "reg": self.reg,
            "pd": self.pd,
            "depth": self.depth,
            "field_note": self.field_note,
        }


def oracle_invariants(
    ideal: MonomialIdeal,
    ambient_n: int | None = None,
    cap: int | None = None,
    split: bool = True,
) -> OracleInvariants:
    """reg, pd and depth of the ideal, with depth = n - pd."""
    n = ambient_n if ambient_n is not None else ideal.n_vars
    table = betti_table(ideal, cap=cap, split=split)
    return invariants_from_table(table, n)


def invariants_from_table(table: BettiTable, ambient_n: int | None = None) -> OracleInvariants:
    n = ambient_n if ambient_n is not None else table.n_vars
    pd = table.pd
    return OracleInvariants(reg=table.reg, pd=pd, depth=n - pd)


def export_totals_csv(table: BettiTable) -> str:
    """Rows (i, j, beta) of the total Betti table as CSV text."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["i", "j", "beta"])
    for (i, j), b in sorted(table.totals().items()):
        writer.writerow([i, j, b])
    return buf.getvalue()


def export_multigraded_csv(table: BettiTable, names=None) -> str:
    """Rows (i, |a|, beta, a...) of the multigraded table as CSV text."""
    import csv
    import io

    cols = list(names) if names else [f"v{i}" for i in range(table.n_vars)]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["i", "total_degree", "beta"] + cols)
    for (i, a), b in sorted(table.entries.items()):
        writer.writerow([i, sum(a), b] + list(a))
    return buf.getvalue()
