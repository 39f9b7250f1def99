"""Exact monomial and monomial-ideal arithmetic over a fixed variable set.

Everything here is integer-exact.  An ideal is kept as its unique
minimal generating set in graded lexicographic order, so equality is a
plain list comparison.
"""

from __future__ import annotations

import itertools

import numpy as np

from .graphs import WeightedOrientedGraph

MAX_EXPONENT = 1 << 16


class Monomial:
    """A monomial as an exponent vector, with the total degree cached."""

    __slots__ = ("exponents", "degree")

    def __init__(self, exponents):
        exps = tuple(int(e) for e in exponents)
        for e in exps:
            if e < 0:
                raise ValueError(f"negative exponent in {exps}")
            if e >= MAX_EXPONENT:
                raise ValueError(f"exponent {e} exceeds the supported scale")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __lt__(self, other):
        # graded lexicographic: degree first, then exponent vector
        return (self.degree, self.exponents) < (other.degree, other.exponents)

    def __mul__(self, other):
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def __repr__(self):
        return f"Monomial{self.exponents}"

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self.exponents, other.exponents))

    def colon_by(self, f: "Monomial") -> "Monomial":
        """self : f, i.e. self / gcd(self, f)."""
        return Monomial(
            max(a - b, 0) for a, b in zip(self.exponents, f.exponents)
        )

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e > 0)


class UnitIdeal:
    """Sentinel for a colon that collapses to the whole ring."""

    is_unit = True

    def __repr__(self):
        return "UnitIdeal()"


UNIT_IDEAL = UnitIdeal()


def _minimal_rows(rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Keep the divisibility-minimal exponent vectors, graded-lex sorted."""
    uniq = sorted(set(rows), key=lambda e: (sum(e), e))
    if len(uniq) <= 64:
        kept: list[tuple[int, ...]] = []
        for m in uniq:
            if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
                kept.append(m)
        return kept
    # same scan vectorized; sorted by degree, so only earlier rows can divide
    arr = np.array(uniq, dtype=np.int64)
    kept_idx: list[int] = []
    kept_arr = np.empty((0, arr.shape[1]), dtype=np.int64)
    for i in range(arr.shape[0]):
        row = arr[i]
        if kept_arr.shape[0] and bool((kept_arr <= row).all(axis=1).any()):
            continue
        kept_idx.append(i)
        kept_arr = arr[kept_idx]
    return [uniq[i] for i in kept_idx]


class MonomialIdeal:
    """Monomial ideal in n_vars variables, stored by minimal generators."""

    __slots__ = ("n_vars", "gens")
    is_unit = False

    def __init__(self, n_vars: int, monomials):
        rows = []
        for m in monomials:
            exps = m.exponents if isinstance(m, Monomial) else tuple(m)
            if len(exps) != n_vars:
                raise ValueError("generator has wrong ambient size")
            rows.append(exps)
        minimal = _minimal_rows(rows)
        if any(sum(e) == 0 for e in minimal):
            raise ValueError("unit generator; the unit ideal is unrepresentable")
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "gens", tuple(Monomial(e) for e in minimal))

    def __setattr__(self, name, value):
        raise AttributeError("MonomialIdeal is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.n_vars == other.n_vars
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.n_vars, self.gens))

    def __repr__(self):
        return f"MonomialIdeal(n_vars={self.n_vars}, gens={list(self.gens)})"

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def contains_monomial(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)


def minimalize(n_vars: int, monomials) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by the given monomials.

    An empty input yields the zero ideal, the one documented empty case.
    """
    return MonomialIdeal(n_vars, monomials)


def edge_ideal(g: WeightedOrientedGraph) -> MonomialIdeal:
    """The edge ideal: one generator u * v^{w(v)} per directed edge u -> v."""
    n = g.n_vertices
    rows = []
    for t, h in g.edges:
        e = [0] * n
        e[t] += 1
        e[h] += g.weights[h]
        rows.append(tuple(e))
    return MonomialIdeal(n, rows)


def multiply(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Product ideal, minimalized."""
    if a.n_vars != b.n_vars:
        raise ValueError("ambient mismatch")
    if a.is_zero or b.is_zero:
        return MonomialIdeal(a.n_vars, [])
    if len(a.gens) * len(b.gens) > 2048:
        arr_a = np.array([g.exponents for g in a.gens], dtype=np.int64)
        arr_b = np.array([g.exponents for g in b.gens], dtype=np.int64)
        prods = (arr_a[:, None, :] + arr_b[None, :, :]).reshape(-1, a.n_vars)
        rows = [tuple(int(x) for x in row) for row in prods]
    else:
        rows = [
            tuple(x + y for x, y in zip(p.exponents, q.exponents))
            for p, q in itertools.product(a.gens, b.gens)
        ]
    return MonomialIdeal(a.n_vars, rows)


def power(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    """t-th power of the ideal; t must be at least 1."""
    if t < 1:
        raise ValueError("power requires t >= 1; the unit ideal is unsupported")
    out = ideal
    for _ in range(t - 1):
        out = multiply(out, ideal)
    return out


def colon(ideal: MonomialIdeal, f: Monomial) -> MonomialIdeal | UnitIdeal:
    """The colon ideal (I : f); returns the unit sentinel if it collapses."""
    if f.degree == 0:
        return ideal
    quotients = [g.colon_by(f) for g in ideal.gens]
    if any(q.degree == 0 for q in quotients):
        return UNIT_IDEAL
    return MonomialIdeal(ideal.n_vars, quotients)


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.n_vars != b.n_vars:
        raise ValueError("ambient mismatch")
    return MonomialIdeal(a.n_vars, list(a.gens) + list(b.gens))


def support(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Sorted variable indices appearing in some generator."""
    out: set[int] = set()
    for g in ideal.gens:
        out.update(g.support)
    return tuple(sorted(out))


def format_monomial(m: Monomial, names) -> str:
    """Render as e.g. 'x1*y1^2'; the degree-zero monomial renders as '1'."""
    parts = []
    for i, e in enumerate(m.exponents):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, names) -> Monomial:
    """Parse the format produced by format_monomial."""
    index = {nm: i for i, nm in enumerate(names)}
    exps = [0] * len(names)
    text = text.strip()
    if text == "1":
        return Monomial(exps)
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            name, _, e_str = factor.partition("^")
            try:
                e = int(e_str)
            except ValueError:
                raise ValueError(f"bad exponent in factor {factor!r}") from None
            if e < 1:
                raise ValueError(f"exponent must be positive in {factor!r}")
        else:
            name, e = factor, 1
        if name not in index:
            raise ValueError(f"unknown variable {name!r}")
        exps[index[name]] += e
    return Monomial(exps)
