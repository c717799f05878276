"""Sparse lists of forbidden colors and their validity conditions.

A list assignment L maps some edges to nonempty forbidden-color sets. It is
beta-sparse for a colored graph (graph, h, d, s) when, writing B = beta * s:

  (i)   every list has size <= B;
  (ii)  at every vertex, each color appears in at most B incident lists;
  (iii) for every edge-anchored 6-neighborhood W, every standard matching M
        of h, and every color c: at most B edges of M inside W list c.

Counts are integers compared against the exact rational B; no rounding.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .constructors import ColoredGraph
from .errors import ColorOutOfRange, InvalidBound
from .graph_core import EdgeColoring, Graph, is_distance_t_matching


@dataclass(frozen=True, eq=False)
class ListAssignment:
    """Sparse map edge index -> frozenset of forbidden colors."""

    lists: dict

    @classmethod
    def from_dict(cls, raw: dict) -> "ListAssignment":
        lists = {}
        for e, cs in raw.items():
            cs = frozenset(cs)
            if cs:
                lists[int(e)] = cs
        return cls(lists)

    def get(self, e: int) -> frozenset:
        return self.lists.get(e, frozenset())

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.lists))

    def items(self):
        return self.lists.items()

    def total_entries(self) -> int:
        return sum(len(v) for v in self.lists.values())

    def __eq__(self, other):
        return isinstance(other, ListAssignment) and self.lists == other.lists


EMPTY = ListAssignment({})


@dataclass(frozen=True)
class Violation:
    condition: str          # "i", "ii", or "iii"
    witness: tuple          # (edge,) / (vertex, color) / (anchor_edge, matching_color, color)
    count: int
    bound: Fraction


@dataclass(frozen=True)
class SparsityReport:
    ok: bool
    beta: Fraction
    violations: tuple[Violation, ...]


def as_fraction(x) -> Fraction:
    """Exact conversion; floats convert by their binary value."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _check_colors(L: ListAssignment, g: Graph, d: int) -> None:
    for e, cs in L.items():
        if not 0 <= e < g.m:
            raise ColorOutOfRange(f"list attached to nonexistent edge {e}")
        for c in cs:
            if not 1 <= c <= d:
                raise ColorOutOfRange(f"color {c} on edge {e} outside 1..{d}")


def validate_beta_sparse(cg: ColoredGraph, L: ListAssignment, beta) -> SparsityReport:
    """Check conditions (i)-(iii); the report lists one violation per witness.

    Condition (iii) quantifies over one 6-neighborhood per edge; anchors with
    identical neighborhoods are deduplicated and reported through a
    representative anchor edge.
    """
    g, h, d = cg.graph, cg.coloring, cg.d
    beta = as_fraction(beta)
    if beta < 0:
        raise InvalidBound("beta must be nonnegative")
    _check_colors(L, g, d)
    bound = beta * cg.s_measured
    violations = []
    for e, cs in sorted(L.items()):
        if len(cs) > bound:
            violations.append(Violation("i", (e,), len(cs), bound))
    per_vertex: Counter = Counter()
    for e, cs in L.items():
        u, v = g.edges[e]
        for c in cs:
            per_vertex[(u, c)] += 1
            per_vertex[(v, c)] += 1
    for (u, c), cnt in sorted(per_vertex.items()):
        if cnt > bound:
            violations.append(Violation("ii", (u, c), cnt, bound))
    sets, containing, reps = g.neighborhood_dedup(6)
    counts: dict[tuple[int, int, int], int] = {}
    for e, cs in L.items():
        m = h[e]
        for uid in containing[e]:
            for c in cs:
                key = (uid, m, c)
                counts[key] = counts.get(key, 0) + 1
    for (uid, m, c), cnt in sorted(counts.items()):
        if cnt > bound:
            violations.append(Violation("iii", (reps[uid], m, c), cnt, bound))
    return SparsityReport(not violations, beta, tuple(violations))


def generate_sparse(cg: ColoredGraph, beta, seed: int) -> ListAssignment:
    """Greedy-random beta-sparse assignment, deterministic per seed.

    Visits (edge, color) pairs in a seeded shuffle and admits a pair exactly
    when all three conditions survive the addition. The result is maximal for
    the visit order but not globally maximum.
    """
    g, h, d = cg.graph, cg.coloring, cg.d
    beta = as_fraction(beta)
    if beta < 0:
        raise InvalidBound("beta must be nonnegative")
    bound = beta * cg.s_measured
    rng = random.Random(seed)
    pairs = [(e, c) for e in range(g.m) for c in range(1, d + 1)]
    rng.shuffle(pairs)
    if bound < 1:
        return EMPTY
    lists: dict[int, set[int]] = {}
    per_vertex: Counter = Counter()
    _, containing, _ = g.neighborhood_dedup(6)
    nbhd_counts: dict[tuple[int, int, int], int] = {}
    for e, c in pairs:
        cur = lists.get(e)
        if cur is not None and c in cur:
            continue
        if (0 if cur is None else len(cur)) + 1 > bound:
            continue
        u, v = g.edges[e]
        if per_vertex[(u, c)] + 1 > bound or per_vertex[(v, c)] + 1 > bound:
            continue
        m = h[e]
        keys = [(uid, m, c) for uid in containing[e]]
        if any(nbhd_counts.get(k, 0) + 1 > bound for k in keys):
            continue
        if cur is None:
            lists[e] = {c}
        else:
            cur.add(c)
        per_vertex[(u, c)] += 1
        per_vertex[(v, c)] += 1
        for k in keys:
            nbhd_counts[k] = nbhd_counts.get(k, 0) + 1
    return ListAssignment({e: frozenset(cs) for e, cs in lists.items()})


def generate_distance2(cg: ColoredGraph, seed: int, max_list: int) -> ListAssignment:
    """Lists supported on a seeded maximal distance-2 matching.

    Each supported edge gets a uniform random nonempty list of at most
    max_list colors drawn from all of {1..d} (so the edge's own standard
    color may appear). max_list must be at most s-1; 0 is the degenerate
    legal bound and yields the empty assignment.
    """
    g, d = cg.graph, cg.d
    s = cg.s_measured
    if max_list < 0 or max_list > s - 1:
        raise InvalidBound(f"max_list={max_list} outside 0..s-1={s - 1}")
    if max_list == 0:
        return EMPTY
    rng = random.Random(seed)
    order = list(range(g.m))
    rng.shuffle(order)
    support: list[int] = []
    for e in order:
        dist = g.vertex_distances_from_edge(e)
        if all(min(dist[a], dist[b]) >= 2 for a, b in (g.edges[f] for f in support)):
            support.append(e)
    lists = {}
    for e in sorted(support):
        size = rng.randint(1, max_list)
        lists[e] = frozenset(rng.sample(range(1, d + 1), size))
    return ListAssignment(lists)


def conflict_edges(g: Graph, f: EdgeColoring, L: ListAssignment) -> frozenset[int]:
    """Edges whose current color sits in their own forbidden list."""
    return frozenset(e for e, cs in L.items() if f[e] in cs)


def support_is_distance2_matching(cg: ColoredGraph, L: ListAssignment) -> bool:
    return is_distance_t_matching(cg.graph, L.support(), 2)
