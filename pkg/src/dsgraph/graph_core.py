"""Graphs with canonical edge indexing and the two-colored 4-cycle machinery.

Edges are stored as (u, v) pairs with u < v, sorted lexicographically; an
edge's index in that order is its identity everywhere in the package. All
distances between edges count edges on a shortest path between endpoints, so
adjacent (or identical) edges are at distance 0.

A proper coloring makes 4-cycle enumeration cheap: for an edge uv of color a
and any other color c there is at most one c-colored edge at v (to some z) and
at most one at u (to some t), and uvzt is a two-colored 4-cycle exactly when
the partner edge zt exists and carries color a. That observation drives
``two_colored_cycles_through`` and gives it O(d) work per edge.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import IncompleteColoring, NotTwoColored

UNREACHABLE = math.inf


class Graph:
    """Simple undirected graph with canonical edge order and cached BFS layers."""

    def __init__(self, n: int, edges: tuple[tuple[int, int], ...]):
        self.n = n
        self.edges = edges
        self.m = len(edges)
        adjacency: list[list[int]] = [[] for _ in range(n)]
        index: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(edges):
            adjacency[u].append(i)
            adjacency[v].append(i)
            index[(u, v)] = i
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self.edge_index = index
        self._dist_cache: dict[int, tuple[float, ...]] = {}
        self._nbhd_cache: dict[tuple[int, int], frozenset[int]] = {}
        self._unique_nbhd_cache: dict[int, tuple[tuple[frozenset[int], ...], tuple[tuple[int, ...], ...], tuple[int, ...]]] = {}

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Canonicalize and validate an edge list (u < v, lexicographic, no dupes)."""
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        return cls(n, tuple(canon))

    def other_endpoint(self, e: int, w: int) -> int:
        u, v = self.edges[e]
        return v if w == u else u

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertex_distances_from_edge(self, e: int) -> tuple[float, ...]:
        """BFS layers from both endpoints of e at once (distance 0 for each)."""
        cached = self._dist_cache.get(e)
        if cached is not None:
            return cached
        u, v = self.edges[e]
        dist: list[float] = [UNREACHABLE] * self.n
        dist[u] = dist[v] = 0
        queue = deque((u, v))
        while queue:
            w = queue.popleft()
            nd = dist[w] + 1
            for ei in self.adjacency[w]:
                x = self.other_endpoint(ei, w)
                if nd < dist[x]:
                    dist[x] = nd
                    queue.append(x)
        out = tuple(dist)
        self._dist_cache[e] = out
        return out

    def neighborhood_dedup(self, t: int):
        """Unique t-neighborhood edge sets, a representative anchor for each,
        and for every edge the ids of the unique sets that contain it.

        Many anchors share one neighborhood on small dense graphs, so sparsity
        checks that quantify over all anchors dedupe through this.
        """
        cached = self._unique_nbhd_cache.get(t)
        if cached is not None:
            return cached
        sets: list[frozenset[int]] = []
        reps: list[int] = []
        seen: dict[frozenset[int], int] = {}
        containing: list[list[int]] = [[] for _ in range(self.m)]
        for e in range(self.m):
            w = t_neighborhood(self, e, t)
            uid = seen.get(w)
            if uid is None:
                uid = len(sets)
                seen[w] = uid
                sets.append(w)
                reps.append(e)
        for uid, w in enumerate(sets):
            for f in w:
                containing[f].append(uid)
        out = (tuple(sets), tuple(tuple(c) for c in containing), tuple(reps))
        self._unique_nbhd_cache[t] = out
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeColoring:
    """Total map edge index -> color in {1..d}; 0 marks an uncolored slot."""

    colors: tuple[int, ...]
    d: int

    def __post_init__(self):
        for i, c in enumerate(self.colors):
            if not (0 <= c <= self.d):
                raise ValueError(f"color {c} at edge {i} outside 0..{self.d}")

    def __getitem__(self, e: int) -> int:
        return self.colors[e]

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def is_total(self) -> bool:
        return 0 not in self.colors


@dataclass(frozen=True)
class Matching:
    """A set of pairwise nonadjacent edges; standard matchings carry their color."""

    edges: frozenset[int]
    color: int | None = None


@dataclass(frozen=True)
class FourCycle:
    """Two-colored 4-cycle u-v-z-t-u.

    color_a sits on uv and on the partner edge zt; color_b on vz and tu.
    The recorded colors are those seen at enumeration time; ``swap_cycle``
    revalidates against the coloring it is given.
    """

    u: int
    v: int
    z: int
    t: int
    e_uv: int
    e_vz: int
    e_zt: int
    e_tu: int
    color_a: int
    color_b: int

    @property
    def edge_ids(self) -> tuple[int, int, int, int]:
        return (self.e_uv, self.e_vz, self.e_zt, self.e_tu)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_ids)

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.u, self.v, self.z, self.t)


@dataclass(frozen=True)
class VertexColorSet:
    vertex: int
    colors: frozenset[int]


def edge_distance(g: Graph, e: int, f: int) -> float:
    """Fewest edges on a shortest path between an endpoint of e and one of f.

    0 for identical or adjacent edges; UNREACHABLE when no path connects them.
    """
    if not (0 <= e < g.m and 0 <= f < g.m):
        raise ValueError("edge index out of range")
    dist = g.vertex_distances_from_edge(e)
    a, b = g.edges[f]
    return min(dist[a], dist[b])


def t_neighborhood(g: Graph, e: int, t: int) -> frozenset[int]:
    """Edge indices at distance <= t from e, e included. Cached per (e, t)."""
    if not 0 <= e < g.m:
        raise ValueError("edge index out of range")
    if t < 0:
        raise ValueError("t must be nonnegative")
    key = (e, t)
    cached = g._nbhd_cache.get(key)
    if cached is not None:
        return cached
    dist = g.vertex_distances_from_edge(e)
    out = frozenset(i for i, (a, b) in enumerate(g.edges) if min(dist[a], dist[b]) <= t)
    g._nbhd_cache[key] = out
    return out


def is_proper(g: Graph, f: EdgeColoring) -> bool:
    """True iff no vertex sees a color twice. Raises on partial colorings."""
    if len(f) != g.m:
        raise ValueError("coloring length does not match edge count")
    if not f.is_total:
        raise IncompleteColoring("coloring leaves some edge uncolored")
    for v in range(g.n):
        seen = set()
        for e in g.adjacency[v]:
            c = f[e]
            if c in seen:
                return False
            seen.add(c)
    return True


def color_table(g: Graph, f: EdgeColoring) -> list[dict[int, int]]:
    """Per-vertex map color -> incident edge index (last writer wins on improper input)."""
    table: list[dict[int, int]] = [{} for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        c = f[e]
        table[u][c] = e
        table[v][c] = e
    return table


def two_colored_cycles_through(g: Graph, f: EdgeColoring, e: int,
                               table: list[dict[int, int]] | None = None) -> tuple[FourCycle, ...]:
    """All two-colored 4-cycles through e under f, in ascending second-color order.

    Requires f proper on the edges it touches; properness guarantees each
    second color yields at most one candidate and distinct cycles get
    distinct second colors. Pass a precomputed ``color_table`` when calling
    in a loop.
    """
    if table is None:
        table = color_table(g, f)
    u, v = g.edges[e]
    a = f[e]
    out = []
    for c in range(1, f.d + 1):
        if c == a:
            continue
        ez = table[v].get(c)
        et = table[u].get(c)
        if ez is None or et is None:
            continue
        z = g.other_endpoint(ez, v)
        t = g.other_endpoint(et, u)
        if z == t:
            continue
        partner = g.edge_index.get((z, t) if z < t else (t, z))
        if partner is None or f[partner] != a:
            continue
        out.append(FourCycle(u, v, z, t, e, ez, partner, et, a, c))
    return tuple(out)


def compute_s(g: Graph, f: EdgeColoring) -> int:
    """1 + the minimum over edges of the two-colored 4-cycle count.

    The certified s of a colored graph: every edge lies in at least s-1
    two-colored 4-cycles. Equals 1 on 4-cycle-free graphs; never exceeds d.
    """
    if g.m == 0:
        return 1
    table = color_table(g, f)
    best = min(len(two_colored_cycles_through(g, f, e, table)) for e in range(g.m))
    return 1 + best


def standard_matchings(g: Graph, h: EdgeColoring) -> tuple[Matching, ...]:
    """The d color classes of the standard coloring h, indexed by color."""
    buckets: list[list[int]] = [[] for _ in range(h.d + 1)]
    for e in range(g.m):
        buckets[h[e]].append(e)
    return tuple(Matching(frozenset(buckets[c]), c) for c in range(1, h.d + 1))


def is_distance_t_matching(g: Graph, edge_set, t: int) -> bool:
    """True iff all pairs in edge_set are at edge distance >= t.

    A distance-1 matching is an ordinary matching; distance 2 additionally
    separates the endpoints by at least one edge.
    """
    es = sorted(edge_set)
    for i, e in enumerate(es):
        dist = g.vertex_distances_from_edge(e)
        for f in es[i + 1:]:
            a, b = g.edges[f]
            if min(dist[a], dist[b]) < t:
                return False
    return True


def swap_cycle(f: EdgeColoring, c: FourCycle) -> EdgeColoring:
    """Exchange the two colors along a two-colored 4-cycle.

    Validates alternation against the coloring actually passed in, so a cycle
    object may be replayed after its own swap (double-swap is the identity).
    Preserves properness and every vertex's color set.
    """
    ca = f[c.e_uv]
    cb = f[c.e_vz]
    if ca == cb or f[c.e_zt] != ca or f[c.e_tu] != cb:
        raise NotTwoColored(
            f"cycle {c.vertices} is not two-colored under this coloring")
    colors = list(f.colors)
    colors[c.e_uv] = cb
    colors[c.e_zt] = cb
    colors[c.e_vz] = ca
    colors[c.e_tu] = ca
    return EdgeColoring(tuple(colors), f.d)


def vertex_color_set(g: Graph, f: EdgeColoring, u: int) -> VertexColorSet:
    return VertexColorSet(u, frozenset(f[e] for e in g.adjacency[u]))


def are_edge_disjoint(cycles) -> bool:
    seen: set[int] = set()
    for c in cycles:
        es = c.edge_set
        if seen & es:
            return False
        seen |= es
    return True


def are_vertex_disjoint(cycles) -> bool:
    seen: set[int] = set()
    for c in cycles:
        vs = set(c.vertices)
        if seen & vs:
            return False
        seen |= vs
    return True
