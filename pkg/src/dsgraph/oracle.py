"""Exact ground truth, independent of the fast solver.

oracle_avoidable decides by exhaustive backtracking whether any proper
d-edge-coloring avoids the forbidden lists. oracle_cycle_census recounts
two-colored 4-cycles from scratch by scanning vertex quadruples, so it shares
no code path with the per-edge cycle enumeration it is used to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OracleBudgetExceeded
from .graph_core import EdgeColoring, Graph
from .list_assignments import ListAssignment

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class OracleResult:
    avoidable: bool
    witness: EdgeColoring | None
    nodes_explored: int


def oracle_avoidable(g: Graph, d: int, L: ListAssignment,
                     limit: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Decide exactly whether some proper d-edge-coloring avoids every list.

    Backtracking over edges, always branching on the edge with the fewest
    colors still available (forbidden list removed, colors used at either
    endpoint removed). Bitmasks keep the inner loop cheap. Raises
    OracleBudgetExceeded after ``limit`` assignment attempts.
    """
    full = (1 << d) - 1
    allowed = [full] * g.m
    for e, colors in L.items():
        mask = full
        for c in colors:
            if 1 <= c <= d:
                mask &= ~(1 << (c - 1))
        allowed[e] = mask
    vertex_used = [0] * g.n
    assignment = [0] * g.m
    uncolored = set(range(g.m))
    nodes = 0

    def available(e: int) -> int:
        u, v = g.edges[e]
        return allowed[e] & ~vertex_used[u] & ~vertex_used[v]

    def extend() -> bool:
        nonlocal nodes
        if not uncolored:
            return True
        best, best_mask, best_count = -1, 0, d + 1
        for e in uncolored:
            mask = available(e)
            count = mask.bit_count()
            if count == 0:
                return False
            if count < best_count:
                best, best_mask, best_count = e, mask, count
                if count == 1:
                    break
        uncolored.remove(best)
        u, v = g.edges[best]
        mask = best_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            nodes += 1
            if nodes > limit:
                raise OracleBudgetExceeded(nodes)
            assignment[best] = bit.bit_length()
            vertex_used[u] |= bit
            vertex_used[v] |= bit
            if extend():
                return True
            vertex_used[u] &= ~bit
            vertex_used[v] &= ~bit
        assignment[best] = 0
        uncolored.add(best)
        return False

    if extend():
        return OracleResult(True, EdgeColoring(tuple(assignment), d), nodes)
    return OracleResult(False, None, nodes)


def oracle_cycle_census(g: Graph, f: EdgeColoring) -> dict[int, int]:
    """Per-edge counts of two-colored 4-cycles, by direct quadruple scan.

    A 4-cycle u-v-z-t is generated once in canonical form: u is its least
    vertex, v and t are the two neighbors of u on the cycle with v < t, and z
    is their common neighbor opposite u. The cycle counts for each of its
    edges when its edges alternate between exactly two colors.
    """
    counts = {e: 0 for e in range(g.m)}
    neighbor_sets = []
    for u in range(g.n):
        neighbor_sets.append({g.other_endpoint(e, u) for e in g.adjacency[u]})
    for u in range(g.n):
        nbrs = sorted(w for w in neighbor_sets[u] if w > u)
        for i, v in enumerate(nbrs):
            for t in nbrs[i + 1:]:
                for z in neighbor_sets[v] & neighbor_sets[t]:
                    if z <= u:
                        continue
                    e_uv = g.edge_index[(min(u, v), max(u, v))]
                    e_vz = g.edge_index[(min(v, z), max(v, z))]
                    e_zt = g.edge_index[(min(z, t), max(z, t))]
                    e_tu = g.edge_index[(min(t, u), max(t, u))]
                    ca, cb = f[e_uv], f[e_vz]
                    if ca == 0 or cb == 0 or ca == cb:
                        continue
                    if f[e_zt] == ca and f[e_tu] == cb:
                        for e in (e_uv, e_vz, e_zt, e_tu):
                            counts[e] += 1
    return counts
