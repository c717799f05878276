"""Two-phase avoidance solver plus the distance-2 special case.

Phase one searches for a permutation of the color names under which the
recolored standard coloring has few, well-spread conflicts with the forbidden
lists: per anchored 6-neighborhood and standard matching at most gamma*s
conflicts (a), per vertex at most gamma*s conflict edges (b), and per edge at
most tau*s of its two-colored 4-cycles disallowed (c). Phase two walks the
conflict edges in canonical order and picks, for each, an allowed 4-cycle
whose swap removes the conflict, filtering out cycles that touch overloaded
vertices or matchings (at least epsilon*s used edges) or edges that are
conflicts or already used. The chosen cycles are pairwise edge-disjoint, so
swapping them all yields a proper coloring with no conflicts.

A cycle is "allowed" when swapping it leaves all four of its edges outside
their forbidden lists. Swaps preserve properness and each vertex's color set.
"""

from __future__ import annotations

import itertools
import random
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .constructors import ColoredGraph
from .errors import (ColorOutOfRange, PermutationBudgetExceeded, PermutationNotFound,
                     PreconditionViolated, ResourceLimit, SwapPlanStuck)
from .graph_core import (EdgeColoring, FourCycle, Graph, color_table, is_proper,
                         swap_cycle, t_neighborhood, two_colored_cycles_through)
from .list_assignments import (ListAssignment, as_fraction, conflict_edges,
                               support_is_distance2_matching)

EXHAUSTIVE_D_CAP = 8


@dataclass(frozen=True)
class Permutation:
    """Bijection on colors {1..d}; images[i] is the image of color i+1."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(1, d + 1)):
            raise ValueError("images must be a permutation of 1..d")

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, color: int) -> int:
        return self.images[color - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(1, d + 1)))


@dataclass(frozen=True)
class SolverParams:
    """Numeric knobs; beta for the lists, gamma/tau for phase one, epsilon for phase two.

    gamma, tau, epsilon live in [0, 1); zero is admitted for degenerate
    probes even though the guarantees need positive values.
    """

    d: int
    s: int
    gamma: Fraction
    tau: Fraction
    epsilon: Fraction
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        object.__setattr__(self, "tau", as_fraction(self.tau))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.d < 1 or self.s < 1:
            raise ValueError("d and s must be positive")
        for name in ("gamma", "tau", "epsilon"):
            v = getattr(self, name)
            if not 0 <= v < 1:
                raise ValueError(f"{name} must lie in [0, 1)")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")

    @property
    def gamma_s(self) -> Fraction:
        return self.gamma * self.s

    @property
    def tau_s(self) -> Fraction:
        return self.tau * self.s

    @property
    def epsilon_s(self) -> Fraction:
        return self.epsilon * self.s


def apply_permutation(h: EdgeColoring, rho: Permutation) -> EdgeColoring:
    """Recolor every edge through rho; color classes move as whole matchings."""
    if rho.d != h.d:
        raise ValueError("permutation size does not match color count")
    return EdgeColoring(tuple(rho(c) if c else 0 for c in h.colors), h.d)


@dataclass(frozen=True)
class PermutationCheck:
    """Outcome of the three phase-one conditions with violation witnesses.

    Witness shapes: (anchor_edge, matching_color, count) for (a);
    (vertex, count) for (b); (edge, disallowed_count) for (c).
    """

    ok_a: bool
    ok_b: bool
    ok_c: bool
    witnesses_a: tuple = ()
    witnesses_b: tuple = ()
    witnesses_c: tuple = ()

    @property
    def ok(self) -> bool:
        return self.ok_a and self.ok_b and self.ok_c


class _Checker:
    """Precomputed structures for evaluating many permutations on one instance.

    Cycle structure does not depend on the permutation (recoloring permutes
    cycle colors but not the cycles themselves), so cycles are enumerated once
    under h; per trial only the cycles that touch a listed edge need a look.
    """

    def __init__(self, cg: ColoredGraph, L: ListAssignment, params: SolverParams,
                 literal_c: bool = False):
        self.cg = cg
        self.params = params
        self.literal_c = literal_c
        g, h = cg.graph, cg.coloring
        self.lists = {e: cs for e, cs in L.items()}
        self.supp = sorted(self.lists)
        self.h_colors = h.colors
        table = color_table(g, h)
        supp_set = set(self.supp)
        # (edge, [(a_h, b_h, L(uv), L(vz), L(zt), L(tu))]) for cycles touching a list
        self.sensitive: list[tuple[int, list]] = []
        self.totals = [0] * g.m
        insensitive_min = None
        for e in range(g.m):
            cycles = two_colored_cycles_through(g, h, e, table)
            self.totals[e] = len(cycles)
            rows = []
            for cyc in cycles:
                if supp_set & cyc.edge_set:
                    rows.append((cyc.color_a, cyc.color_b,
                                 self.lists.get(cyc.e_uv), self.lists.get(cyc.e_vz),
                                 self.lists.get(cyc.e_zt), self.lists.get(cyc.e_tu)))
            if rows:
                self.sensitive.append((e, rows))
            elif insensitive_min is None or len(cycles) < insensitive_min[1]:
                insensitive_min = (e, len(cycles))
        self.insensitive_min = insensitive_min
        _, containing, reps = g.neighborhood_dedup(6)
        self.containing = containing
        self.anchor_reps = reps

    def conflicts(self, rho: Permutation) -> list[int]:
        return [e for e in self.supp if rho(self.h_colors[e]) in self.lists[e]]

    def check(self, rho: Permutation, collect: bool = True) -> PermutationCheck:
        p = self.params
        gs, ts = p.gamma_s, p.tau_s
        conf = self.conflicts(rho)
        wa: list = []
        wb: list = []
        wc: list = []
        per_vertex: Counter = Counter()
        edges = self.cg.graph.edges
        for e in conf:
            u, v = edges[e]
            per_vertex[u] += 1
            per_vertex[v] += 1
        for u, cnt in sorted(per_vertex.items()):
            if cnt > gs:
                wb.append((u, cnt))
                if not collect:
                    break
        ok_b = not wb
        if collect or ok_b:
            by_matching: dict[int, list[int]] = {}
            for e in conf:
                by_matching.setdefault(self.h_colors[e], []).append(e)
            for m, group in sorted(by_matching.items()):
                if len(group) <= gs:
                    continue
                per_anchor: Counter = Counter()
                for e in group:
                    for uid in self.containing[e]:
                        per_anchor[uid] += 1
                for uid, cnt in sorted(per_anchor.items()):
                    if cnt > gs:
                        wa.append((self.anchor_reps[uid], m, cnt))
                        if not collect:
                            break
                if wa and not collect:
                    break
        ok_a = not wa
        if collect or (ok_a and ok_b):
            limit_literal = (1 - p.tau) * p.s
            for e, rows in self.sensitive:
                bad = 0
                for a_h, b_h, luv, lvz, lzt, ltu in rows:
                    pa, pb = rho(a_h), rho(b_h)
                    if ((luv and pb in luv) or (lzt and pb in lzt)
                            or (lvz and pa in lvz) or (ltu and pa in ltu)):
                        bad += 1
                if self.literal_c:
                    if self.totals[e] - bad < limit_literal:
                        wc.append((e, bad))
                        if not collect:
                            break
                elif bad > ts:
                    wc.append((e, bad))
                    if not collect:
                        break
            if self.literal_c and self.insensitive_min is not None:
                e, total = self.insensitive_min
                if total < limit_literal and (collect or not wc):
                    wc.append((e, 0))
        ok_c = not wc
        return PermutationCheck(ok_a, ok_b, ok_c, tuple(wa), tuple(wb), tuple(wc))


def check_permutation(cg: ColoredGraph, L: ListAssignment, rho: Permutation,
                      params: SolverParams, literal_c: bool = False) -> PermutationCheck:
    """Evaluate conditions (a), (b), (c) for one permutation, collecting all witnesses.

    By default (c) bounds the disallowed-cycle count by tau*s; with
    ``literal_c`` it instead requires at least (1-tau)*s allowed cycles per
    edge, which is strictly stronger on edges with fewer than s cycles.
    """
    return _Checker(cg, L, params, literal_c).check(rho, collect=True)


@dataclass(frozen=True)
class RandomSearch:
    """Seeded random permutation trials; trial 1 is always the identity."""

    trials: int
    seed: int = 0


@dataclass(frozen=True)
class Exhaustive:
    """Lexicographic scan of all d! permutations; capped to small d."""

    cap: int = EXHAUSTIVE_D_CAP


def _search_permutation(checker: _Checker, d: int, strategy) -> tuple[Permutation, int]:
    if isinstance(strategy, Exhaustive):
        if d > strategy.cap:
            raise ResourceLimit(f"exhaustive search needs d <= {strategy.cap}, got {d}")
        count = 0
        for images in itertools.permutations(range(1, d + 1)):
            count += 1
            rho = Permutation(images)
            if checker.check(rho, collect=False).ok:
                return rho, count
        raise PermutationNotFound(count)
    if isinstance(strategy, RandomSearch):
        if strategy.trials < 1:
            raise ValueError("trials must be >= 1")
        rng = random.Random(strategy.seed)
        base = list(range(1, d + 1))
        for trial in range(1, strategy.trials + 1):
            if trial == 1:
                images = tuple(base)
            else:
                rng.shuffle(base)
                images = tuple(base)
            rho = Permutation(images)
            if checker.check(rho, collect=False).ok:
                return rho, trial
        raise PermutationBudgetExceeded(strategy.trials)
    raise TypeError(f"unknown search strategy {strategy!r}")


def find_permutation(cg: ColoredGraph, L: ListAssignment, params: SolverParams,
                     strategy, literal_c: bool = False) -> Permutation:
    """First permutation passing check_permutation, by trial index or lexicographic order.

    Raises PermutationNotFound when an exhaustive scan proves none exists and
    PermutationBudgetExceeded when random trials run out (which proves nothing).
    """
    checker = _Checker(cg, L, params, literal_c)
    rho, _ = _search_permutation(checker, cg.d, strategy)
    return rho


def allowed_cycles(cg: ColoredGraph, f: EdgeColoring, L: ListAssignment, e: int,
                   table=None) -> tuple[FourCycle, ...]:
    """Cycles through e whose swap leaves all four edges conflict-free."""
    g = cg.graph
    out = []
    for cyc in two_colored_cycles_through(g, f, e, table):
        pa, pb = f[cyc.e_uv], f[cyc.e_vz]
        if (pb in L.get(cyc.e_uv) or pb in L.get(cyc.e_zt)
                or pa in L.get(cyc.e_vz) or pa in L.get(cyc.e_tu)):
            continue
        out.append(cyc)
    return tuple(out)


@dataclass(frozen=True)
class SelectionRecord:
    """Per-conflict-edge accounting of the candidate filters."""

    edge: int
    total_cycles: int
    allowed: int
    eliminated_overloaded: int
    eliminated_conflict_or_used: int
    survivors: int


@dataclass(frozen=True)
class SwapPlan:
    """Edge-disjoint cycles chosen for the conflict edges, in processing order."""

    cycles: tuple[FourCycle, ...]
    used: frozenset[int]
    records: tuple[SelectionRecord, ...]

    def vertex_used_counts(self, g: Graph) -> Counter:
        counts: Counter = Counter()
        for e in self.used:
            u, v = g.edges[e]
            counts[u] += 1
            counts[v] += 1
        return counts


def construct_swap_plan(cg: ColoredGraph, hprime: EdgeColoring, L: ListAssignment,
                        params: SolverParams) -> tuple[EdgeColoring, SwapPlan]:
    """Pick one allowed cycle per conflict edge and swap them all.

    Conflict edges are visited in ascending edge order. A candidate survives
    when (1) neither corner vertex nor the standard matching holding its two
    side edges is overloaded (at least epsilon*s used edges; the matching
    count is taken inside the conflict edge's 4-neighborhood against the
    current used set) and (2) its three non-conflict edges are neither
    conflict edges nor already used. Ties break to the least (z, t).
    """
    if params.epsilon <= 0:
        raise ValueError("epsilon must be positive for overload filtering")
    g, h = cg.graph, cg.coloring
    es = params.epsilon_s
    conflicts = sorted(conflict_edges(g, hprime, L))
    conflict_set = set(conflicts)
    table = color_table(g, hprime)
    used: set[int] = set()
    vertex_used: Counter = Counter()
    cycles: list[FourCycle] = []
    records: list[SelectionRecord] = []
    for e in conflicts:
        w4 = t_neighborhood(g, e, 4)
        all_cycles = two_colored_cycles_through(g, hprime, e, table)
        allowed = allowed_cycles(cg, hprime, L, e, table)
        elim_over = 0
        elim_conf_used = 0
        survivors: list[FourCycle] = []
        for cyc in allowed:
            side_matchings = {h[cyc.e_vz], h[cyc.e_tu]}
            if vertex_used[cyc.z] >= es or vertex_used[cyc.t] >= es or any(
                    sum(1 for f in used if h[f] == m and f in w4) >= es
                    for m in side_matchings):
                elim_over += 1
                continue
            sides = (cyc.e_vz, cyc.e_zt, cyc.e_tu)
            if any(f in conflict_set or f in used for f in sides):
                elim_conf_used += 1
                continue
            survivors.append(cyc)
        if not survivors:
            raise SwapPlanStuck(e, {
                "total": len(all_cycles),
                "allowed": len(allowed),
                "not_allowed": len(all_cycles) - len(allowed),
                "overloaded": elim_over,
                "conflict_or_used": elim_conf_used,
            })
        chosen = min(survivors, key=lambda c: (c.z, c.t))
        cycles.append(chosen)
        records.append(SelectionRecord(e, len(all_cycles), len(allowed),
                                       elim_over, elim_conf_used, len(survivors)))
        for f in chosen.edge_ids:
            used.add(f)
            a, b = g.edges[f]
            vertex_used[a] += 1
            vertex_used[b] += 1
    result = hprime
    for cyc in cycles:
        result = swap_cycle(result, cyc)
    remaining = conflict_edges(g, result, L)
    if remaining:
        raise SwapPlanStuck(min(remaining), {"post_swap_conflicts": len(remaining)})
    return result, SwapPlan(tuple(cycles), frozenset(used), tuple(records))


@dataclass(frozen=True)
class FailureReport:
    """Which phase gave up and why; trials/stuck fields filled where they apply."""

    phase: str
    message: str
    stuck_edge: int | None = None
    eliminated: dict | None = None
    trials: int | None = None


@dataclass(frozen=True)
class SolveResult:
    coloring: EdgeColoring | None
    permutation: Permutation | None
    plan: SwapPlan | None
    trials_used: int
    failure: FailureReport | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None and self.coloring is not None


def verify_solution(cg: ColoredGraph, f: EdgeColoring, L: ListAssignment) -> bool:
    """True when f is a total proper d-edge-coloring avoiding every list."""
    g = cg.graph
    if len(f) != g.m or f.d != cg.d or not f.is_total:
        return False
    try:
        if not is_proper(g, f):
            return False
    except Exception:
        return False
    return not conflict_edges(g, f, L)


def solve_sparse(cg: ColoredGraph, L: ListAssignment, params: SolverParams | None = None,
                 strategy=None, literal_c: bool = False) -> SolveResult:
    """Run both phases; on failure return a report instead of raising.

    Defaults: params from bounds.default_params on (d, measured s), and a
    200-trial seeded random permutation search.
    """
    if params is None:
        from .bounds import default_params
        params = default_params(cg.d, cg.s_measured)
    if strategy is None:
        strategy = RandomSearch(trials=200, seed=0)
    checker = _Checker(cg, L, params, literal_c)
    try:
        rho, trials = _search_permutation(checker, cg.d, strategy)
    except PermutationNotFound as exc:
        return SolveResult(None, None, None, exc.tried, FailureReport(
            "permutation", str(exc), trials=exc.tried))
    except PermutationBudgetExceeded as exc:
        return SolveResult(None, None, None, exc.trials, FailureReport(
            "permutation", str(exc), trials=exc.trials))
    hprime = apply_permutation(cg.coloring, rho)
    try:
        final, plan = construct_swap_plan(cg, hprime, L, params)
    except SwapPlanStuck as exc:
        return SolveResult(None, rho, None, trials, FailureReport(
            "swap", str(exc), stuck_edge=exc.edge, eliminated=exc.eliminated))
    if not verify_solution(cg, final, L):
        return SolveResult(None, rho, plan, trials, FailureReport(
            "verify", "swapped coloring failed verification"))
    return SolveResult(final, rho, plan, trials)


def solve_distance2(cg: ColoredGraph, L: ListAssignment) -> SolveResult:
    """Avoidance when listed edges form a distance-2 matching and lists stay under s.

    Works directly on the standard coloring: each conflict edge needs one
    allowed cycle, cycles of conflicts at distance exactly 2 may contend for
    a shared partner edge, and backtracking over edge-disjoint choices
    resolves that. List sizes are capped at s-1, which guarantees at least
    one allowed cycle exists per conflict in isolation.
    """
    g, h, s = cg.graph, cg.coloring, cg.s_measured
    if not support_is_distance2_matching(cg, L):
        raise PreconditionViolated("listed edges must form a distance-2 matching")
    for e, colors in L.items():
        if len(colors) > s - 1:
            raise PreconditionViolated(
                f"list on edge {e} has {len(colors)} colors; at most {s - 1} allowed")
        for c in colors:
            if not 1 <= c <= cg.d:
                raise ColorOutOfRange(f"color {c} on edge {e} outside 1..{cg.d}")
    conflicts = sorted(conflict_edges(g, h, L))
    table = color_table(g, h)
    options = [sorted(allowed_cycles(cg, h, L, e, table), key=lambda c: (c.z, c.t))
               for e in conflicts]

    chosen: list[FourCycle] = []
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(options):
            return True
        for cyc in options[i]:
            if used & cyc.edge_set:
                continue
            chosen.append(cyc)
            used.update(cyc.edge_ids)
            if extend(i + 1):
                return True
            chosen.pop()
            used.difference_update(cyc.edge_ids)
        return False

    if not extend(0):
        warnings.warn("distance-2 backtracking exhausted every cycle choice; "
                      "this input may contradict the avoidability guarantee")
        return SolveResult(None, None, None, 0, FailureReport(
            "swap-search", "no edge-disjoint system of allowed cycles found"))
    final = h
    for cyc in chosen:
        final = swap_cycle(final, cyc)
    plan = SwapPlan(tuple(chosen), frozenset(used), ())
    if not verify_solution(cg, final, L):
        return SolveResult(None, None, plan, 0, FailureReport(
            "verify", "swapped coloring failed verification"))
    return SolveResult(final, None, plan, 0)
