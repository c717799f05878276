"""Two-phase avoidance solver: permutation search, swap plans, verification."""

import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dsgraph as dg
from dsgraph.graph_core import are_edge_disjoint


def test_permutation_validation_and_algebra():
    rho = dg.Permutation((2, 3, 1))
    assert rho(1) == 2 and rho(3) == 1
    assert rho.inverse().images == (3, 1, 2)
    assert dg.Permutation.identity(4).images == (1, 2, 3, 4)
    for bad in ((1, 1, 2), (0, 1, 2), (1, 3)):
        with pytest.raises(ValueError):
            dg.Permutation(bad)


def test_apply_permutation_preserves_structure(q4):
    g, h = q4.graph, q4.coloring
    rho = dg.Permutation((3, 1, 4, 2))
    f = dg.apply_permutation(h, rho)
    assert dg.is_proper(g, f)
    for e in range(len(g.edges)):
        assert f[e] == rho(h[e])
    # color classes move as blocks
    for m in dg.standard_matchings(g, h):
        assert all(f[e] == rho(m.color) for e in m.edges)


def test_solver_params_validation():
    p = dg.SolverParams(4, 4, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
    assert p.gamma_s == 2 and p.tau_s == 1 and p.epsilon_s == Fraction(1, 2)
    with pytest.raises(ValueError):
        dg.SolverParams(4, 4, 1, 0, 0)
    with pytest.raises(ValueError):
        dg.SolverParams(4, 4, 0, 0, Fraction(-1, 2))
    with pytest.raises(ValueError):
        dg.SolverParams(0, 0, 0, 0, 0)


def test_check_permutation_accepts_everything_on_empty_lists(q3):
    p = dg.SolverParams(3, 3, 0, 0, Fraction(1, 2))
    for images in ((1, 2, 3), (2, 3, 1), (3, 2, 1)):
        res = dg.check_permutation(q3, dg.EMPTY, dg.Permutation(images), p)
        assert res.ok and res.ok_a and res.ok_b and res.ok_c


def test_check_permutation_counts_vertex_conflicts(q3):
    # identity makes edges 0 and 1 (both at vertex 0) conflicts
    L = dg.ListAssignment.from_dict({0: [dg.hypercube(3).coloring[0]],
                                     1: [dg.hypercube(3).coloring[1]]})
    p = dg.SolverParams(3, 3, Fraction(1, 3), Fraction(2, 3), Fraction(1, 3))
    res = dg.check_permutation(q3, L, dg.Permutation.identity(3), p)
    assert not res.ok_b
    assert (0, 2) in res.witnesses_b


def test_check_permutation_literal_mode_is_stricter(k44):
    # edge 0 has 3 cycles, one recolors it into its list: fine as a count of
    # disallowed cycles, short of the literal allowed-cycles floor
    L = dg.ListAssignment.from_dict({0: [2]})
    p = dg.SolverParams(4, 4, Fraction(1, 2), Fraction(1, 4), Fraction(1, 2))
    ident = dg.Permutation.identity(4)
    assert dg.check_permutation(k44, L, ident, p).ok_c
    lit = dg.check_permutation(k44, L, ident, p, literal_c=True)
    assert not lit.ok_c
    assert (0, 1) in lit.witnesses_c


def test_check_permutation_literal_mode_floors_unlisted_edges(k44):
    # tau=0 demands s allowed cycles per edge but only s-1 exist anywhere
    p = dg.SolverParams(4, 4, 0, 0, Fraction(1, 2))
    ident = dg.Permutation.identity(4)
    assert dg.check_permutation(k44, dg.EMPTY, ident, p).ok
    assert not dg.check_permutation(k44, dg.EMPTY, ident, p, literal_c=True).ok_c


def test_find_permutation_identity_first_on_empty_lists(q3):
    p = dg.SolverParams(3, 3, 0, 0, Fraction(1, 2))
    rho = dg.find_permutation(q3, dg.EMPTY, p, dg.RandomSearch(5, seed=0))
    assert rho.images == (1, 2, 3)


def test_find_permutation_exhaustive_proves_absence(k44):
    # one edge forbidding every color defeats any permutation at gamma=0
    L = dg.ListAssignment.from_dict({0: [1, 2, 3, 4]})
    p = dg.SolverParams(4, 4, 0, Fraction(9, 10), Fraction(1, 2))
    with pytest.raises(dg.PermutationNotFound) as ei:
        dg.find_permutation(k44, L, p, dg.Exhaustive())
    assert ei.value.tried == 24


def test_find_permutation_random_budget(k44):
    L = dg.ListAssignment.from_dict({0: [1, 2, 3, 4]})
    p = dg.SolverParams(4, 4, 0, Fraction(9, 10), Fraction(1, 2))
    with pytest.raises(dg.PermutationBudgetExceeded) as ei:
        dg.find_permutation(k44, L, p, dg.RandomSearch(7, seed=1))
    assert ei.value.trials == 7


def test_exhaustive_strategy_respects_cap(k88):
    with pytest.raises(dg.ResourceLimit):
        dg.find_permutation(k88, dg.EMPTY,
                            dg.SolverParams(8, 8, 0, 0, Fraction(1, 2)),
                            dg.Exhaustive(cap=7))


def test_allowed_cycles_filters_by_all_four_edges(q3):
    g, h = q3.graph, q3.coloring
    assert len(dg.allowed_cycles(q3, h, dg.EMPTY, 0)) == 2
    # both alternative colors forbidden on the anchor: nothing survives
    blocked = dg.ListAssignment.from_dict({0: [2, 3]})
    assert dg.allowed_cycles(q3, h, blocked, 0) == ()
    # forbidding a side edge's incoming color also kills a cycle
    side = dg.two_colored_cycles_through(g, h, 0)[0]
    L = dg.ListAssignment.from_dict({side.e_vz: [h[side.e_uv]]})
    remaining = dg.allowed_cycles(q3, h, L, 0)
    assert len(remaining) == 1
    assert remaining[0].e_vz != side.e_vz


def test_construct_swap_plan_shared_partner_selection(k44):
    # two conflicts in the color-1 matching compete for the same cycles;
    # the second record shows one extra elimination from used edges
    L = dg.ListAssignment.from_dict({0: [1], 5: [1]})
    p = dg.SolverParams(4, 4, Fraction(1, 2), Fraction(1, 2), Fraction(3, 4))
    final, plan = dg.construct_swap_plan(k44, k44.coloring, L, p)
    first, second = plan.records
    assert (first.edge, first.total_cycles, first.allowed, first.survivors) == (0, 3, 3, 2)
    assert first.eliminated_conflict_or_used == 1
    assert (second.edge, second.total_cycles, second.allowed, second.survivors) == (5, 3, 3, 1)
    assert second.eliminated_conflict_or_used == 2
    assert [(c.z, c.t) for c in plan.cycles] == [(2, 6), (3, 7)]
    assert are_edge_disjoint(plan.cycles)
    assert dg.verify_solution(k44, final, L)
    assert all(n == 2 for n in plan.vertex_used_counts(k44.graph).values())


def test_construct_swap_plan_stuck_when_nothing_allowed(k44):
    L = dg.ListAssignment.from_dict({0: [1, 2, 3, 4]})
    p = dg.SolverParams(4, 4, Fraction(9, 10), Fraction(9, 10), Fraction(9, 10))
    with pytest.raises(dg.SwapPlanStuck) as ei:
        dg.construct_swap_plan(k44, k44.coloring, L, p)
    assert ei.value.edge == 0
    assert ei.value.eliminated["allowed"] == 0
    assert ei.value.eliminated["not_allowed"] == 3


def test_construct_swap_plan_requires_positive_epsilon(k44):
    with pytest.raises(ValueError, match="epsilon"):
        dg.construct_swap_plan(k44, k44.coloring, dg.EMPTY,
                               dg.SolverParams(4, 4, 0, 0, 0))


def test_solve_sparse_empty_lists_returns_standard_coloring(q3):
    res = dg.solve_sparse(q3, dg.EMPTY)
    assert res.ok
    assert res.coloring == q3.coloring
    assert res.trials_used == 1
    assert res.plan.cycles == ()


def test_solve_sparse_failure_phase_permutation(k44):
    L = dg.ListAssignment.from_dict({0: [1, 2, 3, 4]})
    p = dg.SolverParams(4, 4, 0, Fraction(9, 10), Fraction(1, 2))
    res = dg.solve_sparse(k44, L, p, dg.Exhaustive())
    assert not res.ok
    assert res.failure.phase == "permutation"
    assert res.trials_used == 24
    assert res.permutation is None


def test_solve_sparse_failure_phase_swap(k44):
    # permissive thresholds let phase 1 pass, then no cycle is allowed
    L = dg.ListAssignment.from_dict({0: [1, 2, 3, 4]})
    p = dg.SolverParams(4, 4, Fraction(9, 10), Fraction(9, 10), Fraction(9, 10))
    res = dg.solve_sparse(k44, L, p)
    assert not res.ok
    assert res.failure.phase == "swap"
    assert res.failure.stuck_edge == 0
    assert res.permutation is not None


def test_solve_sparse_success_roundtrip(q4):
    L = dg.generate_sparse(q4, Fraction(1, 4), 2)
    p = dg.SolverParams(4, 4, Fraction(1, 4), Fraction(3, 4), Fraction(3, 4))
    res = dg.solve_sparse(q4, L, p, dg.RandomSearch(64, seed=0))
    if res.ok:
        assert dg.verify_solution(q4, res.coloring, L)
        assert are_edge_disjoint(res.plan.cycles)
    else:
        assert res.failure.phase in ("permutation", "swap")


def test_solve_distance2_single_conflict(q3):
    L = dg.generate_distance2(q3, 3, 2)
    res = dg.solve_distance2(q3, L)
    assert res.ok
    assert len(res.plan.cycles) == len(dg.conflict_edges(q3.graph, q3.coloring, L))
    assert dg.verify_solution(q3, res.coloring, L)


def test_solve_distance2_empty_lists(q3):
    res = dg.solve_distance2(q3, dg.EMPTY)
    assert res.ok and res.coloring == q3.coloring and res.plan.cycles == ()


def test_solve_distance2_preconditions(q3):
    with pytest.raises(dg.PreconditionViolated, match="distance-2"):
        dg.solve_distance2(q3, dg.ListAssignment.from_dict({0: [1], 1: [2]}))
    with pytest.raises(dg.PreconditionViolated, match="at most"):
        dg.solve_distance2(q3, dg.ListAssignment.from_dict({0: [1, 2, 3]}))


def test_solve_distance2_reports_exhaustion(q3):
    # two same-matching conflicts at distance exactly 2 whose only allowed
    # cycles share a partner edge: the cycle-choice space is empty
    L = dg.generate_distance2(q3, 8, 2)
    with pytest.warns(UserWarning, match="exhausted"):
        res = dg.solve_distance2(q3, L)
    assert not res.ok
    assert res.failure.phase == "swap-search"
    # the instance itself is avoidable, just not by disjoint 4-cycle swaps
    assert dg.oracle_avoidable(q3.graph, q3.d, L).avoidable


def test_verify_solution_cases(q3):
    g, h = q3.graph, q3.coloring
    assert dg.verify_solution(q3, h, dg.EMPTY)
    assert not dg.verify_solution(q3, h, dg.ListAssignment.from_dict({0: [h[0]]}))
    broken = list(h.colors)
    broken[0] = 0
    assert not dg.verify_solution(q3, dg.EdgeColoring(tuple(broken), 3), dg.EMPTY)
    improper = list(h.colors)
    improper[g.edges.index((0, 2))] = h[g.edges.index((0, 1))]
    assert not dg.verify_solution(q3, dg.EdgeColoring(tuple(improper), 3), dg.EMPTY)


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_solve_sparse_never_returns_unverified_success(seed):
    q4 = dg.hypercube(4)
    L = dg.generate_sparse(q4, Fraction(1, 4), seed)
    p = dg.SolverParams(4, 4, Fraction(1, 4), Fraction(3, 4), Fraction(3, 4))
    res = dg.solve_sparse(q4, L, p, dg.RandomSearch(16, seed=seed))
    if res.ok:
        assert dg.verify_solution(q4, res.coloring, L)
        assert are_edge_disjoint(res.plan.cycles)
        conflicts = dg.conflict_edges(q4.graph,
                                      dg.apply_permutation(q4.coloring, res.permutation),
                                      L)
        assert len(res.plan.cycles) == len(conflicts)


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_solve_distance2_success_or_archived_shape(seed):
    q4 = dg.hypercube(4)
    L = dg.generate_distance2(q4, seed, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = dg.solve_distance2(q4, L)
    if res.ok:
        assert dg.verify_solution(q4, res.coloring, L)
    else:
        assert res.failure.phase == "swap-search"
