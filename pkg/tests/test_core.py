import dataclasses
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import subsetfpt as sf
from conftest import ref_optimum

TRIANGLE = sf.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PATH3 = sf.Graph.from_edges(3, [(0, 1), (1, 2)])


def vc(g):
    return sf.make_problem(sf.ProblemKind.VERTEX_COVER, g)


def mis(g):
    return sf.make_problem(sf.ProblemKind.INDEPENDENT_SET, g)


class TestIsFeasible:
    def test_empty_graph_empty_cover(self):
        p = vc(sf.Graph.from_edges(3, []))
        assert sf.is_feasible(p, frozenset())

    def test_triangle_two_vertices_cover(self):
        assert sf.is_feasible(vc(TRIANGLE), {0, 1})

    def test_triangle_single_vertex_no_cover(self):
        assert not sf.is_feasible(vc(TRIANGLE), {0})

    def test_out_of_range_member_rejected(self):
        with pytest.raises(ValueError):
            sf.is_feasible(vc(TRIANGLE), {3})


class TestBruteForce:
    def test_min_vertex_cover_triangle(self):
        res = sf.brute_force_optimum(vc(TRIANGLE))
        assert isinstance(res, sf.EvaluatedSolution)
        assert res.value == 2 and res.optimal

    def test_max_independent_set_path(self):
        res = sf.brute_force_optimum(mis(PATH3))
        assert res.members == frozenset({0, 2}) and res.value == 2

    def test_min_set_cover_four_sets(self):
        # expected value frozen from independent enumeration over the
        # 16 subfamilies (see ref below)
        sys = sf.SetSystem.from_lists(4, [[0, 1], [2, 3], [0, 2], [1, 3]])
        p = sf.make_problem(sf.ProblemKind.SET_COVER, sys)

        def covers(chosen):
            cov = set()
            for i in chosen:
                for e in range(4):
                    if (sys.sets[i] >> e) & 1:
                        cov.add(e)
            return cov == {0, 1, 2, 3}

        _, ref_val = ref_optimum(4, sf.Goal.MINIMIZE, covers)
        assert ref_val == 2
        res = sf.brute_force_optimum(p)
        assert res.value == 2

    def test_infeasible_is_first_class(self):
        sys = sf.SetSystem.from_lists(3, [[0], [1]])  # element 2 uncoverable
        p = sf.make_problem(sf.ProblemKind.SET_COVER, sys)
        assert isinstance(sf.brute_force_optimum(p), sf.Infeasible)

    def test_budget_exceeded(self):
        p = vc(sf.Graph.from_edges(25, []))
        res = sf.brute_force_optimum(p, budget=20)
        assert isinstance(res, sf.BudgetExceeded)
        assert res.universe_size == 25 and res.budget == 20

    def test_tie_break_smallest_lexicographic(self):
        # all three 2-subsets of the triangle are optimal covers
        res = sf.brute_force_optimum(vc(TRIANGLE))
        assert res.members == frozenset({0, 1})

    @pytest.mark.parametrize("seed", range(8))
    def test_batch_path_matches_sweep(self, seed):
        from conftest import random_graph

        g = random_graph(14, 0.4, seed)
        p = vc(g)
        assert p.feasible_batch is not None
        fast = sf.brute_force_optimum(p)
        slow = sf.brute_force_optimum(dataclasses.replace(p, feasible_batch=None))
        assert fast == slow

    def test_determinism(self):
        p = vc(TRIANGLE)
        assert sf.brute_force_optimum(p) == sf.brute_force_optimum(p)


class TestEnumerateOptima:
    def test_triangle_vertex_cover_optima(self):
        assert sf.enumerate_optima(vc(TRIANGLE)) == [
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({1, 2}),
        ]

    def test_dominating_path_unique(self):
        p = sf.make_problem(sf.ProblemKind.DOMINATING_SET, PATH3)
        assert sf.enumerate_optima(p) == [frozenset({1})]

    def test_single_vertex_independent_set(self):
        p = mis(sf.Graph.from_edges(1, []))
        assert sf.enumerate_optima(p) == [frozenset({0})]

    def test_empty_iff_infeasible(self):
        sys = sf.SetSystem.from_lists(2, [[0]])
        p = sf.make_problem(sf.ProblemKind.SET_COVER, sys)
        assert sf.enumerate_optima(p) == []

    @pytest.mark.parametrize("seed", range(4))
    def test_batch_matches_sweep(self, seed):
        from conftest import random_graph

        g = random_graph(14, 0.3, 100 + seed)
        p = vc(g)
        fast = sf.enumerate_optima(p)
        slow = sf.enumerate_optima(dataclasses.replace(p, feasible_batch=None))
        assert fast == slow


class TestComplement:
    def test_examples(self):
        p = vc(sf.Graph.from_edges(5, []))
        assert sf.complement(p, {1, 3}) == frozenset({0, 2, 4})
        p3 = vc(sf.Graph.from_edges(3, []))
        assert sf.complement(p3, set()) == frozenset({0, 1, 2})
        p4 = vc(sf.Graph.from_edges(4, []))
        assert sf.complement(p4, {0, 1, 2, 3}) == frozenset()

    @given(st.integers(1, 10), st.data())
    def test_size_identity(self, n, data):
        s = data.draw(st.sets(st.integers(0, n - 1)))
        p = vc(sf.Graph.from_edges(n, []))
        assert len(sf.complement(p, s)) == n - len(s)


class TestDualize:
    def _all_subsets_agree(self, a, b):
        n = a.universe_size
        assert n == b.universe_size
        for mask in range(1 << n):
            assert a.feasible_mask(mask) == b.feasible_mask(mask)

    @pytest.mark.parametrize("g", [TRIANGLE, PATH3])
    @pytest.mark.parametrize(
        "kind", [sf.ProblemKind.VERTEX_COVER, sf.ProblemKind.INDEPENDENT_SET]
    )
    def test_involution(self, g, kind):
        p = sf.make_problem(kind, g)
        dd = sf.dualize(sf.dualize(p))
        assert dd.goal is p.goal
        self._all_subsets_agree(p, dd)

    def test_goal_flips_and_label(self):
        p = vc(TRIANGLE)
        d = sf.dualize(p)
        assert d.goal is sf.Goal.MAXIMIZE
        assert d.label.startswith("D-")

    def test_dual_min_set_cover_counts_removable_sets(self):
        sys = sf.SetSystem.from_lists(4, [[0, 1], [2, 3], [0, 2], [1, 3]])
        p = sf.make_problem(sf.ProblemKind.SET_COVER, sys)
        d = sf.dualize(p)
        res = sf.brute_force_optimum(d)
        assert res.value == 2  # m - opt(set cover) = 4 - 2

    def test_dual_of_independent_set_is_vertex_cover(self):
        d = sf.dualize(mis(PATH3))
        cover = vc(PATH3)
        self._all_subsets_agree(
            dataclasses.replace(d, goal=cover.goal), cover
        )

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize(
        "kind",
        [
            sf.ProblemKind.VERTEX_COVER,
            sf.ProblemKind.INDEPENDENT_SET,
            sf.ProblemKind.DOMINATING_SET,
        ],
    )
    def test_value_duality(self, seed, kind):
        from conftest import random_graph

        g = random_graph(seed % 6 + 4, 0.5, 50 + seed)
        p = sf.make_problem(kind, g)
        a = sf.brute_force_optimum(p)
        b = sf.brute_force_optimum(sf.dualize(p))
        if isinstance(a, sf.EvaluatedSolution) and isinstance(b, sf.EvaluatedSolution):
            assert a.value + b.value == p.universe_size
