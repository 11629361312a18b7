from fractions import Fraction

import pytest

import subsetfpt as sf
from conftest import all_graphs_upto, random_graph, random_system

TRIANGLE = sf.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PATH3 = sf.Graph.from_edges(3, [(0, 1), (1, 2)])
STAR = sf.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def test_harmonic_exact_rationals():
    assert sf.harmonic(1) == 1
    assert sf.harmonic(3) == Fraction(11, 6)
    assert sf.harmonic(0) == 0


class TestGreedySetCover:
    def test_trace_picks_biggest_then_tie_lowest(self):
        sys = sf.SetSystem.from_lists(4, [[0, 1, 2], [3], [0, 1], [2, 3]])
        assert sf.greedy_set_cover(sys) == frozenset({0, 1})

    def test_single_covering_set(self):
        sys = sf.SetSystem.from_lists(3, [[0, 1, 2]])
        assert sf.greedy_set_cover(sys) == frozenset({0})

    def test_both_singletons_required(self):
        sys = sf.SetSystem.from_lists(2, [[0], [1]])
        assert sf.greedy_set_cover(sys) == frozenset({0, 1})

    def test_uncoverable_raises(self):
        with pytest.raises(sf.InfeasibleInstance):
            sf.greedy_set_cover(sf.SetSystem.from_lists(2, [[0]]))


class TestMatchingVertexCover:
    def test_star_takes_first_edge_endpoints(self):
        assert sf.matching_vertex_cover(STAR) == frozenset({0, 1})

    def test_triangle_matches_optimum(self):
        assert len(sf.matching_vertex_cover(TRIANGLE)) == 2

    def test_edgeless(self):
        assert sf.matching_vertex_cover(sf.Graph.from_edges(3, [])) == frozenset()


class TestGreedyDominating:
    def test_path_center(self):
        assert sf.greedy_dominating_set(PATH3) == frozenset({1})

    def test_edgeless_all_vertices(self):
        g = sf.Graph.from_edges(3, [])
        assert sf.greedy_dominating_set(g) == frozenset({0, 1, 2})

    def test_star_center(self):
        assert sf.greedy_dominating_set(STAR) == frozenset({0})


class TestGreedyMIS:
    def test_path_endpoints(self):
        assert sf.greedy_maximal_independent_set(PATH3) == frozenset({0, 2})

    def test_triangle_single(self):
        assert sf.greedy_maximal_independent_set(TRIANGLE) == frozenset({0})

    def test_edgeless_all(self):
        g = sf.Graph.from_edges(4, [])
        assert sf.greedy_maximal_independent_set(g) == frozenset(range(4))

    @pytest.mark.parametrize("seed", range(30))
    def test_output_is_independent_dominating(self, seed):
        g = random_graph((seed % 8) + 2, 0.4, 900 + seed)
        out = sf.greedy_maximal_independent_set(g)
        p_is = sf.make_problem(sf.ProblemKind.INDEPENDENT_SET, g)
        p_mids = sf.make_problem(
            sf.ProblemKind.MIN_INDEPENDENT_DOMINATING_SET, g
        )
        assert sf.is_feasible(p_is, out)
        assert sf.is_feasible(p_mids, out)


class TestGreedyClique:
    def test_triangle_whole(self):
        assert sf.greedy_clique(TRIANGLE) == frozenset({0, 1, 2})

    def test_edgeless_single_vertex(self):
        assert len(sf.greedy_clique(sf.Graph.from_edges(2, []))) == 1

    def test_path_edge(self):
        assert len(sf.greedy_clique(PATH3)) == 2


def _kind_of_oracle(name):
    return {
        "matching-vc": sf.ProblemKind.VERTEX_COVER,
        "greedy-set-cover": sf.ProblemKind.SET_COVER,
        "greedy-dominating": sf.ProblemKind.DOMINATING_SET,
        "greedy-mis": sf.ProblemKind.INDEPENDENT_SET,
        "greedy-clique": sf.ProblemKind.CLIQUE,
    }[name]


GRAPH_ORACLES = ["matching-vc", "greedy-dominating", "greedy-mis", "greedy-clique"]


class TestRatioSoundness:
    def _check(self, oracle, p):
        opt = sf.brute_force_optimum(p)
        if not isinstance(opt, sf.EvaluatedSolution):
            return
        sol = oracle.run(p)
        assert sf.is_feasible(p, sol)
        rho = oracle.ratio(p)
        if oracle.goal is sf.Goal.MINIMIZE:
            assert rho >= 1
            assert len(sol) <= rho * opt.value
        else:
            assert 0 < rho <= 1
            assert len(sol) >= rho * opt.value

    @pytest.mark.parametrize("name", GRAPH_ORACLES)
    def test_all_graphs_up_to_4(self, name):
        oracle = sf.ORACLES[name]
        for g in all_graphs_upto(4):
            self._check(oracle, sf.make_problem(_kind_of_oracle(name), g))

    @pytest.mark.parametrize("name", GRAPH_ORACLES)
    @pytest.mark.parametrize("seed", range(100))
    def test_random_graphs(self, name, seed):
        oracle = sf.ORACLES[name]
        g = random_graph((seed % 11) + 2, [0.2, 0.5, 0.8][seed % 3], 1000 + seed)
        self._check(oracle, sf.make_problem(_kind_of_oracle(name), g))

    @pytest.mark.parametrize("seed", range(100))
    def test_random_set_systems(self, seed):
        sys = random_system((seed % 8) + 2, (seed % 10) + 1, 4, 2000 + seed)
        self._check(
            sf.ORACLES["greedy-set-cover"],
            sf.make_problem(sf.ProblemKind.SET_COVER, sys),
        )


class TestMatchingIntersectivity:
    """The matching cover contains both endpoints of an edge; every optimal
    cover hits every edge, so the two always intersect on non-edgeless
    graphs."""

    def test_all_graphs_up_to_5(self):
        for g in all_graphs_upto(5):
            if not g.edges:
                continue
            p = sf.make_problem(sf.ProblemKind.VERTEX_COVER, g)
            out = sf.matching_vertex_cover(g)
            optima = sf.enumerate_optima(p)
            assert any(out & o for o in optima), sorted(g.edges)

    @pytest.mark.parametrize("seed", range(50))
    def test_random_graphs_n8(self, seed):
        g = random_graph(8, 0.4, 3000 + seed)
        if not g.edges:
            return
        out = sf.matching_vertex_cover(g)
        p = sf.make_problem(sf.ProblemKind.VERTEX_COVER, g)
        assert any(out & o for o in sf.enumerate_optima(p))


def test_oracles_are_deterministic():
    g = random_graph(10, 0.5, 4000)
    for name in GRAPH_ORACLES:
        oracle = sf.ORACLES[name]
        p = sf.make_problem(_kind_of_oracle(name), g)
        assert oracle.run(p) == oracle.run(p)
