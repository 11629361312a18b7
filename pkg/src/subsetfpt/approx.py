"""Polynomial-time approximation oracles with machine-checkable ratios.

Each oracle is a pure function (all ties break to the lowest index) paired
with a ratio computed from the instance as an exact Fraction, so threshold
comparisons downstream never hit floating point.  Minimization ratios are
>= 1, maximization ratios in (0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import Goal, InfeasibleInstance, SubsetProblem, iter_bits
from .problems import DominationState, Graph, ProblemKind, SetSystem


def harmonic(d: int) -> Fraction:
    """H_d = 1 + 1/2 + ... + 1/d (H_0 = 0)."""
    return sum((Fraction(1, i) for i in range(1, d + 1)), Fraction(0))


@dataclass(frozen=True)
class ApproxOracle:
    """A named polynomial-time algorithm together with its declared ratio.

    run/ratio take the wrapped SubsetProblem so the branching engine can
    re-invoke the oracle on sub-instances.
    """

    name: str
    goal: Goal
    run: Callable[[SubsetProblem], frozenset[int]]
    ratio: Callable[[SubsetProblem], Fraction]


def _greedy_cover_indices(n_ground: int, covers: list[int], target: int) -> list[int]:
    """Greedy max-coverage loop shared by set cover and dominating set."""
    chosen: list[int] = []
    covered = 0
    while covered & target != target:
        best, best_gain = -1, 0
        for i, s in enumerate(covers):
            gain = (s & target & ~covered).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        if best < 0:
            raise InfeasibleInstance("ground set not coverable")
        chosen.append(best)
        covered |= covers[best]
    return chosen


def greedy_set_cover(sys: SetSystem) -> frozenset[int]:
    full = (1 << sys.n_ground) - 1
    return frozenset(_greedy_cover_indices(sys.n_ground, list(sys.sets), full))


def greedy_dominating_set(g: Graph) -> frozenset[int]:
    return greedy_dominating_state(DominationState(graph=g))


def greedy_dominating_state(state: DominationState) -> frozenset[int]:
    g = state.graph
    uni = state.universe()
    target = ((1 << g.n) - 1) & ~state.dominated
    if target == 0:
        return frozenset()
    covers = [g.closed_nb(v) for v in uni]
    return frozenset(_greedy_cover_indices(g.n, covers, target))


def matching_vertex_cover(g: Graph) -> frozenset[int]:
    """Both endpoints of a lexicographically-greedy maximal matching."""
    cover = 0
    for u, v in sorted(g.edges):
        if not ((cover >> u) & 1 or (cover >> v) & 1):
            cover |= (1 << u) | (1 << v)
    return frozenset(iter_bits(cover))


def greedy_maximal_independent_set(g: Graph) -> frozenset[int]:
    """Repeatedly take the minimum-degree remaining vertex and delete its
    closed neighborhood; the result is maximal independent, hence also an
    independent dominating set."""
    alive = (1 << g.n) - 1
    picked = []
    while alive:
        best, best_deg = -1, g.n + 1
        for v in iter_bits(alive):
            deg = (g.adj[v] & alive).bit_count()
            if deg < best_deg:
                best, best_deg = v, deg
        picked.append(best)
        alive &= ~g.closed_nb(best)
    return frozenset(picked)


def greedy_clique(g: Graph) -> frozenset[int]:
    """Grow a clique, always adding the candidate with the most neighbors
    among the remaining candidates."""
    if g.n == 0:
        return frozenset()
    cand = (1 << g.n) - 1
    clique = 0
    while cand:
        best, best_deg = -1, -1
        for v in iter_bits(cand):
            deg = (g.adj[v] & cand).bit_count()
            if deg > best_deg:
                best, best_deg = v, deg
        clique |= 1 << best
        cand &= g.adj[best]
    return frozenset(iter_bits(clique))


def _graph_of(p: SubsetProblem) -> Graph:
    data = p.data
    if isinstance(data, DominationState):
        return data.graph
    if isinstance(data, Graph):
        return data
    raise TypeError(f"oracle needs a graph instance, got {type(data).__name__}")


def _sys_of(p: SubsetProblem) -> SetSystem:
    if not isinstance(p.data, SetSystem):
        raise TypeError(f"oracle needs a set system, got {type(p.data).__name__}")
    return p.data


MATCHING_VC = ApproxOracle(
    name="matching-vc",
    goal=Goal.MINIMIZE,
    run=lambda p: matching_vertex_cover(_graph_of(p)),
    ratio=lambda p: Fraction(2),
)

GREEDY_SET_COVER = ApproxOracle(
    name="greedy-set-cover",
    goal=Goal.MINIMIZE,
    run=lambda p: greedy_set_cover(_sys_of(p)),
    ratio=lambda p: max(harmonic(_sys_of(p).max_set_size()), Fraction(1)),
)

GREEDY_DOMINATING = ApproxOracle(
    name="greedy-dominating",
    goal=Goal.MINIMIZE,
    run=lambda p: (
        greedy_dominating_state(p.data)
        if isinstance(p.data, DominationState)
        else frozenset(greedy_dominating_set(_graph_of(p)))
    ),
    ratio=lambda p: harmonic(_graph_of(p).max_degree() + 1),
)

GREEDY_MIS = ApproxOracle(
    name="greedy-mis",
    goal=Goal.MAXIMIZE,
    run=lambda p: greedy_maximal_independent_set(_graph_of(p)),
    ratio=lambda p: Fraction(1, _graph_of(p).max_degree() + 1),
)

GREEDY_CLIQUE = ApproxOracle(
    name="greedy-clique",
    goal=Goal.MAXIMIZE,
    run=lambda p: greedy_clique(_graph_of(p)),
    ratio=lambda p: Fraction(1, max(_graph_of(p).n, 1)),
)

ORACLES = {
    o.name: o
    for o in (MATCHING_VC, GREEDY_SET_COVER, GREEDY_DOMINATING, GREEDY_MIS, GREEDY_CLIQUE)
}

DEFAULT_ORACLE = {
    ProblemKind.VERTEX_COVER: MATCHING_VC,
    ProblemKind.SET_COVER: GREEDY_SET_COVER,
    ProblemKind.DOMINATING_SET: GREEDY_DOMINATING,
    ProblemKind.INDEPENDENT_SET: GREEDY_MIS,
    ProblemKind.MIN_INDEPENDENT_DOMINATING_SET: GREEDY_MIS,
    ProblemKind.CLIQUE: GREEDY_CLIQUE,
}
