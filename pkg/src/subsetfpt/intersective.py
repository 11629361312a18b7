"""Branching engine driven by an approximation oracle, plus the
intersectivity verifier.

The engine turns an oracle whose output always meets some optimal solution
into an exact parameterized solver: at every node it runs the oracle on the
current sub-instance and branches only on the returned elements.  A node
whose oracle output is larger than ratio * remaining-budget cannot extend to
a solution within budget and is pruned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .core import (
    BudgetExceeded,
    SubsetProblem,
    enumerate_optima,
    Goal,
    DEFAULT_BUDGET,
)
from .approx import ApproxOracle


class BranchOutcome(Enum):
    FOUND = "found"
    NO_INSTANCE = "no-instance"
    NODE_CAP_EXCEEDED = "node-cap-exceeded"


@dataclass(frozen=True)
class BranchConfig:
    budget_k: int
    node_cap: int = 1_000_000
    prune_enabled: bool = True
    # For every supported kind the sub-instance reached by a branching path
    # depends only on the set of chosen root elements, not their order, so
    # visited chosen-sets can safely be skipped.  Off by default; node_cap
    # defends against blowup when it is off.
    memoize: bool = False

    def __post_init__(self):
        if self.budget_k < 0:
            raise ValueError("budget_k must be >= 0")
        if self.node_cap < 1:
            raise ValueError("node_cap must be >= 1")


@dataclass
class BranchReport:
    outcome: BranchOutcome
    solution: Optional[frozenset[int]]
    nodes_expanded: int
    max_depth: int
    max_arity: int

    @property
    def value(self) -> Optional[int]:
        return None if self.solution is None else len(self.solution)


class _Stats:
    __slots__ = ("nodes", "max_depth", "max_arity", "cap", "cap_hit")

    def __init__(self, cap: int):
        self.nodes = 0
        self.max_depth = 0
        self.max_arity = 0
        self.cap = cap
        self.cap_hit = False

    def enter(self, depth: int) -> bool:
        if self.nodes >= self.cap:
            self.cap_hit = True
            return False
        self.nodes += 1
        self.max_depth = max(self.max_depth, depth)
        return True


def _path_key(path: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(path), tuple(sorted(path)))


def branch_solve_min(
    p: SubsetProblem, oracle: ApproxOracle, cfg: BranchConfig
) -> BranchReport:
    """Exact minimization within budget_k, assuming the oracle is
    intersective at every explored sub-instance.

    Any FOUND solution is unconditionally feasible; exactness (and the
    correctness of NO_INSTANCE) is what intersectivity buys.
    """
    if p.goal is not Goal.MINIMIZE or oracle.goal is not Goal.MINIMIZE:
        raise ValueError("branch_solve_min needs a minimization problem and oracle")
    stats = _Stats(cfg.node_cap)
    best: Optional[tuple[int, ...]] = None
    seen: set[frozenset[int]] = set()

    # The recursion carries the lift-to-root map, so path stores root ids.
    def visit(
        inst: SubsetProblem,
        lift: tuple[int, ...],
        path: tuple[int, ...],
        budget: int,
    ) -> None:
        nonlocal best
        if not stats.enter(len(path)):
            return
        if inst.feasible_mask(0):
            if best is None or _path_key(path) < _path_key(best):
                best = path
            return
        if budget == 0:
            return
        if best is not None and len(path) + 1 >= len(best):
            return  # any solution below here is no better than the incumbent
        sol = sorted(oracle.run(inst))
        if cfg.prune_enabled and len(sol) > oracle.ratio(inst) * budget:
            return
        stats.max_arity = max(stats.max_arity, len(sol))
        for e in sol:
            child_path = path + (lift[e],)
            if cfg.memoize:
                # Sub-instances depend only on the chosen set, so a visited
                # chosen-set need not be rebuilt, let alone re-explored.
                state = frozenset(child_path)
                if state in seen:
                    continue
                seen.add(state)
            r = inst.restrict(e)
            child_lift = tuple(lift[i] for i in r.lift)
            visit(r.problem, child_lift, child_path, budget - 1)

    visit(p, tuple(range(p.universe_size)), (), cfg.budget_k)
    if best is not None and not stats.cap_hit:
        return BranchReport(
            BranchOutcome.FOUND, frozenset(best), stats.nodes, stats.max_depth, stats.max_arity
        )
    if stats.cap_hit:
        return BranchReport(
            BranchOutcome.NODE_CAP_EXCEEDED,
            frozenset(best) if best is not None else None,
            stats.nodes,
            stats.max_depth,
            stats.max_arity,
        )
    return BranchReport(
        BranchOutcome.NO_INSTANCE, None, stats.nodes, stats.max_depth, stats.max_arity
    )


def branch_solve_max(
    p: SubsetProblem, oracle: ApproxOracle, cfg: BranchConfig
) -> BranchReport:
    """Find a solution of size budget_k (complete under per-node
    intersectivity of the oracle)."""
    if p.goal is not Goal.MAXIMIZE:
        raise ValueError("branch_solve_max needs a maximization problem")
    stats = _Stats(cfg.node_cap)
    found: Optional[tuple[int, ...]] = None
    seen: set[frozenset[int]] = set()

    def visit(
        inst: SubsetProblem,
        lift: tuple[int, ...],
        path: tuple[int, ...],
    ) -> None:
        nonlocal found
        if found is not None:
            return
        if not stats.enter(len(path)):
            return
        if len(path) == cfg.budget_k:
            if inst.feasible_mask(0):
                found = path
            return
        sol = sorted(oracle.run(inst))
        stats.max_arity = max(stats.max_arity, len(sol))
        for e in sol:
            if found is not None:
                return
            child_path = path + (lift[e],)
            if cfg.memoize:
                state = frozenset(child_path)
                if state in seen:
                    continue
                seen.add(state)
            r = inst.restrict(e)
            child_lift = tuple(lift[i] for i in r.lift)
            visit(r.problem, child_lift, child_path)

    visit(p, tuple(range(p.universe_size)), ())
    if found is not None:
        return BranchReport(
            BranchOutcome.FOUND, frozenset(found), stats.nodes, stats.max_depth, stats.max_arity
        )
    if stats.cap_hit:
        return BranchReport(
            BranchOutcome.NODE_CAP_EXCEEDED, None, stats.nodes, stats.max_depth, stats.max_arity
        )
    return BranchReport(
        BranchOutcome.NO_INSTANCE, None, stats.nodes, stats.max_depth, stats.max_arity
    )


class Verdict(Enum):
    INTERSECTIVE = "intersective"
    NOT_INTERSECTIVE = "not-intersective"
    INCONCLUSIVE = "inconclusive"


@dataclass
class IntersectivityReport:
    oracle_solution: frozenset[int]
    optima_checked: int
    intersecting_optimum: Optional[frozenset[int]]
    verdict: Verdict


def verify_intersective(
    p: SubsetProblem, oracle: ApproxOracle, budget: int = DEFAULT_BUDGET
) -> IntersectivityReport:
    """Check whether the oracle's output meets at least one optimal solution,
    by enumerating all optima exhaustively."""
    sol = frozenset(oracle.run(p))
    optima = enumerate_optima(p, budget)
    if isinstance(optima, BudgetExceeded):
        return IntersectivityReport(sol, 0, None, Verdict.INCONCLUSIVE)
    for opt in optima:
        if sol & opt:
            return IntersectivityReport(sol, len(optima), opt, Verdict.INTERSECTIVE)
    return IntersectivityReport(sol, len(optima), None, Verdict.NOT_INTERSECTIVE)
