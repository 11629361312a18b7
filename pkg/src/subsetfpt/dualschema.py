"""Dual-parameterization approximation schema.

Given a primal subset problem, a polynomial oracle with ratio rho, and an
accuracy target epsilon, either the complement of the oracle's solution is
already a (1 -/+ epsilon)-approximation of the dual problem (the instance is
large relative to the optimum), or the instance is small enough for
exhaustive search.  The dispatch thresholds are exact rationals; the unknown
optimum k is replaced by an observable surrogate that only strengthens the
test, so the ratio guarantee is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .core import (
    BudgetExceeded as CoreBudgetExceeded,
    EvaluatedSolution,
    Goal,
    Infeasible,
    SubsetProblem,
    brute_force_optimum,
    complement,
    dualize,
)
from .approx import ApproxOracle
from .problems import Graph, ProblemKind


class SchemaPath(Enum):
    APPROX = "approx"
    BRUTE = "brute"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SchemaConfig:
    epsilon: Fraction
    brute_cap: int = 20
    k_upper_hint: Optional[int] = None
    force_brute: bool = False

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps <= 1:
            raise ValueError("epsilon must be in (0, 1]")
        if self.brute_cap < 1:
            raise ValueError("brute_cap must be >= 1")


@dataclass
class SchemaOutcome:
    path: SchemaPath
    dual_solution: Optional[frozenset[int]]
    dual_value: Optional[int]
    guarantee: Optional[Fraction]  # >= 1-eps bound (max dual) / <= 1+eps (min dual); 1 on brute path
    exact: bool
    diagnostics: dict


def threshold_min(rho: Fraction, epsilon: Fraction) -> Fraction:
    """Instance-size factor above which complementing a rho-approximate
    minimizer is (1 - epsilon)-good for the dual maximization problem."""
    rho, epsilon = Fraction(rho), Fraction(epsilon)
    if rho < 1:
        raise ValueError("minimization ratio must be >= 1")
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must be in (0, 1]")
    return (rho - 1 + epsilon) / epsilon


def threshold_max(rho: Fraction, epsilon: Fraction) -> Fraction:
    """Dual counterpart for maximization: (1 - rho + epsilon)/epsilon, never
    more than 2/epsilon.

    Derivation: the dual ratio is (n - k')/(n - k) <= (n - rho*k)/(n - k)
    since k' >= rho*k; requiring that to be <= 1 + epsilon solves to
    n >= ((1 - rho + epsilon)/epsilon) * k.
    """
    rho, epsilon = Fraction(rho), Fraction(epsilon)
    if not 0 < rho <= 1:
        raise ValueError("maximization ratio must be in (0, 1]")
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must be in (0, 1]")
    return min((1 - rho + epsilon) / epsilon, Fraction(2) / epsilon)


def dual_approx(
    p: SubsetProblem, oracle: ApproxOracle, cfg: SchemaConfig
) -> SchemaOutcome:
    """Approximate the dual of p within 1 -/+ epsilon.

    p is the primal problem; the returned solution solves dualize(p).
    """
    if oracle.goal is not p.goal:
        raise ValueError("oracle goal must match the primal problem's goal")
    n = p.universe_size
    eps = cfg.epsilon
    sol = frozenset(oracle.run(p))
    k_prime = len(sol)
    rho = Fraction(oracle.ratio(p))
    diag: dict = {"n": n, "k_prime": k_prime, "rho": str(rho), "epsilon": str(eps)}

    take_approx = False
    if p.goal is Goal.MINIMIZE:
        c = threshold_min(rho, eps)
        # k' >= k, so n >= c*k' implies the true condition n >= c*k.
        take_approx = n >= c * k_prime
        diag["threshold"] = str(c)
        diag["surrogate_k"] = k_prime
    else:
        c = threshold_max(rho, eps)
        k_ub = min(n, math.ceil(k_prime / rho))
        if cfg.k_upper_hint is not None:
            k_ub = min(k_ub, cfg.k_upper_hint)
        take_approx = n >= c * k_ub
        diag["threshold"] = str(c)
        diag["surrogate_k"] = k_ub
    diag["dual_parameter"] = n - k_prime

    if take_approx and not cfg.force_brute:
        dual_sol = complement(p, sol)
        guarantee = 1 - eps if p.goal is Goal.MINIMIZE else 1 + eps
        return SchemaOutcome(
            path=SchemaPath.APPROX,
            dual_solution=dual_sol,
            dual_value=n - k_prime,
            guarantee=guarantee,
            exact=False,
            diagnostics=diag,
        )
    if n <= cfg.brute_cap:
        res = brute_force_optimum(dualize(p), budget=cfg.brute_cap)
        if isinstance(res, Infeasible):
            raise ValueError("dual instance is infeasible")
        assert isinstance(res, EvaluatedSolution)
        return SchemaOutcome(
            path=SchemaPath.BRUTE,
            dual_solution=res.members,
            dual_value=res.value,
            guarantee=Fraction(1),
            exact=True,
            diagnostics=diag,
        )
    return SchemaOutcome(
        path=SchemaPath.BUDGET_EXCEEDED,
        dual_solution=None,
        dual_value=None,
        guarantee=None,
        exact=False,
        diagnostics=diag,
    )


def built_in_upper_bound(p: SubsetProblem) -> Optional[int]:
    """Cheap combinatorial upper bound on the primal optimum, for the
    maximization dispatch test."""
    if p.kind is ProblemKind.INDEPENDENT_SET and isinstance(p.data, Graph):
        g = p.data
        matched = 0
        size = 0
        for u, v in sorted(g.edges):
            if not ((matched >> u) & 1 or (matched >> v) & 1):
                matched |= (1 << u) | (1 << v)
                size += 1
        # alpha(G) = n - tau(G) <= n - matching size
        return g.n - size
    if p.kind is ProblemKind.CLIQUE and isinstance(p.data, Graph):
        g = p.data
        alive = (1 << g.n) - 1
        degeneracy = 0
        while alive:
            remaining = [u for u in range(g.n) if (alive >> u) & 1]
            v = min(remaining, key=lambda u: (g.adj[u] & alive).bit_count())
            degeneracy = max(degeneracy, (g.adj[v] & alive).bit_count())
            alive &= ~(1 << v)
        return degeneracy + 1
    return None
