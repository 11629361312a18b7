"""Problem-agnostic foundations for subset problems.

A subset problem selects a subset of a universe {0, ..., n-1}; the value of a
feasible subset is its cardinality.  Subsets are carried around as frozensets
of element indices at the API surface and as integer bitmasks internally, so
exhaustive enumeration is an integer counter.

Exhaustive oracles here are the ground truth everything else is tested
against: they enumerate subsets in a fixed order (by cardinality, then
lexicographic on the sorted member tuple) so ties break deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

DEFAULT_BUDGET = 20

_CHUNK = 1 << 20


class UnsupportedRestriction(Exception):
    """Raised when a problem kind has no sub-instance operator."""


class InfeasibleInstance(Exception):
    """Raised by oracles when the instance admits no feasible solution."""


class Goal(Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    def flipped(self) -> "Goal":
        return Goal.MAXIMIZE if self is Goal.MINIMIZE else Goal.MINIMIZE


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def members_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SubsetProblem:
    """Uniform contract for problems whose solutions are subsets of a universe.

    feasible_mask takes an integer bitmask over [0, universe_size).
    feasible_batch, when present, evaluates a whole numpy array of masks at
    once (used by the exhaustive oracles for speed).
    restrict_fn(e) builds the sub-instance whose solutions S' are exactly
    those with S' + {e} feasible here; kinds that have no such operator
    leave it as None.
    """

    label: str
    universe_size: int
    goal: Goal
    feasible_mask: Callable[[int], bool]
    restrict_fn: Optional[Callable[[int], "Restriction"]] = None
    feasible_batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    kind: object = None
    data: object = None

    def restrict(self, e: int) -> "Restriction":
        if not 0 <= e < self.universe_size:
            raise ValueError(f"element {e} outside universe of size {self.universe_size}")
        if self.restrict_fn is None:
            raise UnsupportedRestriction(f"{self.label} has no restriction operator")
        return self.restrict_fn(e)


@dataclass(frozen=True)
class Restriction:
    """A sub-instance together with the map back to the parent's element ids.

    lift[i] is the parent index of the sub-instance's element i.
    """

    problem: SubsetProblem
    lift: tuple[int, ...]

    def lift_set(self, members: Iterable[int]) -> frozenset[int]:
        return frozenset(self.lift[i] for i in members)


@dataclass(frozen=True)
class EvaluatedSolution:
    members: frozenset[int]
    value: int
    optimal: bool = False


@dataclass(frozen=True)
class Infeasible:
    """No subset of the universe is feasible."""


@dataclass(frozen=True)
class BudgetExceeded:
    universe_size: int
    budget: int


def _check_members(p: SubsetProblem, members: Iterable[int]) -> frozenset[int]:
    s = frozenset(members)
    for i in s:
        if not 0 <= i < p.universe_size:
            raise ValueError(f"member {i} outside universe of size {p.universe_size}")
    return s


def is_feasible(p: SubsetProblem, members: Iterable[int]) -> bool:
    return p.feasible_mask(mask_of(_check_members(p, members)))


def complement(p: SubsetProblem, members: Iterable[int]) -> frozenset[int]:
    s = _check_members(p, members)
    return frozenset(range(p.universe_size)) - s


def dualize(p: SubsetProblem) -> SubsetProblem:
    """The dual problem D-P: same universe, inverse goal, a set is feasible
    iff its complement is feasible for P."""
    n = p.universe_size
    full = (1 << n) - 1

    def feas(mask: int) -> bool:
        return p.feasible_mask(full & ~mask)

    batch = None
    if p.feasible_batch is not None:
        inner = p.feasible_batch

        def batch(masks: np.ndarray) -> np.ndarray:
            return inner(full & ~masks)

    return SubsetProblem(
        label="D-" + p.label,
        universe_size=n,
        goal=p.goal.flipped(),
        feasible_mask=feas,
        feasible_batch=batch,
        data=p,
    )


def _lex_rank(mask: int, n: int) -> int:
    # Larger rank <=> lexicographically smaller sorted member tuple.
    r = 0
    for i in iter_bits(mask):
        r |= 1 << (n - 1 - i)
    return r


def _sweep_best(p: SubsetProblem) -> Optional[tuple[int, int]]:
    """(mask, value) of the optimum by cardinality sweep, None if infeasible."""
    n = p.universe_size
    cards = range(n + 1) if p.goal is Goal.MINIMIZE else range(n, -1, -1)
    for r in cards:
        for combo in itertools.combinations(range(n), r):
            m = mask_of(combo)
            if p.feasible_mask(m):
                return m, r
    return None


def _batch_scan(p: SubsetProblem):
    """Yield (masks, feasible) chunks over all 2^n masks."""
    n = p.universe_size
    total = 1 << n
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        masks = np.arange(start, stop, dtype=np.int64)
        yield masks, p.feasible_batch(masks)


def _batch_best(p: SubsetProblem) -> Optional[tuple[int, int]]:
    n = p.universe_size
    minimize = p.goal is Goal.MINIMIZE
    best: Optional[tuple[int, int]] = None  # (value, mask)
    best_rank = -1
    for masks, feas in _batch_scan(p):
        cand = masks[feas]
        if cand.size == 0:
            continue
        pops = np.bitwise_count(cand)
        val = int(pops.min() if minimize else pops.max())
        if best is not None and (val > best[0] if minimize else val < best[0]):
            continue
        tied = cand[pops == val]
        ranks = np.zeros(tied.shape, dtype=np.int64)
        for i in range(n):
            ranks |= ((tied >> i) & 1) << (n - 1 - i)
        j = int(ranks.argmax())
        if best is None or (val < best[0] if minimize else val > best[0]) or (
            val == best[0] and int(ranks[j]) > best_rank
        ):
            best = (val, int(tied[j]))
            best_rank = int(ranks[j])
    if best is None:
        return None
    return best[1], best[0]


def brute_force_optimum(
    p: SubsetProblem, budget: int = DEFAULT_BUDGET
) -> EvaluatedSolution | Infeasible | BudgetExceeded:
    """Exact optimum by enumerating all 2^n subsets.

    Ties among optima break to the (cardinality, lexicographic)-smallest
    solution.  Returns BudgetExceeded when the universe is larger than the
    caller allows, so callers never rely on exhaustive search by accident.
    """
    n = p.universe_size
    if n > budget:
        return BudgetExceeded(n, budget)
    if p.feasible_batch is not None and n >= 14:
        hit = _batch_best(p)
    else:
        hit = _sweep_best(p)
    if hit is None:
        return Infeasible()
    mask, value = hit
    return EvaluatedSolution(members_of(mask), value, optimal=True)


def enumerate_optima(
    p: SubsetProblem, budget: int = DEFAULT_BUDGET
) -> list[frozenset[int]] | BudgetExceeded:
    """All optimal solutions in (cardinality, lexicographic) order; empty
    list iff the instance is infeasible."""
    n = p.universe_size
    if n > budget:
        return BudgetExceeded(n, budget)
    if p.feasible_batch is not None and n >= 14:
        hit = _batch_best(p)
        if hit is None:
            return []
        value = hit[1]
        out = []
        for masks, feas in _batch_scan(p):
            cand = masks[feas]
            cand = cand[np.bitwise_count(cand) == value]
            out.extend(int(m) for m in cand)
        out.sort(key=lambda m: -_lex_rank(m, n))
        return [members_of(m) for m in out]
    cards = range(n + 1) if p.goal is Goal.MINIMIZE else range(n, -1, -1)
    for r in cards:
        found = [
            frozenset(combo)
            for combo in itertools.combinations(range(n), r)
            if p.feasible_mask(mask_of(combo))
        ]
        if found:
            return found
    return []
