"""Shared fixtures and independent reference oracles.

The reference implementations here deliberately avoid the package's bitmask
machinery (plain sets, itertools, union-find) so the tests are a genuinely
independent route to the same answers.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

import subsetfpt as sf


@pytest.fixture(scope="session")
def atlas():
    """All non-isomorphic graphs with 1..7 vertices, as package Graphs."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0:
            continue
        out.append(sf.Graph.from_edges(n, list(G.edges())))
    return out


def atlas_upto(graphs, max_n):
    return [g for g in graphs if g.n <= max_n]


def all_graphs_upto(max_n):
    """Raw enumeration of every labeled graph with 1..max_n vertices."""
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
            yield sf.Graph.from_edges(n, edges)


def random_graph(n, p, seed):
    from subsetfpt.io import generate_gnp

    return generate_gnp(n, p, seed)


def random_system(n_ground, m, max_size, seed):
    from subsetfpt.io import generate_setsystem

    return generate_setsystem(n_ground, m, max_size, seed)


def ref_optimum(universe_size, goal, feasible):
    """Independent exhaustive optimum over plain frozensets.

    feasible takes a frozenset; returns (best_set, value) or None.
    """
    cards = (
        range(universe_size + 1)
        if goal is sf.Goal.MINIMIZE
        else range(universe_size, -1, -1)
    )
    for r in cards:
        for combo in itertools.combinations(range(universe_size), r):
            if feasible(frozenset(combo)):
                return frozenset(combo), r
    return None


def uf_has_cycle(n, edges):
    """Union-find cycle detector, independent of the package's DFS check."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def vc_feasible_ref(g: sf.Graph, s: frozenset) -> bool:
    return all(u in s or v in s for u, v in g.edges)


def is_feasible_ref(g: sf.Graph, s: frozenset) -> bool:
    return all(not (u in s and v in s) for u, v in g.edges)


def ds_feasible_ref(g: sf.Graph, s: frozenset) -> bool:
    dominated = set(s)
    for v in s:
        for u in range(g.n):
            if (g.adj[v] >> u) & 1:
                dominated.add(u)
    return len(dominated) == g.n
