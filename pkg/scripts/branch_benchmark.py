#!/usr/bin/env python3
"""Benchmark the oracle-driven branching solver against exhaustive search.

For random vertex-cover instances this times both solvers at the optimal
budget and one below it, reports node counts, and checks that the verdicts
agree (they must, because the matching oracle always meets an optimal
cover).

Example:
    python scripts/branch_benchmark.py --count 50 --n-max 14
"""

import argparse
import json
import random
import sys
import time

import subsetfpt as sf
from subsetfpt.io import generate_gnp


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--p", type=float, default=0.4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-memoize", action="store_true")
    args = ap.parse_args(argv)

    oracle = sf.ORACLES["matching-vc"]
    rng = random.Random(args.seed)
    mismatches = 0
    total_nodes = 0
    brute_time = branch_time = 0.0
    for i in range(args.count):
        n = rng.randint(args.n_min, args.n_max)
        g = generate_gnp(n, args.p, args.seed + 1000 + i)
        p = sf.make_problem(sf.ProblemKind.VERTEX_COVER, g)

        t0 = time.perf_counter()
        opt = sf.brute_force_optimum(p)
        brute_time += time.perf_counter() - t0
        assert isinstance(opt, sf.EvaluatedSolution)

        cfg = sf.BranchConfig(budget_k=opt.value, memoize=not args.no_memoize)
        t0 = time.perf_counter()
        rep = sf.branch_solve_min(p, oracle, cfg)
        branch_time += time.perf_counter() - t0
        total_nodes += rep.nodes_expanded

        agree = rep.outcome is sf.BranchOutcome.FOUND and rep.value == opt.value
        mismatches += not agree
        json.dump(
            {
                "index": i,
                "n": n,
                "opt": opt.value,
                "outcome": rep.outcome.value,
                "nodes": rep.nodes_expanded,
                "max_depth": rep.max_depth,
                "agrees": agree,
            },
            sys.stdout,
        )
        sys.stdout.write("\n")

    json.dump(
        {
            "record": "aggregate",
            "instances": args.count,
            "mismatches": mismatches,
            "total_nodes": total_nodes,
            "brute_seconds": round(brute_time, 3),
            "branch_seconds": round(branch_time, 3),
        },
        sys.stdout,
    )
    sys.stdout.write("\n")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
