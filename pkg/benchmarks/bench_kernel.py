"""Compare the compiled search kernel against the pure-Python fallback.

Workload: every tree on N vertices into the first universal stacked
triangulation of that order, timed under both kernels (best of --repeat).

    python3 benchmarks/bench_kernel.py [--n 10] [--repeat 3]
"""

import argparse
import time

from treehost import _kernel_py, kernel
from treehost.search import find_universal, tree_order
from treehost.subgraph import host_masks, subgraph_embed
from treehost.trees import enumerate_trees


def workload(n):
    host = find_universal(n).candidate
    trees = tree_order(enumerate_trees(n))
    masks = host_masks(host)

    def run():
        for t in trees:
            assert subgraph_embed(t.underlying, host, masks=masks) is not None

    return run


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args()
    run = workload(a.n)
    compiled = kernel.search
    rows = []
    if kernel.BACKEND == "cython":
        rows.append(("cython", timed(run, a.repeat)))
    kernel.search = _kernel_py.search
    try:
        rows.append(("python", timed(run, a.repeat)))
    finally:
        kernel.search = compiled
    for name, secs in rows:
        print(f"{name:8s} {secs * 1e3:9.2f} ms")
    if len(rows) == 2:
        print(f"speedup  {rows[1][1] / rows[0][1]:9.1f}x")


if __name__ == "__main__":
    main()
