"""Compare the numba and numpy reachability kernels on a random hierarchy.

Usage: python benchmarks/bench_closure.py [n_nodes] [n_edges] [n_sources]
"""

import sys
import time

import numpy as np

from ontoforge import _kernels


def random_dag(rng, n, m):
    edges = set()
    while len(edges) < m:
        a, b = rng.integers(0, n, size=2)
        if a < b:
            edges.add((int(a), int(b)))
    return sorted(edges)


def time_backend(fn, indptr, indices, sources, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for src in sources:
            fn(indptr, indices, src)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
    m = int(sys.argv[2]) if len(sys.argv) > 2 else 15000
    n_sources = int(sys.argv[3]) if len(sys.argv) > 3 else 500

    rng = np.random.default_rng(0)
    edges = random_dag(rng, n, m)
    indptr, indices = _kernels.build_csr(n, edges)
    sources = rng.integers(0, n, size=n_sources)

    print(f"graph: {n} nodes, {m} edges; {n_sources} BFS sources; "
          f"default backend: {_kernels.backend_name()}")

    t_numpy = time_backend(_kernels._reach_numpy, indptr, indices, sources)
    print(f"numpy : {t_numpy:.3f}s")

    if _kernels.HAVE_NUMBA:
        _kernels._reach_numba(indptr, indices, np.int64(0))  # compile
        t_numba = time_backend(_kernels._reach_numba, indptr, indices, sources)
        print(f"numba : {t_numba:.3f}s  ({t_numpy / t_numba:.1f}x faster)")

        for src in sources[:50]:
            a = _kernels._reach_numpy(indptr, indices, int(src))
            b = _kernels._reach_numba(indptr, indices, np.int64(src))
            assert np.array_equal(a, b), "backends disagree"
        print("backends agree on sampled sources")
    else:
        print("numba unavailable or disabled (ONTOFORGE_NO_NUMBA); numpy only")
    return 0


if __name__ == "__main__":
    sys.exit(main())
