"""Reachability kernels over CSR adjacency arrays.

Computing the told-hierarchy closure is the hot loop once ontologies reach
tens of thousands of concepts, so the per-source BFS is JIT-compiled with
numba.  Setting ``ONTOFORGE_NO_NUMBA=1`` (or running without numba installed)
selects a vectorised pure-numpy fallback instead; both paths return identical
arrays.  ``benchmarks/bench_closure.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ONTOFORGE_NO_NUMBA", "") not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def build_csr(n: int, edges: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    """Sorted CSR (indptr, indices) from an edge list over nodes 0..n-1."""
    if edges:
        arr = np.unique(np.asarray(edges, dtype=np.int64), axis=0)
        src, dst = arr[:, 0], arr[:, 1]
    else:
        src = dst = np.empty(0, dtype=np.int64)
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.copy()


def _reach_numpy(indptr: np.ndarray, indices: np.ndarray, src: int) -> np.ndarray:
    n = indptr.shape[0] - 1
    visited = np.zeros(n, dtype=np.bool_)
    visited[src] = True
    frontier = np.array([src], dtype=np.int64)
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        # gather indices[starts[k]:starts[k]+counts[k]] for all k at once
        offsets = np.repeat(starts, counts)
        within = np.arange(total, dtype=np.int64) - np.repeat(
            np.cumsum(counts) - counts, counts
        )
        neighbours = indices[offsets + within]
        fresh = neighbours[~visited[neighbours]]
        if fresh.size == 0:
            break
        frontier = np.unique(fresh)
        visited[frontier] = True
    return visited


if HAVE_NUMBA:

    @njit(cache=True)
    def _reach_numba(indptr, indices, src):  # pragma: no cover - jitted
        n = indptr.shape[0] - 1
        visited = np.zeros(n, dtype=np.bool_)
        stack = np.empty(n, dtype=np.int64)
        visited[src] = True
        stack[0] = src
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if not visited[v]:
                    visited[v] = True
                    stack[top] = v
                    top += 1
        return visited

    @njit(cache=True)
    def _closure_numba(indptr, indices):  # pragma: no cover - jitted
        n = indptr.shape[0] - 1
        out = np.zeros((n, n), dtype=np.bool_)
        stack = np.empty(n, dtype=np.int64)
        for src in range(n):
            visited = out[src]
            visited[src] = True
            stack[0] = src
            top = 1
            while top > 0:
                top -= 1
                u = stack[top]
                for k in range(indptr[u], indptr[u + 1]):
                    v = indices[k]
                    if not visited[v]:
                        visited[v] = True
                        stack[top] = v
                        top += 1
        return out


def reachable(indptr: np.ndarray, indices: np.ndarray, src: int) -> np.ndarray:
    """Boolean mask of nodes reachable from ``src`` (reflexive)."""
    if HAVE_NUMBA:
        return _reach_numba(indptr, indices, np.int64(src))
    return _reach_numpy(indptr, indices, src)


def closure_matrix(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Full reflexive-transitive closure as an n-by-n boolean matrix."""
    if HAVE_NUMBA:
        return _closure_numba(indptr, indices)
    n = indptr.shape[0] - 1
    out = np.zeros((n, n), dtype=np.bool_)
    for src in range(n):
        out[src] = _reach_numpy(indptr, indices, src)
    return out
