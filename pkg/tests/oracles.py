"""Independent reference implementations used to check the package.

Everything here recomputes results by a different route than the library:
eigenvalues via cyclic Jacobi rotations on the dense matrix, betweenness by
explicitly enumerating every geodesic, closeness from a hand-rolled BFS
table, and the t distribution by numerical quadrature of its density. Slow
and simple on purpose.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np


# -- dense eigenvalues by Jacobi rotation sweeps --------------------------------


def jacobi_eigenvalues(A, tol: float = 1e-12, max_sweeps: int = 200) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending."""
    A = np.array(A, dtype=np.float64, copy=True)
    n = A.shape[0]
    if n == 0:
        return np.empty(0)
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, (A * A).sum() - (np.diag(A) ** 2).sum()))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
    return np.sort(np.diag(A))


def jacobi_lambda_max(A) -> float:
    vals = jacobi_eigenvalues(A)
    return float(vals[-1]) if vals.size else 0.0


# -- shortest-path tables and geodesic enumeration -------------------------------


def adjacency_sets(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def bfs_dists(adj: list[set[int]], s: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def all_pairs_dists(adj: list[set[int]]) -> list[list[int]]:
    return [bfs_dists(adj, s) for s in range(len(adj))]


def enumerate_geodesics(adj: list[set[int]], s: int, t: int,
                        dist: list[int]) -> list[tuple[int, ...]]:
    """Every shortest s-t path, found by walking predecessors back from t."""
    if dist[t] < 0:
        return []
    paths = []

    def back(v, acc):
        if v == s:
            paths.append(tuple(reversed(acc + [s])))
            return
        for u in adj[v]:
            if dist[u] == dist[v] - 1:
                back(u, acc + [v])

    back(t, [])
    return paths


def brute_betweenness(n: int, edges) -> np.ndarray:
    """Betweenness by full geodesic enumeration; use only for small n."""
    adj = adjacency_sets(n, edges)
    bc = np.zeros(n)
    for s in range(n):
        dist = bfs_dists(adj, s)
        for t in range(s + 1, n):
            paths = enumerate_geodesics(adj, s, t, dist)
            if not paths:
                continue
            share = 1.0 / len(paths)
            for path in paths:
                for v in path[1:-1]:
                    bc[v] += share
    return bc


def brute_closeness(n: int, edges) -> np.ndarray:
    """Range-corrected closeness from the BFS distance table."""
    adj = adjacency_sets(n, edges)
    out = np.zeros(n)
    if n < 2:
        return out
    for v in range(n):
        dist = bfs_dists(adj, v)
        reach = [d for u, d in enumerate(dist) if u != v and d > 0]
        if not reach:
            continue
        r = len(reach)
        out[v] = (r / sum(reach)) * (r / (n - 1))
    return out


def brute_degree(n: int, edges) -> np.ndarray:
    adj = adjacency_sets(n, edges)
    return np.array([len(a) for a in adj], dtype=np.float64)


# -- random small test graphs -------------------------------------------------------


def random_edges(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    """Plain double-loop Bernoulli edges, independent of any library code."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                out.append((i, j))
    return out


def dense_from_edges(n: int, edges) -> np.ndarray:
    A = np.zeros((n, n))
    for u, v in edges:
        if u != v:
            A[u, v] = A[v, u] = 1.0
    return A


# -- Student's t by quadrature --------------------------------------------------------


def t_cdf_quadrature(t: float, df: int) -> float:
    """CDF of Student's t integrated numerically from the density."""
    from scipy.integrate import quad

    norm = math.exp(math.lgamma((df + 1) / 2.0) - math.lgamma(df / 2.0)) \
        / math.sqrt(df * math.pi)

    def density(x):
        return norm * (1.0 + x * x / df) ** (-(df + 1) / 2.0)

    if t <= 0:
        val, _ = quad(density, -np.inf, t)
        return val
    val, _ = quad(density, -np.inf, 0.0)
    val2, _ = quad(density, 0.0, t)
    return val + val2
