"""Independent reference computations used by the tests.

None of these share code paths with the package: sparsity and
connectivity are brute-forced over vertex subsets, exact ranks go through
sympy, and derivatives through central differences.
"""
from itertools import combinations

import numpy as np
import sympy


def brute_force_sparse(n, edges, k):
    for size in range(2, n + 1):
        for subset in combinations(range(n), size):
            s = set(subset)
            count = sum(1 for u, v in edges if u in s and v in s)
            if count >= 1 and count > 2 * size - k:
                return False
    return True


def _connected(vertices, edges):
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for u, v in edges:
            for x, y in ((u, v), (v, u)):
                if x == a and y in vertices and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen == vertices


def brute_force_k_connected(n, edges, k):
    if n <= k:
        return False
    for size in range(k):
        for cut in combinations(range(n), size):
            rest = [v for v in range(n) if v not in cut]
            if not _connected(rest, edges):
                return False
    return True


def sympy_rank(M):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in M]).rank()


def central_gradient(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def random_graph(n, p, rng):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
