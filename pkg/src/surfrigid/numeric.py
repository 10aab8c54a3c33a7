"""Rank, kernels and PSD tests over two scalar backends.

Matrices are numpy arrays.  An ``object`` array whose entries are
:class:`fractions.Fraction` (or ``int``) is handled with exact arithmetic;
anything else is converted to ``float64`` and handled through the SVD or
the symmetric eigendecomposition with a relative tolerance.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import ParameterError

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "exact_array",
    "is_exact",
    "rank",
    "nullspace_basis",
    "cokernel_basis",
    "is_psd",
    "is_symmetric",
]


def is_exact(M) -> bool:
    return isinstance(M, np.ndarray) and M.dtype == object


def exact_array(values) -> np.ndarray:
    """Object array of Fractions with the same shape as ``values``."""
    a = np.array(values, dtype=object)
    flat = [Fraction(x) if not isinstance(x, Fraction) else x for x in a.ravel()]
    out = np.empty(a.shape, dtype=object)
    out.ravel()[:] = flat if flat else []
    return out


def _as_2d(M):
    M = np.asarray(M) if not isinstance(M, np.ndarray) else M
    if M.ndim != 2:
        raise ParameterError(f"expected a 2-d matrix, got shape {M.shape}")
    return M


def _integer_rows(M):
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    rows = []
    for row in M:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def _bareiss_rank(rows):
    """Fraction-free Gaussian elimination on an integer matrix."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def _rref(M):
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in M]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _primitive(v):
    """Scale a rational vector to coprime integers with a positive leading entry."""
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = next((x for x in ints if x != 0), 1)
    if g == 0:
        return exact_array(ints)
    sign = -1 if lead < 0 else 1
    return exact_array([Fraction(sign * x, g) for x in ints])


def _float_threshold(s, shape, tol):
    if s.size == 0:
        return 0.0
    return tol * max(shape) * s[0]


def rank(M, tol: float = DEFAULT_TOL) -> int:
    M = _as_2d(M)
    if M.size == 0:
        return 0
    if is_exact(M):
        return _bareiss_rank(_integer_rows(M))
    s = np.linalg.svd(M.astype(float), compute_uv=False)
    return int(np.sum(s > _float_threshold(s, M.shape, tol)))


def nullspace_basis(M, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of ``{x : M x = 0}``.

    Exact vectors are returned as primitive integer vectors (stored as
    Fractions); float vectors are orthonormal.
    """
    M = _as_2d(M)
    nrows, ncols = M.shape
    if ncols == 0:
        return []
    if nrows == 0:
        if is_exact(M):
            return [exact_array([int(i == j) for i in range(ncols)]) for j in range(ncols)]
        return list(np.eye(ncols))
    if is_exact(M):
        rows, pivots = _rref(M)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -rows[r][f]
            basis.append(_primitive(v))
        return basis
    _, s, vh = np.linalg.svd(M.astype(float))
    r = int(np.sum(s > _float_threshold(s, M.shape, tol)))
    return list(vh[r:])


def cokernel_basis(M, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of ``{x : x M = 0}`` (the left null space)."""
    return nullspace_basis(_as_2d(M).T, tol)


def is_symmetric(M, tol: float = DEFAULT_TOL) -> bool:
    M = _as_2d(M)
    if M.shape[0] != M.shape[1]:
        return False
    if is_exact(M):
        return bool(np.all(M == M.T))
    A = M.astype(float)
    scale = max(np.abs(A).max(initial=0.0), 1.0)
    return bool(np.all(np.abs(A - A.T) <= tol * scale))


def _ldl_nonnegative(M):
    """Symmetric-pivoted LDL^T on a rational matrix; True iff all pivots are >= 0."""
    a = [[Fraction(x) for x in row] for row in M]
    idx = list(range(len(a)))
    while idx:
        diag = [a[i][i] for i in idx]
        if any(d < 0 for d in diag):
            return False
        k = next((i for i in idx if a[i][i] > 0), None)
        if k is None:
            # all remaining pivots vanish: PSD only if the block is zero
            return all(a[i][j] == 0 for i in idx for j in idx)
        idx.remove(k)
        pk = a[k][k]
        for i in idx:
            if a[i][k] == 0:
                continue
            f = a[i][k] / pk
            for j in idx:
                a[i][j] -= f * a[k][j]
    return True


def is_psd(M, tol: float = DEFAULT_TOL) -> bool:
    M = _as_2d(M)
    if not is_symmetric(M, tol):
        raise ParameterError("positive semi-definiteness is only defined here for symmetric matrices")
    if M.size == 0:
        return True
    if is_exact(M):
        return _ldl_nonnegative(M)
    w = np.linalg.eigvalsh(M.astype(float))
    norm = np.abs(w).max()
    return bool(w[0] >= -tol * norm)
