"""Symmetric tridiagonal eigensolver: Sturm bisection plus inverse iteration.

Eigenvalues are located by bisection on the Sturm count (number of negative
pivots of ``T - x I``).  The numpy path is batched: many chains, or many
eigenvalue indices of one chain, are bisected simultaneously.  A scalar path
written in plain Python arithmetic also accepts ``mpmath.mpf`` entries, which
is how extended-precision gaps are resolved.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    def __init__(self, index: int, message: str):
        super().__init__(f"eigenpair {index}: {message}")
        self.index = index


def gershgorin(d: np.ndarray, e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gershgorin interval per chain for arrays shaped ``(..., n)``/``(..., n-1)``."""
    ae = np.abs(e)
    r = np.zeros_like(d)
    r[..., :-1] += ae
    r[..., 1:] += ae
    return (d - r).min(axis=-1), (d + r).max(axis=-1)


def sturm_count(d: np.ndarray, e2: np.ndarray, x: np.ndarray, pivmin: np.ndarray) -> np.ndarray:
    """Number of eigenvalues below ``x`` for a batch of chains.

    Parameters
    ----------
    d : (B, n) array
        Diagonals.
    e2 : (B, n-1) array
        Squared off-diagonals.
    x : (B,) array
        Shifts.
    pivmin : (B,) array
        Smallest admissible pivot magnitude.
    """
    q = d[:, 0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for k in range(1, d.shape[1]):
        q = d[:, k] - x - e2[:, k - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def bisect_batch(d, e, index, *, max_iter: int = 200) -> np.ndarray:
    """Eigenvalue number ``index[b]`` (0-based, ascending) of chain ``b``.

    ``d`` has shape ``(B, n)`` and ``e`` shape ``(B, n-1)``.
    """
    d = np.atleast_2d(np.asarray(d, dtype=float))
    e = np.atleast_2d(np.asarray(e, dtype=float))
    index = np.broadcast_to(np.asarray(index, dtype=np.int64), (d.shape[0],))
    if d.shape[1] == 1:
        return d[:, 0].copy()
    # Uncoupled chains are diagonal: answer exactly.
    decoupled = ~np.any(e != 0, axis=1)
    if decoupled.all():
        return np.take_along_axis(np.sort(d, axis=1), index[:, None], axis=1)[:, 0]
    e2 = e * e
    lo, hi = gershgorin(d, e)
    scale = np.maximum(np.abs(lo), np.abs(hi))
    scale = np.where(scale > 0, scale, 1.0)
    pivmin = np.maximum(e2.max(axis=1), 1.0) * np.finfo(float).tiny / _EPS
    lo = lo - 2 * _EPS * scale - pivmin
    hi = hi + 2 * _EPS * scale + pivmin
    tol = 1e-3 * _EPS * scale + pivmin
    for _ in range(max_iter):
        active = (hi - lo) > tol + 2 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        c = sturm_count(d, e2, mid, pivmin)
        above = c > index
        hi = np.where(active & above, mid, hi)
        lo = np.where(active & ~above, mid, lo)
    else:
        bad = int(np.argmax((hi - lo) > tol))
        raise ConvergenceError(int(index[bad]), "bisection did not converge")
    return 0.5 * (lo + hi)


def lowest_eigenvalues(d, e, k: int) -> np.ndarray:
    """The ``k`` smallest eigenvalues of one chain, ascending."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    if not 1 <= k <= d.size:
        raise ValueError("need 1 <= k <= n")
    return bisect_batch(np.tile(d, (k, 1)), np.tile(e, (k, 1)), np.arange(k))


def solve_tridiagonal(sub, diag, sup, b):
    """Solve a tridiagonal system by Gaussian elimination with partial pivoting."""
    n = len(diag)
    dl = np.array(sub, dtype=float)
    dd = np.array(diag, dtype=float)
    du = np.array(sup, dtype=float)
    x = np.array(b, dtype=float)
    du2 = np.zeros(max(n - 2, 0))
    tiny = _EPS * max(np.abs(dd).max(initial=0.0), np.abs(du).max(initial=0.0), 1.0)
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            if dd[i] == 0.0:
                dd[i] = tiny
            f = dl[i] / dd[i]
            dd[i + 1] -= f * du[i]
            x[i + 1] -= f * x[i]
        else:
            f = dd[i] / dl[i]
            dd[i] = dl[i]
            t = dd[i + 1]
            dd[i + 1] = du[i] - f * t
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -f * du2[i]
            du[i] = t
            x[i], x[i + 1] = x[i + 1], x[i] - f * x[i + 1]
    if dd[n - 1] == 0.0:
        dd[n - 1] = tiny
    x[n - 1] /= dd[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
    return x


def tridiag_matvec(d, e, v):
    out = d * v
    out[:-1] += e * v[1:]
    out[1:] += e * v[:-1]
    return out


def inverse_iteration(d, e, lam: float, *, previous=(), iters: int = 3) -> np.ndarray:
    """Unit eigenvector for the eigenvalue ``lam`` of the chain ``(d, e)``.

    Vectors in ``previous`` are projected out after every solve.  The sign
    is fixed so that the largest-magnitude component is positive.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = d.size
    if n == 1:
        return np.ones(1)
    scale = max(np.abs(d).max(), np.abs(e).max(initial=0.0), 1.0)
    shift = lam + 8 * _EPS * scale
    v = np.full(n, 1.0 / math.sqrt(n))
    v[::2] *= 1.0 + 1e-3  # break symmetry against accidental orthogonality
    for _ in range(iters):
        v = solve_tridiagonal(e, d - shift, e, v)
        for p in previous:
            v -= (p @ v) * p
        v /= np.linalg.norm(v)
    j = int(np.argmax(np.abs(v)))
    return v if v[j] > 0 else -v


# Scalar path; works with float or mpmath.mpf entries.


def sturm_count_scalar(d, e2, x, pivmin) -> int:
    c = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        c += 1
    for k in range(1, len(d)):
        q = d[k] - x - e2[k - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            c += 1
    return c


def bisect_scalar(d, e, index: int, tol, *, max_iter: int = 2000):
    """Eigenvalue ``index`` of one chain by bisection in the entries' arithmetic."""
    n = len(d)
    e2 = [x * x for x in e]
    lo = min(d[k] - (abs(e[k - 1]) if k else 0) - (abs(e[k]) if k < n - 1 else 0) for k in range(n))
    hi = max(d[k] + (abs(e[k - 1]) if k else 0) + (abs(e[k]) if k < n - 1 else 0) for k in range(n))
    pivmin = tol * tol
    lo, hi = lo - tol, hi + tol
    for _ in range(max_iter):
        if hi - lo <= tol:
            return (lo + hi) / 2
        mid = (lo + hi) / 2
        if sturm_count_scalar(d, e2, mid, pivmin) > index:
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(index, "scalar bisection did not converge")
