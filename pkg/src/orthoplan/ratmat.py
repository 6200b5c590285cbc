"""Exact rational linear algebra on numpy object arrays of Fractions.

Matrices are plain ``np.ndarray`` with ``dtype=object`` holding Python
``Fraction`` (or ``int``) entries, so ``A @ B``, ``A.T`` and elementwise
comparison stay exact.  Floating point enters only in
``sym_eigenvalues``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .errors import NotSymmetric

__all__ = [
    "rational",
    "vector",
    "zeros",
    "eye",
    "ones",
    "to_float",
    "is_zero",
    "is_symmetric",
    "is_idempotent",
    "rank",
    "inverse",
    "g_inverse",
    "solve_consistent",
    "projector",
    "projector_decompose",
    "sym_eigenvalues",
]


def rational(values):
    """Coerce a nested sequence / array to an object matrix of Fractions."""
    vals = np.asarray(values, dtype=object)
    if vals.ndim == 1:
        vals = vals[None, :] if len(vals) else vals.reshape(0, 0)
    out = np.empty(vals.shape, dtype=object)
    for idx in np.ndindex(vals.shape):
        out[idx] = Fraction(vals[idx])
    return out


def vector(values):
    """Column vector of Fractions, shape (n, 1)."""
    return rational([[v] for v in values])


def zeros(r, c):
    out = np.empty((r, c), dtype=object)
    out[:] = Fraction(0)
    return out


def eye(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def ones(r, c):
    out = np.empty((r, c), dtype=object)
    out[:] = Fraction(1)
    return out


def to_float(m):
    return np.array([[float(x) for x in row] for row in m], dtype=np.float64)


def is_zero(m):
    return bool(all(x == 0 for x in m.flat))


def is_symmetric(m):
    return bool(m.shape[0] == m.shape[1] and (m == m.T).all())


def is_idempotent(m):
    return bool((m @ m == m).all())


def _echelon(m, reverse=False):
    """Row-reduce a copy of ``m`` and return the pivot list.

    Pivots are (original_row, column) pairs.  The scan is deterministic:
    columns left to right and, within a column, the first still-unused row
    with a nonzero entry, both in row-major order (everything reversed
    when ``reverse`` is set, giving an independent second route for the
    invariance tests).
    """
    nrow, ncol = m.shape
    work = [[Fraction(x) for x in row] for row in m]
    free = list(range(nrow))
    if reverse:
        free.reverse()
    cols = range(ncol - 1, -1, -1) if reverse else range(ncol)
    pivots = []
    for c in cols:
        pivot = next((r for r in free if work[r][c] != 0), None)
        if pivot is None:
            continue
        pivots.append((pivot, c))
        free.remove(pivot)
        prow = work[pivot]
        for r in free:
            if work[r][c] != 0:
                f = work[r][c] / prow[c]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
    return pivots


def rank(m):
    if m.size == 0:
        return 0
    return len(_echelon(m))


def inverse(m):
    """Exact inverse of a nonsingular square matrix (Gauss-Jordan)."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if work[r][c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        prow = [x / work[c][c] for x in work[c]]
        work[c] = prow
        for r in range(n):
            if r != c and work[r][c] != 0:
                f = work[r][c]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
    out = zeros(n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = work[i][n + j]
    return out


def g_inverse(m, reverse=False):
    """A generalized inverse G with M G M = M, exact.

    Found from a full-rank submatrix: elimination picks r independent rows
    I and columns J, and G carries (M[I,J])^-1 on the (J, I) positions,
    zero elsewhere.  ``reverse`` flips the pivot scan order, giving a
    second, generally different, g-inverse.
    """
    nrow, ncol = m.shape
    piv = _echelon(m, reverse=reverse)
    g = zeros(ncol, nrow)
    if piv:
        rows = [p[0] for p in piv]
        cols = [p[1] for p in piv]
        sub = rational([[m[r, c] for c in cols] for r in rows])
        inv = inverse(sub)
        for a, c in enumerate(cols):
            for b, r in enumerate(rows):
                g[c, r] = inv[a, b]
    assert (m @ g @ m == m).all()
    return g


def solve_consistent(m, rhs, reverse=False):
    """One exact solution Z of M Z = RHS, with free variables set to zero.

    Raises ArithmeticError when some RHS column is outside the column
    space of M.  For the normal systems solved in this package (M a gram
    matrix, RHS of the form M W) the result equals G @ RHS for some
    generalized inverse G; products P @ Z with the rows of P inside the
    row space of M do not depend on the choice, and ``reverse`` flips the
    elimination order to let tests confirm exactly that.

    Elimination is fraction-free over cleared-denominator integers
    (divisions by the previous pivot are exact), which keeps large exact
    systems fast; the returned Z is verified against M Z = RHS before
    returning.
    """
    nrow, ncol = m.shape
    t = rhs.shape[1]
    if rhs.shape[0] != nrow:
        raise ValueError(f"rhs has {rhs.shape[0]} rows, matrix has {nrow}")
    denom = 1
    for x in list(m.flat) + list(rhs.flat):
        d = Fraction(x).denominator
        denom = denom * d // gcd(denom, d)
    work = []
    for i in range(nrow):
        row = [int(Fraction(m[i, j]) * denom) for j in range(ncol)]
        row += [int(Fraction(rhs[i, j]) * denom) for j in range(t)]
        work.append(row)

    free = list(range(nrow))
    if reverse:
        free.reverse()
    cols = range(ncol - 1, -1, -1) if reverse else range(ncol)
    pivots = []
    prev = 1
    for c in cols:
        pr = next((r for r in free if work[r][c] != 0), None)
        if pr is None:
            continue
        pivots.append((pr, c))
        free.remove(pr)
        p = work[pr][c]
        prow = work[pr]
        for r in free:
            f = work[r][c]
            row = work[r]
            if f:
                work[r] = [(p * a - f * b) // prev for a, b in zip(row, prow)]
            else:
                work[r] = [p * a // prev for a in row]
        prev = p

    for r in free:
        assert all(work[r][c] == 0 for c in range(ncol))
        if any(work[r][ncol + j] != 0 for j in range(t)):
            raise ArithmeticError("system is inconsistent")

    z = zeros(ncol, t)
    solved = []
    for pr, c in reversed(pivots):
        row = work[pr]
        p = row[c]
        for j in range(t):
            acc = Fraction(row[ncol + j])
            for c2 in solved:
                if row[c2]:
                    acc -= row[c2] * z[c2, j]
            z[c, j] = acc / p
        solved.append(c)
    assert (m @ z == rhs).all()
    return z


def projector(m, reverse=False):
    """Orthogonal projector onto the column space, P = M (M'M)^- M'.

    Exact, and invariant to the g-inverse route (checked by tests).  A
    matrix with no columns projects onto {0}.
    """
    n = m.shape[0]
    if m.shape[1] == 0:
        return zeros(n, n)
    g = g_inverse(m.T @ m, reverse=reverse)
    p = m @ g @ m.T
    assert is_symmetric(p) and is_idempotent(p)
    return p


def projector_decompose(u, v):
    """Residual projector P_Z with Z = (I - P_V) U, satisfying
    P_[U V] = P_V + P_Z.  The identity is asserted exactly."""
    n = u.shape[0]
    pv = projector(v)
    z = u - pv @ u
    pz = projector(z)
    whole = projector(np.hstack([u, v]))
    assert (whole == pv + pz).all()
    return pz


def sym_eigenvalues(m, tol=1e-9):
    """Eigenvalues of an exactly-symmetric rational matrix, ascending.

    Computed in floating point; each eigenpair residual is required to
    satisfy |M v - lam v| <= tol * |M| (max-abs norm).
    """
    if not is_symmetric(m):
        raise NotSymmetric("matrix is not exactly symmetric")
    f = to_float(m)
    w, v = np.linalg.eigh(f)
    scale = max(1.0, np.abs(f).max())
    resid = np.abs(f @ v - v * w).max()
    if resid > tol * scale:
        raise ArithmeticError(f"eigen residual {resid} exceeds {tol * scale}")
    return [float(x) for x in w]
