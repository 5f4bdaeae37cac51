"""Exact linear algebra over a field (RatQ) and fraction-free ranks over rings.

Matrices are lists of rows; rows are lists of coefficients.  Pivoting is
deterministic (first nonzero in column order) so reduced forms, kernels and
solutions are reproducible.
"""

from __future__ import annotations

from .scalars import RATQ_ONE, RATQ_ZERO


def rref(matrix):
    """Reduced row echelon form in place; returns the pivot column list."""
    if not matrix:
        return []
    rows, cols = len(matrix), len(matrix[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for r2 in range(r, rows):
            if matrix[r2][c]:
                piv = r2
                break
        if piv is None:
            continue
        matrix[r], matrix[piv] = matrix[piv], matrix[r]
        inv = matrix[r][c].inv()
        matrix[r] = [x * inv for x in matrix[r]]
        for r2 in range(rows):
            if r2 == r:
                continue
            f = matrix[r2][c]
            if f:
                row2, row1 = matrix[r2], matrix[r]
                matrix[r2] = [a - f * b for a, b in zip(row2, row1)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(matrix):
    return len(rref([row[:] for row in matrix]))


def kernel_basis(matrix, ncols):
    """Basis of the right kernel; deterministic, pivot variables eliminated."""
    m = [row[:] for row in matrix]
    pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for fc in free:
        vec = [RATQ_ZERO] * ncols
        vec[fc] = RATQ_ONE
        for r, pc in enumerate(pivots):
            v = m[r][fc]
            if v:
                vec[pc] = -v
        out.append(vec)
    return out


def solve(matrix, rhs):
    """One solution of matrix * x = rhs, or None if inconsistent."""
    if not matrix:
        return None if any(rhs) else []
    cols = len(matrix[0])
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    pivots = rref(aug)
    if cols in pivots:
        return None
    x = [RATQ_ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][cols]
    return x


def invert(matrix):
    """Inverse of a square matrix, or None if singular."""
    n = len(matrix)
    aug = [row[:] + [RATQ_ONE if i == j else RATQ_ZERO for j in range(n)]
           for i, row in enumerate(matrix)]
    pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in aug]


def bareiss_rank(matrix):
    """Rank over the fraction field of an integral domain.

    Entries need ring ops plus exact division (divexact); used for matrices
    over polynomial rings with adjoined symbols."""
    m = [row[:] for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    prev = None
    r = 0
    for c in range(cols):
        piv = None
        for r2 in range(r, rows):
            if m[r2][c]:
                piv = r2
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for r2 in range(r + 1, rows):
            for c2 in range(cols):
                if c2 == c:
                    continue
                val = m[r][c] * m[r2][c2] - m[r2][c] * m[r][c2]
                m[r2][c2] = val.divexact(prev) if prev is not None else val
            m[r2][c] = m[r2][c].zero()
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r
