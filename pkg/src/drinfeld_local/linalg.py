"""Gaussian elimination over any exact field.

Entries only need ``+ - * /`` and truthiness (nonzero test), so the same
routines run over finite fields and over the rational Laurent field.
"""

from __future__ import annotations

from .errors import SingularMatrixError


def _zero_like(x):
    return x - x


def determinant(matrix):
    n = len(matrix)
    if n == 0:
        raise ValueError("determinant of an empty matrix needs an explicit one")
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    det = None
    sign = False
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return _zero_like(m[0][0])
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = not sign
        piv = m[col][col]
        det = piv if det is None else det * piv
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / piv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return -det if sign else det


def solve_linear_system(matrix, rhs):
    """Solve M x = b for square nonsingular M; raises SingularMatrixError."""
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise ValueError("dimension mismatch")
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        piv = m[col][col]
        m[col] = [a / piv for a in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n] for row in m]


def rank(matrix) -> int:
    m = [list(row) for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        piv = m[r][col]
        for i in range(r + 1, rows):
            if m[i][col]:
                f = m[i][col] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def nullspace_mod_p(matrix: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : M x = 0} over F_p for an integer matrix (rows x cols)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [[v % p for v in row] for row in matrix]
    pivots = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [0] * cols
        x[fcol] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-m[i][fcol]) % p
        basis.append(x)
    return basis
