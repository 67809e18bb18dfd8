"""Exact integer/rational linear algebra on small dense matrices (lists of rows)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence


def rref(matrix: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q; returns ``(rows, pivot_columns)``."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int) -> List[List[int]]:
    """Primitive integer basis of ``{x : M x = 0}``."""
    rows, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[f]
        basis.append(primitive(vec))
    return basis


def primitive(vec: Sequence) -> List[int]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(v) for v in vec]
    lcm = 1
    for v in fr:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return ints
    return [v // g for v in ints]


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def adjugate(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Integer adjugate, so that ``M @ adj(M) == det(M) * I``."""
    n = len(matrix)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def hermite_lower(columns: Sequence[Sequence[int]]) -> List[List[int]]:
    """Lower-triangular Hermite basis of the lattice spanned by ``columns``.

    ``columns`` must be a full-rank square set of integer column vectors.
    Returns the new basis as a list of columns ``h_0 .. h_{n-1}`` where
    ``h_j`` has zeros above position ``j`` and a positive entry at ``j``.
    Only unimodular column operations are used.
    """
    cols = [list(map(int, c)) for c in columns]
    n = len(cols)
    for row in range(n):
        # gcd-reduce entries cols[row..][row] into column `row`
        while True:
            nz = [j for j in range(row, n) if cols[j][row] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda j: abs(cols[j][row]))
            for j in nz:
                if j != piv:
                    q = cols[j][row] // cols[piv][row]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[piv])]
        nz = [j for j in range(row, n) if cols[j][row] != 0]
        if not nz:
            raise ValueError("matrix is singular")
        j = nz[0]
        cols[row], cols[j] = cols[j], cols[row]
        if cols[row][row] < 0:
            cols[row] = [-a for a in cols[row]]
    return cols
