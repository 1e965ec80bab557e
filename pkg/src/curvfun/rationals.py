"""Small exact linear algebra over :class:`fractions.Fraction`.

numpy's solvers are floating point only, and the identities checked on the
discrete side (determinants of counting matrices, Green-function sums) as
well as the exact curvature paths are *exact* statements, so the few
routines needed are written directly over rationals.  Sizes here are tiny
(a few hundred at most), plain Gaussian elimination is plenty.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["exact_det", "exact_solve", "exact_inv"]


def _to_rows(A):
    return [[Fraction(x) for x in row] for row in A]


def exact_det(A):
    """Determinant of a square rational matrix, exact.

    Uses the Bareiss fraction-free scheme when all entries are integers
    (keeps intermediates integral), plain fraction elimination otherwise.
    """
    rows = list(A)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for row in rows for x in row):
        m = [[int(x) for x in row] for row in rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1])
    m = _to_rows(rows)
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        det *= m[k][k]
        inv = Fraction(1) / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
    return det


def exact_solve(A, b):
    """Solve ``A x = b`` over Fractions.  Raises ZeroDivisionError-free
    ``ValueError`` if ``A`` is singular."""
    m = _to_rows(A)
    n = len(m)
    x = [Fraction(v) for v in b]
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            x[k], x[pivot_row] = x[pivot_row], x[k]
        inv = Fraction(1) / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
                x[i] -= factor * x[k]
    for k in range(n - 1, -1, -1):
        s = x[k] - sum(m[k][j] * x[j] for j in range(k + 1, n))
        x[k] = s / m[k][k]
    return x


def exact_inv(A):
    """Inverse of a square rational matrix as nested lists of Fractions."""
    n = len(list(A))
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(exact_solve(A, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]
