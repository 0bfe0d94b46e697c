"""Exact integer and rational linear algebra.

Matrices are plain nested sequences of Python ints; results come back as
lists of lists.  Rational entries use :class:`fractions.Fraction`, which is
always stored in lowest terms with a positive denominator.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

Matrix = Sequence[Sequence[int]]


class MatrixError(ValueError):
    """Raised for shape errors, singular inverses and similar misuse."""


def as_matrix(M: Matrix) -> list[list[int]]:
    rows = [list(r) for r in M]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise MatrixError("ragged matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise MatrixError(f"non-integer entry {x!r}")
    return rows


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if len(M) else 0)


def _require_square(M: Matrix) -> int:
    n, m = shape(M)
    if n != m and n != 0:
        raise MatrixError(f"expected a square matrix, got {n}x{m}")
    return n


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> list[list]:
    n, m = shape(M)
    return [[M[i][j] for i in range(n)] for j in range(m)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise MatrixError(f"cannot multiply {n}x{k} by {k2}x{m}")
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    n, k = shape(A)
    if k != len(x):
        raise MatrixError(f"cannot apply {n}x{k} matrix to a vector of length {len(x)}")
    return [sum(A[i][t] * x[t] for t in range(k)) for i in range(n)]


def is_symmetric(M: Matrix) -> bool:
    n, m = shape(M)
    return n == m and all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def det_exact(M: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = as_matrix(M)
    n = _require_square(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, in place; returns (rows, pivot columns)."""
    n, m = shape(rows)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(M: Matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in as_matrix(M)]
    return len(_rref(rows)[1])


def inverse_rational(M: Matrix) -> list[list[Fraction]]:
    A = as_matrix(M)
    n = _require_square(A)
    aug = [[Fraction(x) for x in A[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    aug, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise MatrixError("matrix is singular")
    return [row[n:] for row in aug]


def kernel_rational(M: Matrix) -> list[list[Fraction]]:
    """Basis of the rational null space.

    One vector per free column of the reduced row echelon form, each scaled
    so that its last nonzero coordinate is 1.
    """
    A = as_matrix(M)
    _, m = shape(A)
    rows, pivots = _rref([[Fraction(x) for x in r] for r in A])
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        last = next(x for x in reversed(v) if x != 0)
        basis.append([x / last for x in v])
    return basis


def smith_normal_form(M: Matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries and each diagonal entry divides the next.
    """
    D = as_matrix(M)
    n, m = shape(D)
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col_dst += f * col_src
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(n, m)):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, n) for j in range(t, m) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, n):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility on the remaining block
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def snf_diagonal(M: Matrix) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(shape(D)))]


def solve_integral(M: Matrix, b: Sequence[int]) -> Optional[list[int]]:
    """Integer solution of ``M x = b``, or None when none exists."""
    A = as_matrix(M)
    n, m = shape(A)
    if len(b) != n:
        raise MatrixError(f"right-hand side has length {len(b)}, expected {n}")
    D, U, V = smith_normal_form(A)
    c = matvec(U, list(b))
    y = [0] * m
    for i in range(n):
        d = D[i][i] if i < m else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return matvec(V, y)


def is_negative_definite(M: Matrix) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    A = as_matrix(M)
    if not is_symmetric(A):
        raise MatrixError("matrix is not symmetric")
    n = len(A)
    for k in range(1, n + 1):
        minor = det_exact([row[:k] for row in A[:k]])
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def load_matrix(path) -> list[list[int]]:
    """Read a JSON 2-D integer array (row-major)."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise MatrixError(f"{path}: expected a JSON 2-D array")
    return as_matrix(data)
