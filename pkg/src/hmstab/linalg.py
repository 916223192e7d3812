"""Exact dense linear algebra over a ``Field`` plus a numpy rank routine mod p."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .fields import Field, Scalar


def _echelon(rows: Sequence[Sequence[Scalar]], field: Field):
    """Reduced row echelon form.  Returns (matrix, pivot columns, row swaps parity)."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            swaps += 1
        inv = field.inv(m[r][c])
        m[r] = [field.norm(x * inv) for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def rank(rows: Sequence[Sequence[Scalar]], field: Field) -> int:
    if not rows:
        return 0
    return len(_echelon(rows, field)[1])


def det(rows: Sequence[Sequence[Scalar]], field: Field) -> Scalar:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in rows]
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = field.norm(-result)
        result = field.norm(result * m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = field.norm(m[i][c] * inv)
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[c])]
    return result


def inverse(rows: Sequence[Sequence[Scalar]], field: Field) -> list[list[Scalar]]:
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(rows)]
    m, pivots, _ = _echelon(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def nullspace(rows: Sequence[Sequence[Scalar]], field: Field, n_cols: int | None = None) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}."""
    if n_cols is None:
        n_cols = len(rows[0])
    if not rows:
        return [[field.one if i == j else field.zero for i in range(n_cols)] for j in range(n_cols)]
    m, pivots, _ = _echelon(rows, field)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n_cols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.norm(-m[r][f])
        basis.append(v)
    return basis


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], field: Field) -> list[list[Scalar]]:
    cols = list(zip(*b))
    return [[field.norm(sum(x * y for x, y in zip(row, col))) for col in cols] for row in a]


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p (entries reduced in place on a copy).

    Products stay below 2^62 because entries are kept in ``range(p)`` with p < 2^31.
    """
    a = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            f = a[below, c][:, None]
            a[below] = (a[below] - f * a[r][None, :]) % p
        r += 1
    return r
