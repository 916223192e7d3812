"""Exact two-phase simplex over the rationals (Dantzig pricing, Bland's rule against cycling).

Problems are in equality form: minimize c.x subject to A x = b, x >= 0.
Besides a primal optimum the solver returns dual values (and a Farkas ray on
infeasibility), which the Newton-polytope code turns into weight certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    duals: list[Fraction] | None = None
    # y with y.A <= 0 and y.b > 0 when infeasible
    farkas: list[Fraction] | None = None


class _Tableau:
    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        m, n = len(A), len(A[0]) if A else 0
        self.m, self.n = m, n
        self.rows = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
        self.basis = [n + i for i in range(m)]
        self.obj: list[Fraction] = []

    def set_costs(self, costs: list[Fraction]) -> None:
        """costs has one entry per column (original + artificial)."""
        obj = list(costs) + [Fraction(0)]
        for i, bv in enumerate(self.basis):
            cb = costs[bv]
            if cb:
                obj = [o - cb * r for o, r in zip(obj, self.rows[i])]
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv if x else x for x in row]
        self.rows[r] = row
        nz = [j for j, x in enumerate(row) if x]
        for i in range(self.m):
            if i != r:
                f = self.rows[i][c]
                if f:
                    target = self.rows[i]
                    for j in nz:
                        target[j] -= f * row[j]
        f = self.obj[c]
        if f:
            for j in nz:
                self.obj[j] -= f * row[j]
        self.basis[r] = c

    def run(self, allowed: int) -> bool:
        """Minimize; only columns < allowed may enter.  False if unbounded.

        Entering column by most negative reduced cost, switching to Bland's
        smallest-index rule for good after a run of degenerate pivots, which
        rules out cycling.
        """
        degenerate = 0
        while True:
            if degenerate >= 2 * (self.m + 1):
                c = next((j for j in range(allowed) if self.obj[j] < 0), None)
            else:
                c = min((j for j in range(allowed) if self.obj[j] < 0), key=lambda j: self.obj[j], default=None)
            if c is None:
                return True
            best = None
            for i in range(self.m):
                a = self.rows[i][c]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            if best[0][0] == 0:
                degenerate += 1
            elif degenerate < 2 * (self.m + 1):
                degenerate = 0
            self.pivot(best[1], c)

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * (self.n + self.m)
        for i, bv in enumerate(self.basis):
            x[bv] = self.rows[i][-1]
        return x

    def duals(self, costs_art: Sequence[Fraction]) -> list[Fraction]:
        # reduced cost of artificial k is cost_k - y_k
        return [costs_art[k] - self.obj[self.n + k] for k in range(self.m)]


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize c.x subject to A x = b, x >= 0 (exact)."""
    m = len(A)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    if any(len(row) != n for row in A):
        raise ValueError("constraint matrix does not match the cost vector")
    if m == 0:
        if any(x < 0 for x in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, [Fraction(0)] * n, Fraction(0), [])
    signs = [(-1 if bi < 0 else 1) for bi in b]
    A = [[s * x for x in row] for s, row in zip(signs, A)]
    b = [s * x for s, x in zip(signs, b)]

    t = _Tableau(A, b)
    ones = [Fraction(1)] * m
    t.set_costs([Fraction(0)] * n + ones)
    t.run(n + m)
    phase1 = -t.obj[-1]
    if phase1 > 0:
        y = t.duals(ones)
        return LPResult(INFEASIBLE, farkas=[s * v for s, v in zip(signs, y)])
    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if t.basis[i] >= n:
            j = next((j for j in range(n) if t.rows[i][j] != 0), None)
            if j is not None:
                t.pivot(i, j)
    zeros = [Fraction(0)] * m
    t.set_costs(c + zeros)
    if not t.run(n):
        return LPResult(UNBOUNDED)
    x = t.solution()[:n]
    y = t.duals(zeros)
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value, [s * v for s, v in zip(signs, y)])


def solve_lp_ineq(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence) -> LPResult:
    """Minimize c.x subject to A_ub x >= b_ub, x >= 0, via surplus variables.

    Duals returned are for the >= rows (nonnegative at an optimum).
    """
    m = len(A_ub)
    rows = [list(row) + [-1 if k == i else 0 for k in range(m)] for i, row in enumerate(A_ub)]
    res = solve_lp(list(c) + [0] * m, rows, b_ub)
    if res.x is not None:
        res.x = res.x[: len(c)]
    return res
