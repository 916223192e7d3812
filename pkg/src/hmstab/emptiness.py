"""Certified emptiness of projective zero loci via Macaulay matrices mod p.

For homogeneous f_1..f_r in n variables, V(f) is empty in P^{n-1} over the
algebraic closure iff the degree-D part of the ideal is everything, with
D = (sum of the n largest degrees) - n + 1.  We test that by the rank of the
Macaulay matrix over F_p.  For rational input the matrix is the reduction of an
integer matrix, so full rank mod p also proves emptiness over the rationals'
closure; failure to reach full rank mod p is then inconclusive.

The certificates built on top of this give the global bounds that the positive
criteria need: a maximal multiplicity bound, a singular-locus dimension bound,
and the absence of points of top multiplicity whose tangent cone is degenerate.
"""

from __future__ import annotations

import itertools
import random
from math import comb
from typing import Sequence

import numpy as np

from .linalg import rank_mod_p
from .poly import HomogeneousPoly, Poly, monomials, substitute_linear

DEFAULT_PRIME = 32003
MAX_COLUMNS = 2500
MAX_ROWS = 12000


def to_mod_p(F: Poly, p: int) -> Poly:
    """Reduce F to F_p; rational input is first scaled to coprime integer coefficients."""
    if F.field.p == p:
        return F
    if not F.field.is_rational:
        raise ValueError(f"cannot move a polynomial over {F.field!r} to GF({p})")
    return F.clear_denominators().reduce_mod(p)


def macaulay_bound(degrees: Sequence[int], n_vars: int) -> int:
    top = sorted(degrees, reverse=True)[:n_vars]
    return sum(top) - n_vars + 1


def locus_is_empty(polys: Sequence[HomogeneousPoly], n_vars: int, p: int) -> bool | None:
    """Decide V(polys) = empty in P^{n_vars-1} over the closure of F_p.

    ``polys`` must live over GF(p).  Returns None when the Macaulay matrix would
    exceed the size caps.
    """
    eqs = [f for f in polys if not f.is_zero()]
    if any(f.degree == 0 for f in eqs):
        return True
    if n_vars == 0:
        return True
    if len(eqs) < n_vars:
        return False
    D = macaulay_bound([f.degree for f in eqs], n_vars)
    cols = monomials(n_vars, D)
    if len(cols) > MAX_COLUMNS:
        return None
    n_rows = sum(comb(D - f.degree + n_vars - 1, n_vars - 1) for f in eqs)
    if n_rows > MAX_ROWS:
        return None
    index = {m: i for i, m in enumerate(cols)}
    mat = np.zeros((n_rows, len(cols)), dtype=np.int64)
    r = 0
    for f in eqs:
        terms = list(f.terms.items())
        for a in monomials(n_vars, D - f.degree):
            for e, c in terms:
                mat[r, index[tuple(x + y for x, y in zip(a, e))]] = c
            r += 1
    return rank_mod_p(mat, p) == len(cols)


def certify_empty(polys: Sequence[HomogeneousPoly], n_vars: int, p: int) -> bool:
    """True only when emptiness over the algebraic closure of the input field is proven."""
    reduced = [to_mod_p(f, p) for f in polys]
    return locus_is_empty(reduced, n_vars, p) is True


def _working_prime(F: HomogeneousPoly, p: int | None) -> int:
    if F.field.p:
        return F.field.p
    return p or DEFAULT_PRIME


def hasse_derivatives(F: HomogeneousPoly, order: int) -> list[HomogeneousPoly]:
    n = F.n_vars
    out = []
    for combo in itertools.combinations_with_replacement(range(n), order):
        beta = [0] * n
        for i in combo:
            beta[i] += 1
        out.append(F.hasse(beta))
    return out


def multiplicity_equations(F: HomogeneousPoly, m: int) -> list[HomogeneousPoly]:
    """Equations of {P in H : mult_P(H) >= m}.

    In characteristic 0 or above d, Euler's relation makes the order m-1
    derivatives enough; otherwise every order below m is included.
    """
    if m <= 0:
        return []
    char = F.field.p
    if char == 0 or char > F.degree:
        return hasse_derivatives(F, m - 1)
    eqs = []
    for k in range(m):
        eqs.extend(hasse_derivatives(F, k))
    return eqs


def certify_max_multiplicity_at_most(F: HomogeneousPoly, k: int, p: int | None = None) -> bool:
    """Prove that every point of H has multiplicity at most k."""
    if k >= F.degree:
        return True
    p = _working_prime(F, p)
    Fp = to_mod_p(F, p)
    if Fp.is_zero():
        return False
    # over QQ reduce first and then differentiate: the two commute
    eqs = multiplicity_equations(Fp, k + 1)
    if F.field.is_rational and p <= F.degree:
        return False
    return certify_empty(eqs, F.n_vars, p)


def singular_equations(F: HomogeneousPoly) -> list[HomogeneousPoly]:
    eqs = [F.diff(i) for i in range(F.n_vars)]
    char = F.field.p
    if char and F.degree % char == 0:
        eqs.append(F)
    return eqs


def certify_sing_dim_at_most(
    F: HomogeneousPoly, k: int, p: int | None = None, attempts: int = 6, seed: int = 0
) -> bool:
    """Prove dim H_sing <= k by finding a codimension-(k+1) linear slice that misses it.

    Any variety of dimension > k meets every such slice, so one empty slice is a proof.
    """
    n = F.n_vars
    if k < -1:
        raise ValueError(f"dimension bound must be at least -1, got {k}")
    if k >= n - 2:
        return True
    p = _working_prime(F, p)
    Fp = to_mod_p(F, p)
    if Fp.is_zero():
        return False
    if F.field.is_rational and p <= F.degree:
        return False
    eqs = singular_equations(Fp)
    if k < 0:
        return certify_empty(eqs, n, p)
    rng = random.Random(seed)
    target = n - k - 1
    for _ in range(attempts):
        M = [[rng.randrange(p) for _ in range(target)] for _ in range(n)]
        restricted = [substitute_linear(e, M, target) for e in eqs]
        if locus_is_empty(restricted, target, p) is True:
            return True
    return False


def tangent_rank_minors(F: HomogeneousPoly, delta: int, size: int) -> list[HomogeneousPoly] | None:
    """Forms in P whose common zeros (among points of multiplicity >= delta) are the points
    where the order-delta Taylor form T_P has a partial-derivative space of rank < size.

    T_P(y) = sum_{|b|=delta} (D^b F)(P) y^b; the coefficient of y^c in dT_P/dy_j is
    (c_j + 1) (D^{c+e_j} F)(P).  Returns None if there would be too many minors.
    """
    n = F.n_vars
    field = F.field
    cols = monomials(n, delta - 1)
    if size <= 0:
        return [HomogeneousPoly(field, n, 0, {(0,) * n: 1})]
    if size > min(n, len(cols)):
        # the rank can never reach ``size``: the condition holds everywhere
        return []
    hasse_cache: dict[tuple, HomogeneousPoly] = {}

    def entry(j: int, c: tuple) -> HomogeneousPoly:
        b = list(c)
        b[j] += 1
        b = tuple(b)
        if b not in hasse_cache:
            hasse_cache[b] = F.hasse(b)
        return hasse_cache[b].scale(c[j] + 1)

    M = [[entry(j, c) for c in cols] for j in range(n)]
    n_minors = comb(n, size) * comb(len(cols), size)
    if n_minors > 2000:
        return None
    out = []
    for rows in itertools.combinations(range(n), size):
        for cs in itertools.combinations(range(len(cols)), size):
            det = _poly_det([[M[r][c] for c in cs] for r in rows])
            if not det.is_zero():
                out.append(HomogeneousPoly.from_poly(det, size * (F.degree - delta)))
    return out


def _poly_det(m: list[list[Poly]]) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] - m[0][0]
    return total


def certify_no_degenerate_cone(F: HomogeneousPoly, delta: int, kind: str, p: int | None = None) -> bool:
    """Prove no point of multiplicity >= delta has a degenerate tangent cone.

    ``kind`` is "cone" (tangent cone is a cone over a hypersurface of a hyperplane:
    partial rank < N) or "pure_power" (c * l^delta: partial rank <= 1).  The
    derivative rank test needs characteristic 0 or above delta.
    """
    if kind not in ("cone", "pure_power"):
        raise ValueError(f"unknown degeneracy kind {kind!r}")
    p = _working_prime(F, p)
    if p <= delta:
        return False
    if F.field.is_rational and p <= F.degree:
        return False
    Fp = to_mod_p(F, p)
    if Fp.is_zero():
        return False
    size = F.n_vars - 1 if kind == "cone" else 2
    minors = tangent_rank_minors(Fp, delta, size)
    if minors is None:
        return False
    eqs = multiplicity_equations(Fp, delta) + minors
    return certify_empty(eqs, F.n_vars, p)
