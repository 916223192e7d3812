"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from hmstab.fields import Field
from hmstab.poly import HomogeneousPoly, LinearChange, Poly, monomials

FIELDS = [Field(0), Field(5), Field(7)]

small_ints = st.integers(-4, 4)
coefficients = st.one_of(small_ints, st.fractions(min_value=-3, max_value=3, max_denominator=4))


@st.composite
def forms(draw, field=None, n_vars=None, degree=None, max_terms=6, nonzero=True):
    K = field if field is not None else draw(st.sampled_from(FIELDS))
    n = n_vars if n_vars is not None else draw(st.integers(2, 4))
    d = degree if degree is not None else draw(st.integers(1, 4))
    mons = monomials(n, d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    terms = {m: K(draw(coefficients if K.p == 0 else small_ints)) for m in chosen}
    F = HomogeneousPoly(K, n, d, terms)
    if nonzero and F.is_zero():
        F = HomogeneousPoly(K, n, d, {chosen[0]: K(1)})
    return F


@st.composite
def affine_polys(draw, field=None, n_vars=None, max_degree=4, max_terms=6):
    K = field if field is not None else draw(st.sampled_from(FIELDS))
    n = n_vars if n_vars is not None else draw(st.integers(1, 3))
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(n)])
    chosen = draw(st.lists(exps, min_size=1, max_size=max_terms, unique=True))
    return Poly(K, n, {e: K(draw(small_ints)) for e in chosen})


@st.composite
def linear_changes(draw, field, n):
    """L * D * U with unit triangular L, U and nonzero diagonal D; shrinks to the identity."""
    off = st.integers(-2, 2)
    L = [[1 if i == j else (draw(off) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (draw(off) if j > i else 0) for j in range(n)] for i in range(n)]
    D = [draw(st.sampled_from([1, -1, 2, 3])) for _ in range(n)]
    rows = [[sum(L[i][k] * D[k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return LinearChange(field, [[field(x) for x in r] for r in rows])


@st.composite
def weight_vectors(draw, n, sorted_=False, bound=5):
    """Nonzero zero-sum integer vectors; the all-zero draw becomes (-1, 0, ..., 0, 1)."""
    a = draw(st.lists(st.integers(-bound, bound), min_size=n - 1, max_size=n - 1))
    a.append(-sum(a))
    if not any(a):
        a[0], a[-1] = -1, 1
    return tuple(sorted(a)) if sorted_ else tuple(a)
