"""Singular-locus lower bounds from small alpha-degrees.

If deg_alpha(F o g) < alpha_u + (d-1) alpha_v with u + v + s = N, then after the
frame change the subscheme Z = {X_0 = .. = X_{v-1} = P_0 = .. = P_{u-1} = 0}
(P_i from the tail decomposition) lies in the singular locus, so
dim(H_sing cap {X_0 = .. = X_{v-1} = 0}) >= s.  The helpers below evaluate the
hypothesis, the monomial divisibility step, build Z, and check the containment
over F_p.  When the hypothesis fails they still run and mark results as raw.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .emptiness import to_mod_p
from .fields import Field
from .poly import HomogeneousPoly, LinearChange, apply_linear_change, tail_decomposition
from .singularity import DEFAULT_BUDGET, zero_set_over_Fp, evaluate_mod_p
from .weights import alpha_degree, check_weight_vector


def _prepare(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int]) -> tuple[HomogeneousPoly, tuple]:
    F.require_nonzero()
    a = check_weight_vector(alpha, F.n_vars, sorted_required=True)
    G = F if g is None else apply_linear_change(F, g)
    return G, a


def _check_split(N: int, u: int, v: int) -> None:
    if u < 0 or v < 0:
        raise ValueError("u and v must be nonnegative")
    if u + v > N:
        raise ValueError(f"u + v = {u + v} exceeds N = {N}")


def benoist_hypothesis(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int], u: int, v: int) -> bool:
    G, a = _prepare(F, g, alpha)
    _check_split(F.n_vars - 1, u, v)
    return alpha_degree(G, a) < a[u] + (F.degree - 1) * a[v]


def divisibility_lemma_check(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int], u: int, v: int) -> bool:
    """Every monomial of P_i, i >= u, is divisible by some X_j with j < v."""
    G, _ = _prepare(F, g, alpha)
    _check_split(F.n_vars - 1, u, v)
    parts = tail_decomposition(G)
    return all(any(e[j] for j in range(v)) for P in parts[u:] for e in P.terms)


@dataclass(frozen=True)
class ZScheme:
    n_vars: int
    linear_vars: tuple[int, ...]
    poly_eqs: tuple[HomogeneousPoly, ...]
    alpha: tuple[int, ...]
    u: int
    v: int
    swapped: bool
    guaranteed: bool

    @property
    def s(self) -> int:
        return self.n_vars - 1 - self.u - self.v

    def linear_forms(self, field: Field) -> list[HomogeneousPoly]:
        return [HomogeneousPoly.monomial(field, tuple(int(i == j) for i in range(self.n_vars))) for j in self.linear_vars]

    def to_json(self) -> dict:
        return {
            "linear_eqs": [f"X{j}" for j in self.linear_vars],
            "poly_eqs": [str(P) for P in self.poly_eqs],
            "alpha": list(self.alpha),
            "u": self.u,
            "v": self.v,
            "s": self.s,
            "swapped": self.swapped,
            "label": "guaranteed" if self.guaranteed else "raw",
        }


def build_Z(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int], u: int, v: int) -> ZScheme:
    """Z for (u, v); when u > v the pair is swapped first so that u <= v."""
    G, a = _prepare(F, g, alpha)
    _check_split(F.n_vars - 1, u, v)
    hyp = alpha_degree(G, a) < a[u] + (F.degree - 1) * a[v]
    swapped = u > v
    if swapped:
        u, v = v, u
    parts = tail_decomposition(G)
    return ZScheme(F.n_vars, tuple(range(v)), tuple(parts[:u]), a, u, v, swapped, hyp)


def _transformed_mod_p(F: HomogeneousPoly, g: LinearChange | None, p: int) -> HomogeneousPoly:
    G = F if g is None else apply_linear_change(F, g)
    if G.field.p not in (0, p):
        raise ValueError(f"polynomial over {G.field!r} cannot be checked mod {p}")
    Gp = to_mod_p(G, p)
    if Gp.is_zero():
        raise ValueError(f"reduction mod {p} is zero")
    return Gp


def z_points_over_Fp(Z: ZScheme, p: int, budget: int = DEFAULT_BUDGET):
    eqs = Z.linear_forms(Field(p)) + [to_mod_p(P, p) for P in Z.poly_eqs]
    return zero_set_over_Fp(eqs, Z.n_vars, p, budget)


def verify_Z_in_sing(F: HomogeneousPoly, g: LinearChange | None, Z: ZScheme, p: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Every F_p-point of Z is a singular point of F o g (vacuous when Z has none)."""
    Gp = _transformed_mod_p(F, g, p)
    pts = z_points_over_Fp(Z, p, budget)
    if pts.shape[0] == 0:
        return True
    for e in [Gp] + [Gp.diff(i) for i in range(Gp.n_vars)]:
        if (evaluate_mod_p(e, pts, p) != 0).any():
            return False
    return True


def cor32_check(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int], s: int | None) -> bool:
    """deg_alpha(F o g) >= alpha_u + (d-1) alpha_v for every u + v = N - s - 1."""
    if s is None:
        raise ValueError("the singular locus dimension must be known")
    G, a = _prepare(F, g, alpha)
    N = F.n_vars - 1
    if not -1 <= s <= N - 1:
        raise ValueError(f"s = {s} outside [-1, {N - 1}]")
    deg = alpha_degree(G, a)
    total = N - s - 1
    return all(deg >= a[u] + (F.degree - 1) * a[total - u] for u in range(total + 1))


def cor33_check(F: HomogeneousPoly, g: LinearChange | None, alpha: Sequence[int], s: int | None) -> bool:
    """(N-s-2)/d * deg_alpha(F o g) >= alpha_1 + ... + alpha_{N-s-2}."""
    if s is None:
        raise ValueError("the singular locus dimension must be known")
    G, a = _prepare(F, g, alpha)
    N = F.n_vars - 1
    if s > N - 2:
        raise ValueError(f"needs s <= N - 2, got s = {s}")
    if s < -1:
        raise ValueError(f"s = {s} below -1")
    k = N - s - 2
    return Fraction(k, F.degree) * alpha_degree(G, a) >= sum(a[1:k + 1])
