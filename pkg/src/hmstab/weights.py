"""Weights of diagonal one-parameter subgroups and of affine monomials.

``alpha_degree`` is the max of alpha.m over the support; ``weighted_multiplicity``
is the min of w.m.  The lower bounds on alpha-degrees at a point of given
multiplicity and the identity relating both weight languages live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import HomogeneousPoly, LinearChange, Poly, apply_linear_change, dehomogenize


def check_weight_vector(alpha: Sequence[int], n_vars: int | None = None, sorted_required: bool = False) -> tuple:
    alpha = tuple(alpha)
    if n_vars is not None and len(alpha) != n_vars:
        raise ValueError(f"weight vector has {len(alpha)} entries, expected {n_vars}")
    if sum(alpha) != 0:
        raise ValueError(f"weights must sum to zero, got {sum(alpha)}")
    if not any(alpha):
        raise ValueError("weight vector must be nonzero")
    if sorted_required and list(alpha) != sorted(alpha):
        raise ValueError(f"weights must be sorted nondecreasingly, got {list(alpha)}")
    return alpha


def alpha_degree(F: HomogeneousPoly, alpha: Sequence) -> Fraction | int:
    F.require_nonzero()
    if len(alpha) != F.n_vars:
        raise ValueError(f"weight vector has {len(alpha)} entries, expected {F.n_vars}")
    return max(sum(a * m for a, m in zip(alpha, e)) for e in F.terms)


def weighted_multiplicity(f: Poly, w: Sequence) -> Fraction | int:
    if f.is_zero():
        raise ValueError("weighted multiplicity of the zero polynomial")
    if len(w) != f.n_vars:
        raise ValueError(f"weight vector has {len(w)} entries, expected {f.n_vars}")
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    return min(sum(a * m for a, m in zip(w, e)) for e in f.terms)


@dataclass(frozen=True)
class Prop23Bounds:
    """Right-hand sides of the four lower bounds for deg_alpha(F o g) at P = g([0:...:0:1]).

    part1 holds for any point; part2 when P has multiplicity delta_P; part3 when
    additionally the tangent cone is not c*l^delta_P; part4 when it is not a cone
    over a hyperplane hypersurface.  part3/part4 are None for N < 2.
    """

    part1: Fraction
    part2: Fraction
    part3: Fraction | None
    part4: Fraction | None

    def get(self, part: int) -> Fraction:
        value = (self.part1, self.part2, self.part3, self.part4)[part - 1]
        if value is None:
            raise ValueError(f"bound {part} needs N >= 2")
        return value


def prop23_bounds(alpha: Sequence, d: int, delta_P: int, N: int) -> Prop23Bounds:
    a = tuple(alpha)
    if len(a) != N + 1:
        raise ValueError(f"weight vector has {len(a)} entries, expected {N + 1}")
    check_weight_vector(a, sorted_required=True)
    b1 = d * a[N]
    b2 = (d - 2 * delta_P) * a[N] - delta_P * sum(a[1:N])
    if N < 2:
        return Prop23Bounds(b1, b2, None, None)
    b3 = (d - 2 * delta_P + 1) * a[N] - (delta_P - 2) * a[1] - (delta_P - 1) * sum(a[2:N])
    b4 = (d - 2 * delta_P + 1) * a[N] - (delta_P - 1) * sum(a[1:N - 1]) - (delta_P - 2) * a[N - 1]
    return Prop23Bounds(b1, b2, b3, b4)


def affine_weights_from_alpha(alpha: Sequence) -> tuple:
    """w_i = alpha_N - alpha_i for i < N."""
    return tuple(alpha[-1] - x for x in alpha[:-1])


def hm_lee_bridge(F: HomogeneousPoly, g: LinearChange, alpha: Sequence) -> tuple:
    """Both sides of deg_alpha(F o g) = d/(N+1) * sum(w) - mult_w(f), f the chart at g([0:..:1])."""
    a = check_weight_vector(alpha, F.n_vars, sorted_required=True)
    G = apply_linear_change(F, g)
    lhs = alpha_degree(G, a)
    w = affine_weights_from_alpha(a)
    f = dehomogenize(G, F.n_vars - 1)
    rhs = Fraction(F.degree, F.n_vars) * sum(w) - weighted_multiplicity(f, w)
    return lhs, rhs
