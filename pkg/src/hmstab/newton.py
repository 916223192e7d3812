"""Torus (de)stabilization at a fixed frame and the weighted-multiplicity ratio LP.

At a fixed frame, every nonzero zero-sum alpha has deg_alpha(F) >= 0 iff the
barycenter (d/(N+1), ..., d/(N+1)) lies in the convex hull of the support, and
> 0 iff it lies in the relative interior of a full-dimensional hull.  Both are
decided by one exact LP whose dual (or Farkas ray) is the weight certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import linalg
from .fields import Field
from .poly import HomogeneousPoly, LinearChange, Poly, apply_linear_change, dehomogenize
from .simplex import INFEASIBLE, OPTIMAL, solve_lp, solve_lp_ineq
from .singularity import frame_at, local_equation, is_pure_power, TriState
from .weights import alpha_degree, weighted_multiplicity

STABLE = "stable-in-frame"
STRICT = "strictly-semistable-in-frame"
UNSTABLE = "unstable-in-frame"


@dataclass(frozen=True)
class FrameVerdict:
    status: str
    alpha: tuple[int, ...] | None = None
    degree_value: int | None = None

    @property
    def certificate(self) -> tuple[int, ...] | None:
        return self.alpha


def integral_zero_sum(y: Sequence[Fraction]) -> tuple[int, ...]:
    """Project y onto the zero-sum hyperplane and scale to coprime integers."""
    n = len(y)
    mean = sum(y, Fraction(0)) / n
    a = [Fraction(v) - mean for v in y]
    den = lcm(*(x.denominator for x in a))
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("weight vector projects to zero")
    return tuple(x // g for x in ints)


def torus_verdict(F: HomogeneousPoly) -> FrameVerdict:
    F.require_nonzero()
    support = [list(e) for e in F.support()]
    n, d = F.n_vars, F.degree
    if d == 0:
        raise ValueError("constant forms have no torus verdict")
    bary = [Fraction(d, n)] * n
    # lambda_k = t + mu_k; maximize t subject to sum lambda_k m_k = barycenter
    cols = [[m[i] for m in support] + [sum(m[i] for m in support)] for i in range(n)]
    cost = [0] * len(support) + [-1]
    res = solve_lp(cost, cols, bary)
    if res.status == INFEASIBLE:
        alpha = integral_zero_sum(res.farkas)
        return FrameVerdict(UNSTABLE, alpha, alpha_degree(F, alpha))
    if res.status != OPTIMAL:
        raise RuntimeError(f"barycenter LP ended with status {res.status}")
    if res.value == 0:
        alpha = integral_zero_sum(res.duals)
        return FrameVerdict(STRICT, alpha, alpha_degree(F, alpha))
    null = linalg.nullspace(support, Field(0), n)
    if null:
        alpha = integral_zero_sum(null[0])
        return FrameVerdict(STRICT, alpha, alpha_degree(F, alpha))
    return FrameVerdict(STABLE)


# -- frame search ---------------------------------------------------------------

def aligned_frame(F: HomogeneousPoly, P: Sequence) -> LinearChange | None:
    """Frame at P whose chart coordinate x_0 is the line of a pure-power tangent cone."""
    base = frame_at(P, F.field)
    f = local_equation(F, base)
    if f.constant_term() != 0:
        return None
    delta = f.min_degree()
    cone = f.homogeneous_component(delta)
    if cone.n_vars == 0 or is_pure_power(cone) != TriState.YES:
        return None
    # cone = c * l^delta; its (delta-1)-th derivative in a variable it involves is proportional to l
    j = next(i for i in range(cone.n_vars) if any(e[i] for e in cone.terms))
    lin = cone
    for _ in range(delta - 1):
        lin = lin.diff(j)
    coeffs = [lin.coefficient(tuple(int(k == i) for k in range(cone.n_vars))) for i in range(cone.n_vars)]
    piv = next(i for i, c in enumerate(coeffs) if c != 0)
    n = F.n_vars
    field = F.field
    # chart change x' = A x with row 0 = l; A is the identity with row piv replaced by l, moved to 0
    A = [[field.one if i == k else field.zero for k in range(n - 1)] for i in range(n - 1)]
    A[piv] = list(coeffs)
    order = [piv] + [i for i in range(n - 1) if i != piv]
    A = [A[i] for i in order]
    Ainv = linalg.inverse(A, field)
    big = [[field.zero] * n for _ in range(n)]
    for i in range(n - 1):
        for k in range(n - 1):
            big[i][k] = Ainv[i][k]
    big[n - 1][n - 1] = field.one
    return base.g @ LinearChange(field, big, check=False)


def random_unimodular(field: Field, n: int, rng: random.Random, steps: int | None = None) -> LinearChange:
    """Product of elementary matrices with off-diagonal entries in [-3, 3]."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps or 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = rng.randint(-3, 3)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return LinearChange(field, rows, check=False)


def candidate_frames(
    F: HomogeneousPoly, points: Iterable[Sequence] = (), samples: int = 100, seed: int = 0,
    extra: Iterable[LinearChange] = (),
) -> list[tuple[str, LinearChange]]:
    field, n = F.field, F.n_vars
    out: list[tuple[str, LinearChange]] = [("identity", LinearChange.identity(field, n))]
    out += [("supplied", g) for g in extra]
    for P in points:
        out.append(("point-frame", frame_at(P, field).g))
        g = aligned_frame(F, P)
        if g is not None:
            out.append(("tangent-aligned-frame", g))
    rng = random.Random(seed)
    out += [("random-frame", random_unimodular(field, n, rng)) for _ in range(samples)]
    return out


@dataclass
class FrameSearchResult:
    g: LinearChange
    verdict: FrameVerdict
    source: str


def find_destabilizing_frame(
    F: HomogeneousPoly, points: Iterable[Sequence] = (), samples: int = 100, seed: int = 0,
    mode: str = "unstable", extra: Iterable[LinearChange] = (),
) -> FrameSearchResult | None:
    """First frame whose torus verdict is unstable (``mode="unstable"``) or not stable
    (``mode="nonstable"``; an unstable frame found along the way is preferred)."""
    if mode not in ("unstable", "nonstable"):
        raise ValueError(f"unknown search mode {mode!r}")
    F.require_nonzero()
    strict = None
    for source, g in candidate_frames(F, points, samples, seed, extra):
        v = torus_verdict(apply_linear_change(F, g))
        if v.status == UNSTABLE:
            return FrameSearchResult(g, v, source)
        if v.status == STRICT and strict is None:
            strict = FrameSearchResult(g, v, source)
            if mode == "nonstable":
                # keep looking a little for an unstable frame among the structured candidates
                if source == "random-frame":
                    return strict
    return strict if mode == "nonstable" else None


# -- weighted multiplicity ratio ------------------------------------------------------

@dataclass(frozen=True)
class LeeRatio:
    value: Fraction
    optimal_w: tuple[Fraction, ...]


def lee_ratio(f: Poly) -> LeeRatio:
    """min sum(w) over w >= 0 with m.w >= 1 on the support, i.e. inf sum(w)/mult_w(f)."""
    if f.is_zero():
        raise ValueError("ratio of the zero polynomial")
    if f.constant_term() != 0:
        raise ValueError("polynomial does not vanish at the origin")
    support = [list(e) for e in f.support()]
    n = f.n_vars
    res = solve_lp_ineq([1] * n, support, [1] * len(support))
    if res.status != OPTIMAL:
        raise RuntimeError(f"ratio LP ended with status {res.status}")
    return LeeRatio(res.value, tuple(res.x))


def alpha_from_affine_weights(w: Sequence[Fraction]) -> tuple[int, ...]:
    """Zero-sum integer alpha with alpha_N - alpha_i proportional to w_i."""
    total = sum(w, Fraction(0))
    n1 = len(w) + 1
    a = [total / n1 - x for x in w] + [total / n1]
    return integral_zero_sum(a)


@dataclass
class LeeCertificate:
    g: LinearChange
    ratio: LeeRatio
    alpha: tuple[int, ...]
    degree_value: int
    claim: str


def lee_instability_check(F: HomogeneousPoly, frames: Iterable[LinearChange]) -> LeeCertificate | None:
    """Compare per-frame ratios with (N+1)/d; below gives not-semistable, equal gives not-stable.

    The weights are translated back to alpha and the sign is re-checked with the
    alpha-degree, so the result is an ordinary (g, alpha) certificate.
    """
    F.require_nonzero()
    threshold = Fraction(F.n_vars, F.degree)
    best = None
    for g in frames:
        f = dehomogenize(apply_linear_change(F, g), F.n_vars - 1)
        if f.constant_term() != 0:
            continue
        r = lee_ratio(f)
        if r.value > threshold:
            continue
        alpha = alpha_from_affine_weights(r.optimal_w)
        deg = alpha_degree(apply_linear_change(F, g), alpha)
        claim = "not-semistable" if r.value < threshold else "not-stable"
        if (claim == "not-semistable" and deg >= 0) or deg > 0:
            raise AssertionError("ratio test and alpha-degree disagree")
        cert = LeeCertificate(g, r, alpha, deg, claim)
        if claim == "not-semistable":
            return cert
        best = best or cert
    return best


def newton_lct_upper_bound(f: Poly, w: Sequence) -> Fraction:
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    m = weighted_multiplicity(f, w)
    if m == 0:
        raise ValueError("weighted multiplicity is zero")
    return min(Fraction(1), Fraction(sum(w)) / m)
