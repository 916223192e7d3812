"""Local invariants at points (multiplicity, tangent cone, cone shape) and
global estimates of the singular locus dimension from finite-field counts.
"""

from __future__ import annotations

import enum
import itertools
import random
import re
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from . import linalg
from .emptiness import certify_sing_dim_at_most, singular_equations, to_mod_p
from .fields import Field, Scalar
from .poly import HomogeneousPoly, LinearChange, Poly, apply_linear_change, dehomogenize

DEFAULT_BUDGET = 2_000_000


class TriState(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


class BudgetExceeded(RuntimeError):
    pass


Point = tuple


# -- points -------------------------------------------------------------------

def parse_point(text: str, field: Field) -> Point:
    s = text.strip()
    if not re.fullmatch(r"\[[^\[\]]*\]", s):
        raise ValueError(f"point {text!r} must look like [a0:a1:...]")
    coords = tuple(field(c) for c in s[1:-1].split(":"))
    if all(c == 0 for c in coords):
        raise ValueError("the zero vector is not a projective point")
    return coords


def normalize_point(P: Sequence[Scalar], field: Field) -> Point:
    """Canonical representative: first nonzero coordinate 1 over F_p, primitive integers
    with positive leading entry over QQ."""
    if all(c == 0 for c in P):
        raise ValueError("the zero vector is not a projective point")
    if field.p:
        lead = next(c for c in P if c % field.p)
        inv = field.inv(lead)
        return tuple(field.norm(c * inv) for c in P)
    fr = [Fraction(c) for c in P]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    lead = next(c for c in ints if c)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * c // g) for c in ints)


def format_point(P: Sequence[Scalar]) -> str:
    return "[" + ":".join(str(c) for c in P) + "]"


# -- frames -------------------------------------------------------------------

@dataclass(frozen=True)
class PointedFrame:
    point: Point
    g: LinearChange


def frame_at(P: Sequence, field: Field) -> PointedFrame:
    """Invertible g with g([0:...:0:1]) = P.

    Start from the identity, put P in the last column, and if P's first nonzero
    coordinate k is not the last one, move e_N into column k.  det g = +-P_k.
    """
    P = tuple(field(c) for c in P)
    n = len(P)
    if all(c == 0 for c in P):
        raise ValueError("the zero vector is not a projective point")
    k = next(i for i, c in enumerate(P) if c != 0)
    rows = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][n - 1] = P[i]
    if k != n - 1:
        for i in range(n):
            rows[i][k] = field.one if i == n - 1 else field.zero
    return PointedFrame(P, LinearChange(field, rows))


# -- tangent cones ------------------------------------------------------------

def _partials_rank(h: Poly) -> int:
    if h.min_degree() != h.total_degree():
        raise ValueError("tangent cone polynomial must be homogeneous")
    parts = [h.diff(i) for i in range(h.n_vars)]
    mons = sorted({e for q in parts for e in q.terms})
    if not mons:
        return 0
    rows = [[q.coefficient(m) for m in mons] for q in parts]
    return linalg.rank(rows, h.field)


def _check_cone_input(h: Poly) -> int:
    if h.is_zero():
        raise ValueError("tangent cone polynomial is zero")
    if not h.is_homogeneous():
        raise ValueError("tangent cone polynomial must be homogeneous")
    deg = h.total_degree()
    if deg < 1:
        raise ValueError("tangent cone polynomial must have positive degree")
    return deg


def is_pure_power(h: Poly) -> TriState:
    """Whether h = c * l^delta for a linear form l (over the algebraic closure)."""
    deg = _check_cone_input(h)
    char = h.field.p
    if char and char <= deg:
        return TriState.UNKNOWN
    return TriState.YES if _partials_rank(h) == 1 else TriState.NO


def is_cone(h: Poly) -> TriState:
    """Whether a linear change makes h independent of one of its variables."""
    deg = _check_cone_input(h)
    if h.n_vars < 2:
        raise ValueError("cone test needs at least two variables")
    if h.n_vars == 2:
        return is_pure_power(h)
    char = h.field.p
    if char and char <= deg:
        return TriState.UNKNOWN
    return TriState.YES if _partials_rank(h) < h.n_vars else TriState.NO


@dataclass(frozen=True)
class TangentConeInfo:
    delta_P: int
    cone_poly: Poly | None
    is_pure_power: TriState | None
    is_cone: TriState | None

    def to_json(self) -> dict:
        return {
            "delta_P": self.delta_P,
            "cone": None if self.cone_poly is None else self.cone_poly.to_string("x"),
            "is_pure_power": None if self.is_pure_power is None else str(self.is_pure_power),
            "is_cone": None if self.is_cone is None else str(self.is_cone),
        }


def local_equation(F: HomogeneousPoly, frame: PointedFrame) -> Poly:
    return dehomogenize(apply_linear_change(F, frame.g), F.n_vars - 1)


def multiplicity_and_cone(F: HomogeneousPoly, frame: PointedFrame) -> TangentConeInfo:
    F.require_nonzero()
    f = local_equation(F, frame)
    if f.constant_term() != 0:
        return TangentConeInfo(0, None, None, None)
    delta = f.min_degree()
    cone = f.homogeneous_component(delta)
    pure = is_pure_power(cone)
    coneflag = is_cone(cone) if cone.n_vars >= 2 else None
    return TangentConeInfo(delta, cone, pure, coneflag)


def multiplicity_at(F: HomogeneousPoly, P: Sequence) -> int:
    return multiplicity_and_cone(F, frame_at(P, F.field)).delta_P


# -- finite field enumeration ---------------------------------------------------

def projective_point_count(n_vars: int, p: int) -> int:
    return (p**n_vars - 1) // (p - 1)


def projective_points(n_vars: int, p: int) -> np.ndarray:
    """All normalized points of P^{n_vars-1}(F_p) as rows (first nonzero coordinate 1)."""
    blocks = []
    for k in range(n_vars):
        free = n_vars - 1 - k
        idx = np.arange(p**free, dtype=np.int64)
        block = np.zeros((idx.size, n_vars), dtype=np.int64)
        block[:, k] = 1
        for j in range(free):
            block[:, n_vars - 1 - j] = (idx // p**j) % p
        blocks.append(block)
    return np.concatenate(blocks)


def evaluate_mod_p(f: Poly, pts: np.ndarray, p: int) -> np.ndarray:
    """Values of f at each row of ``pts`` over F_p."""
    out = np.zeros(pts.shape[0], dtype=np.int64)
    if f.is_zero():
        return out
    max_deg = max(max(e) for e in f.terms)
    powers = [[np.ones(pts.shape[0], dtype=np.int64)] for _ in range(f.n_vars)]
    for i in range(f.n_vars):
        for _ in range(max_deg):
            powers[i].append(powers[i][-1] * pts[:, i] % p)
    for e, c in f.terms.items():
        term = np.full(pts.shape[0], int(c) % p, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                term = term * powers[i][k] % p
        out = (out + term) % p
    return out


def zero_set_over_Fp(polys: Sequence[Poly], n_vars: int, p: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Normalized F_p-points where every polynomial in ``polys`` vanishes."""
    total = projective_point_count(n_vars, p)
    if total > budget:
        raise BudgetExceeded(f"{total} points of P^{n_vars - 1}(F_{p}) exceed the budget {budget}")
    pts = projective_points(n_vars, p)
    for f in polys:
        if pts.shape[0] == 0:
            break
        pts = pts[evaluate_mod_p(f, pts, p) == 0]
    return pts


def _require_fp(F: HomogeneousPoly) -> int:
    if not F.field.p:
        raise ValueError("finite field enumeration needs a polynomial over F_p")
    return F.field.p


def singular_points_array(F: HomogeneousPoly, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    p = _require_fp(F)
    F.require_nonzero()
    eqs = [F] + [F.diff(i) for i in range(F.n_vars)]
    return zero_set_over_Fp(eqs, F.n_vars, p, budget)


def singular_points_over_Fp(F: HomogeneousPoly, budget: int = DEFAULT_BUDGET) -> list[tuple[Point, int]]:
    """F_p-points of the singular locus, each with its multiplicity."""
    pts = singular_points_array(F, budget)
    out = []
    for row in pts:
        P = tuple(int(x) for x in row)
        out.append((P, multiplicity_at(F, P)))
    return out


# -- dimension estimates --------------------------------------------------------

def dim_from_count(count: int, p: int) -> int:
    """Largest k with p^k <= count, or -1 for an empty set."""
    if count <= 0:
        return -1
    k = 0
    while p ** (k + 1) <= count:
        k += 1
    return k


def _good_reduction(F: HomogeneousPoly, p: int) -> HomogeneousPoly | None:
    try:
        Fp = to_mod_p(F, p)
    except ZeroDivisionError:
        return None
    if len(Fp) != len(F):
        return None
    return Fp


def _reductions(F: HomogeneousPoly, primes: Sequence[int]) -> list[HomogeneousPoly]:
    if F.field.p:
        return [F]
    reds = [r for r in (_good_reduction(F, p) for p in primes) if r is not None]
    if not reds:
        raise ValueError(f"no prime of good reduction among {list(primes)}")
    return reds


def _combine(estimates: list[int]) -> tuple[int, str]:
    counts = Counter(estimates)
    best = max(counts.values())
    value = max(v for v, c in counts.items() if c == best)
    return value, ("high" if len(counts) == 1 else "low")


def estimate_sing_dim(
    F: HomogeneousPoly, primes: Sequence[int] = (5, 7, 11), budget: int = DEFAULT_BUDGET
) -> tuple[int, str]:
    """Heuristic dim H_sing from F_p point counts (growth like p^s).

    Over F_p the count on the field itself is capped by the certified slice bound;
    confidence is ``high`` when count and certified bound agree.  Over QQ the
    per-prime values are combined by majority and ``high`` means all primes agree.
    """
    F.require_nonzero()
    if F.field.p:
        p = F.field.p
        est = dim_from_count(len(singular_points_array(F, budget)), p)
        upper = next(k for k in range(-1, F.n_vars - 1) if certify_sing_dim_at_most(F, k))
        if est >= upper:
            return upper, "high"
        return est, "low"
    ests = [dim_from_count(len(singular_points_array(Fp, budget)), Fp.field.p) for Fp in _reductions(F, primes)]
    return _combine(ests)


def _hyperplanes_through(points: np.ndarray, n_vars: int, p: int, rng: random.Random, tries: int) -> list:
    """Hyperplanes (as coefficient vectors) through random (n_vars-1)-subsets of points."""
    out = []
    if points.shape[0] == 0:
        return out
    field = Field(p)
    k = min(n_vars - 1, points.shape[0])
    for _ in range(tries):
        idx = rng.sample(range(points.shape[0]), k)
        rows = [[int(x) for x in points[i]] for i in idx]
        basis = linalg.nullspace(rows, field, n_vars)
        if basis:
            v = [0] * n_vars
            for b in basis:
                c = rng.randrange(1, p)
                v = [(a + c * x) % p for a, x in zip(v, b)]
            if any(v):
                out.append(v)
    return out


def estimate_s_prime(
    F: HomogeneousPoly, primes: Sequence[int] = (5, 7, 11), trials: int = 20, seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> tuple[int, str]:
    """Heuristic max over hyperplanes V of dim(H_sing cap V).

    Tries coordinate hyperplanes, random hyperplanes, and hyperplanes spanned by
    found singular points (which catch components lying in a hyperplane).
    """
    F.require_nonzero()
    rng = random.Random(seed)
    ests = []
    for Fp in _reductions(F, primes):
        p = Fp.field.p
        n = Fp.n_vars
        pts = singular_points_array(Fp, budget)
        hyper = [[int(i == j) for j in range(n)] for i in range(n)]
        hyper += [[rng.randrange(p) for _ in range(n)] for _ in range(trials)]
        hyper += _hyperplanes_through(pts, n, p, rng, trials)
        best = -1
        for v in hyper:
            if not any(v):
                continue
            on = (pts @ np.array(v, dtype=np.int64)) % p == 0 if pts.shape[0] else np.zeros(0, dtype=bool)
            best = max(best, dim_from_count(int(on.sum()), p))
        ests.append(best)
    return _combine(ests)


# -- rational point search ------------------------------------------------------

def small_rational_points(n_vars: int, height: int) -> list[Point]:
    """Primitive integer vectors with entries in [-height, height], first nonzero entry positive."""
    out = []
    for v in itertools.product(range(-height, height + 1), repeat=n_vars):
        nz = [c for c in v if c]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for c in nz:
            g = gcd(g, c)
        if g == 1:
            out.append(tuple(Fraction(c) for c in v))
    return out


def find_singular_points(F: HomogeneousPoly, height: int = 2, limit: int = 50) -> list[Point]:
    """Singular points among small-height rational points (or all F_p points when cheap)."""
    eqs = singular_equations(F) + [F]
    if F.field.p:
        p = F.field.p
        if projective_point_count(F.n_vars, p) <= DEFAULT_BUDGET:
            pts = zero_set_over_Fp(eqs, F.n_vars, p)
            return [tuple(int(x) for x in row) for row in pts[:limit]]
        cands = [tuple(F.field(c) for c in P) for P in small_rational_points(F.n_vars, height)]
        cands = sorted({normalize_point(P, F.field) for P in cands})
    else:
        cands = small_rational_points(F.n_vars, height)
    found = []
    for P in cands:
        if all(e.evaluate(P) == 0 for e in eqs):
            found.append(P)
            if len(found) >= limit:
                break
    return found


@dataclass
class PointRecord:
    point: Point
    info: TangentConeInfo
    source: str

    def to_json(self) -> dict:
        return {"point": format_point(self.point), "source": self.source, **self.info.to_json()}


@dataclass
class SingularityProfile:
    """What is known about delta, s and s' with provenance.

    ``*_lower``/``*_upper`` are proven bounds; ``s_estimate`` and ``s_prime`` are
    heuristics unless their provenance says otherwise.
    """

    N: int
    d: int
    delta_lower: int
    delta_upper: int
    s_lower: int
    s_upper: int
    s_estimate: int | None = None
    s_estimate_confidence: str | None = None
    s_user: int | None = None
    s_prime: int | None = None
    s_prime_provenance: str | None = None
    points: list[PointRecord] = dc_field(default_factory=list)
    degenerate_cone_free: dict = dc_field(default_factory=dict)
    warnings: list[str] = dc_field(default_factory=list)

    @property
    def delta_exact(self) -> bool:
        return self.delta_lower == self.delta_upper

    @property
    def s_exact(self) -> bool:
        return self.s_lower == self.s_upper

    @property
    def max_mult_points(self) -> list[PointRecord]:
        return [r for r in self.points if r.info.delta_P == self.delta_lower]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "delta": {
                "lower": self.delta_lower,
                "upper": self.delta_upper,
                "provenance": "exact-certified" if self.delta_exact else "bounds",
            },
            "s": {
                "lower": self.s_lower,
                "upper": self.s_upper,
                "provenance": "exact-certified" if self.s_exact else "bounds",
                "estimate": self.s_estimate,
                "estimate_provenance": "finite-field-estimate" if self.s_estimate is not None else None,
                "estimate_confidence": self.s_estimate_confidence,
                "user_supplied": self.s_user,
            },
            "s_prime": {"value": self.s_prime, "provenance": self.s_prime_provenance},
            "max_mult_points": [r.to_json() for r in self.max_mult_points],
            "points": [r.to_json() for r in self.points],
            "degenerate_cone_free": {k: v for k, v in sorted(self.degenerate_cone_free.items())},
            "warnings": list(self.warnings),
        }
