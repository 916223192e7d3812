"""Numerical sufficient conditions for (semi)stability.

Each checker takes the invariants (d, delta, s or s', N and tangent-cone flags
at the points of maximal multiplicity) and returns a Verdict: stable when the
strict inequality holds, semistable for the non-strict one, else inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .singularity import TriState

STABLE = "stable"
SEMISTABLE = "semistable"
NOT_STABLE = "not-stable"
NOT_SEMISTABLE = "not-semistable"
INCONCLUSIVE = "inconclusive"
STATUSES = (STABLE, SEMISTABLE, NOT_STABLE, NOT_SEMISTABLE, INCONCLUSIVE)


@dataclass(frozen=True)
class Verdict:
    status: str
    basis: str
    conditional_on: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def is_positive(self) -> bool:
        return self.status in (STABLE, SEMISTABLE)

    @property
    def conditional(self) -> bool:
        return bool(self.conditional_on)

    def with_conditions(self, conditions: Iterable[str]) -> "Verdict":
        return Verdict(self.status, self.basis, tuple(self.conditional_on) + tuple(conditions))

    def to_json(self) -> dict:
        return {"status": self.status, "basis": self.basis, "conditional_on": list(self.conditional_on)}

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        return cls(data["status"], data["basis"], tuple(data.get("conditional_on", ())))


def _compare(d: int, bound: int, basis: str) -> Verdict:
    if d > bound:
        return Verdict(STABLE, basis)
    if d >= bound:
        return Verdict(SEMISTABLE, basis)
    return Verdict(INCONCLUSIVE, basis)


def _check_common(d: int, delta: int, s: int, N: int, s_name: str = "s") -> None:
    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    if not 1 <= delta <= d:
        raise ValueError(f"multiplicity must lie in [1, d], got {delta}")
    if not -1 <= s <= N - 1:
        raise ValueError(f"{s_name} must lie in [-1, {N - 1}], got {s}")


def _flags(flags: Sequence) -> list[TriState]:
    return [f if isinstance(f, TriState) else TriState(str(f)) for f in flags]


def check_part1(d: int, delta: int, s: int, N: int) -> Verdict:
    """d >= delta * min(N+1, s+3), strict for stability."""
    _check_common(d, delta, s, N)
    return _compare(d, delta * min(N + 1, s + 3), "multiplicity and singular-locus bound")


def check_part2(d: int, delta: int, s: int, N: int, cone_flags: Sequence) -> Verdict:
    """d >= (delta-1) * min(N+1, s+3), provided no tangent cone at a point of
    multiplicity delta is a cone over a hypersurface in a hyperplane."""
    if N < 2:
        raise ValueError("the tangent cone criterion needs N >= 2")
    _check_common(d, delta, s, N)
    if delta < 2:
        raise ValueError("the tangent cone criterion needs delta >= 2")
    basis = "non-cone tangent cone bound"
    flags = _flags(cone_flags)
    if not flags or any(f != TriState.NO for f in flags):
        return Verdict(INCONCLUSIVE, basis)
    return _compare(d, (delta - 1) * min(N + 1, s + 3), basis)


def check_sprime_variant(d: int, delta: int, s_prime: int, N: int) -> Verdict:
    """The multiplicity bound with s replaced by the hyperplane-section dimension s'."""
    _check_common(d, delta, s_prime, N, "s'")
    return _compare(d, delta * min(N + 1, s_prime + 3), "multiplicity bound with hyperplane-section dimension")


def check_thm41(d: int, delta: int, N: int, hyperplane_flags: Sequence) -> Verdict:
    """d >= (N+1)(delta-1), provided no tangent cone at a point of multiplicity
    delta is supported on a hyperplane."""
    if delta < 2:
        raise ValueError("the hyperplane tangent cone criterion needs delta >= 2")
    _check_common(d, delta, -1, N)
    basis = "non-hyperplane tangent cone bound"
    flags = _flags(hyperplane_flags)
    if not flags or any(f != TriState.NO for f in flags):
        return Verdict(INCONCLUSIVE, basis)
    return _compare(d, (N + 1) * (delta - 1), basis)
