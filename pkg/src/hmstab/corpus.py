"""Built-in corpus of hypersurfaces with known GIT behaviour, and its runner.

Each entry records what ``analyze`` is expected to report (``expected``) next to
the classical answer (``truth``).  The two can differ only by the tool being
less informative: an expected "inconclusive" is fine where the truth is known,
but an expectation must never contradict the truth.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .analyze import AnalyzeOptions, analyze
from .fields import Field
from .poly import parse_poly

# provenance tags for expectations
CLASSICAL = "classical"  # known classification result, reproduced by the tool
DERIVED = "derived"  # output of an independent computation
TRIVIAL = "trivial"  # immediate from the formula

SEMI_STATUSES = ("semistable", "not-semistable", "inconclusive")
STAB_STATUSES = ("stable", "not-stable", "inconclusive")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    poly: str
    n_vars: int
    semistability: str
    stability: str
    truth_semistable: bool
    truth_stable: bool
    source: str
    tag: str = CLASSICAL
    field: str = "q"

    def __post_init__(self) -> None:
        if self.semistability not in SEMI_STATUSES or self.stability not in STAB_STATUSES:
            raise ValueError(f"{self.name}: unknown expected status")
        if self.truth_stable and not self.truth_semistable:
            raise ValueError(f"{self.name}: stable but not semistable")
        # an expectation may be weaker than the truth, never opposite to it
        if (self.semistability == "semistable") != self.truth_semistable and self.semistability != "inconclusive":
            raise ValueError(f"{self.name}: semistability expectation contradicts the truth")
        if (self.stability == "stable") != self.truth_stable and self.stability != "inconclusive":
            raise ValueError(f"{self.name}: stability expectation contradicts the truth")

    @classmethod
    def from_json(cls, data: dict) -> "CorpusEntry":
        return cls(**data)

    def to_json(self) -> dict:
        return asdict(self)


def _fermat(n_vars: int, d: int) -> str:
    return " + ".join(f"X{i}^{d}" for i in range(n_vars))


def _quadric(n_vars: int) -> str:
    return " ".join(("- " if i % 2 else "+ ") + f"X{i}^2" for i in range(n_vars)).lstrip("+ ")


def _build() -> tuple[CorpusEntry, ...]:
    E = CorpusEntry
    out = []
    for n, d in ((2, 3), (3, 3), (3, 4), (4, 3)):
        out.append(E(f"fermat-N{n - 1}-d{d}", _fermat(n, d), n, "semistable", "stable", True, True,
                     "smooth hypersurfaces of degree at least 3 are stable"))
    for n in (2, 3, 4):
        out.append(E(f"quadric-N{n - 1}", _quadric(n), n, "semistable", "not-stable", True, False,
                     "smooth quadrics are semistable, never stable"))
    out += [
        E("plane-cubic-nodal", "X1^2*X2 - X0^3 - X0^2*X2", 3, "semistable", "not-stable", True, False,
          "plane cubics: nodal is strictly semistable"),
        E("plane-cubic-triangle", "X0*X1*X2", 3, "semistable", "not-stable", True, False,
          "plane cubics: three non-concurrent lines are strictly semistable"),
        E("plane-cubic-cuspidal", "X1^2*X2 - X0^3", 3, "not-semistable", "not-stable", False, False,
          "plane cubics: a cusp makes the cubic unstable"),
        E("plane-cubic-conic-tangent-line", "X0*X2^2 - X1^2*X2", 3, "not-semistable", "not-stable", False, False,
          "plane cubics: a conic with a tangent line is unstable"),
        E("plane-cubic-double-line", "X0^2*X2", 3, "not-semistable", "not-stable", False, False,
          "plane cubics: a double line is unstable"),
        E("plane-cubic-triple-line", "X0^3", 3, "not-semistable", "not-stable", False, False,
          "plane cubics: a triple line is unstable"),
        E("binary-quartic-two-double-roots", "X0^2*X1^2", 2, "semistable", "not-stable", True, False,
          "binary forms: a root of multiplicity d/2 gives strict semistability"),
        E("binary-quartic-triple-root", "X0^3*X1", 2, "not-semistable", "not-stable", False, False,
          "binary forms: a root of multiplicity above d/2 is unstable"),
        E("binary-quintic-double-root", "X0^4*X1 + 3*X0^3*X1^2 + 2*X0^2*X1^3", 2, "semistable", "stable", True, True,
          "binary forms: all roots of multiplicity below d/2 give stability"),
        E("plane-quartic-smooth", "X0^4 + X1^4 + X2^4 - X0*X1*X2^2", 3, "semistable", "stable", True, True,
          "smooth plane quartics are stable"),
        E("plane-quartic-two-nodes", "X0^4 + X0^2*X2^2 + X1^4 - X1^2*X2^2", 3, "semistable", "stable", True, True,
          "plane quartics with only ordinary double points are stable"),
        E("plane-quartic-triple-point", "X0^4 + X0^3*X2 + X1^4 + X1^3*X2", 3, "not-semistable", "not-stable",
          False, False, "plane quartics: a triple point makes the quartic unstable"),
        E("cubic-surface-A1", "X0^3 + X0^2*X3 + 2*X1^3 + X1^2*X3 + 3*X2^3 + X2^2*X3", 4, "semistable", "inconclusive",
          True, True, "cubic surfaces: ordinary double points only gives stability"),
        E("cubic-surface-A2", "X0^3 + X0*X1*X3 + X1^3 + X2^3", 4, "inconclusive", "not-stable", True, False,
          "cubic surfaces: an A2 point gives strict semistability"),
        E("plane-sextic-ordinary-triple-point", "X0^3*X2^3 + X1^3*X2^3 + X0^6 + X1^6 + X0*X1^5", 3,
          "semistable", "inconclusive", True, True,
          "plane curves with an ordinary triple point: non-cone tangent bound gives 6 >= 3*2", DERIVED),
        E("plane-septic-ordinary-triple-point", "X0^3*X2^4 + X1^3*X2^4 + X0^7 + X1^7 + X0*X1^6", 3,
          "semistable", "stable", True, True,
          "plane curves with an ordinary triple point: non-cone tangent bound gives 7 > 3*2", DERIVED),
        E("fermat-cubic-F7", _fermat(3, 3), 3, "semistable", "stable", True, True,
          "smooth plane cubic in characteristic 7", field="fp:7"),
        E("cuspidal-cubic-F5", "X1^2*X2 - X0^3", 3, "not-semistable", "not-stable", False, False,
          "cuspidal cubic in characteristic 5", field="fp:5"),
    ]
    return tuple(out)


CORPUS: tuple[CorpusEntry, ...] = _build()


def load_entries(path: str | os.PathLike) -> list[CorpusEntry]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise ValueError("corpus file must hold a JSON list of entries")
    return [CorpusEntry.from_json(e) for e in data]


def select(entries: Iterable[CorpusEntry], pattern: str | None) -> list[CorpusEntry]:
    return [e for e in entries if not pattern or pattern in e.name]


@dataclass(frozen=True)
class CorpusResult:
    name: str
    expected: tuple[str, str]
    got: tuple[str, str]
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.expected == self.got


def run_entry(entry: CorpusEntry, seed: int = 0) -> CorpusResult:
    expected = (entry.semistability, entry.stability)
    try:
        F = parse_poly(entry.poly, entry.n_vars, Field.from_descriptor(entry.field))
        final = analyze(F, AnalyzeOptions(seed=seed))["final"]
    except Exception as exc:  # reported as a failed row, not a crash of the whole run
        return CorpusResult(entry.name, expected, ("error", "error"), f"{type(exc).__name__}: {exc}")
    return CorpusResult(entry.name, expected, (final["semistability"], final["stability"]))


def run_corpus(entries: Sequence[CorpusEntry], jobs: int = 1, seed: int = 0) -> list[CorpusResult]:
    """Results in entry order, whatever order the workers finish in."""
    if jobs <= 1 or len(entries) <= 1:
        return [run_entry(e, seed) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_entry, entries, [seed] * len(entries)))


def format_table(results: Sequence[CorpusResult]) -> str:
    rows = [("entry", "expected", "got", "pass")]
    for r in results:
        got = r.error or "/".join(r.got)
        rows.append((r.name, "/".join(r.expected), got, "yes" if r.passed else "NO"))
    widths = [max(len(row[k]) for row in rows) for k in range(3)]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row[:3], widths)) + "  " + row[3] for row in rows
    )
