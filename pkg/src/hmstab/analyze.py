"""End-to-end analysis: profile the singularities, run the positive criteria,
search for destabilizing frames, and merge everything into one JSON report.

Positive verdicts are unconditional only when every invariant they use is
certified (multiplicity and singular-locus bounds via emptiness certificates,
tangent-cone shape at all points of maximal multiplicity likewise).  Anything
resting on point searches, finite-field counts or user claims is reported with
the assumptions it is conditional on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import criteria as C
from .certificate import NOT_SEMISTABLE, NOT_STABLE, make_certificate, recheck
from .emptiness import (
    certify_max_multiplicity_at_most,
    certify_no_degenerate_cone,
    certify_sing_dim_at_most,
)
from .newton import (
    STRICT,
    UNSTABLE,
    aligned_frame,
    find_destabilizing_frame,
    lee_instability_check,
)
from .poly import HomogeneousPoly
from .singularity import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    PointRecord,
    SingularityProfile,
    TriState,
    estimate_s_prime,
    estimate_sing_dim,
    find_singular_points,
    format_point,
    frame_at,
    multiplicity_and_cone,
    normalize_point,
    projective_point_count,
    small_rational_points,
    zero_set_over_Fp,
)

SCHEMA = "v1"
ESTIMATE_PRIMES = (5, 7, 11)

S_ESTIMATED = "s estimated from finite-field point counts"
S_USER = "s supplied by the user and not certified"
S_PRIME_ESTIMATED = "s' estimated from finite-field point counts"
DELTA_KNOWN_POINTS = "maximal multiplicity taken from known points only"
CONES_KNOWN_POINTS = "tangent cones checked at known points only"


class InternalContradiction(RuntimeError):
    """A certified negative result contradicts an unconditional positive one."""


@dataclass
class AnalyzeOptions:
    points: Sequence[Sequence] = ()
    s_user: int | None = None
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    samples: int = 40
    height: int = 2


@dataclass
class _Check:
    name: str
    reference: str
    inputs: dict
    verdict: C.Verdict

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "paper_ref": self.reference,
            "inputs": self.inputs,
            "result": self.verdict.status,
            "basis": self.verdict.basis,
            "conditional_on": list(self.verdict.conditional_on),
        }


# -- profile ------------------------------------------------------------------------

def points_on_hypersurface(F: HomogeneousPoly, height: int, limit: int, budget: int) -> list[tuple]:
    if F.field.p and projective_point_count(F.n_vars, F.field.p) <= budget:
        pts = zero_set_over_Fp([F], F.n_vars, F.field.p, budget)
        return [tuple(int(x) for x in row) for row in pts[:limit]]
    out = []
    for P in small_rational_points(F.n_vars, height):
        P = tuple(F.field(c) for c in P) if F.field.p else P
        if all(c == 0 for c in P):
            continue
        if F.evaluate(P) == 0:
            out.append(normalize_point(P, F.field))
            if len(out) >= limit:
                break
    return sorted(set(out), key=out.index)


def build_profile(F: HomogeneousPoly, opts: AnalyzeOptions) -> SingularityProfile:
    field, N, d = F.field, F.n_vars - 1, F.degree
    warnings: list[str] = []
    records: list[PointRecord] = []
    seen = set()

    def add(P, source):
        P = normalize_point(P, field)
        if P in seen:
            return
        seen.add(P)
        info = multiplicity_and_cone(F, frame_at(P, field))
        if info.delta_P == 0:
            warnings.append(f"supplied point {format_point(P)} is not on the hypersurface")
            return
        records.append(PointRecord(P, info, source))

    for P in opts.points:
        add(P, "user-supplied")
    try:
        for P in find_singular_points(F, opts.height):
            add(P, "point-search")
    except BudgetExceeded:
        warnings.append("singular point search skipped: enumeration budget exceeded")

    delta_lower = max([r.info.delta_P for r in records], default=1)
    delta_upper = next(k for k in range(delta_lower, d + 1) if certify_max_multiplicity_at_most(F, k))
    s_lower = 0 if delta_lower >= 2 else -1
    s_upper = next(k for k in range(s_lower, N) if certify_sing_dim_at_most(F, k, seed=opts.seed))
    if delta_upper == 1 or s_upper == -1:
        delta_upper, s_upper = 1, -1

    prof = SingularityProfile(N, d, delta_lower, delta_upper, s_lower, s_upper, points=records, warnings=warnings)

    if not prof.s_exact:
        try:
            prof.s_estimate, prof.s_estimate_confidence = estimate_sing_dim(F, ESTIMATE_PRIMES, opts.budget)
        except (BudgetExceeded, ValueError) as exc:
            warnings.append(f"singular locus estimate skipped: {exc}")
    if prof.s_exact and s_upper <= 0:
        prof.s_prime, prof.s_prime_provenance = s_upper, "exact-certified"
    else:
        try:
            sp, conf = estimate_s_prime(F, ESTIMATE_PRIMES, seed=opts.seed, budget=opts.budget)
            sp = min(max(sp, s_lower - 1, -1), s_upper)
            prof.s_prime, prof.s_prime_provenance = sp, f"finite-field-estimate ({conf} confidence)"
        except (BudgetExceeded, ValueError) as exc:
            warnings.append(f"s' estimate skipped: {exc}")

    if opts.s_user is not None:
        if not -1 <= opts.s_user <= N - 1:
            raise ValueError(f"--s must lie in [-1, {N - 1}], got {opts.s_user}")
        prof.s_user = opts.s_user
        if opts.s_user < s_lower:
            warnings.append(f"supplied s = {opts.s_user} is below the proven lower bound {s_lower}; ignored")

    if prof.delta_exact and prof.delta_lower >= 2 and N >= 2:
        for kind in ("cone", "pure_power"):
            prof.degenerate_cone_free[kind] = certify_no_degenerate_cone(F, prof.delta_lower, kind)
        for r in prof.max_mult_points:
            for kind, flag in (("cone", r.info.is_cone), ("pure_power", r.info.is_pure_power)):
                if prof.degenerate_cone_free[kind] and flag == TriState.YES:
                    raise InternalContradiction(
                        f"certified absence of degenerate cones contradicts the cone at {format_point(r.point)}")
    return prof


# -- positive checks ----------------------------------------------------------------------

REF_PART1 = "semistable if d >= delta*min(N+1, s+3), stable if strict"
REF_PART2 = "semistable if d >= (delta-1)*min(N+1, s+3) when no maximal-multiplicity tangent cone is a cone, stable if strict"
REF_SPRIME = "multiplicity criterion with s replaced by the maximal dimension of hyperplane sections of the singular locus"
REF_THM41 = "semistable if d >= (N+1)(delta-1) when no maximal-multiplicity tangent cone is supported on a hyperplane, stable if strict"


def _s_variants(prof: SingularityProfile) -> list[tuple[int, tuple[str, ...]]]:
    out = [(prof.s_upper, ())]
    if prof.s_user is not None and prof.s_lower <= prof.s_user < prof.s_upper:
        out.append((prof.s_user, (S_USER,)))
    if prof.s_estimate is not None and prof.s_lower <= prof.s_estimate < prof.s_upper and prof.s_estimate != prof.s_user:
        out.append((prof.s_estimate, (S_ESTIMATED,)))
    return out


def _cone_flags(prof: SingularityProfile, kind: str) -> tuple[list, tuple[str, ...]]:
    if prof.degenerate_cone_free.get(kind):
        return [TriState.NO], ()
    pts = prof.max_mult_points
    attr = "is_cone" if kind == "cone" else "is_pure_power"
    flags = [getattr(r.info, attr) or TriState.UNKNOWN for r in pts]
    return flags, (CONES_KNOWN_POINTS,)


def run_checks(prof: SingularityProfile) -> list[_Check]:
    N, d = prof.N, prof.d
    checks: list[_Check] = []
    delta_variants = [(prof.delta_upper, ())]
    if not prof.delta_exact:
        delta_variants.append((prof.delta_lower, (DELTA_KNOWN_POINTS,)))

    for delta, dcond in delta_variants:
        for s, scond in _s_variants(prof):
            v = C.check_part1(d, delta, s, N).with_conditions(dcond + scond)
            checks.append(_Check("part1", REF_PART1, {"d": d, "delta": delta, "s": s, "N": N}, v))

    if prof.s_prime is not None:
        spcond = () if prof.s_prime_provenance == "exact-certified" else (S_PRIME_ESTIMATED,)
        for delta, dcond in delta_variants:
            v = C.check_sprime_variant(d, delta, prof.s_prime, N).with_conditions(dcond + spcond)
            checks.append(_Check("sprime", REF_SPRIME, {"d": d, "delta": delta, "s_prime": prof.s_prime, "N": N}, v))

    delta = prof.delta_lower
    if N >= 2 and delta >= 2:
        dcond = () if prof.delta_exact else (DELTA_KNOWN_POINTS,)
        flags, fcond = _cone_flags(prof, "cone")
        for s, scond in _s_variants(prof):
            v = C.check_part2(d, delta, s, N, flags).with_conditions(dcond + fcond + scond)
            checks.append(_Check("part2", REF_PART2,
                                 {"d": d, "delta": delta, "s": s, "N": N, "cone_flags": [str(f) for f in flags]}, v))
        if prof.s_prime is not None and prof.s_prime < prof.s_upper:
            spcond = () if prof.s_prime_provenance == "exact-certified" else (S_PRIME_ESTIMATED,)
            v = C.check_part2(d, delta, prof.s_prime, N, flags).with_conditions(dcond + fcond + spcond)
            checks.append(_Check("part2-sprime", REF_PART2 + "; s replaced by s'",
                                 {"d": d, "delta": delta, "s_prime": prof.s_prime, "N": N,
                                  "cone_flags": [str(f) for f in flags]}, v))
        pflags, pcond = _cone_flags(prof, "pure_power")
        v = C.check_thm41(d, delta, N, pflags).with_conditions(dcond + pcond)
        checks.append(_Check("thm41", REF_THM41,
                             {"d": d, "delta": delta, "N": N, "hyperplane_flags": [str(f) for f in pflags]}, v))
    return checks


# -- negative search ----------------------------------------------------------------------

def negative_search(F: HomogeneousPoly, prof: SingularityProfile, opts: AnalyzeOptions) -> tuple[list[dict], dict]:
    sing = [r.point for r in sorted(prof.points, key=lambda r: -r.info.delta_P)]
    smooth = [P for P in points_on_hypersurface(F, opts.height, 8, opts.budget) if P not in set(sing)]
    frame_points = sing + smooth
    certs: list[dict] = []
    found = find_destabilizing_frame(F, frame_points, opts.samples, opts.seed, mode="nonstable")
    summary = {"frames_tried_points": [format_point(P) for P in frame_points], "random_samples": opts.samples}
    if found is not None:
        claim = NOT_SEMISTABLE if found.verdict.status == UNSTABLE else NOT_STABLE
        certs.append(make_certificate(F, found.g, found.verdict.alpha, claim, source=f"torus LP at {found.source}"))
    if not found or found.verdict.status != UNSTABLE:
        frames = []
        for P in frame_points:
            frames.append(frame_at(P, F.field).g)
            g = aligned_frame(F, P)
            if g is not None:
                frames.append(g)
        lee = lee_instability_check(F, frames)
        if lee is not None and (lee.claim == NOT_SEMISTABLE or not certs):
            certs.append(make_certificate(F, lee.g, lee.alpha, lee.claim,
                                          source=f"weighted multiplicity ratio {lee.ratio.value}"))
    for c in certs:
        if not recheck(c):
            raise InternalContradiction("emitted certificate failed independent verification")
    return certs, summary


# -- merge ------------------------------------------------------------------------------

def _best(checks: list[_Check], statuses: tuple[str, ...], conditional: bool) -> _Check | None:
    for c in checks:
        if c.verdict.status in statuses and c.verdict.conditional == conditional:
            return c
    return None


def merge(checks: list[_Check], certs: list[dict]) -> dict:
    unstable = next((c for c in certs if c["claim"] == NOT_SEMISTABLE), None)
    nonstable = unstable or next((c for c in certs if c["claim"] == NOT_STABLE), None)
    ss_u = _best(checks, (C.STABLE, C.SEMISTABLE), False)
    st_u = _best(checks, (C.STABLE,), False)
    if unstable and ss_u:
        raise InternalContradiction(f"certificate of instability contradicts {ss_u.name}")
    if nonstable and st_u:
        raise InternalContradiction(f"certificate of non-stability contradicts {st_u.name}")
    ss_c = _best(checks, (C.STABLE, C.SEMISTABLE), True)
    st_c = _best(checks, (C.STABLE,), True)

    conditions: list[str] = []
    if unstable:
        semi = {"status": C.NOT_SEMISTABLE, "basis": "certificate", "conditional_on": []}
    elif ss_u:
        semi = {"status": C.SEMISTABLE, "basis": ss_u.name, "conditional_on": []}
    elif ss_c:
        semi = {"status": C.SEMISTABLE, "basis": ss_c.name, "conditional_on": list(ss_c.verdict.conditional_on)}
        conditions += ss_c.verdict.conditional_on
    else:
        semi = {"status": C.INCONCLUSIVE, "basis": None, "conditional_on": []}

    if nonstable:
        stab = {"status": C.NOT_STABLE, "basis": "certificate", "conditional_on": []}
    elif st_u:
        stab = {"status": C.STABLE, "basis": st_u.name, "conditional_on": []}
    elif st_c:
        stab = {"status": C.STABLE, "basis": st_c.name, "conditional_on": list(st_c.verdict.conditional_on)}
        conditions += [c for c in st_c.verdict.conditional_on if c not in conditions]
    else:
        stab = {"status": C.INCONCLUSIVE, "basis": None, "conditional_on": []}

    s1, s2 = semi["status"], stab["status"]
    if s2 == C.STABLE:
        label = "stable"
    elif s1 == C.NOT_SEMISTABLE:
        label = "not semistable"
    elif s1 == C.SEMISTABLE and s2 == C.NOT_STABLE:
        label = "strictly semistable"
    elif s1 == C.SEMISTABLE:
        label = "semistable"
    elif s2 == C.NOT_STABLE:
        label = "not stable"
    else:
        label = "inconclusive"
    return {
        "semistability": s1,
        "stability": s2,
        "semistability_detail": semi,
        "stability_detail": stab,
        "status": label,
        "conditional": bool(conditions),
        "conditional_on": sorted(set(conditions)),
    }


def analyze(F: HomogeneousPoly, opts: AnalyzeOptions | None = None) -> dict:
    opts = opts or AnalyzeOptions()
    F.require_nonzero()
    if F.degree < 2:
        raise ValueError(f"degree must be at least 2, got {F.degree}")
    if F.n_vars < 2:
        raise ValueError("need at least two variables")
    prof = build_profile(F, opts)
    checks = run_checks(prof)
    certs, search = negative_search(F, prof, opts)
    final = merge(checks, certs)
    return {
        "schema": SCHEMA,
        "input": {
            "poly": F.to_string("X"),
            "n_vars": F.n_vars,
            "N": F.n_vars - 1,
            "d": F.degree,
            "field": F.field.descriptor,
            "seed": opts.seed,
            "budget": opts.budget,
            "samples": opts.samples,
            "s_user": opts.s_user,
            "points": [format_point(normalize_point(P, F.field)) for P in opts.points],
        },
        "profile": prof.to_json(),
        "checks": [c.to_json() for c in checks],
        "certificates": certs,
        "search": search,
        "final": final,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
