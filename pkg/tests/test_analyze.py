import pytest

from hmstab import criteria as C
from hmstab.analyze import (
    CONES_KNOWN_POINTS,
    S_USER,
    AnalyzeOptions,
    InternalContradiction,
    _Check,
    analyze,
    merge,
    run_checks,
)
from hmstab.corpus import CORPUS, CorpusEntry, run_corpus
from hmstab.fields import GF
from hmstab.poly import parse_poly
from hmstab.singularity import SingularityProfile
from hmstab.verifier import check_certificate


def test_smooth_quartic_stable_by_multiplicity_bound():
    report = analyze(parse_poly("X0^4 + X1^4 + X2^4", 3))
    assert report["final"]["status"] == "stable"
    assert report["final"]["stability_detail"]["basis"] == "part1"
    assert report["profile"]["delta"] == {"lower": 1, "upper": 1, "provenance": "exact-certified"}


def test_cusp_not_semistable_and_no_positive_check():
    report = analyze(parse_poly("X1^2*X2 - X0^3", 3))
    assert report["final"]["semistability"] == "not-semistable"
    assert all(c["result"] == "inconclusive" for c in report["checks"])
    assert all(check_certificate(c)[0] == 0 for c in report["certificates"])


def test_conic_strictly_semistable():
    report = analyze(parse_poly("X0*X2 - X1^2", 3))
    assert report["final"]["status"] == "strictly semistable"
    assert report["final"]["semistability_detail"]["basis"] == "part1"
    assert report["certificates"][0]["claim"] == "not-stable"


def test_report_shape():
    report = analyze(parse_poly("X0^3 + X1^3 + X2^3", 3, GF(7)))
    assert set(report) == {"schema", "input", "profile", "checks", "certificates", "search", "final"}
    assert report["input"]["field"] == "fp:7"
    for c in report["checks"]:
        assert {"name", "paper_ref", "inputs", "result", "conditional_on"} <= set(c)


def test_rejects_degenerate_input():
    with pytest.raises(ValueError):
        analyze(parse_poly("X0 + X1", 2))
    with pytest.raises(ValueError):
        analyze(parse_poly("X0^2 - X0^2", 2))


def test_supplied_point_off_the_hypersurface_is_a_warning():
    report = analyze(parse_poly("X0^3 + X1^3 + X2^3", 3), AnalyzeOptions(points=[(1, 0, 0)]))
    assert any("not on the hypersurface" in w for w in report["profile"]["warnings"])
    assert report["final"]["status"] == "stable"


def _profile(**kw):
    base = dict(N=3, d=6, delta_lower=2, delta_upper=2, s_lower=0, s_upper=1)
    base.update(kw)
    return SingularityProfile(**base)


def test_user_s_makes_checks_conditional():
    prof = _profile(s_user=0)
    checks = run_checks(prof)
    part1 = [c for c in checks if c.name == "part1"]
    # certified s = 1: 6 >= 2*min(4, 4) fails; user s = 0: 6 >= 2*3 holds
    assert part1[0].verdict.status == C.INCONCLUSIVE and not part1[0].verdict.conditional
    assert part1[1].verdict.status == C.SEMISTABLE and part1[1].verdict.conditional_on == (S_USER,)
    final = merge(checks, [])
    assert final["semistability"] == "semistable" and S_USER in final["conditional_on"]


def test_cone_flags_without_certificate_are_conditional():
    prof = _profile(N=2, d=3, s_upper=0)
    checks = run_checks(prof)
    part2 = next(c for c in checks if c.name == "part2")
    # no known points and no certificate: the flags list is empty, so nothing can be concluded
    assert part2.verdict.status == C.INCONCLUSIVE
    assert CONES_KNOWN_POINTS in part2.verdict.conditional_on


def test_merge_detects_contradictions():
    positive = _Check("part1", "", {}, C.Verdict(C.SEMISTABLE, "test"))
    cert = {"claim": "not-semistable"}
    with pytest.raises(InternalContradiction):
        merge([positive], [cert])
    stable = _Check("part1", "", {}, C.Verdict(C.STABLE, "test"))
    with pytest.raises(InternalContradiction):
        merge([stable], [{"claim": "not-stable"}])
    # a conditional positive loses to a certificate without contradiction
    conditional = _Check("part1", "", {}, C.Verdict(C.STABLE, "test", ("s estimated",)))
    assert merge([conditional], [cert])["semistability"] == "not-semistable"


def test_corpus_entry_validation():
    with pytest.raises(ValueError):
        CorpusEntry("x", "X0^2", 2, "semistable", "stable", False, False, "bad")
    with pytest.raises(ValueError):
        CorpusEntry("x", "X0^2", 2, "semistable", "typo", True, True, "bad")


def test_full_corpus_passes_and_never_contradicts():
    results = run_corpus(CORPUS, jobs=4)
    assert [r.name for r in results] == [e.name for e in CORPUS]
    failures = [(r.name, r.expected, r.got, r.error) for r in results if not r.passed]
    assert not failures
