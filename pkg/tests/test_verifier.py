import ast
import copy
import json
import random
from pathlib import Path

import pytest

import hmstab.verifier as verifier
from hmstab.analyze import AnalyzeOptions, analyze
from hmstab.certificate import make_certificate
from hmstab.fields import GF, QQ
from hmstab.poly import HomogeneousPoly, LinearChange, monomials, parse_poly
from hmstab.verifier import FAILED, MALFORMED, OK, check_certificate, verify_document, verify_text


@pytest.fixture(scope="module")
def cusp_cert():
    report = analyze(parse_poly("X1^2*X2 - X0^3", 3))
    return report["certificates"][0]


def test_verifier_imports_nothing_from_the_package():
    tree = ast.parse(Path(verifier.__file__).read_text())
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            assert node.level == 0 and not (node.module or "").startswith("hmstab")
        if isinstance(node, ast.Import):
            assert all(not a.name.startswith("hmstab") for a in node.names)


def test_cusp_certificate_verifies(cusp_cert):
    assert cusp_cert["claim"] == "not-semistable"
    assert check_certificate(cusp_cert)[0] == OK


def test_hand_written_certificate():
    cert = {
        "poly": "X1^2*X2 - X0^3", "n_vars": 3, "field": "q",
        "frame": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "alpha": [-1, -2, 3], "claim": "not-semistable",
    }
    assert check_certificate(cert)[0] == OK
    cert["degree_value"] = "-1"
    assert check_certificate(cert)[0] == OK


def test_tampering_is_detected(cusp_cert):
    flipped = copy.deepcopy(cusp_cert)
    flipped["alpha"] = [-a for a in flipped["alpha"]]
    assert check_certificate(flipped)[0] == FAILED
    wrong_value = copy.deepcopy(cusp_cert)
    wrong_value["degree_value"] = "7"
    assert check_certificate(wrong_value)[0] == FAILED
    other_poly = copy.deepcopy(cusp_cert)
    other_poly["poly"] = "X0^3 + X1^3 + X2^3"
    other_poly.pop("degree_value")
    assert check_certificate(other_poly)[0] == FAILED


@pytest.mark.parametrize("mutate", [
    lambda c: c.update(alpha=[c["alpha"][0] + 1] + c["alpha"][1:]),
    lambda c: c.update(alpha=[0, 0, 0]),
    lambda c: c.pop("frame"),
    lambda c: c.update(frame=[[1, 0, 0], [1, 0, 0], [0, 0, 1]]),
    lambda c: c.update(field="fp:4"),
    lambda c: c.update(poly="X0^2 + X1^3"),
    lambda c: c.update(claim="stable"),
    lambda c: c.update(n_vars=0),
    lambda c: c.update(alpha=[1.5, -1.5, 0]),
])
def test_malformed_certificates(cusp_cert, mutate):
    cert = copy.deepcopy(cusp_cert)
    mutate(cert)
    assert check_certificate(cert)[0] == MALFORMED


def test_documents():
    report = analyze(parse_poly("X1^2*X2 - X0^3", 3))
    assert verify_document(report)[0] == OK
    smooth = analyze(parse_poly("X0^3 + X1^3 + X2^3", 3))
    assert verify_document(smooth)[0] == MALFORMED
    assert verify_text("{not json")[0] == MALFORMED


def test_finite_field_certificate():
    F = parse_poly("X1^2*X2 - X0^3", 3, GF(5))
    cert = make_certificate(F, LinearChange.identity(GF(5), 3), (-1, -2, 3), "not-semistable")
    assert cert["field"] == "fp:5"
    assert check_certificate(cert)[0] == OK
    # make_certificate refuses to emit a certificate whose sign does not hold
    g = LinearChange(GF(5), [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        make_certificate(F, g, (1, 2, -3), "not-semistable")


def test_closed_loop_on_random_inputs():
    """Every certificate emitted by analyze passes the independent checker (1000 runs)."""
    rng = random.Random(2024)
    emitted = 0
    for run in range(1000):
        n = rng.choice([2, 3])
        d = rng.randint(2, 4 if n == 3 else 6)
        K = rng.choice([QQ, GF(7)])
        mons = monomials(n, d)
        S = rng.sample(mons, rng.randint(1, min(4, len(mons))))
        F = HomogeneousPoly(K, n, d, {m: rng.choice([1, -1, 2, 3]) for m in S})
        if F.is_zero():
            continue
        report = analyze(F, AnalyzeOptions(seed=run, samples=10))
        for cert in report["certificates"]:
            emitted += 1
            code, msg = check_certificate(json.loads(json.dumps(cert)))
            assert code == OK, (str(F), msg)
    assert emitted > 300
