"""Serializable (g, alpha) certificates for not-semistable / not-stable claims."""

from __future__ import annotations

from typing import Sequence

from .poly import HomogeneousPoly, LinearChange, apply_linear_change
from .verifier import OK, check_certificate
from .weights import alpha_degree

NOT_SEMISTABLE = "not-semistable"
NOT_STABLE = "not-stable"


def make_certificate(F: HomogeneousPoly, g: LinearChange, alpha: Sequence[int], claim: str, source: str = "") -> dict:
    """Build a certificate and refuse to emit one whose sign does not hold."""
    if claim not in (NOT_SEMISTABLE, NOT_STABLE):
        raise ValueError(f"unknown claim {claim!r}")
    deg = alpha_degree(apply_linear_change(F, g), alpha)
    if (claim == NOT_SEMISTABLE and deg >= 0) or deg > 0:
        raise ValueError(f"alpha-degree {deg} does not support {claim}")
    cert = {
        "version": "v1",
        "poly": F.to_string("X"),
        "n_vars": F.n_vars,
        "field": F.field.descriptor,
        "frame": g.to_json(),
        "alpha": [int(a) for a in alpha],
        "degree_value": str(deg),
        "claim": claim,
    }
    if source:
        cert["source"] = source
    return cert


def recheck(cert: dict) -> bool:
    return check_certificate(cert)[0] == OK
