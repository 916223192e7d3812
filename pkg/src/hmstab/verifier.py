"""Stand-alone checker for (g, alpha) certificates.

Deliberately shares no code with the rest of the package: it has its own
parser, field arithmetic, substitution and determinant, so that a bug in the
main pipeline cannot silently validate its own output.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

OK = 0
FAILED = 1
MALFORMED = 2

CLAIMS = ("not-semistable", "not-stable")


class Malformed(ValueError):
    pass


class _Arith:
    def __init__(self, p: int):
        self.p = p

    def coerce(self, text) -> object:
        try:
            q = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise Malformed(f"bad number {text!r}") from None
        if not self.p:
            return q
        if q.denominator % self.p == 0:
            raise Malformed(f"denominator of {text!r} vanishes mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / x


def _field(text) -> int:
    if not isinstance(text, str):
        raise Malformed("field must be a string")
    t = text.strip().lower()
    if t == "q":
        return 0
    m = re.fullmatch(r"fp:(\d+)", t)
    if not m:
        raise Malformed(f"bad field {text!r}")
    p = int(m.group(1))
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise Malformed(f"{p} is not prime")
    return p


def _parse(text: str, n: int, ar: _Arith) -> dict:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise Malformed("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in terms) != s:
        raise Malformed(f"cannot read polynomial {text!r}")
    out: dict = {}
    for sign, body in terms:
        factors = re.sub(r"(\d)([Xx])", r"\1*\2", body).split("*")
        coef = Fraction(1)
        exps = [0] * n
        for k, fac in enumerate(factors):
            m = re.fullmatch(r"[Xx](\d+)(?:\^(\d+))?", fac)
            if m:
                i = int(m.group(1))
                if i >= n:
                    raise Malformed(f"variable index {i} out of range")
                exps[i] += int(m.group(2) or 1)
            elif k == 0 and re.fullmatch(r"\d+(/\d+)?", fac):
                coef = Fraction(fac)
            else:
                raise Malformed(f"bad factor {fac!r}")
        c = ar.coerce(-coef if sign == "-" else coef)
        key = tuple(exps)
        out[key] = ar.norm(out.get(key, 0) + c)
    degs = {sum(e) for e in out}
    if len(degs) != 1:
        raise Malformed("polynomial is not homogeneous")
    return {e: c for e, c in out.items() if c != 0}


def _mul(a: dict, b: dict, ar: _Arith) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = ar.norm(out.get(e, 0) + c1 * c2)
    return {e: c for e, c in out.items() if c != 0}


def _compose(poly: dict, frame: list, n: int, ar: _Arith) -> dict:
    """Substitute X_i <- sum_j frame[i][j] X_j."""
    lin = []
    for i in range(n):
        lin.append({tuple(int(k == j) for k in range(n)): frame[i][j] for j in range(n) if frame[i][j] != 0})
    result: dict = {}
    for e, c in poly.items():
        term = {(0,) * n: c}
        for i, k in enumerate(e):
            for _ in range(k):
                term = _mul(term, lin[i], ar)
        for m, v in term.items():
            result[m] = ar.norm(result.get(m, 0) + v)
    return {e: c for e, c in result.items() if c != 0}


def _det(rows: list, ar: _Arith):
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = ar.norm(det * m[c][c])
        inv = ar.inv(m[c][c])
        for i in range(c + 1, n):
            f = ar.norm(m[i][c] * inv)
            if f:
                m[i] = [ar.norm(x - f * y) for x, y in zip(m[i], m[c])]
    return det


def check_certificate(cert: dict) -> tuple[int, str]:
    """Return (exit code, message) for one certificate dictionary."""
    try:
        if not isinstance(cert, dict):
            raise Malformed("certificate must be a JSON object")
        for key in ("poly", "n_vars", "field", "frame", "alpha", "claim"):
            if key not in cert:
                raise Malformed(f"missing field {key!r}")
        n = cert["n_vars"]
        if not isinstance(n, int) or n < 1:
            raise Malformed("n_vars must be a positive integer")
        ar = _Arith(_field(cert["field"]))
        alpha = cert["alpha"]
        if not isinstance(alpha, list) or len(alpha) != n or not all(isinstance(a, int) and not isinstance(a, bool) for a in alpha):
            raise Malformed("alpha must be a list of n_vars integers")
        if sum(alpha) != 0:
            raise Malformed("alpha does not sum to zero")
        if not any(alpha):
            raise Malformed("alpha is zero")
        frame = cert["frame"]
        if not isinstance(frame, list) or len(frame) != n or any(not isinstance(r, list) or len(r) != n for r in frame):
            raise Malformed("frame must be an n_vars x n_vars matrix")
        frame = [[ar.coerce(x) for x in r] for r in frame]
        if _det(frame, ar) == 0:
            raise Malformed("frame is singular")
        if cert["claim"] not in CLAIMS:
            raise Malformed(f"unknown claim {cert['claim']!r}")
        if not isinstance(cert["poly"], str):
            raise Malformed("poly must be a string")
        poly = _parse(cert["poly"], n, ar)
        if not poly:
            raise Malformed("polynomial is zero")
        composed = _compose(poly, frame, n, ar)
        degree = max(sum(a * m for a, m in zip(alpha, e)) for e in composed)
    except Malformed as exc:
        return MALFORMED, f"malformed certificate: {exc}"
    if "degree_value" in cert:
        try:
            claimed = Fraction(str(cert["degree_value"]))
        except (ValueError, ZeroDivisionError):
            return MALFORMED, f"malformed certificate: bad degree_value {cert['degree_value']!r}"
        if claimed != degree:
            return FAILED, f"alpha-degree is {degree}, certificate states {claimed}"
    if cert["claim"] == "not-semistable" and degree >= 0:
        return FAILED, f"alpha-degree {degree} is not negative"
    if cert["claim"] == "not-stable" and degree > 0:
        return FAILED, f"alpha-degree {degree} is positive"
    return OK, f"verified: alpha-degree {degree} supports {cert['claim']}"


def verify_document(doc) -> tuple[int, list[str]]:
    """Accept a single certificate or a report holding a ``certificates`` list."""
    if isinstance(doc, dict) and "certificates" in doc and "poly" not in doc:
        certs = doc["certificates"]
        if not isinstance(certs, list) or not certs:
            return MALFORMED, ["report holds no certificates"]
    else:
        certs = [doc]
    codes, messages = [], []
    for cert in certs:
        code, msg = check_certificate(cert)
        codes.append(code)
        messages.append(msg)
    return max(codes), messages


def verify_text(text: str) -> tuple[int, list[str]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return MALFORMED, [f"invalid JSON: {exc}"]
    return verify_document(doc)
