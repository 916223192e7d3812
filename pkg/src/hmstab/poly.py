"""Sparse exact polynomials, the homogeneous-form parser/printer, linear changes
of coordinates and the tail decomposition F = X_0 P_0 + ... + X_N P_N.

Terms are stored as a dict ``exponent tuple -> nonzero coefficient``.  Values
are treated as immutable once constructed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import linalg
from .fields import QQ, Field, Scalar

Exponent = tuple[int, ...]


class PolyParseError(ValueError):
    pass


def _grlex_key(e: Exponent):
    return (sum(e), e)


class Poly:
    """Polynomial in ``n_vars`` variables over ``field`` (not necessarily homogeneous)."""

    __slots__ = ("field", "n_vars", "_terms", "_hash")
    var_prefix = "x"

    def __init__(self, field: Field, n_vars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Scalar] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n_vars or min(e, default=0) < 0:
                raise ValueError(f"exponent {e} does not fit {n_vars} variables")
            c = field(c)
            if e in clean:
                c = field.norm(clean[e] + c)
            if c == 0:
                clean.pop(e, None)
            else:
                clean[e] = c
        self._init(field, n_vars, clean)

    def _init(self, field: Field, n_vars: int, clean: dict) -> None:
        self.field = field
        self.n_vars = n_vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, n_vars: int, clean: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj._init(field, n_vars, clean)
        return obj

    def _wrap(self, clean: dict, degree: int | None = None) -> "Poly":
        if degree is not None:
            return HomogeneousPoly._raw_h(self.field, self.n_vars, degree, clean)
        return Poly._raw(self.field, self.n_vars, clean)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, n_vars: int) -> "Poly":
        return Poly._raw(field, n_vars, {})

    @classmethod
    def constant(cls, field: Field, n_vars: int, c) -> "Poly":
        c = field(c)
        return Poly._raw(field, n_vars, {(0,) * n_vars: c} if c != 0 else {})

    @classmethod
    def variable(cls, field: Field, n_vars: int, i: int) -> "Poly":
        if not 0 <= i < n_vars:
            raise IndexError(f"variable index {i} out of range for {n_vars} variables")
        e = [0] * n_vars
        e[i] = 1
        return Poly._raw(field, n_vars, {tuple(e): field.one})

    # -- basic queries ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return MappingProxyType(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms, key=_grlex_key, reverse=True)

    def coefficient(self, e: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(e), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("order of the zero polynomial")
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.n_vars)

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.field != other.field or self.n_vars != other.n_vars:
            raise ValueError("polynomials live in different rings")

    def _hdeg(self) -> int | None:
        return getattr(self, "degree", None)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.n_vars, other)
        self._check(other)
        f = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = f.norm(out.get(e, 0) + c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        d1, d2 = self._hdeg(), other._hdeg()
        return self._wrap(out, d1 if d1 is not None and d1 == d2 else None)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return self._wrap({e: f.norm(-c) for e, c in self._terms.items()}, self._hdeg())

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.n_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        f = self.field
        c = f(c)
        if c == 0:
            return self._wrap({}, self._hdeg())
        return self._wrap({e: f.norm(v * c) for e, v in self._terms.items()}, self._hdeg())

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        f = self.field
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: v for e, v in ((e, f.norm(v)) for e, v in out.items()) if v != 0}
        d1, d2 = self._hdeg(), other._hdeg()
        return self._wrap(out, d1 + d2 if d1 is not None and d2 is not None else None)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self._one_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _one_like(self) -> "Poly":
        one = {(0,) * self.n_vars: self.field.one}
        return self._wrap(one, 0 if self._hdeg() is not None else None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if self.is_zero() and other == 0:
                return True
            return NotImplemented
        return self.field == other.field and self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.n_vars, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and calculus -----------------------------------------

    def __call__(self, *point) -> Scalar:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Scalar:
        f = self.field
        if len(point) != self.n_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n_vars}")
        pt = [f(a) for a in point]
        total = 0
        for e, c in self._terms.items():
            t = c
            for a, k in zip(pt, e):
                if k:
                    t = t * a**k
            total += t
        return f.norm(f(total) if f.p == 0 else total)

    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.n_vars:
            raise IndexError(f"variable index {i} out of range for {self.n_vars} variables")
        f = self.field
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                v = f.norm(c * e[i])
                if v != 0:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        d = self._hdeg()
        return self._wrap(out, max(d - 1, 0) if d is not None else None)

    def hasse(self, beta: Sequence[int]) -> "Poly":
        """Hasse derivative D^beta, i.e. the beta-th Taylor coefficient operator."""
        f = self.field
        out = {}
        for e, c in self._terms.items():
            if all(x >= b for x, b in zip(e, beta)):
                m = 1
                for x, b in zip(e, beta):
                    m *= comb(x, b)
                v = f.norm(c * m)
                if v != 0:
                    out[tuple(x - b for x, b in zip(e, beta))] = v
        d = self._hdeg()
        return self._wrap(out, max(d - sum(beta), 0) if d is not None else None)

    def homogeneous_component(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative degree")
        return Poly._raw(self.field, self.n_vars, {m: c for m, c in self._terms.items() if sum(m) == e})

    def substitute(self, forms: Sequence["Poly"]) -> "Poly":
        """Replace variable i by ``forms[i]`` (all forms in one common ring)."""
        if len(forms) != self.n_vars:
            raise ValueError("need one form per variable")
        target = forms[0]
        f = self.field
        powers: dict[tuple[int, int], Poly] = {}

        def pw(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in powers:
                powers[key] = forms[i] if k == 1 else pw(i, k - 1) * forms[i]
            return powers[key]

        acc: dict[Exponent, Scalar] = {}
        for e, c in self._terms.items():
            term: Poly | None = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            if term is None:
                key = (0,) * target.n_vars
                acc[key] = acc.get(key, 0) + c
                continue
            for m, v in term._terms.items():
                acc[m] = acc.get(m, 0) + c * v
        clean = {m: v for m, v in ((m, f.norm(v)) for m, v in acc.items()) if v != 0}
        return Poly._raw(f, target.n_vars, clean)

    def reduce_mod(self, p: int) -> "Poly":
        """Image over F_p; raises ZeroDivisionError if a denominator vanishes mod p."""
        if not self.field.is_rational:
            raise ValueError("reduction is only defined for rational polynomials")
        fp = Field(p)
        clean = {e: v for e, v in ((e, fp(c)) for e, c in self._terms.items()) if v != 0}
        return self._rewrap(fp, clean)

    def _rewrap(self, field: Field, clean: dict) -> "Poly":
        d = self._hdeg()
        if d is not None:
            return HomogeneousPoly._raw_h(field, self.n_vars, d, clean)
        return Poly._raw(field, self.n_vars, clean)

    def clear_denominators(self) -> "Poly":
        """Scalar multiple with coprime integer coefficients (rational polys only)."""
        from math import gcd, lcm

        if not self.field.is_rational or not self._terms:
            return self
        den = lcm(*(c.denominator for c in self._terms.values()))
        num = gcd(*(int(c * den) for c in self._terms.values()))
        return self.scale(Fraction(den, num))

    # -- printing ---------------------------------------------------------

    def to_string(self, prefix: str | None = None) -> str:
        prefix = prefix or self.var_prefix
        if not self._terms:
            return "0"
        parts = []
        for e in self.support():
            c = self._terms[e]
            neg = self.field.is_rational and c < 0
            a = -c if neg else c
            mono = "*".join(f"{prefix}{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.field!r}, {self.n_vars}, {self.to_string()!r})"


class HomogeneousPoly(Poly):
    """Form of fixed degree ``degree`` in ``n_vars`` variables."""

    __slots__ = ("degree",)
    var_prefix = "X"

    def __init__(self, field: Field, n_vars: int, degree: int, terms=()):
        super().__init__(field, n_vars, terms)
        bad = [e for e in self._terms if sum(e) != degree]
        if bad:
            raise ValueError(f"monomial {bad[0]} does not have degree {degree}")
        self.degree = degree

    @classmethod
    def _raw_h(cls, field: Field, n_vars: int, degree: int, clean: dict) -> "HomogeneousPoly":
        obj = cls.__new__(cls)
        obj._init(field, n_vars, clean)
        obj.degree = degree
        return obj

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> "HomogeneousPoly":
        if degree is None:
            if p.is_zero():
                raise ValueError("degree of the zero form must be given")
            degree = p.total_degree()
        if any(sum(e) != degree for e in p._terms):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        return cls._raw_h(p.field, p.n_vars, degree, dict(p._terms))

    @classmethod
    def monomial(cls, field: Field, e: Sequence[int], c=1) -> "HomogeneousPoly":
        return cls(field, len(e), sum(e), {tuple(e): c})

    @classmethod
    def linear_form(cls, field: Field, coeffs: Sequence) -> "HomogeneousPoly":
        n = len(coeffs)
        return cls(field, n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @property
    def N(self) -> int:
        """Dimension of the ambient projective space."""
        return self.n_vars - 1

    def require_nonzero(self) -> None:
        if self.is_zero():
            raise ValueError("the zero polynomial does not define a hypersurface")


# -- parsing ------------------------------------------------------------------

_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?P<mono>(?:\*?[Xx]\d+(?:\^\d+)?)*)$")
_FACTOR = re.compile(r"[Xx](\d+)(?:\^(\d+))?")


def _parse_terms(text: str, n_vars: int, field: Field):
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]*)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise PolyParseError(f"cannot split {text!r} into terms")
    terms: list[tuple[Exponent, Scalar]] = []
    degrees: set[int] = set()
    for sign, body in pieces:
        m = _TERM.match(body)
        if not body or not m or (m.group("coef") is None and not m.group("mono")):
            raise PolyParseError(f"malformed term {sign}{body!r}")
        mono = m.group("mono")
        if m.group("coef") is None and mono.startswith("*"):
            raise PolyParseError(f"malformed term {sign}{body!r}")
        try:
            c = Fraction(m.group("coef") or 1)
        except ZeroDivisionError:
            raise PolyParseError(f"zero denominator in {body!r}") from None
        if sign == "-":
            c = -c
        e = [0] * n_vars
        for idx, k in _FACTOR.findall(mono):
            i = int(idx)
            if i >= n_vars:
                raise PolyParseError(f"variable X{i} out of range for {n_vars} variables")
            e[i] += int(k) if k else 1
        terms.append((tuple(e), field(c)))
        degrees.add(sum(e))
    return terms, degrees


def parse_poly(text: str, n_vars: int, field: Field = QQ) -> HomogeneousPoly:
    """Parse a homogeneous form such as ``"X1^2*X2 - 3/2*X0^3"``."""
    terms, degrees = _parse_terms(text, n_vars, field)
    if len(degrees) > 1:
        raise PolyParseError(f"mixed degrees {sorted(degrees)} in a homogeneous polynomial")
    return HomogeneousPoly(field, n_vars, degrees.pop(), terms)


def parse_affine(text: str, n_vars: int, field: Field = QQ) -> Poly:
    terms, _ = _parse_terms(text, n_vars, field)
    return Poly(field, n_vars, terms)


def infer_n_vars(text: str) -> int:
    idx = [int(i) for i, _ in _FACTOR.findall(text)]
    return max(idx) + 1 if idx else 1


# -- linear changes -----------------------------------------------------------

class LinearChange:
    """Invertible square matrix g acting by X_i -> sum_j g[i][j] X_j."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field: Field, rows: Sequence[Sequence], check: bool = True):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("a linear change needs a non-empty square matrix")
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self._hash = None
        if check and linalg.det(self.rows, field) == 0:
            raise ValueError("linear change is singular")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearChange":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], check=False)

    @classmethod
    def permutation(cls, field: Field, perm: Sequence[int]) -> "LinearChange":
        """Matrix whose column j is the basis vector e_{perm[j]}."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation")
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = 1
        return cls(field, rows, check=False)

    def det(self) -> Scalar:
        return linalg.det(self.rows, self.field)

    def inverse(self) -> "LinearChange":
        return LinearChange(self.field, linalg.inverse(self.rows, self.field), check=False)

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        if self.field != other.field or self.n != other.n:
            raise ValueError("dimension or field mismatch")
        return LinearChange(self.field, linalg.matmul(self.rows, other.rows, self.field), check=False)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def apply_to_vector(self, v: Sequence) -> tuple:
        f = self.field
        return tuple(f.norm(sum(a * f(b) for a, b in zip(r, v))) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearChange) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data) -> "LinearChange":
        return cls(field, [[field(x) for x in r] for r in data])

    def __repr__(self) -> str:
        return f"LinearChange({self.to_json()})"


def linear_forms(field: Field, rows: Sequence[Sequence[Scalar]], n_target: int) -> list[HomogeneousPoly]:
    forms = []
    for r in rows:
        clean = {}
        for j, c in enumerate(r):
            if c != 0:
                e = [0] * n_target
                e[j] = 1
                clean[tuple(e)] = c
        forms.append(HomogeneousPoly._raw_h(field, n_target, 1, clean))
    return forms


def substitute_linear(F: HomogeneousPoly, rows: Sequence[Sequence], n_target: int) -> HomogeneousPoly:
    """F(M y) for an (n_vars x n_target) matrix M; used for restrictions to linear subspaces."""
    f = F.field
    rows = [[f(x) for x in r] for r in rows]
    if len(rows) != F.n_vars or any(len(r) != n_target for r in rows):
        raise ValueError("matrix shape does not match the substitution")
    out = F.substitute(linear_forms(f, rows, n_target))
    return HomogeneousPoly._raw_h(f, n_target, F.degree, dict(out._terms))


def apply_linear_change(F: HomogeneousPoly, g: LinearChange) -> HomogeneousPoly:
    """F o g, i.e. substitute X_i <- (g X)_i."""
    if g.n != F.n_vars:
        raise ValueError(f"matrix of size {g.n} does not act on {F.n_vars} variables")
    if g.field != F.field:
        raise ValueError("matrix and polynomial live over different fields")
    return substitute_linear(F, g.rows, F.n_vars)


def partial_derivative(F: HomogeneousPoly, i: int) -> HomogeneousPoly:
    return F.diff(i)


def dehomogenize(F: HomogeneousPoly, i: int) -> Poly:
    """Set X_i = 1 and renumber the remaining variables in order."""
    if not 0 <= i < F.n_vars:
        raise IndexError(f"variable index {i} out of range for {F.n_vars} variables")
    f = F.field
    out: dict[Exponent, Scalar] = {}
    for e, c in F._terms.items():
        ne = e[:i] + e[i + 1:]
        out[ne] = f.norm(out.get(ne, 0) + c)
    return Poly._raw(f, F.n_vars - 1, {e: c for e, c in out.items() if c != 0})


def homogenize(f: Poly, degree: int, position: int | None = None) -> HomogeneousPoly:
    """Inverse of ``dehomogenize``: insert the new variable at ``position`` (default last)."""
    if position is None:
        position = f.n_vars
    out = {}
    for e, c in f._terms.items():
        k = degree - sum(e)
        if k < 0:
            raise ValueError(f"term of degree {sum(e)} exceeds {degree}")
        out[e[:position] + (k,) + e[position:]] = c
    return HomogeneousPoly._raw_h(f.field, f.n_vars + 1, degree, out)


def homogeneous_component(f: Poly, e: int) -> Poly:
    return f.homogeneous_component(e)


def tail_decomposition(F: HomogeneousPoly) -> list[HomogeneousPoly]:
    """Unique P_0..P_N with F = sum X_i P_i and P_i a form in X_i..X_N only.

    Each monomial goes to the index of its first nonzero exponent.
    """
    n, d, f = F.n_vars, F.degree, F.field
    parts: list[dict] = [{} for _ in range(n)]
    for e, c in F._terms.items():
        i = next(j for j, x in enumerate(e) if x)
        ne = list(e)
        ne[i] -= 1
        parts[i][tuple(ne)] = c
    return [HomogeneousPoly._raw_h(f, n, max(d - 1, 0), p) for p in parts]


def monomials(n_vars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree ``degree``, in descending grlex order."""
    if n_vars == 0:
        return [()] if degree == 0 else []
    if n_vars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(n_vars - 1, degree - first))
    return out
