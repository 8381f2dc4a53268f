"""Sparse multivariate polynomials over exact rationals.

The representation is an exponent-vector map with a fixed global variable
order (x, y, z, s, t, u, v, w).  No zero coefficients are ever stored, all
operations are pure, and results are canonical, so equality is literal
dictionary equality.

Elimination primitives live here as well: subresultant PRS resultants (with
a dense Sylvester determinant kept as an independent oracle), discriminants
with a fixed, documented sign normalization, gcd and square-free parts, and
the text format used by the CLI and file interchange.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ContextMismatchError,
    DegreeError,
    ExactDivisionError,
    ParseError,
    ZeroPolynomialError,
)
from .rationals import ONE, Rat, ZERO, rat, rat_str

#: Global variable order; every context is a subsequence of this tuple.
VARIABLE_ORDER = ("x", "y", "z", "s", "t", "u", "v", "w")

_VAR_RANK = {name: i for i, name in enumerate(VARIABLE_ORDER)}


def variables(*names: str) -> tuple:
    """Return the canonical context tuple for the given variable names."""
    for n in names:
        if n not in _VAR_RANK:
            raise ParseError("unknown variable %r (allowed: %s)" % (n, ", ".join(VARIABLE_ORDER)))
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable in context: %r" % (names,))
    return tuple(sorted(names, key=_VAR_RANK.__getitem__))


class Poly:
    """Immutable sparse polynomial with Rat coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple, terms: dict):
        # Internal constructor: `terms` must already be canonical
        # (no zero coefficients, exponent tuples of the right length).
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, vars: tuple, items) -> "Poly":
        terms = {}
        n = len(vars)
        for expo, coeff in dict(items).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != n or any(e < 0 for e in expo):
                raise ParseError("bad exponent vector %r for context %r" % (expo, vars))
            c = rat(coeff)
            if c != 0:
                terms[expo] = terms.get(expo, ZERO) + c
        return cls(vars, {e: c for e, c in terms.items() if c != 0})

    @classmethod
    def zero(cls, vars: tuple) -> "Poly":
        return cls(vars, {})

    @classmethod
    def const(cls, value, vars: tuple) -> "Poly":
        c = rat(value)
        if c == 0:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: tuple) -> "Poly":
        if name not in vars:
            raise ContextMismatchError("variable %r not in context %r" % (name, vars))
        expo = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {expo: ONE})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_value(self) -> Rat:
        if self.is_zero():
            return ZERO
        if not self.is_constant():
            raise DegreeError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ContextMismatchError("variable %r not in context %r" % (name, self.vars))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise ContextMismatchError(
                "contexts differ: %r vs %r" % (self.vars, other.vars)
            )

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = out.get(e, ZERO) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = rat(c)
        if c == 0:
            return Poly.zero(self.vars)
        return Poly(self.vars, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DegreeError("negative power")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and composition --------------------------------------

    def derivative(self, name: str) -> "Poly":
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            out[ne] = out.get(ne, ZERO) + c * e[i]
        return Poly(self.vars, {e: c for e, c in out.items() if c != 0})

    def evaluate(self, point: dict) -> Rat:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ContextMismatchError("no value for variables %r" % (missing,))
        vals = [rat(point[v]) for v in self.vars]
        total = ZERO
        powcache = [dict() for _ in self.vars]
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powcache[i].get(k)
                    if p is None:
                        p = vals[i] ** k
                        powcache[i][k] = p
                    term = term * p
            total += term
        return total

    def substitute(self, assignments: dict) -> "Poly":
        """Exact composition; unsubstituted variables map to themselves.

        All image polynomials must share one context, which must also
        contain every unsubstituted variable of self.
        """
        images = {}
        ctx = None
        for v, img in assignments.items():
            self._index(v)
            if not isinstance(img, Poly):
                raise ContextMismatchError("substitution image for %r is not a Poly" % v)
            if ctx is None:
                ctx = img.vars
            elif img.vars != ctx:
                raise ContextMismatchError("substitution images have mixed contexts")
            images[v] = img
        if ctx is None:
            ctx = self.vars
        for v in self.vars:
            if v not in images:
                images[v] = Poly.var(v, ctx)  # raises if v missing from ctx
        out = Poly.zero(ctx)
        powcache = {v: {0: Poly.const(1, ctx)} for v in self.vars}
        for e, c in self.terms.items():
            term = Poly.const(c, ctx)
            for v, k in zip(self.vars, e):
                if k:
                    cache = powcache[v]
                    if k not in cache:
                        cache[k] = images[v] ** k
                    term = term * cache[k]
            out = out + term
        return out

    # -- univariate views ----------------------------------------------

    def coefficients_in(self, name: str) -> list:
        """Dense list of coefficient polynomials, index = power of `name`."""
        i = self._index(name)
        d = self.degree_in(name)
        buckets = [dict() for _ in range(d + 1)] if d >= 0 else []
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1 :]
            buckets[e[i]][ne] = c
        return [Poly(self.vars, b) for b in buckets]

    @classmethod
    def from_coefficients(cls, coeffs, name: str, vars: tuple) -> "Poly":
        i = vars.index(name)
        out = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                if e[i] != 0:
                    raise ContextMismatchError("coefficient %d already involves %r" % (k, name))
                ne = e[:i] + (k,) + e[i + 1 :]
                out[ne] = c
        return cls(vars, out)

    def leading_coefficient_in(self, name: str) -> "Poly":
        coeffs = self.coefficients_in(name)
        if not coeffs:
            return Poly.zero(self.vars)
        return coeffs[-1]

    # -- normal forms ---------------------------------------------------

    def content(self) -> Rat:
        """Positive rational c with self/c integral, coprime coefficients."""
        if not self.terms:
            return ONE
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(int(c.numerator)))
            den = den * int(c.denominator) // gcd(den, int(c.denominator))
        return Rat(num, den)

    def primitive_part(self) -> "Poly":
        if not self.terms:
            return self
        p = self.scale(1 / self.content())
        if p.terms[_grlex_leading(p.terms)] < 0:
            p = -p
        return p

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact multivariate division; raises if the remainder is nonzero."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        if divisor.is_constant():
            return self.scale(1 / divisor.constant_value())
        rem = dict(self.terms)
        lead = _grlex_leading(divisor.terms)
        lc = divisor.terms[lead]
        qterms = {}
        while rem:
            e = _grlex_leading(rem)
            q = tuple(a - b for a, b in zip(e, lead))
            if any(k < 0 for k in q):
                raise ExactDivisionError("division leaves a remainder")
            c = rem[e] / lc
            qterms[q] = qterms.get(q, ZERO) + c
            for de, dc in divisor.terms.items():
                ne = tuple(a + b for a, b in zip(q, de))
                s = rem.get(ne, ZERO) - c * dc
                if s == 0:
                    rem.pop(ne, None)
                else:
                    rem[ne] = s
        return Poly(self.vars, {e: c for e, c in qterms.items() if c != 0})

    def divides(self, other: "Poly") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ExactDivisionError, ZeroPolynomialError):
            return False

    # -- printing -------------------------------------------------------

    def __repr__(self):
        return "Poly(%s)" % to_text(self)

    def __str__(self):
        return to_text(self)


def _grlex_leading(terms: dict) -> tuple:
    """Leading exponent in graded-lexicographic order."""
    return max(terms, key=lambda e: (sum(e), e))


def _grlex_sorted(terms: dict) -> list:
    return sorted(terms, key=lambda e: (sum(e), e), reverse=True)


# ---------------------------------------------------------------------------
# spec-surface operations


def ring_arith(p: Poly, q: Poly, kind: str) -> Poly:
    """Dispatch add/sub/mul; kept as the one-call arithmetic surface."""
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError("kind must be add, sub or mul")


def partial_derivative(p: Poly, name: str) -> Poly:
    return p.derivative(name)


def substitute(p: Poly, assignments: dict) -> Poly:
    return p.substitute(assignments)


# ---------------------------------------------------------------------------
# pseudo-division and the subresultant PRS over Poly coefficients


def _uv_degree(coeffs: list) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d].is_zero():
        d -= 1
    return d


def _uv_trim(coeffs: list) -> list:
    return coeffs[: _uv_degree(coeffs) + 1]


def _uv_scale(coeffs: list, f: Poly) -> list:
    return [c * f for c in coeffs]


def _uv_sub(a: list, b: list, vars) -> list:
    n = max(len(a), len(b))
    zero = Poly.zero(vars)
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x - y)
    return _uv_trim(out)


def _uv_shift_mul(coeffs: list, k: int) -> list:
    if not coeffs:
        return []
    zero = Poly.zero(coeffs[0].vars)
    return [zero] * k + list(coeffs)


def _pseudo_rem(a: list, b: list, vars) -> list:
    """prem(a,b): lc(b)^(deg a - deg b + 1) * a  mod  b, exactly."""
    da, db = _uv_degree(a), _uv_degree(b)
    if db < 0:
        raise ZeroPolynomialError("pseudo-division by zero")
    r = list(a)
    lc_b = b[db]
    n = da - db + 1
    while True:
        dr = _uv_degree(r)
        if dr < db:
            break
        n -= 1
        lead = r[dr]
        r = _uv_sub(_uv_scale(r, lc_b), _uv_shift_mul(_uv_scale(b, lead), dr - db), vars)
    # Degree can drop by more than one per step; pad to the exact prem factor.
    if n > 0:
        r = _uv_scale(r, lc_b ** n)
    return _uv_trim(r)


def _exact_div_list(coeffs: list, d: Poly) -> list:
    return [c.exact_div(d) for c in coeffs]


def subresultant_chain(p: Poly, q: Poly, name: str) -> list:
    """Subresultant polynomial remainder sequence of p, q in `name`.

    Returns the PRS as a list of Poly, beginning with p, q.  The chain
    elements agree with the classical subresultants up to sign, which is
    all that downstream vanishing-locus extraction needs.
    """
    p._check(q)
    a = p.coefficients_in(name)
    b = q.coefficients_in(name)
    if _uv_degree(a) < 0 or _uv_degree(b) < 0:
        raise ZeroPolynomialError("subresultant chain of a zero polynomial")
    if _uv_degree(a) < _uv_degree(b):
        a, b = b, a
    vars = p.vars
    chain = [a, b]
    one = Poly.const(1, vars)
    g, h = one, one
    while True:
        da, db = _uv_degree(a), _uv_degree(b)
        delta = da - db
        r = _pseudo_rem(a, b, vars)
        if _uv_degree(r) < 0:
            break
        divisor = g * (h ** delta)
        a, b = b, _exact_div_list(r, divisor)
        chain.append(b)
        g = a[_uv_degree(a)]
        if delta >= 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if _uv_degree(b) == 0:
            break
    return [Poly.from_coefficients(c, name, vars) for c in chain]


def resultant(p: Poly, q: Poly, name: str) -> Poly:
    """res(p, q) w.r.t. `name` via the subresultant PRS.

    Normalized to equal the Sylvester-matrix determinant exactly (the dense
    determinant is kept as a test oracle).  Both inputs must have positive
    degree in `name`.
    """
    p._check(q)
    a = _uv_trim(p.coefficients_in(name))
    b = _uv_trim(q.coefficients_in(name))
    da, db = _uv_degree(a), _uv_degree(b)
    if da <= 0 or db <= 0:
        raise DegreeError("resultant needs positive degree in %r" % name)
    vars = p.vars
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if (da * db) % 2 == 1:
            sign = -sign
    one = Poly.const(1, vars)
    g, h = one, one
    while True:
        da, db = _uv_degree(a), _uv_degree(b)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _pseudo_rem(a, b, vars)
        a = b
        if _uv_degree(r) < 0:
            return Poly.zero(vars)
        b = _exact_div_list(r, g * (h ** delta))
        g = a[_uv_degree(a)]
        if delta >= 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if _uv_degree(b) == 0:
            dlast = _uv_degree(a)
            lc = b[0]
            res = (lc ** dlast).exact_div(h ** (dlast - 1)) if dlast >= 1 else lc
            return res.scale(sign)


def sylvester_matrix(p: Poly, q: Poly, name: str) -> list:
    """Sylvester matrix of p, q w.r.t. `name`, entries in the coefficient ring."""
    a = _uv_trim(p.coefficients_in(name))
    b = _uv_trim(q.coefficients_in(name))
    m, n = _uv_degree(a), _uv_degree(b)
    if m <= 0 or n <= 0:
        raise DegreeError("sylvester matrix needs positive degrees")
    vars = p.vars
    zero = Poly.zero(vars)
    size = m + n
    rows = []
    arev = list(reversed(a))
    brev = list(reversed(b))
    for i in range(n):
        rows.append([zero] * i + arev + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + brev + [zero] * (size - n - 1 - i))
    return rows


def _bareiss_det(rows: list, vars) -> Poly:
    """Fraction-free determinant over a ring with exact division."""
    n = len(rows)
    m = [row[:] for row in rows]
    one = Poly.const(1, vars)
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero(vars)
        prev = m[k][k]
    return m[n - 1][n - 1].scale(sign)


def sylvester_resultant(p: Poly, q: Poly, name: str) -> Poly:
    """Dense Sylvester-determinant resultant (test oracle for `resultant`)."""
    return _bareiss_det(sylvester_matrix(p, q, name), p.vars)


def discriminant(p: Poly, name: str) -> Poly:
    """disc = (-1)^(n(n-1)/2) res(p, p') / lc, n = deg.

    Sign normalization is fixed here once; e.g. disc(x^2+bx+c) = b^2-4c and
    the discriminant of a monic quartic is the squared product of root
    differences with no extra sign.
    """
    n = p.degree_in(name)
    if n < 2:
        raise DegreeError("discriminant needs degree >= 2 in %r" % name)
    res = resultant(p, p.derivative(name), name)
    lc = p.leading_coefficient_in(name)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res.exact_div(lc).scale(sign)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd over the rationals (unit-normalized)."""
    p._check(q)
    if p.is_zero():
        return q.primitive_part()
    if q.is_zero():
        return p.primitive_part()
    if p.is_constant() or q.is_constant():
        return Poly.const(1, p.vars)
    name = next(v for v in p.vars if p.degree_in(v) > 0 or q.degree_in(v) > 0)
    if p.degree_in(name) == 0 or q.degree_in(name) == 0:
        # one input is free of `name`: recurse into its coefficients
        free, other = (p, q) if p.degree_in(name) == 0 else (q, p)
        g = free
        for c in other.coefficients_in(name):
            g = poly_gcd(g, c)
            if g.is_constant():
                return Poly.const(1, p.vars)
        return g.primitive_part()
    a, cont_a = _primitive_in(p, name)
    b, cont_b = _primitive_in(q, name)
    cont = poly_gcd(cont_a, cont_b)
    # primitive PRS
    while True:
        if b.degree_in(name) < 0 or b.is_zero():
            break
        r = _pseudo_rem(a.coefficients_in(name), b.coefficients_in(name), p.vars)
        rp = Poly.from_coefficients(r, name, p.vars) if r else Poly.zero(p.vars)
        a, b = b, _primitive_in(rp, name)[0] if not rp.is_zero() else Poly.zero(p.vars)
    g = _primitive_in(a, name)[0]
    return (g * cont).primitive_part()


def _primitive_in(p: Poly, name: str):
    """Split p = cont * pp with cont free of `name`, pp primitive in `name`."""
    coeffs = p.coefficients_in(name)
    cont = Poly.zero(p.vars)
    for c in coeffs:
        cont = poly_gcd(cont, c) if not cont.is_zero() else c.primitive_part()
        if cont.is_constant():
            cont = Poly.const(1, p.vars)
            break
    if cont.is_zero():
        return p, Poly.const(1, p.vars)
    return p.exact_div(cont), cont


def squarefree_part(p: Poly, name: str) -> Poly:
    """p / gcd(p, dp/d`name`), content-normalized."""
    if p.is_zero():
        raise ZeroPolynomialError("square-free part of zero")
    if p.degree_in(name) == 0:
        return p.primitive_part()
    g = poly_gcd(p, p.derivative(name))
    return p.exact_div(g).primitive_part()


# ---------------------------------------------------------------------------
# text format: sum of `c*x^a*y^b` terms, graded-lex ordering, exact round-trip

_TERM_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*((?:\*\s*[a-z]\s*\^\s*\d+\s*)*)$")
_FACTOR_RE = re.compile(r"\*\s*([a-z])\s*\^\s*(\d+)")


def to_text(p: Poly) -> str:
    """Canonical text form; parse(to_text(p)) == p exactly."""
    if p.is_zero():
        return "0"
    parts = []
    for e in _grlex_sorted(p.terms):
        factors = [rat_str(p.terms[e])]
        for v, k in zip(p.vars, e):
            if k:
                factors.append("%s^%d" % (v, k))
        parts.append("*".join(factors))
    return " + ".join(parts)


def from_text(text: str, vars: tuple = None) -> Poly:
    """Parse the text format; `vars` defaults to the variables that appear."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial text")
    chunks = text.split("+")
    seen = set()
    raw_terms = []
    for chunk in chunks:
        m = _TERM_RE.match(chunk.strip())
        if not m:
            raise ParseError("bad polynomial term %r" % chunk.strip())
        coeff = rat(m.group(1))
        expo = {}
        for v, k in _FACTOR_RE.findall(m.group(2)):
            if v in expo:
                raise ParseError("repeated variable %r in term %r" % (v, chunk.strip()))
            expo[v] = int(k)
            seen.add(v)
        raw_terms.append((coeff, expo))
    if vars is None:
        vars = variables(*sorted(seen, key=_VAR_RANK.get)) if seen else ("x",)
    for v in seen:
        if v not in vars:
            raise ParseError("variable %r not in context %r" % (v, vars))
    out = {}
    for coeff, expo in raw_terms:
        e = tuple(expo.get(v, 0) for v in vars)
        out[e] = out.get(e, ZERO) + coeff
    return Poly(vars, {e: c for e, c in out.items() if c != 0})


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryQuartic:
    """a0*x^4 + a1*x^3*w + a2*x^2*w^2 + a3*x*w^3 + a4*w^4, not identically zero."""

    a0: Rat
    a1: Rat
    a2: Rat
    a3: Rat
    a4: Rat

    def __post_init__(self):
        for f in ("a0", "a1", "a2", "a3", "a4"):
            object.__setattr__(self, f, rat(getattr(self, f)))
        if all(getattr(self, f) == 0 for f in ("a0", "a1", "a2", "a3", "a4")):
            raise ZeroPolynomialError("binary quartic must be nonzero")

    def coefficients(self) -> tuple:
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    def dehomogenized(self) -> list:
        """Coefficients of f(x, 1) as a dense list, constant first."""
        return [self.a4, self.a3, self.a2, self.a1, self.a0]

    def evaluate(self, x, w) -> Rat:
        x, w = rat(x), rat(w)
        return (
            self.a0 * x ** 4
            + self.a1 * x ** 3 * w
            + self.a2 * x ** 2 * w ** 2
            + self.a3 * x * w ** 3
            + self.a4 * w ** 4
        )

    def reparametrized(self, a, b, c, d) -> "BinaryQuartic":
        """Substitute x -> a*x + b*w, w -> c*x + d*w (GL2 change of parameter)."""
        ctx = variables("x", "w")
        p = Poly.from_terms(
            ctx,
            {
                (4, 0): self.a0,
                (3, 1): self.a1,
                (2, 2): self.a2,
                (1, 3): self.a3,
                (0, 4): self.a4,
            },
        )
        X = Poly.var("x", ctx).scale(a) + Poly.var("w", ctx).scale(b)
        W = Poly.var("x", ctx).scale(c) + Poly.var("w", ctx).scale(d)
        q = p.substitute({"x": X, "w": W})
        return BinaryQuartic(
            q.terms.get((4, 0), ZERO),
            q.terms.get((3, 1), ZERO),
            q.terms.get((2, 2), ZERO),
            q.terms.get((1, 3), ZERO),
            q.terms.get((0, 4), ZERO),
        )
