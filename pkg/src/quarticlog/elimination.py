"""Dense integer elimination engines.

The sparse Poly layer is convenient but slow for the big eliminations
(degree-hundreds resultants, quotient-ring certificates).  Everything heavy
funnels through this module: dense integer univariate arithmetic, primitive
PRS gcds, Collins subresultant resultants with a Bareiss/Sylvester oracle,
interpolation resultants for bivariate integer polynomials, Yun square-free
decomposition, and arithmetic in quotient rings Q[x]/(m) used for the exact
"all roots at once" certificates.

Dense convention: c[i] is the coefficient of X^i (constant term first).
"""

from __future__ import annotations

from math import gcd as _igcd

from .errors import (
    CertificationError,
    DegreeError,
    ExactDivisionError,
    ZeroPolynomialError,
)
from .rationals import Rat, rat

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    def mpz(x):
        return int(x)


# ---------------------------------------------------------------------------
# dense integer univariate arithmetic


def trim(c: list) -> list:
    d = len(c) - 1
    while d >= 0 and c[d] == 0:
        d -= 1
    return c[: d + 1]


def degree(c: list) -> int:
    return len(trim(c)) - 1


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def neg(a: list) -> list:
    return [-x for x in a]


def sub(a: list, b: list) -> list:
    return add(a, neg(b))


def scale(a: list, k) -> list:
    if k == 0:
        return []
    return [x * k for x in a]


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def mul_xk(a: list, k: int) -> list:
    if not a:
        return []
    return [0] * k + list(a)


def deriv(a: list) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


def eval_at(a: list, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def content(a: list) -> int:
    g = 0
    for c in a:
        g = _igcd(g, abs(int(c)))
        if g == 1:
            return 1
    return g if g else 1


def primitive(a: list) -> list:
    a = trim(a)
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def divmod_exact(a: list, d: list) -> list:
    """Exact quotient a/d in Z[x]; raises if the division is not exact."""
    a = trim(list(a))
    d = trim(d)
    if not d:
        raise ZeroPolynomialError("division by zero polynomial")
    q = [0] * (len(a) - len(d) + 1) if len(a) >= len(d) else []
    lc = d[-1]
    while len(a) >= len(d) and a:
        head, r = divmod(a[-1], lc)
        if r != 0:
            raise ExactDivisionError("inexact integer polynomial division")
        k = len(a) - len(d)
        q[k] = head
        for i, c in enumerate(d):
            a[k + i] -= head * c
        a = trim(a)
    if a:
        raise ExactDivisionError("division leaves remainder of degree %d" % (len(a) - 1))
    return trim(q)


def pseudo_rem(a: list, b: list) -> list:
    """prem(a, b) with the exact lc(b)^(da-db+1) normalization."""
    a = trim(list(a))
    b = trim(b)
    if not b:
        raise ZeroPolynomialError("pseudo-division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lc = b[-1]
    n = da - db + 1
    r = a
    while r and len(r) - 1 >= db:
        n -= 1
        lead = r[-1]
        k = len(r) - 1 - db
        r = [lc * c for c in r]
        for i, c in enumerate(b):
            r[k + i] -= lead * c
        r = trim(r)
    if n > 0:
        f = lc ** n
        r = [c * f for c in r]
    return r


def gcd_int(a: list, b: list) -> list:
    """Primitive gcd in Z[x] (positive leading coefficient)."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree_part_int(a: list) -> list:
    a = primitive(a)
    if not a:
        raise ZeroPolynomialError("square-free part of zero")
    if len(a) == 1:
        return [1]
    g = gcd_int(a, deriv(a))
    if len(g) == 1:
        return a
    return primitive(divmod_exact(a, g))


def is_squarefree_int(a: list) -> bool:
    a = trim(a)
    if len(a) <= 1:
        return bool(a)
    return len(gcd_int(a, deriv(a))) == 1


def yun_squarefree_decomposition(a: list) -> list:
    """Yun's algorithm: returns [(factor, multiplicity), ...], factors primitive,
    pairwise coprime and square-free, with a = content * prod factor^mult."""
    a = primitive(a)
    if not a:
        raise ZeroPolynomialError("square-free decomposition of zero")
    if len(a) == 1:
        return []
    out = []
    g = gcd_int(a, deriv(a))
    c = divmod_exact(a, g)
    d = sub(divmod_exact(deriv(a), g), deriv(c))
    i = 1
    while True:
        if len(c) == 1 and c[0] in (1, -1):
            break
        p = gcd_int(c, d)
        c2 = divmod_exact(c, p)
        d = sub(divmod_exact(d, p), deriv(c2))
        if len(p) > 1:
            out.append((primitive(p), i))
        c = c2
        i += 1
    return out


# ---------------------------------------------------------------------------
# resultants


def resultant_int(a: list, b: list) -> int:
    """Resultant via the Collins subresultant PRS; equals det(Sylvester)."""
    a, b = trim(list(a)), trim(list(b))
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        raise ZeroPolynomialError("resultant with zero polynomial")
    if da == 0:
        return int(a[0]) ** db if db >= 0 else 1
    if db == 0:
        return int(b[0]) ** da
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if (da * db) % 2 == 1:
            sign = -sign
    g, h = 1, 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = pseudo_rem(a, b)
        a = b
        if not r:
            return 0
        div = g * h ** delta
        b = [c // div for c in r]
        for c, orig in zip(b, r):
            if c * div != orig:
                raise ExactDivisionError("subresultant division failed")
        g = a[-1]
        if delta >= 1:
            h = g ** delta // h ** (delta - 1)
        if len(b) - 1 == 0:
            dlast = len(a) - 1
            if dlast == 0:
                return sign * int(b[0])
            num = b[0] ** dlast
            if dlast >= 2:
                den = h ** (dlast - 1)
                q, rr = divmod(num, den)
                if rr:
                    raise ExactDivisionError("subresultant final division failed")
                return sign * int(q)
            return sign * int(num)


def bareiss_det(rows: list) -> int:
    """Fraction-free integer determinant (oracle and interpolation engine)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[mpz(x) for x in row] for row in rows]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            lik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return int(sign * m[n - 1][n - 1])


def sylvester_matrix_int(a: list, b: list) -> list:
    a, b = trim(a), trim(b)
    m, n = len(a) - 1, len(b) - 1
    if m <= 0 or n <= 0:
        raise DegreeError("sylvester matrix needs positive degrees")
    size = m + n
    arev = list(reversed(a))
    brev = list(reversed(b))
    rows = []
    for i in range(n):
        rows.append([0] * i + arev + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + brev + [0] * (size - n - 1 - i))
    return rows


def resultant_int_sylvester(a: list, b: list) -> int:
    return bareiss_det(sylvester_matrix_int(a, b))


# ---------------------------------------------------------------------------
# exact interpolation


def newton_interpolate(xs: list, ys: list) -> list:
    """Exact polynomial through (xs[i], ys[i]); returns dense Rat list."""
    n = len(xs)
    coef = [rat(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form
    poly = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        # poly = poly*(X - xs[i]) + coef[i]
        shifted = [rat(0)] + poly
        poly = [shifted[k] - (poly[k] * xs[i] if k < len(poly) else 0) for k in range(len(shifted))]
        poly[0] += coef[i]
    out = []
    for c in poly:
        out.append(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def newton_interpolate_int(xs: list, ys: list) -> list:
    out = newton_interpolate(xs, ys)
    result = []
    for c in out:
        if c.denominator != 1:
            raise CertificationError("interpolated polynomial is not integral")
        result.append(int(c.numerator))
    return result


# ---------------------------------------------------------------------------
# bivariate integer polynomials: P[j] = dense coefficient list (in the
# secondary variable) of main^j


def bi_degree_main(P: list) -> int:
    d = len(P) - 1
    while d >= 0 and not trim(P[d]):
        d -= 1
    return d


def bi_degree_sec(P: list) -> int:
    return max((degree(c) for c in P if trim(c)), default=-1)


def bi_eval_sec(P: list, s0: int) -> list:
    """Specialize the secondary variable at an integer; dense list in main."""
    return trim([eval_at(c, s0) for c in P])


def resultant_bivariate_int(P: list, Q: list) -> list:
    """Res w.r.t. the main variable of two integer bivariate polynomials.

    Evaluation/interpolation: the secondary variable is specialized at
    integer nodes where neither leading coefficient drops, the univariate
    resultant is taken by fraction-free Sylvester determinants, and the
    result is interpolated exactly.  Returns a dense integer list in the
    secondary variable.
    """
    dP, dQ = bi_degree_main(P), bi_degree_main(Q)
    if dP <= 0 or dQ <= 0:
        raise DegreeError("bivariate resultant needs positive main degrees")
    lcP, lcQ = P[dP], Q[dQ]
    bound = bi_degree_sec(P) * dQ + bi_degree_sec(Q) * dP
    n_points = bound + 1
    xs, ys = [], []
    s0 = 0
    tried = 0
    while len(xs) < n_points:
        cand = (s0 + 1) // 2 * (1 if s0 % 2 else -1)  # 0, 1, -1, 2, -2, ...
        s0 += 1
        tried += 1
        if tried > 4 * n_points + 64:
            raise CertificationError("could not find enough interpolation nodes")
        if eval_at(lcP, cand) == 0 or eval_at(lcQ, cand) == 0:
            continue
        pv = bi_eval_sec(P, cand)
        qv = bi_eval_sec(Q, cand)
        xs.append(cand)
        ys.append(resultant_int_sylvester(pv, qv))
    return newton_interpolate_int(xs, ys)


def poly_to_bi(p, main: str, sec: str):
    """Poly -> (bivariate int rep, denominator cleared).

    p may involve only `main` and `sec`.
    """
    for v in p.vars:
        if v not in (main, sec) and p.degree_in(v) > 0:
            raise DegreeError("polynomial involves extra variable %r" % v)
    im = p.vars.index(main)
    isec = p.vars.index(sec)
    den = 1
    for c in p.terms.values():
        d = int(c.denominator)
        den = den * d // _igcd(den, d)
    dm = max((e[im] for e in p.terms), default=0)
    ds = max((e[isec] for e in p.terms), default=0)
    out = [[0] * (ds + 1) for _ in range(dm + 1)]
    for e, c in p.terms.items():
        out[e[im]][e[isec]] += int(c.numerator) * (den // int(c.denominator))
    return [trim(row) for row in out], den


def poly_to_dense1(p, var: str):
    """Univariate Poly -> (dense int list, cleared denominator)."""
    for v in p.vars:
        if v != var and p.degree_in(v) > 0:
            raise DegreeError("polynomial involves extra variable %r" % v)
    iv = p.vars.index(var)
    den = 1
    for c in p.terms.values():
        d = int(c.denominator)
        den = den * d // _igcd(den, d)
    out = [0] * (p.degree_in(var) + 1 if not p.is_zero() else 0)
    for e, c in p.terms.items():
        out[e[iv]] += int(c.numerator) * (den // int(c.denominator))
    return trim(out), den


def dense1_to_poly(c: list, var: str, vars=None):
    from .polynomials import Poly, variables

    if vars is None:
        vars = variables(var)
    iv = vars.index(var)
    terms = {}
    for k, coeff in enumerate(trim(c)):
        if coeff:
            e = [0] * len(vars)
            e[iv] = k
            terms[tuple(e)] = rat(coeff)
    return Poly(vars, terms)


# ---------------------------------------------------------------------------
# quotient ring Q[x]/(m)


class QuotRing:
    """Arithmetic in Q[x]/(m) for a square-free integer modulus m.

    Elements are dense Rat lists of length deg(m).  Identities checked here
    hold simultaneously at every root of m, which is what turns per-point
    geometry into 24-at-once / 28-at-once certificates.
    """

    def __init__(self, modulus: list):
        modulus = trim([int(c) for c in modulus])
        if len(modulus) < 2:
            raise DegreeError("quotient ring modulus must have degree >= 1")
        self.modulus = modulus
        self.deg = len(modulus) - 1
        lc = rat(modulus[-1])
        self.monic = [rat(c) / lc for c in modulus]

    def zero(self):
        return [rat(0)] * self.deg

    def one(self):
        return self.element([1])

    def element(self, coeffs) -> list:
        return self.reduce([rat(c) for c in coeffs])

    def reduce(self, coeffs: list) -> list:
        c = [rat(x) for x in coeffs]
        m = self.monic
        d = self.deg
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead == 0:
                continue
            for i in range(d):
                c[k - d + i] -= lead * m[i]
            c[k] = rat(0)
        out = c[:d]
        while len(out) < d:
            out.append(rat(0))
        return out

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def sub(self, a, b):
        return [x - y for x, y in zip(a, b)]

    def scale(self, a, k):
        k = rat(k)
        return [x * k for x in a]

    def mul(self, a, b):
        out = [rat(0)] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] += x * y
        return self.reduce(out)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def lift_int(self, a):
        """Clear denominators: returns (int list, den) with a = list/den."""
        den = 1
        for c in a:
            d = int(c.denominator)
            den = den * d // _igcd(den, d)
        return trim([int(c.numerator) * (den // int(c.denominator)) for c in a]), den

    def invertible(self, a) -> bool:
        lift, _ = self.lift_int(a)
        if not lift:
            return False
        return len(gcd_int(lift, self.modulus)) == 1

    def invert(self, a):
        """Inverse via the extended Euclidean algorithm over Q."""

        def rtrim(c):
            while c and c[-1] == 0:
                c.pop()
            return c

        def rsub(x, y):
            n = max(len(x), len(y))
            return rtrim(
                [
                    (x[i] if i < len(x) else rat(0)) - (y[i] if i < len(y) else rat(0))
                    for i in range(n)
                ]
            )

        def rmul(x, y):
            if not x or not y:
                return []
            out = [rat(0)] * (len(x) + len(y) - 1)
            for i, xi in enumerate(x):
                if xi == 0:
                    continue
                for j, yj in enumerate(y):
                    out[i + j] += xi * yj
            return rtrim(out)

        def rdivmod(x, y):
            q = [rat(0)] * max(len(x) - len(y) + 1, 0)
            r = list(x)
            lc = y[-1]
            dy = len(y) - 1
            while r and len(r) - 1 >= dy:
                k = len(r) - 1 - dy
                f = r[-1] / lc
                q[k] = f
                for i, c in enumerate(y):
                    r[k + i] -= f * c
                r = rtrim(r)
            return rtrim(q), r

        r0 = rtrim([rat(c) for c in self.monic])
        r1 = rtrim([rat(c) for c in a])
        s0, s1 = [], [rat(1)]
        while r1:
            q, r = rdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, rsub(s0, rmul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element is a zero divisor in the quotient ring")
        inv = [c / r0[0] for c in s0]
        return self.reduce(inv)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def pow(self, a, n: int):
        result = self.one()
        base = list(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def eval_poly(self, coeffs: list, elem):
        """Evaluate a univariate polynomial (dense, constant first) at elem."""
        acc = self.zero()
        for c in reversed(list(coeffs)):
            acc = self.mul(acc, elem)
            acc[0] += rat(c)
        return self.reduce(acc)

    def eval_bipoly(self, P: list, elem_main, elem_sec):
        """Evaluate bivariate int rep (main-major) at ring elements."""
        acc = self.zero()
        for row in reversed(P):
            acc = self.mul(acc, elem_main)
            acc = self.add(acc, self.eval_poly(row, elem_sec))
        return acc


def charpoly_of_fraction(modulus: list, num: list, den_: list) -> list:
    """Characteristic polynomial (up to a nonzero constant) of u/v on Q[x]/(m).

    m square-free, v invertible mod m: returns an integer dense list in T
    proportional to prod over roots r of m of (T - u(r)/v(r)).
    Computed as Res_x(m(x), T*v(x) - u(x)) by interpolation in T.
    """
    m = trim([int(c) for c in modulus])
    u = trim([int(c) for c in num])
    v = trim([int(c) for c in den_])
    dm = len(m) - 1
    xs, ys = [], []
    t0 = 0
    while len(xs) < dm + 1:
        cand = (t0 + 1) // 2 * (1 if t0 % 2 else -1)
        t0 += 1
        lin = sub(scale(v, cand), u)
        if not lin:
            continue
        if len(lin) - 1 == 0:
            ys.append(int(lin[0]) ** dm)
        else:
            ys.append(resultant_int(m, lin))
        xs.append(cand)
    return newton_interpolate_int(xs, ys)


def proportional(a: list, b: list) -> bool:
    """True if the integer polynomials agree up to a nonzero rational factor."""
    a, b = trim(a), trim(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return primitive(a) == primitive(b)


# ---------------------------------------------------------------------------
# integer quotient ring (monic modulus): fraction-free certificates


def scale_variable_poly(p: list, lam: int, target_deg: int = None) -> list:
    """lam^d * p(y / lam) for d = target_deg (default deg p); integer output."""
    p = trim([int(c) for c in p])
    if not p:
        return []
    d = len(p) - 1 if target_deg is None else target_deg
    return trim([int(c) * lam ** (d - k) for k, c in enumerate(p)])


class IntQuotRing:
    """Z[y]/(M) with M monic over Z; all element arithmetic stays integral.

    Built from a primitive modulus m(x) with leading coefficient a via the
    substitution y = a*x (so M(y) = a^(deg-1) * m(y/a)).  Unit rescalings of
    elements are harmless for the vanishing / invertibility certificates
    computed here.
    """

    def __init__(self, monic_modulus: list):
        m = trim([int(c) for c in monic_modulus])
        if len(m) < 2 or m[-1] != 1:
            raise DegreeError("IntQuotRing needs a monic modulus of degree >= 1")
        self.modulus = m
        self.deg = len(m) - 1

    @classmethod
    def from_primitive(cls, modulus: list):
        """Returns (ring, a) with ring modulus a^(n-1) m(y/a); roots y = a*x."""
        m = primitive(modulus)
        a = int(m[-1])
        n = len(m) - 1
        monic = [int(c) * a ** (n - 1 - k) for k, c in enumerate(m)]
        monic[-1] = 1
        return cls(monic), a

    def zero(self):
        return []

    def one(self):
        return [1]

    def element(self, coeffs) -> list:
        return self.reduce([int(c) for c in coeffs])

    def reduce(self, coeffs: list) -> list:
        c = [int(x) for x in coeffs]
        m = self.modulus
        d = self.deg
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead == 0:
                continue
            for i in range(d):
                c[k - d + i] -= lead * m[i]
            c[k] = 0
        return trim(c[:d])

    def add(self, a, b):
        return add(a, b)

    def sub(self, a, b):
        return sub(a, b)

    def scale(self, a, k):
        return scale(a, int(k))

    def mul(self, a, b):
        if not a or not b:
            return []
        return self.reduce(mul(a, b))

    def is_zero(self, a) -> bool:
        return not trim(a)

    def invertible(self, a) -> bool:
        a = trim(a)
        if not a:
            return False
        return len(gcd_int(a, self.modulus)) == 1

    def invert(self, a):
        """(v, den) with a*v = den (a nonzero integer) in the ring.

        Solved fraction-free from the multiplication matrix of a, so no
        rational arithmetic blowup.
        """
        a = self.reduce(a)
        if not a:
            raise ZeroDivisionError("zero element")
        n = self.deg
        cols = []
        cur = list(a)
        for _ in range(n):
            col = list(cur) + [0] * (n - len(cur))
            cols.append(col)
            cur = self.reduce(mul_xk(cur, 1))
        # solve M v = e1 by fraction-free elimination (Cramer via Bareiss)
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        det = bareiss_det(mat)
        if det == 0:
            raise ZeroDivisionError("element is a zero divisor in the quotient ring")
        v = []
        for j in range(n):
            mj = [row[:] for row in mat]
            for i in range(n):
                mj[i][j] = 1 if i == 0 else 0
            v.append(bareiss_det(mj))
        g = 0
        for c in v + [det]:
            g = _igcd(g, abs(int(c)))
        if g > 1:
            v = [c // g for c in v]
            det //= g
        if det < 0:
            v, det = [-c for c in v], -det
        return trim(v), int(det)

    def eval_poly(self, coeffs: list, elem):
        acc = []
        for c in reversed(list(coeffs)):
            acc = self.mul(acc, elem) if acc else []
            acc = self.add(acc, [int(c)])
        return self.reduce(acc)

    def eval_bipoly_fraction(self, P: list, s_elem, t_num, t_den):
        """P(s, t) * t_den^deg_t evaluated at s = s_elem, t = t_num/t_den.

        P is main-major in t (P[j] = dense s-coefficient int list).  The
        result differs from the true value by the unit t_den^deg_t, which
        preserves vanishing and invertibility.
        """
        dt = len(P) - 1
        acc = []
        parts = []
        for j, row in enumerate(P):
            parts.append((j, self.eval_poly(row, s_elem)))
        den_pows = [self.one()]
        for _ in range(dt):
            den_pows.append(self.mul(den_pows[-1], t_den))
        num_pows = [self.one()]
        for _ in range(dt):
            num_pows.append(self.mul(num_pows[-1], t_num))
        for j, val in parts:
            term = self.mul(val, self.mul(num_pows[j], den_pows[dt - j]))
            acc = self.add(acc, term)
        return self.reduce(acc)
