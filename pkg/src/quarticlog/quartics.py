"""Geometry of a smooth plane quartic.

Smoothness certification, Hessian and flexes, tangent / flex / bitangent
lines, the dual curve, and line contact profiles.  All headline counts (24
flexes, 28 bitangents, dual degree 12) are produced with exact elimination
certificates; numeric boxes are attached for display only.

Chart conventions: lines are written y = s*x + t*z, i.e. dual coordinates
(s, -1, t), the affine chart of the dual plane that misses only the pencil
through [0:1:0].  A quartic F is restricted to the family by substituting
(x, y, z) -> (X, s*X + t*W, W), producing a binary quartic in (X, W) whose
coefficients b_k(s, t) drive every dual-plane elimination.  Coordinate
shears are applied (and certified) whenever a chart degeneracy shows up.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field

from . import elimination as el
from .errors import (
    CertificationError,
    DegreeError,
    GenericityError,
    ParseError,
    SingularQuarticError,
    ZeroPolynomialError,
)
from .isolation import (
    ComplexBox,
    RootCluster,
    box_add,
    box_div,
    box_mul,
    box_sub,
    eval_poly_box,
    isolate_roots,
)
from .polynomials import (
    BinaryQuartic,
    Poly,
    poly_gcd,
    resultant,
    subresultant_chain,
    variables,
)
from .rationals import Rat, rat, rat_str

XYZ = variables("x", "y", "z")
ST = variables("s", "t")
XSTW = variables("x", "s", "t", "w")

#: Degree-4 monomials in (x, y, z), graded-lex order (the file format order).
MONOMIALS_DEG4 = [
    (4, 0, 0), (3, 1, 0), (3, 0, 1), (2, 2, 0), (2, 1, 1), (2, 0, 2),
    (1, 3, 0), (1, 2, 1), (1, 1, 2), (1, 0, 3), (0, 4, 0), (0, 3, 1),
    (0, 2, 2), (0, 1, 3), (0, 0, 4),
]


# ---------------------------------------------------------------------------
# points, lines, profiles


def _is_boxed(c) -> bool:
    return isinstance(c, ComplexBox)


def _as_box(c) -> ComplexBox:
    return c if _is_boxed(c) else ComplexBox.exact(rat(c))


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates; entries are Rat or certified ComplexBox."""

    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 3:
            raise ValueError("projective point needs 3 coordinates")
        if all((not _is_boxed(c)) and rat(c) == 0 for c in self.coords):
            raise ValueError("projective point cannot be (0,0,0)")

    def is_rational(self) -> bool:
        return all(not _is_boxed(c) for c in self.coords)

    def normalized(self) -> "ProjectivePoint":
        """Scale the last nonzero rational coordinate to 1 (rational points)."""
        if not self.is_rational():
            return self
        cs = [rat(c) for c in self.coords]
        pivot = next(c for c in reversed(cs) if c != 0)
        return ProjectivePoint(tuple(c / pivot for c in cs))

    def boxes(self) -> tuple:
        return tuple(_as_box(c) for c in self.coords)

    def __repr__(self):
        return "ProjectivePoint(%s)" % (", ".join(str(c) for c in self.coords))


@dataclass(frozen=True)
class ProjectiveLine:
    """Dual coordinates (a, b, c) for a*x + b*y + c*z = 0."""

    a: object
    b: object
    c: object
    profile: tuple = field(default=None, compare=False)
    hyperflex: bool = field(default=False, compare=False)

    def coords(self):
        return (self.a, self.b, self.c)

    def is_rational(self) -> bool:
        return all(not _is_boxed(v) for v in self.coords())

    def normalized(self) -> "ProjectiveLine":
        if not self.is_rational():
            return self
        cs = [rat(v) for v in self.coords()]
        pivot = max(cs, key=lambda v: abs(v))
        return ProjectiveLine(cs[0] / pivot, cs[1] / pivot, cs[2] / pivot,
                              profile=self.profile, hyperflex=self.hyperflex)

    @classmethod
    def from_chart(cls, s, t, **kw):
        """Line y = s*x + t*z, i.e. dual coordinates (s, -1, t)."""
        return cls(s, rat(-1), t, **kw)

    def chart_coords(self):
        """(s, t) with the line written as y = s*x + t*z; needs b != 0."""
        a, b, c = self.coords()
        if _is_boxed(a) or _is_boxed(b) or _is_boxed(c):
            bb = _as_box(b)
            inv = box_div(ComplexBox.exact(-1), bb)
            if inv is None:
                raise ZeroDivisionError("line may pass through [0:1:0]")
            return box_mul(_as_box(a), inv), box_mul(_as_box(c), inv)
        if rat(b) == 0:
            raise ZeroDivisionError("line passes through [0:1:0]; no chart form")
        return -rat(a) / rat(b), -rat(c) / rat(b)

    def contains(self, p: ProjectivePoint) -> bool:
        """Exact incidence for rational data; enclosure test for boxes."""
        vals = [_as_box(v) for v in self.coords()]
        pts = p.boxes()
        acc = ComplexBox.exact(0)
        for v, q in zip(vals, pts):
            acc = box_add(acc, box_mul(v, q))
        if self.is_rational() and p.is_rational():
            return acc.contains_value(0, 0) and acc.width() == 0
        return acc.contains_value(0, 0)

    def __repr__(self):
        return "ProjectiveLine(%s)" % (", ".join(str(v) for v in self.coords()))


def contact_profile_tuple(multiplicities) -> tuple:
    prof = tuple(sorted((int(m) for m in multiplicities), reverse=True))
    if sum(prof) != 4:
        raise DegreeError("contact profile must sum to 4, got %r" % (prof,))
    return prof


# ---------------------------------------------------------------------------
# the quartic itself


def poly_from_coeffs(coeffs) -> Poly:
    if len(coeffs) != 15:
        raise ParseError("a plane quartic needs 15 coefficients, got %d" % len(coeffs))
    terms = {}
    for mono, c in zip(MONOMIALS_DEG4, coeffs):
        c = rat(c)
        if c != 0:
            terms[mono] = c
    return Poly(XYZ, terms)


def coeffs_from_poly(F: Poly) -> tuple:
    if F.vars != XYZ:
        raise ParseError("quartic polynomial must live in (x, y, z)")
    for e in F.terms:
        if sum(e) != 4:
            raise ParseError("quartic polynomial must be homogeneous of degree 4")
    return tuple(F.terms.get(m, rat(0)) for m in MONOMIALS_DEG4)


class PlaneQuartic:
    """Smooth homogeneous quartic form; smoothness is certified at construction."""

    def __init__(self, coeffs, _certificate=None):
        self.coeffs = tuple(rat(c) for c in coeffs)
        if len(self.coeffs) != 15:
            raise ParseError("a plane quartic needs 15 coefficients")
        self.poly = poly_from_coeffs(self.coeffs)
        if self.poly.is_zero():
            raise ZeroPolynomialError("zero quartic")
        # internal integer-primitive model (same projective curve)
        content = self.poly.content()
        self.int_poly = self.poly.scale(1 / content)
        self.int_coeffs = tuple(int(c.numerator) for c in
                                (self.int_poly.terms.get(m, rat(0)) for m in MONOMIALS_DEG4))
        self.smoothness_certificate = _certificate or assert_smooth(self.poly)
        self._cache = {}

    @classmethod
    def from_poly(cls, F: Poly) -> "PlaneQuartic":
        return cls(coeffs_from_poly(F))

    def __repr__(self):
        return "PlaneQuartic(%s)" % str(self.poly)

    def __eq__(self, other):
        return isinstance(other, PlaneQuartic) and self.int_poly == other.int_poly

    def __hash__(self):
        return hash(self.int_poly)

    def transformed(self, matrix) -> "PlaneQuartic":
        """Quartic G with G(p) = F(M p)."""
        G = transform_poly(self.poly, matrix)
        return PlaneQuartic(coeffs_from_poly(G))

    def file_text(self) -> str:
        lines = ["quartic-v1"]
        lines.append(" ".join(rat_str(c) for c in self.coeffs))
        return "\n".join(lines) + "\n"


def parse_quartic_text(text: str) -> PlaneQuartic:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != "quartic-v1":
        raise ParseError("missing quartic-v1 format tag")
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != 15:
        raise ParseError("expected 15 coefficients, got %d" % len(tokens))
    try:
        coeffs = [rat(tok) for tok in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("bad rational coefficient: %s" % exc)
    return PlaneQuartic(coeffs)


def transform_poly(F: Poly, matrix) -> Poly:
    """F(M x) for a 3x3 rational matrix M acting on (x, y, z)."""
    xs = [Poly.var(v, XYZ) for v in ("x", "y", "z")]
    images = {}
    for i, v in enumerate(("x", "y", "z")):
        row = matrix[i]
        img = Poly.zero(XYZ)
        for j in range(3):
            img = img + xs[j].scale(rat(row[j]))
        images[v] = img
    return F.substitute(images)


def _matrix_inverse(m):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = rat(a) * (rat(e) * rat(i) - rat(f) * rat(h)) - rat(b) * (
        rat(d) * rat(i) - rat(f) * rat(g)
    ) + rat(c) * (rat(d) * rat(h) - rat(e) * rat(g))
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [
        [rat(e) * rat(i) - rat(f) * rat(h), rat(c) * rat(h) - rat(b) * rat(i),
         rat(b) * rat(f) - rat(c) * rat(e)],
        [rat(f) * rat(g) - rat(d) * rat(i), rat(a) * rat(i) - rat(c) * rat(g),
         rat(c) * rat(d) - rat(a) * rat(f)],
        [rat(d) * rat(h) - rat(e) * rat(g), rat(b) * rat(g) - rat(a) * rat(h),
         rat(a) * rat(e) - rat(b) * rat(d)],
    ]
    return [[cof[r][cc] / det for cc in range(3)] for r in range(3)]


def _shear_matrices(limit: int = 24):
    """Identity first, then seeded small unimodular changes of coordinates."""
    yield [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rng = _random.Random(0x5EED)
    for _ in range(limit):
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        d, e, f = (rng.randint(-3, 3) for _ in range(3))
        upper = [[1, a, b], [0, 1, c], [0, 0, 1]]
        lower = [[1, 0, 0], [d, 1, 0], [e, f, 1]]
        m = [
            [sum(upper[i][k] * lower[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)
        ]
        yield m


# ---------------------------------------------------------------------------
# smoothness


@dataclass(frozen=True)
class SmoothnessCertificate:
    """Exact witness that the partials have no common projective zero."""

    shear: tuple
    affine_eliminants: tuple  # degrees of the two x-eliminants
    affine_gcd_degree: int
    infinity_gcd_degree: int

    def holds(self) -> bool:
        return self.affine_gcd_degree == 0 and self.infinity_gcd_degree == 0


def _binary_form_common_root(forms) -> bool:
    """Do the given binary forms in (x, y) share a projective root?"""
    dehoms = []
    all_drop = True
    for f in forms:
        coeffs = f.coefficients_in("x")
        dense = []
        den = 1
        for k, c in enumerate(coeffs):
            val = c.substitute({}).evaluate({v: 1 for v in f.vars})
            dense.append(val)
        deg_total = f.total_degree()
        if not f.is_zero() and f.degree_in("x") == deg_total:
            all_drop = False
        ints, _ = _rat_list_to_int(dense)
        dehoms.append(ints)
    if all_drop:
        return True  # common root at [1:0]
    g = None
    for d in dehoms:
        if not el.trim(d):
            continue
        g = d if g is None else el.gcd_int(g, d)
    if g is None:
        return True
    return len(el.trim(g)) - 1 >= 1


def _rat_list_to_int(values):
    from math import gcd as _g

    den = 1
    for v in values:
        dv = int(rat(v).denominator)
        den = den * dv // _g(den, dv)
    return [int(rat(v).numerator) * (den // int(rat(v).denominator)) for v in values], den


def assert_smooth(F: Poly) -> SmoothnessCertificate:
    """Certify that V(F_x, F_y, F_z) is empty, or raise with a singular locus.

    The certificate is exact: after a certified chart shear, the two
    x-eliminants of the affine partial system have coprime contents and the
    z = 0 stratum carries no common root of the restricted partials.
    """
    for e in F.terms:
        if sum(e) != 4:
            raise DegreeError("smoothness check expects a homogeneous quartic")
    if F.is_zero():
        raise ZeroPolynomialError("zero quartic")
    Fx, Fy, Fz = (F.derivative(v) for v in ("x", "y", "z"))
    g = poly_gcd(poly_gcd(Fx, Fy), Fz)
    if not g.is_constant():
        raise SingularQuarticError(
            "partials share the factor %s; its zero locus is singular" % g, locus=str(g)
        )
    last_candidates = None
    for idx, m in enumerate(_shear_matrices()):
        G = transform_poly(F, m)
        result = _smooth_certificate_sheared(G, idx)
        if result == "smooth-cert-pending":
            continue
        if isinstance(result, SmoothnessCertificate):
            return result
        # result is a list of exact singular points in sheared coords
        if result:
            minv = _matrix_inverse(m)
            pt = result[0]
            orig = tuple(
                sum(rat(m[i][j]) * pt[j] for j in range(3)) for i in range(3)
            )
            raise SingularQuarticError(
                "singular point at %s" % (orig,), locus=orig
            )
        last_candidates = result
    raise SingularQuarticError(
        "no shear produced a clean smoothness certificate; singular locus suspected",
        locus=last_candidates,
    )


def _smooth_certificate_sheared(G: Poly, shear_idx: int):
    Gx, Gy, Gz = (G.derivative(v) for v in ("x", "y", "z"))
    # chart genericity: leading y-coefficients of the affine partials must
    # be (nonzero) constants, which holds iff these quartic coefficients do
    need = [(1, 3, 0), (0, 4, 0), (0, 3, 1)]
    if any(G.terms.get(mono, rat(0)) == 0 for mono in need):
        return "smooth-cert-pending"
    sub = {
        "x": Poly.var("x", variables("x", "y")),
        "y": Poly.var("y", variables("x", "y")),
        "z": Poly.const(1, variables("x", "y")),
    }
    A, B, C = (P.substitute(sub) for P in (Gx, Gy, Gz))
    S1 = resultant(A, B, "y")
    S2 = resultant(A, C, "y")
    if S1.is_zero() or S2.is_zero():
        return "smooth-cert-pending"
    s1, _ = el.poly_to_dense1(S1, "x")
    s2, _ = el.poly_to_dense1(S2, "x")
    g = el.gcd_int(s1, s2)
    gdeg = len(el.trim(g)) - 1
    # z = 0 stratum
    sub0 = {
        "x": Poly.var("x", variables("x", "y")),
        "y": Poly.var("y", variables("x", "y")),
        "z": Poly.zero(variables("x", "y")),
    }
    a0, b0, c0 = (P.substitute(sub0) for P in (Gx, Gy, Gz))
    inf_bad = _binary_form_common_root([a0, b0, c0])
    if gdeg == 0 and not inf_bad:
        return SmoothnessCertificate(
            shear=(shear_idx,),
            affine_eliminants=(S1.degree_in("x"), S2.degree_in("x")),
            affine_gcd_degree=0,
            infinity_gcd_degree=0,
        )
    # try to pin an exact singular point through rational roots of the gcd
    singular_points = []
    if gdeg >= 1:
        for x0 in _rational_roots(g):
            ax = _specialize_x(A, x0)
            bx = _specialize_x(B, x0)
            cx = _specialize_x(C, x0)
            gy = el.gcd_int(*(_rat_list_to_int(ax)[0], _rat_list_to_int(bx)[0]))
            for y0 in _rational_roots(gy):
                cval = sum(rat(c) * y0 ** i for i, c in enumerate(cx))
                if cval == 0:
                    singular_points.append((x0, y0, rat(1)))
    if singular_points:
        return singular_points
    return "smooth-cert-pending"


def _specialize_x(P: Poly, x0):
    coeffs = P.coefficients_in("y")
    return [c.evaluate({"x": x0, "y": 0}) for c in coeffs]


def _rational_roots(dense_int):
    """All rational roots of an integer polynomial (exact)."""
    f = el.trim([int(c) for c in dense_int])
    if not f:
        return []
    # strip x^k
    k = 0
    while f and f[0] == 0:
        f = f[1:]
        k += 1
    out = [rat(0)] if k else []
    if len(f) <= 1:
        return out
    lead, const = abs(f[-1]), abs(f[0])

    def divisors(n):
        n = abs(int(n))
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return sorted(out)

    for p in divisors(const):
        for q in divisors(lead):
            for sgn in (1, -1):
                cand = Rat(sgn * p, q)
                if el.eval_at(f, cand) == 0 and cand not in out:
                    out.append(cand)
    return out


# ---------------------------------------------------------------------------
# hessian and line sections


def hessian(Q) -> Poly:
    """Determinant of the matrix of second partials; degree 6."""
    F = Q.poly if isinstance(Q, PlaneQuartic) else Q
    vs = ("x", "y", "z")
    d2 = [[F.derivative(a).derivative(b) for b in vs] for a in vs]
    return (
        d2[0][0] * (d2[1][1] * d2[2][2] - d2[1][2] * d2[2][1])
        - d2[0][1] * (d2[1][0] * d2[2][2] - d2[1][2] * d2[2][0])
        + d2[0][2] * (d2[1][0] * d2[2][1] - d2[1][1] * d2[2][0])
    )


@dataclass(frozen=True)
class LineSection:
    """Restriction data of the quartic to the chart family y = s*x + t*z.

    b[k] is the coefficient of X^(4-k) W^k of F(X, sX + tW, W) as a Poly in
    (s, t); inv_quadratic (degree 4) and inv_cubic (degree 6) are the
    classical degree-2/degree-3 coefficient invariants of that binary
    quartic, and disc = 4*inv_quadratic^3 - inv_cubic^2 cuts out the dual
    curve (degree 12).
    """

    b: tuple
    inv_quadratic: Poly
    inv_cubic: Poly
    disc: Poly


def line_section(Q: PlaneQuartic) -> LineSection:
    if "section" in Q._cache:
        return Q._cache["section"]
    F = Q.int_poly
    x = Poly.var("x", XSTW)
    s = Poly.var("s", XSTW)
    t = Poly.var("t", XSTW)
    w = Poly.var("w", XSTW)
    restr = F.substitute({"x": x, "y": s * x + t * w, "z": w})
    b = []
    for k in range(5):
        coeff = Poly.zero(ST)
        for e, c in restr.terms.items():
            ex, es, et, ew = e
            if ex == 4 - k and ew == k:
                coeff = coeff + Poly.from_terms(ST, {(es, et): c})
        b.append(coeff)
    b = tuple(b)
    S = (b[0] * b[4]).scale(12) - (b[1] * b[3]).scale(3) + b[2] * b[2]
    T = (
        (b[0] * b[2] * b[4]).scale(72)
        + (b[1] * b[2] * b[3]).scale(9)
        - (b[0] * b[3] * b[3]).scale(27)
        - (b[1] * b[1] * b[4]).scale(27)
        - (b[2] ** 3).scale(2)
    )
    disc = (S ** 3).scale(4) - T * T
    section = LineSection(b=b, inv_quadratic=S, inv_cubic=T, disc=disc)
    Q._cache["section"] = section
    return section


def restrict_to_line(Q: PlaneQuartic, line: ProjectiveLine) -> BinaryQuartic:
    """Binary quartic of the 4 intersection points on a rational line."""
    if not line.is_rational():
        raise CertificationError("exact restriction needs a rational line")
    a, b, c = (rat(v) for v in line.coords())
    candidates = [(rat(0), c, -b), (c, rat(0), -a), (b, -a, rat(0))]
    basis = []
    for v in candidates:
        if any(x != 0 for x in v):
            if not basis:
                basis.append(v)
            else:
                p = basis[0]
                cross = (
                    p[1] * v[2] - p[2] * v[1],
                    p[2] * v[0] - p[0] * v[2],
                    p[0] * v[1] - p[1] * v[0],
                )
                if any(x != 0 for x in cross):
                    basis.append(v)
                    break
    if len(basis) < 2:
        raise ZeroPolynomialError("degenerate line")
    p0, p1 = basis
    XW = variables("x", "w")
    X = Poly.var("x", XW)
    W = Poly.var("w", XW)
    images = {
        "x": X.scale(p0[0]) + W.scale(p1[0]),
        "y": X.scale(p0[1]) + W.scale(p1[1]),
        "z": X.scale(p0[2]) + W.scale(p1[2]),
    }
    r = Q.poly.substitute(images)
    return BinaryQuartic(
        r.terms.get((4, 0), rat(0)),
        r.terms.get((3, 1), rat(0)),
        r.terms.get((2, 2), rat(0)),
        r.terms.get((1, 3), rat(0)),
        r.terms.get((0, 4), rat(0)),
    )


def contact_profile(line: ProjectiveLine, Q: PlaneQuartic) -> tuple:
    """Multiset of intersection multiplicities of the line with the quartic."""
    B = restrict_to_line(Q, line)
    dense, _ = _rat_list_to_int(B.dehomogenized())
    dense = el.trim(dense)
    if not dense:
        raise ZeroPolynomialError("line lies on the quartic (impossible when smooth)")
    mult_at_infinity = 4 - (len(dense) - 1)
    profile = []
    low = 0
    while dense[low] == 0:
        low += 1
    if low:
        profile.append(low)  # root at X = 0
        dense = dense[low:]
    for factor, mult in el.yun_squarefree_decomposition(dense):
        profile.extend([mult] * (len(factor) - 1))
    if mult_at_infinity:
        profile.append(mult_at_infinity)
    return contact_profile_tuple(profile)


def tangent_line(Q: PlaneQuartic, p: ProjectivePoint) -> ProjectiveLine:
    """Tangent line at a point of the quartic: dual coords grad F(p)."""
    if p.is_rational():
        point = {v: rat(c) for v, c in zip(("x", "y", "z"), p.coords)}
        if Q.poly.evaluate(point) != 0:
            raise CertificationError("point does not lie on the quartic")
        grads = [Q.poly.derivative(v).evaluate(point) for v in ("x", "y", "z")]
        if all(g == 0 for g in grads):
            raise SingularQuarticError("vanishing gradient", locus=p)
        return ProjectiveLine(*grads)
    boxes = p.boxes()
    grads = []
    for v in ("x", "y", "z"):
        dP = Q.poly.derivative(v)
        acc = ComplexBox.exact(0)
        for e, c in dP.terms.items():
            term = ComplexBox.exact(c)
            for bx, k in zip(boxes, e):
                for _ in range(k):
                    term = box_mul(term, bx)
            acc = box_add(acc, term)
        grads.append(acc)
    return ProjectiveLine(*grads)


# ---------------------------------------------------------------------------
# flex elimination (primal: intersection of the quartic with its Hessian)


@dataclass
class FlexFactor:
    """One square-free factor of the flex eliminant with its fiber lift.

    The unique point above each root x0 of `factor` is (x0, 1, z0) in the
    sheared chart with z0 = num(x0) / den(x0); den is coprime to factor.
    """

    factor: list
    multiplicity: int
    num: list
    den: list


@dataclass
class FlexElimination:
    """Exact flex scheme: a degree-24 eliminant plus per-factor fiber data."""

    shear_index: int
    matrix: list
    inv_matrix: list
    eliminant: list  # dense int, degree 24, in the sheared chart (y = 1)
    factors: list  # list[FlexFactor]

    def total_multiplicity(self) -> int:
        return sum(f.multiplicity * (len(f.factor) - 1) for f in self.factors)


def _dense_z_coeffs(G: Poly):
    """G(x, 1, z) as a list over z-powers of dense-int x-coefficient lists."""
    rows = []
    for c in G.coefficients_in("z"):
        xs = c.coefficients_in("x")
        vals = [p.evaluate({"x": 0, "y": 1, "z": 0}) for p in xs]
        ints, den = _rat_list_to_int(vals)
        if den != 1:
            raise CertificationError("expected integer coefficients")
        rows.append(ints)
    return rows


def _eval_rows_at(rows, x0):
    return el.trim([el.eval_at(r, x0) for r in rows])


def _quotring_poly_gcd(ring: el.QuotRing, A: list, B: list) -> list:
    """Monic gcd of two polynomials with QuotRing coefficients (Euclid)."""

    def ztrim(c):
        while c and ring.is_zero(c[-1]):
            c.pop()
        return c

    A = ztrim([list(e) for e in A])
    B = ztrim([list(e) for e in B])
    if not A and not B:
        raise ZeroPolynomialError("gcd of zero polynomials")
    while B:
        inv = ring.invert(B[-1])  # raises ZeroDivisionError on zero divisors
        Bm = [ring.mul(c, inv) for c in B]
        R = [list(c) for c in A]
        while len(R) >= len(Bm):
            lead = R[-1]
            k = len(R) - len(Bm)
            for i, c in enumerate(Bm):
                R[k + i] = ring.sub(R[k + i], ring.mul(lead, c))
            R = ztrim(R)
            if not R:
                break
        A, B = Bm, R
    inv = ring.invert(A[-1])
    return [ring.mul(c, inv) for c in A]


def flex_elimination(Q: PlaneQuartic) -> FlexElimination:
    """Eliminate z from (F, hessian F); certified per-factor fiber lifts."""
    if "flex_elim" in Q._cache:
        return Q._cache["flex_elim"]
    last_error = "no shear attempted"
    for idx, m in enumerate(_shear_matrices()):
        G = transform_poly(Q.int_poly, m)
        H = hessian(G)
        lcG = G.terms.get((0, 0, 4), rat(0))
        lcH = H.terms.get((0, 0, 6), rat(0))
        if lcG == 0 or lcH == 0:
            last_error = "z-leading coefficient vanished"
            continue
        rows_g = _dense_z_coeffs(G)
        rows_h = _dense_z_coeffs(H)
        # no flexes on the chart boundary y = 0: check G(1,0,z), H(1,0,z)
        sub_inf = {
            "x": Poly.const(1, XYZ), "y": Poly.const(0, XYZ), "z": Poly.var("z", XYZ)
        }
        gi = G.substitute(sub_inf).coefficients_in("z")
        hi = H.substitute(sub_inf).coefficients_in("z")
        gi_d, _ = _rat_list_to_int([p.constant_value() for p in gi])
        hi_d, _ = _rat_list_to_int([p.constant_value() for p in hi])
        if not el.trim(gi_d) or not el.trim(hi_d):
            last_error = "restriction to y = 0 degenerated"
            continue
        if el.degree(gi_d) >= 1 and el.degree(hi_d) >= 1:
            c_inf = el.resultant_int(gi_d, hi_d)
        else:
            c_inf = gi_d[0] if el.degree(gi_d) == 0 else hi_d[0]
        if c_inf == 0:
            last_error = "a flex sits on the chart boundary"
            continue
        xs, ys = [], []
        for k in range(25):
            x0 = (k + 1) // 2 * (1 if k % 2 else -1)
            gv = _eval_rows_at(rows_g, x0)
            hv = _eval_rows_at(rows_h, x0)
            xs.append(x0)
            ys.append(el.resultant_int(gv, hv))
        r = el.newton_interpolate_int(xs, ys)
        if el.degree(r) != 24:
            last_error = "flex eliminant degree %d != 24" % el.degree(r)
            continue
        # z lift from the level-1 subresultant of (G, H) in z, as a small
        # integer fraction; quotient-ring Euclid is the fallback
        lift = _level_one_fraction(G, H, "z", "x")
        factors = []
        ok = True
        for factor, mult in el.yun_squarefree_decomposition(r):
            frac = None
            if lift is not None:
                num, den = lift
                if len(el.gcd_int(den, factor)) == 1:
                    frac = (num, den)
            if frac is None:
                frac = _fiber_lift_via_ring(factor, rows_g, rows_h)
                if frac is None:
                    ok = False
                    last_error = "fiber over an eliminant root is not a single point"
                    break
            factors.append(FlexFactor(factor=factor, multiplicity=mult,
                                      num=frac[0], den=frac[1]))
        if not ok:
            continue
        elim = FlexElimination(
            shear_index=idx,
            matrix=m,
            inv_matrix=_matrix_inverse(m),
            eliminant=r,
            factors=factors,
        )
        if elim.total_multiplicity() != 24:
            last_error = "flex multiplicities sum to %d" % elim.total_multiplicity()
            continue
        Q._cache["flex_elim"] = elim
        return elim
    raise CertificationError("flex elimination failed: %s" % last_error)


def _level_one_fraction(P: Poly, H: Poly, main: str, keep: str):
    """From the subresultant chain of (P, H) in `main` on the chart y = 1:
    the degree-1 element c1*main + c0, returned as integer lists (-c0, c1)
    in the variable `keep`; None when the chain skips degree 1."""
    sub = {
        "x": Poly.var("x", XYZ), "y": Poly.const(1, XYZ), "z": Poly.var("z", XYZ),
    }
    A = P.substitute(sub)
    B = H.substitute(sub)
    try:
        chain = subresultant_chain(A, B, main)
    except (ZeroPolynomialError, DegreeError):
        return None
    level1 = [c for c in chain if c.degree_in(main) == 1]
    if not level1:
        return None
    s1 = level1[-1]
    coeffs = s1.coefficients_in(main)
    c0, _ = el.poly_to_dense1(coeffs[0], keep)
    c1, _ = el.poly_to_dense1(coeffs[1], keep)
    if not el.trim(c1):
        return None
    return [-c for c in c0], c1


def _fiber_lift_via_ring(factor, rows_g, rows_h):
    """Fallback unique-fiber lift through quotient-ring Euclid."""
    ring = el.QuotRing(factor)
    x_elem = ring.element([0, 1])
    A = [ring.eval_poly(row, x_elem) for row in rows_g]
    B = [ring.eval_poly(row, x_elem) for row in rows_h]
    try:
        g = _quotring_poly_gcd(ring, A, B)
    except ZeroDivisionError:
        return None
    if len(g) != 2:
        return None
    num, den = ring.lift_int(ring.scale(g[0], -1))
    return num, [den]


def _eval_fraction_box(num, den, box, factor, precision):
    """num(box)/den(box), refining the root box until den excludes zero."""
    from .isolation import RootCluster, refine

    prec = precision
    while True:
        nb = eval_poly_box(num, box)
        db = eval_poly_box(den, box)
        q = box_div(nb, db)
        if q is not None:
            return q, box
        prec *= 2
        if prec > 4096:
            raise CertificationError("fiber denominator box would not separate from 0")
        cl = RootCluster(box=box, multiplicity=1, squarefree_level=1,
                         _factor=tuple(factor), _method="newton")
        box = refine(cl, prec).box


def flex_points(Q: PlaneQuartic, precision: int = 96) -> list:
    """All flexes with multiplicities; total multiplicity is exactly 24."""
    elim = flex_elimination(Q)
    out = []
    for ff in elim.factors:
        clusters = isolate_roots(ff.factor, precision=precision)
        for cl in clusters:
            zbox, xbox = _eval_fraction_box(ff.num, ff.den, cl.box, ff.factor, precision)
            sheared = (xbox, ComplexBox.exact(1), zbox)
            coords = []
            for i in range(3):
                acc = ComplexBox.exact(0)
                for j in range(3):
                    acc = box_add(acc, box_mul(ComplexBox.exact(rat(elim.matrix[i][j])), sheared[j]))
                coords.append(acc)
            out.append((ProjectivePoint(tuple(coords)), ff.multiplicity))
    out.sort(key=lambda pm: tuple(b.center() for b in pm[0].boxes()))
    assert sum(m for _, m in out) == 24
    return out


def _flex_tangent_contact_data(Q: PlaneQuartic):
    """Per flex factor: tangent-line duals and contact certificates.

    In each quotient ring the tangent line at the flex is parametrized and
    the restriction's Taylor coefficients c2, c3 along it are computed:
    c2 = 0 certifies contact >= 3, c3 invertible certifies no hyperflex
    (c3 = 0 certifies a uniform hyperflex factor, e.g. the diagonal quartic).
    """
    if "flex_tangent" in Q._cache:
        return Q._cache["flex_tangent"]
    elim = flex_elimination(Q)
    G = transform_poly(Q.int_poly, elim.matrix)
    # shears are unimodular, so the inverse transpose is integral
    minv_t = [[int(rat(elim.inv_matrix[j][i])) for j in range(3)] for i in range(3)]
    data = []
    for ff in elim.factors:
        ring, a = el.IntQuotRing.from_primitive(ff.factor)
        # point (x, 1, z) scaled to integral coordinates in y = a*x:
        # (y*den(y), a*den(y), a*num(y)) with num, den rescaled to equal target degree
        d_target = max(el.degree(ff.num), el.degree(ff.den), 0)
        num_s = el.scale_variable_poly(ff.num, a, d_target)
        den_s = el.scale_variable_poly(ff.den, a, d_target)
        den_e = ring.element(den_s)
        num_e = ring.element(num_s)
        y_elem = ring.element([0, 1])
        pt = (
            ring.mul(y_elem, den_e),
            ring.scale(den_e, a),
            ring.scale(num_e, a),
        )
        grads = [_ring_eval_xyz(ring, G.derivative(v), pt) for v in ("x", "y", "z")]
        # transform the sheared dual back to original coordinates
        duals = []
        for i in range(3):
            acc = ring.zero()
            for j in range(3):
                acc = ring.add(acc, ring.scale(grads[j], minv_t[i][j]))
            duals.append(acc)
        # second point on the tangent line (in sheared coords): q = (v, -u, 0)
        u, v = grads[0], grads[1]
        q = (v, ring.scale(u, -1), ring.zero())
        c2, c3 = _line_contact_coeffs(ring, G, pt, q)
        data.append(
            {
                "factor": ff.factor,
                "multiplicity": ff.multiplicity,
                "ring": ring,
                "var_scale": a,
                "point": pt,
                "grad_sheared": grads,
                "dual": duals,
                "c2": c2,
                "c3": c3,
            }
        )
    Q._cache["flex_tangent"] = data
    return data


def _ring_eval_xyz(ring: el.QuotRing, P: Poly, pt):
    """Evaluate a Poly in (x, y, z) at a triple of ring elements."""
    acc = ring.zero()
    pows = [dict(), dict(), dict()]

    def power(i, k):
        if k == 0:
            return ring.one()
        if k not in pows[i]:
            pows[i][k] = ring.mul(power(i, k - 1), pt[i])
        return pows[i][k]

    for e, c in P.terms.items():
        term = ring.element([c])
        for i, k in enumerate(e):
            if k:
                term = ring.mul(term, power(i, k))
        acc = ring.add(acc, term)
    return acc


def _line_contact_coeffs(ring: el.QuotRing, G: Poly, pt, q):
    """Taylor coefficients c2, c3 of G along the line X*pt + W*q at W = 0."""
    # expand G(X*pt + W*q) and collect the X^(4-k) W^k coefficients k = 2, 3
    coeffs = {k: ring.zero() for k in range(5)}
    # multinomial expansion per monomial of G
    for e, c in G.terms.items():
        # product over coords of (X*pt_i + W*q_i)^e_i
        poly = {0: ring.element([c])}  # W-degree -> ring elem (X-degree implicit)
        for i, k in enumerate(e):
            if k == 0:
                continue
            # (X*p + W*q)^k expanded via repeated multiplication
            base = {0: pt[i], 1: q[i]}
            powk = {0: ring.one()}
            for _ in range(k):
                nxt = {}
                for da, ea in powk.items():
                    for db, eb in base.items():
                        d = da + db
                        prod = ring.mul(ea, eb)
                        if d in nxt:
                            nxt[d] = ring.add(nxt[d], prod)
                        else:
                            nxt[d] = prod
                powk = nxt
            nxt_poly = {}
            for da, ea in poly.items():
                for db, eb in powk.items():
                    d = da + db
                    prod = ring.mul(ea, eb)
                    if d in nxt_poly:
                        nxt_poly[d] = ring.add(nxt_poly[d], prod)
                    else:
                        nxt_poly[d] = prod
            poly = nxt_poly
        for d, elem in poly.items():
            if d <= 4:
                coeffs[d] = ring.add(coeffs[d], elem)
    return coeffs[2], coeffs[3]


def flex_lines(Q: PlaneQuartic, precision: int = 96) -> list:
    """Tangent lines at the flex points, with contact profiles attached.

    Hyperflexes (contact order 4) are flagged on the returned lines rather
    than raised; each line carries boxed dual coordinates.
    """
    data = _flex_tangent_contact_data(Q)
    out = []
    for entry in data:
        ring = entry["ring"]
        if not ring.is_zero(entry["c2"]):
            raise CertificationError("flex contact certificate failed (c2 != 0)")
        c3 = entry["c3"]
        if ring.invertible(c3):
            profile, hyper = (3, 1), False
        elif ring.is_zero(c3):
            profile, hyper = (4,), True
        else:
            raise GenericityError("mixed hyperflex structure inside one factor")
        clusters = isolate_roots(entry["factor"], precision=precision)
        a = entry["var_scale"]
        for cl in clusters:
            ybox = box_mul(ComplexBox.exact(a), cl.box)  # ring variable is y = a*x
            dual_boxes = [eval_poly_box(d, ybox) for d in entry["dual"]]
            out.append(
                ProjectiveLine(
                    dual_boxes[0], dual_boxes[1], dual_boxes[2],
                    profile=profile, hyperflex=hyper,
                )
            )
    return out


# ---------------------------------------------------------------------------
# dual-plane eliminations: flex lines, bitangents, dual curve


def _poly_bi_scaled(P: Poly, a: int):
    """Bivariate int rep of P(s,t), with s rescaled to y = a*s (uniform unit).

    Returns rows (t-major) of dense y-coefficient lists, equal to
    a^deg_s(P) * P(y/a, t).
    """
    rows, den = el.poly_to_bi(P, "t", "s")
    if den != 1:
        raise CertificationError("expected integer section data")
    ds = max((el.degree(r) for r in rows if el.trim(r)), default=0)
    return [el.scale_variable_poly(r, a, ds) for r in rows]


def _level_one_in_t(P: Poly, Q_: Poly):
    """(num, den) integer lists in s with t = num/den on V(P, Q_)."""
    chain = subresultant_chain(P, Q_, "t")
    level1 = [c for c in chain if c.degree_in("t") == 1]
    if not level1:
        return None
    s1 = level1[-1]
    coeffs = s1.coefficients_in("t")
    c0, _ = el.poly_to_dense1(coeffs[0], "s")
    c1, _ = el.poly_to_dense1(coeffs[1], "s")
    if not el.trim(c1):
        return None
    return [-c for c in c0], c1


@dataclass
class DualLocusData:
    """A finite locus of lines cut out in the (s, t) chart.

    eliminant(s) is square-free and integral; on its roots the second
    coordinate is t = num(s)/den(s) with den coprime to the eliminant.
    ring is the integer quotient ring in y = var_scale * s used for the
    all-roots-at-once certificates.
    """

    eliminant: list
    num: list
    den: list
    ring: el.IntQuotRing
    var_scale: int
    certificates: dict

    def count(self) -> int:
        return el.degree(self.eliminant)

    def ring_point(self):
        """(s_elem, t_num, t_den) as consistently scaled ring elements."""
        a = self.var_scale
        D = max(el.degree(self.num), el.degree(self.den), 0)
        num_s = self.ring.element(el.scale_variable_poly(self.num, a, D))
        den_s = self.ring.element(el.scale_variable_poly(self.den, a, D))
        return self.ring.element([0, 1]), num_s, den_s

    def eval_section(self, P: Poly):
        """P(s, t) at the locus, up to units; zero iff P vanishes there."""
        rows = _poly_bi_scaled(P, self.var_scale)
        s_elem, t_num, t_den = self.ring_point()
        return self.ring.eval_bipoly_fraction(rows, s_elem, t_num, t_den)

    def lines(self, precision: int = 96, profile=None, hyperflex=False) -> list:
        out = []
        for cl in isolate_roots(self.eliminant, precision=precision):
            tbox, sbox = _eval_fraction_box(self.num, self.den, cl.box,
                                            self.eliminant, precision)
            out.append(ProjectiveLine(sbox, rat(-1), tbox,
                                      profile=profile, hyperflex=hyperflex))
        return out


def dual_flex_locus(Q: PlaneQuartic) -> DualLocusData:
    """The 24 flex lines as a certified locus V(S, T) in the dual chart.

    S and T are the degree-2 and degree-3 coefficient invariants of the
    restricted binary quartic; their common zeros are exactly the lines
    meeting the quartic with a contact of order >= 3.
    """
    if "dual_flex" in Q._cache:
        return Q._cache["dual_flex"]
    sec = line_section(Q)
    S, T = sec.inv_quadratic, sec.inv_cubic
    if S.total_degree() != 4:
        raise GenericityError("quadratic section invariant has degree %d != 4"
                              % S.total_degree())
    if T.total_degree() != 6:
        raise GenericityError("cubic section invariant has degree %d != 6"
                              % T.total_degree())
    if S.terms.get((0, 4), rat(0)) == 0 or T.terms.get((0, 6), rat(0)) == 0:
        raise GenericityError("section invariant degenerates on the chart boundary")
    Sbi, _ = el.poly_to_bi(S, "t", "s")
    Tbi, _ = el.poly_to_bi(T, "t", "s")
    e_raw = el.resultant_bivariate_int(Sbi, Tbi)
    if el.degree(e_raw) != 24:
        raise GenericityError("flex-line eliminant degree %d != 24" % el.degree(e_raw))
    if not el.is_squarefree_int(e_raw):
        raise GenericityError("flex-line eliminant is not square-free")
    e24 = el.primitive(e_raw)
    frac = _level_one_in_t(S, T)
    if frac is None:
        raise GenericityError("flex-line locus has no linear fiber subresultant")
    num, den = frac
    if len(el.gcd_int(den, e24)) != 1:
        raise GenericityError("flex-line fiber denominator shares a root")
    ring, a = el.IntQuotRing.from_primitive(e24)
    locus = DualLocusData(eliminant=e24, num=num, den=den, ring=ring,
                          var_scale=a, certificates={})
    for name, P in (("inv_quadratic", S), ("inv_cubic", T)):
        if not ring.is_zero(locus.eval_section(P)):
            raise GenericityError("%s does not vanish on the flex-line locus" % name)
        locus.certificates[name + "_vanishes"] = True
    Q._cache["dual_flex"] = locus
    return locus


def bitangent_locus(Q: PlaneQuartic) -> DualLocusData:
    """The 28 bitangents via the perfect-square (double tangency) elimination.

    A line is bitangent iff its restriction is b0 * (x^2 + p*x + q)^2 with
    two distinct roots; eliminating p, q gives two conditions E1, E2 on
    (s, t) whose solutions off the chart-degeneracy junk are certified to
    be exactly 28 perfect-square lines with distinct double points.
    """
    if "bitangent" in Q._cache:
        return Q._cache["bitangent"]
    sec = line_section(Q)
    b0, b1, b2, b3, b4 = sec.b
    E1 = (b0 * b0 * b3).scale(8) - (b0 * b1 * b2).scale(4) + b1 ** 3
    E2 = (b0 ** 3 * b4).scale(64) - ((b0 * b2).scale(4) - b1 * b1) ** 2
    if E1.is_zero() or E2.is_zero():
        raise GenericityError("degenerate double-tangency system")
    if E1.degree_in("t") < 1 or E2.degree_in("t") < 1:
        raise GenericityError("double-tangency system independent of t")
    E1bi, _ = el.poly_to_bi(E1, "t", "s")
    E2bi, _ = el.poly_to_bi(E2, "t", "s")
    ra = el.resultant_bivariate_int(E1bi, E2bi)
    if not el.trim(ra):
        raise GenericityError("double-tangency resultant vanished identically")
    w = el.squarefree_part_int(ra)
    junk = []
    b0d, _ = el.poly_to_dense1(b0, "s")
    junk.append(b0d)
    junk.append(el.gcd_int(E1bi[-1], E2bi[-1]))
    for j in junk:
        if el.degree(j) < 1:
            continue
        while True:
            g = el.gcd_int(w, j)
            if el.degree(g) < 1:
                break
            w = el.divmod_exact(w, g)
    w = el.primitive(w)
    if el.degree(w) != 28:
        raise GenericityError("bitangent eliminant degree %d != 28" % el.degree(w))
    frac = _level_one_in_t(E1, E2)
    if frac is None:
        raise GenericityError("bitangent locus has no linear fiber subresultant")
    num, den = frac
    if len(el.gcd_int(den, w)) != 1:
        raise GenericityError("bitangent fiber denominator shares a root")
    ring, a = el.IntQuotRing.from_primitive(w)
    locus = DualLocusData(eliminant=w, num=num, den=den, ring=ring,
                          var_scale=a, certificates={})
    for name, P in (("double_tangency_1", E1), ("double_tangency_2", E2),
                    ("on_dual_curve", sec.disc)):
        if not ring.is_zero(locus.eval_section(P)):
            raise GenericityError("%s does not vanish on the bitangent locus" % name)
        locus.certificates[name + "_vanishes"] = True
    if not ring.invertible(locus.eval_section(b0)):
        raise GenericityError("a bitangent meets the chart boundary point")
    locus.certificates["chart_leading_coefficient_invertible"] = True
    # distinct double points: 3*b1^2 - 8*b0*b2 != 0 at every bitangent
    sep = (b1 * b1).scale(3) - (b0 * b2).scale(8)
    if not ring.invertible(locus.eval_section(sep)):
        raise GenericityError("a double-tangency line has coincident contact points")
    locus.certificates["contact_points_distinct"] = True
    # method B: the 28 lines are singular points of the dual curve
    for name, P in (("dual_curve_s_derivative", sec.disc.derivative("s")),
                    ("dual_curve_t_derivative", sec.disc.derivative("t"))):
        if not ring.is_zero(locus.eval_section(P)):
            raise GenericityError("bitangent dual point is not singular on the dual curve")
        locus.certificates[name + "_vanishes"] = True
    Q._cache["bitangent"] = locus
    return locus


def bitangent_lines(Q: PlaneQuartic, precision: int = 96) -> list:
    """All 28 bitangent lines (certified contact profile {2, 2})."""
    return bitangent_locus(Q).lines(precision=precision, profile=(2, 2))


@dataclass(frozen=True)
class DualCurveReport:
    equation: Poly
    degree: int
    stripped_factors: tuple
    squarefree_certificate: str


def dual_curve_report(Q: PlaneQuartic) -> DualCurveReport:
    """Square-free dual curve equation in the (s, t) chart, with diagnostics."""
    if "dual_curve" in Q._cache:
        return Q._cache["dual_curve"]
    sec = line_section(Q)
    disc = sec.disc
    disc = disc.primitive_part()
    stripped = []
    cert = _squarefree_probe(disc)
    if cert is None:
        g = poly_gcd(disc, disc.derivative("s"))
        g = poly_gcd(g, disc.derivative("t"))
        if not g.is_constant():
            stripped.append((g, "repeated factor"))
            disc = disc.exact_div(g).primitive_part()
        cert = _squarefree_probe(disc) or "exact gcd reduction"
    report = DualCurveReport(
        equation=disc,
        degree=disc.total_degree(),
        stripped_factors=tuple(stripped),
        squarefree_certificate=cert,
    )
    Q._cache["dual_curve"] = report
    return report


def dual_curve(Q: PlaneQuartic) -> Poly:
    """Degree-12 polynomial in the dual chart vanishing on tangent lines."""
    return dual_curve_report(Q).equation


def _squarefree_probe(P: Poly):
    """Certify bivariate square-freeness via a degree-preserving line probe."""
    rng = _random.Random(0xC0FFEE)
    d = P.total_degree()
    for _ in range(12):
        alpha, beta = rng.randint(-9, 9), rng.randint(-9, 9)
        sub = {
            "s": Poly.var("s", ST),
            "t": Poly.var("s", ST).scale(alpha) + Poly.const(beta, ST),
        }
        u = P.substitute(sub)
        if u.degree_in("s") != d:
            continue
        dense, _ = el.poly_to_dense1(u, "s")
        if el.is_squarefree_int(dense):
            return "restriction to t = %d*s + %d is square-free of full degree" % (alpha, beta)
    return None


# ---------------------------------------------------------------------------
# the gcd-degeneracy locus (violating lines) and genericity certification


def _section_psc1(Q: PlaneQuartic) -> Poly:
    """Level-1 principal subresultant of the restriction and its x-derivative.

    Together with the discriminant it cuts out the lines whose section has
    gcd degree >= 2, i.e. at most two distinct intersection points.
    """
    if "psc1" in Q._cache:
        return Q._cache["psc1"]
    sec = line_section(Q)
    vars3 = variables("x", "s", "t")
    B = Poly.zero(vars3)
    for k, bk in enumerate(sec.b):
        lifted = Poly.from_terms(
            vars3, {(4 - k, e[0], e[1]): c for e, c in bk.terms.items()}
        )
        B = B + lifted
    chain = subresultant_chain(B, B.derivative("x"), "x")
    level1 = [c for c in chain if c.degree_in("x") == 1]
    if not level1:
        raise GenericityError("restriction chain skips the degree-1 subresultant")
    psc1 = level1[-1].coefficients_in("x")[1]
    psc1 = Poly.from_terms(ST, {(e[1], e[2]): c for e, c in psc1.terms.items()})
    Q._cache["psc1"] = psc1
    return psc1


@dataclass(frozen=True)
class ViolatingLineCertificate:
    """Exact factorization of the gcd-degeneracy eliminant.

    resultant = const * flex_eliminant^m1 * bitangent_eliminant^m2 * junk,
    with every junk factor a certified chart artifact; this pins the set of
    lines with at most two distinct quartic intersections as exactly the
    24 flex lines plus the 28 bitangents.
    """

    flex_multiplicity: int
    bitangent_multiplicity: int
    junk_factors: tuple
    total_degree: int


def violating_line_certificate(Q: PlaneQuartic) -> ViolatingLineCertificate:
    if "violating" in Q._cache:
        return Q._cache["violating"]
    sec = line_section(Q)
    flexes = dual_flex_locus(Q)
    bit = bitangent_locus(Q)
    psc1 = _section_psc1(Q)
    disc_bi, _ = el.poly_to_bi(sec.disc, "t", "s")
    psc1_bi, den = el.poly_to_bi(psc1, "t", "s")
    if psc1.degree_in("t") < 1:
        raise GenericityError("level-1 subresultant independent of t")
    rw = el.resultant_bivariate_int(disc_bi, psc1_bi)
    if not el.trim(rw):
        raise GenericityError("gcd-degeneracy resultant vanished identically")
    rw = el.primitive(rw)
    total = el.degree(rw)

    def divide_out(poly, divisor):
        count = 0
        while el.degree(poly) >= el.degree(divisor) > 0:
            try:
                poly = el.divmod_exact(poly, divisor)
                count += 1
            except Exception:
                break
        return poly, count

    rw, m1 = divide_out(rw, flexes.eliminant)
    rw, m2 = divide_out(rw, bit.eliminant)
    if m1 < 1 or m2 < 1:
        raise GenericityError("violating-line eliminant misses an expected factor")
    junk = []
    b0d, _ = el.poly_to_dense1(sec.b[0], "s")
    lc_junk = el.gcd_int(disc_bi[-1], psc1_bi[-1])
    for cand, label in ((b0d, "chart boundary on the quartic"),
                        (lc_junk, "leading-coefficient locus")):
        if el.degree(cand) >= 1:
            cand_sf = el.squarefree_part_int(cand)
            rw, cnt = divide_out(rw, cand_sf)
            if cnt:
                junk.append((label, el.degree(cand_sf), cnt))
            # also any residual shared factor
            while True:
                g = el.gcd_int(rw, cand)
                if el.degree(g) < 1:
                    break
                rw, cnt = divide_out(rw, g)
                junk.append((label, el.degree(g), cnt))
    if el.degree(rw) != 0:
        raise GenericityError(
            "gcd-degeneracy eliminant has an unexplained factor of degree %d"
            % el.degree(rw)
        )
    cert = ViolatingLineCertificate(
        flex_multiplicity=m1,
        bitangent_multiplicity=m2,
        junk_factors=tuple(junk),
        total_degree=total,
    )
    Q._cache["violating"] = cert
    return cert


def _eval_fraction_in_ring(ring: el.IntQuotRing, coeffs: list, num, den, extra_deg: int = 0):
    """sum coeffs[i] * num^i * den^(D-i) with D = deg(coeffs) + extra_deg."""
    coeffs = el.trim([int(c) for c in coeffs])
    D = len(coeffs) - 1 + extra_deg
    num_pows = [ring.one()]
    den_pows = [ring.one()]
    for _ in range(D):
        num_pows.append(ring.mul(num_pows[-1], num))
        den_pows.append(ring.mul(den_pows[-1], den))
    acc = ring.zero()
    for i, c in enumerate(coeffs):
        if c:
            acc = ring.add(acc, ring.scale(ring.mul(num_pows[i], den_pows[D - i]), c))
    return acc, den_pows


def primal_dual_flex_match(Q: PlaneQuartic) -> bool:
    """Certify that the tangent lines at the 24 Hessian flexes are exactly
    the dual locus V(S, T), including the fiber coordinate t."""
    if "flex_match" in Q._cache:
        return Q._cache["flex_match"]
    elim = flex_elimination(Q)
    if len(elim.factors) != 1 or elim.factors[0].multiplicity != 1:
        raise GenericityError("flex scheme is not 24 distinct simple points")
    data = _flex_tangent_contact_data(Q)[0]
    ring = data["ring"]
    u, v, w = data["dual"]
    if not ring.invertible(v):
        raise GenericityError("a flex tangent passes through [0:1:0]")
    locus = dual_flex_locus(Q)
    neg_u = ring.scale(u, -1)
    val, _ = _eval_fraction_in_ring(ring, locus.eliminant, neg_u, v)
    if not ring.is_zero(val):
        raise GenericityError("flex tangents do not satisfy the dual eliminant")
    # t-coordinate match: den(s)*t - num(s) = 0 at t = -w/v, s = -u/v
    D = max(el.degree(locus.num), el.degree(locus.den))
    a1, _ = _eval_fraction_in_ring(ring, locus.den, neg_u, v, extra_deg=D - max(el.degree(locus.den), 0))
    a0, _ = _eval_fraction_in_ring(ring, locus.num, neg_u, v, extra_deg=D - max(el.degree(locus.num), 0))
    lhs = ring.sub(ring.mul(a1, ring.scale(w, -1)), ring.mul(a0, v))
    if not ring.is_zero(lhs):
        raise GenericityError("flex tangent t-coordinates do not match the dual locus")
    Q._cache["flex_match"] = True
    return True


@dataclass(frozen=True)
class VeryGeneralCertificate:
    """Operational 'very general' witness for one quartic.

    Every field is backed by an exact elimination or quotient-ring identity;
    a quartic failing any item is rejected with the named reason.
    """

    smooth: SmoothnessCertificate
    flex_count: int
    flexes_distinct: bool
    no_hyperflex: bool
    bitangent_count: int
    flexes_bitangents_disjoint: bool
    primal_dual_flex_match: bool
    dual_curve_degree: int
    violating: ViolatingLineCertificate

    def holds(self) -> bool:
        return (
            self.smooth.holds()
            and self.flex_count == 24
            and self.flexes_distinct
            and self.no_hyperflex
            and self.bitangent_count == 28
            and self.flexes_bitangents_disjoint
            and self.primal_dual_flex_match
            and self.dual_curve_degree == 12
        )


def certify_very_general(Q: PlaneQuartic) -> VeryGeneralCertificate:
    """Run the full genericity battery; raises GenericityError with a reason."""
    if "very_general" in Q._cache:
        return Q._cache["very_general"]
    elim = flex_elimination(Q)
    distinct = len(elim.factors) == 1 and elim.factors[0].multiplicity == 1
    if not distinct:
        raise GenericityError("flexes are not 24 distinct points")
    tangent = _flex_tangent_contact_data(Q)
    ring = tangent[0]["ring"]
    if not ring.is_zero(tangent[0]["c2"]):
        raise CertificationError("flex contact certificate failed")
    if not ring.invertible(tangent[0]["c3"]):
        raise GenericityError("hyperflex present")
    flocus = dual_flex_locus(Q)
    block = bitangent_locus(Q)
    if el.degree(el.gcd_int(flocus.eliminant, block.eliminant)) != 0:
        raise GenericityError("a flex line coincides with a bitangent slope")
    match = primal_dual_flex_match(Q)
    dual_deg = dual_curve_report(Q).degree
    if dual_deg != 12:
        raise GenericityError("dual curve degree %d != 12" % dual_deg)
    violating = violating_line_certificate(Q)
    cert = VeryGeneralCertificate(
        smooth=Q.smoothness_certificate,
        flex_count=24,
        flexes_distinct=True,
        no_hyperflex=True,
        bitangent_count=block.count(),
        flexes_bitangents_disjoint=True,
        primal_dual_flex_match=match,
        dual_curve_degree=dual_deg,
        violating=violating,
    )
    Q._cache["very_general"] = cert
    return cert
