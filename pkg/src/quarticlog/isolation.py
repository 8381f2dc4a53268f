"""Certified isolation and refinement of complex roots.

Multiplicity structure is computed exactly first (Yun square-free
decomposition); numerics only locate the support.  Numeric first guesses
come from mpmath, after which every root is certified by a rigorous
complex interval Newton test carried out in exact rational rectangle
arithmetic, so a returned box is a proof that it contains exactly one root
of its square-free factor.

Real-only inputs take a Sturm-sequence fast path whose isolating intervals
are certificates by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .elimination import (
    deriv,
    eval_at,
    squarefree_part_int,
    trim,
    yun_squarefree_decomposition,
)
from .errors import CertificationError, ZeroPolynomialError
from .polynomials import Poly, squarefree_part
from .rationals import Rat, rat

DEFAULT_PRECISION = 128
PRECISION_CAP = 4096


# ---------------------------------------------------------------------------
# exact interval helpers (closed intervals with rational endpoints)


def _imin(*xs):
    m = xs[0]
    for x in xs[1:]:
        if x < m:
            m = x
    return m


def _imax(*xs):
    m = xs[0]
    for x in xs[1:]:
        if x > m:
            m = x
    return m


def _imul(a_lo, a_hi, b_lo, b_hi):
    p1, p2, p3, p4 = a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi
    return _imin(p1, p2, p3, p4), _imax(p1, p2, p3, p4)


def _isq_range(lo, hi):
    """Range of x^2 over [lo, hi]."""
    a, b = lo * lo, hi * hi
    if lo <= 0 <= hi:
        return rat(0), _imax(a, b)
    return _imin(a, b), _imax(a, b)


def _dyadic_floor(x, bits: int):
    n = int(x.numerator) << bits
    d = int(x.denominator)
    q = n // d
    return Rat(q, 1 << bits)


def _dyadic_ceil(x, bits: int):
    n = int(x.numerator) << bits
    d = int(x.denominator)
    q = -((-n) // d)
    return Rat(q, 1 << bits)


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rectangle with exact rational endpoints."""

    re_lo: Rat
    re_hi: Rat
    im_lo: Rat
    im_hi: Rat

    def __post_init__(self):
        for f in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, f, rat(getattr(self, f)))
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("empty box")

    @classmethod
    def exact(cls, re, im=0):
        re, im = rat(re), rat(im)
        return cls(re, re, im, im)

    def width(self) -> Rat:
        return _imax(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def center(self):
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def contains_value(self, re, im=0) -> bool:
        re, im = rat(re), rat(im)
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def contains_box(self, other: "ComplexBox") -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def contained_in_interior(self, other: "ComplexBox") -> bool:
        return (
            other.re_lo < self.re_lo
            and self.re_hi < other.re_hi
            and other.im_lo < self.im_lo
            and self.im_hi < other.im_hi
        )

    def is_disjoint(self, other: "ComplexBox") -> bool:
        return (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def intersect(self, other: "ComplexBox"):
        re_lo, re_hi = _imax(self.re_lo, other.re_lo), _imin(self.re_hi, other.re_hi)
        im_lo, im_hi = _imax(self.im_lo, other.im_lo), _imin(self.im_hi, other.im_hi)
        if re_lo > re_hi or im_lo > im_hi:
            return None
        return ComplexBox(re_lo, re_hi, im_lo, im_hi)

    def round_outward(self, bits: int) -> "ComplexBox":
        return ComplexBox(
            _dyadic_floor(self.re_lo, bits),
            _dyadic_ceil(self.re_hi, bits),
            _dyadic_floor(self.im_lo, bits),
            _dyadic_ceil(self.im_hi, bits),
        )

    def inflate(self, r) -> "ComplexBox":
        r = rat(r)
        return ComplexBox(self.re_lo - r, self.re_hi + r, self.im_lo - r, self.im_hi + r)

    def contains_zero(self) -> bool:
        return self.contains_value(0, 0)

    def midpoint_float(self):
        c = self.center()
        return float(c[0]), float(c[1])

    def __repr__(self):
        cre, cim = self.center()
        return "ComplexBox(%.12g%+.12gj, width<=%.3g)" % (
            float(cre),
            float(cim),
            float(self.width()),
        )


def box_add(a: ComplexBox, b: ComplexBox) -> ComplexBox:
    return ComplexBox(a.re_lo + b.re_lo, a.re_hi + b.re_hi, a.im_lo + b.im_lo, a.im_hi + b.im_hi)


def box_neg(a: ComplexBox) -> ComplexBox:
    return ComplexBox(-a.re_hi, -a.re_lo, -a.im_hi, -a.im_lo)


def box_sub(a: ComplexBox, b: ComplexBox) -> ComplexBox:
    return box_add(a, box_neg(b))


def box_mul(a: ComplexBox, b: ComplexBox) -> ComplexBox:
    rr = _imul(a.re_lo, a.re_hi, b.re_lo, b.re_hi)
    ii = _imul(a.im_lo, a.im_hi, b.im_lo, b.im_hi)
    ri = _imul(a.re_lo, a.re_hi, b.im_lo, b.im_hi)
    ir = _imul(a.im_lo, a.im_hi, b.re_lo, b.re_hi)
    return ComplexBox(rr[0] - ii[1], rr[1] - ii[0], ri[0] + ir[0], ri[1] + ir[1])


def box_inv(a: ComplexBox):
    """Rectangle enclosure of 1/z over the box; None if 0 may lie inside."""
    m_re = _isq_range(a.re_lo, a.re_hi)
    m_im = _isq_range(a.im_lo, a.im_hi)
    low = m_re[0] + m_im[0]
    high = m_re[1] + m_im[1]
    if low <= 0:
        return None
    inv_lo, inv_hi = 1 / high, 1 / low
    # 1/z = conj(z) / |z|^2, with |z|^2 in [low, high] and inv in positive range
    re = _imul(a.re_lo, a.re_hi, inv_lo, inv_hi)
    im = _imul(-a.im_hi, -a.im_lo, inv_lo, inv_hi)
    return ComplexBox(re[0], re[1], im[0], im[1])


def box_div(a: ComplexBox, b: ComplexBox):
    ib = box_inv(b)
    if ib is None:
        return None
    return box_mul(a, ib)


def eval_poly_box(coeffs: list, box: ComplexBox, round_bits: int = 512) -> ComplexBox:
    """Interval Horner evaluation of an integer/rational dense polynomial.

    Intermediate rectangles are rounded outward to `round_bits` dyadic
    places, which keeps endpoint sizes bounded without losing soundness.
    """
    acc = ComplexBox.exact(0)
    for c in reversed(coeffs):
        acc = box_mul(acc, box)
        acc = box_add(acc, ComplexBox.exact(rat(c)))
        if round_bits:
            acc = acc.round_outward(round_bits)
    return acc


def eval_poly_exact(coeffs: list, re, im):
    """Exact complex rational evaluation; returns (re, im)."""
    are, aim = rat(0), rat(0)
    for c in reversed(coeffs):
        are, aim = are * re - aim * im, are * im + aim * re
        are += rat(c)
    return are, aim


# ---------------------------------------------------------------------------
# interval Newton


def newton_contract(f: list, df: list, box: ComplexBox):
    """One interval Newton step; returns the contracted box.

    If the result is contained in the interior of `box`, the pair
    (result, True) certifies that `box` holds exactly one root of f.
    """
    m_re, m_im = box.center()
    f_re, f_im = eval_poly_exact(f, m_re, m_im)
    dfx = eval_poly_box(df, box)
    quotient = box_div(ComplexBox(f_re, f_re, f_im, f_im), dfx)
    if quotient is None:
        return None, False
    n = box_sub(ComplexBox.exact(m_re, m_im), quotient)
    certified = n.contained_in_interior(box)
    shrunk = n.intersect(box)
    return shrunk, certified


def certify_unique_root(f: list, box: ComplexBox, max_steps: int = 6, round_bits: int = 320):
    """Try to certify that `box` isolates exactly one root of square-free f."""
    df = deriv(f)
    b = box
    for _ in range(max_steps):
        n, ok = newton_contract(f, df, b)
        if ok:
            out = n if n is not None else b
            widened = out.round_outward(round_bits).intersect(b)
            return widened if widened is not None else out
        if n is None or n == b:
            return None
        b = n.round_outward(round_bits).intersect(b) or n
    return None


# ---------------------------------------------------------------------------
# Sturm sequences (real fast path and exact real counts)


def sturm_chain(f: list) -> list:
    f = trim([int(c) for c in f])
    if not f:
        raise ZeroPolynomialError("Sturm chain of zero")
    chain = [f, deriv(f)]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        da, db = len(a) - 1, len(b) - 1
        from .elimination import pseudo_rem

        r = pseudo_rem(a, b)
        if not r:
            break
        # pseudo_rem scaled a by lc(b)^(da-db+1); undo an odd negative factor
        if b[-1] < 0 and (da - db + 1) % 2 == 1:
            r = [-c for c in r]
        r = [-c for c in r]
        from math import gcd as _g

        g = 0
        for c in r:
            g = _g(g, abs(int(c)))
        r = [c // g for c in r]
        chain.append(r)
    if len(chain[-1]) == 0:
        chain.pop()
    return chain


def _sign_variations(values: list) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: list, a, b) -> int:
    """Number of distinct real roots in (a, b]; endpoints must not be roots of chain[0]."""
    va = _sign_variations([eval_at(p, a) for p in chain])
    vb = _sign_variations([eval_at(p, b) for p in chain])
    return va - vb


def cauchy_bound(f: list) -> Rat:
    f = trim(f)
    lead = abs(rat(f[-1]))
    m = max((abs(rat(c)) for c in f[:-1]), default=rat(0))
    return 1 + m / lead


def count_real_roots(f: list) -> int:
    """Distinct real roots of a square-free integer polynomial."""
    f = trim(f)
    if len(f) <= 1:
        return 0
    chain = sturm_chain(f)
    b = cauchy_bound(f) + 1
    a = -b
    while eval_at(f, a) == 0:
        a -= 1
    while eval_at(f, b) == 0:
        b += 1
    return sturm_count(chain, a, b)


def isolate_real_roots_sturm(f: list) -> list:
    """Isolating rational intervals for all real roots of square-free f."""
    f = trim(f)
    chain = sturm_chain(f)
    b = cauchy_bound(f) + 1
    a = -b
    total = sturm_count(chain, a, b)
    out = []

    def split(lo, hi, count):
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        while eval_at(f, mid) == 0:
            mid = (lo + mid) / 2
        left = sturm_count(chain, lo, mid)
        split(lo, mid, left)
        split(mid, hi, count - left)

    split(a, b, total)
    return out


# ---------------------------------------------------------------------------
# root clusters


@dataclass(frozen=True)
class RootCluster:
    """A certified box holding one root of a square-free factor.

    The box contains exactly `multiplicity` roots of the original
    polynomial counted with multiplicity and exactly one root of the
    square-free factor at `squarefree_level`.
    """

    box: ComplexBox
    multiplicity: int
    squarefree_level: int
    _factor: tuple = field(repr=False, default=())
    _method: str = field(repr=False, default="newton")

    def refined(self, precision: int) -> "RootCluster":
        return refine(self, precision)


def _mpf_to_rat(x) -> Rat:
    sign, man, exp, bc = x._mpf_
    if man == 0:
        if x == 0:
            return rat(0)
        raise CertificationError("non-finite numeric value")
    v = Rat(int(man), 1 << -exp) if exp < 0 else Rat(int(man) << exp, 1)
    return -v if sign else v


def _approximate_roots(f: list, prec_bits: int) -> list:
    maxbits = max(abs(int(c)).bit_length() for c in f)
    work = max(prec_bits + 48, maxbits + 48, 64)
    with mpmath.workprec(work):
        coeffs = [mpmath.mpf(int(c)) for c in reversed(f)]
        roots = mpmath.polyroots(coeffs, maxsteps=120, extraprec=work // 2)
        out = []
        for r in roots:
            r = mpmath.mpc(r)
            out.append((_mpf_to_rat(r.real), _mpf_to_rat(r.imag)))
    return out


def _isolate_squarefree(f: list, precision: int) -> list:
    """Certified (box, method) pairs for all roots of a square-free integer poly."""
    f = trim(f)
    d = len(f) - 1
    if d == 0:
        return []
    if d == 1:
        r = Rat(-int(f[0]), int(f[1]))
        return [(ComplexBox.exact(r), "exact")]
    if count_real_roots(f) == d:
        return [
            (ComplexBox(lo, hi, rat(0), rat(0)), "sturm")
            for lo, hi in isolate_real_roots_sturm(f)
        ]
    prec = max(precision, DEFAULT_PRECISION)
    while prec <= PRECISION_CAP:
        approx = _approximate_roots(f, prec)
        # initial radius: a quarter of the closest approximate separation
        seps = []
        for i, (re1, im1) in enumerate(approx):
            best = None
            for j, (re2, im2) in enumerate(approx):
                if i == j:
                    continue
                d2 = (re1 - re2) ** 2 + (im1 - im2) ** 2
                if best is None or d2 < best:
                    best = d2
            seps.append(best)
        boxes = []
        ok = True
        for (re, im), sep2 in zip(approx, seps):
            radius = Rat(1, 1 << 10)
            if sep2 is not None:
                # rational sqrt lower bound via integer sqrt of scaled value
                import math

                scaled = int(sep2 * (1 << 40))
                if scaled > 0:
                    radius = _imin(radius, Rat(math.isqrt(scaled), 1 << 20) / 4)
            cert = None
            while radius >= Rat(1, 1 << (prec // 2)):
                box = ComplexBox(re - radius, re + radius, im - radius, im + radius)
                cert = certify_unique_root(f, box)
                if cert is not None:
                    break
                radius /= 64
            if cert is None:
                ok = False
                break
            boxes.append((cert, "newton"))
        if ok and len(boxes) == d and _all_disjoint([b for b, _ in boxes]):
            return boxes
        prec *= 2
    raise CertificationError("root certification failed up to the precision cap")


def _all_disjoint(boxes: list) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].is_disjoint(boxes[j]):
                return False
    return True


def _poly_to_int_dense(p) -> list:
    if isinstance(p, Poly):
        names = [v for v in p.vars if p.degree_in(v) > 0]
        if len(names) > 1:
            raise ZeroPolynomialError("isolate_roots needs a univariate polynomial")
        var = names[0] if names else p.vars[0]
        from .elimination import poly_to_dense1

        dense, _ = poly_to_dense1(p, var)
        return dense
    return trim([int(c) for c in p])


def isolate_roots(p, precision: int = DEFAULT_PRECISION) -> list:
    """Certified, disjoint root boxes with exact multiplicities.

    Accepts a univariate Poly or a dense integer coefficient list.
    Multiplicities across clusters sum to deg p; each cluster's box is
    validated by an interval Newton (or Sturm) certificate and refined to
    width <= 2^-precision.
    """
    if precision < 32:
        raise ValueError("precision must be >= 32 bits")
    f = _poly_to_int_dense(p)
    if not f:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    clusters = []
    for factor, mult in yun_squarefree_decomposition(f):
        for box, method in _isolate_squarefree(factor, precision):
            clusters.append(
                RootCluster(
                    box=box,
                    multiplicity=mult,
                    squarefree_level=mult,
                    _factor=tuple(int(c) for c in factor),
                    _method=method,
                )
            )
    clusters = [refine(c, precision) for c in clusters]
    clusters = _separate(clusters, precision)
    clusters.sort(key=lambda c: c.box.center())
    total = sum(c.multiplicity for c in clusters)
    if total != len(f) - 1:
        raise CertificationError("multiplicities sum to %d, expected %d" % (total, len(f) - 1))
    return clusters


def _separate(clusters: list, precision: int) -> list:
    """Refine until all boxes are pairwise disjoint (roots are distinct)."""
    prec = precision
    while prec <= PRECISION_CAP:
        if _all_disjoint([c.box for c in clusters]):
            return clusters
        prec *= 2
        clusters = [refine(c, prec) for c in clusters]
    raise CertificationError("could not separate root boxes below the precision cap")


def refine(cluster: RootCluster, precision: int) -> RootCluster:
    """Shrink the box to width <= 2^-precision; the result stays inside."""
    target = Rat(1, 1 << precision)
    box = cluster.box
    method = cluster._method
    if box.width() <= target or method == "exact":
        return cluster
    f = list(cluster._factor)
    if method == "sturm":
        box = _refine_sturm(f, box, target)
    else:
        box = _refine_newton(f, box, target, precision)
    return RootCluster(
        box=box,
        multiplicity=cluster.multiplicity,
        squarefree_level=cluster.squarefree_level,
        _factor=cluster._factor,
        _method=method if box.width() > 0 else "exact",
    )


def _refine_newton(f: list, box: ComplexBox, target, precision: int) -> ComplexBox:
    df = deriv(f)
    guard = precision + 16
    for _ in range(4 * precision + 64):
        if box.width() <= target:
            return box
        n, _ = newton_contract(f, df, box)
        if n is None:
            raise CertificationError("refinement lost the certificate")
        n = n.round_outward(guard)
        shrunk = n.intersect(box)
        if shrunk is None:
            raise CertificationError("refinement emptied the box")
        if shrunk == box:
            shrunk = _bisect_keep_root(f, df, box)
            if shrunk is None:
                raise CertificationError("refinement stalled")
        box = shrunk
    raise CertificationError("refinement did not reach the target width")


def _refine_sturm(f: list, box: ComplexBox, target) -> ComplexBox:
    """Bisection on a real isolating interval (lo, hi] with one root."""
    chain = sturm_chain(f)
    lo, hi = box.re_lo, box.re_hi
    while hi - lo > target:
        mid = (lo + hi) / 2
        if eval_at(f, mid) == 0:
            return ComplexBox(mid, mid, rat(0), rat(0))
        if sturm_count(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return ComplexBox(lo, hi, rat(0), rat(0))


def _bisect_keep_root(f: list, df: list, box: ComplexBox):
    if box.re_hi - box.re_lo >= box.im_hi - box.im_lo:
        mid = (box.re_lo + box.re_hi) / 2
        halves = [
            ComplexBox(box.re_lo, mid, box.im_lo, box.im_hi),
            ComplexBox(mid, box.re_hi, box.im_lo, box.im_hi),
        ]
    else:
        mid = (box.im_lo + box.im_hi) / 2
        halves = [
            ComplexBox(box.re_lo, box.re_hi, box.im_lo, mid),
            ComplexBox(box.re_lo, box.re_hi, mid, box.im_hi),
        ]
    for h in halves:
        if certify_unique_root(f, h, max_steps=3) is not None:
            return h
    return None


def distinct_root_count(p) -> int:
    """Degree of the square-free part; exact, no numerics."""
    if isinstance(p, Poly):
        names = [v for v in p.vars if p.degree_in(v) > 0]
        if not names:
            if p.is_zero():
                raise ZeroPolynomialError("distinct_root_count of zero")
            return 0
        if len(names) > 1:
            raise ZeroPolynomialError("distinct_root_count needs a univariate polynomial")
        return squarefree_part(p, names[0]).degree_in(names[0])
    f = trim([int(c) for c in p])
    if not f:
        raise ZeroPolynomialError("distinct_root_count of zero")
    if len(f) == 1:
        return 0
    return len(squarefree_part_int(f)) - 1


def contains_rational(cluster: RootCluster, value) -> bool:
    """Exact containment check of a rational value in the cluster box."""
    return cluster.box.contains_value(rat(value), 0)
