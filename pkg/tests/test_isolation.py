"""Certified root isolation: boxes, multiplicities, refinement, Sturm."""

import random

import pytest

from quarticlog.elimination import mul
from quarticlog.errors import ZeroPolynomialError
from quarticlog.isolation import (
    ComplexBox,
    box_div,
    box_mul,
    contains_rational,
    count_real_roots,
    distinct_root_count,
    eval_poly_box,
    isolate_roots,
    refine,
)
from quarticlog.polynomials import from_text, variables
from quarticlog.rationals import Rat, rat

X = variables("x")


def test_fourth_roots_of_unity():
    clusters = isolate_roots([-1, 0, 0, 0, 1])  # x^4 - 1
    assert len(clusters) == 4
    assert all(c.multiplicity == 1 for c in clusters)
    expected = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    for c, (re, im) in zip(sorted(clusters, key=lambda c: c.box.center()), sorted(expected)):
        assert c.box.contains_value(re, im)


def test_multiplicities():
    # (x-1)^3 (x+2)
    f = mul(mul(mul([-1, 1], [-1, 1]), [-1, 1]), [2, 1])
    clusters = isolate_roots(f)
    assert sorted(c.multiplicity for c in clusters) == [1, 3]
    for c in clusters:
        if c.multiplicity == 3:
            assert contains_rational(c, 1)
        else:
            assert contains_rational(c, -2)
    assert sum(c.multiplicity for c in clusters) == 4


def test_restriction_of_diagonal_quartic_to_coordinate_line():
    # y^4 + z^4 on the line x = 0, dehomogenized in y: 4 simple roots
    clusters = isolate_roots([1, 0, 0, 0, 1])
    assert len(clusters) == 4
    assert all(c.multiplicity == 1 for c in clusters)


def test_boxes_disjoint_and_sum_to_degree():
    rng = random.Random(9)
    for _ in range(15):
        f = [rng.randint(-8, 8) for _ in range(rng.randint(3, 7))] + [rng.randint(1, 8)]
        clusters = isolate_roots(f)
        assert sum(c.multiplicity for c in clusters) == len(f) - 1
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                assert clusters[i].box.is_disjoint(clusters[j].box)
        assert distinct_root_count(f) == len(clusters)


def test_rational_roots_contained():
    # roots 1/2, -3, 5
    f = mul(mul([-1, 2], [3, 1]), [-5, 1])
    clusters = isolate_roots(f)
    found = set()
    for c in clusters:
        for r in (Rat(1, 2), rat(-3), rat(5)):
            if contains_rational(c, r):
                found.add(r)
    assert found == {Rat(1, 2), rat(-3), rat(5)}


def test_refinement_monotone_and_reaches_width():
    clusters = isolate_roots([-2, 0, 1], precision=48)  # sqrt(2)
    c = [cl for cl in clusters if cl.box.re_lo > 0][0]
    finer = refine(c, 96)
    assert finer.box.width() <= Rat(1, 1 << 96)
    assert c.box.contains_box(finer.box)
    again = refine(finer, 96)
    assert finer.box.contains_box(again.box)


def test_refine_idempotent_at_fixed_precision():
    clusters = isolate_roots([-1, -1, 0, 1], precision=64)
    for c in clusters:
        r1 = refine(c, 80)
        r2 = refine(r1, 80)
        assert r2.box.width() <= Rat(1, 1 << 80)
        assert r1.box.contains_box(r2.box)


def test_distinct_root_count_contact_profiles():
    # bitangent-style restriction: (x^2-1)^2 -> 2 distinct roots
    assert distinct_root_count(mul([-1, 0, 1], [-1, 0, 1])) == 2
    # flex-style restriction: (x-1)^3 (x+4) -> 2
    assert distinct_root_count(mul(mul(mul([-1, 1], [-1, 1]), [-1, 1]), [4, 1])) == 2
    # generic transverse restriction
    assert distinct_root_count([-1, 0, 0, 0, 1]) == 4
    p = from_text("1*x^4 + -1", X)
    assert distinct_root_count(p) == 4


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError):
        isolate_roots([])
    with pytest.raises(ZeroPolynomialError):
        distinct_root_count([0])


def test_count_real_roots():
    assert count_real_roots([-2, 0, 1]) == 2
    assert count_real_roots([1, 0, 1]) == 0
    assert count_real_roots(mul(mul([-1, 1], [-2, 1]), [-3, 1])) == 3


def test_box_arithmetic_soundness():
    rng = random.Random(17)
    for _ in range(200):
        def rand_box():
            lo = rat(rng.randint(-8, 8)) / 4
            hi = lo + rat(rng.randint(0, 5)) / 8
            lo2 = rat(rng.randint(-8, 8)) / 4
            hi2 = lo2 + rat(rng.randint(0, 5)) / 8
            return ComplexBox(lo, hi, lo2, hi2)

        a, b = rand_box(), rand_box()

        def sample(box):
            t1 = rat(rng.randint(0, 4)) / 4
            t2 = rat(rng.randint(0, 4)) / 4
            return (
                box.re_lo + t1 * (box.re_hi - box.re_lo),
                box.im_lo + t2 * (box.im_hi - box.im_lo),
            )

        (ar, ai), (br, bi) = sample(a), sample(b)
        prod = box_mul(a, b)
        assert prod.contains_value(ar * br - ai * bi, ar * bi + ai * br)
        q = box_div(a, b)
        if q is not None:
            den = br * br + bi * bi
            assert den != 0
            assert q.contains_value((ar * br + ai * bi) / den, (ai * br - ar * bi) / den)


def test_eval_poly_box_contains_exact_value():
    f = [3, -2, 0, 1]  # x^3 - 2x + 3
    box = ComplexBox(rat(1), Rat(3, 2), Rat(-1, 4), Rat(1, 4))
    val = eval_poly_box(f, box)
    x_re, x_im = Rat(5, 4), rat(0)
    exact_re = x_re ** 3 - 2 * x_re + 3
    assert val.contains_value(exact_re, 0)


def test_discriminant_matches_root_difference_product():
    # independent oracle: disc(monic quartic) = prod_{i<j} (r_i - r_j)^2,
    # evaluated with certified root boxes
    from quarticlog.isolation import box_sub
    from quarticlog.polynomials import Poly, discriminant, variables

    X1 = variables("x")
    rng = random.Random(31)
    checked = 0
    while checked < 12:
        p, q, r = (rng.randint(-6, 6) for _ in range(3))
        f = [r, q, p, 0, 1]  # x^4 + p x^2 + q x + r
        fp = Poly.from_terms(X1, {(i,): c for i, c in enumerate(f) if c})
        if fp.degree_in("x") != 4:
            continue
        d = discriminant(fp, "x").constant_value()
        if d == 0:
            continue
        clusters = isolate_roots(f, precision=96)
        if len(clusters) != 4:
            continue
        prod = ComplexBox.exact(1)
        boxes = [c.box for c in clusters]
        for i in range(4):
            for j in range(i + 1, 4):
                diff = box_sub(boxes[i], boxes[j])
                prod = box_mul(prod, box_mul(diff, diff))
        assert prod.contains_value(d, 0)
        assert prod.width() < rat(1) / (1 << 20)
        checked += 1
