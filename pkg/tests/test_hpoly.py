from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetlab.exactlin import RatMatrix
from jetlab.heisenberg import HPoint, random_point
from jetlab.hpoly import (
    ETA_LEGEND,
    HPolynomial,
    JetVector,
    apply_field,
    apply_word,
    curve_poly,
    harmonic_basis,
    jet2,
    lc,
    lc_matrix,
    monomials,
    satisfies_constraint,
    sublaplacian,
    t,
    x1,
    x2,
    y1,
    y2,
)
from jetlab.jetalgebra import E_LABELS, HDElement

ZERO = HPoint.zero(2)
ONE = HPolynomial.const(1)


def idx(label):
    """Position in JetVector.eta of the E basis label."""
    return E_LABELS.index(label) + 1


def random_poly(rng, max_degree=4, terms=5):
    exps = [e for d in range(max_degree + 1) for e in monomials(d)]
    return HPolynomial({rng.choice(exps): rng.randint(-4, 4) for _ in range(terms)})


def test_field_examples():
    assert apply_field("X1", x1) == ONE
    assert apply_field("X1", t) == 2 * y1
    assert apply_field("Y1", t) == -2 * x1
    comm = apply_word(["X1", "Y1"], t) - apply_word(["Y1", "X1"], t)
    assert comm == -4 * apply_field("T", t)


def test_commutators_on_random_polynomials():
    rng = random.Random(2)
    for _ in range(10):
        u = random_poly(rng)
        for a, b in (("X1", "Y1"), ("X2", "Y2")):
            lhs = apply_word([a, b], u) - apply_word([b, a], u)
            assert lhs == -4 * apply_field("T", u)
        assert apply_word(["X1", "X2"], u) == apply_word(["X2", "X1"], u)
        assert apply_word(["X1", "Y2"], u) == apply_word(["Y2", "X1"], u)


def test_field_lowers_weighted_degree():
    u = x1 * x1 * y2 + t * x2
    assert u.weighted_degree() == 3 and u.is_homogeneous()
    for f in ("X1", "X2", "Y1", "Y2"):
        v = apply_field(f, u)
        assert v.is_homogeneous() and v.weighted_degree() == 2
    assert apply_field("T", u).weighted_degree() == 1


def test_sublaplacian_examples():
    c = Fraction(3, 7)
    assert lc(c, x1) == HPolynomial()
    assert lc(c, t) == HPolynomial()
    assert lc(c, x1 * x1) == 2 * ONE
    assert lc(c, x2 * x2) == HPolynomial.const(2 * c)
    rng = random.Random(3)
    u = random_poly(rng)
    assert lc(c, u) == sublaplacian(RatMatrix.diag([1, c, 1, c]), u)
    with pytest.raises(ValueError):
        sublaplacian(RatMatrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), u)


def test_harmonic_basis_examples():
    for c in (1, 2, Fraction(1, 2)):
        b1 = harmonic_basis(c, 1)
        assert len(b1) == 4
        assert len(harmonic_basis(c, 2)) == 10
        for d in range(5):
            for u in harmonic_basis(c, d):
                assert lc(c, u) == HPolynomial()
                assert u.is_homogeneous() and u.weighted_degree() == d


def test_jet_examples():
    j = jet2(x1 * y1, ZERO)
    assert j[idx("A_X1Y1")] == 1 and j[idx("A_Y1X1")] == 1
    others = [k for k in list(range(5, 16)) + [17, 18, 19, 20] if k not in (idx("A_X1Y1"), idx("A_Y1X1"))]
    assert all(j[k] == 0 for k in others)
    j = jet2(t, ZERO)
    assert (j[idx("A_X1Y1")], j[idx("A_X2Y2")], j[idx("A_Y1X1")]) == (-2, -2, 2)
    assert j.first == [0, 0, 0, 0]
    p = HPoint.from_coords([1, 2, 3, 4, 5])
    j = jet2(x1, p)
    assert j.base == p and j.value == 1


def test_jet_pbw_relations():
    rng = random.Random(4)
    for _ in range(15):
        u, p = random_poly(rng), random_point(rng, 2)
        j = jet2(u, p)
        tu = apply_field("T", u)(p)
        assert tu == Fraction(1, 4) * (j[idx("A_Y1X1")] - j[idx("A_X1Y1")])
        y2x2 = apply_word(["Y2", "X2"], u)(p)
        assert y2x2 == j[idx("A_X2Y2")] + j[idx("A_Y1X1")] - j[idx("A_X1Y1")]


def test_jet_bilinear_reproduces_operators():
    """The jet's HD^2 part evaluated on (e_i, e_j) is Z_i Z_j u(p)."""
    rng = random.Random(6)
    names = ("X1", "X2", "Y1", "Y2")
    for _ in range(5):
        u, p = random_poly(rng), random_point(rng, 2)
        j = jet2(u, p)
        b = HDElement(j.value, tuple(j.first), tuple(j.second)).bilinear
        for i in range(4):
            for k in range(4):
                assert b[i][k] == apply_word([names[i], names[k]], u)(p)


def test_curve_poly_examples():
    p = random_point(random.Random(8), 2)
    assert curve_poly(x1, p, [1, 0, 0, 0]) == [p.x[0], 1]
    coeffs = curve_poly(t, ZERO, [1, 0, 1, 0])
    v2 = apply_word(["X1", "X1"], t) + apply_word(["X1", "Y1"], t) + apply_word(["Y1", "X1"], t) \
        + apply_word(["Y1", "Y1"], t)
    assert (coeffs + [0, 0, 0])[2] == Fraction(1, 2) * v2(ZERO)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_curve_poly_matches_jet(seed, v):
    rng = random.Random(seed)
    u, p = random_poly(rng), random_point(rng, 2)
    coeffs = curve_poly(u, p, v) + [Fraction(0)] * 3
    j = jet2(u, p)
    assert coeffs[0] == u(p)
    assert coeffs[1] == sum(a * b for a, b in zip(j.first, v))
    jet = HDElement(j.value, tuple(j.first), tuple(j.second))
    assert math.factorial(2) * coeffs[2] == jet.evaluate2(v, v)


def test_constraint_examples():
    for c in (1, 2, Fraction(5, 3)):
        assert satisfies_constraint(jet2(t, ZERO), c)
        assert not satisfies_constraint(jet2(x1 * x1, ZERO), c)
        assert satisfies_constraint(jet2(x1 * x1 - y1 * y1, ZERO), c)


def test_harmonic_jets_satisfy_constraint():
    rng = random.Random(9)
    pts = [random_point(rng, 2) for _ in range(3)]
    for c in (1, Fraction(2, 3)):
        for d in range(5):
            for u in harmonic_basis(c, d):
                for p in pts:
                    assert satisfies_constraint(jet2(u, p), c)


def test_polynomial_json_roundtrip():
    u = Fraction(3, 4) * x1 * t - y2 * y2 + 5
    doc = json.loads(json.dumps(u.to_json()))
    assert {"exp", "coef"} <= doc["terms"][0].keys()
    assert HPolynomial.from_json(doc) == u
    j = jet2(u, HPoint.from_coords([1, 0, Fraction(1, 2), 0, 3]))
    assert JetVector.from_json(json.loads(json.dumps(j.to_json()))) == j
    assert len(ETA_LEGEND) == 21


def test_lc_matrix():
    assert lc_matrix(2) == RatMatrix.diag([1, 2, 1, 2])
