from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stieltjes.ring import (
    QQ,
    ZZ,
    DomainError,
    Poly,
    Series,
    Zmod,
    negate_argument,
    poly_arith,
    poly_from_text,
    poly_to_text,
    series_from_text,
    series_inverse,
    series_sqrt_exact,
    series_to_text,
    substitute_power,
)

Z4 = Zmod(4)
small_ints = st.lists(st.integers(-20, 20), min_size=0, max_size=8)


def test_poly_examples():
    assert poly_arith(Poly([1, 1]), Poly([1, 1]), "mul") == Poly([1, 2, 1])
    assert poly_arith(Poly([1, 2], Z4), Poly([1, 2], Z4), "mul") == Poly.one(Z4)
    assert poly_arith(Poly([0, 1]), Poly.zero(), "mul").is_zero


def test_residues_normalized_and_trimmed():
    p = Poly([-1, 5, 4, 8], Z4)
    assert p.tolist() == [3, 1]
    assert p.degree == 1
    assert Poly.zero().degree == -1


def test_domain_mismatch():
    with pytest.raises(DomainError):
        Poly([1], ZZ) + Poly([1], Z4)
    with pytest.raises(DomainError):
        Zmod(1)


def test_series_inverse_examples():
    assert series_inverse(Series.one(5)) == Series.one(5)
    assert series_inverse(Series([1, 1], 4, Z4)).tolist() == [1, 3, 1, 3, 1]
    assert series_inverse(Series([1, 2], 3, Z4)).tolist() == [1, 2, 0, 0]


def test_series_inverse_needs_unit():
    with pytest.raises(DomainError):
        series_inverse(Series([2, 1], 3, Z4))


def test_sqrt_examples():
    root, ok = series_sqrt_exact(Series([1, -4], 5))
    assert ok and root.tolist() == [1, -2, -2, -4, -10, -28]
    root, ok = series_sqrt_exact(Series([1, 1], 3))
    assert not ok
    assert root.tolist() == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]
    assert series_sqrt_exact(Series.one(4))[0] == Series.one(4, QQ)


def test_substitute_and_negate_examples():
    assert substitute_power(Series([0, 1, 1], 8), 2).tolist() == [0, 0, 1, 0, 1, 0, 0, 0, 0]
    assert substitute_power(Series.one(6), 5) == Series.one(6)
    assert negate_argument(Poly([0, 1], Z4)) == Poly([0, 3], Z4)
    assert negate_argument(Poly([1, 1, 1], Z4)) == Poly([1, 3, 1], Z4)
    assert negate_argument(Poly([1, 0, 1])) == Poly([1, 0, 1])


def test_s3_squared_argument():
    s3 = Series.from_terms({1: 1, 2: 1, 4: 1, 8: 1}, 16)
    s4 = Series.from_terms({1: 1, 2: 1, 4: 1, 8: 1, 16: 1}, 16)
    assert substitute_power(s3, 2) == s4 - Series.from_terms({1: 1}, 16)


@given(small_ints, small_ints, small_ints, st.sampled_from([ZZ, Z4]))
def test_ring_axioms(a, b, c, d):
    p, q, r = Poly(a, d), Poly(b, d), Poly(c, d)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + q == q + p
    assert p - p == Poly.zero(d)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 3), min_size=64, max_size=64), st.sampled_from([1, 3]))
def test_inverse_round_trip(tail, unit):
    s = Series([unit] + tail, 64, Z4)
    assert s * series_inverse(s) == Series.one(64, Z4)


@given(st.lists(st.integers(-9, 9), min_size=32, max_size=32))
def test_sqrt_round_trip(tail):
    s = Series([1] + tail, 32)
    root, _ = series_sqrt_exact(s)
    assert root * root == s.reduce(QQ)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=40))
def test_substitute_composition(c):
    s = Series(c, 40)
    assert substitute_power(substitute_power(s, 2), 2) == substitute_power(s, 4)


@given(st.lists(st.integers(-5, 5), max_size=20), st.sampled_from([ZZ, Z4]))
def test_negate_involution(c, d):
    p = Poly(c, d)
    assert negate_argument(negate_argument(p)) == p


@given(small_ints, small_ints)
def test_reduction_commutes(a, b):
    p, q = Poly(a), Poly(b)
    assert (p * q).reduce(Z4) == p.reduce(Z4) * q.reduce(Z4)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=12), st.sampled_from([ZZ, Z4, Zmod(7)]))
def test_text_round_trip(c, d):
    s = Series(c, len(c) - 1, d)
    assert series_from_text(series_to_text(s), d) == s
    p = Poly(c, d)
    assert poly_from_text(poly_to_text(p), d) == p


def test_rational_text_round_trip():
    root, _ = series_sqrt_exact(Series([1, 1], 5))
    assert series_from_text(series_to_text(root)) == root


def test_immutable_coefficients():
    p = Poly([1, 2, 3])
    with pytest.raises(ValueError):
        p.coeffs[0] = 5


def test_large_modulus_uses_exact_objects():
    m = 2**40 + 15
    d = Zmod(m)
    p = Poly([m - 1, 3], d)
    assert (p * p).tolist() == [1, (-6) % m, 9]
    assert np.asarray(p.coeffs).dtype == object
