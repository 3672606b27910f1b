"""Polynomial map composition, degrees, and the conjugation expansion."""

import random
from fractions import Fraction

import pytest

import oracles
from wpdcert.fields import PrimeField, QQ, field_from_tag
from wpdcert.polymaps import (
    Poly2,
    affine_map,
    compose,
    conjugate_by_henon,
    coordinate_swap,
    degree,
    henon_inverse,
    henon_map,
    identity_map,
    jonquieres_involution,
    parse_map,
    parse_poly,
    poly_map,
    serialize_map,
    translation,
)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("field", [QQ, PrimeField(7)])
def test_henon_inverse_composes_to_identity(n, field):
    if field.char and n % field.char == 0:
        pytest.skip("characteristic divides n")
    h = henon_map(n, field)
    hinv = henon_inverse(n, field)
    assert compose(h, hinv) == identity_map(field)
    assert compose(hinv, h) == identity_map(field)


def test_shift_map_factors_through_involutions():
    for n in (2, 3, 4):
        assert compose(coordinate_swap(), jonquieres_involution(n)) == henon_map(n)


def test_char_p_translation_identity_examples():
    # (x^p - y, x) o (x + a, y + b) o (y, y^p - x) = (x + a^p - b, y + a)
    for p in (2, 3, 5):
        field = PrimeField(p)
        h = henon_map(p, field)
        hinv = henon_inverse(p, field)
        for a, b in ((1, 0), (p - 1, 2 % p), (1, 1)):
            got = compose(hinv, compose(translation(field, a, b), h))
            expected = translation(field, (pow(a, p, p) - b) % p, a)
            assert got == expected


def test_degree():
    assert degree(henon_map(2)) == 2
    assert degree(henon_map(5)) == 5
    assert degree(affine_map(QQ, 3, 1, 2, 0)) == 1
    for n in (2, 3):
        h = henon_map(n)
        assert degree(compose(h, h)) == n * n
    with pytest.raises(ValueError):
        degree(poly_map(QQ, "4", "1"))


def test_conjugate_identity_and_diagonal():
    for n in (2, 3, 4):
        ident = identity_map(QQ)
        assert conjugate_by_henon(ident, n, 1) == ident
        assert conjugate_by_henon(ident, n, -1) == ident
    # f = (a x, c y), forward: (c x, (c^n - a) x^n + a y)
    a, c = Fraction(3), Fraction(2)
    for n in (2, 3, 5):
        g = conjugate_by_henon(affine_map(QQ, a, 0, c, 0), n, 1)
        assert g.comp_x == parse_poly(QQ, f"{c}*x")
        assert g.comp_y == Poly2(QQ, {(n, 0): c**n - a, (0, 1): a})
        assert degree(g) == (1 if c**n == a else n)
    # degree drops to 1 exactly when c^n = a
    g = conjugate_by_henon(affine_map(QQ, 8, 0, 2, 0), 3, 1)
    assert degree(g) == 1


def test_conjugation_matches_binomial_expansion_over_q():
    rng = random.Random(20240811)
    for n in range(2, 7):
        for _ in range(12):
            a = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            c = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            b = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            d = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            f = affine_map(QQ, a, b, c, d)
            fwd = conjugate_by_henon(f, n, 1)
            ex, ey = oracles.binomial_forward(QQ, n, a, b, c, d)
            assert (fwd.comp_x, fwd.comp_y) == (ex, ey)
            bwd = conjugate_by_henon(f, n, -1)
            ex, ey = oracles.binomial_backward(QQ, n, a, b, c, d)
            assert (bwd.comp_x, bwd.comp_y) == (ex, ey)


@pytest.mark.parametrize("field", [QQ, PrimeField(7), PrimeField(11)])
def test_conjugation_degree_criterion(field):
    # degree drops to 1 exactly when c^n = a (forward) / a^n = c (backward)
    rng = random.Random(13)
    for n in range(2, 7):
        if field.char and n % field.char == 0:
            continue
        for _ in range(20):
            if field.char:
                a, c = rng.randint(1, field.char - 1), rng.randint(1, field.char - 1)
            else:
                a, c = Fraction(rng.randint(1, 9), rng.randint(1, 4)), Fraction(rng.randint(1, 9), rng.randint(1, 4))
            if rng.random() < 0.5:
                a = field.pow(c, n)  # force the forward criterion
            f = affine_map(field, a, 0, c, 0)
            fwd = conjugate_by_henon(f, n, 1)
            assert (degree(fwd) == 1) == (field.pow(c, n) == field.coerce(a))
            bwd = conjugate_by_henon(f, n, -1)
            assert (degree(bwd) == 1) == (field.pow(a, n) == field.coerce(c))


def test_conjugation_x3_coefficient_n4():
    rng = random.Random(7)
    for _ in range(10):
        a, b, c, d = (Fraction(rng.randint(1, 9)) for _ in range(4))
        g = conjugate_by_henon(affine_map(QQ, a, b, c, d), 4, 1)
        assert g.comp_y.coeff(3, 0) == 4 * c**3 * d


def test_conjugation_rejects_bad_inputs():
    with pytest.raises(ValueError):
        conjugate_by_henon(henon_map(2), 2, 1)  # not affine
    with pytest.raises(ValueError):
        conjugate_by_henon(poly_map(QQ, "x+y", "y"), 2, 1)  # off-diagonal term
    with pytest.raises(ValueError):
        conjugate_by_henon(affine_map(QQ, 0, 1, 1, 0), 2, 1)  # a = 0
    field = PrimeField(2)
    with pytest.raises(ValueError):
        conjugate_by_henon(affine_map(field, 1, 0, 1, 0), 2, 1)  # char | n
    with pytest.raises(ValueError):
        conjugate_by_henon(affine_map(QQ, 1, 0, 1, 0), 2, 3)  # bad direction


def test_poly_parse_and_format_roundtrip():
    samples = ["y^2 - x", "x", "3*x^2*y - y + 4", "-1/2*x*y + 7", "0 + x"]
    for text in samples:
        poly = parse_poly(QQ, text)
        assert parse_poly(QQ, str(poly)) == poly
    f7 = PrimeField(7)
    m = henon_map(3, f7)
    data = serialize_map(m)
    assert data == {"field": "Fp:7", "map": "y; y^3 + 6*x"}
    assert parse_map(data) == m
    assert field_from_tag("Fp:11") == PrimeField(11)


def test_prime_field_arithmetic():
    f = PrimeField(7)
    assert f.inv(3) == 5
    assert f.coerce(Fraction(1, 2)) == 4
    assert f.roots_of_unity(3) == [1, 2, 4]
    assert PrimeField(5).roots_of_unity(3) == [1]
    with pytest.raises(ValueError):
        PrimeField(6)
