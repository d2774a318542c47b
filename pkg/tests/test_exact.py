import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from apolar_kit.exact import DivisionByZero, FieldElement, FieldMismatch, FieldSpec, integer_embed

from conftest import ALL_FIELDS, F3, F5, F7, Q


def test_rational_sum():
    assert Q.element(Fraction(1, 2)) + Q.element(Fraction(1, 3)) == Q.element(Fraction(5, 6))


def test_inverse_mod_5():
    assert F5.element(2).inv() == F5.element(3)


def test_product_mod_7():
    assert F7.element(3) * F7.element(5) == F7.element(1)


@pytest.mark.parametrize("m, spec, want", [(6, Q, Fraction(6)), (6, F3, 0), (-1, F5, 4)])
def test_integer_embed(m, spec, want):
    assert integer_embed(m, spec).value == want


def test_bad_moduli():
    for p in (1, 4, 91, 2**31 + 11):
        with pytest.raises(ValueError):
            FieldSpec(p)
    assert FieldSpec(2**31 - 1).p == 2**31 - 1


def test_parse_and_name():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("f101").p == 101
    assert FieldSpec.parse("f101").name == "f101"
    assert Q.characteristic == 0 and F5.characteristic == 5
    with pytest.raises(ValueError):
        FieldSpec.parse("r7")


def test_division_by_zero():
    for spec in (Q, F5):
        with pytest.raises(DivisionByZero):
            spec.element(0).inv()
        with pytest.raises(ZeroDivisionError):
            spec.element(1) / spec.element(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F5.element(1) + F7.element(1)


def test_coerce_strings():
    assert Q.coerce("3/4") == Fraction(3, 4)
    assert F5.coerce("3/4") == F5.div(3, 4)
    assert F5.coerce(-7) == 3


@pytest.mark.parametrize("spec", ALL_FIELDS, ids=lambda s: s.name)
def test_field_axioms_random(spec):
    rng = random.Random(spec.p + 17)

    def draw():
        if spec.p:
            return rng.randrange(spec.p)
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))

    for _ in range(1000):
        a, b, c = draw(), draw(), draw()
        A, B, C = (FieldElement(v, spec) for v in (a, b, c))
        assert (A + B) + C == A + (B + C)
        assert (A * B) * C == A * (B * C)
        assert A * (B + C) == A * B + A * C
        assert A + B == B + A and A * B == B * A
        assert A - A == spec.element(0)
        if not A.is_zero():
            assert A * A.inv() == spec.element(1)


@settings(max_examples=200)
@given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12), st.sampled_from(ALL_FIELDS))
def test_embed_is_ring_homomorphism(a, b, spec):
    assert integer_embed(a * b, spec) == integer_embed(a, spec) * integer_embed(b, spec)
    assert integer_embed(a + b, spec) == integer_embed(a, spec) + integer_embed(b, spec)


def test_large_rationals_do_not_overflow():
    x = Q.element(Fraction(10**40 + 1, 3))
    assert (x * x).value == Fraction((10**40 + 1) ** 2, 9)
