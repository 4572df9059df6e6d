"""Tests for scalars.py — coefficient fields and exact polynomial arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graded_goldie.exceptions import ConfigError, FieldMismatch, NotAUnit
from graded_goldie.scalars import (
    CoefficientField,
    LaurentPoly,
    Poly,
    XYQuotientValue,
    laurent_unit_invert,
    xy_quotient_mul,
)

QQ_FIELD = CoefficientField()

xy_values = st.builds(
    lambda c, xs, ys: XYQuotientValue.from_parts(QQ_FIELD, c, xs, ys),
    st.integers(-3, 3),
    st.dictionaries(st.integers(1, 4), st.integers(-3, 3), max_size=3),
    st.dictionaries(st.integers(1, 4), st.integers(-3, 3), max_size=3),
)

F7_FIELD = CoefficientField(7)

polys = st.builds(
    lambda terms: Poly.from_terms(QQ_FIELD, terms),
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4),
)
f7_polys = st.builds(
    lambda terms: Poly.from_terms(F7_FIELD, terms),
    st.dictionaries(st.integers(0, 5), st.integers(0, 6), max_size=4),
)
laurents = st.builds(
    lambda terms: LaurentPoly.from_terms(QQ_FIELD, terms),
    st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=4),
)
rationals = st.builds(QQ_FIELD, st.integers(-20, 20), st.integers(1, 9))
residues = st.builds(F7_FIELD, st.integers(0, 6))


class TestCoefficientField:
    def test_rational_flag(self):
        assert CoefficientField.from_flag("q").characteristic == 0
        assert CoefficientField.from_flag(None).flag == "q"

    def test_prime_flag(self):
        field = CoefficientField.from_flag("fp:7")
        assert field.characteristic == 7
        assert field.flag == "fp:7"

    @pytest.mark.parametrize("flag", ["fp:4", "fp:abc", "zz", "fp:1"])
    def test_rejects_bad_flags(self, flag):
        with pytest.raises(ConfigError):
            CoefficientField.from_flag(flag)

    def test_parse_fraction(self, qq):
        assert qq.parse("3/4") == qq(3, 4)
        assert qq.format(qq.parse("-1/2")) == "-1/2"

    def test_zero_denominator_is_not_a_unit(self, qq):
        with pytest.raises(NotAUnit):
            qq.parse("1/0")

    def test_denominator_vanishing_mod_p(self):
        with pytest.raises(NotAUnit):
            CoefficientField(5)(1, 5)

    def test_prime_field_arithmetic_wraps(self):
        gf7 = CoefficientField(7)
        assert gf7(3) + gf7(5) == gf7(1)
        assert gf7.inverse(gf7(3)) == gf7(5)

    def test_inverse_of_zero(self, qq):
        with pytest.raises(NotAUnit):
            qq.inverse(qq.zero)


class TestPoly:
    def test_square(self, qq):
        p = Poly.from_terms(qq, {2: 1, 0: 1})
        assert p * p == Poly.from_terms(qq, {4: 1, 2: 2, 0: 1})

    def test_zero_polynomial_has_no_coefficients(self, qq):
        p = Poly.from_terms(qq, {1: 1})
        assert not (p - p)
        assert (p - p).coeffs == ()

    def test_format(self, qq):
        p = Poly.from_terms(qq, {2: 2, 1: -1, 0: qq(1, 2)})
        assert p.format() == "2*t^2 - t + 1/2"

    def test_shift_down(self, qq):
        assert Poly.from_terms(qq, {3: 1, 1: 2}).shift_down() == Poly.from_terms(qq, {2: 1, 0: 2})

    def test_shift_down_needs_zero_constant(self, qq):
        with pytest.raises(ValueError, match="constant term"):
            Poly.from_terms(qq, {0: 1}).shift_down()

    def test_fields_must_match(self, qq):
        with pytest.raises(FieldMismatch):
            Poly.monomial(qq, 1) + Poly.monomial(CoefficientField(5), 1)


class TestLaurentPoly:
    def test_invert_monomial(self, qq):
        assert laurent_unit_invert(LaurentPoly.monomial(qq, 2, qq(3))) == LaurentPoly.monomial(qq, -2, qq(1, 3))

    def test_invert_zero(self, qq):
        with pytest.raises(NotAUnit):
            laurent_unit_invert(LaurentPoly(qq))

    def test_invert_binomial(self, qq):
        with pytest.raises(NotAUnit):
            laurent_unit_invert(LaurentPoly.from_terms(qq, {0: 1, 1: 1}))

    def test_negative_powers_cancel(self, qq):
        assert LaurentPoly.monomial(qq, -1) * LaurentPoly.monomial(qq, 1) == LaurentPoly.monomial(qq, 0)

    def test_format(self, qq):
        assert LaurentPoly.from_terms(qq, {1: 1, -2: -3}).format() == "t - 3*t^-2"


class TestXYQuotient:
    def test_xy_vanishes(self, qq):
        x = XYQuotientValue.x_power(qq, 1)
        y = XYQuotientValue.y_power(qq, 1)
        assert not xy_quotient_mul(x, y)

    def test_expansion_drops_cross_term(self, qq):
        a = XYQuotientValue.from_parts(qq, 1, {1: 1})
        b = XYQuotientValue.from_parts(qq, 1, None, {1: 1})
        assert a * b == XYQuotientValue.from_parts(qq, 1, {1: 1}, {1: 1})

    def test_powers_of_x(self, qq):
        assert XYQuotientValue.x_power(qq, 2) * XYQuotientValue.x_power(qq, 3) == XYQuotientValue.x_power(qq, 5)

    def test_format(self, qq):
        assert XYQuotientValue.from_parts(qq, 2, {1: 1}, {2: 3}).format() == "3*y^2 + x + 2"

    @given(xy_values, xy_values, xy_values)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(xy_values, xy_values)
    def test_commutative(self, a, b):
        assert a * b == b * a

    @given(xy_values, xy_values, xy_values)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c


class TestPolynomialRingLaws:
    @settings(max_examples=500)
    @given(polys, polys, polys)
    def test_poly_associative_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @given(polys, polys)
    def test_poly_commutative(self, a, b):
        assert a * b == b * a
        assert a + b == b + a

    @given(polys)
    def test_poly_additive_inverse(self, a):
        assert not a + (-a)
        assert a - a == Poly(QQ_FIELD)

    @settings(max_examples=500)
    @given(f7_polys, f7_polys, f7_polys)
    def test_prime_field_poly_laws(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=500)
    @given(polys, polys)
    def test_eval_at_zero_is_multiplicative(self, a, b):
        assert (a * b).eval_at_zero() == a.eval_at_zero() * b.eval_at_zero()
        assert (a + b).eval_at_zero() == a.eval_at_zero() + b.eval_at_zero()

    @given(f7_polys, f7_polys)
    def test_eval_at_zero_multiplicative_mod_p(self, a, b):
        assert (a * b).eval_at_zero() == a.eval_at_zero() * b.eval_at_zero()

    @settings(max_examples=500)
    @given(laurents, laurents, laurents)
    def test_laurent_associative_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(laurents, laurents)
    def test_laurent_commutative(self, a, b):
        assert a * b == b * a

    @given(polys, polys)
    def test_poly_embeds_into_laurent(self, a, b):
        assert LaurentPoly.from_poly(a * b) == LaurentPoly.from_poly(a) * LaurentPoly.from_poly(b)
        assert LaurentPoly.from_poly(a + b) == LaurentPoly.from_poly(a) + LaurentPoly.from_poly(b)


class TestFieldLaws:
    @settings(max_examples=500)
    @given(rationals, rationals, rationals)
    def test_rational_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(rationals)
    def test_rational_inverse(self, a):
        if a:
            assert a * QQ_FIELD.inverse(a) == QQ_FIELD.one
        else:
            with pytest.raises(NotAUnit):
                QQ_FIELD.inverse(a)

    @settings(max_examples=500)
    @given(residues, residues, residues)
    def test_prime_field_laws(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(residues)
    def test_prime_field_inverse(self, a):
        if a:
            assert a * F7_FIELD.inverse(a) == F7_FIELD.one
