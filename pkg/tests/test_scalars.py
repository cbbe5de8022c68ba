"""Exact scalar ring tests: Gaussian rationals and cyclotomic phase sums."""

import cmath
from fractions import Fraction
from math import pi

import pytest
from hypothesis import given, settings, strategies as st

from nctorus import PhaseCoefficient, QQi, cyclotomic_polynomial

F = Fraction


def pc_angle(q, r=1):
    return PhaseCoefficient.unit_angle(F(q), F(r))


class TestQQi:
    def test_arithmetic(self):
        a = QQi(F(1, 2), F(1, 3))
        b = QQi(F(-1), F(2))
        assert a + b == QQi(F(-1, 2), F(7, 3))
        assert a * b == QQi(F(1, 2) * F(-1) - F(1, 3) * F(2),
                            F(1, 2) * F(2) + F(1, 3) * F(-1))
        assert (a / b) * b == a
        assert a.conjugate().im == -a.im
        assert a.abs2() == F(1, 4) + F(1, 9)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            QQi.of(1) / QQi.of(0)

    def test_complex_conversion(self):
        z = QQi(F(3, 4), F(-2, 5))
        assert complex(z) == 0.75 - 0.4j


class TestCyclotomic:
    def test_small_polynomials(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(2) == (1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    @pytest.mark.parametrize("n", [5, 7, 8, 9, 15, 24, 105])
    def test_root_annihilation(self, n):
        coeffs = cyclotomic_polynomial(n)
        z = cmath.exp(2j * pi / n)
        value = sum(c * z**k for k, c in enumerate(coeffs))
        assert abs(value) < 1e-9


class TestPhaseCoefficient:
    def test_zero_detection_primitive_roots(self):
        z = pc_angle("1/3") + pc_angle("2/3") + 1
        assert z.is_zero()
        assert z == 0

    def test_zero_detection_fifth_roots(self):
        z = sum((pc_angle(F(k, 5)) for k in range(1, 5)),
                PhaseCoefficient.from_rational(1))
        assert z.is_zero()

    def test_nonzero(self):
        assert not (pc_angle("1/3") + pc_angle("2/3")).is_zero()
        assert pc_angle("1/3") + pc_angle("2/3") == -1

    def test_half_angle_normalization(self):
        assert str(pc_angle("1/2")) == "-1"
        assert str(pc_angle("5/6")) == "-1*e(1/3)"

    def test_canonical_string(self):
        assert str(PhaseCoefficient.from_rational(F(-3, 4))) == "-3/4"
        assert str(pc_angle("1/3", "1/2")) == "1/2*e(1/3)"
        assert str(PhaseCoefficient.zero()) == "0"
        assert str(PhaseCoefficient.symbolic_unit(2)) == "E(2)"

    def test_equality_is_semantic(self):
        a = pc_angle("1/3") + pc_angle("2/3")
        b = PhaseCoefficient.from_rational(-1)
        assert a == b
        assert not (a == PhaseCoefficient.from_rational(1))

    def test_to_qqi(self):
        assert pc_angle("1/4").to_qqi() == QQi(F(0), F(1))
        assert pc_angle("1/3").to_qqi() is None
        z = pc_angle("1/3") + pc_angle("2/3")
        assert z.to_qqi() == QQi(F(-1), F(0))
        assert z.to_rational() == -1
        mixed = pc_angle("1/8") + pc_angle("5/8")
        assert mixed.to_qqi() == QQi()  # opposite eighth roots cancel

    def test_to_qqi_symbolic(self):
        z = PhaseCoefficient.symbolic_unit(1)
        assert z.to_qqi() is None
        w = z - z  # cancels
        assert w.to_qqi() == QQi()

    def test_symbolic_products(self):
        a = PhaseCoefficient.symbolic_unit(2)
        b = PhaseCoefficient.symbolic_unit(-2)
        assert a * b == 1
        assert a.conjugate() == b

    def test_conjugate(self):
        z = pc_angle("1/3", "1/2") + PhaseCoefficient.symbolic_unit(1)
        w = z.conjugate()
        assert w == pc_angle("2/3", "1/2") + PhaseCoefficient.symbolic_unit(-1)

    def test_to_complex(self):
        z = pc_angle("1/8", "2") + 1
        expected = 2 * cmath.exp(2j * pi / 8) + 1
        assert abs(z.to_complex() - expected) < 1e-12

    def test_to_complex_symbolic_needs_beta(self):
        z = PhaseCoefficient.symbolic_unit(1)
        with pytest.raises(ValueError):
            z.to_complex()
        value = z.to_complex(beta_value=0.25)
        assert abs(value - 1j) < 1e-12

    def test_reduce_is_canonical_on_equal_values(self):
        # one half via thirds: (-1/2)(e(1/3) + e(2/3)) = 1/2
        a = pc_angle("1/3", "-1/2") + pc_angle("2/3", "-1/2")
        b = PhaseCoefficient.from_rational(F(1, 2))
        assert a.reduce()._terms == b.reduce()._terms


angles = st.fractions(min_value=0, max_value=1, max_denominator=12)
weights = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@st.composite
def phase_sums(draw):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        q = draw(angles) % 1
        r = draw(weights)
        terms[(q, 0)] = terms.get((q, 0), F(0)) + r
    return PhaseCoefficient(terms)


@given(phase_sums(), phase_sums())
@settings(max_examples=80)
def test_arithmetic_matches_numeric(a, b):
    for exact, numeric in [
        (a + b, a.to_complex() + b.to_complex()),
        (a * b, a.to_complex() * b.to_complex()),
        (a - b, a.to_complex() - b.to_complex()),
        (a.conjugate(), a.to_complex().conjugate()),
    ]:
        assert abs(exact.to_complex() - numeric) < 1e-9


@given(phase_sums())
@settings(max_examples=80)
def test_zero_test_matches_numeric(a):
    if a.is_zero():
        assert abs(a.to_complex()) < 1e-9
    else:
        assert abs(a.to_complex()) > 1e-12


@given(phase_sums())
@settings(max_examples=60)
def test_reduce_preserves_value(a):
    assert abs(a.reduce().to_complex() - a.to_complex()) < 1e-9
    assert a.reduce() == a


@given(phase_sums())
@settings(max_examples=60)
def test_to_qqi_round_trip(a):
    z = a.to_qqi()
    if z is not None:
        assert abs(complex(z) - a.to_complex()) < 1e-9
        assert PhaseCoefficient.from_qqi(z) == a
