import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaplectic.base_field import Mu8
from metaplectic.cyclotomic import (
    CycNum,
    LevelError,
    abs_square,
    as_mu8,
    cyclotomic_poly,
    gauss_sum,
    p_power_half,
    sqrt_p,
)


def approx(x: CycNum) -> complex:
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / x.level) for k, c in x.coeffs)


@st.composite
def cycnums(draw, levels=(1, 3, 4, 8, 9, 12, 24)):
    n = draw(st.sampled_from(levels))
    terms = draw(st.dictionaries(st.integers(0, n - 1), st.fractions(-5, 5, max_denominator=4), max_size=4))
    return CycNum.from_terms(n, terms)


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_canonical_form():
    # 1 + zeta_3 + zeta_3^2 = 0 and zeta_8^4 = -1
    assert CycNum.from_terms(3, {0: 1, 1: 1, 2: 1}).is_zero()
    assert CycNum.zeta(8, 4) == CycNum.rational(-1)
    assert CycNum.zeta(8, 2) == CycNum.zeta(4, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_sum_square(p):
    g = gauss_sum(p)
    sign = 1 if p % 4 == 1 else -1
    assert g * g == CycNum.rational(sign * p)
    assert sqrt_p(p) * sqrt_p(p) == CycNum.rational(p)
    assert abs(approx(sqrt_p(p)) - p ** 0.5) < 1e-9


def test_p_power_half():
    assert p_power_half(5, 3) == CycNum.rational(5) * sqrt_p(5)
    assert p_power_half(3, -2) == CycNum.rational(F(1, 3))
    assert abs(approx(p_power_half(7, -1)) - 7 ** -0.5) < 1e-12


def test_as_mu8():
    for k in range(8):
        assert as_mu8(CycNum.zeta(8, k)) == Mu8(k)
    with pytest.raises(ValueError):
        as_mu8(CycNum.zeta(3))


def test_level_cap():
    with pytest.raises(LevelError):
        CycNum.zeta(10**9)


def test_json_roundtrip():
    x = CycNum.from_terms(12, {1: F(1, 2), 5: F(-3)})
    assert CycNum.from_json(x.to_json()) == x


@given(cycnums(), cycnums())
def test_arithmetic_matches_complex(x, y):
    assert abs(approx(x + y) - (approx(x) + approx(y))) < 1e-9
    assert abs(approx(x * y) - approx(x) * approx(y)) < 1e-8
    assert abs(approx(x.conj()) - approx(x).conjugate()) < 1e-9


@given(cycnums())
def test_inverse_and_norm(x):
    if x.is_zero():
        return
    assert x * x.inverse() == CycNum.rational(1)
    assert abs(approx(x * x.conj()) - abs(approx(x)) ** 2) < 1e-8


def test_abs_square():
    assert abs_square(gauss_sum(7)) == 7
    assert abs_square(CycNum.zeta(8, 3) * 2) == 4
    with pytest.raises(ValueError):
        abs_square(CycNum.from_terms(8, {0: 1, 1: 1}))
