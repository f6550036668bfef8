"""The brute-force oracles themselves, against hand values and global identities."""

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals
from metaplectic.base_field import Place, hilbert, weil_index_rank1
from metaplectic.oracles import conic_solvable, gauss_weil_index, hilbert2, hilbert_conic

SMALL = [1, -1, 2, 3, 5, 6, 7, 10, -2, -3, 12, F(3, 4), F(5, 2)]


@pytest.mark.parametrize(
    "a, b, expected",
    [(-1, -1, -1), (2, 3, -1), (3, 3, -1), (2, 5, -1), (2, 7, 1), (-1, 2, 1), (5, 5, 1), (F(1, 2), 3, -1)],
)
def test_hilbert2_hand_values(a, b, expected):
    assert hilbert2(a, b) == expected


@pytest.mark.parametrize("a, k", [(1, 7), (-1, 1), (2, 7), (3, 1), (5, 7), (6, 5), (7, 1), (F(1, 2), 7)])
def test_gauss_2adic_hand_values(a, k):
    assert gauss_weil_index(a, 2).k == k


def test_conic_small_cases():
    assert not conic_solvable(2, 5, 5)  # 2 is a nonsquare unit mod 5
    assert hilbert_conic(-1, -1, 3) == 1
    assert hilbert_conic(3, 3, 3) == -1
    assert hilbert_conic(3, -1, 3) == -1


@pytest.mark.parametrize("a", SMALL)
@pytest.mark.parametrize("b", SMALL)
def test_weil_hilbert_relation_at_2(a, b):
    # gamma(a) gamma(b) = gamma(1) gamma(ab) (a, b)
    lhs = gauss_weil_index(a, 2) * gauss_weil_index(b, 2)
    rhs = gauss_weil_index(1, 2) * gauss_weil_index(a * b, 2)
    assert (lhs.k - rhs.k) % 8 == (0 if hilbert2(a, b) == 1 else 4)


def _bad_primes(x: F) -> set[int]:
    out = set()
    for n in (abs(x.numerator), x.denominator):
        q = 2
        while q * q <= n:
            while n % q == 0:
                out.add(q)
                n //= q
            q += 1
        if n > 1:
            out.add(n)
    return out


@given(nonzero_rationals(60))
def test_gauss_oracle_product_formula(a):
    # only 2, infinity and primes dividing a can contribute
    k = gauss_weil_index(a, 2).k + weil_index_rank1(a, Place.real()).k
    for p in (_bad_primes(a) | {3}) - {2}:
        k += gauss_weil_index(a, p).k
    assert k % 8 == 0


@given(nonzero_rationals(60), nonzero_rationals(60))
def test_hilbert_product_formula_through_oracles(a, b):
    s = hilbert2(a, b) * hilbert(a, b, Place.real())
    for p in (_bad_primes(a) | _bad_primes(b) | {3}) - {2}:
        if p <= 23:
            s *= hilbert_conic(a, b, p)
        else:
            s *= hilbert(a, b, Place.padic(p))
    assert s == 1


@given(st.sampled_from([3, 5, 7]), nonzero_rationals(40))
def test_gauss_oracle_matches_table(p, a):
    assert gauss_weil_index(a, p) == weil_index_rank1(a, Place.padic(p))
