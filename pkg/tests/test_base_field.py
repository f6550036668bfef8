from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, odd_primes
from metaplectic.base_field import (
    REAL,
    ExtField,
    Mu8,
    Place,
    PlaceError,
    hilbert,
    hilbert_global,
    is_square,
    legendre,
    odd_primes as primes_of,
    valuation,
    vp,
    weil_index_rank1,
)
from metaplectic.oracles import gauss_weil_index, hilbert2, hilbert_conic

# Hilbert tables on the square classes {1, n, p, np} (n the least nonresidue),
# frozen from the mod p^3 conic-solvability oracle.
HILBERT_TABLES = {
    3: (2, [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]]),
    5: (2, [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]),
    7: (3, [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]]),
}

# zeta_8 exponents of gamma_psi(<a>) frozen from normalized Gauss sums.
WEIL_RANK1 = {
    3: {1: 0, 2: 0, 3: 6, 6: 2, -1: 0},
    5: {1: 0, 2: 0, 5: 0, 10: 4, -1: 0},
    7: {1: 0, 3: 0, 7: 6, 21: 2, -1: 0},
}


@pytest.mark.parametrize("p", sorted(HILBERT_TABLES))
def test_hilbert_table(p):
    n, table = HILBERT_TABLES[p]
    reps = [1, n, p, n * p]
    got = [[hilbert(a, b, Place.padic(p)) for b in reps] for a in reps]
    assert got == table


@pytest.mark.parametrize("p", sorted(WEIL_RANK1))
def test_weil_rank1_table(p):
    for a, k in WEIL_RANK1[p].items():
        assert weil_index_rank1(a, Place.padic(p)) == Mu8(k)


def test_real_place():
    assert hilbert(-1, -1, REAL) == -1
    assert hilbert(-1, 2, REAL) == 1
    assert weil_index_rank1(1, REAL) == Mu8(1)
    assert weil_index_rank1(-3, REAL) == Mu8(7)


def test_place_rejects_two_and_composites():
    for bad in (2, 4, 9, 1, 0, -3):
        with pytest.raises(PlaceError):
            Place.padic(bad)


def test_valuations():
    assert vp(F(18, 5), 3) == 2
    assert vp(F(5, 27), 3) == -3
    K = ExtField.ramified(3, 2)
    assert valuation(F(3), K) == 2
    assert valuation(K.uniformizer(), K) == 1


def test_squares_in_extensions():
    K = ExtField.unramified(3, [2, 2, 1])  # F_9 over F_3
    # every element of Q_3 that is a unit is a square in the unramified quadratic extension
    assert is_square(F(2), K)
    assert not is_square(F(3), K)
    assert legendre(2, 3) == -1


@given(nonzero_rationals(), nonzero_rationals(), odd_primes)
def test_hilbert_matches_conic_oracle(a, b, p):
    assert hilbert(a, b, Place.padic(p)) == hilbert_conic(a, b, p)


@given(nonzero_rationals(), nonzero_rationals(), nonzero_rationals(), odd_primes)
def test_hilbert_bimultiplicative(a, b, c, p):
    P = Place.padic(p)
    assert hilbert(a, b * c, P) == hilbert(a, b, P) * hilbert(a, c, P)
    assert hilbert(a, b, P) == hilbert(b, a, P)
    assert hilbert(a, -a, P) == 1


@given(nonzero_rationals(), nonzero_rationals())
def test_hilbert_reciprocity_complement(a, b):
    g = hilbert_global(a, b)
    assert g.factor2 == hilbert2(a, b)
    assert set(g.local) == {"inf", *primes_of(a, b)}
    # odd primes outside the support contribute 1
    # a and b have at most 12 odd primes between them, so one of these is free
    free = next(q for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61) if q not in g.local)
    assert hilbert(a, b, Place.padic(free)) == 1


@given(nonzero_rationals(60), odd_primes)
def test_weil_rank1_matches_gauss_sums(a, p):
    assert weil_index_rank1(a, Place.padic(p)) == gauss_weil_index(a, p)


@given(st.integers(0, 7), st.integers(0, 7))
def test_mu8_group(j, k):
    assert Mu8(j) * Mu8(k) == Mu8(j + k)
    assert Mu8(j) * Mu8(j).inverse() == Mu8(0)
    assert Mu8(j) ** 8 == Mu8(0)
