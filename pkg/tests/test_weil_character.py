import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaplectic import linalg as la
from metaplectic.cyclotomic import CycNum
from metaplectic.generators import rand_sp_integral, rand_top_unipotent, rng_for
from metaplectic.weil_character import (
    ThetaError,
    in_K,
    local_smith,
    reduction_regular,
    theta_decompose,
    theta_lattice,
    theta_ratio_sides,
    theta_via_cayley,
    top_unipotent,
)
from theta_oracle import theta_brute

R3, R5 = 3**0.5, 5**0.5

# values frozen from the brute-force sum in theta_oracle
FROZEN = [
    ([[1, 3], [3, 10]], 3, 3),
    ([[1, 9], [9, 82]], 3, 9),
    ([[89, 20], [40, 9]], 3, -1j * R3),
    ([[F(13, 31), F(-24, 31)], [F(72, 31), F(-59, 31)]], 3, 3j * R3),
    ([[-6, 1], [-4, F(1, 2)]], 5, -R5),
    ([[143, -40, 16, 39], [24, -5, 3, 6], [-68, 17, -8, -18], [-19, 16, 0, -8]], 3, -3j * R3),
]


def approx(x: CycNum) -> complex:
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / x.level) for k, c in x.coeffs)


@pytest.mark.parametrize("x,p,value", FROZEN)
def test_frozen_values(x, p, value):
    t = theta_lattice(la.mat(x), p)
    assert abs(approx(t.value) - value) < 1e-9
    assert t.terms == p ** t.det_minus_val


def test_trivial_cases():
    for p in (3, 5, 7):
        for n in (1, 2):
            assert theta_lattice(la.scalar(-1, 2 * n), p).value == CycNum.rational(1)
    # (x - 1) invertible over Z_3: one term
    x = la.mat([[0, -1], [1, 0]])
    assert theta_lattice(x, 3).terms == 1 and reduction_regular(x, 3)


def test_preconditions():
    with pytest.raises(ThetaError):
        theta_lattice(la.mat([[1, 3], [0, 1]]), 3)
    with pytest.raises(ThetaError):
        theta_lattice(la.mat([[3, 0], [0, F(1, 3)]]), 3)
    with pytest.raises(ThetaError):
        theta_via_cayley(la.mat([[0, -1], [1, 0]]), 3)


def test_local_smith():
    a = la.mat([[3, 0], [0, 9]])
    _, ks = local_smith(a, 3)
    assert sorted(ks) == [1, 2]
    _, ks = local_smith(la.mat([[1, 5], [2, 7]]), 3)  # det = -3
    assert ks == [0, 1]
    _, ks = local_smith(la.mat([[1, 5], [2, 8]]), 3)
    assert ks == [0, 0]


@pytest.mark.parametrize("i", range(24))
def test_against_brute_force(i):
    rng = rng_for(11, "theta", i)
    p, n = rng.choice((3, 5)), rng.randint(1, 2)
    x = rand_top_unipotent(rng, n, p, max_val=4) if i % 2 else rand_sp_integral(rng, n, p)
    if la.det(la.sub(x, la.identity(2 * n))) == 0:
        return
    assert abs(approx(theta_lattice(x, p).value) - theta_brute(x, p)) < 1e-7


@given(st.integers(0, 10**6), st.sampled_from([3, 5]), st.sampled_from([1, 2]))
def test_cayley_and_ratio(seed, p, n):
    rng = rng_for(seed, "cay")
    x = rand_top_unipotent(rng, n, p, max_val=4)
    assert top_unipotent(x, p) and in_K(x, p)
    assert theta_lattice(x, p).value == theta_via_cayley(x, p).value
    lhs, rhs = theta_ratio_sides(x, p)
    assert lhs == rhs


@given(st.integers(0, 10**6))
def test_regular_reduction_gives_one(seed):
    rng = rng_for(seed, "reg")
    for _ in range(50):
        x = rand_sp_integral(rng, rng.randint(1, 2), 5)
        if reduction_regular(x, 5):
            one = CycNum.rational(1)
            assert theta_lattice(x, 5).value == one
            assert theta_lattice(la.neg(x), 5).value == one
            return


def test_decompose():
    a = la.mat([[1, 3], [3, 10]])
    b = la.mat([[89, 20], [40, 9]])
    whole, prod = theta_decompose([a, b], 3)
    assert whole == prod
