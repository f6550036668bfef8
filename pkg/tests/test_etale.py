from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaplectic.base_field import REAL, ExtField, Place
from metaplectic.etale import (
    GROUP,
    LIE,
    SO_EVEN,
    SP,
    ClassParam,
    EtaleAlg,
    Factor,
    ParamError,
    char_poly,
    check_realization,
    class_exists,
    from_waldspurger_c,
    matrix_realization,
    sgn_char,
    stable_orbit,
    to_waldspurger_c,
    twist_c,
)
from metaplectic.generators import rand_group_param, rand_lie_param, rng_for

P3 = Place.padic(3)
Q3 = ExtField.base(P3)


def inert(d=-1):
    return Factor(Q3, Q3.elem(d))


def split():
    return Factor(Q3)


def alg(*factors):
    return EtaleAlg(tuple(factors))


def test_inert_needs_nonsquare():
    with pytest.raises(ParamError):
        Factor(Q3, Q3.elem(4))
    with pytest.raises(ParamError):
        Factor(Q3, Q3.elem(7))  # 7 = 1 mod 3 is a square in Q_3


def test_char_poly_by_hand():
    A = alg(inert(), split())
    # inert: a = 3/5 + 4/5 i has P = T^2 - 6/5 T + 1; split: (2, 1/2) gives T^2 - 5/2 T + 1
    a = A.elem([(F(3, 5), F(4, 5)), (2, F(1, 2))])
    assert char_poly(a) == (1, F(-37, 10), F(5), F(-37, 10), 1)


def test_validation_errors():
    A = alg(inert())
    one = A.one()
    good = A.elem([(F(3, 5), F(4, 5))])
    ClassParam(1, GROUP, A, good, one)
    with pytest.raises(ParamError, match="\\+-1"):
        ClassParam(1, GROUP, A, A.elem([(-1, 0)]), one)
    with pytest.raises(ParamError, match="tau"):
        ClassParam(1, GROUP, A, A.elem([(2, 0)]), one)
    with pytest.raises(ParamError, match="epsilon"):
        ClassParam(-1, GROUP, A, good, one)
    with pytest.raises(ParamError, match="Lie"):
        ClassParam(1, LIE, A, good, one)
    # two equal inert factors give a repeated eigenvalue
    B = alg(inert(), inert())
    with pytest.raises(ParamError, match="regular"):
        ClassParam(1, GROUP, B, B.elem([(F(3, 5), F(4, 5))] * 2), B.one())


def test_sgn_char_by_hand():
    A = alg(inert(), split())
    # (3, -1)_3 = -1 and (2, -1)_3 = 1; split factors contribute 1
    assert sgn_char(A, A.sharp([3, 5])) == -1
    assert sgn_char(A, A.sharp([2, 3])) == 1


def test_twists_and_stable_orbit():
    A = alg(inert(), inert(2), split())
    a = A.elem([(F(3, 5), F(4, 5)), (3, 2), (3, F(1, 3))])
    prm = ClassParam(1, GROUP, A, a, A.one())
    tw = twist_c(prm, {0: -1})
    assert sgn_char(A, tw * prm.c.inverse()) == -1
    assert len(stable_orbit(prm, SP)) == 4
    assert len(stable_orbit(prm, SO_EVEN)) == 2
    assert class_exists(SO_EVEN, prm, prm.c)
    assert not class_exists(SO_EVEN, prm.with_c(tw), prm.c)
    with pytest.raises(ParamError):
        twist_c(prm, {2: -1})


def test_waldspurger_normalization_roundtrip():
    prm = rand_group_param(rng_for(3, "w"), P3, 6)
    assert from_waldspurger_c(prm.alg, to_waldspurger_c(prm)) == prm.c


@given(st.integers(0, 10**6), st.sampled_from([P3, Place.padic(5), REAL]), st.sampled_from([1, -1]))
def test_realizations(seed, place, eps):
    rng = rng_for(seed, "real")
    for prm in (rand_group_param(rng, place, 4, epsilon=eps), rand_lie_param(rng, place, 4, epsilon=eps)):
        G, M = matrix_realization(prm)
        assert check_realization(prm, G, M)
