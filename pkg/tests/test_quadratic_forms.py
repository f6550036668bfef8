from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, odd_primes
from metaplectic import linalg as la
from metaplectic.base_field import REAL, Mu8, Place
from metaplectic.generators import rand_lie_param, rng_for
from metaplectic.oracles import gauss_weil_diag
from metaplectic.quadratic_forms import (
    FormError,
    QForm,
    dual_basis_traces,
    hasse,
    isometric,
    pfaffian_check,
    q1_q2_classes,
    signature,
    weil_global,
    weil_index,
    witt_class,
    witt_equal,
)

# zeta_8 exponents frozen from the Gauss-sum oracle.
WEIL_DIAG = [
    ([1, 3], 3, 6),
    ([3, 3], 3, 4),
    ([2, 6, 3], 3, 0),
    ([1, 1], 5, 0),
    ([5, 10], 5, 4),
    ([7, 7, 7], 7, 2),
]


@pytest.mark.parametrize("entries,p,k", WEIL_DIAG)
def test_weil_index_frozen(entries, p, k):
    assert weil_index(QForm.diagonal(Place.padic(p), entries)) == Mu8(k)


def test_real_weil_index_is_signature():
    q = QForm.diagonal(REAL, [1, 2, -3, 5])
    assert signature(q) == (3, 1)
    assert weil_index(q) == Mu8(2)


def test_witt_classes():
    P3 = Place.padic(3)
    # -1 is not a square in Q_3, so <1, 1> is anisotropic
    assert witt_class(QForm.diagonal(P3, [1, 1])).rank == 2
    assert witt_class(QForm.diagonal(Place.padic(5), [1, 1])).rank == 0
    # the quaternion norm form over Q_3 ramified at 3 is anisotropic of rank 4
    assert witt_class(QForm.diagonal(P3, [1, 1, 3, 3])).rank == 4
    assert hasse(QForm.diagonal(P3, [3, 3])) == -1


def test_degenerate_rejected():
    with pytest.raises(FormError):
        QForm(REAL, la.mat([[1, 1], [1, 1]]))
    with pytest.raises(FormError):
        QForm(REAL, la.mat([[1, 2], [0, 1]]))


def test_from_degenerate_drops_radical():
    q = QForm.from_degenerate(REAL, la.mat([[1, 1, 0], [1, 1, 0], [0, 0, -2]]))
    assert q.rank == 2 and signature(q) == (1, 1)


@given(st.lists(nonzero_rationals(40), min_size=1, max_size=4), odd_primes)
def test_weil_index_matches_gauss_oracle(entries, p):
    assert weil_index(QForm.diagonal(Place.padic(p), entries)) == gauss_weil_diag(entries, p)


@given(st.lists(nonzero_rationals(40), min_size=1, max_size=6))
def test_global_product_and_two_adic_complement(entries):
    g = weil_global(entries)
    assert g.factor2 == gauss_weil_diag(entries, 2)


@given(st.lists(nonzero_rationals(), min_size=1, max_size=3), odd_primes)
def test_witt_cancellation(entries, p):
    P = Place.padic(p)
    q = QForm.diagonal(P, entries)
    assert witt_class(q + (-q)).is_zero
    assert witt_equal(q + QForm.hyperbolic(P), q)
    assert isometric(q + QForm.hyperbolic(P), QForm.hyperbolic(P) + q)


@pytest.mark.parametrize("P", [(1, 0, 1), (-2, 0, 0, 1), (5, 1, -3, 0, 1), (1, -1, 2, 0, 3, 1)])
def test_trace_lemmas(P):
    P = tuple(F(c) for c in P)
    _, pairing = dual_basis_traces(P)
    assert pairing == la.identity(len(P) - 1)
    for p in (3, 5, 7):
        _, _, ok1, ok2 = q1_q2_classes(P, Place.padic(p))
        assert ok1 and ok2


def test_pfaffian_on_seeded_params():
    for i in range(20):
        rng = rng_for(7, "pf", i)
        place = [Place.padic(3), Place.padic(5), REAL][i % 3]
        assert pfaffian_check(rand_lie_param(rng, place, 6, epsilon=1))
