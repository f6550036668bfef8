from fractions import Fraction as F

from hypothesis import given, strategies as st

from metaplectic import linalg as la
from metaplectic.poly import mod_gcd, mod_is_irreducible, monic_from_roots, pdivmod, pmul, padd, pcompose

small = st.integers(-4, 4).map(F)


@st.composite
def square(draw, n=None):
    n = n or draw(st.integers(1, 4))
    return la.mat([[draw(small) for _ in range(n)] for _ in range(n)])


def test_det_and_inverse():
    a = la.mat([[2, 1], [7, 4]])
    assert la.det(a) == 1
    assert la.inverse(a) == la.mat([[4, -1], [-7, 2]])


def test_charpoly_companion():
    # companion matrix of T^3 - 2T + 5
    c = la.mat([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
    assert la.charpoly(c) == (5, -2, 0, 1)


def test_kernel_and_rank():
    a = la.mat([[1, 2, 3], [2, 4, 6]])
    assert la.rank(a) == 1
    for v in la.kernel(a):
        assert all(x == 0 for x in la.mul_vec(a, v))
    assert len(la.kernel(a)) == 2


@given(square(), square())
def test_det_multiplicative(a, b):
    if len(a) != len(b):
        b = la.identity(len(a))
    assert la.det(la.mul(a, b)) == la.det(a) * la.det(b)


@given(square())
def test_inverse_property(a):
    if la.det(a) == 0:
        assert la.rank(a) < len(a)
        return
    assert la.mul(a, la.inverse(a)) == la.identity(len(a))


@given(square())
def test_sym_diagonalize(a):
    g = la.add(a, la.transpose(a))
    d, P = la.sym_diagonalize(g)
    assert la.congruence(P, g) == la.diag(d)
    assert la.det(P) != 0
    assert sum(1 for x in d if x) == la.rank(g)


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4))
def test_poly_division(a, b):
    b = list(b) + [F(1)]
    q, r = pdivmod(a, b)
    assert padd(pmul(q, b), r) == padd(a, (0,))
    assert len(r) < len(b) or all(x == 0 for x in r)


def test_compose_and_roots():
    P = monic_from_roots([F(1), F(2)])
    assert P == (2, -3, 1)
    # P(T + 1) has roots 0 and 1
    assert pcompose(P, (1, 1)) == (0, -1, 1)


def test_mod_p_polys():
    assert mod_is_irreducible((1, 0, 1), 3)
    assert not mod_is_irreducible((1, 0, 1), 5)
    assert mod_gcd((0, 1, 1), (1, 1), 3) == (1, 1)
