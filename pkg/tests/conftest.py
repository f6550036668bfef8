from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def nonzero_rationals(draw, bound=200):
    n = draw(st.integers(-bound, bound).filter(bool))
    d = draw(st.integers(1, bound))
    return Fraction(n, d)


odd_primes = st.sampled_from([3, 5, 7, 11])
