"""Brute-force lattice sums in floating point, independent of the Smith reduction."""

import cmath
from fractions import Fraction

from metaplectic import linalg as la
from metaplectic.symplectic import J


def frac_p(x: Fraction, p: int) -> Fraction:
    """{x}_p in [0, 1)."""
    x = Fraction(x)
    d, k = x.denominator, 0
    while d % p == 0:
        d //= p
        k += 1
    if k == 0:
        return Fraction(0)
    m = p**k
    return Fraction(x.numerator * d * pow(d * d, -1, m) % m, m)


def theta_brute(x, p: int) -> complex:
    m = len(x)
    gens = [tuple(frac_p(c, p) for c in col) for col in la.transpose(la.inverse(la.sub(x, la.identity(m))))]
    seen = {tuple([Fraction(0)] * m)}
    frontier = list(seen)
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                v = tuple(frac_p(a + b, p) for a, b in zip(w, g))
                if v not in seen:
                    seen.add(v)
                    new.append(v)
        frontier = new
    Jn = J(m // 2)
    total = 0
    for w in seen:
        xw = la.mul_vec(x, w)
        val = sum(a * b for a, b in zip(xw, la.mul_vec(Jn, w))) / 2
        total += cmath.exp(-2j * cmath.pi * frac_p(val, p))
    return total
