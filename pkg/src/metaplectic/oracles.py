"""Brute-force routines used only to cross-check the closed-form code paths."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .base_field import Mu8, vp
from .cyclotomic import CycNum, abs_square, as_mu8


def _strip_squares(x: Fraction, p: int) -> Fraction:
    v = vp(x, p)
    return x / Fraction(p) ** (v - v % 2)


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> frozenset:
    return frozenset(x * x % m for x in range(m))


def _residue(x: Fraction, m: int) -> int:
    return x.numerator * pow(x.denominator, -1, m) % m


def conic_solvable(a, b, p: int) -> bool:
    """Does z^2 = a x^2 + b y^2 have a primitive solution mod p^3?

    a, b are first divided by even powers of p, so their valuations are 0 or 1.
    Scaling by units lets us take x = 1, or x in pZ and y = 1.
    """
    a, b = _strip_squares(Fraction(a), p), _strip_squares(Fraction(b), p)
    m = p**3
    A, B = _residue(a, m), _residue(b, m)
    sq = _squares_mod(m)
    if any((A + B * y * y) % m in sq for y in range(m)):
        return True
    return any((A * x * x + B) % m in sq for x in range(0, m, p))


def hilbert_conic(a, b, p: int) -> int:
    return 1 if conic_solvable(a, b, p) else -1


def hilbert2(a, b) -> int:
    """The 2-adic Hilbert symbol from the explicit formula in eps and omega."""

    def split(x: Fraction) -> tuple[int, int]:
        n, d, e = x.numerator, x.denominator, 0
        while n % 2 == 0:
            n //= 2
            e += 1
        while d % 2 == 0:
            d //= 2
            e -= 1
        return e, (n * d) % 8  # n/d = n d mod 8 since d^2 = 1 mod 8

    al, u = split(Fraction(a))
    be, v = split(Fraction(b))

    def eps(t):
        return ((t - 1) // 2) % 2

    def om(t):
        return ((t * t - 1) // 8) % 2

    return -1 if (eps(u) * eps(v) + al * om(v) + be * om(u)) % 2 else 1


def gauss_weil_index(a, p: int) -> Mu8:
    """gamma_psi(<a>) at Q_p (p = 2 allowed) as a normalized quadratic Gauss sum.

    With psi(x) = exp(-2 pi i {x}_p), the integral of psi(a x^2) over
    p^{-N} Z_p is a finite sum over y mod p^M of psi(a y^2 / p^{2N}), where
    M is large enough that the integrand is constant on cosets of p^M.
    """
    a = Fraction(a)
    if a == 0:
        raise ZeroDivisionError("Weil index of <0>")
    v = vp(a, p)
    u = a / Fraction(p) ** v
    extra = 3 if p == 2 else 1
    N = max(0, (v + extra + 1) // 2)
    while 2 * N - v < extra:
        N += 1
    k = 2 * N - v  # a y^2 / p^{2N} = u y^2 / p^k
    M = k + (1 if p == 2 else 0)
    mod = p**k
    U = _residue(u, mod)
    counts: dict[int, int] = {}
    for y in range(p**M):
        e = (-U * y * y) % mod
        counts[e] = counts.get(e, 0) + 1
    s = CycNum.from_exponent_counts(mod, counts)
    r = abs_square(s)
    # |s| is a power of sqrt(p); divide it out
    w = 0
    while r > 1:
        r /= p
        w += 1
    if r != 1:
        raise ArithmeticError("unexpected Gauss sum modulus")
    from .cyclotomic import p_power_half

    if p == 2:
        root = CycNum.rational(Fraction(2) ** (w // 2))
        if w % 2:
            root = root * (CycNum.zeta(8, 1) + CycNum.zeta(8, 7))
        return as_mu8(s * root.inverse())
    return as_mu8(s * p_power_half(p, -w))


def gauss_weil_diag(entries, p: int) -> Mu8:
    out = Mu8(0)
    for e in entries:
        out = out * gauss_weil_index(e, p)
    return out
