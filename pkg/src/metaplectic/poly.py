"""Dense univariate polynomials, little-endian coefficient tuples.

Two flavours live here: polynomials over ``Fraction`` and polynomials over
``Z/p`` (plain ints reduced mod p).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def trim(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(c: Sequence) -> int:
    return len(trim(c)) - 1


def padd(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def psub(a: Sequence, b: Sequence) -> tuple:
    return padd(a, [-x for x in b])


def pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pscale(c, a: Sequence) -> tuple:
    return trim(c * x for x in a)


def pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Exact division over a field (coefficients Fraction)."""
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = list(trim(a))
    return trim(q), trim(a)


def peval(c: Sequence[T], x: T, one: T, zero: T | None = None) -> T:
    """Horner evaluation in any ring; ``one`` fixes the ring."""
    acc = zero if zero is not None else one * 0
    for coef in reversed(c):
        acc = acc * x + one * coef
    return acc


def pderiv(c: Sequence) -> tuple:
    return trim(i * c[i] for i in range(1, len(c)))


def pcompose(c: Sequence, g: Sequence) -> tuple:
    acc: tuple = ()
    for coef in reversed(c):
        acc = padd(pmul(acc, g), (coef,))
    return acc


def monic_from_roots(roots: Sequence) -> tuple:
    out: tuple = (1,)
    for r in roots:
        out = pmul(out, (-r, 1))
    return out


def pfmt(c: Sequence) -> list[str]:
    return [f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in c]


# --- polynomials over Z/p ------------------------------------------------------


def mod_trim(c: Sequence[int], p: int) -> tuple[int, ...]:
    return trim(x % p for x in c)


def mod_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    return mod_trim(pmul(a, b), p)


def mod_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = list(mod_trim(a, p))
    b = list(mod_trim(b, p))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv % p
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - f * y) % p
        a = list(mod_trim(a, p))
    return mod_trim(q, p), tuple(a)


def mod_rem(a, b, p):
    return mod_divmod(a, b, p)[1]


def mod_gcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = mod_trim(a, p), mod_trim(b, p)
    while b:
        a, b = b, mod_rem(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return mod_trim((x * inv for x in a), p)


def mod_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> tuple[int, ...]:
    out: tuple = (1,)
    b = mod_rem(base, m, p)
    while e:
        if e & 1:
            out = mod_rem(mod_mul(out, b, p), m, p)
        b = mod_rem(mod_mul(b, b, p), m, p)
        e >>= 1
    return out


def mod_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Monic f over F_p is irreducible iff gcd(f, x^{p^d} - x) = 1 for 1 <= d < deg f."""
    f = mod_trim(f, p)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    xp = x
    for _ in range(1, n):
        xp = mod_powmod(xp, p, f, p)
        if mod_gcd(f, mod_trim(psub(xp, x), p), p) != (1,):
            return False
    return True


def apply(c: Sequence, fn: Callable) -> tuple:
    return tuple(fn(x) for x in c)
