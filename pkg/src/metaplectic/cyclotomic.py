"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A ``CycNum`` is a sparse map exponent -> Fraction reduced modulo the N-th
cyclotomic polynomial, so two numbers of the same level are equal iff their
coefficient maps are.  Numbers of different levels are compared after
raising both to the lcm.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

from .base_field import Mu8, legendre
from .poly import pdivmod

# Large enough for 8 * p^4 with p = 11, the biggest prime the generators use.
LEVEL_CAP = 8 * 11**4


class LevelError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n by exact division of x^n - 1 by Phi_d for proper divisors d."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in _divisors(n)[:-1]:
        num, r = pdivmod(num, cyclotomic_poly(d))
        if r:
            raise ArithmeticError("inexact cyclotomic division")
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _sparse_phi(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(degree, lower-order nonzero terms) of Phi_n."""
    c = cyclotomic_poly(n)
    deg = len(c) - 1
    return deg, tuple((i, v) for i, v in enumerate(c[:-1]) if v)


def _reduce(n: int, terms: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Canonical reduction of sum c_k zeta_n^k."""
    acc: dict[int, Fraction] = {}
    for k, v in terms.items():
        if v:
            k %= n
            acc[k] = acc.get(k, 0) + v
    deg, low = _sparse_phi(n)
    # x^k with k >= deg becomes -sum_i c_i x^{k-deg+i}; work from the top down
    heap = [-k for k in acc if k >= deg]
    heapq.heapify(heap)
    pending = {-h for h in heap}
    while heap:
        k = -heapq.heappop(heap)
        pending.discard(k)
        v = acc.pop(k, 0)
        if not v:
            continue
        shift = k - deg
        for i, c in low:
            j = shift + i
            acc[j] = acc.get(j, 0) - c * v
            if j >= deg and j not in pending:
                heapq.heappush(heap, -j)
                pending.add(j)
    return {k: Fraction(v) for k, v in acc.items() if v}


@dataclass(frozen=True)
class CycNum:
    level: int
    coeffs: tuple[tuple[int, Fraction], ...]

    # construction
    @classmethod
    def from_terms(cls, level: int, terms: Mapping[int, Fraction] | None = None) -> "CycNum":
        if level < 1:
            raise LevelError("level must be positive")
        if level > LEVEL_CAP:
            raise LevelError(f"cyclotomic level {level} exceeds the cap {LEVEL_CAP}")
        red = _reduce(level, terms or {})
        return cls(level, tuple(sorted(red.items())))

    @classmethod
    def rational(cls, x, level: int = 1) -> "CycNum":
        return cls.from_terms(level, {0: Fraction(x)})

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        return cls.from_terms(n, {k % n: Fraction(1)})

    @classmethod
    def from_mu8(cls, m: Mu8) -> "CycNum":
        return cls.zeta(8, m.k)

    @classmethod
    def from_exponent_counts(cls, level: int, counts: Mapping[int, int]) -> "CycNum":
        return cls.from_terms(level, {k: Fraction(v) for k, v in counts.items()})

    # structure
    def terms(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def raise_level(self, m: int) -> "CycNum":
        if m % self.level:
            raise LevelError(f"{m} is not a multiple of {self.level}")
        s = m // self.level
        return CycNum.from_terms(m, {k * s: v for k, v in self.coeffs})

    def _common(self, o: "CycNum"):
        m = _lcm(self.level, o.level)
        a = self if self.level == m else self.raise_level(m)
        b = o if o.level == m else o.raise_level(m)
        return m, a, b

    def __add__(self, o) -> "CycNum":
        o = _coerce(o)
        m, a, b = self._common(o)
        t = a.terms()
        for k, v in b.coeffs:
            t[k] = t.get(k, 0) + v
        return CycNum.from_terms(m, t)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.level, tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, o) -> "CycNum":
        return self + (-_coerce(o))

    def __rsub__(self, o) -> "CycNum":
        return _coerce(o) - self

    def __mul__(self, o) -> "CycNum":
        if isinstance(o, (int, Fraction)):
            return CycNum(self.level, tuple((k, v * o) for k, v in self.coeffs if v * o))
        if isinstance(o, Mu8):
            o = CycNum.from_mu8(o)
        m, a, b = self._common(o)
        t: dict[int, Fraction] = {}
        for i, x in a.coeffs:
            for j, y in b.coeffs:
                k = (i + j) % m
                t[k] = t.get(k, 0) + x * y
        return CycNum.from_terms(m, t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = CycNum.rational(1, self.level), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, o) -> bool:
        if isinstance(o, (int, Fraction, Mu8)):
            o = _coerce(o)
        if not isinstance(o, CycNum):
            return NotImplemented
        _, a, b = self._common(o)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        m = self.minimal()
        return hash((m.level, m.coeffs))

    def conj(self) -> "CycNum":
        return CycNum.from_terms(self.level, {-k: v for k, v in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(k == 0 for k, _ in self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return dict(self.coeffs).get(0, Fraction(0))

    def minimal(self) -> "CycNum":
        """Same number at the smallest level dividing the current one that holds it."""
        for d in _divisors(self.level):
            s = self.level // d
            if all(k % s == 0 for k, _ in self.coeffs):
                cand = CycNum.from_terms(d, {k // s: v for k, v in self.coeffs})
                if cand.raise_level(self.level).coeffs == self.coeffs:
                    return cand
        return self

    def inverse(self) -> "CycNum":
        """Inverse by solving the multiplication system (small levels only)."""
        from . import linalg as la

        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum.rational(1 / self.to_rational(), self.level)
        n = self.level
        deg = len(cyclotomic_poly(n)) - 1
        if deg > 64:
            raise LevelError("inverse only supported for small cyclotomic degree")
        cols = []
        for j in range(deg):
            t = (self * CycNum.zeta(n, j)).raise_level(n).terms() if n > 1 else self.terms()
            cols.append([t.get(i, Fraction(0)) for i in range(deg)])
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        sol = la.solve(la.transpose(tuple(tuple(c) for c in cols)), rhs)
        return CycNum.from_terms(n, {j: v for j, v in enumerate(sol)})

    def __truediv__(self, o) -> "CycNum":
        if isinstance(o, (int, Fraction)):
            return self * (1 / Fraction(o))
        return self * _coerce(o).inverse()

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "coeffs": {str(k): f"{v.numerator}/{v.denominator}" for k, v in self.coeffs},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        return cls.from_terms(int(obj["level"]), {int(k): Fraction(v) for k, v in obj["coeffs"].items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*z{self.level}^{k}" if k else f"{v}" for k, v in self.coeffs)


def _coerce(o) -> CycNum:
    if isinstance(o, CycNum):
        return o
    if isinstance(o, Mu8):
        return CycNum.from_mu8(o)
    if isinstance(o, (int, Fraction)):
        return CycNum.rational(o)
    raise TypeError(f"cannot coerce {type(o).__name__} to CycNum")


# --- the named operations ------------------------------------------------------


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_conj(x: CycNum) -> CycNum:
    return x.conj()


def abs_square(x: CycNum) -> Fraction:
    """x * conj(x) when it is rational."""
    r = x * x.conj()
    if not r.is_rational():
        raise ValueError("|x|^2 is not rational")
    return r.to_rational()


def as_mu8(x: CycNum) -> Mu8:
    for k in range(8):
        if x == CycNum.zeta(8, k):
            return Mu8(k)
    raise ValueError("not an eighth root of unity")


@lru_cache(maxsize=None)
def gauss_sum(p: int) -> CycNum:
    """sum_{x mod p} (x/p) zeta_p^x."""
    return CycNum.from_terms(p, {x: Fraction(legendre(x, p)) for x in range(1, p)})


@lru_cache(maxsize=None)
def sqrt_p(p: int) -> CycNum:
    """The positive square root of p, via the Gauss sum and a fourth root of unity."""
    g = gauss_sum(p)
    return g if p % 4 == 1 else g * CycNum.zeta(4, 3)


def p_power_half(p: int, v: int) -> CycNum:
    """p^{v/2} (positive) for any integer v."""
    r = CycNum.rational(Fraction(p) ** (v // 2))
    return r * sqrt_p(p) if v % 2 else r
