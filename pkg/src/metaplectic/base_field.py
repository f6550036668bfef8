"""Completions of Q, tame extensions presented as towers, Hilbert symbols.

A place is either an odd prime p or the real place.  Finite extensions of
Q_p are given as an unramified stage Q_p(theta), theta a root of a monic
lift of an irreducible polynomial over F_p, followed by an Eisenstein
stage in pi.  Elements are exact rational coordinate vectors in the
integral basis theta^j pi^i, so valuations and residues are exact.

The additive character is fixed once per place:

* real place: psi(x) = exp(2 pi i x);
* p-adic place: psi(x) = exp(-2 pi i {x}_p), conductor Z_p.

The minus sign at p makes psi_R * prod_p psi_p trivial on Q, which is what
the adelic product formulas need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import inf
from typing import Sequence, Union

from . import linalg as la
from .poly import mod_is_irreducible, pmul

Sign = int


class PlaceError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class Place:
    """An odd prime ``p`` or the real place (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise PlaceError(f"{self.p!r} is not a prime")
            if self.p == 2:
                raise PlaceError("the place 2 is not supported")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def padic(cls, p: int) -> "Place":
        return cls(int(p))

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "R" if self.p is None else f"Q_{self.p}"

    def to_json(self):
        return "real" if self.p is None else self.p


REAL = Place.real()


@dataclass(frozen=True)
class PsiSpec:
    """The fixed additive character of a place (see module docstring)."""

    place: Place

    @property
    def sign(self) -> int:
        # psi(x) = exp(2 pi i * sign * x)
        return 1 if self.place.is_real else -1


# --- sign / mu_8 -------------------------------------------------------------


@dataclass(frozen=True)
class Mu8:
    """zeta_8^k, stored by its exponent mod 8."""

    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 8)

    def __mul__(self, other: "Mu8 | int") -> "Mu8":
        if isinstance(other, Mu8):
            return Mu8(self.k + other.k)
        if other in (1, -1):
            return Mu8(self.k + (0 if other == 1 else 4))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "Mu8 | int") -> "Mu8":
        if isinstance(other, int):
            other = Mu8.sign(other)
        return Mu8(self.k - other.k)

    def __pow__(self, e: int) -> "Mu8":
        return Mu8(self.k * e)

    def inverse(self) -> "Mu8":
        return Mu8(-self.k)

    @staticmethod
    def sign(s: int) -> "Mu8":
        if s not in (1, -1):
            raise ValueError("not a sign")
        return Mu8(0 if s == 1 else 4)

    def as_sign(self) -> int:
        if self.k == 0:
            return 1
        if self.k == 4:
            return -1
        raise ValueError(f"zeta_8^{self.k} is not a sign")

    def __repr__(self) -> str:
        return f"Mu8({self.k})"


# --- rationals at a place ------------------------------------------------------


def vp_int(n: int, p: int) -> int:
    if n == 0:
        return inf  # type: ignore[return-value]
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Fraction, p: int):
    x = Fraction(x)
    if x == 0:
        return inf
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def mod_p(x: Fraction, p: int) -> int:
    """Image of a p-integral rational in Z/p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    return next(n for n in range(2, p) if legendre(n, p) == -1)


# --- residue fields ------------------------------------------------------------


@dataclass(frozen=True)
class FqElem:
    """An element of F_p[t]/(modulus), coefficient vector over F_p."""

    p: int
    modulus: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.modulus) - 1

    @property
    def q(self) -> int:
        return self.p ** self.f

    def _make(self, c) -> "FqElem":
        from .poly import mod_rem

        r = mod_rem(c, self.modulus, self.p)
        return FqElem(self.p, self.modulus, tuple(r) + (0,) * (self.f - len(r)))

    def __mul__(self, o: "FqElem") -> "FqElem":
        return self._make(pmul(self.coeffs, o.coeffs))

    def __add__(self, o: "FqElem") -> "FqElem":
        return self._make([a + b for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self) -> "FqElem":
        return self._make([-a for a in self.coeffs])

    def __pow__(self, e: int) -> "FqElem":
        out = self.one()
        base = self
        if e < 0:
            base, e = base ** (self.q - 2), -e
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def one(self) -> "FqElem":
        return self._make([1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def quadratic_character(self) -> int:
        """Euler's criterion by square-and-multiply."""
        if self.is_zero():
            return 0
        r = self ** ((self.q - 1) // 2)
        if r.is_one():
            return 1
        if (-r).is_one():
            return -1
        raise ArithmeticError("Euler criterion returned neither 1 nor -1")


# --- extension fields ----------------------------------------------------------

Number = Union[int, Fraction]


@dataclass(frozen=True)
class ExtField:
    """K# = Q_p(theta)(pi) as an unramified-then-Eisenstein tower.

    ``f_poly``: monic, little-endian, integer coefficients in [0, p),
    irreducible mod p.  ``e_poly``: monic of degree e, coefficient ``i`` is a
    list of f rationals (coordinates on 1, theta, ..., theta^{f-1}).

    The real place is allowed only with the trivial tower (K# = R).
    """

    place: Place
    f_poly: tuple[int, ...] = (0, 1)
    e_poly: tuple[tuple[Fraction, ...], ...] = ((Fraction(0),), (Fraction(1),))

    def __post_init__(self):
        fp = tuple(int(c) for c in self.f_poly)
        ep = tuple(tuple(Fraction(x) for x in c) for c in self.e_poly)
        object.__setattr__(self, "f_poly", fp)
        f = len(fp) - 1
        ep = tuple(tuple(c) + (Fraction(0),) * (f - len(c)) for c in ep)
        object.__setattr__(self, "e_poly", ep)
        if f < 1 or fp[-1] != 1:
            raise PlaceError("unramified polynomial must be monic of degree >= 1")
        e = len(ep) - 1
        if e < 1 or ep[-1] != (Fraction(1),) + (Fraction(0),) * (f - 1):
            raise PlaceError("Eisenstein polynomial must be monic of degree >= 1")
        if self.place.is_real:
            if f != 1 or e != 1:
                raise PlaceError("only the trivial extension is supported at the real place")
            return
        p = self.place.p
        if any(len(c) != f for c in ep):
            raise PlaceError("Eisenstein coefficients must have f coordinates")
        if not mod_is_irreducible(fp, p):
            raise PlaceError("unramified polynomial is not irreducible mod p")
        if e > 1:
            for i in range(e):
                if min(vp(x, p) for x in ep[i]) < 1:
                    raise PlaceError("Eisenstein polynomial: coefficient not in the maximal ideal")
            # constant term must have valuation exactly 1 in the unramified field
            if min(vp(x, p) for x in ep[0]) != 1:
                raise PlaceError("Eisenstein polynomial: constant term must have valuation 1")
        # e = 1: ep = (c0, 1); only pi = -c0 is allowed, and we need pi = p
        elif ep[0] != (Fraction(-p),) + (Fraction(0),) * (f - 1):
            raise PlaceError("for e = 1 the Eisenstein polynomial must be x - p")

    # constructors
    @classmethod
    def base(cls, place: Place) -> "ExtField":
        if place.is_real:
            return cls(place, (0, 1), ((Fraction(0),), (Fraction(1),)))
        return cls(place, (0, 1), ((Fraction(-place.p),), (Fraction(1),)))

    @classmethod
    def unramified(cls, p: int, f_poly: Sequence[int]) -> "ExtField":
        f = len(f_poly) - 1
        return cls(Place(p), tuple(f_poly), ((Fraction(-p),) + (Fraction(0),) * (f - 1), (Fraction(1),) + (Fraction(0),) * (f - 1)))

    @classmethod
    def ramified(cls, p: int, e: int, unit: int = 1) -> "ExtField":
        """Q_p(pi), pi^e = p * unit."""
        coeffs = [(Fraction(-p * unit),)] + [(Fraction(0),)] * (e - 1) + [(Fraction(1),)]
        return cls(Place(p), (0, 1), tuple(coeffs))

    @property
    def p(self) -> int | None:
        return self.place.p

    @property
    def f(self) -> int:
        return len(self.f_poly) - 1

    @property
    def e(self) -> int:
        return len(self.e_poly) - 1

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def is_base(self) -> bool:
        return self.degree == 1

    @property
    def q(self) -> int:
        return self.place.p ** self.f

    def __str__(self) -> str:
        if self.is_base:
            return str(self.place)
        return f"{self.place}(f={self.f}, e={self.e})"

    # element helpers
    def elem(self, x) -> "ExtElem":
        if isinstance(x, ExtElem):
            if x.field != self:
                raise ValueError("element of another field")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) != self.degree:
                raise ValueError("coordinate vector of wrong length")
            return ExtElem(self, tuple(Fraction(c) for c in x))
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(x)
        return ExtElem(self, tuple(c))

    def zero(self) -> "ExtElem":
        return self.elem(0)

    def one(self) -> "ExtElem":
        return self.elem(1)

    def basis(self) -> list["ExtElem"]:
        return [ExtElem(self, tuple(la.identity(self.degree)[i])) for i in range(self.degree)]

    def theta(self) -> "ExtElem":
        c = [Fraction(0)] * self.degree
        if self.f > 1:
            c[1] = Fraction(1)
        return ExtElem(self, tuple(c))

    def uniformizer(self) -> "ExtElem":
        if self.e == 1:
            return self.elem(self.place.p)
        c = [Fraction(0)] * self.degree
        c[self.f] = Fraction(1)
        return ExtElem(self, tuple(c))

    @cached_property
    def _uniformizer_inv(self) -> "ExtElem":
        return self.uniformizer().inverse()

    def residue_poly(self) -> tuple[int, ...]:
        return self.f_poly

    def fq(self, coeffs: Sequence[int]) -> FqElem:
        c = tuple(int(x) % self.place.p for x in coeffs)
        return FqElem(self.place.p, self.f_poly, c + (0,) * (self.f - len(c)))

    # quadratic data
    @cached_property
    def nonsquare_unit(self) -> "ExtElem":
        """A unit whose residue is a nonsquare in F_q (small search)."""
        if self.place.is_real:
            return self.elem(-1)
        from itertools import product

        for digits in product(range(self.place.p), repeat=self.f):
            if self.fq(digits).quadratic_character() == -1:
                coords = [Fraction(d) for d in digits] + [Fraction(0)] * (self.degree - self.f)
                return ExtElem(self, tuple(coords))
        raise ArithmeticError("no nonsquare unit found")

    def square_class_reps(self) -> list["ExtElem"]:
        if self.place.is_real:
            return [self.elem(1), self.elem(-1)]
        u, pi = self.nonsquare_unit, self.uniformizer()
        return [self.one(), u, pi, u * pi]


@dataclass(frozen=True)
class ExtElem:
    field: ExtField
    coords: tuple[Fraction, ...]

    # internal representation: list over i (power of pi) of lists over j (theta)
    def _split(self) -> list[list[Fraction]]:
        f = self.field.f
        return [list(self.coords[i * f:(i + 1) * f]) for i in range(self.field.e)]

    @staticmethod
    def _mul_unram(a: Sequence[Fraction], b: Sequence[Fraction], fpoly: Sequence[int]) -> list[Fraction]:
        prod = list(pmul(a, b)) if any(a) and any(b) else []
        f = len(fpoly) - 1
        prod += [Fraction(0)] * max(0, 2 * f - 1 - len(prod))
        for k in range(len(prod) - 1, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f):
                    prod[k - f + i] -= c * fpoly[i]
                prod[k] = Fraction(0)
        return [Fraction(x) for x in prod[:f]] + [Fraction(0)] * max(0, f - len(prod))

    def _coerce(self, o) -> "ExtElem":
        if isinstance(o, ExtElem):
            if o.field != self.field:
                raise ValueError("elements of different fields")
            return o
        return self.field.elem(o)

    def __add__(self, o) -> "ExtElem":
        o = self._coerce(o)
        return ExtElem(self.field, tuple(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "ExtElem":
        return ExtElem(self.field, tuple(-x for x in self.coords))

    def __sub__(self, o) -> "ExtElem":
        return self + (-self._coerce(o))

    def __rsub__(self, o) -> "ExtElem":
        return self._coerce(o) - self

    def __mul__(self, o) -> "ExtElem":
        if isinstance(o, (int, Fraction)):
            return ExtElem(self.field, tuple(x * o for x in self.coords))
        o = self._coerce(o)
        K = self.field
        f, e = K.f, K.e
        if K.degree == 1:
            return ExtElem(K, (self.coords[0] * o.coords[0],))
        a, b = self._split(), o._split()
        zero = [Fraction(0)] * f
        prod = [list(zero) for _ in range(2 * e - 1)]
        for i, ai in enumerate(a):
            if not any(ai):
                continue
            for j, bj in enumerate(b):
                if not any(bj):
                    continue
                t = self._mul_unram(ai, bj, K.f_poly)
                prod[i + j] = [x + y for x, y in zip(prod[i + j], t)]
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if any(c):
                for i in range(e):
                    t = self._mul_unram(c, K.e_poly[i], K.f_poly)
                    prod[k - e + i] = [x - y for x, y in zip(prod[k - e + i], t)]
                prod[k] = list(zero)
        return ExtElem(K, tuple(x for row in prod[:e] for x in row))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExtElem":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, o) -> "ExtElem":
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o) -> "ExtElem":
        return self._coerce(o) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, o) -> bool:
        if isinstance(o, (int, Fraction)):
            o = self.field.elem(o)
        if not isinstance(o, ExtElem):
            return NotImplemented
        return self.field == o.field and self.coords == o.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def mult_matrix(self) -> la.Matrix:
        """Matrix of y -> self * y on the tower basis (columns = images)."""
        cols = [(self * b).coords for b in self.field.basis()]
        return la.transpose(tuple(cols))

    def inverse(self) -> "ExtElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.degree == 1:
            return ExtElem(self.field, (1 / self.coords[0],))
        one = self.field.one().coords
        return ExtElem(self.field, la.solve(self.mult_matrix(), one))

    def trace(self) -> Fraction:
        if self.field.degree == 1:
            return self.coords[0]
        return la.trace(self.mult_matrix())

    def norm(self) -> Fraction:
        if self.field.degree == 1:
            return self.coords[0]
        return la.det(self.mult_matrix())

    def rational(self) -> Fraction:
        if any(self.coords[1:]):
            raise ValueError("not a rational element")
        return self.coords[0]

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return f"{self.coords[0]}"
        return f"ExtElem({[str(c) for c in self.coords]})"


# --- the public operations -----------------------------------------------------

FieldLike = Union[Place, ExtField]


def _as_field(F: FieldLike) -> ExtField:
    return F if isinstance(F, ExtField) else ExtField.base(F)


def _as_elem(x, K: ExtField) -> ExtElem:
    return K.elem(x)


def valuation(x, F: FieldLike):
    """Normalized valuation (v(pi) = 1); +inf at zero."""
    K = _as_field(F)
    if K.place.is_real:
        raise PlaceError("no valuation at the real place")
    if not isinstance(x, ExtElem) and K.is_base:
        return vp(Fraction(x), K.p)
    x = _as_elem(x, K)
    if x.is_zero():
        return inf
    if K.is_base:
        return vp(x.coords[0], K.p)
    v = vp(x.norm(), K.p)
    if v % K.f:
        raise ArithmeticError("norm valuation not divisible by f")
    return v // K.f


def unit_part(x, F: FieldLike) -> tuple[int, ExtElem]:
    K = _as_field(F)
    x = _as_elem(x, K)
    v = valuation(x, K)
    if v == inf:
        raise ZeroDivisionError("zero has no unit part")
    if K.is_base:
        return v, K.elem(x.coords[0] / Fraction(K.p) ** v)
    u = x * (K._uniformizer_inv ** v) if v >= 0 else x * (K.uniformizer() ** (-v))
    return v, u


def residue_unit(x, F: FieldLike) -> FqElem:
    """Image of x * pi^{-v(x)} in the residue field."""
    K = _as_field(F)
    if K.place.is_real:
        raise PlaceError("no residue field at the real place")
    _, u = unit_part(x, K)
    digits = [mod_p(c, K.p) for c in u.coords[: K.f]]
    r = K.fq(digits)
    if r.is_zero():
        raise ArithmeticError("unit part reduced to zero")
    return r


def is_square(x, F: FieldLike) -> bool:
    K = _as_field(F)
    x = _as_elem(x, K)
    if x.is_zero():
        raise ZeroDivisionError("is_square of zero")
    if K.place.is_real:
        return x.coords[0] > 0
    v = valuation(x, K)
    return v % 2 == 0 and residue_unit(x, K).quadratic_character() == 1


def hilbert(a, b, F: FieldLike) -> Sign:
    """The quadratic Hilbert symbol (a, b)_F (tame formula at odd p)."""
    K = _as_field(F)
    a, b = _as_elem(a, K), _as_elem(b, K)
    if a.is_zero() or b.is_zero():
        raise ZeroDivisionError("Hilbert symbol of zero")
    if K.place.is_real:
        return -1 if (a.coords[0] < 0 and b.coords[0] < 0) else 1
    alpha, _ = unit_part(a, K)
    beta, _ = unit_part(b, K)
    ua, ub = residue_unit(a, K), residue_unit(b, K)
    t = (ua ** beta) * (ub ** alpha)
    if (alpha * beta) % 2:
        t = -t
    return t.quadratic_character()


def square_class_rep(x: Fraction, place: Place) -> Fraction:
    """Canonical representative of x Q_v^{x2} among small rationals."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("zero has no square class")
    if place.is_real:
        return Fraction(1 if x > 0 else -1)
    p = place.p
    v = vp(x, p)
    u = x / Fraction(p) ** v
    out = Fraction(1 if legendre(mod_p(u, p), p) == 1 else least_nonresidue(p))
    return out * (p if v % 2 else 1)


def gauss_sign(p: int) -> Mu8:
    """gamma_psi(<p>) for the fixed psi at p: 1 if p = 1 mod 4, else zeta_8^6."""
    return Mu8(0) if p % 4 == 1 else Mu8(6)


def weil_index_rank1(a, psi: PsiSpec | Place) -> Mu8:
    """gamma_psi(<a>) for a nonzero rational a."""
    place = psi.place if isinstance(psi, PsiSpec) else psi
    a = Fraction(a)
    if a == 0:
        raise ZeroDivisionError("Weil index of <0>")
    if place.is_real:
        return Mu8(1 if a > 0 else -1)
    p = place.p
    v = vp(a, p)
    if v % 2 == 0:
        return Mu8(0)
    u = a / Fraction(p) ** v
    return gauss_sign(p) * legendre(mod_p(u, p), p)


# --- global reciprocity over Q -------------------------------------------------------


def odd_primes(*xs) -> list[int]:
    """The odd primes dividing numerator or denominator of any of the rationals."""
    out: set[int] = set()
    for x in xs:
        x = Fraction(x)
        for n in (abs(x.numerator), x.denominator):
            k = 3
            while n % 2 == 0:
                n //= 2
            while k * k <= n:
                while n % k == 0:
                    out.add(k)
                    n //= k
                k += 2
            if n > 1:
                out.add(n)
    return sorted(out)


@dataclass(frozen=True)
class GlobalFactors:
    """Local factors at R and the odd bad primes; the factor at 2 is their complement."""

    local: dict
    factor2: object


def hilbert_global(a, b) -> GlobalFactors:
    a, b = Fraction(a), Fraction(b)
    local = {"inf": hilbert(a, b, REAL)}
    for p in odd_primes(a, b):
        local[p] = hilbert(a, b, Place.padic(p))
    rest = 1
    for v in local.values():
        rest *= v
    return GlobalFactors(local, rest)
