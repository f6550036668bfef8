"""Etale algebras with involution and regular semisimple class parameters.

An algebra K/K# is a list of factors.  Each factor has a field K_i# (an
``ExtField``) and is either split, K_i = K_i# x K_i# with the swap, or
inert, K_i = K_i#(sqrt d_i) with sqrt d_i -> -sqrt d_i.  Elements are
stored factorwise as pairs of K_i# elements: (x1, x2) for split factors and
(x, y) meaning x + y sqrt d for inert ones.

The F-basis of K used for matrices is, factor by factor, (b_k, 0) then
(0, b_k) where b_k runs over the tower basis of K_i#.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg as la
from .base_field import ExtElem, ExtField, Place, hilbert, is_square
from .poly import pderiv, pmul, trim


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    ksharp: ExtField
    d: ExtElem | None = None  # None: split

    def __post_init__(self):
        if self.d is not None:
            d = self.ksharp.elem(self.d)
            object.__setattr__(self, "d", d)
            if d.is_zero() or is_square(d, self.ksharp):
                raise ParamError("inert factor needs a nonsquare d")

    @property
    def split(self) -> bool:
        return self.d is None

    @property
    def kind(self) -> str:
        return "split" if self.split else "inert"

    @property
    def dim(self) -> int:
        return 2 * self.ksharp.degree


@dataclass(frozen=True)
class EtaleAlg:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        places = {fc.ksharp.place for fc in self.factors}
        if len(places) > 1:
            raise ParamError("factors over different base places")

    @property
    def place(self) -> Place:
        return self.factors[0].ksharp.place

    @property
    def dim(self) -> int:
        return sum(fc.dim for fc in self.factors)

    @property
    def inert_indices(self) -> list[int]:
        """I*: the factors that are fields."""
        return [i for i, fc in enumerate(self.factors) if not fc.split]

    def __add__(self, o: "EtaleAlg") -> "EtaleAlg":
        return EtaleAlg(self.factors + o.factors)

    # element constructors
    def elem(self, comps: Sequence[Sequence]) -> "EtaleElem":
        if len(comps) != len(self.factors):
            raise ParamError("wrong number of components")
        out = []
        for fc, c in zip(self.factors, comps):
            if len(c) != 2:
                raise ParamError("each component is a pair")
            out.append((fc.ksharp.elem(c[0]), fc.ksharp.elem(c[1])))
        return EtaleElem(self, tuple(out))

    def sharp(self, comps: Sequence) -> "EtaleElem":
        """Embed a tuple of K_i# elements as a tau-fixed element."""
        return self.elem([(x, x) if fc.split else (x, 0) for fc, x in zip(self.factors, comps)])

    def scalar(self, x) -> "EtaleElem":
        return self.sharp([x] * len(self.factors))

    def one(self) -> "EtaleElem":
        return self.scalar(1)

    def basis(self) -> list["EtaleElem"]:
        out = []
        for i, fc in enumerate(self.factors):
            for slot in (0, 1):
                for b in fc.ksharp.basis():
                    comps = [(f.ksharp.zero(), f.ksharp.zero()) for f in self.factors]
                    comps[i] = (b, fc.ksharp.zero()) if slot == 0 else (fc.ksharp.zero(), b)
                    out.append(EtaleElem(self, tuple(comps)))
        return out

    def from_coords(self, v: Sequence[Fraction]) -> "EtaleElem":
        comps, pos = [], 0
        for fc in self.factors:
            k = fc.ksharp.degree
            comps.append((fc.ksharp.elem(list(v[pos:pos + k])), fc.ksharp.elem(list(v[pos + k:pos + 2 * k]))))
            pos += 2 * k
        return EtaleElem(self, tuple(comps))


@dataclass(frozen=True)
class EtaleElem:
    alg: EtaleAlg
    comps: tuple[tuple[ExtElem, ExtElem], ...]

    def _coerce(self, o) -> "EtaleElem":
        if isinstance(o, EtaleElem):
            if o.alg != self.alg:
                raise ParamError("elements of different algebras")
            return o
        return self.alg.scalar(o)

    def __add__(self, o) -> "EtaleElem":
        o = self._coerce(o)
        return EtaleElem(self.alg, tuple((a + c, b + d) for (a, b), (c, d) in zip(self.comps, o.comps)))

    __radd__ = __add__

    def __neg__(self) -> "EtaleElem":
        return EtaleElem(self.alg, tuple((-a, -b) for a, b in self.comps))

    def __sub__(self, o) -> "EtaleElem":
        return self + (-self._coerce(o))

    def __rsub__(self, o) -> "EtaleElem":
        return self._coerce(o) - self

    def __mul__(self, o) -> "EtaleElem":
        if isinstance(o, (int, Fraction)):
            return EtaleElem(self.alg, tuple((a * o, b * o) for a, b in self.comps))
        o = self._coerce(o)
        out = []
        for fc, (a, b), (c, d) in zip(self.alg.factors, self.comps, o.comps):
            if fc.split:
                out.append((a * c, b * d))
            else:
                out.append((a * c + fc.d * b * d, a * d + b * c))
        return EtaleElem(self.alg, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "EtaleElem":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.alg.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, o) -> "EtaleElem":
        return self * self._coerce(o).inverse()

    def __eq__(self, o) -> bool:
        if isinstance(o, (int, Fraction)):
            o = self.alg.scalar(o)
        if not isinstance(o, EtaleElem):
            return NotImplemented
        return self.alg == o.alg and self.comps == o.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def inverse(self) -> "EtaleElem":
        out = []
        for fc, (a, b) in zip(self.alg.factors, self.comps):
            if fc.split:
                out.append((a.inverse(), b.inverse()))
            else:
                n = (a * a - fc.d * b * b).inverse()
                out.append((a * n, -b * n))
        return EtaleElem(self.alg, tuple(out))

    def is_invertible(self) -> bool:
        for fc, (a, b) in zip(self.alg.factors, self.comps):
            if fc.split:
                if a.is_zero() or b.is_zero():
                    return False
            elif (a * a - fc.d * b * b).is_zero():
                return False
        return True

    def tau(self) -> "EtaleElem":
        out = []
        for fc, (a, b) in zip(self.alg.factors, self.comps):
            out.append((b, a) if fc.split else (a, -b))
        return EtaleElem(self.alg, tuple(out))

    def is_tau_fixed(self) -> bool:
        return self.tau() == self

    def sharp_components(self) -> tuple[ExtElem, ...]:
        """The K_i# components of a tau-fixed element."""
        if not self.is_tau_fixed():
            raise ParamError("element is not tau-fixed")
        return tuple(a for a, _ in self.comps)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(x for a, b in self.comps for x in a.coords + b.coords)

    def mult_matrix(self) -> la.Matrix:
        cols = [(self * e).coords() for e in self.alg.basis()]
        return la.transpose(tuple(cols))

    def factor(self, i: int) -> "EtaleElem":
        alg = EtaleAlg((self.alg.factors[i],))
        return EtaleElem(alg, (self.comps[i],))

    def __repr__(self) -> str:
        return f"EtaleElem({self.comps})"


# --- the named operations ------------------------------------------------------


def tau(x: EtaleElem) -> EtaleElem:
    return x.tau()


def norm_to_sharp(x: EtaleElem) -> EtaleElem:
    """N_{K/K#}(x) as a tau-fixed element."""
    return x * x.tau()


def trace_to_F(x: EtaleElem) -> Fraction:
    total = Fraction(0)
    for fc, (a, b) in zip(x.alg.factors, x.comps):
        total += (a.trace() + b.trace()) if fc.split else 2 * a.trace()
    return total


def norm_to_F(x: EtaleElem) -> Fraction:
    total = Fraction(1)
    for fc, (a, b) in zip(x.alg.factors, x.comps):
        total *= (a.norm() * b.norm()) if fc.split else (a * a - fc.d * b * b).norm()
    return total


def sharp_trace_to_F(x: EtaleElem) -> Fraction:
    """tr_{K#/F} of a tau-fixed element."""
    return sum((a.trace() for a in x.sharp_components()), Fraction(0))


def sharp_norm_to_F(x: EtaleElem) -> Fraction:
    out = Fraction(1)
    for a in x.sharp_components():
        out *= a.norm()
    return out


def sgn_char(A: EtaleAlg, t: EtaleElem) -> int:
    """sgn_{K/K#}(t): product of (t_i, d_i)_{K_i#} over inert factors."""
    if t.alg != A:
        raise ParamError("element of another algebra")
    comps = t.sharp_components()
    s = 1
    for fc, x in zip(A.factors, comps):
        if x.is_zero():
            raise ParamError("sgn of a non-invertible element")
        if not fc.split:
            s *= hilbert(x, fc.d, fc.ksharp)
    return s


def factor_sgn(fc: Factor, x: ExtElem) -> int:
    return 1 if fc.split else hilbert(x, fc.d, fc.ksharp)


def char_poly(a: EtaleElem) -> tuple[Fraction, ...]:
    """P_a = det(T - mult_a) over F."""
    out: tuple = (Fraction(1),)
    for i in range(len(a.alg.factors)):
        out = pmul(out, la.charpoly(a.factor(i).mult_matrix()))
    return tuple(Fraction(c) for c in out)


def eval_poly(P: Sequence[Fraction], x: EtaleElem) -> EtaleElem:
    acc = x.alg.scalar(0)
    for c in reversed(P):
        acc = acc * x + x.alg.scalar(c)
    return acc


def deriv_eval(a: EtaleElem) -> EtaleElem:
    """P_a'(a)."""
    return eval_poly(pderiv(char_poly(a)), a)


def is_regular(a: EtaleElem) -> bool:
    return deriv_eval(a).is_invertible()


# --- parameters ----------------------------------------------------------------

GROUP, LIE = "group", "lie"


@dataclass(frozen=True)
class ClassParam:
    """(K/K#, a, c) for a regular semisimple class; the form is h(x|y) = tr_{K/F}(c tau(x) y)."""

    epsilon: int
    mode: str
    alg: EtaleAlg
    a: EtaleElem
    c: EtaleElem

    def __post_init__(self):
        self.validate()

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def n(self) -> int:
        return self.alg.dim // 2

    @property
    def place(self) -> Place:
        return self.alg.place

    def validate(self) -> None:
        if self.epsilon not in (1, -1):
            raise ParamError("epsilon must be +1 or -1")
        if self.mode not in (GROUP, LIE):
            raise ParamError("mode must be 'group' or 'lie'")
        if self.a.alg != self.alg or self.c.alg != self.alg:
            raise ParamError("a and c must live in the algebra")
        a, c = self.a, self.c
        if not a.is_invertible():
            raise ParamError("a is not invertible")
        if self.mode == GROUP:
            if a.tau() * a != self.alg.one():
                raise ParamError("group mode needs tau(a) = a^-1")
            for i in range(len(self.alg.factors)):
                ai = a.factor(i)
                if ai == ai.alg.scalar(1) or ai == ai.alg.scalar(-1):
                    raise ParamError(f"factor {i}: a = +-1 is not allowed")
        elif a.tau() != -a:
            raise ParamError("Lie mode needs tau(a) = -a")
        if not c.is_invertible():
            raise ParamError("c is not invertible")
        if c.tau() != c * self.epsilon:
            raise ParamError("c must satisfy tau(c) = epsilon c")
        if not is_regular(a):
            raise ParamError("a is not regular (P_a'(a) not invertible)")

    def with_c(self, c: EtaleElem) -> "ClassParam":
        return replace(self, c=c)

    def with_a(self, a: EtaleElem) -> "ClassParam":
        return replace(self, a=a)


def hermitian_gram(alg: EtaleAlg, c: EtaleElem) -> la.Matrix:
    """Gram of h(x|y) = tr_{K/F}(c tau(x) y) on the F-basis."""
    basis = alg.basis()
    taus = [b.tau() for b in basis]
    return tuple(tuple(trace_to_F(c * tx * y) for y in basis) for tx in taus)


def matrix_realization(param: ClassParam) -> tuple[la.Matrix, la.Matrix]:
    """(G, M): the form tr(c tau(x) y) and multiplication by a."""
    G = hermitian_gram(param.alg, param.c)
    M = param.a.mult_matrix()
    return G, M


def check_realization(param: ClassParam, G: la.Matrix, M: la.Matrix) -> bool:
    ok_form = la.is_symmetric(G) if param.epsilon == 1 else la.is_antisymmetric(G)
    ok_form = ok_form and la.det(G) != 0
    if param.mode == GROUP:
        ok_op = la.congruence(M, G) == G
    else:
        ok_op = la.is_zero(la.add(la.mul(la.transpose(M), G), la.mul(G, M)))
    return ok_form and ok_op and la.charpoly(M) == char_poly(param.a)


def to_waldspurger_c(param: ClassParam) -> EtaleElem:
    """Waldspurger's c_i is our c_i divided by [K_i : F]."""
    comps = []
    for fc, (x, y) in zip(param.alg.factors, param.c.comps):
        k = Fraction(1, fc.dim)
        comps.append((x * k, y * k))
    return EtaleElem(param.alg, tuple(comps))


def from_waldspurger_c(alg: EtaleAlg, c_w: EtaleElem) -> EtaleElem:
    comps = []
    for fc, (x, y) in zip(alg.factors, c_w.comps):
        comps.append((x * fc.dim, y * fc.dim))
    return EtaleElem(alg, tuple(comps))


SP, SO_ODD, SO_EVEN, U = "Sp", "SO_odd", "SO_even", "U"


def class_exists(group_kind: str, param: ClassParam, c0: EtaleElem) -> bool:
    """Does O(K/K#, a, c') exist in the group attached to the reference c0?"""
    if c0.alg != param.alg:
        raise ParamError("c0 lives in another algebra")
    if group_kind == SP:
        return True
    if group_kind not in (SO_ODD, SO_EVEN, U):
        raise ParamError(f"unknown group kind {group_kind!r}")
    return sgn_char(param.alg, c0.inverse() * param.c) == 1


def non_norm(fc: Factor) -> ExtElem:
    """An element t of K_i# with (t, d_i) = -1."""
    K = fc.ksharp
    for t in (K.uniformizer() if not K.place.is_real else K.elem(-1), K.nonsquare_unit):
        if hilbert(t, fc.d, K) == -1:
            return t
    t = K.uniformizer() * K.nonsquare_unit
    if hilbert(t, fc.d, K) == -1:
        return t
    raise ArithmeticError("no non-norm found")


def twist_c(param: ClassParam, signs: dict[int, int]) -> EtaleElem:
    """Multiply c_i by a non-norm for every inert i with sign -1."""
    comps = list(param.c.comps)
    for i, s in signs.items():
        fc = param.alg.factors[i]
        if fc.split:
            raise ParamError("twists live on inert factors")
        if s == -1:
            t = non_norm(fc)
            x, y = comps[i]
            comps[i] = (x * t, y * t)
    return EtaleElem(param.alg, tuple(comps))


def stable_orbit(param: ClassParam, group_kind: str | None = None) -> list[ClassParam]:
    """One parameter per conjugacy class in the stable class of ``param``."""
    kind = group_kind or (SP if param.epsilon == -1 else SO_EVEN)
    istar = param.alg.inert_indices
    out = []
    for signs in product((1, -1), repeat=len(istar)):
        if kind != SP and istar and _prod(signs) != 1:
            continue
        out.append(param.with_c(twist_c(param, dict(zip(istar, signs)))))
    return out


def _prod(xs) -> int:
    r = 1
    for x in xs:
        r *= x
    return r


def kappa_pair(inv_prime: Sequence[int], inv_dprime: Sequence[int]) -> int:
    """kappa on mu_2^{I'*} x mu_2^{I''*}: the product of the second block."""
    return _prod(inv_dprime)


# --- monogenic algebras F[T]/(P), for the trace-form lemmas ----------------------


@dataclass(frozen=True)
class MonoAlg:
    """F[T]/(P) for a monic separable rational polynomial P."""

    P: tuple[Fraction, ...]

    def __post_init__(self):
        P = tuple(Fraction(c) for c in trim(self.P))
        if not P or P[-1] != 1:
            raise ParamError("P must be monic")
        object.__setattr__(self, "P", P)

    @property
    def n(self) -> int:
        return len(self.P) - 1

    def reduce(self, c: Sequence[Fraction]) -> tuple[Fraction, ...]:
        c = list(c) + [Fraction(0)] * max(0, self.n - len(c))
        for k in range(len(c) - 1, self.n - 1, -1):
            v = c[k]
            if v:
                for i in range(self.n):
                    c[k - self.n + i] -= v * self.P[i]
            c[k] = Fraction(0)
        return tuple(Fraction(x) for x in c[: self.n])

    def mul(self, a, b):
        return self.reduce(pmul(a, b) or (Fraction(0),))

    def gen(self):
        return self.reduce((Fraction(0), Fraction(1)))

    def power(self, a, k: int):
        out = self.reduce((Fraction(1),))
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def mult_matrix(self, a) -> la.Matrix:
        cols = [self.mul(a, self.power(self.gen(), j)) for j in range(self.n)]
        return la.transpose(tuple(cols))

    def trace(self, a) -> Fraction:
        return la.trace(self.mult_matrix(a))

    def norm(self, a) -> Fraction:
        return la.det(self.mult_matrix(a))

    def inverse(self, a):
        return la.solve(self.mult_matrix(a), self.reduce((Fraction(1),)))

    def deriv_at_gen(self):
        return self.reduce(pderiv(self.P))

    def trace_form(self, r) -> la.Matrix:
        """Gram of x -> tr(r x^2) on the power basis."""
        pw = [self.power(self.gen(), j) for j in range(self.n)]
        return tuple(tuple(self.trace(self.mul(r, self.mul(x, y))) for y in pw) for x in pw)
