"""Seeded generators over small universes: p in {3, 5, 7, 11}, factor degree <= 3, dim <= 8.

Every generator takes a ``random.Random`` so trials are reproducible from a
single integer seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from . import linalg as la
from .base_field import ExtElem, ExtField, Place, is_square
from .etale import GROUP, LIE, ClassParam, EtaleAlg, EtaleElem, Factor, ParamError
from .poly import mod_is_irreducible
from .symplectic import inverse_cayley

PRIMES = (3, 5, 7, 11)


def rng_for(seed: int, *salt) -> random.Random:
    """A generator derived deterministically from a seed and a label."""
    return random.Random(repr((seed,) + salt))


def rand_rational(rng: random.Random, bound: int = 30, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def rand_padic_rational(rng: random.Random, p: int, vrange: int = 2) -> Fraction:
    """A nonzero rational with a random p-adic valuation in [-vrange, vrange]."""
    u = Fraction(rng.choice([k for k in range(1, 4 * p) if k % p]) * rng.choice([1, -1]), rng.choice([k for k in range(1, 2 * p) if k % p]))
    return u * Fraction(p) ** rng.randint(-vrange, vrange)


def square_class_pairs(place: Place) -> list[tuple[Fraction, Fraction]]:
    from .base_field import least_nonresidue

    if place.is_real:
        reps = [Fraction(1), Fraction(-1)]
    else:
        u = least_nonresidue(place.p)
        reps = [Fraction(1), Fraction(u), Fraction(place.p), Fraction(u * place.p)]
    return list(product(reps, reps))


def irreducible_polys(p: int, f: int) -> list[tuple[int, ...]]:
    out = []
    for low in product(range(p), repeat=f):
        poly = tuple(low) + (1,)
        if mod_is_irreducible(poly, p):
            out.append(poly)
    return out


def rand_ext_field(rng: random.Random, place: Place, max_degree: int = 3, unramified_only: bool = False) -> ExtField:
    if place.is_real:
        return ExtField.base(place)
    p = place.p
    deg = rng.randint(1, max_degree)
    if deg == 1:
        return ExtField.base(place)
    if unramified_only or rng.random() < 0.5:
        return ExtField.unramified(p, rng.choice(irreducible_polys(p, deg)[:6]))
    return ExtField.ramified(p, deg, rng.choice([1, -1, 2]) if p != 2 else 1)


def rand_ext_elem(rng: random.Random, K: ExtField, bound: int = 4, integral: bool = False) -> ExtElem:
    while True:
        coords = [Fraction(rng.randint(-bound, bound)) if integral else rand_rational(rng, bound, nonzero=False) for _ in range(K.degree)]
        x = ExtElem(K, tuple(coords))
        if not x.is_zero():
            return x


def rand_nonsquare(rng: random.Random, K: ExtField, unit: bool = False) -> ExtElem:
    if K.place.is_real:
        return K.elem(-1)
    reps = [r for r in K.square_class_reps() if not is_square(r, K)]
    if unit:
        return K.nonsquare_unit
    return rng.choice(reps)


def rand_factor(rng: random.Random, place: Place, max_degree: int = 2, unramified: bool = False, kind: str | None = None) -> Factor:
    K = rand_ext_field(rng, place, max_degree, unramified_only=unramified)
    kind = kind or rng.choice(["split", "inert"])
    if kind == "split":
        return Factor(K)
    return Factor(K, rand_nonsquare(rng, K, unit=unramified))


def _pair_elem(fc: Factor, x: ExtElem, y: ExtElem) -> tuple[ExtElem, ExtElem]:
    return (x, y)


def rand_alg(rng: random.Random, place: Place, dim_max: int = 6, max_degree: int = 2, unramified: bool = False,
             kinds: list[str] | None = None) -> EtaleAlg:
    factors = []
    dim = 0
    target = rng.randint(1, max(1, dim_max // 2)) * 2
    while dim < target:
        room = (target - dim) // 2
        fc = rand_factor(rng, place, min(max_degree, room), unramified,
                         kind=(kinds[len(factors)] if kinds and len(factors) < len(kinds) else None))
        factors.append(fc)
        dim += fc.dim
        if kinds and len(factors) >= len(kinds):
            break
    return EtaleAlg(tuple(factors))


def _anti(rng, fc: Factor, integral: bool, bound: int) -> tuple[ExtElem, ExtElem]:
    """A random element with tau(x) = -x in the factor."""
    K = fc.ksharp
    y = rand_ext_elem(rng, K, bound, integral)
    return (y, -y) if fc.split else (K.zero(), y)


def _fixed(rng, fc: Factor, integral: bool, bound: int) -> tuple[ExtElem, ExtElem]:
    K = fc.ksharp
    y = rand_ext_elem(rng, K, bound, integral)
    return (y, y) if fc.split else (y, K.zero())


def rand_c(rng: random.Random, alg: EtaleAlg, epsilon: int, unit: bool = False) -> EtaleElem:
    comps = []
    for fc in alg.factors:
        K = fc.ksharp
        while True:
            y = rand_ext_elem(rng, K, 3, integral=unit)
            if unit and not K.place.is_real:
                from .base_field import valuation
                if valuation(y, K) != 0:
                    continue
            break
        if epsilon == 1:
            comps.append((y, y) if fc.split else (y, K.zero()))
        else:
            comps.append((y, -y) if fc.split else (K.zero(), y))
    return EtaleElem(alg, tuple(comps))


def rand_lie_param(rng: random.Random, place: Place, dim_max: int = 6, epsilon: int = -1, max_degree: int = 2,
                   tries: int = 200) -> ClassParam:
    for _ in range(tries):
        alg = rand_alg(rng, place, dim_max, max_degree)
        a = EtaleElem(alg, tuple(_anti(rng, fc, False, 4) for fc in alg.factors))
        c = rand_c(rng, alg, epsilon)
        try:
            return ClassParam(epsilon, LIE, alg, a, c)
        except ParamError:
            continue
    raise RuntimeError("could not generate a regular Lie parameter")


def _norm_one(rng, fc: Factor, integral_unit: bool = False) -> tuple[ExtElem, ExtElem]:
    """An element with tau(a) a = 1: (u, 1/u) split, z / tau(z) inert."""
    K = fc.ksharp
    if fc.split:
        u = rand_ext_elem(rng, K, 4, integral=integral_unit)
        return (u, u.inverse())
    x, y = rand_ext_elem(rng, K, 4, integral=integral_unit), rand_ext_elem(rng, K, 4, integral=integral_unit)
    # z = x + y sqrt d, a = z^2 / N(z)
    n = x * x - fc.d * y * y
    if n.is_zero():
        return _norm_one(rng, fc, integral_unit)
    return ((x * x + fc.d * y * y) / n, (x * y * 2) / n)


def rand_group_param(rng: random.Random, place: Place, dim_max: int = 6, epsilon: int = -1, max_degree: int = 2,
                     tries: int = 200, alg: EtaleAlg | None = None) -> ClassParam:
    for _ in range(tries):
        A = alg or rand_alg(rng, place, dim_max, max_degree)
        a = EtaleElem(A, tuple(_norm_one(rng, fc) for fc in A.factors))
        c = rand_c(rng, A, epsilon)
        try:
            return ClassParam(epsilon, GROUP, A, a, c)
        except ParamError:
            continue
    raise RuntimeError("could not generate a regular group parameter")


# --- symplectic matrices --------------------------------------------------------


def rand_sym(rng: random.Random, n: int, bound: int) -> la.Matrix:
    S = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
    return la.mat([[S[i][j] + S[j][i] for j in range(n)] for i in range(n)])


def rand_sp_integral(rng: random.Random, n: int, p: int | None = None, steps: int = 5, bound: int = 2) -> la.Matrix:
    """A product of integral unipotent and torus factors: an element of Sp(2n, Z_(p))."""
    g = la.identity(2 * n)
    I, Z = la.identity(n), la.zeros(n)
    for _ in range(steps):
        r = rng.random()
        if r < 0.4:
            u = la.vstack(la.hstack(I, rand_sym(rng, n, bound)), la.hstack(Z, I))
        elif r < 0.8:
            u = la.vstack(la.hstack(I, Z), la.hstack(rand_sym(rng, n, bound), I))
        else:
            choices = [k for k in (2, -1, 3, 4, -2) if p is None or k % p]
            D = la.diag([Fraction(rng.choice(choices))] + [Fraction(1)] * (n - 1))
            u = la.block_diag(D, la.inverse(D))
        g = la.mul(g, u)
    return g


def rand_sp_lie(rng: random.Random, n: int, bound: int = 4, scale=1) -> la.Matrix:
    A = la.mat([[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)])
    X = la.vstack(la.hstack(A, rand_sym(rng, n, bound)), la.hstack(rand_sym(rng, n, bound), la.neg(la.transpose(A))))
    return la.scale(scale, X)


def rand_top_unipotent(rng: random.Random, n: int, p: int, max_val: int = 4, tries: int = 200) -> la.Matrix:
    """x = inverse Cayley of p X with X integral, so x is topologically unipotent; v_p(det(x-1)) <= max_val."""
    from .base_field import vp

    for _ in range(tries):
        X = rand_sp_lie(rng, n, bound=p, scale=p)
        if la.det(X) == 0:
            continue
        x = inverse_cayley(X)
        if vp(la.det(la.sub(x, la.identity(2 * n))), p) <= max_val:
            return x
    raise RuntimeError("no topologically unipotent element found")


def rand_lagrangian(rng: random.Random, n: int):
    from .symplectic import Lagrangian

    return Lagrangian.standard(n).image(rand_sp_integral(rng, n))


# --- compact corresponding pairs -------------------------------------------------


def _unit_factor(rng: random.Random, p: int, max_degree: int, kind: str | None = None) -> Factor:
    place = Place.padic(p)
    deg = rng.randint(1, max_degree)
    K = ExtField.base(place) if deg == 1 else ExtField.unramified(p, rng.choice(irreducible_polys(p, deg)[:6]))
    kind = kind or rng.choice(["split", "inert"])
    return Factor(K) if kind == "split" else Factor(K, K.nonsquare_unit)


def _unit_norm_one(rng: random.Random, fc: Factor, p: int, near_one: bool) -> tuple[ExtElem, ExtElem]:
    """A unit with tau(a) a = 1; with ``near_one`` the sqrt d coordinate lies in pO."""
    from .base_field import valuation

    K = fc.ksharp
    while True:
        if fc.split:
            u = rand_ext_elem(rng, K, p, integral=True)
            if valuation(u, K) == 0:
                return (u, u.inverse())
            continue
        x = rand_ext_elem(rng, K, p, integral=True)
        y = rand_ext_elem(rng, K, p, integral=True)
        if near_one:
            y = y * p
        n = x * x - fc.d * y * y
        if n.is_zero() or valuation(n, K) != 0:
            continue
        return ((x * x + fc.d * y * y) / n, (x * y * 2) / n)


def rand_compact_side(rng: random.Random, p: int, n_max: int, max_degree: int = 2, near_one: bool = False,
                      kinds: list[str] | None = None) -> ClassParam:
    """An orthogonal group parameter (epsilon = +1) with unit, unramified data."""
    for _ in range(200):
        factors, dim = [], 0
        target = 2 * rng.randint(1, n_max)
        while dim < target:
            k = kinds[len(factors)] if kinds and len(factors) < len(kinds) else None
            fc = _unit_factor(rng, p, min(max_degree, (target - dim) // 2), k)
            factors.append(fc)
            dim += fc.dim
        alg = EtaleAlg(tuple(factors))
        a = EtaleElem(alg, tuple(_unit_norm_one(rng, fc, p, near_one and not fc.split) for fc in alg.factors))
        c = alg.one()
        try:
            return ClassParam(1, GROUP, alg, a, c)
        except ParamError:
            continue
    raise RuntimeError("could not generate a compact parameter")
