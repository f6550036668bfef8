"""Seeded verification suites.

A check draws one configuration per trial from ``rng_for(seed, name, i)``
and returns ``None`` on success or a JSON-ready witness on failure.  Reports
are ordered by check name and trial index, so a fixed (seed, trials, suite)
always produces the same bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import codec
from . import linalg as la
from .base_field import REAL, Mu8, Place, hilbert, hilbert_global, weil_index_rank1
from .cyclotomic import CycNum
from .etale import Factor, ExtField, sgn_char, twist_c
from .generators import (
    PRIMES,
    rand_compact_side,
    rand_group_param,
    rand_lagrangian,
    rand_lie_param,
    rand_padic_rational,
    rand_rational,
    rand_sp_integral,
    rand_top_unipotent,
    rng_for,
    square_class_pairs,
)
from .oracles import gauss_weil_diag, gauss_weil_index, hilbert2, hilbert_conic
from .quadratic_forms import (
    QForm,
    dual_basis_traces,
    pfaffian_check,
    q1_q2_classes,
    signe_transfert_sides,
    trace_form,
    weil_global,
    weil_index,
    witt_class,
)
from .symplectic import (
    Lagrangian,
    cocycle_value,
    maslov_chain_form,
    maslov_dim,
    thomas_form,
)
from .transfer import (
    HClassParam,
    TransferError,
    append_split,
    correspond,
    delta0,
    delta0_cocycle_twist,
    delta0_reciprocity_check,
    delta0_two_step,
    delta_R,
    full_delta,
    full_delta_matrix,
    full_delta_second_form,
    keystone_sides,
    kappa_of_twist,
    lie_descent_plus,
    lie_plus_via_keystone,
    mobius_check,
    product_formula_delta0,
    real_gamma,
    realize_pair,
    reciprocity_group_sides,
    reciprocity_lie_sides,
)
from .weil_character import (
    reduction_regular,
    theta_decompose,
    theta_lattice,
    theta_ratio_sides,
    theta_via_cayley,
)
from .symplectic import direct_sum_matrix

Witness = dict | None
F = Fraction
fmt = codec.fmt


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[random.Random], Witness]
    exhaustive: bool = False  # run once, ignoring the trial count


@dataclass
class CheckReport:
    name: str
    anchor: str
    trials: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "anchor": self.anchor,
            "trials": self.trials,
            "status": "pass" if self.passed else "fail",
            "failures": self.failures,
        }


def run_check(check: Check, trials: int, seed: int) -> CheckReport:
    n = 1 if check.exhaustive else trials
    rep = CheckReport(check.name, check.anchor, n)
    for i in range(n):
        rng = rng_for(seed, check.name, i)
        try:
            w = check.run(rng)
        except Exception as e:  # a crash is a failure with its message as witness
            w = {"error": f"{type(e).__name__}: {e}"}
        if w is not None:
            rep.failures.append({"trial": i, "witness": w})
    return rep


def _places_p() -> list[Place]:
    return [Place.padic(p) for p in PRIMES]


def _retry(gen: Callable[[], object], tries: int = 400):
    for _ in range(tries):
        try:
            out = gen()
        except (TransferError, ValueError):
            continue
        if out is not None:
            return out
    raise RuntimeError("generator exhausted its retries")


# --- hilbert ----------------------------------------------------------------------


def _hilbert_square_classes(rng) -> Witness:
    bad = []
    for p in PRIMES:
        for a, b in square_class_pairs(Place.padic(p)):
            if hilbert(a, b, Place.padic(p)) != hilbert_conic(a, b, p):
                bad.append({"p": p, "a": fmt(a), "b": fmt(b)})
    return {"mismatches": bad} if bad else None


def _hilbert_conic(rng) -> Witness:
    for p in PRIMES:
        a, b = rand_padic_rational(rng, p), rand_padic_rational(rng, p)
        if hilbert(a, b, Place.padic(p)) != hilbert_conic(a, b, p):
            return {"p": p, "a": fmt(a), "b": fmt(b)}
    return None


def _hilbert_reciprocity(rng) -> Witness:
    a, b = rand_rational(rng, 60), rand_rational(rng, 60)
    g = hilbert_global(a, b)
    if g.factor2 != hilbert2(a, b) or g.factor2 not in (1, -1):
        return {"a": fmt(a), "b": fmt(b), "complement": g.factor2, "oracle2": hilbert2(a, b)}
    # the complement is stable under rescaling by odd squares
    s = F(rng.choice([3, 5, 7, 9, 11, 15]))
    if hilbert_global(a * s * s, b).factor2 != g.factor2:
        return {"a": fmt(a), "b": fmt(b), "rescale": fmt(s)}
    return None


# --- weil ---------------------------------------------------------------------------


def _weil_rank1(rng) -> Witness:
    for p in PRIMES:
        a = rand_padic_rational(rng, p, 3)
        if weil_index_rank1(a, Place.padic(p)) != gauss_weil_index(a, p):
            return {"p": p, "a": fmt(a)}
    return None


def _rand_form(rng, place: Place, rank: int) -> QForm:
    if place.is_real:
        entries = [rand_rational(rng, 20) for _ in range(rank)]
    else:
        entries = [rand_padic_rational(rng, place.p) for _ in range(rank)]
    q = QForm.diagonal(place, entries)
    # an isometric non-diagonal Gram
    while True:
        P = la.mat([[F(rng.randint(-2, 2)) for _ in range(rank)] for _ in range(rank)])
        if la.det(P) != 0:
            return QForm(place, la.congruence(P, q.gram))


def _weil_axioms(rng) -> Witness:
    for place in [REAL] + _places_p():
        q1 = _rand_form(rng, place, rng.randint(1, 4))
        q2 = _rand_form(rng, place, rng.randint(1, 4))
        H = QForm.hyperbolic(place)
        if weil_index(H) != Mu8(0):
            return {"place": place.to_json(), "axiom": "hyperbolic"}
        if weil_index(q1 + H) != weil_index(q1):
            return {"place": place.to_json(), "axiom": "witt", "q": q1.to_json()}
        if weil_index(q1 + q2) != weil_index(q1) * weil_index(q2):
            return {"place": place.to_json(), "axiom": "additivity", "q1": q1.to_json(), "q2": q2.to_json()}
        diag = QForm.diagonal(place, q1.diag)
        if weil_index(diag) != weil_index(q1):
            return {"place": place.to_json(), "axiom": "isometry", "q": q1.to_json()}
        if place.is_real:
            a, b = rand_rational(rng), rand_rational(rng)
        else:
            a, b = rand_padic_rational(rng, place.p), rand_padic_rational(rng, place.p)
        lhs = weil_index_rank1(a * b, place) * weil_index_rank1(1, place)
        rhs = weil_index_rank1(a, place) * weil_index_rank1(b, place) * hilbert(a, b, place)
        if lhs != rhs:
            return {"place": place.to_json(), "axiom": "hilbert", "a": fmt(a), "b": fmt(b)}
    return None


def _weil_reciprocity(rng) -> Witness:
    entries = [rand_rational(rng, 30) for _ in range(rng.randint(1, 6))]
    g = weil_global(entries)
    total = g.factor2
    for v in g.local.values():
        total = total * v
    if total != Mu8(0) or g.factor2 != gauss_weil_diag(entries, 2):
        return {"diag": [fmt(e) for e in entries], "complement": g.factor2.k}
    return None


# --- maslov ------------------------------------------------------------------------


def _rand_tuple(rng) -> list[Lagrangian]:
    n, m = rng.randint(1, 2), rng.randint(3, 5)
    return [rand_lagrangian(rng, n) if rng.random() < 0.7 else Lagrangian.standard(n, rng.choice("xy")) for _ in range(m)]


def _lag_json(ls) -> list:
    return [codec.matrix_to_json(l.basis) for l in ls]


def _maslov_dimension(rng) -> Witness:
    ls = _rand_tuple(rng)
    q = thomas_form(ls, Place.padic(3))
    if q.rank != maslov_dim(ls):
        return {"lagrangians": _lag_json(ls), "rank": q.rank, "formula": maslov_dim(ls)}
    return None


def _maslov_chain(rng) -> Witness:
    ls = _rand_tuple(rng)
    for place in (Place.padic(3), Place.padic(5), REAL):
        ch = witt_class(maslov_chain_form(ls, place))
        if witt_class(thomas_form(ls, place)) != ch:
            return {"lagrangians": _lag_json(ls), "place": place.to_json(), "property": "chain"}
        if witt_class(maslov_chain_form(ls[1:] + ls[:1], place)) != ch:
            return {"lagrangians": _lag_json(ls), "place": place.to_json(), "property": "rotation"}
        if witt_class(maslov_chain_form(ls[::-1], place)) != witt_class(-maslov_chain_form(ls, place)):
            return {"lagrangians": _lag_json(ls), "place": place.to_json(), "property": "reversal"}
    return None


def _maslov_cocycle(rng) -> Witness:
    place = Place.padic(3)
    ell = Lagrangian.standard(2)
    g1, g2, g3 = (rand_sp_integral(rng, 2, steps=4) for _ in range(3))
    lhs = cocycle_value(g1, g2, ell, place) * cocycle_value(la.mul(g1, g2), g3, ell, place)
    rhs = cocycle_value(g1, la.mul(g2, g3), ell, place) * cocycle_value(g2, g3, ell, place)
    if lhs != rhs:
        return {"g": [codec.matrix_to_json(g) for g in (g1, g2, g3)]}
    return None


# --- theta -----------------------------------------------------------------------


def _rand_K(rng, p: int, n: int) -> la.Matrix:
    return rand_sp_integral(rng, n, p, steps=rng.randint(3, 6))


def _theta_trivial(rng) -> Witness:
    p = rng.choice((3, 5, 7))
    n = rng.randint(1, 2)
    if theta_lattice(la.scalar(-1, 2 * n), p).value != CycNum.rational(1):
        return {"p": p, "n": n, "case": "minus one"}
    x = _retry(lambda: (lambda x: x if la.det(la.sub(x, la.identity(2 * n))).numerator % p else None)(_rand_K(rng, p, n)))
    if theta_lattice(x, p).value != CycNum.rational(1):
        return {"p": p, "matrix": codec.matrix_to_json(x), "case": "(x-1)L = L"}
    return None


def _theta_regular(rng) -> Witness:
    p = rng.choice((3, 5, 7))
    n = rng.randint(1, 2)
    x = _retry(lambda: (lambda x: x if reduction_regular(x, p) else None)(_rand_K(rng, p, n)))
    one = CycNum.rational(1)
    if theta_lattice(x, p).value != one or theta_lattice(la.neg(x), p).value != one:
        return {"p": p, "matrix": codec.matrix_to_json(x)}
    return None


def _theta_cayley(rng) -> Witness:
    p = rng.choice((3, 5))
    n = rng.randint(1, 2)
    x = rand_top_unipotent(rng, n, p, max_val=4)
    if theta_lattice(x, p).value != theta_via_cayley(x, p).value:
        return {"p": p, "matrix": codec.matrix_to_json(x)}
    return None


def _theta_ratio(rng) -> Witness:
    p = rng.choice((3, 5))
    n = rng.randint(1, 2)

    def gen():
        x = _rand_K(rng, p, n)
        m = 2 * n
        dm, dp = la.det(la.sub(x, la.identity(m))), la.det(la.add(x, la.identity(m)))
        if dm == 0 or dp == 0:
            return None
        from .base_field import vp

        return x if vp(dm, p) + vp(dp, p) <= 4 else None

    x = _retry(gen)
    lhs, rhs = theta_ratio_sides(x, p)
    return None if lhs == rhs else {"p": p, "matrix": codec.matrix_to_json(x)}


def _theta_decompose(rng) -> Witness:
    p = 3
    blocks = [rand_top_unipotent(rng, 1, p, max_val=2), _retry(lambda: (lambda x: x if la.det(la.sub(x, la.identity(2))) else None)(_rand_K(rng, p, 1)))]
    whole, prod = theta_decompose(blocks, p)
    return None if whole == prod else {"p": p, "blocks": [codec.matrix_to_json(b) for b in blocks]}


# --- calcul-qx and the trace lemmas ---------------------------------------------------


def _rand_sep_poly(rng, deg: int) -> tuple:
    from .etale import MonoAlg

    while True:
        P = tuple(F(rng.randint(-6, 6)) for _ in range(deg)) + (F(1),)
        if P[0] == 0:
            continue
        A = MonoAlg(P)
        if A.norm(A.deriv_at_gen()) != 0:
            return P


def _trace_lemmas(rng) -> Witness:
    P = _rand_sep_poly(rng, rng.randint(2, 5))
    _, pairing = dual_basis_traces(P)
    n = len(P) - 1
    if pairing != la.identity(n):
        return {"P": [fmt(c) for c in P], "lemma": "dual basis"}
    for p in (3, 5, 7):
        _, _, ok1, ok2 = q1_q2_classes(P, Place.padic(p))
        if not (ok1 and ok2):
            return {"P": [fmt(c) for c in P], "p": p, "q1": ok1, "q2": ok2}
    return None


def _keystone(rng) -> Witness:
    for place in [Place.padic(p) for p in (3, 5, 7)] + [REAL]:
        X = rand_lie_param(rng, place, 6)
        lhs, rhs = keystone_sides(X)
        if lhs != rhs:
            return {"place": place.to_json(), "param": codec.param_to_json(X), "gram": lhs.k, "closed": rhs.k}
    return None


def _sign_change(rng) -> Witness:
    for place in [Place.padic(p) for p in (3, 5, 7)]:
        X = rand_lie_param(rng, place, 6, epsilon=1)
        r = X.c
        t = X.alg.sharp([rand_padic_rational(rng, place.p) for _ in X.alg.factors])
        lhs = weil_index(trace_form(X.alg, r * t))
        rhs = weil_index(trace_form(X.alg, r)) * sgn_char(X.alg, t)
        if lhs != rhs:
            return {"place": place.to_json(), "param": codec.param_to_json(X)}
    return None


def _orthogonal(rng) -> Witness:
    for place in [Place.padic(p) for p in (3, 5, 7)] + [REAL]:
        X = rand_lie_param(rng, place, 6, epsilon=1)
        t = rand_rational(rng) if place.is_real else rand_padic_rational(rng, place.p)
        a, b = signe_transfert_sides(X, t)
        if not pfaffian_check(X) or a != b:
            return {"place": place.to_json(), "param": codec.param_to_json(X), "t": fmt(t)}
    return None


# --- reciprocity lemmas -------------------------------------------------------------


def _all_places():
    return [Place.padic(p) for p in (3, 5, 7)] + [REAL]


def _recip_lie(rng) -> Witness:
    place = rng.choice(_all_places())

    def gen():
        X1, X2 = rand_lie_param(rng, place, 4), rand_lie_param(rng, place, 4)
        return (X1, X2, reciprocity_lie_sides(X1, X2))

    X1, X2, (lhs, rhs) = _retry(gen)
    return None if lhs == rhs else {"place": place.to_json(), "X1": codec.param_to_json(X1), "X2": codec.param_to_json(X2)}


def _recip_group(rng) -> Witness:
    place = rng.choice(_all_places())

    def gen():
        d1, d2 = rand_group_param(rng, place, 4), rand_group_param(rng, place, 4)
        return (d1, d2, reciprocity_group_sides(d1, d2))

    d1, d2, (lhs, rhs) = _retry(gen)
    return None if lhs == rhs else {"place": place.to_json(), "d1": codec.param_to_json(d1), "d2": codec.param_to_json(d2)}


def _mobius(rng) -> Witness:
    P = _rand_sep_poly(rng, rng.randint(1, 5)) if rng.random() < 0.9 else (F(rng.randint(1, 5)), F(1))

    def gen():
        a, b, c, d = (rng.randint(-5, 5) for _ in range(4))
        if c == 0 or a * d - b * c == 0:
            return None
        return (a, b, c, d, mobius_check(P, a, b, c, d))

    a, b, c, d, (ok1, ok2) = _retry(gen)
    return None if ok1 and ok2 else {"P": [fmt(x) for x in P], "abcd": [a, b, c, d], "poly": ok1, "deriv": ok2}


# --- delta0 -----------------------------------------------------------------------


def _rand_gamma(rng, place: Place, dim_max: int = 4) -> HClassParam:
    def gen():
        g = HClassParam(rand_group_param(rng, place, dim_max, epsilon=1), rand_group_param(rng, place, dim_max, epsilon=1))
        correspond(g)
        return g

    return _retry(gen)


def _delta0_reciprocity(rng) -> Witness:
    place = rng.choice(_all_places())
    g = _rand_gamma(rng, place)
    if not delta0_reciprocity_check(g) or delta0(g) != delta0_two_step(g):
        return {"pair": codec.pair_to_json(g)}
    return None


def _delta0_trivial(rng) -> Witness:
    place = rng.choice(_all_places())
    g = _rand_gamma(rng, place)
    if delta0(HClassParam(g.g1, None)) != 1 or delta0(HClassParam(None, g.g2)) != 1:
        return {"pair": codec.pair_to_json(g), "case": "empty side"}
    split = rand_group_param(rng, place, 4, epsilon=1, alg=_split_alg(rng, place))
    g2 = _retry(lambda: (lambda h: (correspond(h), h)[1])(HClassParam(g.g1, rand_group_param(rng, place, 4, epsilon=1, alg=_split_alg(rng, place)))))
    if delta0(g2) != 1 or split is None:
        return {"pair": codec.pair_to_json(g2), "case": "split K''"}
    return None


def _split_alg(rng, place):
    from .etale import EtaleAlg

    k = rng.randint(1, 2)
    return EtaleAlg(tuple(Factor(ExtField.base(place)) for _ in range(k)))


def _delta0_descent(rng) -> Witness:
    place = rng.choice(_all_places())
    g = _rand_gamma(rng, place)

    def gen():
        ext = g
        for _ in range(rng.randint(1, 2)):
            u = rand_rational(rng, 9) if place.is_real else rand_padic_rational(rng, place.p, 1)
            ext = append_split(ext, rng.choice((1, 2)), u)
        correspond(ext)
        return ext

    ext = _retry(gen)
    if delta0(ext) != delta0(g):
        return {"pair": codec.pair_to_json(g), "extended": codec.pair_to_json(ext)}
    return None


def _circle_point(rng) -> tuple:
    while True:
        s, t = rng.randint(-7, 7), rng.randint(1, 7)
        if s:
            return (F(s * s - t * t, s * s + t * t), F(2 * s * t, s * s + t * t))


def _delta0_renard(rng) -> Witness:
    def gen():
        w1 = [_circle_point(rng) for _ in range(rng.randint(1, 3))]
        w2 = [_circle_point(rng) for _ in range(rng.randint(1, 3))]
        s1 = [rand_rational(rng, 7)] if rng.random() < 0.3 else []
        s2 = [rand_rational(rng, 7)] if rng.random() < 0.3 else []
        g = real_gamma(w1, w2, s1, s2)
        correspond(g)
        return w1, w2, g, delta_R(w1, w2)

    w1, w2, g, dr = _retry(gen)
    if delta0(g) != dr:
        return {"w1": [[fmt(x), fmt(y)] for x, y in w1], "w2": [[fmt(x), fmt(y)] for x, y in w2]}
    return None


def _delta0_twist(rng) -> Witness:
    place = rng.choice([Place.padic(p) for p in (3, 5, 7)] + [REAL])
    g = _retry(lambda: (lambda h: h if correspond(h).alg.inert_indices else None)(_rand_gamma(rng, place)))
    istar = correspond(g).alg.inert_indices
    tw = {i: rng.choice((1, -1)) for i in istar}
    rep = delta0_cocycle_twist(g, tw)
    if not rep.ok:
        return {"pair": codec.pair_to_json(g), "twist": {str(k): v for k, v in tw.items()}}
    return None


def _product_formula(rng) -> Witness:
    from .poly import pmul

    def norm_one(e):
        while True:
            s, t = rng.randint(-6, 6), rng.randint(1, 6)
            den = s * s - e * t * t
            if den and s:
                return (F(s * s + e * t * t, den), F(2 * s * t, den))

    def gen():
        P = (F(1),)
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.5:
                u = rand_rational(rng, 9)
                if u in (1, -1):
                    return None
                P = pmul(P, (F(1), -(u + 1 / u), F(1)))
            else:
                e = rng.choice([-1, 2, 3, -3, 5, -5, 6, 7, -7])
                x, _ = norm_one(e)
                P = pmul(P, (F(1), -2 * x, F(1)))
        blocks = []
        for _ in range(rng.randint(1, 2)):
            d = rng.choice([-1, 2, 3, -3, 5, -5, 6, 7, -7, 10, -11, 13])
            x, y = norm_one(d)
            blocks.append((d, x, y))
        return P, blocks, product_formula_delta0(P, blocks)

    P, blocks, rep = _retry(gen)
    from .transfer import rational_alpha

    oracle = 1
    for d, x, y in blocks:
        oracle *= hilbert2(rational_alpha(P, d, x, y), d)
    if not rep.ok or rep.factor2 != oracle:
        return {"P": [fmt(c) for c in P], "blocks": [[fmt(t) for t in b] for b in blocks], "local": {str(k): v for k, v in rep.local.items()}}
    return None


# --- transfer -----------------------------------------------------------------------


def _compact_gamma(rng, p: int, n_max: int = 2, near_one: bool = False, kinds2=None, n2_max=None) -> HClassParam:
    n2 = n_max if n2_max is None else n2_max
    return HClassParam(rand_compact_side(rng, p, n_max, 2), rand_compact_side(rng, p, n2, 2, near_one=near_one, kinds=kinds2))


def _normalization(rng) -> Witness:
    p = rng.choice((3, 5))

    def gen():
        g = _compact_gamma(rng, p, rng.randint(1, 2))
        delta = correspond(g)
        x1, x2 = realize_pair(g, delta, p)
        return (g, x1, x2) if reduction_regular(direct_sum_matrix(x1, x2), p) else None

    g, x1, x2 = _retry(gen, 2000)
    v = full_delta_matrix(g, x1, x2, p)
    if v.mu8 != Mu8(0) or v.delta0 != 1:
        return {"p": p, "pair": codec.pair_to_json(g), "value": v.to_json()}
    return None


def _twist(rng) -> Witness:
    """Full Delta stays in mu_8; the data-level ratio is kappa exactly and the
    lattice-section ratio is kappa up to the kernel {+-1} of the covering."""
    p = rng.choice((3, 5))

    def gen():
        g = _compact_gamma(rng, p, 1, near_one=True, kinds2=["inert", "inert"], n2_max=2)
        delta = correspond(g)
        base = full_delta(g, p)
        k1 = len(g.g1.alg.factors)
        idx = [i for i in delta.alg.inert_indices if i >= k1]
        tw = {i: -1 for i in idx if rng.random() < 0.7} or {idx[0]: -1}
        twisted = full_delta(g, p, twist_c(delta, tw))
        return g, delta, tw, base, twisted

    g, delta, tw, base, twisted = _retry(gen)
    kappa = kappa_of_twist(g, delta, tw)
    rep = delta0_cocycle_twist(g, tw)
    ratio = twisted.mu8 * base.mu8.inverse()
    if not rep.ok or rep.predicted != kappa or ratio not in (Mu8.sign(kappa), Mu8.sign(-kappa)):
        return {"p": p, "pair": codec.pair_to_json(g), "twist": {str(k): v for k, v in tw.items()}, "ratio": ratio.k}
    return None


def _two_forms(rng) -> Witness:
    p = rng.choice((3, 5))

    def gen():
        g = _compact_gamma(rng, p, 2, near_one=rng.random() < 0.5)
        x1, x2 = realize_pair(g, correspond(g), p)
        return g, x1, x2

    g, x1, x2 = _retry(gen)
    if full_delta_matrix(g, x1, x2, p).mu8 != full_delta_second_form(g, x1, x2, p):
        return {"p": p, "pair": codec.pair_to_json(g)}
    return None


def _lie_descent(rng) -> Witness:
    place = rng.choice(_all_places())

    def gen():
        X = rand_lie_param(rng, place, 6)
        return X if len(X.alg.factors) >= 2 else None

    X = _retry(gen)
    k = len(X.alg.factors)
    dp = sorted(rng.sample(range(k), rng.randint(1, k - 1)))
    if lie_descent_plus(X, dp) != lie_plus_via_keystone(X, dp):
        return {"place": place.to_json(), "param": codec.param_to_json(X), "dprime": dp}
    return None


SUITES: dict[str, list[Check]] = {
    "hilbert": [
        Check("hilbert.square-classes", "Hilbert symbol vs conic solvability mod p^3, all square classes", _hilbert_square_classes, True),
        Check("hilbert.conic", "Hilbert symbol vs conic solvability mod p^3", _hilbert_conic),
        Check("hilbert.reciprocity", "Hilbert reciprocity over Q, 2-adic factor by complement", _hilbert_reciprocity),
    ],
    "weil": [
        Check("weil.rank1-gauss", "rank-one Weil index vs normalized Gauss sums", _weil_rank1),
        Check("weil.axioms", "Weil index: Witt invariance, additivity, hyperbolic plane, Hilbert relation", _weil_axioms),
        Check("weil.reciprocity", "Weil reciprocity over Q, 2-adic factor by complement", _weil_reciprocity),
    ],
    "maslov": [
        Check("maslov.dimension", "rank of the Maslov form", _maslov_dimension),
        Check("maslov.chain", "Maslov form: chain decomposition, rotation, reversal", _maslov_chain),
        Check("maslov.cocycle", "2-cocycle identity of gamma(tau(l, gl, gg'l)) in Sp(4, Q_3)", _maslov_cocycle),
    ],
    "theta": [
        Check("theta.trivial", "Theta = 1 when (x-1)L = L, and Theta(-1) = 1", _theta_trivial),
        Check("theta.regular-reduction", "Theta(x) = Theta(-x) = 1 for regular reduction", _theta_regular),
        Check("theta.cayley", "lattice sum = p^{v/2} gamma(q[C_x]) for topologically unipotent x", _theta_cayley),
        Check("theta.ratio", "Theta(x) / Theta(-x) = gamma(q[C_x]) |det(x+1)/det(x-1)|^{1/2}", _theta_ratio),
        Check("theta.decompose", "Theta of a block sum is the product", _theta_decompose),
    ],
    "calcul-qx": [
        Check("trace.lemmas", "dual basis pairing and the closed forms of q1, q2", _trace_lemmas),
        Check("calcul-qx.keystone", "gamma(q[X]) = gamma((-1)^{n-1}) gamma(det X) sgn(c^{-1} P_X'(a))", _keystone),
        Check("calcul-qx.sign-change", "gamma of the trace form changes by sgn_{K/K#}", _sign_change),
        Check("calcul-qx.orthogonal", "Pfaffian square class and sgn(t) = (t, (-1)^m det q)", _orthogonal),
    ],
    "reciprocity": [
        Check("reciprocity.lie", "sgn(P_{X''}(a')) sgn(P_{X'}(a'')) = (-1,-1)^{n'n''} (det X', det X'')", _recip_lie),
        Check("reciprocity.group", "group-level reciprocity of the Delta_0 signs", _recip_group),
        Check("reciprocity.mobius", "Mobius identities for characteristic polynomials", _mobius),
    ],
    "delta0": [
        Check("delta0.reciprocity", "Delta_0(d', d'') = Delta_0(-d'', -d') and two-step evaluation", _delta0_reciprocity),
        Check("delta0.trivial", "Delta_0 = 1 when n'n'' = 0 or K'' is split", _delta0_trivial),
        Check("delta0.descent", "Delta_0 unchanged by appended split GL(1) blocks", _delta0_descent),
        Check("delta0.renard", "Delta_0 = prod sgn(Re w' - Re w'') over R", _delta0_renard),
        Check("delta0.twist", "c''-twist: Delta_0 fixed, gamma(q[C]) ratio = kappa", _delta0_twist),
    ],
    "product-formula": [
        Check("product-formula.delta0", "prod_v sgn_{K''_v}(alpha'') = 1 over Q", _product_formula),
    ],
    "transfer": [
        Check("transfer.normalization", "Delta = 1 at regular-reduction pairs in K", _normalization),
        Check("transfer.twist", "Delta in mu_8; twist ratio = kappa", _twist),
        Check("transfer.two-forms", "Theta+ - Theta- and Theta+ + Theta- expressions agree", _two_forms),
        Check("transfer.lie-descent", "Delta_+ vs the keystone route", _lie_descent),
    ],
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suites(names: list[str], trials: int, seed: int) -> list[CheckReport]:
    out = []
    for name in names:
        for check in SUITES[name]:
            out.append(run_check(check, trials, seed))
    return out


def find_check(name: str) -> Check:
    for checks in SUITES.values():
        for c in checks:
            if c.name == name:
                return c
    raise KeyError(name)
