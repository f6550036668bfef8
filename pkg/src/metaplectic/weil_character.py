"""The metaplectic character on Stab(L) in the lattice model, L = Z_p^{2n}.

For x preserving L with det(x - 1) != 0,

    Theta(x) = sum_{w in (x-1)^{-1}L / L} psi(<xw|w> / 2),

a finite sum of p-power roots of unity.  Writing l = (x - 1)w gives
<xw|w> = <l|w>, so after a local Smith reduction of x - 1 the phase is an
integer quadratic form in the Smith coordinates, evaluated mod p^K.

Because the sum is built from psi(<xw|w>/2), its closed forms involve the
Weil index relative to y -> psi(y/2); ``gamma_half`` computes it as
gamma_psi(q/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg as la
from .base_field import Mu8, Place, vp
from .cyclotomic import CycNum, p_power_half
from .poly import mod_gcd, mod_trim
from .quadratic_forms import QForm, weil_index
from .symplectic import J, cayley, direct_sum_matrix, is_symplectic, q_of_X


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeModel:
    p: int
    n: int

    def __post_init__(self):
        Place.padic(self.p)  # validates p
        if self.p == 2:
            raise ThetaError("p must be odd")

    @property
    def place(self) -> Place:
        return Place.padic(self.p)


@dataclass(frozen=True)
class ThetaVal:
    value: CycNum
    terms: int
    det_minus_val: int
    p: int

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "terms": self.terms, "det_minus_val": self.det_minus_val}


def gamma_half(q: QForm) -> Mu8:
    """The Weil index of q relative to y -> psi(y/2)."""
    return weil_index(q.scale(Fraction(1, 2)))


# --- membership tests -----------------------------------------------------------


def _integral(a: la.Matrix, p: int) -> bool:
    return all(x.denominator % p for row in a for x in row)


def _charpoly_mod_p(x: la.Matrix, p: int) -> tuple[int, ...]:
    # x is p-integral, so its characteristic polynomial has p-integral coefficients
    return mod_trim([c.numerator * pow(c.denominator, -1, p) % p for c in la.charpoly(x)], p)


def in_K(x: la.Matrix, p: int) -> bool:
    x = la.mat(x)
    if not is_symplectic(x):
        return False
    return _integral(x, p) and vp(la.det(x), p) == 0


def reduction_regular(x: la.Matrix, p: int) -> bool:
    """The reduction mod p is regular semisimple: its characteristic polynomial is separable."""
    if not in_K(x, p):
        return False
    P = _charpoly_mod_p(la.mat(x), p)
    dP = mod_trim([(i * c) % p for i, c in enumerate(P)][1:], p)
    return mod_gcd(P, dP, p) == (1,)


def top_unipotent(x: la.Matrix, p: int) -> bool:
    """The reduction mod p is unipotent: P_x = (T - 1)^{2n} mod p."""
    if not in_K(x, p):
        return False
    x = la.mat(x)
    m = len(x)
    target = [0] * (m + 1)
    from math import comb

    for k in range(m + 1):
        target[k] = comb(m, k) * (-1) ** (m - k) % p
    return _charpoly_mod_p(x, p) == mod_trim(target, p)


# --- local Smith form ----------------------------------------------------------


def local_smith(a: la.Matrix, p: int) -> tuple[la.Matrix, list[int]]:
    """U in GL(Z_(p)) and exponents k_i with a Z_p^m = U^{-1} (+ p^{k_i} Z_p).

    Row operations only: the pivot of each step has minimal valuation in the
    remaining block, so the column clearing that finishes the Smith form
    uses p-integral coefficients and does not change the image lattice.
    """
    rows = [list(r) for r in la.mat(a)]
    m = len(rows)
    U = [list(r) for r in la.identity(m)]
    cols = list(range(m))
    ks = []
    for s in range(m):
        best = None
        for i in range(s, m):
            for jj in range(s, m):
                x = rows[i][cols[jj]]
                if x:
                    v = vp(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, jj)
        if best is None:
            raise ThetaError("singular matrix")
        v, i, jj = best
        rows[s], rows[i] = rows[i], rows[s]
        U[s], U[i] = U[i], U[s]
        cols[s], cols[jj] = cols[jj], cols[s]
        piv = rows[s][cols[s]]
        for r in range(s + 1, m):
            f = rows[r][cols[s]] / piv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[s])]
                U[r] = [x - f * y for x, y in zip(U[r], U[s])]
        ks.append(v)
    return la.mat(U), ks


def _to_residue(x: Fraction, p: int, mod: int) -> int:
    """The p-integral x reduced mod ``mod`` (a power of p)."""
    if x.denominator % p == 0:
        raise ThetaError("entry is not p-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


# --- the character --------------------------------------------------------------


def _check_K(x: la.Matrix, p: int) -> la.Matrix:
    x = la.mat(x)
    if len(x) % 2 or not in_K(x, p):
        raise ThetaError("x is not in the stabilizer of the standard lattice")
    return x


def theta_lattice(x: la.Matrix, p: int) -> ThetaVal:
    x = _check_K(x, p)
    m = len(x)
    A = la.sub(x, la.identity(m))
    d = la.det(A)
    if d == 0:
        raise ThetaError("det(x - 1) = 0")
    v = vp(d, p)
    U, ks = local_smith(A, p)
    K = max(ks) if ks else 0
    if K == 0:
        return ThetaVal(CycNum.rational(1), 1, v, p)
    mod = p**K
    Ui = la.inverse(U)
    # phase(t) = <l|w>/2 with l = U^{-1} t, w = A^{-1} l
    Q = la.mul(la.mul(la.transpose(Ui), J(m // 2)), la.mul(la.inverse(A), Ui))
    Qint = [[_to_residue(Q[i][j] * mod / 2, p, mod) for j in range(m)] for i in range(m)]
    active = [i for i in range(m) if ks[i] > 0]
    counts: dict[int, int] = {}
    for t in product(*(range(p ** ks[i]) for i in active)):
        s = 0
        for a, ti in zip(active, t):
            if ti:
                row = Qint[a]
                s += ti * sum(row[b] * tj for b, tj in zip(active, t))
        # psi_p(y) = exp(-2 pi i {y}_p)
        e = (-s) % mod
        counts[e] = counts.get(e, 0) + 1
    terms = sum(counts.values())
    return ThetaVal(CycNum.from_exponent_counts(mod, counts), terms, v, p)


def theta_via_cayley(x: la.Matrix, p: int) -> ThetaVal:
    """p^{v/2} gamma(q[C_x]) (relative to psi(./2)) for topologically unipotent x."""
    x = _check_K(x, p)
    if not top_unipotent(x, p):
        raise ThetaError("x is not topologically unipotent")
    m = len(x)
    d = la.det(la.sub(x, la.identity(m)))
    if d == 0:
        raise ThetaError("det(x - 1) = 0")
    v = vp(d, p)
    g = gamma_half(q_of_X(cayley(x), Place.padic(p)))
    return ThetaVal(p_power_half(p, v) * CycNum.from_mu8(g), p**v, v, p)


def theta_ratio_sides(x: la.Matrix, p: int) -> tuple[CycNum, CycNum]:
    """(Theta(x), gamma(q[C_x]) |det(x+1)/det(x-1)|^{1/2} Theta(-x))."""
    x = _check_K(x, p)
    m = len(x)
    dm = la.det(la.sub(x, la.identity(m)))
    dp = la.det(la.add(x, la.identity(m)))
    if dm == 0 or dp == 0:
        raise ThetaError("x has eigenvalue 1 or -1")
    lhs = theta_lattice(x, p).value
    g = gamma_half(q_of_X(cayley(x), Place.padic(p)))
    rhs = CycNum.from_mu8(g) * p_power_half(p, vp(dm, p) - vp(dp, p)) * theta_lattice(la.neg(x), p).value
    return lhs, rhs


def theta_ratio_check(x: la.Matrix, p: int) -> bool:
    lhs, rhs = theta_ratio_sides(x, p)
    return lhs == rhs


def theta_decompose(blocks: Sequence[la.Matrix], p: int) -> tuple[CycNum, CycNum]:
    """(Theta of the block sum, product of the blockwise values)."""
    if not blocks:
        raise ThetaError("no blocks")
    total = blocks[0]
    for b in blocks[1:]:
        total = direct_sum_matrix(total, b)
    whole = theta_lattice(total, p).value
    prod = CycNum.rational(1)
    for b in blocks:
        prod = prod * theta_lattice(b, p).value
    return whole, prod


def exp_truncated(X: la.Matrix, order: int) -> la.Matrix:
    """sum_{k <= order} X^k / k!; used to build test elements near 1."""
    m = len(X)
    out, term = la.identity(m), la.identity(m)
    for k in range(1, order + 1):
        term = la.scale(Fraction(1, k), la.mul(term, X))
        out = la.add(out, term)
    return out
