"""Nondegenerate quadratic forms over Q_p (p odd) and R.

A form is stored by its Gram matrix B, with q(x) = xᵀ B x, so the diagonal
form <a_1, ..., a_m> has Gram diag(a_i).  Local invariants are computed on a
diagonalization: the determinant square class, the Hasse invariant
s(q) = prod_{i<j} (a_i, a_j), and at R the signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .base_field import Mu8, Place, PsiSpec, hilbert, is_square, square_class_rep, weil_index_rank1
from .etale import EtaleAlg, EtaleElem, MonoAlg, hermitian_gram, ParamError


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class QForm:
    place: Place
    gram: la.Matrix

    def __post_init__(self):
        g = la.mat(self.gram)
        object.__setattr__(self, "gram", g)
        if not la.is_symmetric(g):
            raise FormError("Gram matrix is not symmetric")
        if g and la.det(g) == 0:
            raise FormError("degenerate form")

    @classmethod
    def diagonal(cls, place: Place, entries: Sequence) -> "QForm":
        if any(Fraction(e) == 0 for e in entries):
            raise FormError("zero diagonal entry")
        return cls(place, la.diag(entries))

    @classmethod
    def hyperbolic(cls, place: Place, copies: int = 1) -> "QForm":
        return cls.diagonal(place, [1, -1] * copies)

    @classmethod
    def from_degenerate(cls, place: Place, gram: la.Matrix) -> "QForm":
        """The nondegenerate quotient of a possibly degenerate symmetric form."""
        d, _ = la.sym_diagonalize(la.mat(gram))
        return cls.diagonal(place, [x for x in d if x != 0])

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def diag(self) -> tuple[Fraction, ...]:
        d, _ = la.sym_diagonalize(self.gram)
        return tuple(d)

    @property
    def is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0 for i in range(self.rank) for j in range(self.rank) if i != j)

    def det(self) -> Fraction:
        return la.det(self.gram)

    def __add__(self, o: "QForm") -> "QForm":
        return direct_sum(self, o)

    def __neg__(self) -> "QForm":
        return QForm(self.place, la.neg(self.gram))

    def scale(self, t) -> "QForm":
        return QForm(self.place, la.scale(t, self.gram))

    def at(self, place: Place) -> "QForm":
        return QForm(place, self.gram)

    def to_json(self) -> dict:
        if self.is_diagonal:
            return {"diag": [la.fmt_frac(self.gram[i][i]) for i in range(self.rank)]}
        return {"gram": la.fmt_matrix(self.gram)}


def _check_same_place(*qs: QForm) -> Place:
    places = {q.place for q in qs}
    if len(places) != 1:
        raise FormError("forms at different places")
    return places.pop()


def direct_sum(*qs: QForm) -> QForm:
    place = _check_same_place(*qs)
    return QForm(place, la.block_diag(*(q.gram for q in qs)))


def diagonalize(q: QForm) -> QForm:
    return QForm.diagonal(q.place, q.diag) if q.rank else q


def hasse(q: QForm) -> int:
    d = q.diag
    s = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            s *= hilbert(d[i], d[j], q.place)
    return s


def det_class(q: QForm) -> Fraction:
    return square_class_rep(q.det(), q.place) if q.rank else Fraction(1)


def signature(q: QForm) -> tuple[int, int]:
    if not q.place.is_real:
        raise FormError("signature only at the real place")
    pos = sum(1 for x in q.diag if x > 0)
    return pos, q.rank - pos


def weil_index(q: QForm, psi: PsiSpec | None = None) -> Mu8:
    """gamma(q) = gamma(1)^{m-1} gamma(det q) s(q)."""
    place = psi.place if psi is not None else q.place
    if place != q.place:
        raise FormError("character and form at different places")
    if q.rank == 0:
        return Mu8(0)
    g1 = weil_index_rank1(1, place)
    return (g1 ** (q.rank - 1)) * weil_index_rank1(q.det(), place) * hasse(q)


@dataclass(frozen=True)
class WittClass:
    """Invariants of the anisotropic kernel (rank, det class, Hasse); signature at R."""

    place: Place
    rank: int
    det: Fraction
    hasse: int
    signature: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def to_json(self) -> dict:
        out = {"rank": self.rank, "det": f"{self.det.numerator}/{self.det.denominator}", "hasse": self.hasse}
        if self.signature is not None:
            out["signature"] = self.signature
        return out


def _isotropic(place: Place, r: int, d: Fraction, s: int) -> bool:
    if r <= 1:
        return False
    if r == 2:
        return is_square(-d, place)
    if r == 3:
        return s == hilbert(-1, -d, place)
    if r == 4:
        return not (is_square(d, place) and s == -hilbert(-1, -1, place))
    return True


def witt_class(q: QForm) -> WittClass:
    place = q.place
    if place.is_real:
        pos, neg = signature(q)
        sig = pos - neg
        r = abs(sig)
        kernel = QForm.diagonal(place, [1 if sig > 0 else -1] * r)
        return WittClass(place, r, det_class(kernel) if r else Fraction(1), hasse(kernel) if r else 1, sig)
    r, d, s = q.rank, q.det() if q.rank else Fraction(1), hasse(q) if q.rank else 1
    while _isotropic(place, r, d, s):
        # q = H + q', det q' = -det q, s(q) = s(q') (-1, det q')
        d = -d
        s = s * hilbert(-1, d, place)
        r -= 2
    if r == 0:
        return WittClass(place, 0, Fraction(1), 1)
    return WittClass(place, r, square_class_rep(d, place), s)


def witt_equal(q1: QForm, q2: QForm) -> bool:
    _check_same_place(q1, q2)
    return witt_class(q1) == witt_class(q2)


def isometric(q1: QForm, q2: QForm) -> bool:
    _check_same_place(q1, q2)
    if q1.rank != q2.rank:
        return False
    if q1.rank == 0:
        return True
    if q1.place.is_real:
        return signature(q1) == signature(q2)
    return det_class(q1) == det_class(q2) and hasse(q1) == hasse(q2)


def witt_class_form(w: WittClass) -> QForm:
    """A diagonal anisotropic representative of a Witt class (p-adic)."""
    from itertools import product

    place = w.place
    if w.rank == 0:
        return QForm(place, ())
    if place.is_real:
        return QForm.diagonal(place, [1 if (w.signature or 0) > 0 else -1] * w.rank)
    reps = [Fraction(1), Fraction(_nonres(place.p)), Fraction(place.p), Fraction(place.p * _nonres(place.p))]
    for entries in product(reps, repeat=w.rank):
        q = QForm.diagonal(place, entries)
        if witt_class(q) == w:
            return q
    raise FormError("no representative found")


def _nonres(p: int) -> int:
    from .base_field import least_nonresidue

    return least_nonresidue(p)


# --- trace forms ---------------------------------------------------------------


def trace_form(alg: EtaleAlg, r: EtaleElem) -> QForm:
    """x -> tr_{K#/F}(r N_{K/K#}(x)) on K, for tau-fixed invertible r.

    This is the hermitian trace form with c = r viewed as a quadratic form,
    i.e. Gram tr_{K/F}(r tau(x) y) halved back to tr_{K#/F}.
    """
    if not r.is_tau_fixed():
        raise ParamError("r must be tau-fixed")
    if not r.is_invertible():
        raise ParamError("r must be invertible")
    g = hermitian_gram(alg, r)
    # tr_{K/F}(r tau(x) x) = 2 tr_{K#/F}(r N(x))
    return QForm(alg.place, la.scale(Fraction(1, 2), g))


def dual_basis_traces(P_b: Sequence[Fraction]) -> tuple[list[tuple[Fraction, ...]], la.Matrix]:
    """The g_k of P_b(T)/(T-b) and the pairing tr(P_b'(b)^{-1} g_k b^s).

    Returns (g, pairing) with g[k] in coordinates on 1, b, ..., b^{n-1}.
    """
    A = MonoAlg(tuple(P_b))
    n = A.n
    h = A.P
    b = A.gen()
    g = []
    for k in range(n):
        acc = A.reduce((Fraction(0),))
        for j in range(k + 1, n + 1):
            term = A.power(b, j - k - 1)
            acc = tuple(x + h[j] * y for x, y in zip(acc, term))
        g.append(acc)
    inv_d = A.inverse(A.deriv_at_gen())
    pairing = tuple(
        tuple(A.trace(A.mul(A.mul(inv_d, g[k]), A.power(b, s))) for s in range(n)) for k in range(n)
    )
    return g, pairing


def q1_q2_forms(P_b: Sequence[Fraction], place: Place) -> tuple[QForm, QForm]:
    """q1 = tr_*<P_b'(b)^{-1}>, q2 = tr_*<b^{-1} P_b'(b)^{-1}> on the power basis."""
    A = MonoAlg(tuple(P_b))
    inv_d = A.inverse(A.deriv_at_gen())
    inv_b = A.inverse(A.gen())
    return QForm(place, A.trace_form(inv_d)), QForm(place, A.trace_form(A.mul(inv_b, inv_d)))


def q1_q2_closed_forms(P_b: Sequence[Fraction], place: Place) -> tuple[QForm, QForm]:
    A = MonoAlg(tuple(P_b))
    n = A.n
    m = n // 2
    Nb = A.norm(A.gen())
    H = [1, -1]
    if n % 2 == 0:
        q1 = QForm.diagonal(place, H * m)
        q2 = QForm.diagonal(place, H * (m - 1) + [1, -Nb])
    else:
        q1 = QForm.diagonal(place, H * m + [1])
        q2 = QForm.diagonal(place, H * m + [Nb])
    return q1, q2


def q1_q2_classes(P_b: Sequence[Fraction], place: Place) -> tuple[QForm, QForm, bool, bool]:
    """Build q1, q2 and compare them with their closed forms."""
    q1, q2 = q1_q2_forms(P_b, place)
    c1, c2 = q1_q2_closed_forms(P_b, place)
    return q1, q2, isometric(q1, c1), isometric(q2, c2)


def qa_closed_form(P_b: Sequence[Fraction], place: Place) -> QForm:
    """(n-1)H + <(-1)^{n-1}, N_{K/F}(a)> where a^2 = b."""
    A = MonoAlg(tuple(P_b))
    n = A.n
    Na = (-1) ** n * A.norm(A.gen())
    return QForm.diagonal(place, [1, -1] * (n - 1) + [(-1) ** (n - 1), Na])


def parse_form(obj: dict, place: Place) -> QForm:
    if "diag" in obj:
        return QForm.diagonal(place, [la.frac(x) for x in obj["diag"]])
    if "gram" in obj:
        return QForm(place, la.mat(obj["gram"]))
    raise FormError("form must have 'diag' or 'gram'")


# --- orthogonal realizations ----------------------------------------------------------


def _orthogonal_lie(param) -> tuple[la.Matrix, la.Matrix]:
    from .etale import LIE, matrix_realization

    if param.epsilon != 1 or param.mode != LIE or param.dim % 2:
        raise FormError("needs an even-dimensional orthogonal Lie parameter")
    return matrix_realization(param)


def pfaffian_check(param) -> bool:
    """det Y lies in det q . F^x2 for the realization Y in so(K, q)."""
    G, M = _orthogonal_lie(param)
    return is_square(la.det(M) / la.det(G), param.place)


def signe_transfert_sides(param, t) -> tuple[int, int]:
    """(sgn_{K/K#}(t), (t, (-1)^{dim/2} det q)) for t in F^x."""
    from .etale import sgn_char

    G, _ = _orthogonal_lie(param)
    t = Fraction(t)
    lhs = sgn_char(param.alg, param.alg.scalar(t))
    rhs = hilbert(t, (-1) ** (param.dim // 2) * la.det(G), param.place)
    return lhs, rhs


# --- global reciprocity over Q -------------------------------------------------------


def weil_global(entries: Sequence):
    """gamma_{psi_v}(<a_1, ..., a_m>) at R and the odd bad primes, the factor at 2 by complement."""
    from .base_field import REAL, GlobalFactors, odd_primes

    entries = [Fraction(e) for e in entries]
    local = {"inf": weil_index(QForm.diagonal(REAL, entries))}
    for p in odd_primes(*entries):
        local[p] = weil_index(QForm.diagonal(Place.padic(p), entries))
    rest = Mu8(0)
    for v in local.values():
        rest = rest * v
    return GlobalFactors(local, rest.inverse())
