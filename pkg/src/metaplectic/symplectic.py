"""Symplectic linear algebra on Q^{2n}: lagrangians, Maslov forms, Cayley transforms.

The standard form is <u|v> = uᵀ J v with J = [[0, I], [-I, 0]].  A lagrangian
is stored as a 2n x n matrix whose columns span it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .base_field import Mu8, Place
from .quadratic_forms import QForm, WittClass, direct_sum, weil_index, witt_class


class SymplecticError(ValueError):
    pass


def J(n: int) -> la.Matrix:
    z, i = la.zeros(n), la.identity(n)
    return la.vstack(la.hstack(z, i), la.hstack(la.neg(i), z))


def form_dim(form: la.Matrix) -> int:
    return len(form)


def is_symplectic(x: la.Matrix, form: la.Matrix | None = None) -> bool:
    form = form if form is not None else J(len(x) // 2)
    return la.congruence(x, form) == form


def is_sp_lie(X: la.Matrix, form: la.Matrix | None = None) -> bool:
    form = form if form is not None else J(len(X) // 2)
    return la.is_zero(la.add(la.mul(la.transpose(X), form), la.mul(form, X)))


@dataclass(frozen=True)
class Lagrangian:
    basis: la.Matrix  # 2n x n, columns span the subspace
    form: la.Matrix

    def __post_init__(self):
        b = la.mat(self.basis)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "form", la.mat(self.form))
        n2 = len(self.form)
        if len(b) != n2 or (b and len(b[0]) * 2 != n2):
            raise SymplecticError("lagrangian basis has the wrong shape")
        if la.rank(b) != n2 // 2:
            raise SymplecticError("lagrangian basis is not of full rank")
        if not la.is_zero(la.congruence(b, self.form)):
            raise SymplecticError("subspace is not isotropic")

    @classmethod
    def standard(cls, n: int, which: str = "x") -> "Lagrangian":
        i, z = la.identity(n), la.zeros(n)
        b = la.vstack(i, z) if which == "x" else la.vstack(z, i)
        return cls(b, J(n))

    def image(self, g: la.Matrix) -> "Lagrangian":
        return Lagrangian(la.mul(g, self.basis), self.form)

    def __add__(self, o: "Lagrangian") -> "Lagrangian":
        """l + l' in W + W' (direct sum, coordinates concatenated block-wise)."""
        return Lagrangian(la.block_diag(self.basis, o.basis), la.block_diag(self.form, o.form))

    def same_subspace(self, o: "Lagrangian") -> bool:
        return la.rank(la.hstack(self.basis, o.basis)) == la.rank(self.basis)


def direct_sum_lagrangian(l1: Lagrangian, l2: Lagrangian) -> Lagrangian:
    """l1 + l2 inside (W1 + W2) with coordinates (q1, p1, q2, p2) reordered to the
    standard layout (q1, q2, p1, p2) so that the form is again J."""
    n1, n2 = len(l1.form) // 2, len(l2.form) // 2
    perm = list(range(n1)) + list(range(2 * n1, 2 * n1 + n2)) + list(range(n1, 2 * n1)) + list(range(2 * n1 + n2, 2 * (n1 + n2)))
    big = la.block_diag(l1.basis, l2.basis)
    rows = tuple(big[i] for i in perm)
    return Lagrangian(rows, J(n1 + n2))


def direct_sum_matrix(x1: la.Matrix, x2: la.Matrix) -> la.Matrix:
    """x1 + x2 acting on W1 + W2 in the standard (q1, q2, p1, p2) layout."""
    n1, n2 = len(x1) // 2, len(x2) // 2
    perm = list(range(n1)) + list(range(2 * n1, 2 * n1 + n2)) + list(range(n1, 2 * n1)) + list(range(2 * n1 + n2, 2 * (n1 + n2)))
    big = la.block_diag(x1, x2)
    return tuple(tuple(big[perm[i]][perm[j]] for j in range(len(perm))) for i in range(len(perm)))


def graph(x: la.Matrix) -> Lagrangian:
    """Gamma_x = {(w, xw)} in W-bar + W, form (-J) + J."""
    n2 = len(x)
    form = la.block_diag(la.neg(J(n2 // 2)), J(n2 // 2))
    return Lagrangian(la.vstack(la.identity(n2), x), form)


def _pair(form: la.Matrix, a: la.Matrix, b: la.Matrix) -> la.Matrix:
    return la.mul(la.mul(la.transpose(a), form), b)


def kashiwara_gram(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian) -> la.Matrix:
    """Gram of <x1|x2> + <x2|x3> + <x3|x1> on l1 + l2 + l3 (possibly degenerate)."""
    form = l1.form
    if l2.form != form or l3.form != form:
        raise SymplecticError("lagrangians of different spaces")
    ls = [l1.basis, l2.basis, l3.basis]
    n = len(ls[0][0]) if ls[0] else 0
    half = Fraction(1, 2)
    blocks = [[la.zeros(n) for _ in range(3)] for _ in range(3)]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        b = la.scale(half, _pair(form, ls[i], ls[j]))
        blocks[i][j] = la.add(blocks[i][j], b)
        blocks[j][i] = la.add(blocks[j][i], la.transpose(b))
    return la.vstack(*(la.hstack(*row) for row in blocks))


def kashiwara_form(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian, place: Place) -> QForm:
    """The nondegenerate quotient of the Kashiwara triple form."""
    return QForm.from_degenerate(place, kashiwara_gram(l1, l2, l3))


def thomas_form(ls: Sequence[Lagrangian], place: Place) -> QForm:
    """sum_{i<j} <x_j|x_i> on {(x_i) in l_1 + ... + l_m : sum x_i = 0}, modulo its radical.

    Oriented so that for m = 3 it is Witt equivalent to the Kashiwara form.
    """
    if len(ls) < 3:
        raise SymplecticError("need at least three lagrangians")
    form = ls[0].form
    ker = la.kernel(la.hstack(*(l.basis for l in ls)))
    if not ker:
        return QForm(place, ())
    n, m = len(ls[0].basis[0]), len(ls)
    vecs = [[la.mul_vec(l.basis, v[i * n:(i + 1) * n]) for i, l in enumerate(ls)] for v in ker]
    jvecs = [[la.mul_vec(form, x) for x in u] for u in vecs]

    def dot(a, b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    def sym(a, b):
        s = Fraction(0)
        for i in range(m):
            for j in range(i + 1, m):
                s += dot(vecs[a][j], jvecs[b][i]) + dot(vecs[b][j], jvecs[a][i])
        return s / 2

    k = len(vecs)
    gram = tuple(tuple(sym(a, b) for b in range(k)) for a in range(k))
    return QForm.from_degenerate(place, gram)


def maslov_chain_form(ls: Sequence[Lagrangian], place: Place) -> QForm:
    """A form in the Witt class [tau(l_1..l_m)] = sum_k [tau(l_1, l_k, l_{k+1})]."""
    if len(ls) < 3:
        raise SymplecticError("need at least three lagrangians")
    parts = [kashiwara_form(ls[0], ls[k], ls[k + 1], place) for k in range(1, len(ls) - 1)]
    return direct_sum(*parts)


def maslov_witt(ls: Sequence[Lagrangian], place: Place) -> WittClass:
    return witt_class(maslov_chain_form(ls, place))


def maslov_dim(ls: Sequence[Lagrangian]) -> int:
    """(m-2) dim W / 2 - sum dim(l_i cap l_{i+1}) + 2 dim(cap l_i)."""
    m = len(ls)
    if m < 3:
        raise SymplecticError("need at least three lagrangians")
    dimW = len(ls[0].form)
    adj = sum(la.intersect_dim(ls[i].basis, ls[(i + 1) % m].basis) for i in range(m))
    return (m - 2) * dimW // 2 - adj + 2 * common_dim(ls)


def common_dim(ls: Sequence[Lagrangian]) -> int:
    """dim of the intersection of all the subspaces."""
    dimW = len(ls[0].form)
    # v in all l_i  <=>  v is orthogonal (euclidean) to every annihilator
    rows = []
    for l in ls:
        ann = la.kernel(la.transpose(l.basis))
        rows.extend(ann)
    if not rows:
        return dimW
    return dimW - la.rank(tuple(rows))


def cocycle_value(g: la.Matrix, g2: la.Matrix, ell: Lagrangian, place: Place) -> Mu8:
    """gamma_psi(tau(l, g l, g g' l))."""
    return weil_index(kashiwara_form(ell, ell.image(g), ell.image(la.mul(g, g2)), place))


def cayley(x: la.Matrix) -> la.Matrix:
    """C_x = 2 (x - 1)(x + 1)^{-1}."""
    n = len(x)
    xp = la.add(x, la.identity(n))
    if la.det(xp) == 0:
        raise SymplecticError("-1 is an eigenvalue")
    return la.scale(2, la.mul(la.sub(x, la.identity(n)), la.inverse(xp)))


def inverse_cayley(X: la.Matrix) -> la.Matrix:
    """x with C_x = X:  x = (2 + X)(2 - X)^{-1}."""
    n = len(X)
    two = la.scalar(2, n)
    return la.mul(la.add(two, X), la.inverse(la.sub(two, X)))


def q_of_X(X: la.Matrix, place: Place, form: la.Matrix | None = None) -> QForm:
    """q[X](w1, w2) = <X w1 | w2>, as the quadratic form w -> <Xw|w> (Gram sym(XᵀJ))."""
    form = form if form is not None else J(len(X) // 2)
    if la.det(X) == 0:
        raise SymplecticError("X is singular")
    return QForm(place, la.mul(la.transpose(X), form))


def symplectic_basis(G: la.Matrix, p: int | None = None) -> la.Matrix:
    """P with Pᵀ G P = J for an antisymmetric nondegenerate G.

    With ``p`` given, G must be p-integral with unit determinant and P is
    taken in GL(Z_(p)), so the standard lattice is carried to a self-dual one.
    """
    G = la.mat(G)
    m = len(G)
    if m % 2 or not la.is_antisymmetric(G) or la.det(G) == 0:
        raise SymplecticError("form is not symplectic")
    if p is not None and (any(x.denominator % p == 0 for r in G for x in r) or la.det(G).numerator % p == 0):
        raise SymplecticError("form is not unimodular at p")

    def w(u, v):
        return sum((a * b for a, b in zip(u, la.mul_vec(G, v))), Fraction(0))

    def good(x: Fraction) -> bool:
        return x != 0 and (p is None or x.numerator % p != 0)

    vecs = [tuple(r) for r in la.identity(m)]
    es, fs = [], []
    while vecs:
        e = vecs.pop(0)
        j = next((k for k, v in enumerate(vecs) if good(w(e, v))), None)
        if j is None:
            raise SymplecticError("no partner vector found")
        f = vecs.pop(j)
        s = w(e, f)
        f = tuple(x / s for x in f)
        vecs = [
            tuple(vi + w(v, e) * fi - w(v, f) * ei for vi, ei, fi in zip(v, e, f))
            for v in vecs
        ]
        es.append(e)
        fs.append(f)
    return la.transpose(tuple(es + fs))
