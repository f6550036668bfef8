"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of ``Fraction``.  Everything here is
small (dimension at most a dozen or so), so plain Gaussian elimination is
the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(tuple(frac(v) for v in r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def scalar(c, n: int) -> Matrix:
    c = frac(c)
    return tuple(tuple(c if i == j else Fraction(0) for j in range(n)) for i in range(n))


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(frac(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in r) for r in a)


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bt) for r in a)


def mul_vec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    n = len(a)
    if k < 0:
        return mat_pow(inverse(a), -k)
    out, base = identity(n), a
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((Fraction(0),) * off + tuple(r) + (Fraction(0),) * (n - off - k))
        off += k
    return tuple(rows)


def hstack(*ms: Matrix) -> Matrix:
    return tuple(tuple(x for m in ms for x in m[i]) for i in range(len(ms[0])))


def vstack(*ms: Matrix) -> Matrix:
    return tuple(r for m in ms for r in m)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def _echelon(a: Matrix):
    """Row-reduce a copy of ``a``; return (rows, pivot columns, det sign factor)."""
    rows = [list(r) for r in a]
    n, m = shape(a)
    pivots = []
    factor = Fraction(1)
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            factor = -factor
        pv = rows[r][c]
        factor *= pv
        inv = 1 / pv
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots, factor


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(_echelon(a)[1])


def det(a: Matrix) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    rows, pivots, factor = _echelon(a)
    return factor if len(pivots) == n else Fraction(0)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = tuple(tuple(r) + tuple(identity(n)[i]) for i, r in enumerate(a))
    rows, pivots, _ = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in rows)


def solve(a: Matrix, b: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of a x = b for square invertible a."""
    return mul_vec(inverse(a), [frac(x) for x in b])


def kernel(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : a x = 0}."""
    n, m = shape(a)
    if n == 0:
        return [identity(m)[i] for i in range(m)]
    rows, pivots, _ = _echelon(a)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def column_space(a: Matrix) -> Matrix:
    """Columns of ``a`` forming a basis of its column span (as a matrix)."""
    _, pivots, _ = _echelon(a)
    cols = transpose(a)
    return transpose(tuple(cols[c] for c in pivots)) if pivots else tuple(() for _ in a)


def intersect_dim(a: Matrix, b: Matrix) -> int:
    """dim(colspan a ∩ colspan b)."""
    return rank(a) + rank(b) - rank(hstack(a, b))


def charpoly(a: Matrix) -> tuple[Fraction, ...]:
    """det(T - a) as little-endian coefficients (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n)
    for k in range(1, n + 1):
        m = add(mul(a, m), scalar(coeffs[n - k + 1], n))
        coeffs[n - k] = -trace(mul(a, m)) / k
    return tuple(coeffs)


def is_symmetric(a: Matrix) -> bool:
    return a == transpose(a)


def is_antisymmetric(a: Matrix) -> bool:
    return a == neg(transpose(a))


def congruence(p: Matrix, g: Matrix) -> Matrix:
    """pᵀ g p."""
    return mul(mul(transpose(p), g), p)


def sym_diagonalize(g: Matrix) -> tuple[list[Fraction], Matrix]:
    """Symmetric Gaussian reduction.

    Returns ``(d, p)`` with ``pᵀ g p = diag(d)`` and ``p`` invertible.  Zero
    entries of ``d`` span the radical.
    """
    n = len(g)
    a = [list(r) for r in g]
    p = [list(r) for r in identity(n)]

    def col_op(i, j, f):  # column_i += f * column_j, then row_i likewise
        for r in range(n):
            a[r][i] += f * a[r][j]
        for c in range(n):
            a[i][c] += f * a[j][c]
        for r in range(n):
            p[r][i] += f * p[r][j]

    def swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                # a[k][k] = 0 = a[j][j], a[k][j] != 0: e_k + e_j is anisotropic
                col_op(k, j, Fraction(1))
        piv = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                col_op(j, k, -a[k][j] / piv)
    d = [a[i][i] for i in range(n)]
    return d, tuple(tuple(r) for r in p)


def fmt_matrix(a: Matrix) -> list[list[str]]:
    return [[fmt_frac(x) for x in r] for r in a]


def fmt_frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
