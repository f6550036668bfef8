# coding: utf-8

# # Local invariants over Q_p and R
#
# Hilbert symbols and Weil indices are computed in closed form. Here we
# compare them against brute force and watch the global products come out
# trivial.

from fractions import Fraction as F

from metaplectic.base_field import REAL, Place, hilbert, hilbert_global
from metaplectic.oracles import gauss_weil_index, hilbert2, hilbert_conic
from metaplectic.quadratic_forms import QForm, weil_global, weil_index, witt_class

# ## Hilbert symbols
#
# (a, b)_p = 1 exactly when z^2 = a x^2 + b y^2 has a nonzero solution.
# The conic search mod p^3 is slow but independent of the closed form.

for p in (3, 5, 7):
    pl = Place.padic(p)
    row = [(a, b) for a in (-1, 2, p, 2 * p) for b in (-1, 2, p, 2 * p)]
    agree = all(hilbert(a, b, pl) == hilbert_conic(a, b, p) for a, b in row)
    print(f"p={p}: 16 square-class pairs agree with the conic search: {agree}")

# The product over all places is 1. Odd primes not dividing ab contribute
# nothing, and the factor at 2 is what is left over.

a, b = F(-6), F(35)
g = hilbert_global(a, b)
print("local factors", g.local, "factor at 2 by complement", g.factor2, "explicit 2-adic", hilbert2(a, b))

# ## Weil indices
#
# gamma(<a>) is an eighth root of unity, reported as an exponent k of zeta_8.

for a in (1, 2, 3, 6):
    print(f"gamma_3(<{a}>) = zeta8^{weil_index(QForm.diagonal(Place.padic(3), [a])).k}",
          f"(Gauss sum: zeta8^{gauss_weil_index(a, 3).k})")

q = QForm.diagonal(REAL, [1, 1, -1])
print("signature (2,1):", weil_index(q), witt_class(q).to_json())

# Reciprocity: the product of gamma_v over all places is 1. As with the
# Hilbert symbol, the factor at 2 is read off from the others and then
# checked against the 2-adic Gauss sum.

entries = [3, -5, F(7, 2)]
wg = weil_global(entries)
k2 = 0
for e in entries:
    k2 += gauss_weil_index(e, 2).k
print("factor at 2:", wg.factor2, "2-adic Gauss sums give zeta8^", k2 % 8)
