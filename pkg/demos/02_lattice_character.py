# coding: utf-8

# # The character on the stabilizer of Z_p^{2n}
#
# Theta(x) is a finite sum over (x - 1)^{-1}L / L. For topologically
# unipotent x it has a closed form in terms of the Cayley transform.

import cmath

from metaplectic import linalg as la
from metaplectic.generators import rand_top_unipotent, rng_for
from metaplectic.weil_character import (
    reduction_regular,
    theta_lattice,
    theta_ratio_sides,
    theta_via_cayley,
)

p = 3

# A rotation by 90 degrees reduces to a regular element mod 3, so x - 1 is
# invertible on L and the sum has a single term.

x = la.mat([[0, -1], [1, 0]])
print("regular reduction:", reduction_regular(x, p), "Theta =", theta_lattice(x, p).value)

# A matrix congruent to 1 mod 3. det(x - 1) has valuation 1, so the sum has
# three terms and |Theta|^2 = 3.

x = la.mat([[89, 20], [40, 9]])
t = theta_lattice(x, p)
approx = sum(float(c) * cmath.exp(2j * cmath.pi * k / t.value.level) for k, c in t.value.terms().items())
print("terms", t.terms, "value", t.value, "approx", approx)
print("Cayley closed form", theta_via_cayley(x, p).value == t.value)

# The same comparison on random elements of Sp(4, Z_3) near the identity.

rng = rng_for(0, "demo")
hits = 0
for i in range(10):
    y = rand_top_unipotent(rng, 2, p, max_val=4)
    hits += theta_lattice(y, p).value == theta_via_cayley(y, p).value
print(f"Cayley form matches on {hits}/10 random Sp(4) elements")

# Theta(x) against Theta(-x): the ratio is a Weil index times a power of sqrt p.

lhs, rhs = theta_ratio_sides(x, p)
print("ratio identity:", lhs == rhs)
