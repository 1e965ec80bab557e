"""Counting-matrix identities on finite simplicial complexes.

A nonzero "energy" h on the simplices of a finite complex G defines the
counting matrix L(x, y) = sum of h(z) over simplices z contained in the
intersection of x and y.  Three exact identities, checked here in rational
arithmetic on a random complex:

  det L = product of h over all simplices,
  sum of the entries of L^{-1} = sum of 1/h,
  and with the alternating energy omega(z) = (-1)^dim(z), the entry sum of
  L^{-1} is the Euler characteristic while det L stays a unit.

Poincare-Hopf runs alongside: indices of a locally injective vertex
function sum to chi.
"""

from fractions import Fraction

import numpy as np

from curvfun.discrete import (
    counting_determinant,
    counting_matrix,
    euler_characteristic,
    green_sum,
    omega,
    ph_index,
    random_energy,
    random_graph,
    whitney_complex,
)

rng = np.random.default_rng(42)
cx = whitney_complex(*random_graph(9, 0.45, rng))
chi = euler_characteristic(cx)
print("random Whitney complex: %d simplices on %d vertices, chi = %d"
      % (len(cx.simplices), len(cx.vertices), chi))

h = random_energy(cx, rng)
det = counting_determinant(cx, h)
prod = 1
for z in cx.simplices:
    prod *= h[z]
print("\nrandom integer energy h:")
print("  det L            =", det)
print("  prod of energies =", prod, " (equal: %s)" % (det == prod))
print("  sum of L^{-1}    =", green_sum(cx, h))
print("  sum of 1/h       =", sum(Fraction(1, h[z]) for z in cx.simplices))

w = {s: omega(s) for s in cx.simplices}
print("\nalternating energy omega = (-1)^dim:")
print("  det L          =", counting_determinant(cx, w), " (a unit)")
print("  sum of L^{-1}  =", green_sum(cx, w), " = chi =", chi)

f = {v: i for i, v in enumerate(cx.vertices)}
idx = [ph_index(cx, f, v) for v in cx.vertices]
print("\nPoincare-Hopf indices of an injective height function:", idx)
print("  index sum =", sum(idx), " = chi =", chi)

L = counting_matrix(cx)
print("\nunit energy: L(x, y) = 2^{|x n y|} - 1 counts the faces of the")
print("intersection; sample corner of L:",
      [row[:4] for row in L[:3]], "... det L =", counting_determinant(cx))
