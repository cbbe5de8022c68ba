"""Computable geometry of the invariant-state simplices.

Three effects visible at desk scale: the Cesaro averages of block products
approximate any stationary base state with error at most 4s/(2n+1) on words
supported in [-s, s]; product states cluster exactly once supports separate
(extremality), while proper mixtures keep a positive clustering gap
(non-extremality); and moments living off the isotropy subgroup define a
functional whose Gram matrix fails positivity outright.
"""

import warnings
from fractions import Fraction

from nctorus import (
    CesaroState,
    MixtureState,
    MomentSequence,
    ProductState,
    TorusAlgebra,
    canonicalize,
    clustering_gap,
    evaluate,
    gram_psd,
    toeplitz_psd,
)

F = Fraction
beta = canonicalize(1, 2)
algebra = TorusAlgebra(beta)

print("== Cesaro convergence toward a stationary base ==")
base = MixtureState((
    (F(1, 2), ProductState(MomentSequence({0: 1, 2: F(2, 3), 4: F(1, 6)}))),
    (F(1, 2), ProductState(MomentSequence.lebesgue())),
))
x = algebra.word([(-2, 2), (0, 2), (2, 2)])  # support radius s = 2
phi = evaluate(base, x)
print(f"target phi(x) = {phi} on x = u[-2]^2*u[0]^2*u[2]^2")
print("   n   phi_n(x)        |gap|      bound 4s/(2n+1)")
for n in (1, 2, 4, 8, 16):
    value = evaluate(CesaroState(n, base), x)
    gap = abs((value - phi).to_rational())
    bound = F(8, 2 * n + 1)
    print(f"  {n:2}   {str(value):12}  {str(gap):10}  {bound}")

print("\n== clustering separates extreme from mixed ==")
pure = ProductState(MomentSequence({0: 1, 2: F(2, 3), 4: F(1, 6)}))
word = algebra.word([(0, 2)])
for k in (1, 3, 10):
    print(f"  pure product, distance {k}: gap =",
          clustering_gap(pure, word, word, k))
for k in (3, 10):
    print(f"  half/half mixture, distance {k}: gap =",
          clustering_gap(base, word, word, k))

print("\n== positivity is where inadmissible moments die ==")
good = MomentSequence({0: 1, 2: F(1, 2)})
print("  moment matrix of c_2 = 1/2 at order 6:",
      toeplitz_psd(good, 6).describe())
bad_state = ProductState(MomentSequence({0: 1, 1: 1}))
family = [algebra.one(), algebra.u(0), algebra.u(0) * algebra.u(1)]
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    verdict = gram_psd(bad_state, family, mode="float")
print("  Gram of {1, u[0], u[0]*u[1]} for c_1 = 1 at beta = 1/2:")
print("   ", verdict.describe(), "(exactly 1 - sqrt(2))")
