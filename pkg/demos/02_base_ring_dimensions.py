"""The polynomial base ring on generators of degree 4, 6 and 7.

Its monomial counts per degree decide which bidegrees of the spectral
sequence can be nonzero at all: in the window 0..10 the only positive
degrees that survive are 4, 6, 7, 8 and 10.
"""

from sseqlab import PolyAlgebraSpec, basis_in_degree, multiply, poincare_dims
from sseqlab.graded import format_monomial, format_polynomial

base = PolyAlgebraSpec.from_pairs([("x_4", 4), ("x_6", 6), ("x_7", 7)])

print("dims by degree:", poincare_dims(base, 10))

for d in range(11):
    names = [format_monomial(base, m) for m in basis_in_degree(base, d)]
    print(f"degree {d:2d}: {names if names else '-'}")

# Degree 12 is the first degree with two monomials.
print("degree 12:", [format_monomial(base, m) for m in basis_in_degree(base, 12)])

# Multiplication cancels mod 2: the freshman's dream holds on the nose.
s = base.gen("x_4") + base.gen("x_6")
print("(x_4 + x_6)^2 =", format_polynomial(base, multiply(base, s, s)))
