"""Squaring operations and the hit problem in bounded degree.

A class is "hit" when positive-degree operations reach it from below;
the quotient by the hit subspace measures a minimal generating set of
the algebra as a module over the operations.
"""

from sseqlab import (
    Polynomial,
    hit_quotient,
    sq,
    suggest_g2_table,
    table_from_entries,
    validate_table,
)
from sseqlab.graded import Monomial, PolyAlgebraSpec, format_polynomial

# One variable of degree 1: the table is forced by the axioms.
one_var = PolyAlgebraSpec.from_pairs([("t", 1)])
table = table_from_entries(one_var, {})
print("violations:", validate_table(table))

# Sq^i(t^n) carries the mod-2 binomial coefficient C(n, i).
for n in range(1, 9):
    images = []
    for i in range(0, n + 1):
        value = sq(table, i, Polynomial.of(Monomial((n,))))
        if not value.is_zero():
            images.append(f"Sq^{i} -> {format_polynomial(one_var, value)}")
    print(f"t^{n}: " + "; ".join(images))

# The non-hit degrees up to 31 are exactly one less than the powers of two.
report = hit_quotient(table, 31)
print("\nnon-hit degrees up to 31:", report.non_hit_degrees())

# For the degree-4/6/7 base algebra only the axiom-forced entries are
# known to this package; the rest must come from the literature via the
# configuration file.  The scaffold shows what is missing.
scaffold = suggest_g2_table()
print("\nscaffold entries awaiting user input:")
for gen, i in scaffold.missing_entries():
    print(f"  Sq^{i}({gen})")
