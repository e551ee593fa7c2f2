"""From homotopy groups to the fibre's low-degree mod-2 cohomology.

The fibre of the evaluation fibration is the identity component of a
triple loop space, so its homotopy groups are a degree shift of the
structure group's.  Hurewicz plus universal coefficients turn that
table into cohomology dimensions: zero in degrees 1..4 and something
nonzero in degree 5.
"""

from sseqlab import (
    FGAbelianGroup,
    connectivity,
    fibre_truncation_dims,
    g2_homotopy_table,
    hurewicz_homology,
    loopspace_shift,
)

table = g2_homotopy_table()
print("input homotopy groups of the structure group:")
for degree, entry in table.items():
    marker = "" if entry.exact else "  (even torsion only bounded below)"
    print(f"  pi_{degree} = {entry.group}{marker}")

# Three loops shift the table down by three.
shifted = loopspace_shift(table, 3)
print("\nafter the triple loop shift (fibre homotopy groups):")
for degree, entry in shifted.items():
    print(f"  pi_{degree} = {entry.group}")

print("\nconnectivity of the fibre:", connectivity(shifted))

print("\nintegral homology via the Hurewicz window:")
for degree, entry in sorted(hurewicz_homology(shifted, 5).items()):
    print(f"  H_{degree} = {entry.group}")

# Universal coefficients: odd torsion dies mod 2, even torsion counts
# once in Hom and once more in Ext of the degree below.
dims = fibre_truncation_dims(shifted)
print("\nmod-2 cohomology dims of the fibre:")
for degree, entry in dims.items():
    print(f"  M^{degree} = {entry}")

# The degree-5 answer is exact once the 2-torsion of the top input
# group is pinned.
pinned = g2_homotopy_table(pi8=FGAbelianGroup.cyclic(2), pi8_exact=True)
exact_dims = fibre_truncation_dims(loopspace_shift(pinned, 3))
print("\nwith the top group pinned to Z/2: M^5 =", exact_dims.entry(5))
