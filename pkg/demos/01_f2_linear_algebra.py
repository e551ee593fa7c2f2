"""Exact linear algebra over the two-element field.

Everything downstream (page turning, hit subspaces) reduces to ranks,
kernels and solves of small 0/1 matrices, so this is the substrate.
"""

from sseqlab import F2Matrix, F2Vector, image_basis, kernel_basis, rank, solve

# A matrix is a list of 0/1 rows; internally each row is one bit-packed
# machine word, so a row operation is a single XOR.
m = F2Matrix.from_rows(
    [
        [1, 0, 1, 1],
        [0, 1, 1, 0],
        [1, 1, 0, 1],
    ]
)
print("matrix:")
print(m)

# Rank counts independent rows; over F_2 there is no pivoting subtlety.
print("rank:", rank(m))

# The kernel holds every vector the matrix kills.  Rank-nullity says
# rank + kernel size = number of columns.
for v in kernel_basis(m):
    print("kernel vector:", v, "-> maps to", m.apply(v))

# The image basis spans the column space, returned in reduced
# row-echelon form so equal subspaces have equal bases.
print("image basis:", [str(v) for v in image_basis(m)])

# Solving picks any preimage, or reports that none exists.
b = m.apply(F2Vector.from_support(4, [0, 2]))
x = solve(m, b)
print("solve:", x, "check:", m.apply(x) == b)

inconsistent = solve(F2Matrix.zero(2, 3), F2Vector.unit(2, 0))
print("no solution is reported as:", inconsistent)
