"""Bundle classes, residue classes, and their reports.

The transgressive scalar only depends on the bundle class modulo 4,
and it vanishes on multiples of 4.  That leaves at most three genuinely
different low-degree behaviours, two of which are still open: they are
reported as branch pairs.
"""

from sseqlab import epsilon_class, gauge_report, periodicity_check

for k in [0, 1, 2, 3, 4, 7, 8, -2, -5, 100]:
    label, known = epsilon_class(k)
    status = f"proved {known}" if known is not None else "open"
    print(f"k = {k:4d}: class {label:>3s}, scalar {status}")

print("\nperiodicity: 3 ~ 7:", periodicity_check(3, 7), " | 1 ~ 2:", periodicity_check(1, 2))

# A multiple of four has a single branch.
report = gauge_report(8)
print("\nk = 8 ->", len(report.branches), "branch, dims", report.branches[0].total_dims)

# An odd class keeps both branches until someone computes the scalar.
report = gauge_report(5)
print("k = 5 ->", len(report.branches), "branches:")
for branch in report.branches:
    print(f"  {dict(branch.values)} dims {branch.total_dims}")

# Conjectured values can be injected; contradictions are refused.
forced = gauge_report(5, overrides={"1,3": 1})
print("k = 5 with an injected scalar ->", forced.branches[0].total_dims)

try:
    gauge_report(8, overrides={"0": 1})
except Exception as exc:  # the proved value cannot be overridden
    print("override against a proved value ->", exc)

# Reports are data: equal classes give equal payloads.
print(
    "\npayload(k=3) == payload(k=7):",
    gauge_report(3).payload() == gauge_report(7).payload(),
)
