"""Cohomology Serre spectral sequence engine in a bounded degree window.

The starting page is base (x) fibre; differentials originate on fibre
generators, are propagated by the Leibniz rule (base classes are
permanent cycles), and pages are turned with exact F_2 linear algebra.
Every page class keeps its expansion in the fixed starting-page tensor
basis, so survivors can be reported by name.

State is tracked through total degree N+1 so that kernels of
differentials leaving total degree N are computed correctly; groups at
total degree N+1 are internal upper bounds and are never reported.
Differentials whose target falls beyond N+1 are not evaluated; they
are recorded as out-of-scope, never silently zeroed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import InvariantBreach, UsageError, ValidationError
from .f2 import (
    F2Matrix,
    F2Vector,
    in_span,
    kernel_basis,
    reduce_against,
    row_reduce,
    solve,
)
from .graded import (
    Monomial,
    PolyAlgebraSpec,
    Polynomial,
    basis_in_degree,
    format_monomial,
)

UNIT_GEN = "1"

Bidegree = tuple[int, int]
Label = tuple[Monomial, str]


@dataclass(frozen=True)
class UnknownScalar:
    """A named F_2 scalar multiplying one transgressive generator image.

    Value 1 activates d_page(generator) = target; value 0 makes the
    differential vanish.  The target is a base-row polynomial, so the
    page must be the generator degree plus one.
    """

    name: str
    generator: str
    page: int
    target: Polynomial


@dataclass(frozen=True)
class FibrationSpec:
    """Base algebra, fibre generators per degree, window, and unknowns."""

    base: PolyAlgebraSpec
    fibre_gens: Mapping[int, tuple[str, ...]]
    degree_bound: int = 10
    unknowns: tuple[UnknownScalar, ...] = ()

    def __post_init__(self) -> None:
        if self.degree_bound < 1:
            raise ValidationError("degree bound must be >= 1")
        gens0 = self.fibre_gens.get(0)
        if gens0 is None or len(gens0) != 1:
            raise ValidationError("fibre degree 0 must hold exactly the unit generator")
        seen: set[str] = set()
        for degree, gens in self.fibre_gens.items():
            if degree < 0:
                raise ValidationError(f"negative fibre degree {degree}")
            for g in gens:
                if not g:
                    raise ValidationError("empty fibre generator name")
                if g in seen:
                    raise ValidationError(f"duplicate fibre generator {g!r}")
                seen.add(g)
        names = [u.name for u in self.unknowns]
        if len(set(names)) != len(names):
            raise ValidationError("unknown scalar names must be distinct")
        for u in self.unknowns:
            t = self.fibre_degree_of(u.generator)
            if u.generator == self.unit_gen:
                raise ValidationError("the unit class never supports a differential")
            if u.target.is_zero():
                raise ValidationError(f"unknown {u.name} needs a nonzero target")
            if u.page != t + 1:
                raise ValidationError(
                    f"unknown {u.name}: a base-row image forces page {t + 1}, got {u.page}"
                )
            if u.target.homogeneous_degree(self.base) != u.page:
                raise ValidationError(
                    f"unknown {u.name}: target must be homogeneous of degree {u.page}"
                )

    @property
    def unit_gen(self) -> str:
        return self.fibre_gens[0][0]

    def fibre_degrees(self) -> list[int]:
        return sorted(self.fibre_gens)

    def fibre_dim(self, t: int) -> int:
        return len(self.fibre_gens.get(t, ()))

    def fibre_degree_of(self, gen: str) -> int:
        for degree, gens in self.fibre_gens.items():
            if gen in gens:
                return degree
        raise ValidationError(f"unknown fibre generator {gen!r}")

    def base_dim(self, s: int) -> int:
        if s < 0:
            return 0
        return len(basis_in_degree(self.base, s))

    def e2_dim(self, s: int, t: int) -> int:
        return self.base_dim(s) * self.fibre_dim(t)

    def unknown_names(self) -> tuple[str, ...]:
        return tuple(u.name for u in self.unknowns)

    def format_label(self, label: Label) -> str:
        monomial, gen = label
        if gen == self.unit_gen:
            return format_monomial(self.base, monomial)
        if monomial.is_unit():
            return gen
        return f"{format_monomial(self.base, monomial)}*{gen}"


@dataclass(frozen=True)
class BigradedBasis:
    """Tensor-product basis labels per bidegree with s + t <= bound."""

    degree_bound: int
    groups: Mapping[Bidegree, tuple[Label, ...]]

    def dim(self, s: int, t: int) -> int:
        return len(self.groups.get((s, t), ()))

    def labels(self, s: int, t: int) -> tuple[Label, ...]:
        return self.groups.get((s, t), ())

    def bidegrees(self) -> list[Bidegree]:
        return sorted(self.groups)


def _tensor_labels(spec: FibrationSpec, s: int, t: int) -> tuple[Label, ...]:
    gens = spec.fibre_gens.get(t, ())
    if not gens:
        return ()
    return tuple(
        (m, g) for m in basis_in_degree(spec.base, s) for g in gens
    )


def build_e2(spec: FibrationSpec, *, total_bound: Optional[int] = None) -> BigradedBasis:
    """Starting-page basis in all bidegrees with s + t <= the window."""
    bound = spec.degree_bound if total_bound is None else total_bound
    groups: dict[Bidegree, tuple[Label, ...]] = {}
    for t in spec.fibre_degrees():
        for s in range(bound - t + 1):
            labels = _tensor_labels(spec, s, t)
            if labels:
                groups[(s, t)] = labels
    return BigradedBasis(bound, groups)


def admissible_differentials(
    spec: FibrationSpec,
) -> list[tuple[int, Bidegree, Bidegree]]:
    """All bidegree-admissible (r, source, target) triples in the window.

    Purely combinatorial: a triple is listed when both groups are
    nonzero on the starting page, the source total degree is within the
    window, and the target total degree is within window + 1.  No
    differential values are consulted.
    """
    out = []
    for t in spec.fibre_degrees():
        if t < 1:
            continue
        for s in range(spec.degree_bound - t + 1):
            if spec.e2_dim(s, t) == 0:
                continue
            for r in range(2, t + 2):
                if spec.e2_dim(s + r, t - r + 1) > 0:
                    out.append((r, (s, t), (s + r, t - r + 1)))
    out.sort()
    return out


@dataclass(frozen=True)
class DifferentialAssignment:
    """Resolved unknown values plus concrete generator images.

    Images are base-row polynomials keyed by (generator, page); a zero
    polynomial is an explicit declaration that the differential
    vanishes.
    """

    values: Mapping[str, int]
    generator_images: Mapping[tuple[str, int], Polynomial]

    def image_of(self, gen: str, r: int) -> Optional[Polynomial]:
        return self.generator_images.get((gen, r))

    def sorted_values(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(self.values.items()))


def resolve_assignment(
    spec: FibrationSpec,
    values: Mapping[str, int],
    extra_images: Optional[Mapping[tuple[str, int], Polynomial]] = None,
) -> DifferentialAssignment:
    """Turn unknown values (plus optional direct images) into an assignment."""
    names = set(spec.unknown_names())
    for name in values:
        if name not in names:
            raise UsageError(f"value given for undeclared unknown {name!r}")
    missing = names - set(values)
    if missing:
        raise UsageError(f"unresolved unknowns: {', '.join(sorted(missing))}")
    for name, v in values.items():
        if v not in (0, 1):
            raise ValidationError(f"unknown {name!r} must be 0 or 1, got {v!r}")
    images: dict[tuple[str, int], Polynomial] = {}
    for u in spec.unknowns:
        images[(u.generator, u.page)] = (
            u.target if values[u.name] else Polynomial.zero()
        )
    for (gen, r), poly in (extra_images or {}).items():
        t = spec.fibre_degree_of(gen)
        if r < 2:
            raise ValidationError(f"differential page must be >= 2, got {r}")
        if (gen, r) in images and images[(gen, r)] != poly:
            raise UsageError(f"conflicting image for d_{r}({gen})")
        if not poly.is_zero():
            if r != t + 1:
                raise ValidationError(
                    f"nonzero image of {gen} lands on the base row only at page {t + 1}"
                )
            if poly.homogeneous_degree(spec.base) != r:
                raise ValidationError(
                    f"image of d_{r}({gen}) must be homogeneous of degree {r}"
                )
        images[(gen, r)] = poly
    return DifferentialAssignment(dict(values), images)


# ------------------------------------------------------------------ pages


@dataclass
class PageGroup:
    """One bidegree on one page: alive subspace modulo boundaries.

    Vectors live in coordinates over the fixed starting-page labels, so
    every class remembers its ancestry.
    """

    labels: tuple[Label, ...]
    cycles: tuple[F2Vector, ...]
    boundaries: tuple[F2Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.cycles) - len(self.boundaries)

    def quotient_basis(self) -> list[F2Vector]:
        """Greedy representatives of cycles modulo boundaries (deterministic)."""
        context = list(self.boundaries)
        reps = []
        for v in self.cycles:
            if not reduce_against(row_reduce(context), v).is_zero():
                reps.append(v)
                context.append(v)
        return reps


@dataclass
class Page:
    """Bigraded page r with its differentials in current-basis coordinates."""

    spec: FibrationSpec
    assignment: DifferentialAssignment
    r: int
    groups: dict[Bidegree, PageGroup]
    differentials: dict[Bidegree, F2Matrix] = field(default_factory=dict)
    unevaluated: tuple[tuple[int, Bidegree, Bidegree], ...] = ()

    def dim(self, s: int, t: int) -> int:
        group = self.groups.get((s, t))
        return group.dim if group else 0

    def basis_reps(self, s: int, t: int) -> list[F2Vector]:
        group = self.groups.get((s, t))
        return group.quotient_basis() if group else []

    def describe(self, s: int, t: int) -> list[str]:
        group = self.groups.get((s, t))
        if group is None:
            return []
        out = []
        for v in group.quotient_basis():
            parts = [
                self.spec.format_label(group.labels[i])
                for i in range(v.length)
                if v[i]
            ]
            out.append(" + ".join(parts))
        return out

    def reported_bidegrees(self) -> list[Bidegree]:
        return sorted(
            bd
            for bd, group in self.groups.items()
            if sum(bd) <= self.spec.degree_bound and group.dim > 0
        )


def _required_images_defined(spec: FibrationSpec, assignment: DifferentialAssignment, r: int) -> None:
    admissible = admissible_differentials(spec)
    for page, (s, t), _target in admissible:
        if page != r or s != 0:
            continue
        for gen in spec.fibre_gens[t]:
            if assignment.image_of(gen, r) is None:
                raise UsageError(
                    f"no image declared for d_{r}({gen}); declare it (possibly zero)"
                )


def _validate_images(spec: FibrationSpec, assignment: DifferentialAssignment) -> None:
    """Nonzero images must be transgressive onto the base row."""
    for (gen, r), poly in assignment.generator_images.items():
        t = spec.fibre_degree_of(gen)
        if poly.is_zero():
            continue
        if r != t + 1:
            raise ValidationError(
                f"nonzero image of d_{r}({gen}) cannot land on the base row "
                f"(transgression page is {t + 1})"
            )
        if poly.homogeneous_degree(spec.base) != r:
            raise ValidationError(
                f"image of d_{r}({gen}) must be homogeneous of degree {r}"
            )


def _label_image(
    spec: FibrationSpec,
    assignment: DifferentialAssignment,
    label: Label,
    r: int,
) -> list[Label]:
    """Leibniz rule on one tensor label: d(m (x) g) = m * d(g) on the base row."""
    monomial, gen = label
    if gen == spec.unit_gen:
        return []
    image = assignment.image_of(gen, r)
    if image is None or image.is_zero():
        return []
    return [(monomial * n, spec.unit_gen) for n in image.sorted_terms()]


def _page_differentials(
    spec: FibrationSpec,
    assignment: DifferentialAssignment,
    r: int,
    groups: Mapping[Bidegree, PageGroup],
) -> tuple[dict[Bidegree, F2Matrix], list[tuple[int, Bidegree, Bidegree]]]:
    _validate_images(spec, assignment)
    _required_images_defined(spec, assignment, r)
    matrices: dict[Bidegree, F2Matrix] = {}
    unevaluated: list[tuple[int, Bidegree, Bidegree]] = []
    for (s, t), group in sorted(groups.items()):
        if t - r + 1 < 0 or group.dim == 0:
            continue
        target_bd = (s + r, t - r + 1)
        rule_active = any(
            not (assignment.image_of(g, r) or Polynomial.zero()).is_zero()
            for g in spec.fibre_gens.get(t, ())
        )
        if s + t > spec.degree_bound:
            # target would land beyond the tracked window
            if rule_active and spec.e2_dim(*target_bd) > 0:
                unevaluated.append((r, (s, t), target_bd))
            continue
        target = groups.get(target_bd)
        if target is None or not rule_active:
            continue
        source_reps = group.quotient_basis()
        target_reps = target.quotient_basis()
        target_index = {label: i for i, label in enumerate(target.labels)}
        n_labels = len(target.labels)
        columns = []
        for v in source_reps:
            bits = 0
            for i in range(v.length):
                if not v[i]:
                    continue
                for lab in _label_image(spec, assignment, group.labels[i], r):
                    bits ^= 1 << target_index[lab]
            w = F2Vector(n_labels, bits)
            if not in_span(list(target.cycles), w):
                raise ValidationError(
                    f"d_{r} image at {target_bd} lies in a vanished subquotient: "
                    "inconsistent assignment"
                )
            if target_reps or target.boundaries:
                m = F2Matrix.from_columns(
                    list(target_reps) + list(target.boundaries), rows=n_labels
                )
                coords = solve(m, w)
                assert coords is not None
                column = F2Vector(
                    len(target_reps), coords.bits & ((1 << len(target_reps)) - 1)
                )
            else:
                column = F2Vector(0, 0)
            columns.append(column)
        matrix = F2Matrix.from_columns(columns, rows=len(target_reps))
        if matrix.rows and matrix.cols:
            matrices[(s, t)] = matrix
    return matrices, unevaluated


def initial_page(spec: FibrationSpec, assignment: DifferentialAssignment) -> Page:
    """The starting page (r = 2), tracked through total degree N + 1."""
    basis = build_e2(spec, total_bound=spec.degree_bound + 1)
    groups = {}
    for bd in basis.bidegrees():
        labels = basis.labels(*bd)
        cycles = tuple(F2Vector.unit(len(labels), i) for i in range(len(labels)))
        groups[bd] = PageGroup(labels, cycles, ())
    matrices, unevaluated = _page_differentials(spec, assignment, 2, groups)
    return Page(spec, assignment, 2, groups, matrices, tuple(unevaluated))


def leibniz_extend(
    spec: FibrationSpec,
    assignment: DifferentialAssignment,
    r: int,
    page: Optional[Page] = None,
) -> dict[Bidegree, F2Matrix]:
    """Page-r differential matrices, one per source bidegree.

    With no page given the matrices act on the starting-page tensor
    bases; otherwise on the given page's surviving bases.
    """
    groups = page.groups if page is not None else initial_page(spec, assignment).groups
    matrices, _ = _page_differentials(spec, assignment, r, groups)
    return matrices


def turn_page(page: Page, *, order: Optional[Sequence[Bidegree]] = None) -> Page:
    """Homology with respect to d_r: next page with kernels over images.

    ``order`` overrides the bidegree processing order; the result is
    independent of it because each bidegree is computed from the
    immutable previous-page state.
    """
    spec, assignment, r = page.spec, page.assignment, page.r
    # composability: consecutive differential matrices must compose to zero
    for src, m1 in page.differentials.items():
        mid = (src[0] + r, src[1] - r + 1)
        m2 = page.differentials.get(mid)
        if m2 is not None and not m2.matmul(m1).is_zero():
            raise InvariantBreach(f"d_{r} o d_{r} != 0 out of {src}")
    bidegrees = list(order) if order is not None else sorted(page.groups)
    if set(bidegrees) != set(page.groups):
        raise UsageError("processing order must cover exactly the page bidegrees")
    new_groups: dict[Bidegree, PageGroup] = {}
    for bd in bidegrees:
        group = page.groups[bd]
        reps = group.quotient_basis()
        s, t = bd
        # boundaries gain the image of d_r coming in from (s - r, t + r - 1)
        incoming: list[F2Vector] = []
        src = (s - r, t + r - 1)
        m_in = page.differentials.get(src)
        if m_in is not None:
            for j in range(m_in.cols):
                acc = F2Vector(len(group.labels), 0)
                for i in range(m_in.rows):
                    if m_in.row_bits[i] >> j & 1:
                        acc = acc ^ reps[i]
                incoming.append(acc)
        new_b = tuple(row_reduce(list(group.boundaries) + incoming))
        # cycles shrink to the kernel of the outgoing differential
        m_out = page.differentials.get(bd)
        if m_out is None:
            kept = list(reps)
        else:
            kept = []
            for c in kernel_basis(m_out):
                acc = F2Vector(len(group.labels), 0)
                for i in range(c.length):
                    if c[i]:
                        acc = acc ^ reps[i]
                kept.append(acc)
        new_z = tuple(row_reduce(list(new_b) + kept))
        new_groups[bd] = PageGroup(group.labels, new_z, new_b)
    matrices, unevaluated = _page_differentials(spec, assignment, r + 1, new_groups)
    flagged = tuple(sorted(set(page.unevaluated) | set(unevaluated)))
    return Page(spec, assignment, r + 1, new_groups, matrices, flagged)


EinftyReport = dict[int, list[tuple[Bidegree, int]]]


def run_to_einfty(
    spec: FibrationSpec, assignment: DifferentialAssignment
) -> tuple[Page, EinftyReport]:
    """Turn pages until no admissible differential remains in the window.

    Returns the limit page and, per total degree, the surviving
    dimensions by bidegree (the associated graded of the filtration;
    extension problems between filtration steps are not solved).
    """
    missing = set(spec.unknown_names()) - set(assignment.values)
    if missing:
        raise UsageError(f"unresolved unknowns: {', '.join(sorted(missing))}")
    last_page = max((r for r, _, _ in admissible_differentials(spec)), default=1)
    page = initial_page(spec, assignment)
    while page.r <= last_page:
        page = turn_page(page)
    report: EinftyReport = {}
    for j in range(spec.degree_bound + 1):
        row = []
        for s in range(j + 1):
            d = page.dim(s, j - s)
            if d:
                row.append(((s, j - s), d))
        report[j] = row
    return page, report


def total_dims(report: EinftyReport, degree_bound: int) -> list[int]:
    """Summed surviving dimension per total degree 0..degree_bound."""
    return [sum(d for _, d in report.get(j, [])) for j in range(degree_bound + 1)]


def sweep_unknowns(
    spec: FibrationSpec,
) -> dict[tuple[tuple[str, int], ...], EinftyReport]:
    """Limit reports for every point of F_2^unknowns, in binary order."""
    names = spec.unknown_names()
    out: dict[tuple[tuple[str, int], ...], EinftyReport] = {}
    for point in itertools.product((0, 1), repeat=len(names)):
        values = dict(zip(names, point))
        _, report = run_to_einfty(spec, resolve_assignment(spec, values))
        out[tuple(zip(names, point))] = report
    return out
