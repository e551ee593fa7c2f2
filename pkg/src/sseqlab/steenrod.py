"""Unstable squaring operations on graded polynomial algebras.

The action is given on generators and extended everywhere by the
Cartan rule; the total square of an element is a ring homomorphism, so
the extension is the graded convolution of generator tables.  On top
of that sits a bounded-degree hit-problem solver: a class is hit when
it lies in the span of positive-degree operations applied to lower
degrees, and the quotient measures minimal generating sets.

Concrete generator values for a specific space are configuration
input, never hardcoded here; only the axiom-forced entries (Sq^0,
the top square, vanishing above the degree) are filled in for the
caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import UsageError, ValidationError
from .f2 import F2Vector, reduce_against, row_reduce
from .graded import (
    Monomial,
    PolyAlgebraSpec,
    Polynomial,
    basis_in_degree,
    multiply,
)


@dataclass(frozen=True)
class Violation:
    """One failed table invariant; a list of these is the validation result."""

    generator: str
    i: int
    kind: str  # sq0 | squaring | instability | homogeneity | missing
    message: str

    def __str__(self) -> str:
        return f"Sq^{self.i}({self.generator}): {self.kind}: {self.message}"


class SteenrodTable:
    """Squaring operations on the generators of a polynomial algebra.

    ``action`` maps (generator, i) to the value of Sq^i; a None value
    marks an entry awaiting user input from the literature.  Entries
    for i above the generator degree may be omitted (they are zero).
    """

    def __init__(
        self,
        algebra: PolyAlgebraSpec,
        action: Mapping[tuple[str, int], Optional[Polynomial]],
    ):
        self.algebra = algebra
        self.action = dict(action)
        self._monomial_cache: dict[Monomial, dict[int, Polynomial]] = {}
        self._validated: Optional[list[Violation]] = None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SteenrodTable)
            and self.algebra == other.algebra
            and self.action == other.action
        )

    def generator_sq(self, gen: str, i: int) -> Polynomial:
        degree = self.algebra.degrees[self.algebra.index_of(gen)]
        if i > degree:
            return Polynomial.zero()
        value = self.action.get((gen, i))
        if value is None:
            raise UsageError(
                f"Sq^{i}({gen}) is not specified; fill the user-supplied entries first"
            )
        return value

    def missing_entries(self) -> list[tuple[str, int]]:
        out = []
        for gen, degree in self.algebra.generators:
            for i in range(degree + 1):
                if self.action.get((gen, i)) is None:
                    out.append((gen, i))
        return out


def table_from_entries(
    algebra: PolyAlgebraSpec,
    entries: Optional[Mapping[str, Mapping[int, Polynomial]]] = None,
) -> SteenrodTable:
    """Build a table, auto-filling only what the axioms force.

    Sq^0 fixes the generator and the top square is the literal square;
    entries strictly between are taken from ``entries`` and left as
    user-supplied placeholders when absent.  Caller-provided values are
    kept verbatim even in the forced slots so that validation can
    report contradictions instead of silently repairing them.
    """
    entries = entries or {}
    for gen in entries:
        algebra.index_of(gen)  # raises on unknown names
    action: dict[tuple[str, int], Optional[Polynomial]] = {}
    for gen, degree in algebra.generators:
        given = dict(entries.get(gen, {}))
        for i, value in given.items():
            if i < 0:
                raise ValidationError(f"negative squaring index for {gen}")
        unit = algebra.gen(gen)
        action[(gen, 0)] = given.pop(0, unit)
        top = multiply(algebra, unit, unit)
        action[(gen, degree)] = given.pop(degree, top) if degree > 0 else action[(gen, 0)]
        for i in range(1, degree):
            action[(gen, i)] = given.pop(i, None)
        for i, value in given.items():
            action[(gen, i)] = value  # beyond the degree; validation flags nonzero
    return SteenrodTable(algebra, action)


def validate_table(table: SteenrodTable) -> list[Violation]:
    """Check every table invariant on every generator; empty means valid."""
    algebra = table.algebra
    violations: list[Violation] = []
    for gen, degree in algebra.generators:
        unit = algebra.gen(gen)
        for (g, i), value in sorted(
            table.action.items(), key=lambda kv: (kv[0][0], kv[0][1])
        ):
            if g != gen:
                continue
            if value is None:
                violations.append(
                    Violation(gen, i, "missing", "entry is marked user-supplied")
                )
                continue
            if i == 0 and value != unit:
                violations.append(
                    Violation(gen, 0, "sq0", "Sq^0 must fix the generator")
                )
            if i == degree and value != multiply(algebra, unit, unit):
                violations.append(
                    Violation(gen, degree, "squaring", "top square must be the square")
                )
            if i > degree and not value.is_zero():
                violations.append(
                    Violation(gen, i, "instability", f"must vanish above degree {degree}")
                )
            if not value.is_zero():
                try:
                    got = value.homogeneous_degree(algebra)
                except UsageError:
                    got = None
                if got is not None and i <= degree and got != degree + i:
                    violations.append(
                        Violation(
                            gen,
                            i,
                            "homogeneity",
                            f"image has degree {got}, expected {degree + i}",
                        )
                    )
                elif got is None:
                    violations.append(
                        Violation(gen, i, "homogeneity", "image is not homogeneous")
                    )
    return violations


def _require_valid(table: SteenrodTable) -> None:
    if table._validated is None:
        table._validated = validate_table(table)
    if table._validated:
        listed = "; ".join(str(v) for v in table._validated)
        raise ValidationError(f"squaring table is invalid: {listed}")


def _convolve(
    algebra: PolyAlgebraSpec,
    f: dict[int, Polynomial],
    g: dict[int, Polynomial],
) -> dict[int, Polynomial]:
    out: dict[int, Polynomial] = {}
    for a, pa in f.items():
        for b, pb in g.items():
            prod = multiply(algebra, pa, pb)
            if prod.is_zero():
                continue
            out[a + b] = out.get(a + b, Polynomial.zero()) + prod
    return {i: p for i, p in out.items() if not p.is_zero()}


def _total_square_monomial(table: SteenrodTable, m: Monomial) -> dict[int, Polynomial]:
    cached = table._monomial_cache.get(m)
    if cached is not None:
        return cached
    algebra = table.algebra
    total: dict[int, Polynomial] = {0: algebra.unit()}
    for (gen, degree), e in zip(algebra.generators, m.exponents):
        if e == 0:
            continue
        gen_total = {
            i: table.generator_sq(gen, i)
            for i in range(degree + 1)
            if not table.generator_sq(gen, i).is_zero()
        }
        for _ in range(e):
            total = _convolve(algebra, total, gen_total)
    table._monomial_cache[m] = total
    return total


def sq(table: SteenrodTable, i: int, p: Polynomial) -> Polynomial:
    """Sq^i extended to all polynomials by the Cartan rule.

    The result does not depend on how monomials are factored: the
    total square is multiplicative, so any factorization tree yields
    the same graded convolution.
    """
    if i < 0:
        raise UsageError("squaring index must be nonnegative")
    _require_valid(table)
    out = Polynomial.zero()
    for m in p.terms:
        out = out + _total_square_monomial(table, m).get(i, Polynomial.zero())
    return out


@dataclass(frozen=True)
class DegreeHitData:
    degree: int
    total_dim: int
    hit_dim: int
    quotient_dim: int
    representatives: tuple[Monomial, ...]


@dataclass(frozen=True)
class HitReport:
    bound: int
    rows: tuple[DegreeHitData, ...]

    def quotient_dims(self) -> list[int]:
        return [row.quotient_dim for row in self.rows]

    def non_hit_degrees(self) -> list[int]:
        return [row.degree for row in self.rows if row.quotient_dim > 0]


def hit_quotient(table: SteenrodTable, bound: int) -> HitReport:
    """Hit subspace and indecomposable quotient per degree up to the bound.

    The hit subspace of degree d is spanned by Sq^i of every monomial
    of degree d - i for 0 < i <= d.  Non-hit representatives are chosen
    greedily in the fixed monomial order.
    """
    if bound < 0:
        raise UsageError("bound must be nonnegative")
    _require_valid(table)
    algebra = table.algebra
    rows = []
    for d in range(bound + 1):
        basis = basis_in_degree(algebra, d)
        index = {m: j for j, m in enumerate(basis)}
        n = len(basis)
        hit_vectors = []
        for i in range(1, d + 1):
            for m in basis_in_degree(algebra, d - i):
                image = sq(table, i, Polynomial.of(m))
                if image.is_zero():
                    continue
                bits = 0
                for term in image.terms:
                    bits ^= 1 << index[term]
                hit_vectors.append(F2Vector(n, bits))
        hit_basis = row_reduce(hit_vectors)
        reps = []
        context = list(hit_basis)
        for j, m in enumerate(basis):
            v = F2Vector.unit(n, j)
            if not reduce_against(row_reduce(context), v).is_zero():
                reps.append(m)
                context.append(v)
        rows.append(
            DegreeHitData(
                degree=d,
                total_dim=n,
                hit_dim=len(hit_basis),
                quotient_dim=n - len(hit_basis),
                representatives=tuple(reps),
            )
        )
    return HitReport(bound, tuple(rows))


def suggest_g2_table() -> SteenrodTable:
    """Scaffold for the degree-4/6/7 polynomial base algebra.

    Only axiom-forced entries are populated; everything strictly
    between Sq^0 and the top square is left user-supplied, to be filled
    from the literature via the configuration file.
    """
    algebra = PolyAlgebraSpec.from_pairs([("x_4", 4), ("x_6", 6), ("x_7", 7)])
    return table_from_entries(algebra, {})


def format_violations(violations: list[Violation]) -> str:
    return "\n".join(str(v) for v in violations)
