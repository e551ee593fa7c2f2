"""Graded polynomial algebras over F_2.

An algebra is given by named generators with positive degrees; all
coefficients are implicitly 1, so polynomials are just sets of
monomials and addition is symmetric difference.  Signs vanish mod 2,
so graded commutativity reduces to plain commutativity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import UsageError, ValidationError


@dataclass(frozen=True)
class PolyAlgebraSpec:
    """Polynomial algebra F_2[g_1, ..., g_n] with deg(g_i) >= 1."""

    generators: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValidationError("generator names must be distinct")
        for name, degree in self.generators:
            if degree < 1:
                raise ValidationError(f"generator {name} has degree {degree} < 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "PolyAlgebraSpec":
        return cls(tuple((str(n), int(d)) for n, d in pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(degree for _, degree in self.generators)

    def index_of(self, name: str) -> int:
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise UsageError(f"unknown generator {name!r}")

    def gen(self, name: str) -> "Polynomial":
        i = self.index_of(name)
        exps = [0] * len(self.generators)
        exps[i] = 1
        return Polynomial(frozenset({Monomial(tuple(exps))}))

    def unit(self) -> "Polynomial":
        return Polynomial(frozenset({Monomial((0,) * len(self.generators))}))


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponent vector, one entry per generator of the ambient algebra."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.exponents):
            raise UsageError("negative exponent")

    def degree(self, algebra: PolyAlgebraSpec) -> int:
        return sum(e * d for e, d in zip(self.exponents, algebra.degrees))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exponents)


@dataclass(frozen=True)
class Polynomial:
    """Set of monomials; mod-2 cancellation is already applied."""

    terms: frozenset[Monomial]

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(frozenset())

    @classmethod
    def of(cls, *monomials: Monomial) -> "Polynomial":
        terms: set[Monomial] = set()
        for m in monomials:
            terms ^= {m}
        return cls(frozenset(terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        """Terms in the fixed display order (descending lexicographic)."""
        return sorted(self.terms, key=lambda m: m.exponents, reverse=True)

    def homogeneous_degree(self, algebra: PolyAlgebraSpec) -> int:
        """Common degree of all terms; zero polynomial has degree -1."""
        degs = {m.degree(algebra) for m in self.terms}
        if not degs:
            return -1
        if len(degs) > 1:
            raise UsageError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()


@lru_cache(maxsize=None)
def _exponent_vectors(degrees: tuple[int, ...], d: int) -> tuple[tuple[int, ...], ...]:
    if not degrees:
        return ((),) if d == 0 else ()
    head, tail = degrees[0], degrees[1:]
    out = []
    for e in range(d // head, -1, -1):
        for rest in _exponent_vectors(tail, d - e * head):
            out.append((e,) + rest)
    return tuple(out)


def basis_in_degree(algebra: PolyAlgebraSpec, d: int) -> list[Monomial]:
    """All monomials of exact degree d, in descending lexicographic order."""
    if d < 0:
        return []
    return [Monomial(exps) for exps in _exponent_vectors(algebra.degrees, d)]


def multiply(algebra: PolyAlgebraSpec, p: Polynomial, q: Polynomial) -> Polynomial:
    terms: set[Monomial] = set()
    for a in p.terms:
        for b in q.terms:
            terms ^= {a * b}
    return Polynomial(frozenset(terms))


def poincare_dims(algebra: PolyAlgebraSpec, n: int) -> list[int]:
    """dims[d] = number of monomials of degree d, for d = 0..n."""
    return [len(basis_in_degree(algebra, d)) for d in range(n + 1)]


# ------------------------------------------------------------- formatting


def format_monomial(algebra: PolyAlgebraSpec, m: Monomial) -> str:
    parts = []
    for (name, _), e in zip(algebra.generators, m.exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(algebra: PolyAlgebraSpec, p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(format_monomial(algebra, m) for m in p.sorted_terms())


def parse_monomial(algebra: PolyAlgebraSpec, text: str) -> Monomial:
    text = text.strip()
    exps = [0] * len(algebra.generators)
    if text == "1":
        return Monomial(tuple(exps))
    for factor in text.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValidationError(f"empty factor in monomial {text!r}")
        if "^" in factor:
            name, _, power = factor.partition("^")
            try:
                e = int(power)
            except ValueError:
                raise ValidationError(f"bad exponent {power!r} in {text!r}") from None
            if e < 0:
                raise ValidationError(f"negative exponent in {text!r}")
        else:
            name, e = factor, 1
        name = name.strip()
        try:
            i = algebra.index_of(name)
        except UsageError:
            raise ValidationError(f"unknown generator {name!r} in {text!r}") from None
        exps[i] += e
    return Monomial(tuple(exps))


def parse_polynomial(algebra: PolyAlgebraSpec, text: str) -> Polynomial:
    text = text.strip()
    if text == "0":
        return Polynomial.zero()
    terms: set[Monomial] = set()
    for chunk in text.split("+"):
        terms ^= {parse_monomial(algebra, chunk)}
    return Polynomial(frozenset(terms))
