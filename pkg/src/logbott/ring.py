"""Graded quotient rings presented by terminating rewrite systems.

A presentation lists generators with positive even degrees, homogeneous
rewrite rules (lead monomial -> strictly smaller polynomial under the
graded-lexicographic order with generators in declared order), a top
degree ``2n``, and an integration table pairing the normal-form monomials
of top degree with exact rationals.  The table encodes the intersection
numbers of the geometry the ring presents, so ``integrate`` realizes the
degree map against the fundamental class.

The rewrite system is required to be confluent; all critical pairs are
joined at construction time and a :class:`PresentationError` is raised
with a diagnostic otherwise.  Normal forms are therefore unique, which is
what makes every downstream equality check exact.

Values are immutable after construction.  The only internal mutation is
the per-presentation normal-form memo, whose entries are deterministic,
so concurrent use from multiple threads stays safe.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    IncompleteTableError,
    NonUnitError,
    PresentationError,
    RingMismatchError,
)
from .poly import (
    Monomial,
    Poly,
    ScalarLike,
    as_fraction,
    mono_divides,
    mono_mul,
    mono_quot,
)


class RingPresentation:
    """A graded commutative ring over the rationals with an integration map."""

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        rules: Sequence[tuple[Sequence[int], object]],
        top_degree: int,
        integration_table: Mapping[Sequence[int], ScalarLike],
        check_confluence: bool = True,
    ):
        self.names = tuple(name for name, _ in generators)
        self.degrees = tuple(int(d) for _, d in generators)
        if len(set(self.names)) != len(self.names):
            raise PresentationError(f"duplicate generator names in {self.names}")
        for name, d in zip(self.names, self.degrees):
            if d <= 0 or d % 2:
                raise PresentationError(
                    f"generator {name!r} has degree {d}; degrees must be positive and even"
                )
        if top_degree < 0 or top_degree % 2:
            raise PresentationError(f"top degree {top_degree} must be even and nonnegative")
        self.top_degree = int(top_degree)

        self.rules: tuple[tuple[Monomial, dict[Monomial, Fraction]], ...] = tuple(
            self._normalize_rule(lead, rhs) for lead, rhs in rules
        )
        self._nf_cache: dict[Monomial, dict[Monomial, Fraction]] = {}

        table: dict[Monomial, Fraction] = {}
        for mono, value in integration_table.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(self.names):
                raise PresentationError(f"table monomial {mono} has wrong arity")
            if self.monomial_degree(mono) != self.top_degree:
                raise PresentationError(
                    f"table monomial {mono} has degree {self.monomial_degree(mono)}, "
                    f"expected {self.top_degree}"
                )
            if self._reduce_monomial(mono) != {mono: Fraction(1)}:
                raise PresentationError(f"table monomial {mono} is not in normal form")
            table[mono] = as_fraction(value)
        self.integration_table = table

        if check_confluence:
            self._check_critical_pairs()

        self._signature = (
            self.names,
            self.degrees,
            tuple((lead, tuple(sorted(rhs.items()))) for lead, rhs in self.rules),
            self.top_degree,
            tuple(sorted(table.items())),
        )

    # -- monomial order -----------------------------------------------------

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def order_key(self, mono: Monomial) -> tuple[int, Monomial]:
        """Graded-lexicographic key; earlier generators weigh more."""
        return (self.monomial_degree(mono), mono)

    def _normalize_rule(self, lead, rhs) -> tuple[Monomial, dict[Monomial, Fraction]]:
        lead = tuple(int(e) for e in lead)
        if len(lead) != len(self.names):
            raise PresentationError(f"rule lead {lead} has wrong arity")
        if isinstance(rhs, Poly):
            if rhs.vars != self.names:
                raise PresentationError("rule right-hand side uses foreign variables")
            rhs_terms = dict(rhs.terms)
        elif isinstance(rhs, Mapping):
            rhs_terms = {tuple(m): as_fraction(c) for m, c in rhs.items() if as_fraction(c)}
        else:
            rhs_terms = {tuple(m): as_fraction(c) for c, m in rhs if as_fraction(c)}
        lead_deg = self.monomial_degree(lead)
        lead_key = self.order_key(lead)
        for mono in rhs_terms:
            if self.monomial_degree(mono) != lead_deg:
                raise PresentationError(
                    f"rule {lead} -> ... is not degree-homogeneous: "
                    f"{mono} has degree {self.monomial_degree(mono)} != {lead_deg}"
                )
            if self.order_key(mono) >= lead_key:
                raise PresentationError(
                    f"rule {lead} -> ... does not decrease in the monomial order "
                    f"(offending monomial {mono})"
                )
        return lead, rhs_terms

    # -- rewriting ------------------------------------------------------------

    def _reduce_monomial(self, mono: Monomial) -> dict[Monomial, Fraction]:
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        for lead, rhs in self.rules:
            if mono_divides(lead, mono):
                quot = mono_quot(mono, lead)
                out: dict[Monomial, Fraction] = {}
                for rm, rc in rhs.items():
                    for fm, fc in self._reduce_monomial(mono_mul(quot, rm)).items():
                        acc = out.get(fm, Fraction(0)) + rc * fc
                        if acc:
                            out[fm] = acc
                        else:
                            del out[fm]
                break
        else:
            out = {mono: Fraction(1)}
        self._nf_cache[mono] = out
        return out

    def normal_form(self, p: Poly) -> Poly:
        """Unique rewrite-irreducible representative of ``p``."""
        if p.vars != self.names:
            raise ValueError(
                f"polynomial in variables {p.vars} does not live in ring {self.names}"
            )
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in p.terms.items():
            for fm, fc in self._reduce_monomial(mono).items():
                acc = out.get(fm, Fraction(0)) + coeff * fc
                if acc:
                    out[fm] = acc
                else:
                    del out[fm]
        return Poly(self.names, out)

    def _check_critical_pairs(self):
        """Join every critical pair; abort with a diagnostic on failure."""
        for i, (lead1, rhs1) in enumerate(self.rules):
            for lead2, rhs2 in self.rules[i + 1:]:
                overlap = tuple(min(a, b) for a, b in zip(lead1, lead2))
                if all(e == 0 for e in overlap):
                    continue  # disjoint leads: reductions commute
                lcm = tuple(max(a, b) for a, b in zip(lead1, lead2))
                left = Poly(self.names, {
                    mono_mul(mono_quot(lcm, lead1), m): c for m, c in rhs1.items()
                })
                right = Poly(self.names, {
                    mono_mul(mono_quot(lcm, lead2), m): c for m, c in rhs2.items()
                })
                spoly = self.normal_form(left - right)
                if not spoly.is_zero:
                    raise PresentationError(
                        f"rewrite system is not confluent: critical pair of leads "
                        f"{lead1} and {lead2} leaves residue {spoly}"
                    )

    # -- element constructors ---------------------------------------------------

    def poly(self, terms: Mapping[Monomial, ScalarLike]) -> Poly:
        return Poly(self.names, terms)

    def gen_poly(self, name: str) -> Poly:
        return Poly.gen(self.names, name)

    def graded(self, name: str) -> "GradedClass":
        return GradedClass.from_poly(self, self.gen_poly(name))

    def one(self) -> "GradedClass":
        return GradedClass.from_poly(self, Poly.const(self.names, 1))

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def const(self, value: ScalarLike) -> "GradedClass":
        return GradedClass.from_poly(self, Poly.const(self.names, value))

    # -- identity ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"RingPresentation({gens}; top={self.top_degree}, rules={len(self.rules)})"


class GradedClass:
    """An inhomogeneous ring element stored as normal-form parts by degree.

    Parts above the ring's top degree are discarded silently, mirroring
    the vanishing of forms above the real dimension.
    """

    __slots__ = ("ring", "parts")

    def __init__(self, ring: RingPresentation, parts: Mapping[int, Poly]):
        object.__setattr__(self, "ring", ring)
        clean = {}
        for d, p in parts.items():
            if d < 0 or d % 2:
                raise ValueError(f"invalid degree {d}")
            if d > ring.top_degree:
                continue
            p = ring.normal_form(p)
            if p.is_zero:
                continue
            if any(ring.monomial_degree(m) != d for m in p.terms):
                raise ValueError(f"part of degree {d} contains foreign degrees: {p}")
            clean[d] = p
        object.__setattr__(self, "parts", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedClass is immutable")

    @classmethod
    def from_poly(cls, ring: RingPresentation, p: Poly) -> "GradedClass":
        nf = ring.normal_form(p)
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in nf.terms.items():
            d = ring.monomial_degree(mono)
            buckets.setdefault(d, {})[mono] = coeff
        return cls(ring, {d: Poly(ring.names, t) for d, t in buckets.items()})

    # -- views --------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> list[int]:
        return sorted(self.parts)

    def degree_zero(self) -> Fraction:
        part = self.parts.get(0)
        return part.constant_term() if part is not None else Fraction(0)

    def as_poly(self) -> Poly:
        total = Poly.zero(self.ring.names)
        for p in self.parts.values():
            total = total + p
        return total

    def homogeneous_part(self, degree: int) -> "GradedClass":
        """Degree-``degree`` piece; zero above the top degree."""
        if degree < 0 or degree % 2:
            raise ValueError(f"degree must be even and nonnegative, got {degree}")
        part = self.parts.get(degree)
        if part is None:
            return GradedClass(self.ring, {})
        return GradedClass(self.ring, {degree: part})

    # -- arithmetic ------------------------------------------------------------------

    def _coerce(self, other) -> "GradedClass | None":
        if isinstance(other, GradedClass):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"cannot combine classes from {self.ring!r} and {other.ring!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        parts = dict(self.parts)
        for d, p in rhs.parts.items():
            acc = parts.get(d)
            parts[d] = p if acc is None else acc + p
        return GradedClass(self.ring, parts)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {d: -p for d, p in self.parts.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            if not c:
                return GradedClass(self.ring, {})
            return GradedClass(self.ring, {d: p * c for d, p in self.parts.items()})
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        parts: dict[int, Poly] = {}
        for d1, p1 in self.parts.items():
            for d2, p2 in rhs.parts.items():
                d = d1 + d2
                if d > self.ring.top_degree:
                    continue
                prod = self.ring.normal_form(p1 * p2)
                if prod.is_zero:
                    continue
                acc = parts.get(d)
                parts[d] = prod if acc is None else acc + prod
        return GradedClass(self.ring, parts)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring == other.ring and self.parts == other.parts

    __hash__ = None

    # -- the two nontrivial operations ----------------------------------------------

    def invert_unit(self) -> "GradedClass":
        """Inverse of a class with invertible degree-0 part.

        Writes ``x = c(1 + eta)`` with ``eta`` of positive degree and sums
        the geometric series, which terminates at the top degree.
        """
        c = self.degree_zero()
        if not c:
            raise NonUnitError(
                "degree-0 part vanishes; the class is not invertible "
                "(Bott nondegeneracy fails at the determinant level)"
            )
        inv_c = Fraction(1) / c
        eta = self * inv_c - 1
        result = self.ring.one()
        power = self.ring.one()
        for _ in range(self.ring.top_degree // 2):
            power = power * (-1) * eta
            if power.is_zero:
                break
            result = result + power
        return result * inv_c

    def integrate(self) -> Fraction:
        """Pair the top-degree part against the integration table."""
        part = self.parts.get(self.ring.top_degree)
        if part is None:
            return Fraction(0)
        total = Fraction(0)
        for mono, coeff in part.terms.items():
            try:
                total += coeff * self.ring.integration_table[mono]
            except KeyError:
                raise IncompleteTableError(
                    f"monomial {mono} of top degree missing from the integration table"
                ) from None
        return total

    def __str__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"({self.parts[d]})_{d}" for d in sorted(self.parts))

    def __repr__(self):
        return f"GradedClass({self})"


# -- operation-shaped entry points ------------------------------------------------


def normal_form(p: Poly, ring: RingPresentation) -> Poly:
    return ring.normal_form(p)


def homogeneous_part(x: GradedClass, degree: int) -> GradedClass:
    return x.homogeneous_part(degree)


def invert_unit(x: GradedClass) -> GradedClass:
    return x.invert_unit()


def integrate(x: GradedClass, ring: RingPresentation | None = None) -> Fraction:
    if ring is not None and ring != x.ring:
        raise RingMismatchError("class does not live in the given ring")
    return x.integrate()
