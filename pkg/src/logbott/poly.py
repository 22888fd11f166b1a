"""Sparse multivariate polynomials over exact rationals.

This is the single arithmetic kernel of the package.  The graded quotient
rings of :mod:`logbott.ring` store their homogeneous parts as ``Poly``
values, the chart-level vector field analyzer works with ``Poly``
coefficients directly, and the numeric residue module evaluates the same
polynomials at complex points.

A polynomial is a mapping from exponent vectors (one entry per variable,
in a fixed variable tuple) to nonzero ``Fraction`` coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, ...]
ScalarLike = Union[int, Fraction, str]


def as_fraction(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(lead: Monomial, m: Monomial) -> bool:
    return all(x <= y for x, y in zip(lead, m))


def mono_quot(m: Monomial, lead: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(m, lead))


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, ScalarLike] | None = None):
        names = tuple(variables)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(mono)
                if len(mono) != len(names):
                    raise ValueError(
                        f"exponent vector {mono} does not match variables {names}"
                    )
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = as_fraction(coeff)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Poly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], value: ScalarLike) -> "Poly":
        names = tuple(variables)
        return cls(names, {tuple([0] * len(names)): as_fraction(value)})

    @classmethod
    def gen(cls, variables: Sequence[str], name: str) -> "Poly":
        names = tuple(variables)
        if name not in names:
            raise ValueError(f"unknown generator name {name!r}; have {names}")
        expv = tuple(1 if v == name else 0 for v in names)
        return cls(names, {expv: Fraction(1)})

    @classmethod
    def from_pairs(cls, variables: Sequence[str], pairs: Iterable[tuple[ScalarLike, Sequence[int]]]) -> "Poly":
        names = tuple(variables)
        terms: dict[Monomial, Fraction] = {}
        for coeff, expv in pairs:
            mono = tuple(int(e) for e in expv)
            c = as_fraction(coeff)
            if c:
                terms[mono] = terms.get(mono, Fraction(0)) + c
        return cls(names, terms)

    # -- predicates and views ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(tuple([0] * len(self.vars)), Fraction(0))

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def total_degree(self) -> int:
        """Maximum total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(e * w for e, w in zip(m, weights)) for m in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if not self.terms:
            return True
        w = weights if weights is not None else [1] * len(self.vars)
        return len(self.weighted_degrees(w)) == 1

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(
                    f"variable mismatch: {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.vars, other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in rhs.terms.items():
            acc = terms.get(m, Fraction(0)) + c
            if acc:
                terms[m] = acc
            else:
                terms.pop(m, None)
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

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
                return Poly.zero(self.vars)
            return Poly(self.vars, {m: c * v for m, v in self.terms.items()})
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in rhs.terms.items():
                m = mono_mul(m1, m2)
                acc = out.get(m, Fraction(0)) + c1 * c2
                if acc:
                    out[m] = acc
                else:
                    del out[m]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == as_fraction(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    __hash__ = None  # compared by value, used as dict values only

    # -- calculus and evaluation --------------------------------------------

    def partial(self, name: str) -> "Poly":
        """Partial derivative with respect to one variable."""
        idx = self.vars.index(name)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[idx]
            if e:
                dm = m[:idx] + (e - 1,) + m[idx + 1:]
                out[dm] = out.get(dm, Fraction(0)) + c * e
        return Poly(self.vars, out)

    def subs_zero(self, names: Iterable[str]) -> "Poly":
        """Set the listed variables to zero."""
        idxs = {self.vars.index(n) for n in names}
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if all(m[i] == 0 for i in idxs):
                out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.vars, out)

    def eval(self, values: Mapping[str, object]):
        """Evaluate at a point.

        Exact when every value is int/Fraction; otherwise computed in
        complex floating point.
        """
        exact = all(isinstance(v, (int, Fraction)) for v in values.values())
        total = Fraction(0) if exact else complex(0)
        for m, c in self.terms.items():
            term = c if exact else complex(c)
            for idx, e in enumerate(m):
                if e:
                    v = values[self.vars[idx]]
                    term = term * (v ** e)
            total = total + term
        return total

    # -- formatting -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.vars, m)
                if e
            ]
            if not factors:
                body = str(abs(c))
            else:
                mag = abs(c)
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({self})"


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials (cofactor expansion)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    variables = rows[0][0].vars
    if n == 1:
        return rows[0][0]
    total = Poly.zero(variables)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        minor = [
            [row[c] for c in range(n) if c != j]
            for row in rows[1:]
        ]
        cofactor = determinant(minor)
        term = entry * cofactor
        total = total + (term if j % 2 == 0 else -term)
    return total
