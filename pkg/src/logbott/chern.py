"""Chern class calculus on top of graded ring classes.

Bundles are stored through their Chern classes only; eigenvalue shifts
are performed with the closed binomial identity for elementary symmetric
functions of shifted roots, so no splitting-field machinery is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import NondegeneracyError, RingMismatchError
from .poly import ScalarLike, as_fraction
from .ring import GradedClass, RingPresentation


@dataclass(frozen=True)
class BundleData:
    """A vector bundle presented by its rank and Chern classes c_1..c_rank."""

    ring: RingPresentation
    rank: int
    chern: tuple[GradedClass, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        if len(self.chern) != self.rank:
            raise ValueError(
                f"rank {self.rank} bundle must carry exactly {self.rank} Chern classes, "
                f"got {len(self.chern)}"
            )
        for i, c in enumerate(self.chern, start=1):
            if c.ring != self.ring:
                raise RingMismatchError(f"c_{i} lives in a different ring")
            if not c.is_zero and set(c.parts) != {2 * i}:
                raise ValueError(f"c_{i} must be homogeneous of degree {2 * i}")

    def chern_class(self, i: int) -> GradedClass:
        """c_i, with c_0 = 1 and c_i = 0 beyond the rank."""
        if i == 0:
            return self.ring.one()
        if 1 <= i <= self.rank:
            return self.chern[i - 1]
        return self.ring.zero()


def trivial_bundle(ring: RingPresentation, rank: int) -> BundleData:
    return BundleData(ring, rank, tuple(ring.zero() for _ in range(rank)))


def line_bundle(ring: RingPresentation, c1: GradedClass) -> BundleData:
    return BundleData(ring, 1, (c1,))


def total_chern(bundle: BundleData) -> GradedClass:
    """Total class 1 + c_1 + ... + c_rank."""
    total = bundle.ring.one()
    for c in bundle.chern:
        total = total + c
    return total


def bundle_from_total(ring: RingPresentation, rank: int, total: GradedClass) -> BundleData:
    """Extract c_1..c_rank from a total class with unit degree-0 part."""
    if total.degree_zero() != 1:
        raise ValueError("total class must start with 1")
    classes = tuple(total.homogeneous_part(2 * i) for i in range(1, rank + 1))
    return BundleData(ring, rank, classes)


def whitney_product(first: BundleData, second: BundleData) -> BundleData:
    """Direct sum: ranks add and total classes multiply."""
    if first.ring != second.ring:
        raise RingMismatchError("bundles live in different rings")
    total = total_chern(first) * total_chern(second)
    return bundle_from_total(first.ring, first.rank + second.rank, total)


def log_chern(tangent: BundleData, divisors: Sequence[GradedClass]) -> BundleData:
    """Twist the tangent bundle by smooth boundary divisors.

    The total class is divided by (1 + D_i) for each divisor class; the
    rank is unchanged.
    """
    total = total_chern(tangent)
    for div in divisors:
        if div.ring != tangent.ring:
            raise RingMismatchError("divisor class lives in a different ring")
        if not div.is_zero and set(div.parts) != {2}:
            raise ValueError("divisor classes must be homogeneous of degree 2")
        total = total * (tangent.ring.one() + div).invert_unit()
    return bundle_from_total(tangent.ring, tangent.rank, total)


@dataclass(frozen=True)
class ShiftedChernPolynomial:
    """Elementary symmetric functions of eigenvalue-shifted Chern roots.

    ``coefficients[i]`` is the i-th symmetric function of the shifted
    roots; the positional variable is a formal bookkeeping device, so a
    direct sum of blocks is a coefficient-wise convolution.
    """

    ring: RingPresentation
    coefficients: tuple[GradedClass, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("need at least the constant coefficient")
        if self.coefficients[0] != 1:
            raise ValueError("leading coefficient must be 1")
        for c in self.coefficients:
            if c.ring != self.ring:
                raise RingMismatchError("coefficient lives in a different ring")

    @property
    def rank(self) -> int:
        return len(self.coefficients) - 1

    def top(self) -> GradedClass:
        return self.coefficients[-1]


def shift_coefficients(
    lam: Fraction, rank: int, classes: Sequence[GradedClass], ring: RingPresentation
) -> list[GradedClass]:
    """Apply the root shift x_j -> lam + x_j at the symmetric-function level.

    s_i = sum_{j<=i} C(rank-j, i-j) * lam^(i-j) * c_j, the elementary
    symmetric functions of the shifted roots.  Works on arbitrary
    coefficient lists; shifting by lam and then mu equals shifting by
    lam + mu.
    """
    def cls(j: int) -> GradedClass:
        if j == 0:
            return ring.one()
        return classes[j - 1] if j <= len(classes) else ring.zero()

    out = []
    for i in range(rank + 1):
        acc = ring.zero()
        for j in range(i + 1):
            weight = comb(rank - j, i - j) * lam ** (i - j)
            if weight:
                acc = acc + cls(j) * weight
        out.append(acc)
    return out


def shift_block(lam: ScalarLike, bundle: BundleData) -> ShiftedChernPolynomial:
    """Chern data of a bundle whose roots are all shifted by ``lam``."""
    lam = as_fraction(lam)
    coeffs = shift_coefficients(lam, bundle.rank, bundle.chern, bundle.ring)
    return ShiftedChernPolynomial(bundle.ring, tuple(coeffs))


def block_product(blocks: Sequence[ShiftedChernPolynomial]) -> ShiftedChernPolynomial:
    """Whitney rule for a direct sum of shifted blocks (convolution)."""
    if not blocks:
        raise ValueError("need at least one block")
    acc = blocks[0]
    for block in blocks[1:]:
        if block.ring != acc.ring:
            raise RingMismatchError("blocks live in different rings")
        rank = acc.rank + block.rank
        coeffs = []
        for i in range(rank + 1):
            total = acc.ring.zero()
            for a in range(max(0, i - block.rank), min(i, acc.rank) + 1):
                total = total + acc.coefficients[a] * block.coefficients[i - a]
            coeffs.append(total)
        acc = ShiftedChernPolynomial(acc.ring, tuple(coeffs))
    return acc


def equivariant_det(blocks: Sequence[tuple[ScalarLike, BundleData]]) -> GradedClass:
    """det(A + curvature) for a sum of eigenblocks.

    The determinant is the product over blocks of the top shifted class;
    its degree-0 part is the product of eigenvalue powers, so a zero
    eigenvalue is rejected as a nondegeneracy violation.
    """
    if not blocks:
        raise ValueError("need at least one eigenblock")
    ring = blocks[0][1].ring
    det = ring.one()
    for lam, bundle in blocks:
        lam = as_fraction(lam)
        if lam == 0:
            raise NondegeneracyError(
                "eigenvalue 0 in a normal block: the action is not invertible"
            )
        det = det * shift_block(lam, bundle).top()
    return det


@dataclass(frozen=True)
class InvariantPolySpec:
    """A monomial in Chern classes, or the distinguished top Chern class.

    ``monomial`` is a tuple of (index, exponent) pairs; ``None`` denotes
    the top Chern class of whatever bundle the spec is evaluated on.
    """

    monomial: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.monomial is not None:
            seen = set()
            for i, a in self.monomial:
                if i < 1 or a < 1:
                    raise ValueError(f"invalid factor c_{i}^{a}")
                if i in seen:
                    raise ValueError(f"repeated index {i}; merge exponents")
                seen.add(i)

    @classmethod
    def top_chern(cls) -> "InvariantPolySpec":
        return cls(None)

    @classmethod
    def chern_monomial(cls, pairs: Sequence[tuple[int, int]]) -> "InvariantPolySpec":
        return cls(tuple((int(i), int(a)) for i, a in sorted(pairs)))

    @property
    def is_top(self) -> bool:
        return self.monomial is None

    def weighted_degree(self) -> int | None:
        if self.monomial is None:
            return None
        return sum(i * a for i, a in self.monomial)

    def describe(self) -> str:
        if self.monomial is None:
            return "top_chern"
        return "*".join(f"c{i}" + (f"^{a}" if a > 1 else "") for i, a in self.monomial)


def evaluate_phi(phi: InvariantPolySpec, shifted: ShiftedChernPolynomial) -> GradedClass:
    """Evaluate an invariant monomial on shifted Chern data."""
    if phi.is_top:
        return shifted.top()
    want = phi.weighted_degree()
    if want != shifted.rank:
        raise ValueError(
            f"invariant polynomial has weighted degree {want}, "
            f"but the bundle data has rank {shifted.rank}"
        )
    result = shifted.ring.one()
    for i, a in phi.monomial:
        result = result * shifted.coefficients[i] ** a
    return result
