"""Residue localization of characteristic numbers at fixed components.

Each fixed component carries eigenblock decompositions of the kernel and
normal bundles of the restriction sequence.  Its residue form is the
degree-2r part of Phi(shifted blocks) * det(normal blocks)^(-1); pairing
with the component's integration table gives the local contribution, and
the sum over components is compared with the global characteristic
number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chern import (
    BundleData,
    InvariantPolySpec,
    ShiftedChernPolynomial,
    block_product,
    equivariant_det,
    evaluate_phi,
    log_chern,
    shift_block,
)
from .errors import ConsistencyError, LogBottError
from .poly import ScalarLike, as_fraction
from .ring import GradedClass, RingPresentation

Eigenblock = tuple[Fraction, BundleData]


def _normalize_blocks(blocks: Sequence[tuple[ScalarLike, BundleData]]) -> tuple[Eigenblock, ...]:
    return tuple((as_fraction(lam), bundle) for lam, bundle in blocks)


@dataclass(frozen=True)
class FixedComponent:
    """One connected component of the zero scheme, with its localization data.

    The rank sums are structural and checked at construction.  Vanishing
    of a normal eigenvalue is a nondegeneracy failure and is deliberately
    deferred to computation time so that ``verify`` can report it instead
    of refusing to build the component.
    """

    name: str
    dim_r: int
    codim_k: int
    ring_z: RingPresentation
    k_blocks: tuple[Eigenblock, ...]
    n_blocks: tuple[Eigenblock, ...]
    assert_log_transversal: bool = True

    def __post_init__(self):
        object.__setattr__(self, "k_blocks", _normalize_blocks(self.k_blocks))
        object.__setattr__(self, "n_blocks", _normalize_blocks(self.n_blocks))
        if self.dim_r < 0 or self.codim_k < 1:
            raise ValueError(f"invalid dimension/codimension ({self.dim_r}, {self.codim_k})")
        if self.ring_z.top_degree != 2 * self.dim_r:
            raise ValueError(
                f"component ring has top degree {self.ring_z.top_degree}, "
                f"expected {2 * self.dim_r}"
            )
        if not self.ring_z.integration_table:
            raise ValueError(f"component {self.name} has no integration table")
        k_rank = sum(b.rank for _, b in self.k_blocks)
        n_rank = sum(b.rank for _, b in self.n_blocks)
        if k_rank != self.dim_r:
            raise ValueError(f"kernel blocks have total rank {k_rank}, expected {self.dim_r}")
        if n_rank != self.codim_k:
            raise ValueError(f"normal blocks have total rank {n_rank}, expected {self.codim_k}")
        for _, bundle in self.k_blocks + self.n_blocks:
            if bundle.ring != self.ring_z:
                raise ValueError(f"eigenblock of {self.name} lives in a foreign ring")


@dataclass(frozen=True)
class GlobalSide:
    """Global data: ambient Chow ring, tangent bundle, boundary divisors."""

    ring_x: RingPresentation
    tangent: BundleData
    divisor_classes: tuple[GradedClass, ...] = ()
    direct_log_bundle: BundleData | None = None

    def __post_init__(self):
        object.__setattr__(self, "divisor_classes", tuple(self.divisor_classes))
        if 2 * self.tangent.rank != self.ring_x.top_degree:
            raise ValueError(
                f"tangent rank {self.tangent.rank} does not match "
                f"top degree {self.ring_x.top_degree}"
            )
        if self.tangent.ring != self.ring_x:
            raise ValueError("tangent bundle lives in a foreign ring")


@dataclass(frozen=True)
class VerificationReport:
    phi: InvariantPolySpec
    global_value: Fraction
    contributions: tuple[tuple[str, Fraction], ...]
    local_sum: Fraction
    matched: bool
    errors: tuple[str, ...] = ()
    # transversality is a user-asserted hypothesis, recorded rather than computed
    unasserted_transversality: tuple[str, ...] = ()


def residue_form(component: FixedComponent, phi: InvariantPolySpec) -> GradedClass:
    """Degree-2r part of Phi(all shifted blocks) * det(normal blocks)^(-1)."""
    blocks = [shift_block(lam, bundle) for lam, bundle in component.k_blocks + component.n_blocks]
    total: ShiftedChernPolynomial = block_product(blocks)
    numerator = evaluate_phi(phi, total)
    det_inverse = equivariant_det(component.n_blocks).invert_unit()
    return (numerator * det_inverse).homogeneous_part(2 * component.dim_r)


def local_contribution(component: FixedComponent, phi: InvariantPolySpec) -> Fraction:
    return residue_form(component, phi).integrate()


def localization_sum(components: Sequence[FixedComponent], phi: InvariantPolySpec) -> Fraction:
    return sum((local_contribution(z, phi) for z in components), Fraction(0))


def log_tangent_bundle(side: GlobalSide) -> BundleData:
    """The bundle whose characteristic numbers are being localized.

    When a direct-sum description is supplied it is cross-checked against
    the quotient formula before being used.
    """
    quotient = log_chern(side.tangent, side.divisor_classes)
    if side.direct_log_bundle is not None:
        if side.direct_log_bundle != quotient:
            raise ConsistencyError(
                "direct-sum description disagrees with the quotient formula"
            )
        return side.direct_log_bundle
    return quotient


def global_value(side: GlobalSide, phi: InvariantPolySpec) -> Fraction:
    bundle = log_tangent_bundle(side)
    shifted = shift_block(0, bundle)
    return evaluate_phi(phi, shifted).integrate()


def verify(
    side: GlobalSide,
    components: Sequence[FixedComponent],
    phi: InvariantPolySpec,
) -> VerificationReport:
    """Compare the global number with the sum of local residues.

    Domain failures on individual components (for instance a vanishing
    normal eigenvalue) are reported, not raised.
    """
    value = global_value(side, phi)
    contributions: list[tuple[str, Fraction]] = []
    errors: list[str] = []
    unasserted: list[str] = []
    for component in components:
        if not component.assert_log_transversal:
            unasserted.append(component.name)
        try:
            contributions.append((component.name, local_contribution(component, phi)))
        except LogBottError as exc:
            errors.append(f"{component.name}: {exc}")
    total = sum((v for _, v in contributions), Fraction(0))
    matched = not errors and total == value
    return VerificationReport(
        phi=phi,
        global_value=value,
        contributions=tuple(contributions),
        local_sum=total,
        matched=matched,
        errors=tuple(errors),
        unasserted_transversality=tuple(unasserted),
    )
