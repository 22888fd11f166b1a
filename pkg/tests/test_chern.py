"""Chern calculus: Whitney products, log twists, eigenvalue shifts."""

import random
from fractions import Fraction

import pytest

from logbott.catalog import projective_space_ring, resolved_cone_ring, triple_product_ring
from logbott.chern import (
    BundleData,
    InvariantPolySpec,
    block_product,
    bundle_from_total,
    equivariant_det,
    evaluate_phi,
    line_bundle,
    log_chern,
    shift_block,
    shift_coefficients,
    total_chern,
    trivial_bundle,
    whitney_product,
)
from logbott.errors import NondegeneracyError, RingMismatchError
from logbott.poly import Poly
from logbott.ring import GradedClass

from _util import random_bundle, random_fraction


def p1_times_p1():
    from logbott.ring import RingPresentation

    return RingPresentation(
        generators=[("eta1", 2), ("eta2", 2)],
        rules=[((2, 0), {}), ((0, 2), {})],
        top_degree=4,
        integration_table={(1, 1): Fraction(1)},
    )


# -- total classes and Whitney products -------------------------------------------


def test_total_chern_projective_plane():
    ring = projective_space_ring(2)
    h = ring.graded("h")
    tangent = BundleData(ring, 2, (3 * h, 3 * h ** 2))
    assert total_chern(tangent) == (1 + h) ** 3


def test_total_chern_rank_zero():
    ring = projective_space_ring(2)
    assert total_chern(trivial_bundle(ring, 0)) == 1


def test_whitney_trivial_sum():
    ring = projective_space_ring(2)
    result = whitney_product(trivial_bundle(ring, 1), trivial_bundle(ring, 1))
    assert result.rank == 2
    assert all(c.is_zero for c in result.chern)


def test_whitney_tangents_of_p1xp1():
    ring = p1_times_p1()
    eta1, eta2 = ring.graded("eta1"), ring.graded("eta2")
    result = whitney_product(line_bundle(ring, 2 * eta1), line_bundle(ring, 2 * eta2))
    # oracle: direct polynomial multiplication of the total classes
    raw = Poly(ring.names, {(0, 0): 1, (1, 0): 2}) * Poly(ring.names, {(0, 0): 1, (0, 1): 2})
    expected = GradedClass.from_poly(ring, raw)
    assert total_chern(result) == expected
    assert result.chern[0] == 2 * eta1 + 2 * eta2
    assert result.chern[1] == 4 * eta1 * eta2


def test_whitney_three_factor_split_bundle():
    m = 3
    ring = triple_product_ring(m)
    eta1, eta2, h = ring.graded("eta1"), ring.graded("eta2"), ring.graded("h")
    factors = whitney_product(
        whitney_product(line_bundle(ring, 2 * eta1), line_bundle(ring, 2 * eta2)),
        bundle_from_total(ring, m, (1 + h) ** m),
    )
    assert factors == bundle_from_total(ring, m + 2, (1 + 2 * eta1) * (1 + 2 * eta2) * (1 + h) ** m)


def test_whitney_identity_with_rank_zero():
    ring = projective_space_ring(2)
    bundle = line_bundle(ring, 3 * ring.graded("h"))
    assert whitney_product(bundle, trivial_bundle(ring, 0)) == bundle


def test_whitney_consistency_100_random_pairs():
    ring = resolved_cone_ring(2)
    rng = random.Random(31)
    for _ in range(100):
        e = random_bundle(ring, rng, rng.randint(0, 3))
        f = random_bundle(ring, rng, rng.randint(0, 3))
        assert total_chern(whitney_product(e, f)) == total_chern(e) * total_chern(f)


def test_whitney_ring_mismatch():
    with pytest.raises(RingMismatchError):
        whitney_product(
            trivial_bundle(projective_space_ring(2), 1),
            trivial_bundle(projective_space_ring(3), 1),
        )


def test_bundle_data_validates_homogeneity():
    ring = projective_space_ring(2)
    h = ring.graded("h")
    with pytest.raises(ValueError):
        BundleData(ring, 1, (1 + h,))
    with pytest.raises(ValueError):
        BundleData(ring, 2, (h,))


# -- logarithmic twist ---------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4])
def test_log_chern_projective_space(m):
    ring = projective_space_ring(m)
    h = ring.graded("h")
    tangent = bundle_from_total(ring, m, (1 + h) ** (m + 1))
    twisted = log_chern(tangent, [h])
    assert total_chern(twisted) == (1 + h) ** m


def test_log_chern_empty_divisors_is_identity():
    ring = resolved_cone_ring(2)
    rng = random.Random(4)
    bundle = random_bundle(ring, rng, 3)
    assert log_chern(bundle, []) == bundle


def test_log_chern_resolved_cone_top_class():
    for k in (2, 3, 5):
        ring = resolved_cone_ring(k)
        h, xi = ring.graded("h"), ring.graded("xi")
        boundary = xi - k * h
        tangent = BundleData(
            ring,
            3,
            (
                2 * boundary + (k + 3) * h,
                6 * h * boundary + 3 * (k + 1) * h ** 2,
                6 * h ** 2 * boundary,
            ),
        )
        twisted = log_chern(tangent, [boundary])
        assert twisted.chern[2].integrate() == 3


def test_intersection_numbers_of_resolved_cone():
    for k in (2, 3, 5):
        ring = resolved_cone_ring(k)
        h, xi = ring.graded("h"), ring.graded("xi")
        boundary = xi - k * h
        c1 = 2 * boundary + (k + 3) * h
        c2 = 6 * h * boundary + 3 * (k + 1) * h ** 2
        c3 = 6 * h ** 2 * boundary
        assert c3.integrate() == 6
        assert (c2 * boundary).integrate() == 3 - 3 * k
        assert (c1 * boundary ** 2).integrate() == k * (k - 3)
        assert (boundary ** 3).integrate() == k ** 2


# -- eigenvalue shifts ------------------------------------------------------------------


def test_shift_by_zero_is_identity():
    ring = resolved_cone_ring(2)
    rng = random.Random(8)
    bundle = random_bundle(ring, rng, 3)
    shifted = shift_block(0, bundle)
    assert shifted.coefficients[0] == 1
    for i in range(1, 4):
        assert shifted.coefficients[i] == bundle.chern[i - 1]


def test_shift_trivial_rank_two():
    ring = projective_space_ring(2)
    shifted = shift_block(1, trivial_bundle(ring, 2))
    assert [c.degree_zero() for c in shifted.coefficients] == [1, 2, 1]


def test_shift_line_bundle():
    ring = projective_space_ring(2)
    y = ring.graded("h")
    lam = Fraction(3, 2)
    shifted = shift_block(lam, line_bundle(ring, y))
    assert shifted.coefficients[1] == ring.const(lam) + y


def test_shift_composition_law():
    ring = resolved_cone_ring(2)
    rng = random.Random(17)
    for _ in range(20):
        rank = rng.randint(1, 4)
        bundle = random_bundle(ring, rng, rank)
        lam, mu = random_fraction(rng), random_fraction(rng)
        once = shift_coefficients(lam + mu, rank, bundle.chern, ring)
        twice = shift_coefficients(
            mu, rank, shift_coefficients(lam, rank, bundle.chern, ring)[1:], ring
        )
        assert once == twice


# -- block products and determinants ---------------------------------------------------


def test_block_product_single_block():
    ring = projective_space_ring(2)
    block = shift_block(2, trivial_bundle(ring, 2))
    assert block_product([block]) == block


def test_block_product_two_lines():
    ring = projective_space_ring(2)
    lam1, lam2 = Fraction(2), Fraction(-3)
    prod = block_product(
        [shift_block(lam1, trivial_bundle(ring, 1)), shift_block(lam2, trivial_bundle(ring, 1))]
    )
    assert prod.coefficients[2] == ring.const(lam1 * lam2)
    assert prod.coefficients[1] == ring.const(lam1 + lam2)


def test_block_product_point_blocks():
    # eigenvalues a-b, a-b, c-kb at the isolated point with (a,b,c,k)=(1,2,7,2)
    from logbott.catalog import point_ring

    ring = point_ring()
    blocks = [
        shift_block(Fraction(-1), trivial_bundle(ring, 1)),
        shift_block(Fraction(-1), trivial_bundle(ring, 1)),
        shift_block(Fraction(3), trivial_bundle(ring, 1)),
    ]
    top = block_product(blocks).coefficients[3]
    assert top.degree_zero() == Fraction(3)  # (-1)^2 * 3, by direct product


def test_block_product_ring_mismatch():
    with pytest.raises(RingMismatchError):
        block_product(
            [
                shift_block(1, trivial_bundle(projective_space_ring(1), 1)),
                shift_block(1, trivial_bundle(projective_space_ring(2), 1)),
            ]
        )


def test_equivariant_det_trivial_normal_bundle():
    ring = projective_space_ring(2)
    det = equivariant_det([(1, trivial_bundle(ring, 1)), (1, trivial_bundle(ring, 1))])
    assert det == 1
    assert det.invert_unit() == 1


def test_equivariant_det_curve_blocks():
    ring = projective_space_ring(1)
    # eigenvalues b-a=1 and c-ka=5 for (a,b,c,k)=(1,2,7,2); oracle 1*5
    det = equivariant_det([(1, trivial_bundle(ring, 1)), (5, trivial_bundle(ring, 1))])
    assert det == 5


def test_equivariant_det_rejects_zero_eigenvalue():
    ring = projective_space_ring(1)
    with pytest.raises(NondegeneracyError):
        equivariant_det([(0, trivial_bundle(ring, 1))])


def test_equivariant_det_degree_zero_part():
    ring = resolved_cone_ring(2)
    rng = random.Random(23)
    for _ in range(20):
        blocks = []
        expected = Fraction(1)
        for _ in range(rng.randint(1, 3)):
            lam = Fraction(0)
            while lam == 0:
                lam = random_fraction(rng)
            rank = rng.randint(1, 2)
            blocks.append((lam, random_bundle(ring, rng, rank)))
            expected *= lam ** rank
        assert equivariant_det(blocks).degree_zero() == expected


# -- invariant polynomials -----------------------------------------------------------------


def test_evaluate_phi_top_chern_on_tangent_line():
    ring = projective_space_ring(1)
    eta = ring.graded("h")
    shifted = shift_block(0, line_bundle(ring, 2 * eta))
    assert evaluate_phi(InvariantPolySpec.top_chern(), shifted) == 2 * eta


def test_evaluate_phi_monomial_on_shifted_line():
    ring = projective_space_ring(1)
    y = ring.graded("h")
    lam = Fraction(5)
    shifted = shift_block(lam, line_bundle(ring, y))
    phi = InvariantPolySpec.chern_monomial([(1, 1)])
    assert evaluate_phi(phi, shifted) == ring.const(lam) + y


def test_evaluate_phi_degree_mismatch():
    ring = projective_space_ring(2)
    shifted = shift_block(0, trivial_bundle(ring, 2))
    with pytest.raises(ValueError):
        evaluate_phi(InvariantPolySpec.chern_monomial([(1, 1)]), shifted)


def test_evaluate_phi_split_component_numerator():
    # kernel (1+h)^m with shift 0, two trivial normal lines with shifts 1
    m = 3
    ring = projective_space_ring(m)
    h = ring.graded("h")
    kernel = bundle_from_total(ring, m, (1 + h) ** m)
    blocks = [
        shift_block(0, kernel),
        shift_block(1, trivial_bundle(ring, 1)),
        shift_block(1, trivial_bundle(ring, 1)),
    ]
    top = evaluate_phi(InvariantPolySpec.top_chern(), block_product(blocks))
    assert top == h ** m


def test_invariant_spec_validation():
    with pytest.raises(ValueError):
        InvariantPolySpec.chern_monomial([(0, 1)])
    with pytest.raises(ValueError):
        InvariantPolySpec.chern_monomial([(1, 1), (1, 2)])
    spec = InvariantPolySpec.chern_monomial([(2, 1), (1, 2)])
    assert spec.weighted_degree() == 4
    assert spec.describe() == "c1^2*c2"
    assert InvariantPolySpec.top_chern().describe() == "top_chern"
