"""Graded quotient rings: normal forms, inversion, integration."""

import random
from fractions import Fraction

import pytest

from logbott.catalog import projective_space_ring, resolved_cone_ring
from logbott.errors import IncompleteTableError, NonUnitError, PresentationError
from logbott.poly import Poly
from logbott.ring import (
    GradedClass,
    RingPresentation,
    homogeneous_part,
    integrate,
    invert_unit,
    normal_form,
)

from _util import random_class, random_fraction, random_poly, random_unit


def dual_numbers(name="w"):
    return RingPresentation(
        generators=[(name, 2)],
        rules=[((2,), {})],
        top_degree=2,
        integration_table={(1,): Fraction(1)},
    )


# -- normal_form -------------------------------------------------------------


def test_normal_form_substitution_rule():
    ring = resolved_cone_ring(2)
    xi_sq = Poly(ring.names, {(2, 0): 1})
    assert ring.normal_form(xi_sq) == Poly(ring.names, {(1, 1): 2})


def test_normal_form_power_truncation():
    ring = resolved_cone_ring(2)
    h_cubed = Poly(ring.names, {(0, 3): 1})
    assert ring.normal_form(h_cubed).is_zero


def test_normal_form_fixes_irreducible():
    ring = resolved_cone_ring(3)
    q = Poly(ring.names, {(1, 2): Fraction(5, 3), (0, 1): -2})
    assert ring.normal_form(q) == q


def test_normal_form_idempotent_and_multiplicative():
    ring = resolved_cone_ring(2)
    rng = random.Random(11)
    for _ in range(30):
        a = random_poly(ring, rng)
        b = random_poly(ring, rng)
        nf = ring.normal_form
        assert nf(nf(a)) == nf(a)
        assert nf(a * b) == nf(nf(a) * nf(b))


def test_normal_form_rejects_foreign_variables():
    ring = resolved_cone_ring(2)
    with pytest.raises(ValueError):
        normal_form(Poly(("z",), {(1,): 1}), ring)


# -- presentation validation ----------------------------------------------------


def test_rule_must_be_homogeneous():
    with pytest.raises(PresentationError):
        RingPresentation(
            generators=[("x", 2)],
            rules=[((2,), {(1,): Fraction(1)})],
            top_degree=4,
            integration_table={},
        )


def test_rule_must_decrease():
    # x^2 -> y^2 increases in lex order when y is declared first
    with pytest.raises(PresentationError):
        RingPresentation(
            generators=[("y", 2), ("x", 2)],
            rules=[((0, 2), {(2, 0): Fraction(1)})],
            top_degree=4,
            integration_table={},
        )


def test_confluence_failure_is_detected():
    # x^2 -> y^2 and x*y -> 0 leave the critical pair x^2*y unjoined
    with pytest.raises(PresentationError, match="confluent"):
        RingPresentation(
            generators=[("x", 2), ("y", 2)],
            rules=[
                ((2, 0), {(0, 2): Fraction(1)}),
                ((1, 1), {}),
            ],
            top_degree=8,
            integration_table={},
        )


def test_table_keys_must_be_normal_and_top_degree():
    with pytest.raises(PresentationError, match="normal form"):
        RingPresentation(
            generators=[("x", 2), ("y", 2)],
            rules=[((2, 0), {(1, 1): Fraction(1)})],
            top_degree=4,
            integration_table={(2, 0): Fraction(1)},
        )
    with pytest.raises(PresentationError, match="degree"):
        RingPresentation(
            generators=[("h", 2)],
            rules=[((3,), {})],
            top_degree=4,
            integration_table={(1,): Fraction(1)},
        )


def test_odd_degree_generator_rejected():
    with pytest.raises(PresentationError):
        RingPresentation([("t", 1)], [], 2, {})


# -- homogeneous_part ---------------------------------------------------------


def test_homogeneous_part_picks_degrees():
    ring = projective_space_ring(2)
    h = ring.graded("h")
    x = 3 + h + h ** 2
    assert homogeneous_part(x, 2) == h
    assert homogeneous_part(x, 0) == ring.const(3)
    assert homogeneous_part(x, 4) == h ** 2


def test_homogeneous_part_above_top_degree_is_zero():
    ring = projective_space_ring(2)
    x = 1 + ring.graded("h")
    assert homogeneous_part(x, 6).is_zero
    assert homogeneous_part(x, 100).is_zero


def test_homogeneous_part_rejects_odd_or_negative():
    ring = projective_space_ring(2)
    x = ring.one()
    with pytest.raises(ValueError):
        homogeneous_part(x, 3)
    with pytest.raises(ValueError):
        homogeneous_part(x, -2)


def test_homogeneous_decomposition_reassembles():
    ring = resolved_cone_ring(2)
    rng = random.Random(5)
    for _ in range(20):
        x = random_class(ring, rng)
        total = ring.zero()
        for d in range(0, ring.top_degree + 1, 2):
            total = total + x.homogeneous_part(d)
        assert total == x


# -- invert_unit ------------------------------------------------------------------


def test_invert_dual_number():
    ring = dual_numbers()
    w = ring.graded("w")
    inv = invert_unit(2 + w)
    assert inv == ring.const(Fraction(1, 2)) - Fraction(1, 4) * w
    assert (2 + w) * inv == 1


def test_invert_geometric_series():
    ring = projective_space_ring(3)
    h = ring.graded("h")
    assert invert_unit(1 + h) == 1 - h + h ** 2 - h ** 3


def test_invert_constant_one():
    ring = projective_space_ring(2)
    assert invert_unit(ring.one()) == 1


def test_invert_requires_unit():
    ring = projective_space_ring(2)
    with pytest.raises(NonUnitError):
        invert_unit(ring.graded("h"))
    with pytest.raises(NonUnitError):
        invert_unit(ring.zero())


def test_invert_round_trip_200_random_units():
    rings = [resolved_cone_ring(2), projective_space_ring(3)]
    rng = random.Random(2024)
    for i in range(200):
        ring = rings[i % 2]
        x = random_unit(ring, rng)
        assert x * invert_unit(x) == 1


# -- integrate -----------------------------------------------------------------------


def test_integrate_resolved_cone_numbers():
    for k in (2, 3, 5):
        ring = resolved_cone_ring(k)
        h, xi = ring.graded("h"), ring.graded("xi")
        assert integrate(h ** 2 * xi) == 1
        boundary = xi - k * h
        assert integrate(h ** 2 * boundary) == 1
        assert integrate(boundary ** 3) == k ** 2


def test_integrate_projective_normalization():
    for m in (1, 2, 4):
        ring = projective_space_ring(m)
        assert integrate(ring.graded("h") ** m) == 1


def test_integrate_ignores_lower_degrees():
    ring = projective_space_ring(2)
    h = ring.graded("h")
    assert integrate(3 + h + 5 * h ** 2) == 5


def test_integrate_is_linear():
    ring = resolved_cone_ring(2)
    rng = random.Random(7)
    for _ in range(25):
        x, y = random_class(ring, rng), random_class(ring, rng)
        alpha, beta = random_fraction(rng), random_fraction(rng)
        assert integrate(alpha * x + beta * y) == alpha * integrate(x) + beta * integrate(y)


def test_integrate_missing_monomial_errors():
    ring = RingPresentation(
        generators=[("a", 2), ("b", 2)],
        rules=[((3, 0), {}), ((0, 3), {})],
        top_degree=4,
        integration_table={(2, 0): Fraction(1)},
    )
    a, b = ring.graded("a"), ring.graded("b")
    assert integrate(a ** 2) == 1
    with pytest.raises(IncompleteTableError):
        integrate(a * b)


# -- ring laws on classes -----------------------------------------------------


def test_class_ring_laws_random():
    ring = resolved_cone_ring(3)
    rng = random.Random(99)
    for _ in range(50):
        x, y, z = (random_class(ring, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x + y) - y == x


def test_truncation_above_top_degree_is_silent():
    ring = projective_space_ring(1)
    h = ring.graded("h")
    assert (h * h).is_zero
    assert GradedClass.from_poly(ring, Poly(ring.names, {(5,): 1})).is_zero


def test_point_ring_constants():
    ring = RingPresentation((), (), 0, {(): Fraction(1)})
    x = ring.const(Fraction(7, 2))
    assert integrate(x) == Fraction(7, 2)
    assert invert_unit(x) == ring.const(Fraction(2, 7))
