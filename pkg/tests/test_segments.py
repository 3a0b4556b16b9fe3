from __future__ import annotations

import random

import pytest
from sympy import I, Rational, symbols

from affine_schur.combinatorics import dual_partition, partitions
from affine_schur.segments import (
    OmegaPoint,
    Segment,
    SegmentMultiset,
    ambient_partition,
    c_blocks,
    c_shapes,
    m_indices,
    phi,
    phi_inverse,
    points_close,
    random_segments,
    shape,
    validate_c,
    validate_omega,
)

a1, a2, a3 = symbols("a1 a2 a3")


def test_worked_conversions():
    s = SegmentMultiset([(a1, 3), (a2, 2), (a3, 1)])
    assert phi(s, 3) == OmegaPoint((3, 2, 1), (a1, a2, a3))
    t = SegmentMultiset([(a1, 3), (a2, 3), (a3, 1)])
    assert phi(t, 3) == OmegaPoint((3, 2, 2), (a1 + a2, a1 * a2, a3))


def test_worked_inversions():
    b = OmegaPoint((3, 2, 2), (Rational(5), Rational(6), Rational(7)))
    assert phi_inverse(b, 3) == SegmentMultiset([(2, 3), (3, 3), (7, 1)])
    b = OmegaPoint((3, 2, 1), (Rational(2), Rational(-1, 2), Rational(9)))
    assert phi_inverse(b, 3) == SegmentMultiset([(2, 3), (Rational(-1, 2), 2), (9, 1)])


def test_shape_and_blocks():
    s = SegmentMultiset([(1, 1), (2, 3), (5, 2)])
    assert shape(s) == (3, 2, 1)
    assert shape(SegmentMultiset([(4, 5)])) == (5,)
    blocks = dict(c_blocks(3, 7))
    assert blocks[(4, 2, 1)] is True
    assert blocks[(3, 3, 1)] is False
    assert dual_partition((4, 2, 1)) == (3, 2, 1, 1)
    assert (3, 2, 1, 1) not in partitions(3, 7)


def test_c_shapes_literal_definition():
    # any number of parts, each at most n
    shapes = c_shapes(2, 4)
    assert shapes == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert all(s[0] <= 2 for s in shapes)


def test_validate_c():
    s = SegmentMultiset([(1, 3), (2, 1)])
    assert validate_c(s, 3, 4)
    assert not validate_c(s, 2, 4)
    assert not validate_c(s, 3, 5)
    with pytest.raises(ValueError):
        phi(s, 2)


def test_validate_omega():
    assert m_indices((3, 2, 2)) == [1, 1, 3]
    assert validate_omega((1, 0, 2), (3, 2, 2))
    assert not validate_omega((0, 1, 2), (3, 2, 2))
    assert not validate_omega((1, 2), (3, 2, 2))
    assert validate_omega((1, 1, 1, 1), (4, 0, 0))


def test_segment_validation():
    with pytest.raises(ValueError):
        Segment(0, 2)
    with pytest.raises(ValueError):
        Segment(1, 0)
    with pytest.raises(ValueError):
        SegmentMultiset([])


def test_single_segment():
    b = phi(SegmentMultiset([(Rational(3, 2), 3)]), 4)
    assert b.ambient == (1, 1, 1, 0) and b.coords == (Rational(3, 2),)
    assert b.in_omega()


def test_phi_satisfies_omega_for_positive_values():
    rng = random.Random(5)
    for _ in range(500):
        r = rng.randint(1, 8)
        n = rng.randint(1, r)
        s = random_segments(rng, n, r, positive=True)
        b = phi(s, n)
        assert b.ambient == ambient_partition(shape(s), n)
        assert b.in_omega()


def test_phi_can_leave_omega_with_cancelling_values():
    # documented conflict: longest group first puts e_1 = a1 + a2 in a slot that must be nonzero
    b = phi(SegmentMultiset([(1, 3), (-1, 3), (2, 1)]), 3)
    assert b.coords == (0, -1, 2)
    assert not b.in_omega()
    # the map is still invertible on this point
    assert phi_inverse(b, 3) == SegmentMultiset([(1, 3), (-1, 3), (2, 1)])


def test_round_trip_rational():
    rng = random.Random(7)
    for _ in range(200):
        r = rng.randint(1, 8)
        n = rng.randint(1, r)
        s = random_segments(rng, n, r)
        assert phi_inverse(phi(s, n), n) == s


def test_round_trip_gaussian():
    rng = random.Random(8)
    for _ in range(40):
        r = rng.randint(1, 6)
        n = rng.randint(1, r)
        s = random_segments(rng, n, r, gaussian=True)
        b = phi(s, n)
        back = phi_inverse(b, n)
        assert back == s
        assert points_close(phi(back, n), b)


def test_irrational_roots_within_tolerance():
    b = OmegaPoint((2, 2, 0), (Rational(1), Rational(1)))  # x^2 - x + 1
    s = phi_inverse(b, 3)
    assert points_close(phi(s, 3), b)
    assert all(seg.length == 2 for seg in s.segments)


def test_phi_injective_on_samples():
    rng = random.Random(9)
    seen = {}
    for _ in range(300):
        s = random_segments(rng, 3, rng.randint(1, 5))
        b = phi(s, 3)
        if b in seen:
            assert seen[b] == s
        seen[b] = s


def test_phi_inverse_errors():
    with pytest.raises(ValueError):
        phi_inverse(OmegaPoint((2, 1, 0), (1, 0)), 3)  # a zero product slot
    with pytest.raises(ValueError):
        phi_inverse(OmegaPoint((2, 1, 0), (1, 2)), 2)  # wrong n
    with pytest.raises(ValueError):
        OmegaPoint((3, 1), (1, 2))


def test_json_round_trip():
    s = SegmentMultiset([(Rational(1, 2) + I, 2), (3, 1)])
    assert SegmentMultiset.from_json(s.to_json()) == s
    b = phi(s, 2)
    assert OmegaPoint.from_json(b.to_json()) == b
