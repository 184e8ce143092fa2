"""Group law and sampled verification of the degree-8 fiberwise isogeny."""

from __future__ import annotations

import random

import pytest

from noncong.finitefield import PrimeField, QuadExt
from noncong.isogeny import (
    Curve,
    _into,
    _random_point,
    _random_t,
    a_prime_map,
    curve_points_at_x,
    e8_curve,
    e8_quotient_curve,
    isogeny_sample_check,
    kernel_x_values,
    psi_1,
    psi_2,
    psi_3,
)

SAMPLE_PRIMES = (13, 17, 29)


def _setup(p, seed=1):
    field = PrimeField(p)
    rng = random.Random(seed)
    t = _random_t(field, rng)
    return field, rng, t


# -- group law -------------------------------------------------------------

def test_addition_closes_and_has_identity():
    field, rng, t = _setup(29)
    curve = e8_curve(t)
    for _ in range(25):
        p1 = _random_point(t, rng)
        p2 = _random_point(t, rng)
        s = curve.add(p1, p2)
        assert curve.contains(s)
        assert curve.add(p1, None) == p1
        assert curve.add(None, p2) == p2


def test_negation_and_inverse():
    field, rng, t = _setup(17)
    curve = e8_curve(t)
    for _ in range(20):
        p1 = _random_point(t, rng)
        n = curve.neg(p1)
        assert curve.contains(n)
        assert curve.add(p1, n) is None


def test_addition_is_associative_on_samples():
    field, rng, t = _setup(13)
    curve = e8_curve(t)
    for _ in range(15):
        pts = [_random_point(t, rng) for _ in range(3)]
        left = curve.add(curve.add(pts[0], pts[1]), pts[2])
        right = curve.add(pts[0], curve.add(pts[1], pts[2]))
        assert left == right


def test_doubling_matches_repeated_addition():
    field, rng, t = _setup(29, seed=3)
    curve = e8_curve(t)
    p1 = _random_point(t, rng)
    twice = curve.add(p1, p1)
    assert curve.contains(twice)
    four_a = curve.add(twice, twice)
    four_b = curve.add(p1, curve.add(p1, twice))
    assert four_a == four_b


def test_discriminant_flags_singular_parameters():
    field = PrimeField(13)
    # t = 0 gives y^2 + 4xy = x^3, a singular cubic
    assert not e8_curve(field.elem(0)).discriminant()


# -- the stage maps --------------------------------------------------------

def test_psi_chain_lands_on_quotient_curve():
    checked = 0
    for p in SAMPLE_PRIMES:
        field, rng, _ = _setup(p, seed=5)
        for _ in range(12):
            t = _random_t(field, rng)
            point = _random_point(t, rng)
            mid = psi_3(t, psi_2(t, psi_1(t, point)))
            if mid is None:
                continue  # point sat inside the order-8 kernel
            assert e8_quotient_curve(t).contains(mid)
            checked += 1
    assert checked >= 10


def test_composite_image_lies_on_target_curve():
    field, rng, _ = _setup(29, seed=11)
    i_unit = field.elem(-1).sqrt()
    seen = 0
    for _ in range(30):
        t = _random_t(field, rng)
        point = _random_point(t, rng)
        image = a_prime_map(t, i_unit, point)
        if image is None:
            continue
        assert e8_curve((1 - t) / (1 + t)).contains(image)
        seen += 1
    assert seen >= 10


def test_identity_maps_to_identity():
    field, rng, t = _setup(13)
    i_unit = field.elem(-1).sqrt()
    assert a_prime_map(t, i_unit, None) is None


def test_two_torsion_kernel_branch_collapses():
    field, rng, t = _setup(17, seed=2)
    i_unit = field.elem(-1).sqrt()
    # (x, y) = (-t^2, 0) and the two points over x = 0
    for point in ((-t * t, t - t), (t - t, t - t), (t - t, -4 * t * t)):
        assert e8_curve(t).contains(point)
        assert a_prime_map(t, i_unit, point) is None


def test_full_kernel_maps_to_identity_over_extensions():
    field, rng, t = _setup(13, seed=4)
    i_unit = field.elem(-1).sqrt()
    base_roots, ext_roots = kernel_x_values(t)
    affine = 0
    for x in base_roots + ext_roots:
        for point in curve_points_at_x(t, x):
            f = point[0].field
            tt, ii = _into(t, f), _into(i_unit, f)
            assert e8_curve(tt).contains(point)
            assert a_prime_map(tt, ii, point) is None
            affine += 1
    # a cyclic group of order 8: one 2-torsion point, then 2 + 4 higher-order
    # points in conjugate pairs
    assert affine == 7


def test_nonkernel_x_does_not_collapse():
    field, rng, t = _setup(29, seed=9)
    i_unit = field.elem(-1).sqrt()
    for _ in range(40):
        point = _random_point(t, rng)
        x = point[0]
        in_kernel = (x * x - 4 * t * x - 4 * t**3) * (x + t * t) * x == 0
        image = a_prime_map(t, i_unit, point)
        assert (image is None) == in_kernel


# -- sampling verdicts -----------------------------------------------------

@pytest.mark.parametrize("p", SAMPLE_PRIMES)
def test_sample_check_passes(p):
    verdict = isogeny_sample_check(p, trials=40, pairs=20, seed=0)
    assert verdict.ok, verdict.failures[:3]
    assert verdict.kernel_points == 21  # 7 affine points at each of 3 parameters


def test_sample_check_is_deterministic():
    a = isogeny_sample_check(13, trials=10, pairs=5, seed=42)
    b = isogeny_sample_check(13, trials=10, pairs=5, seed=42)
    assert a == b


def test_sample_check_rejects_inert_i():
    with pytest.raises(ValueError, match="1 mod 4"):
        isogeny_sample_check(19)


def test_into_requires_tower_path():
    f1, f2 = PrimeField(13), PrimeField(17)
    with pytest.raises(ValueError, match="tower"):
        _into(f1.elem(1), f2)


def test_additivity_through_the_map():
    field, rng, _ = _setup(17, seed=21)
    i_unit = field.elem(-1).sqrt()
    checked = 0
    for _ in range(25):
        t = _random_t(field, rng)
        source = e8_curve(t)
        target = e8_curve((1 - t) / (1 + t))
        p1, p2 = _random_point(t, rng), _random_point(t, rng)
        lhs = a_prime_map(t, i_unit, source.add(p1, p2))
        rhs = target.add(a_prime_map(t, i_unit, p1), a_prime_map(t, i_unit, p2))
        assert lhs == rhs
        checked += 1
    assert checked == 25
