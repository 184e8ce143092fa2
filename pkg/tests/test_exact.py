"""Unit tests for the cyclotomic arithmetic kernel."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noncong.exact import (
    CycloElem,
    CycloTowerElem,
    NotInSubfieldError,
    Poly,
    from_quad,
    quad_coords,
    root_of_unity,
    sqrt_embed,
)

SUPPORTED_D = (-1, 2, 3, -2, -3, 6, -6)


def small_rational():
    return st.fractions(
        min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6
    )


cyclo_elems = st.builds(
    lambda cs: CycloElem(tuple(cs)),
    st.lists(small_rational(), min_size=8, max_size=8),
)


@settings(max_examples=120, deadline=None)
@given(cyclo_elems, cyclo_elems, cyclo_elems)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == CycloElem.from_rational(0)


@settings(max_examples=120, deadline=None)
@given(cyclo_elems, cyclo_elems)
def test_conj_ring_homomorphism(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@settings(max_examples=60, deadline=None)
@given(cyclo_elems)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert a * a.inv() == CycloElem.from_rational(1)


def test_zeta_generates_order_24():
    z = CycloElem.zeta_power(1)
    powers = set()
    w = CycloElem.from_rational(1)
    for _ in range(24):
        powers.add(w)
        w = w * z
    assert w == CycloElem.from_rational(1)
    assert len(powers) == 24


def test_conj_inverts_roots_of_unity():
    for k in range(24):
        z = CycloElem.zeta_power(k)
        assert z.conj() == CycloElem.zeta_power(-k)
        assert z * z.conj() == CycloElem.from_rational(1)


@pytest.mark.parametrize("d", SUPPORTED_D)
def test_sqrt_embed_squares_to_d(d):
    s = sqrt_embed(d)
    assert s * s == CycloElem.from_rational(d)


@pytest.mark.parametrize("d", SUPPORTED_D)
def test_sqrt_embed_principal_branch(d):
    # numerically the chosen root is the principal one
    want = cmath.sqrt(d)
    got = sqrt_embed(d).to_complex()
    assert abs(got - want) < 1e-12


def test_sqrt_embed_rejects_unknown():
    with pytest.raises(ValueError):
        sqrt_embed(5)


def test_root_of_unity_orders():
    i = root_of_unity(6)
    assert i * i == CycloElem.from_rational(-1)
    omega6 = root_of_unity(4)
    w = CycloElem.from_rational(1)
    seen = []
    for _ in range(6):
        w = w * omega6
        seen.append(w)
    assert seen[-1] == CycloElem.from_rational(1)
    assert len(set(seen)) == 6
    # exp(2 pi i / 6) = (1 + sqrt(-3)) / 2
    assert omega6 + omega6 == CycloElem.from_rational(1) + sqrt_embed(-3)


@pytest.mark.parametrize("d", SUPPORTED_D)
def test_quad_coords_roundtrip(d):
    x = from_quad(Fraction(1, 2), Fraction(-7, 3), d)
    assert quad_coords(x, d) == (Fraction(1, 2), Fraction(-7, 3))


def test_quad_coords_rejects_outside_subfield():
    z = CycloElem.zeta_power(1)
    with pytest.raises(NotInSubfieldError):
        quad_coords(z, -3)


def test_quad_coords_rational_case():
    x = CycloElem.from_rational(Fraction(9, 4))
    assert quad_coords(x, -6) == (Fraction(9, 4), Fraction(0))


def test_tower_cube_root_of_two():
    y = CycloTowerElem.cbrt2()
    assert y * y * y == 2
    assert abs(y.to_complex() - 2 ** (1 / 3)) < 1e-12


def test_tower_inverse():
    y = CycloTowerElem.cbrt2()
    x = y * y + y - root_of_unity(6)
    assert x * x.inv() == 1


def test_tower_mixed_scalars():
    y = CycloTowerElem.cbrt2()
    assert y * 2 == y + y
    assert (y + Fraction(1, 2)) - Fraction(1, 2) == y


def test_poly_product_and_eval():
    one = CycloElem.from_rational(1)
    a = sqrt_embed(2)
    b = sqrt_embed(-3)
    pa = Poly([-a, one])  # X - sqrt(2)
    pb = Poly([-b, one])  # X - sqrt(-3)
    prod = pa * pb
    assert prod.degree == 2
    assert prod.coeff(1) == -(a + b)
    assert prod.coeff(0) == a * b
    assert prod(a).is_zero()
    assert prod(b).is_zero()


def test_poly_conj_matches_coefficientwise():
    one = CycloElem.from_rational(1)
    p = Poly([sqrt_embed(-6), sqrt_embed(2), one])
    q = p.conj()
    assert q.coeff(0) == sqrt_embed(-6).conj()
    assert q.coeff(1) == sqrt_embed(2)  # real coefficient unchanged
    assert q.coeff(2) == one


def test_poly_normalizes_trailing_zeros():
    zero = CycloElem.from_rational(0)
    one = CycloElem.from_rational(1)
    p = Poly([one, zero, zero])
    assert p.degree == 0
    assert Poly([zero]).degree == -1
