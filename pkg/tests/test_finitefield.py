import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noncong.finitefield import FieldElem, PrimeField, QuadExt, lift, sqrt_or_extend

PRIMES = (5, 7, 11, 13, 17, 19, 29, 41, 97)


@given(
    p=st.sampled_from(PRIMES),
    a=st.integers(-200, 200),
    b=st.integers(-200, 200),
    c=st.integers(-200, 200),
)
@settings(max_examples=150, deadline=None)
def test_prime_field_ring_axioms(p, a, b, c):
    F = PrimeField(p)
    x, y, z = F.elem(a), F.elem(b), F.elem(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x - x == F.elem(0)


@given(p=st.sampled_from(PRIMES), a=st.integers(1, 10**6))
@settings(max_examples=100, deadline=None)
def test_prime_field_inverse_and_fermat(p, a):
    F = PrimeField(p)
    x = F.elem(a)
    if not x:
        return
    assert x * (1 / x) == F.elem(1)
    assert x ** (p - 1) == F.elem(1)


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_exhaustive(p):
    # 17 and 97 are 1 mod 16, deep into the Tonelli-Shanks loop
    F = PrimeField(p)
    squares = {(x * x) % p for x in range(p)}
    for raw in range(p):
        x = F.elem(raw)
        assert x.is_square() == (raw in squares)
        r = x.sqrt()
        if raw in squares:
            assert r is not None and r * r == x
        else:
            assert r is None


def test_nonresidue_is_not_a_square():
    for p in PRIMES:
        F = PrimeField(p)
        assert not F.elem(F.nonresidue()).is_square()


@pytest.mark.parametrize("p", (5, 7, 13))
def test_quad_ext_field_axioms_exhaustive(p):
    F = PrimeField(p)
    K = QuadExt(F, F.nonresidue())
    assert K.size == p * p
    one = K.elem(1)
    elems = [FieldElem(K, raw) for raw in K.iter_raw()]
    assert len(elems) == p * p
    for x in elems:
        if not x:
            continue
        assert x * (1 / x) == one
        assert x ** (K.size - 1) == one


@pytest.mark.parametrize("p", (7, 11, 13, 17))
def test_quad_ext_sqrt_roundtrip(p):
    F = PrimeField(p)
    K = QuadExt(F, F.nonresidue())
    n_squares = 0
    for raw in K.iter_raw():
        x = FieldElem(K, raw)
        r = x.sqrt()
        assert x.is_square() == (r is not None)
        if r is not None:
            n_squares += 1
            assert r * r == x
    # squares of F_{p^2}^* form the index-2 subgroup, plus zero
    assert n_squares == (p * p - 1) // 2 + 1


def test_lift_is_a_field_embedding():
    F = PrimeField(13)
    K = QuadExt(F, F.nonresidue())
    for a in range(13):
        for b in range(13):
            x, y = F.elem(a), F.elem(b)
            assert lift(x, K) + lift(y, K) == lift(x + y, K)
            assert lift(x, K) * lift(y, K) == lift(x * y, K)


@pytest.mark.parametrize("p", (11, 13, 29))
def test_sqrt_or_extend(p):
    F = PrimeField(p)
    for raw in range(1, p):
        x = F.elem(raw)
        r = sqrt_or_extend(x)
        if x.is_square():
            assert r.field is F
            assert r * r == x
        else:
            assert r.field is not F
            assert r * r == lift(x, r.field)


def test_extension_tower_reaches_fourth_degree():
    # a nonsquare of F_{p^2} extends again; the tower multiplies sizes
    F = PrimeField(7)
    K = QuadExt(F, F.nonresidue())
    for raw in K.iter_raw():
        x = FieldElem(K, raw)
        if x and not x.is_square():
            r = sqrt_or_extend(x)
            assert r.field.size == 7**4
            assert r * r == lift(x, r.field)
            break
    else:
        raise AssertionError("no nonsquare found in F_49")
