import math

import pytest

from noncong.finitefield import FieldElem, PrimeField, QuadExt
from noncong.surface import (
    completed_square_coeffs,
    count_or_classify,
    fiber_contributions,
    nonresidue_mod,
    rational_fiber_predictions,
    trace_sum,
    weierstrass_coeffs,
)


def brute_contribution_deg1(p, a, r):
    # direct point count of y^2 = g(x), no character tables involved:
    # #affine points = p + char sum, contribution = -char sum = p - #points
    t = (a * r**3 - 1) % p
    c0, c1, c2, c3 = 16 * t**4 % p, 32 * t * t % p, (16 + 4 * t * t) % p, 4
    npts = 0
    for x in range(p):
        g = (c3 * x**3 + c2 * x * x + c1 * x + c0) % p
        for y in range(p):
            if (y * y - g) % p == 0:
                npts += 1
    return p - npts


@pytest.mark.parametrize("p", (5, 7, 13))
@pytest.mark.parametrize("a", (2, 4))
def test_degree1_kernel_against_brute_force(p, a):
    contribs, infinity = fiber_contributions(p, a, 1)
    assert infinity == 1
    for r in range(p):
        assert contribs[r] == brute_contribution_deg1(p, a, r)


@pytest.mark.parametrize("a", (2, 4))
def test_degree2_kernel_against_brute_force(a):
    p = 5
    n = nonresidue_mod(p)
    F = PrimeField(p)
    K = QuadExt(F, n)
    contribs, infinity = fiber_contributions(p, a, 2)
    assert infinity == 1
    for u in range(p):
        for v in range(p):
            r = FieldElem(K, (v, u))
            t = r * r * r * a - 1
            g = completed_square_coeffs(t)
            npts = 0
            for raw_x in K.iter_raw():
                x = FieldElem(K, raw_x)
                gx = ((g[3] * x + g[2]) * x + g[1]) * x + g[0]
                for raw_y in K.iter_raw():
                    y = FieldElem(K, raw_y)
                    if y * y == gx:
                        npts += 1
            assert contribs[u * p + v] == p * p - npts
    assert trace_sum(p, a, 2) == int(contribs.sum()) + 1


def test_fiber_at_t_zero_is_a_split_node_everywhere():
    for p in (5, 7, 11, 13, 29):
        F = PrimeField(p)
        kind, contrib = count_or_classify(F.elem(0))
        assert kind == "split"
        assert contrib == 1
        K = QuadExt(F, F.nonresidue())
        kind2, contrib2 = count_or_classify(K.elem(0))
        assert (kind2, contrib2) == ("split", 1)


@pytest.mark.parametrize("p", (11, 13, 17, 29))
@pytest.mark.parametrize("a", (2, 4))
def test_classification_and_hasse(p, a):
    F = PrimeField(p)
    kinds = set()
    for r in range(p):
        t = F.elem(a * r**3 - 1)
        kind, contrib = count_or_classify(t)
        kinds.add(kind)
        if kind == "good":
            assert contrib * contrib <= 4 * p
        elif kind == "cusp":
            assert contrib == 0
        else:
            assert contrib in (1, -1)
    assert "good" in kinds


@pytest.mark.parametrize("p", (7, 13))
@pytest.mark.parametrize("a", (2, 4))
def test_rational_fibers_inside_degree2_kernel(p, a):
    # F_p-rational fibers sit at indices 0..p-1 of the degree-2 kernel
    want = rational_fiber_predictions(p, a)
    contribs, _ = fiber_contributions(p, a, 2)
    assert list(contribs[:p]) == want


def test_nonresidue_choice_does_not_matter():
    p = 13
    nonsquares = [n for n in range(2, p) if pow(n, (p - 1) // 2, p) != 1]
    s0 = trace_sum(p, 2, 2, nonsquares[0])
    s1 = trace_sum(p, 2, 2, nonsquares[-1])
    assert s0 == s1


def test_weierstrass_and_completed_square_are_consistent():
    # (2y + a1 x + a3)^2 = g(x) must hold identically on the curve
    F = PrimeField(31)
    for traw in (0, 1, 5, 30):
        t = F.elem(traw)
        a1, a2, a3, a4, a6 = weierstrass_coeffs(t)
        g = completed_square_coeffs(t)
        for xraw in range(31):
            for yraw in range(31):
                x, y = F.elem(xraw), F.elem(yraw)
                lhs = y * y + a1 * x * y + a3 * y
                rhs = x * x * x + a2 * x * x + a4 * x + a6
                if lhs == rhs:
                    sq = y * 2 + a1 * x + a3
                    gval = ((g[3] * x + g[2]) * x + g[1]) * x + g[0]
                    assert sq * sq == gval


def test_trace_sum_rejects_bad_degree():
    with pytest.raises(ValueError):
        trace_sum(13, 2, 3)
    with pytest.raises(ValueError):
        fiber_contributions(13, 2, 2, 4)  # 4 is a square mod 13


def test_hasse_bound_on_trace_sums():
    # each of the p+2 fibers contributes at most 2 sqrt(q), so the total
    # stays inside (p + 2) * 2 sqrt(q); a crude but independent sanity bound
    for p in (5, 7, 11):
        for a in (2, 4):
            s1 = trace_sum(p, a, 1)
            assert abs(s1) <= (p + 2) * 2 * math.isqrt(p + 1)
