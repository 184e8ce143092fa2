"""Fiberwise point counting on the elliptic surfaces over the r-line.

The fiber above r carries the curve y^2 + 4xy + 4t^2 y = x^3 + t^2 x^2
with t = a r^3 - 1, and its trace contribution is the character sum
-sum_x chi(g(x)) for the completed square

    g(x) = 4 x^3 + (16 + 4 t^2) x^2 + 32 t^2 x + 16 t^4.

That one formula is correct for every fiber: it gives a_t on good fibers,
+1 / -1 on split / nonsplit nodes and 0 on cusps, so the counting kernel
never branches on fiber type.  The fiber at r = infinity is a split node
in the u = 1/r chart (after rescaling by u^3 it reads y^2 = x^3 + a^2 x^2)
and contributes +1 over every field.
"""

from __future__ import annotations

import numpy as np

from .finitefield import FieldElem, PrimeField


def weierstrass_coeffs(t: FieldElem):
    """Weierstrass coefficients [a1, a2, a3, a4, a6] of the fiber at t."""
    one = FieldElem(t.field, t.field.one)
    t2 = t * t
    return [one * 4, t2, t2 * 4, one * 0, one * 0]


def completed_square_coeffs(t: FieldElem):
    """Coefficients [c0, c1, c2, c3] of g(x) = (2y + a1 x + a3)^2, low first."""
    t2 = t * t
    t4 = t2 * t2
    one = FieldElem(t.field, t.field.one)
    return [t4 * 16, t2 * 32, t2 * 4 + 16, one * 4]


def _poly_eval(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _poly_gcd_degree_and_root(g, field):
    """Return (m, x0) where m is the multiplicity structure of g's roots.

    m = 0: squarefree; m = 1: exactly one double root x0; m = 2: triple
    root x0.  Uses gcd(g, g') for the cubic g.
    """
    one = FieldElem(field, field.one)
    der = [g[1], g[2] * 2, g[3] * 3]
    a = [c for c in g]
    b = [c for c in der]

    def deg(p):
        d = len(p) - 1
        while d >= 0 and not p[d]:
            d -= 1
        return d

    def rem(p, q):
        p = list(p)
        dq = deg(q)
        inv_lead = one / q[dq]
        dp = deg(p)
        while dp >= dq:
            coef = p[dp] * inv_lead
            for i in range(dq + 1):
                p[dp - dq + i] = p[dp - dq + i] - coef * q[i]
            dp = deg(p)
        return p[: max(dp + 1, 1)] if dp >= 0 else [one * 0]

    while deg(b) > 0:
        a, b = b, rem(a, b)
    if deg(b) == 0 and b[deg(b)]:
        return 0, None
    # gcd is the last nonzero-degree remainder a
    da = deg(a)
    if da == 1:
        x0 = -a[0] / a[1]
        return 1, x0
    if da == 2:
        # (x - x0)^2 with x0 a double root of the derivative chain
        x0 = -a[1] / (a[2] * 2)
        return 2, x0
    raise AssertionError("cubic gcd structure out of range")


def count_or_classify(t: FieldElem):
    """Classify the fiber at t and return (kind, contribution).

    kind is one of "good", "split", "nonsplit", "cusp"; the contribution
    equals -sum_x chi(g(x)) in every case.  Pure Python, meant for small
    fields and cross-checks; the bulk kernels below never branch this way.
    """
    field = t.field
    g = completed_square_coeffs(t)
    m, x0 = _poly_gcd_degree_and_root(g, field)
    if m == 2:
        return "cusp", 0
    if m == 1:
        # remaining simple root from the coefficient sum: 2 x0 + x1 = -c2/4
        x1 = -g[2] / g[3] - x0 * 2
        if x0 == x1:
            raise AssertionError("double plus equal simple root")
        return ("split", 1) if (x0 - x1).is_square() else ("nonsplit", -1)
    total = 0
    for raw in field.iter_raw():
        v = _poly_eval(g, FieldElem(field, raw))
        if v:
            total += 1 if v.is_square() else -1
    return "good", -total


def nonresidue_mod(p: int) -> int:
    return PrimeField(p).nonresidue()


def _check_prime(p: int, a: int):
    if p in (2, 3):
        raise ValueError("counting needs p >= 5")
    if a not in (2, 4):
        raise ValueError("a must be 2 or 4")
    PrimeField(p)  # validates primality


def fiber_contributions(p: int, a: int, degree: int, nonresidue: int | None = None):
    """Per-fiber trace contributions over F_(p^degree), degree 1 or 2.

    Returns (contribs, infinity): contribs[i] is the contribution of the
    fiber at the i-th field element and infinity is the r = infinity term.
    For degree 2 the element with index i = u * p + v is v + u * s where
    s^2 equals the chosen nonresidue.
    """
    _check_prime(p, a)
    if degree == 1:
        return _fiber_contributions_deg1(p, a), 1
    if degree == 2:
        n = nonresidue if nonresidue is not None else nonresidue_mod(p)
        if pow(n % p, (p - 1) // 2, p) == 1:
            raise ValueError("%d is a square mod %d" % (n, p))
        return _fiber_contributions_deg2(p, a, n % p), 1
    raise ValueError("degree must be 1 or 2")


def _fiber_contributions_deg1(p: int, a: int):
    x = np.arange(p, dtype=np.int64)
    squares = np.zeros(p, dtype=bool)
    squares[(x * x) % p] = True
    x2 = x * x % p
    x3 = x2 * x % p
    r = x
    r3 = x3
    t = (a * r3 - 1) % p
    t2 = t * t % p
    t4 = t2 * t2 % p
    c2 = (16 + 4 * t2) % p
    c1 = 32 * t2 % p
    c0 = 16 * t4 % p
    # all products stay below p^2 * 32, far inside int64
    g = (4 * x3[None, :] + c2[:, None] * x2[None, :] + c1[:, None] * x[None, :] + c0[:, None]) % p
    nonzero = g != 0
    char_sum = 2 * np.count_nonzero(squares[g] & nonzero, axis=1) - np.count_nonzero(
        nonzero, axis=1
    )
    return -char_sum


def _fiber_contributions_deg2(p: int, a: int, n: int, chunk: int = 64):
    q = p * p
    idx = np.arange(q, dtype=np.int64)
    u = idx // p
    v = idx % p
    # squares table: mark (u s + v)^2 = (2uv) s + (n u^2 + v^2)
    su = 2 * u * v % p
    sv = (n * u * u + v * v) % p
    squares = np.zeros(q, dtype=bool)
    squares[su * p + sv] = True

    # coordinate tables for x, x^2, x^3 as (s-part, const-part)
    xu, xv = u, v
    x2u = 2 * xu * xv % p
    x2v = (n * xu * xu + xv * xv) % p
    x3u = (x2u * xv + x2v * xu) % p
    x3v = (n * x2u * xu + x2v * xv) % p

    # per-fiber t = a r^3 - 1 and the g coefficients
    r3u, r3v = x3u, x3v
    tu = a * r3u % p
    tv = (a * r3v - 1) % p
    t2u = 2 * tu * tv % p
    t2v = (n * tu * tu + tv * tv) % p
    t4u = 2 * t2u * t2v % p
    t4v = (n * t2u * t2u + t2v * t2v) % p
    c2u, c2v = 4 * t2u % p, (16 + 4 * t2v) % p
    c1u, c1v = 32 * t2u % p, 32 * t2v % p
    c0u, c0v = 16 * t4u % p, 16 * t4v % p
    nc2u = n * c2u % p
    nc1u = n * c1u % p

    contribs = np.empty(q, dtype=np.int64)
    for lo in range(0, q, chunk):
        hi = min(lo + chunk, q)
        sl = slice(lo, hi)
        # g = 4 x^3 + c2 x^2 + c1 x + c0 over F_p[s]/(s^2 - n); the terms
        # below are bounded by 32 p^3 so the sums stay well inside int64
        gu = (
            4 * x3u[None, :]
            + c2u[sl, None] * x2v[None, :]
            + c2v[sl, None] * x2u[None, :]
            + c1u[sl, None] * xv[None, :]
            + c1v[sl, None] * xu[None, :]
            + c0u[sl, None]
        ) % p
        gv = (
            4 * x3v[None, :]
            + nc2u[sl, None] * x2u[None, :]
            + c2v[sl, None] * x2v[None, :]
            + nc1u[sl, None] * xu[None, :]
            + c1v[sl, None] * xv[None, :]
            + c0v[sl, None]
        ) % p
        g_idx = gu * p + gv
        nonzero = g_idx != 0
        char_sum = 2 * np.count_nonzero(squares[g_idx] & nonzero, axis=1) - np.count_nonzero(
            nonzero, axis=1
        )
        contribs[sl] = -char_sum
    return contribs


def trace_sum(p: int, a: int, degree: int, nonresidue: int | None = None) -> int:
    """Sum of all fiber contributions over P^1(F_(p^degree))."""
    contribs, infinity = fiber_contributions(p, a, degree, nonresidue)
    return int(contribs.sum()) + infinity


def rational_fiber_predictions(p: int, a: int):
    """Expected degree-2 contributions of the F_p-rational fibers.

    Classifies each finite r in F_p over F_p and converts: a good fiber
    with trace a_r contributes a_r^2 - 2p over F_(p^2), a node +1 (both
    tangent classes become rational), a cusp 0.  Used to cross-check the
    bulk kernel, whose F_p-rational fibers sit at indices 0..p-1.
    """
    field = PrimeField(p)
    out = []
    for r in range(p):
        t = field.elem(a * r**3 - 1)
        kind, contrib = count_or_classify(t)
        if kind == "good":
            out.append(contrib * contrib - 2 * p)
        elif kind in ("split", "nonsplit"):
            out.append(1)
        else:
            out.append(0)
    return out
