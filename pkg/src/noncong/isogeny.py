"""The explicit degree-8 isogeny E8(t) -> E8((1-t)/(1+t)), checked by sampling.

The map is phi . psi''' . psi'' . psi', a chain of three 2-isogenies
followed by an isomorphism that needs i = sqrt(-1).  Its kernel is the
cyclic subgroup of order 8 cut out by

    (x^2 - 4 t x - 4 t^3)(x + t^2) x = 0.

Identity of rational maps is verified by finite-field sampling: the
composite has bounded degree, so agreement on enough random points and
parameters t0, over several primes, forces the claimed identities.
Points at infinity are represented as None and propagate through every
stage (a vanishing stage denominator means the point entered the kernel
of the remaining chain).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .finitefield import FieldElem, PrimeField, QuadExt, lift, sqrt_or_extend

Point = "tuple[FieldElem, FieldElem] | None"


@dataclass(frozen=True)
class Curve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over a finite field."""

    a1: FieldElem
    a2: FieldElem
    a3: FieldElem
    a4: FieldElem
    a6: FieldElem

    @property
    def field(self):
        return self.a1.field

    def contains(self, point) -> bool:
        if point is None:
            return True
        x, y = point
        return y * y + self.a1 * x * y + self.a3 * y == (
            x**3 + self.a2 * x * x + self.a4 * x + self.a6
        )

    def neg(self, point):
        if point is None:
            return None
        x, y = point
        return (x, -y - self.a1 * x - self.a3)

    def add(self, p, q):
        if p is None:
            return q
        if q is None:
            return p
        x1, y1 = p
        x2, y2 = q
        if x1 == x2:
            if y1 + y2 + self.a1 * x2 + self.a3 == 0:
                return None
            slope = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / (
                2 * y1 + self.a1 * x1 + self.a3
            )
        else:
            slope = (y2 - y1) / (x2 - x1)
        nu = y1 - slope * x1
        x3 = slope * slope + self.a1 * slope - self.a2 - x1 - x2
        y3 = -(slope + self.a1) * x3 - nu - self.a3
        return (x3, y3)

    def discriminant(self) -> FieldElem:
        b2 = self.a1 * self.a1 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3 * self.a3 + 4 * self.a6
        b8 = (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def e8_curve(t: FieldElem) -> Curve:
    """y^2 + 4xy + 4t^2 y = x^3 + t^2 x^2."""
    one = t**0
    zero = one - one
    return Curve(a1=4 * one, a2=t * t, a3=4 * t * t, a4=zero, a6=zero)


def e8_quotient_curve(t: FieldElem) -> Curve:
    """The order-8 quotient of e8_curve: same left side, with
    b(t) = -5t^4 - 320t^3 - 720t^2 - 320t and
    c(t) = 3t^6 - 704t^5 - 5184t^4 - 8896t^3 - 5888t^2 - 1024t."""
    one = t**0
    b = -5 * t**4 - 320 * t**3 - 720 * t * t - 320 * t
    c = 3 * t**6 - 704 * t**5 - 5184 * t**4 - 8896 * t**3 - 5888 * t * t - 1024 * t
    return Curve(a1=4 * one, a2=t * t, a3=4 * t * t, a4=b, a6=c)


# -- the stages ------------------------------------------------------------


def psi_1(t: FieldElem, point):
    if point is None:
        return None
    x, y = point
    den = t * t + x
    if not den:
        return None
    xx = (t**4 + x * t * t + x * x) / den
    yy = (-4 * t**6 - 4 * x * t**4 + 2 * x * y * t * t + x * x * y) / (den * den)
    return (xx, yy)


def psi_2(t: FieldElem, point):
    if point is None:
        return None
    x, y = point
    den = t * t - x
    if not den:
        return None
    xx = (t * t * (x - 16) - x * x) / den
    yy = (y * t**4 - 2 * (8 * y + x * (y + 32)) * t * t + x * x * y) / (den * den)
    return (xx, yy)


def psi_3(t: FieldElem, point):
    if point is None:
        return None
    x, y = point
    den = t * t + 8 * t - x
    if not den:
        return None
    xx = (-64 * t**3 + (x - 128) * t * t + 8 * (x - 8) * t - x * x) / den
    num = (
        (y + 1024) * t**4
        - 16 * (16 * x + 3 * y - 128) * t**3
        - 2 * (32 * (y - 16) + x * (y + 256)) * t * t
        - 16 * (4 * y + x * (y + 16)) * t
        + x * x * y
    )
    return (xx, num / (den * den))


def phi_iso(t: FieldElem, i_unit: FieldElem, point):
    """The concluding isomorphism onto e8_curve((1-t)/(1+t)); needs i."""
    if point is None:
        return None
    x, y = point
    xx = -(7 * t * t + 8 * t + x + 8) / (4 * (t + 1) ** 2)
    yy = (
        12 * t**3
        + 2 * (i_unit + 38) * t * t
        + 4 * (x + 20) * t
        + 2 * (i_unit + 2) * x
        + i_unit * y
        + 16
    ) / (8 * (t + 1) ** 3)
    return (xx, yy)


def a_prime_map(t: FieldElem, i_unit: FieldElem, point):
    """The full composite E8(t) -> E8((1-t)/(1+t))."""
    out = psi_3(t, psi_2(t, psi_1(t, point)))
    return phi_iso(t, i_unit, out)


def kernel_x_values(t: FieldElem):
    """The x-coordinates cut out by (x^2 - 4tx - 4t^3)(x + t^2) x, with the
    quadratic's roots taken in a quadratic extension when needed."""
    zero = t - t
    roots = [zero, -t * t]
    s = sqrt_or_extend(t * t + t**3)
    tl = _into(t, s.field)
    roots_ext = [2 * tl + 2 * s, 2 * tl - 2 * s]
    return roots, roots_ext


def _into(elem: FieldElem, field) -> FieldElem:
    """Embed elem along the unique tower path from its field up to field."""
    path = []
    walk = field
    while walk is not elem.field:
        if not isinstance(walk, QuadExt):
            raise ValueError("no tower path between the fields")
        path.append(walk)
        walk = walk.base
    for ext in reversed(path):
        elem = lift(elem, ext)
    return elem


def curve_points_at_x(t: FieldElem, x: FieldElem):
    """Points of e8_curve(t) with the given x, extending the field if the
    completed square 4x^3 + (16 + 4t^2)x^2 + 32t^2 x + 16t^4 is not a square."""
    t = _into(t, x.field)
    g = 4 * x**3 + (16 + 4 * t * t) * x * x + 32 * t * t * x + 16 * t**4
    root = sqrt_or_extend(g)
    x, t = _into(x, root.field), _into(t, root.field)
    # (2y + 4x + 4t^2)^2 = g(x)
    y1 = (root - 4 * x - 4 * t * t) / 2
    y2 = (-root - 4 * x - 4 * t * t) / 2
    if root:
        return [(x, y1), (x, y2)]
    return [(x, y1)]


# -- sampling --------------------------------------------------------------


@dataclass(frozen=True)
class IsogenyVerdict:
    p: int
    trials: int
    pairs: int
    kernel_points: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_t(field, rng) -> FieldElem:
    p = field.p
    while True:
        t = field.elem(rng.randrange(2, p))
        if t == 1 or t == -1 or t == 0:
            continue
        if not e8_curve(t).discriminant():
            continue
        s = (1 - t) / (1 + t)
        if not e8_curve(s).discriminant():
            continue
        return t


def _random_point(t: FieldElem, rng):
    field = t.field
    while True:
        x = field.elem(rng.randrange(0, field.p))
        g = 4 * x**3 + (16 + 4 * t * t) * x * x + 32 * t * t * x + 16 * t**4
        r = g.sqrt()
        if r is None:
            continue
        return (x, (r - 4 * x - 4 * t * t) / 2)


def isogeny_sample_check(p: int, trials: int = 40, pairs: int = 20, seed: int = 0) -> IsogenyVerdict:
    """Sample the composite map at p: image on the target curve, additivity
    on random pairs, and kernel points (over extensions) mapping to O."""
    if p % 4 != 1 or p in (2, 3):
        raise ValueError("need p = 1 mod 4 so that i lies in the prime field")
    field = PrimeField(p)
    i_unit = field.elem(-1).sqrt()
    rng = random.Random(seed * 1_000_003 + p)
    failures = []

    for trial in range(trials):
        t = _random_t(field, rng)
        source = e8_curve(t)
        target = e8_curve((1 - t) / (1 + t))
        point = _random_point(t, rng)
        if not source.contains(point):
            failures.append(("sample", int(t.raw), "point off the source curve"))
            continue
        image = a_prime_map(t, i_unit, point)
        if image is None:
            # only the eight kernel points may collapse
            if not _in_kernel_locus(t, point):
                failures.append(("collapse", int(t.raw), int(point[0].raw)))
            continue
        if not target.contains(image):
            failures.append(("image", int(t.raw), int(point[0].raw)))

    kernel_seen = 0
    for trial in range(3):
        t = _random_t(field, rng)
        kernel_seen += _check_kernel(t, i_unit, failures)

    for trial in range(pairs):
        t = _random_t(field, rng)
        source = e8_curve(t)
        target = e8_curve((1 - t) / (1 + t))
        p1 = _random_point(t, rng)
        p2 = _random_point(t, rng)
        lhs = a_prime_map(t, i_unit, source.add(p1, p2))
        rhs = target.add(a_prime_map(t, i_unit, p1), a_prime_map(t, i_unit, p2))
        if lhs != rhs:
            failures.append(("additivity", int(t.raw), int(p1[0].raw), int(p2[0].raw)))

    return IsogenyVerdict(
        p=p, trials=trials, pairs=pairs, kernel_points=kernel_seen, failures=tuple(failures)
    )


def _in_kernel_locus(t: FieldElem, point) -> bool:
    x = point[0]
    return bool(
        (x * x - 4 * t * x - 4 * t**3) * (x + t * t) * x == 0
    )


def _check_kernel(t: FieldElem, i_unit: FieldElem, failures) -> int:
    """Every affine kernel point, over whatever extension it lives in,
    must map to O.  Returns how many points were checked."""
    base_roots, ext_roots = kernel_x_values(t)
    seen = 0
    for x in base_roots + ext_roots:
        for point in curve_points_at_x(t, x):
            f = point[0].field
            tt = _into(t, f)
            ii = _into(i_unit, f)
            if not e8_curve(tt).contains(point):
                failures.append(("kernel-off-curve", int(t.raw)))
                continue
            seen += 1
            if a_prime_map(tt, ii, point) is not None:
                failures.append(("kernel-survives", int(t.raw)))
    return seen
