"""Exact arithmetic in Q(zeta24) and in the cube-root tower Q(zeta24)[y]/(y^3 - 2).

Everything downstream (quartic factorizations, twelfth roots of unity, the
operator matrices with their 2^(1/3) entries) lives inside these two fields,
so a single dense representation is enough: an element of Q(zeta24) is eight
rationals on the power basis 1, z, ..., z^7 reduced modulo the 24th
cyclotomic polynomial z^8 = z^4 - 1.
"""

from __future__ import annotations

from fractions import Fraction

# Arbitrary-precision rationals, always in lowest terms with positive
# denominator.  The stdlib type already guarantees every invariant we need.
Rational = Fraction


class NotInSubfieldError(ValueError):
    """Raised when an element fails to lie in a requested quadratic subfield."""


def _coerce(value):
    if isinstance(value, CycloElem):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloElem.from_rational(value)
    return NotImplemented


def _reduce_powers(coeffs):
    """Reduce a coefficient list on powers z^0..z^k modulo z^8 = z^4 - 1."""
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, 7, -1):
        c = coeffs[k]
        if c:
            coeffs[k - 4] += c
            coeffs[k - 8] -= c
        coeffs[k] = 0
    out = coeffs[:8]
    out += [Fraction(0)] * (8 - len(out))
    return tuple(Fraction(c) for c in out)


class CycloElem:
    """Immutable element of Q(zeta24)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != 8:
            raise ValueError("need exactly 8 coordinates")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    @classmethod
    def from_rational(cls, value) -> "CycloElem":
        return cls((Fraction(value), 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def zeta_power(cls, k: int) -> "CycloElem":
        """zeta24^k for any integer k."""
        k %= 24
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        return cls(_reduce_powers(raw))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloElem(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(-a for a in self.coords)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloElem(a - b for a, b in zip(self.coords, other.coords))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        raw = [Fraction(0)] * 15
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    raw[i + j] += a * b
        return CycloElem(_reduce_powers(raw))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = CycloElem.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "CycloElem":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta24)")
        phi = [Fraction(c) for c in (1, 0, 0, 0, -1, 0, 0, 0, 1)]
        _, inv_coeffs = _poly_xgcd_fraction(list(self.coords), phi)
        return CycloElem(_reduce_powers(inv_coeffs))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    # -- structure maps ----------------------------------------------------

    def conj(self) -> "CycloElem":
        """The automorphism zeta24 -> zeta24^(-1) (complex conjugation)."""
        raw = [Fraction(0)] * 24
        for k, c in enumerate(self.coords):
            raw[(-k) % 24] += c
        return CycloElem(_reduce_powers(raw))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotInSubfieldError("element is not rational: %r" % (self,))
        return self.coords[0]

    def to_complex(self) -> complex:
        import cmath

        return sum(
            complex(c) * cmath.exp(2j * cmath.pi * k / 24)
            for k, c in enumerate(self.coords)
        )

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append("z%d" % k)
            else:
                terms.append("%s*z%d" % (c, k))
        return "CycloElem(%s)" % (" + ".join(terms) if terms else "0")


def _poly_deg(a):
    for i in range(len(a) - 1, -1, -1):
        if a[i] != 0:
            return i
    return -1


def _poly_xgcd_fraction(a, modulus):
    """Return (g, s) with s*a = g mod modulus over Q[x]; g is a nonzero constant.

    Only used for inversion, so a is assumed coprime to the modulus
    (the modulus is irreducible).
    """
    r0, r1 = list(modulus), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _poly_deg(r1) > 0:
        q, r = _poly_divmod_fraction(r0, r1)
        s = _poly_sub_fraction(s0, _poly_mul_fraction(q, s1))
        r0, s0, r1, s1 = r1, s1, r, s
    d = _poly_deg(r1)
    if d != 0:
        raise ZeroDivisionError("element not invertible")
    c = r1[0]
    return c, [x / c for x in s1]


def _poly_divmod_fraction(a, b):
    a = list(a)
    db, da = _poly_deg(b), _poly_deg(a)
    q = [Fraction(0)] * max(da - db + 1, 1)
    inv_lead = 1 / b[db]
    while da >= db:
        coef = a[da] * inv_lead
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] -= coef * b[i]
        da = _poly_deg(a)
    return q, a


def _poly_mul_fraction(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub_fraction(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# -- distinguished elements ------------------------------------------------

ONE = CycloElem.from_rational(1)
ZERO = CycloElem.from_rational(0)


def root_of_unity(k: int) -> CycloElem:
    """zeta24^k; use k=6 for i, k=4 for exp(2*pi*i/6), k=8 for exp(2*pi*i/3)."""
    return CycloElem.zeta_power(k)


def _build_sqrt_table():
    z = CycloElem.zeta_power
    i = z(6)
    sqrt2 = z(3) + z(21)      # 2*cos(pi/4)
    sqrt3 = z(2) + z(22)      # 2*cos(pi/6)
    table = {
        -1: i,
        2: sqrt2,
        -2: i * sqrt2,
        3: sqrt3,
        -3: i * sqrt3,
        6: sqrt2 * sqrt3,
        -6: i * sqrt2 * sqrt3,
    }
    return table


_SQRT_TABLE = _build_sqrt_table()


def sqrt_embed(d: int) -> CycloElem:
    """The principal square root of d in Q(zeta24), for squarefree d | 24.

    Positive d map to the positive real root, negative d to i times the
    positive root of |d|, with i = zeta24^6.  Each returned element squares
    to d exactly.
    """
    try:
        return _SQRT_TABLE[d]
    except KeyError:
        raise ValueError("sqrt of %d is not available in Q(zeta24)" % d) from None


def quad_coords(x: CycloElem, d: int) -> tuple[Fraction, Fraction]:
    """Write x = a + b*sqrt(d) with rational a, b, or raise NotInSubfieldError.

    The error message lists the coordinates of the residual, which is how a
    failed subfield test identifies what went wrong.
    """
    s = sqrt_embed(d)
    pivot = next(k for k in range(1, 8) if s.coords[k] != 0)
    b = x.coords[pivot] / s.coords[pivot]
    a = x.coords[0] - b * s.coords[0]
    residual = x - (CycloElem.from_rational(a) + CycloElem.from_rational(b) * s)
    if not residual.is_zero():
        bad = [k for k, c in enumerate(residual.coords) if c != 0]
        raise NotInSubfieldError(
            "element not in Q(sqrt(%d)): nonzero residual coordinates %s" % (d, bad)
        )
    return a, b


def from_quad(a, b, d: int) -> CycloElem:
    """a + b*sqrt(d) as a CycloElem."""
    return CycloElem.from_rational(a) + CycloElem.from_rational(b) * sqrt_embed(d)


# -- the cube-root tower ---------------------------------------------------


def _coerce_tower(value):
    if isinstance(value, CycloTowerElem):
        return value
    if isinstance(value, CycloElem):
        return CycloTowerElem((value, ZERO, ZERO))
    if isinstance(value, (int, Fraction)):
        return CycloTowerElem((CycloElem.from_rational(value), ZERO, ZERO))
    return NotImplemented


class CycloTowerElem:
    """Element of Q(zeta24)[y]/(y^3 - 2), coordinates on 1, y, y^2.

    y plays the role of the real cube root of 2; the polynomial y^3 - 2
    stays irreducible over Q(zeta24) because 3 does not divide 8.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(_coerce(c) for c in coords)
        if len(coords) != 3 or any(c is NotImplemented for c in coords):
            raise ValueError("need exactly 3 CycloElem coordinates")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CycloTowerElem is immutable")

    @classmethod
    def cbrt2(cls) -> "CycloTowerElem":
        return cls((ZERO, ONE, ZERO))

    def __add__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloTowerElem(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return CycloTowerElem(-a for a in self.coords)

    def __sub__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloTowerElem(a - b for a, b in zip(self.coords, other.coords))

    def __rsub__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        raw = [ZERO] * 5
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_zero():
                    raw[i + j] = raw[i + j] + a * b
        two = CycloElem.from_rational(2)
        out = [raw[0] + two * raw[3], raw[1] + two * raw[4], raw[2]]
        return CycloTowerElem(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = _coerce_tower(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "CycloTowerElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the tower")
        modulus = [CycloElem.from_rational(-2), ZERO, ZERO, ONE]
        _, inv_coeffs = _poly_xgcd_field(list(self.coords), modulus, ZERO, ONE)
        inv_coeffs += [ZERO] * (3 - len(inv_coeffs))
        return CycloTowerElem(inv_coeffs[:3])

    def __truediv__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def to_complex(self) -> complex:
        cbrt2 = 2.0 ** (1.0 / 3.0)
        return sum(c.to_complex() * cbrt2**k for k, c in enumerate(self.coords))

    def __eq__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "CycloTowerElem(%r, %r, %r)" % self.coords


def _poly_xgcd_field(a, modulus, zero, one):
    """Extended gcd over an arbitrary field given its zero and one elements."""

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if not p[i].is_zero():
                return i
        return -1

    def sub(p, q):
        n = max(len(p), len(q))
        p = list(p) + [zero] * (n - len(p))
        q = list(q) + [zero] * (n - len(q))
        return [x - y for x, y in zip(p, q)]

    def mul(p, q):
        out = [zero] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if x.is_zero():
                continue
            for j, y in enumerate(q):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return out

    def divmod_(p, q):
        p = list(p)
        dq, dp = deg(q), deg(p)
        quot = [zero] * max(dp - dq + 1, 1)
        inv_lead = q[dq].inv()
        while dp >= dq:
            coef = p[dp] * inv_lead
            quot[dp - dq] = coef
            for i in range(dq + 1):
                p[dp - dq + i] = p[dp - dq + i] - coef * q[i]
            dp = deg(p)
        return quot, p

    r0, r1 = list(modulus), list(a)
    s0, s1 = [zero], [one]
    while deg(r1) > 0:
        q, r = divmod_(r0, r1)
        s = sub(s0, mul(q, s1))
        r0, s0, r1, s1 = r1, s1, r, s
    d = deg(r1)
    if d != 0:
        raise ZeroDivisionError("element not invertible")
    c_inv = r1[0].inv()
    return r1[0], [x * c_inv for x in s1]


# -- dense polynomials over Q(zeta24) --------------------------------------


class Poly:
    """Dense polynomial with CycloElem coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, CycloElem) else _coerce(c) for c in coeffs]
        if any(c is NotImplemented for c in coeffs):
            raise ValueError("coefficients must coerce to CycloElem")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return Poly([x - y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                if x.is_zero():
                    continue
                for j, y in enumerate(other.coeffs):
                    if not y.is_zero():
                        out[i + j] = out[i + j] + x * y
            return Poly(out)
        return Poly([c * other for c in self.coeffs])

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def conj(self) -> "Poly":
        return Poly([c.conj() for c in self.coeffs])

    def coeff(self, k: int) -> CycloElem:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "Poly(%r)" % (list(self.coeffs),)
