"""Prime fields and iterated quadratic extensions with exact square roots.

A field object owns the arithmetic on raw representations (ints for F_p,
nested pairs for quadratic extensions); FieldElem wraps a raw value with
its field so curve formulas read like ordinary algebra.  Towers are built
by repeatedly adjoining a square root of a nonsquare, which is all the
point-sampling code ever needs.
"""

from __future__ import annotations


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p for an odd prime p.  Raw elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p) or p == 2:
            raise ValueError("need an odd prime, got %r" % (p,))
        self.p = p
        self.char = p
        self.size = p
        self.zero = 0
        self.one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, n: int):
        return pow(a, n, self.p)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_square(self, a) -> bool:
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """A square root of a, or None if a is a nonsquare (Tonelli-Shanks)."""
        p = self.p
        if a == 0:
            return 0
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.nonresidue()
        m = s
        c = pow(z, q, p)
        t = pow(a, q, p)
        r = pow(a, (q + 1) // 2, p)
        while t != 1:
            i, sq = 0, t
            while sq != 1:
                sq = sq * sq % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t = t * c % p
            r = r * b % p
        return r

    def nonresidue(self) -> int:
        for n in range(2, self.p):
            if pow(n, (self.p - 1) // 2, self.p) != 1:
                return n
        raise AssertionError("no quadratic nonresidue found")

    def iter_raw(self):
        return range(self.p)

    def elem(self, n: int) -> "FieldElem":
        return FieldElem(self, self.from_int(n))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class QuadExt:
    """base[s] / (s^2 - d) for d a nonsquare in base.

    Raw elements are pairs (a, b) meaning a + b*s with a, b raw elements
    of the base field.
    """

    def __init__(self, base, d):
        if base.is_square(d):
            raise ValueError("adjoined element must be a nonsquare in the base")
        self.base = base
        self.d = d
        self.char = base.char
        self.size = base.size**2
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.gen = (base.zero, base.one)

    def from_int(self, n: int):
        return (self.base.from_int(n), self.base.zero)

    def from_base(self, a):
        return (a, self.base.zero)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def sub(self, x, y):
        return (self.base.sub(x[0], y[0]), self.base.sub(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        a1, b1 = x
        a2, b2 = y
        return (
            B.add(B.mul(a1, a2), B.mul(self.d, B.mul(b1, b2))),
            B.add(B.mul(a1, b2), B.mul(b1, a2)),
        )

    def inv(self, x):
        B = self.base
        a, b = x
        nrm = B.sub(B.mul(a, a), B.mul(self.d, B.mul(b, b)))
        ninv = B.inv(nrm)
        return (B.mul(a, ninv), B.neg(B.mul(b, ninv)))

    def pow_(self, x, n: int):
        result = self.one
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def eq(self, x, y) -> bool:
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])

    def is_zero(self, x) -> bool:
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def is_square(self, x) -> bool:
        if self.is_zero(x):
            return True
        return self.eq(self.pow_(x, (self.size - 1) // 2), self.one)

    def sqrt(self, x):
        """A square root in this field, or None.

        Reduces to base-field square roots: for a + b*s with b != 0, a
        root x + y*s satisfies x^2 = (a +- sqrt(a^2 - d b^2)) / 2 and
        y = b / (2x).
        """
        B = self.base
        a, b = x
        if B.is_zero(b):
            r = B.sqrt(a)
            if r is not None:
                return (r, B.zero)
            r = B.sqrt(B.mul(a, B.inv(self.d)))
            if r is None:
                return None
            return (B.zero, r)
        nrm = B.sub(B.mul(a, a), B.mul(self.d, B.mul(b, b)))
        n0 = B.sqrt(nrm)
        if n0 is None:
            return None
        inv2 = B.inv(B.from_int(2))
        for n_signed in (n0, B.neg(n0)):
            cand = B.mul(B.add(a, n_signed), inv2)
            xr = B.sqrt(cand)
            if xr is None or B.is_zero(xr):
                continue
            yr = B.mul(b, B.inv(B.add(xr, xr)))
            root = (xr, yr)
            if self.eq(self.mul(root, root), x):
                return root
        return None

    def iter_raw(self):
        for a in self.base.iter_raw():
            for b in self.base.iter_raw():
                yield (a, b)

    def elem(self, n: int) -> "FieldElem":
        return FieldElem(self, self.from_int(n))

    def __repr__(self):
        return "QuadExt(%r, %r)" % (self.base, self.d)


class FieldElem:
    """A raw field value paired with its field, with operator sugar."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.add(self.raw, raw))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(self.raw, raw))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(self.raw, self.field.inv(raw)))

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(raw, self.field.inv(self.raw)))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElem(self.field, self.field.inv(self.field.pow_(self.raw, -n)))
        return FieldElem(self.field, self.field.pow_(self.raw, n))

    def __eq__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return self.field.eq(self.raw, raw)

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __hash__(self):
        return hash((id(self.field), self.raw))

    def is_square(self) -> bool:
        return self.field.is_square(self.raw)

    def sqrt(self):
        r = self.field.sqrt(self.raw)
        return None if r is None else FieldElem(self.field, r)

    def __repr__(self):
        return "FieldElem(%r, %r)" % (self.field, self.raw)


def lift(elem: FieldElem, ext: QuadExt) -> FieldElem:
    """Embed an element of ext.base into ext."""
    if elem.field is not ext.base:
        raise ValueError("element does not live in the base of the extension")
    return FieldElem(ext, ext.from_base(elem.raw))


def sqrt_or_extend(elem: FieldElem) -> FieldElem:
    """A square root of elem, extending the field by one quadratic step if needed.

    The result's field is elem.field when elem is a square there, and a
    fresh QuadExt otherwise (in which case the root is the generator).
    """
    r = elem.sqrt()
    if r is not None:
        return r
    ext = QuadExt(elem.field, elem.raw)
    return FieldElem(ext, ext.gen)
