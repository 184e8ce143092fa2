"""Truncated q-expansions with exact rational coefficients.

A QSeries is q^lead * (c_0 + c_1 q + c_2 q^2 + ...) known modulo q^order,
where lead may be a fraction (eta quotients naturally live in powers of
q^(1/24)) but consecutive stored coefficients are always one full power of
q apart.  Every series in this package has that shape: an eta quotient is a
pure fractional monomial times a series in integral powers, and that form
is stable under multiplication, inversion, cube roots and q -> q^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class PrecisionError(ValueError):
    """Asked for a coefficient beyond the known truncation order."""


class NonCubeError(ValueError):
    """Cube root of a series whose leading data is not an exact cube."""


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    __slots__ = ("lead", "coeffs")

    def __init__(self, lead, coeffs):
        lead = _as_fraction(lead)
        coeffs = list(coeffs)
        # Strip leading zeros but keep the truncation window: the order
        # lead + len(coeffs) is part of the data.
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lead += 1
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @property
    def order(self) -> Fraction:
        """Exponent bound: coefficients are known for q^e with e < order."""
        return self.lead + len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def constant(cls, value, order) -> "QSeries":
        order = _as_fraction(order)
        if order <= 0:
            raise ValueError("constant series needs positive order")
        n = int(order) if order == int(order) else int(order) + 1
        return cls(0, [value] + [0] * (n - 1))

    def coeff(self, e):
        """Exact coefficient of q^e; zero below the lead, error past the order."""
        e = _as_fraction(e)
        if e >= self.order:
            raise PrecisionError("coefficient of q^%s beyond order %s" % (e, self.order))
        pos = e - self.lead
        if pos < 0 or pos.denominator != 1:
            return Fraction(0)
        return _as_fraction(self.coeffs[int(pos)])

    def truncate(self, new_order) -> "QSeries":
        new_order = _as_fraction(new_order)
        if new_order > self.order:
            raise PrecisionError("cannot extend truncation")
        keep = new_order - self.lead
        if keep <= 0:
            return QSeries(new_order, [])
        if keep.denominator != 1:
            raise ValueError("truncation must preserve coefficient spacing")
        return QSeries(self.lead, self.coeffs[: int(keep)])

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other):
        if not isinstance(other, QSeries):
            raise TypeError("expected QSeries")
        if self.is_zero or other.is_zero:
            return None
        if (self.lead - other.lead).denominator != 1:
            raise ValueError(
                "cannot add series with incompatible fractional exponents"
            )
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        bound = self._aligned(other)
        if bound is None:
            if self.is_zero:
                return other.truncate(min(self.order, other.order))
            return self.truncate(min(self.order, other.order))
        lead = min(self.lead, other.lead)
        n = int(bound - lead)
        out = [Fraction(0)] * n
        for src in (self, other):
            off = int(src.lead - lead)
            for k, c in enumerate(src.coeffs):
                if off + k < n:
                    out[off + k] += _as_fraction(c)
        return QSeries(lead, out)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.lead, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.lead, [c * other for c in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return QSeries(self.lead + other.lead, [])
        n = min(len(self.coeffs), len(other.coeffs))
        # clearing denominators keeps the convolution in plain integers,
        # which matters at the 600-term working precision
        da, a = _cleared(self.coeffs[:n])
        db, b = _cleared(other.coeffs[:n])
        out = [0] * n
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(n - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        den = da * db
        if den != 1:
            out = [Fraction(v, den) for v in out]
        return QSeries(self.lead + other.lead, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n == 0:
            return QSeries.constant(1, len(self.coeffs) or 1)
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero series")
        c = [_as_fraction(x) for x in self.coeffs]
        n = len(c)
        inv0 = 1 / c[0]
        out = [Fraction(0)] * n
        out[0] = inv0
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if c[j]:
                    acc += c[j] * out[k - j]
            out[k] = -inv0 * acc
        return QSeries(-self.lead, out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / other
            return self * inv
        return self * other.inverse()

    def substitute_power(self, m: int) -> "QSeries":
        """The series with q replaced by q^m (m a positive integer)."""
        if m <= 0:
            raise ValueError("substitution power must be positive")
        if self.is_zero:
            return QSeries(self.lead * m, [])
        # exponents between stored multiples of m are known to vanish, so
        # the window up to m*order stays valid
        out = [0] * (m * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            out[m * k] = c
        return QSeries(self.lead * m, out)

    def cbrt(self) -> "QSeries":
        """Exact cube root with rational coefficients.

        Writes the series as q^lead * c_0 * (1 + ...) and requires lead to
        be divisible by 3 without changing its denominator and c_0 to be a
        rational cube.  Coefficient n of the root is determined by
        coefficients <= n of the input through the first-order relation
        3 c (theta u) = (theta c) u with theta = q d/dq.
        """
        if self.is_zero:
            raise NonCubeError("cube root of zero series")
        new_lead = self.lead / 3
        if new_lead.denominator != self.lead.denominator:
            raise NonCubeError("leading exponent %s not divisible by 3" % self.lead)
        den, c = _cleared(self.coeffs)
        if den == 1 and c[0] in (1, -1):
            return QSeries(new_lead, _cbrt_unit_int(c))
        c = [_as_fraction(x) for x in self.coeffs]
        v0 = _rational_cbrt(c[0])
        n = len(c)
        v = [Fraction(0)] * n
        v[0] = v0
        inv3c0 = 1 / (3 * c[0])
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(k):
                coef = c[k - j]
                if coef:
                    acc += (k - 4 * j) * coef * v[j]
            v[k] = acc * inv3c0 / k
        return QSeries(new_lead, v)

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        bound = min(self.order, other.order)
        try:
            a = self.truncate(bound)
            b = other.truncate(bound)
        except ValueError:
            return False
        return a.lead == b.lead and [
            _as_fraction(x) for x in a.coeffs
        ] == [_as_fraction(x) for x in b.coeffs]

    def __repr__(self):
        head = []
        for k, c in enumerate(self.coeffs[:4]):
            head.append("%s*q^%s" % (c, self.lead + k))
        tail = " + ..." if len(self.coeffs) > 4 else ""
        return "QSeries(%s%s mod q^%s)" % (" + ".join(head) or "0", tail, self.order)


def _cleared(coeffs):
    """(den, ints) with coeffs[i] == ints[i] / den exactly."""
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // gcd(den, c.denominator)
    if den == 1:
        return 1, [int(c) for c in coeffs]
    return den, [int(c * den) for c in coeffs]


def _cbrt_unit_int(c):
    """Cube-root recurrence for integer coefficients with c[0] = +-1.

    The root coefficient v_k has 3-power denominator bounded by 9^k, so
    u_k = 9^k v_k stays integral and the whole recurrence runs over ints.
    """
    n = len(c)
    scaled = [0] * n  # c[m] * 9^m
    p = 1
    for m in range(n):
        scaled[m] = c[m] * p
        p *= 9
    u = [0] * n
    u[0] = c[0]
    sign = c[0]
    for k in range(1, n):
        acc = 0
        for j in range(k):
            coef = scaled[k - j]
            if coef:
                acc += (k - 4 * j) * coef * u[j]
        q, r = divmod(acc * sign, 3 * k)
        if r:
            raise AssertionError("cube-root recurrence lost integrality")
        u[k] = q
    out = [Fraction(0)] * n
    p = 1
    for k in range(n):
        out[k] = Fraction(u[k], p)
        p *= 9
    return out


def _rational_cbrt(x: Fraction) -> Fraction:
    num = _int_cbrt(x.numerator)
    den = _int_cbrt(x.denominator)
    if num is None or den is None:
        raise NonCubeError("leading coefficient %s is not a rational cube" % x)
    return Fraction(num, den)


def _int_cbrt(n: int):
    if n < 0:
        r = _int_cbrt(-n)
        return None if r is None else -r
    if n == 0:
        return 0
    r = round(n ** (1.0 / 3.0))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**3 == n:
            return cand
    return None


# -- eta quotients ---------------------------------------------------------


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A finite product of eta(scale * z)^exponent factors."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        scales = [s for s, _ in self.factors]
        if len(set(scales)) != len(scales):
            raise ValueError("duplicate scale in eta quotient")
        if any(s <= 0 for s in scales):
            raise ValueError("scales must be positive")
        if any(e == 0 for _, e in self.factors):
            raise ValueError("zero exponent in eta quotient")

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    @property
    def q_order(self) -> Fraction:
        return Fraction(sum(s * e for s, e in self.factors), 24)


# the hauptmodul t and the cube powers of the weight-3 cuspform pair
T_SPEC = EtaQuotientSpec(((1, 8), (4, 4), (2, -12)))
H1_SPEC = EtaQuotientSpec(((1, 4), (2, 10), (8, 8), (4, -4)))
H2_SPEC = EtaQuotientSpec(((1, 8), (4, 10), (8, 4), (2, -4)))

# weight-3 building blocks of the level-432 newform, one per class mod 12
F1_SPEC = EtaQuotientSpec(((2, 3), (3, 1), (6, -1), (1, -1)))
F5_SPEC = EtaQuotientSpec(((1, 1), (2, 3), (3, 3), (6, -1)))
F7_SPEC = EtaQuotientSpec(((6, 3), (1, 1), (2, -1), (3, -1)))
F11_SPEC = EtaQuotientSpec(((3, 1), (1, 3), (6, 3), (2, -1)))


def _pentagonal(scale: int, n: int):
    """Sparse exponents/signs of prod_{k>=1} (1 - q^(scale*k)) up to q^n."""
    out = [(0, 1)]
    j = 1
    while True:
        hit = False
        for m in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            e = scale * m
            if e < n:
                out.append((e, 1 if j % 2 == 0 else -1))
                hit = True
        if not hit:
            break
        j += 1
    return out


def _euler_mul(arr, pent):
    n = len(arr)
    out = [0] * n
    for off, sign in pent:
        if sign > 0:
            for i in range(n - off):
                out[i + off] += arr[i]
        else:
            for i in range(n - off):
                out[i + off] -= arr[i]
    return out


def _euler_div(arr, pent):
    # solve b * P = a for b given sparse pentagonal P with P[0] = 1
    n = len(arr)
    out = [0] * n
    rest = pent[1:]
    for i in range(n):
        acc = arr[i]
        for off, sign in rest:
            if off > i:
                break
            acc -= sign * out[i - off]
        out[i] = acc
    return out


def eta_quotient(spec: EtaQuotientSpec, n: int, allow_fractional: bool = False) -> QSeries:
    """First n coefficients of the eta quotient, exactly.

    The leading exponent is (sum of scale*exponent)/24; unless
    allow_fractional is set a non-integral value is an error, since callers
    who want the fractional case are expected to say so.
    """
    lead = spec.q_order
    if lead.denominator != 1 and not allow_fractional:
        raise ValueError(
            "eta quotient has fractional q-order %s; pass allow_fractional=True" % lead
        )
    arr = [1] + [0] * (n - 1)
    for scale, exponent in spec.factors:
        pent = _pentagonal(scale, n)
        step = _euler_mul if exponent > 0 else _euler_div
        for _ in range(abs(exponent)):
            arr = step(arr, pent)
    return QSeries(lead, arr)


def e6_series(n: int) -> QSeries:
    """1 + 12 * sum_{k>=1} (sigma(3k) - 3 sigma(k)) q^k, a weight-2 form."""
    sigma = [0] * (3 * n + 1)
    for d in range(1, 3 * n + 1):
        for m in range(d, 3 * n + 1, d):
            sigma[m] += d
    coeffs = [1] + [12 * (sigma[3 * k] - 3 * sigma[k]) for k in range(1, n)]
    return QSeries(0, coeffs)


def hauptmodul_t(n: int) -> QSeries:
    """The hauptmodul t = 1 - 8q + 32q^2 - ..."""
    return eta_quotient(T_SPEC, n)


def hauptmodul_r(a: int, n: int, strict_rational: bool = False):
    """The degree-3 cover coordinate r_a with a * r_a^3 = t + 1.

    Returns (series, cube_scale): the exact expansion is
    cube_scale^(1/3) * series.  For a = 2 the scale is 1 and the series is
    the honest rational expansion with r(i*infinity) = 1; for a = 4 the
    leading coefficient 1/2 is not a rational cube, so the irrational scale
    1/2 is returned symbolically (or an error in strict-rational mode).
    """
    if a not in (2, 4):
        raise ValueError("a must be 2 or 4")
    t = hauptmodul_t(n)
    s = (t + 1) / 2
    if a == 2:
        return s.cbrt(), Fraction(1)
    if strict_rational:
        raise NonCubeError("r_4 has leading coefficient 1/2, not a rational cube")
    return s.cbrt(), Fraction(1, 2)


def cuspform_basis(n: int) -> tuple[QSeries, QSeries]:
    """The pair (h1, h2) of weight-3 cuspforms, as exact cube roots.

    h_i^3 is an eta quotient with integer coefficients and q-order 3; the
    cube roots start at q with coefficient 1 and have 3-power denominators.
    """
    h1 = eta_quotient(H1_SPEC, n).cbrt()
    h2 = eta_quotient(H2_SPEC, n).cbrt()
    return h1, h2
