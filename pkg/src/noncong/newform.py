"""The level-432 weight-3 newform and its cubic and quartic twist checks.

The form is assembled from four eta-quotient blocks, one per residue
class j mod 12, rescaled by q -> q^12 and combined as

    f = f_1(12z) + 6 sqrt(2) f_5(12z) + sqrt(-3) f_7(12z) + 6 sqrt(-6) f_11(12z),

so every coefficient lives in A + B sqrt(2) + C sqrt(-3) + D sqrt(-6)
with integer components and at most one component nonzero per n.  The
characters tying the two surfaces to f are realized as residue symbols:
the cubic symbol (2/v)_3 on primes of Z[w] and the quartic symbol
(3/v)_4 on primes of Z[i], both by Euler's criterion in the residue
field.  Their pairing against the counted Euler factors is a search over
the conjugate ambiguities, with the matching choice reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import CycloElem, from_quad
from .frobchar import FrobeniusRecord, factor_over_quadratic
from .qseries import (
    F1_SPEC,
    F5_SPEC,
    F7_SPEC,
    F11_SPEC,
    e6_series,
    eta_quotient,
)


@dataclass(frozen=True)
class NewformCoeff:
    """A + B sqrt(2) + C sqrt(-3) + D sqrt(-6) with rational components."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    @staticmethod
    def of(A=0, B=0, C=0, D=0) -> "NewformCoeff":
        return NewformCoeff(Fraction(A), Fraction(B), Fraction(C), Fraction(D))

    def __add__(self, other: "NewformCoeff") -> "NewformCoeff":
        return NewformCoeff(
            self.A + other.A, self.B + other.B, self.C + other.C, self.D + other.D
        )

    def __sub__(self, other: "NewformCoeff") -> "NewformCoeff":
        return self + (-other)

    def __neg__(self) -> "NewformCoeff":
        return NewformCoeff(-self.A, -self.B, -self.C, -self.D)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NewformCoeff(self.A * q, self.B * q, self.C * q, self.D * q)
        a1, b1, c1, d1 = self.A, self.B, self.C, self.D
        a2, b2, c2, d2 = other.A, other.B, other.C, other.D
        return NewformCoeff(
            a1 * a2 + 2 * b1 * b2 - 3 * c1 * c2 - 6 * d1 * d2,
            a1 * b2 + b1 * a2 - 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj(self) -> "NewformCoeff":
        return NewformCoeff(self.A, self.B, -self.C, -self.D)

    def is_zero(self) -> bool:
        return not (self.A or self.B or self.C or self.D)

    def is_rational(self) -> bool:
        return not (self.B or self.C or self.D)

    def to_cyclo(self) -> CycloElem:
        acc = CycloElem.from_rational(self.A)
        for comp, d in ((self.B, 2), (self.C, -3), (self.D, -6)):
            if comp:
                acc = acc + from_quad(0, comp, d)
        return acc

    def to_complex(self) -> complex:
        return (
            complex(self.A)
            + complex(self.B) * 2**0.5
            + complex(self.C) * 1j * 3**0.5
            + complex(self.D) * 1j * 6**0.5
        )


COEFF_ZERO = NewformCoeff.of()
COEFF_ONE = NewformCoeff.of(1)

#: the twelve displayed leading coefficients, indexed by n; components are
#: the rational parts along (1, sqrt(2), sqrt(-3), sqrt(-6))
DISPLAYED_COEFFS = {
    1: NewformCoeff.of(A=1),
    5: NewformCoeff.of(B=6),
    7: NewformCoeff.of(C=1),
    11: NewformCoeff.of(D=6),
    13: NewformCoeff.of(A=13),
    17: NewformCoeff.of(B=-6),
    19: NewformCoeff.of(C=11),
    23: NewformCoeff.of(D=-18),
    25: NewformCoeff.of(A=47),
    29: NewformCoeff.of(B=-24),
    31: NewformCoeff.of(C=24),
    35: NewformCoeff.of(D=6),
}


def _int_coeff(series, n: int) -> Fraction:
    c = series.coeff(n)
    if c.denominator != 1:
        raise ArithmeticError("non-integer coefficient at q^%d" % n)
    return c


def build_f(N: int) -> list[NewformCoeff]:
    """Coefficients c_0..c_N of f; c_0 = 0 and index n holds c_n."""
    if N < 1:
        raise ValueError("need N >= 1")
    terms = N // 12 + 2
    e6 = e6_series(terms)
    blocks = {
        1: eta_quotient(F1_SPEC, terms, allow_fractional=True) * e6,
        5: eta_quotient(F5_SPEC, terms, allow_fractional=True),
        7: eta_quotient(F7_SPEC, terms, allow_fractional=True) * e6,
        11: eta_quotient(F11_SPEC, terms, allow_fractional=True),
    }
    blocks = {j: s.substitute_power(12) for j, s in blocks.items()}
    out = [COEFF_ZERO]
    for n in range(1, N + 1):
        j = n % 12
        if j == 1:
            out.append(NewformCoeff.of(A=_int_coeff(blocks[1], n)))
        elif j == 5:
            out.append(NewformCoeff.of(B=6 * _int_coeff(blocks[5], n)))
        elif j == 7:
            out.append(NewformCoeff.of(C=_int_coeff(blocks[7], n)))
        elif j == 11:
            out.append(NewformCoeff.of(D=6 * _int_coeff(blocks[11], n)))
        else:
            out.append(COEFF_ZERO)
    return out


def _primes_upto(n: int):
    sieve = bytearray([1]) * (n + 1) if n >= 0 else bytearray()
    out = []
    for k in range(2, n + 1):
        if sieve[k]:
            out.append(k)
            for m in range(k * k, n + 1, k):
                sieve[m] = 0
    return out


def chi_f(coeffs: list[NewformCoeff], p: int) -> int:
    """Nebentypus value at p from (c_p^2 - c_{p^2}) / p^2; must be +-1."""
    if 432 % p == 0:
        raise ValueError("p divides the level")
    if p * p >= len(coeffs):
        raise ValueError("need coefficients up to p^2")
    val = coeffs[p] * coeffs[p] - coeffs[p * p]
    if not val.is_rational():
        raise ArithmeticError("nebentypus not rational at p=%d" % p)
    q = val.A / (p * p)
    if q not in (1, -1):
        raise ArithmeticError("nebentypus %s at p=%d is not a sign" % (q, p))
    return int(q)


@dataclass(frozen=True)
class HeckeReport:
    nmax: int
    chi_table: dict
    violations: tuple
    chi_conjecture_mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def hecke_verify(coeffs: list[NewformCoeff], nmax: int) -> HeckeReport:
    """Eigenform structure on all indices with np <= nmax.

    Checks the recursion c_np = c_p c_n - chi(p) p^2 c_{n/p}, coprime
    multiplicativity, that chi depends only on p mod 12, and records any
    disagreement with the (-4/p) prediction without failing on it.
    """
    if len(coeffs) <= nmax:
        raise ValueError("need coefficients up to nmax")
    violations = []
    chi_table = {}
    for p in _primes_upto(nmax):
        if 432 % p == 0:
            continue
        if p * p < len(coeffs):
            chi_table[p] = chi_f(coeffs, p)
    by_class = {}
    for p, s in chi_table.items():
        by_class.setdefault(p % 12, set()).add(s)
    for cls, vals in by_class.items():
        if len(vals) != 1:
            violations.append(("chi-class", cls, tuple(sorted(vals))))
    mismatches = tuple(
        p for p, s in chi_table.items() if s != (1 if p % 4 == 1 else -1)
    )
    for p in _primes_upto(nmax):
        if 432 % p == 0 or p not in chi_table:
            continue
        chi = chi_table[p]
        n = 1
        while n * p <= nmax:
            lhs = coeffs[n * p] - coeffs[p] * coeffs[n]
            if n % p == 0:
                lhs = lhs + chi * p * p * coeffs[n // p]
            if not lhs.is_zero():
                violations.append(("hecke", n, p))
            n += 1
    for m in range(2, nmax + 1):
        for n in range(m + 1, nmax // m + 1):
            if gcd(m, n) != 1:
                continue
            if coeffs[m * n] != coeffs[m] * coeffs[n]:
                violations.append(("multiplicative", m, n))
    return HeckeReport(nmax, chi_table, tuple(violations), mismatches)


# -- residue symbols -------------------------------------------------------


@dataclass(frozen=True)
class EisensteinPrime:
    """a + b w, w a primitive cube root of unity, with norm a prime p."""

    a: int
    b: int

    @property
    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conj(self) -> "EisensteinPrime":
        # conjugation sends w to w^2 = -1 - w
        return EisensteinPrime(self.a - self.b, -self.b)

    def associates(self):
        a, b = self.a, self.b
        out = []
        for _ in range(3):
            out.append(EisensteinPrime(a, b))
            out.append(EisensteinPrime(-a, -b))
            a, b = -b, a - b  # multiply by w
        return out

    @staticmethod
    def above(p: int) -> "EisensteinPrime":
        """The primary generator (a = 2, b = 0 mod 3) of one prime over p."""
        if p % 3 != 1:
            raise ValueError("p must split, i.e. p = 1 mod 3")
        for b in range(1, p):
            disc = 4 * p - 3 * b * b
            if disc < 0:
                break
            r = round(disc**0.5)
            if r * r == disc and (r + b) % 2 == 0:
                cand = EisensteinPrime((r + b) // 2, b)
                assert cand.norm == p
                primary = [
                    u for u in cand.associates() if u.a % 3 == 2 and u.b % 3 == 0
                ]
                assert len(primary) == 1, "primary associate must be unique"
                return primary[0]
        raise AssertionError("no Eisenstein prime found above %d" % p)


@dataclass(frozen=True)
class GaussianPrime:
    """a + b i with norm a prime p = 1 mod 4."""

    a: int
    b: int

    @property
    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def conj(self) -> "GaussianPrime":
        return GaussianPrime(self.a, -self.b)

    def associates(self):
        a, b = self.a, self.b
        out = []
        for _ in range(4):
            out.append(GaussianPrime(a, b))
            a, b = -b, a  # multiply by i
        return out

    @staticmethod
    def above(p: int) -> "GaussianPrime":
        """The primary generator (1 mod (1+i)^3) of one prime over p."""
        if p % 4 != 1:
            raise ValueError("p must split, i.e. p = 1 mod 4")
        for b in range(1, p):
            r2 = p - b * b
            if r2 < 0:
                break
            a = round(r2**0.5)
            if a * a == r2:
                cand = GaussianPrime(a, b)
                primary = [
                    u
                    for u in cand.associates()
                    if u.b % 2 == 0 and (u.a + u.b) % 4 == 1
                ]
                assert len(primary) == 1, "primary associate must be unique"
                return primary[0]
        raise AssertionError("no Gaussian prime found above %d" % p)


def _residue_image(a: int, b: int, p: int) -> int:
    # the generator maps to 0, so the adjoined root reduces to -a/b mod p
    if b % p == 0:
        raise ValueError("degenerate generator")
    return (-a * pow(b, -1, p)) % p


OMEGA = from_quad(Fraction(-1, 2), Fraction(1, 2), -3)  # primitive cube root
I_UNIT = from_quad(0, 1, -1)


def cubic_character_psi(p: int, v: EisensteinPrime) -> CycloElem:
    """The cubic residue symbol (2/v)_3 as a cube root of unity.

    Euler's criterion in the residue field: 2^((p-1)/3) mod v equals the
    image of exactly one of 1, w, w^2.
    """
    if p % 3 != 1 or v.norm != p:
        raise ValueError("v must lie over a split p")
    w = _residue_image(v.a, v.b, p)
    assert (w * w + w + 1) % p == 0
    x = pow(2, (p - 1) // 3, p)
    if x == 1:
        return CycloElem.from_rational(1)
    if x == w:
        return OMEGA
    if x == (w * w) % p:
        return OMEGA * OMEGA
    raise AssertionError("Euler criterion landed outside mu_3 at p=%d" % p)


def quartic_character_chi(v: GaussianPrime) -> CycloElem:
    """The quartic residue symbol (3/v)_4 as a fourth root of unity."""
    p = v.norm
    if gcd(p, 6) != 1:
        raise ValueError("norm of v must be coprime to 6")
    u = _residue_image(v.a, v.b, p)
    assert (u * u + 1) % p == 0
    x = pow(3, (p - 1) // 4, p)
    if x == 1:
        return CycloElem.from_rational(1)
    if x == u:
        return I_UNIT
    if x == p - 1:
        return CycloElem.from_rational(-1)
    if x == p - u:
        return -I_UNIT
    raise AssertionError("Euler criterion landed outside mu_4 at p=%d" % p)


# -- Euler-factor twin checks ----------------------------------------------


@dataclass(frozen=True)
class TwistVerdict:
    p: int
    ok: bool
    detail: str


def twist_check_thm44(
    p: int, rec2: FrobeniusRecord, rec4: FrobeniusRecord
) -> TwistVerdict:
    """The a = 4 Euler factor is the cubic twist of the a = 2 one.

    Split p: trace(g_{p,4}) must equal psi(v) trace(g_{p,2}) for one of
    the conjugate/symbol pairings.  Inert p: psi is trivial there and the
    two quadratics must agree exactly.
    """
    g2, _ = factor_over_quadratic(rec2)
    g4, _ = factor_over_quadratic(rec4)
    if p % 3 == 2:
        ok = g2 == g4
        return TwistVerdict(p, ok, "inert: g2 == g4" if ok else "inert: g2 != g4")
    v = EisensteinPrime.above(p)
    u2 = -g2.coeff(1)
    u4 = -g4.coeff(1)
    for tag, vv in (("v", v), ("vbar", v.conj())):
        psi = cubic_character_psi(p, vv)
        for branch, t2 in (("u2", u2), ("u2bar", u2.conj())):
            if u4 == psi * t2:
                return TwistVerdict(p, True, "psi(%s) * %s" % (tag, branch))
    return TwistVerdict(p, False, "no pairing matches")


def modularity_check_thm53(
    p: int, rec4: FrobeniusRecord, c_p: NewformCoeff
) -> TwistVerdict:
    """trace(g_{p,4}) against the newform coefficient, twisted by chi.

    p = 1 mod 4: search +-chi(v) c_p over both primes v and both
    conjugates of c_p.  p = 3 mod 4: the inert consistency is
    trace = +-c_p up to conjugation.
    """
    g4, _ = factor_over_quadratic(rec4)
    u4 = -g4.coeff(1)
    cc = c_p.to_cyclo()
    if p % 4 == 1:
        v = GaussianPrime.above(p)
        for tag, vv in (("v", v), ("vbar", v.conj())):
            chi = quartic_character_chi(vv)
            for sign in (1, -1):
                for branch, c in (("c", cc), ("cbar", cc.conj())):
                    if u4 == chi * c * sign:
                        return TwistVerdict(
                            p, True, "%+d chi(%s) * %s" % (sign, tag, branch)
                        )
        return TwistVerdict(p, False, "no pairing matches")
    for sign in (1, -1):
        for branch, c in (("c", cc), ("cbar", cc.conj())):
            if u4 == c * sign:
                return TwistVerdict(p, True, "%+d * %s" % (sign, branch))
    return TwistVerdict(p, False, "no sign pattern matches")
