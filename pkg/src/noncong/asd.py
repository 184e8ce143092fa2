"""Three-term p-adic congruences for the cuspform pair (h1, h2).

The degree-2 Frobenius polynomial at p splits the two-dimensional space
spanned by h1 and h2 into eigenlines, and each eigenline's q-expansion
satisfies a three-term recursion mod increasing powers of p: for every
n >= 1 and r >= 1,

    a(n p^r) - A * a(n p^{r-1}) + B * a(n p^{r-2})  ==  0  (mod p^{2r}),

with a(x) read as 0 at non-integral x.  Which eigenline goes with which
(A, B) is fixed only up to a sign / embedding choice, so the checker
searches the (at most four) pairings and reports the one that holds.

The shape of the eigenbasis depends on p mod 12:

  p == 1 (mod 3):   basis h1, h2;  A, B are the two embeddings into Z_p
                    of the quadratic data (a_p, b_p * p^2) read off the
                    factored degree-2 polynomial over Q(sqrt(-3)).
  p == 5 (mod 12):  basis h1 +- (sqrt(2)/cbrt(2)) h2, with
                    X^2 +- a_p sqrt(-2) X - p^2.
  p == 11 (mod 12): basis h1 +- (sqrt(-2)/cbrt(2)) h2, with
                    X^2 +- a_p sqrt(-6) X - p^2.

All arithmetic happens in Z/p^M, or in its quadratic extension
Z/p^M[x]/(x^2 - d) when a needed square root does not exist mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import quad_coords
from .frobchar import char_poly, factor_over_quadratic
from .qseries import QSeries, cuspform_basis


class PAdicError(ArithmeticError):
    pass


# -- rings -----------------------------------------------------------------


class PAdicRing:
    """Z/p^M, optionally extended by a root of x^2 - d (d a unit mod p).

    A residue d is permitted (the ring is then Z/p^M x Z/p^M in disguise
    and has zero divisors); the basis constructor never builds that case,
    but consistency tests do.
    """

    def __init__(self, p: int, precision: int, ext: int | None = None):
        if p < 2:
            raise ValueError("p must be a prime, got %d" % p)
        if precision < 1:
            raise ValueError("precision must be >= 1, got %d" % precision)
        self.p = p
        self.precision = precision
        self.modulus = p**precision
        if ext is not None and ext % p == 0:
            raise ValueError("extension discriminant %d is not a unit mod %d" % (ext, p))
        self.ext = ext

    @property
    def degree(self) -> int:
        return 1 if self.ext is None else 2

    def __eq__(self, other):
        return (
            isinstance(other, PAdicRing)
            and (self.p, self.precision, self.ext) == (other.p, other.precision, other.ext)
        )

    def __hash__(self):
        return hash((self.p, self.precision, self.ext))

    def __repr__(self):
        if self.ext is None:
            return "PAdicRing(p=%d, precision=%d)" % (self.p, self.precision)
        return "PAdicRing(p=%d, precision=%d, ext=x^2-%d)" % (self.p, self.precision, self.ext)

    def elem(self, x) -> "PAdicElem":
        """Coerce an int, Fraction, or element of a compatible ring."""
        if isinstance(x, PAdicElem):
            if x.ring == self:
                return x
            # base-ring elements lift into the extension
            if (
                x.ring.p == self.p
                and x.ring.precision == self.precision
                and x.ring.ext is None
                and self.ext is not None
            ):
                return PAdicElem(self, x.coords + (0,))
            raise ValueError("element of %r cannot enter %r" % (x.ring, self))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PAdicError(
                    "denominator %d is divisible by p = %d" % (x.denominator, self.p)
                )
            value = x.numerator * pow(x.denominator, -1, self.modulus)
        else:
            value = int(x)
        coords = (value % self.modulus,) + (0,) * (self.degree - 1)
        return PAdicElem(self, coords)

    def from_coords(self, a, b) -> "PAdicElem":
        if self.ext is None:
            raise ValueError("ring has no extension coordinate")
        return PAdicElem(self, (int(a) % self.modulus, int(b) % self.modulus))

    @property
    def zero(self) -> "PAdicElem":
        return self.elem(0)

    @property
    def one(self) -> "PAdicElem":
        return self.elem(1)

    @property
    def generator(self) -> "PAdicElem":
        """The adjoined square root of the extension discriminant."""
        return self.from_coords(0, 1)


def _coord_valuation(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicElem:
    """An element of a PAdicRing, coordinates in the basis 1, sqrt(d)."""

    ring: PAdicRing
    coords: tuple[int, ...]

    def _coerce(self, other):
        if isinstance(other, PAdicElem):
            if other.ring == self.ring:
                return other
            if other.ring.ext is None and self.ring.ext is not None:
                return self.ring.elem(other)
            return None
        if isinstance(other, (int, Fraction)):
            return self.ring.elem(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m = self.ring.modulus
        return PAdicElem(self.ring, tuple((a + b) % m for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.modulus
        return PAdicElem(self.ring, tuple((-a) % m for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m = self.ring.modulus
        if self.ring.ext is None:
            return PAdicElem(self.ring, ((self.coords[0] * other.coords[0]) % m,))
        a, b = self.coords
        c, d = other.coords
        e = self.ring.ext
        return PAdicElem(self.ring, ((a * c + b * d * e) % m, (a * d + b * c) % m))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "PAdicElem":
        m = self.ring.modulus
        if self.ring.ext is None:
            if self.coords[0] % self.ring.p == 0:
                raise PAdicError("not a unit: %r" % (self,))
            return PAdicElem(self.ring, (pow(self.coords[0], -1, m),))
        a, b = self.coords
        norm = (a * a - self.ring.ext * b * b) % m
        if norm % self.ring.p == 0:
            raise PAdicError("not a unit: %r" % (self,))
        ninv = pow(norm, -1, m)
        return PAdicElem(self.ring, ((a * ninv) % m, (-b * ninv) % m))

    def valuation(self) -> int:
        """min coordinate valuation, capped at the working precision."""
        cap = self.ring.precision
        return min(_coord_valuation(c, self.ring.p, cap) for c in self.coords)

    def congruent_zero(self, k: int) -> bool:
        """Whether the element is 0 mod p^k (requires k within precision)."""
        if k > self.ring.precision:
            raise PAdicError(
                "cannot certify congruence mod p^%d at precision %d" % (k, self.ring.precision)
            )
        return self.valuation() >= k

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        if self.ring.ext is None:
            return "%d (mod %d^%d)" % (self.coords[0], self.ring.p, self.ring.precision)
        return "%d + %d*s (mod %d^%d, s^2=%d)" % (
            self.coords[0],
            self.coords[1],
            self.ring.p,
            self.ring.precision,
            self.ring.ext,
        )


# -- Hensel lifting --------------------------------------------------------


def hensel_sqrt(d, ring: PAdicRing) -> PAdicElem:
    """The square root of d in Z/p^M whose mod-p residue is the smaller root.

    d must be a unit square mod p; a nonresidue raises, with the message
    pointing at the quadratic extension ring where the root does live.
    """
    if ring.ext is not None:
        raise ValueError("hensel_sqrt lifts in the base ring; extensions adjoin the root directly")
    p, m = ring.p, ring.modulus
    d = ring.elem(Fraction(d)).coords[0]
    if d % p == 0:
        raise PAdicError("sqrt argument %d is not a unit mod %d" % (d, p))
    r0 = _sqrt_mod_p(d % p, p)
    if r0 is None:
        raise PAdicError(
            "%d is not a square mod %d; use PAdicRing(%d, %d, ext=%d) and its generator"
            % (d % p, p, p, ring.precision, d % p)
        )
    r0 = min(r0, p - r0)
    # Newton: x -> (x + d/x) / 2, doubling correct digits each step
    x = r0
    inv2 = pow(2, -1, m)
    while True:
        nxt = ((x + d * pow(x, -1, m)) * inv2) % m
        if nxt == x:
            break
        x = nxt
    return PAdicElem(ring, (x,))


def hensel_cbrt(c, ring: PAdicRing) -> PAdicElem:
    """The cube root of a unit c in Z/p^M.

    For p == 2 mod 3 cubing is a bijection on units so the root is unique;
    for p == 1 mod 3 a root exists only for cubes (error otherwise).
    """
    if ring.ext is not None:
        raise ValueError("hensel_cbrt lifts in the base ring")
    p, m = ring.p, ring.modulus
    c = ring.elem(Fraction(c)).coords[0]
    if c % p == 0:
        raise PAdicError("cbrt argument %d is not a unit mod %d" % (c, p))
    if p % 3 == 2:
        r0 = pow(c % p, pow(3, -1, p - 1), p)
    else:
        roots = [x for x in range(1, p) if pow(x, 3, p) == c % p]
        if not roots:
            raise PAdicError("%d is not a cube mod %d (p == 1 mod 3)" % (c % p, p))
        r0 = min(roots)
    x = r0
    inv3 = pow(3, -1, m)
    while True:
        # x -> x - (x^3 - c)/(3x^2)
        nxt = (x - (pow(x, 3, m) - c) * pow(x * x, -1, m) * inv3) % m
        if nxt == x:
            break
        x = nxt
    return PAdicElem(ring, (x,))


def _sqrt_mod_p(a: int, p: int) -> int | None:
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    mm, cc, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = (t2 * t2) % p
            i += 1
        b = pow(cc, 1 << (mm - i - 1), p)
        mm, cc = i, (b * b) % p
        t, r = (t * cc) % p, (r * b) % p
    return r


# -- series embedding ------------------------------------------------------


def embed_series(s: QSeries, ring: PAdicRing) -> list[PAdicElem]:
    """The coefficient list a(0), a(1), ... of s reduced into the ring.

    Fails if p divides any coefficient denominator, naming the index.
    """
    if s.lead < 0 or Fraction(s.lead).denominator != 1:
        raise ValueError("series must start at a non-negative integer power")
    out = []
    order = int(s.order)
    for n in range(order):
        c = s.coeff(n)
        if c.denominator % ring.p == 0:
            raise PAdicError(
                "coefficient %d has denominator %d divisible by p = %d"
                % (n, c.denominator, ring.p)
            )
        out.append(ring.elem(c))
    return out


# -- the eigenbasis spec ---------------------------------------------------


@dataclass(frozen=True)
class ASDBasisSpec:
    """Eigenbasis and characteristic pairs for one prime.

    basis: two (name, (c1, c2)) with the combination c1*h1 + c2*h2;
    char_pairs: two (name, (A, B)).  All scalars live in `ring`.
    """

    p: int
    klass: int
    ring: PAdicRing
    basis: tuple
    char_pairs: tuple

    def __post_init__(self):
        if len(self.basis) != 2 or len(self.char_pairs) != 2:
            raise ValueError("expected two basis elements and two characteristic pairs")
        for _, (_, b) in self.char_pairs:
            if b.valuation() != 2:
                raise ValueError("characteristic constant term must have valuation exactly 2")


def asd_basis(p: int, M: int = 8, factored=None) -> ASDBasisSpec:
    """Build the eigenbasis data at p from the degree-2 Frobenius polynomial.

    factored: optional precomputed (record, g, D) triple to skip recounting.
    """
    if p in (2, 3):
        raise ValueError("p = %d is a level prime" % p)
    if factored is None:
        rec = char_poly(p, 2)
        g, disc = factor_over_quadratic(rec)
    else:
        rec, g, disc = factored
    base = PAdicRing(p, M)
    u = -g.coeff(1)
    v = g.coeff(0)
    klass = p % 12

    if p % 3 == 1:
        # eigenlines are h1 and h2 themselves; the two (A, B) come from the
        # two embeddings of sqrt(-3) into Z_p
        alpha, beta = quad_coords(u, -3)
        gamma, delta = quad_coords(v, -3)
        if v**6 != (p * p) ** 6:
            raise PAdicError(
                "p = %d: the degree-0 factor coefficient is not p^2 times a sixth root of unity"
                % p
            )
        rho = hensel_sqrt(-3, base)
        pairs = []
        for name, root in (("tau1", rho), ("tau2", -rho)):
            coeff_a = base.elem(alpha) + base.elem(beta) * root
            coeff_b = base.elem(gamma) + base.elem(delta) * root
            pairs.append((name, (coeff_a, coeff_b)))
        return ASDBasisSpec(
            p=p,
            klass=klass,
            ring=base,
            basis=(("h1", (base.one, base.zero)), ("h2", (base.zero, base.one))),
            char_pairs=tuple(pairs),
        )

    # p == 2 mod 3: cbrt(2) lifts in the base ring
    cb = hensel_cbrt(2, base)

    if klass == 5:
        # basis h1 +- (sqrt(2)/cbrt(2)) h2, char poly X^2 +- a sqrt(-2) X - p^2
        alpha, a_p = quad_coords(u, -2)
        if alpha != 0:
            raise PAdicError("p = %d: degree-2 trace is not a pure multiple of sqrt(-2)" % p)
        i_unit = hensel_sqrt(-1, base)  # p == 1 mod 4
        if p % 8 == 1:
            ring = base
            s2 = hensel_sqrt(2, base)
        else:
            ring = PAdicRing(p, M, ext=2)
            s2 = ring.generator
        cbl = ring.elem(cb)
        c = s2 * cbl.inverse()
        sqrt_m2 = ring.elem(i_unit) * s2
        a_scaled = ring.elem(Fraction(a_p)) * sqrt_m2
        b_const = ring.elem(-p * p)
        return ASDBasisSpec(
            p=p,
            klass=klass,
            ring=ring,
            basis=(("h1+c*h2", (ring.one, c)), ("h1-c*h2", (ring.one, -c))),
            char_pairs=(
                ("+a*sqrt(-2)", (a_scaled, b_const)),
                ("-a*sqrt(-2)", (-a_scaled, b_const)),
            ),
        )

    if klass == 11:
        # basis h1 +- (sqrt(-2)/cbrt(2)) h2, char poly X^2 +- a sqrt(-6) X - p^2
        alpha, a_p = quad_coords(u, -6)
        if alpha != 0:
            raise PAdicError("p = %d: degree-2 trace is not a pure multiple of sqrt(-6)" % p)
        s3 = hensel_sqrt(3, base)  # 3 is a square mod p == 11 mod 12
        if p % 8 == 3:
            ring = base
            sm2 = hensel_sqrt(-2, base)
        else:
            ring = PAdicRing(p, M, ext=-2)
            sm2 = ring.generator
        cbl = ring.elem(cb)
        c = sm2 * cbl.inverse()
        sqrt_m6 = ring.elem(s3) * sm2
        a_scaled = ring.elem(Fraction(a_p)) * sqrt_m6
        b_const = ring.elem(-p * p)
        return ASDBasisSpec(
            p=p,
            klass=klass,
            ring=ring,
            basis=(("h1+c*h2", (ring.one, c)), ("h1-c*h2", (ring.one, -c))),
            char_pairs=(
                ("+a*sqrt(-6)", (a_scaled, b_const)),
                ("-a*sqrt(-6)", (-a_scaled, b_const)),
            ),
        )

    raise ValueError("p = %d falls in no residue class handled here" % p)


# -- the congruence checker ------------------------------------------------


@dataclass(frozen=True)
class PairingResult:
    """One basis element against one characteristic pair."""

    basis_name: str
    pair_name: str
    checked: int
    failures: tuple  # (n, r, achieved valuation, required) with p not dividing n
    failures_p_divides: tuple  # same, for the overlapping p | n instances
    floors: tuple  # (r, min achieved valuation over its instances), per r

    @property
    def ok(self) -> bool:
        return not self.failures and not self.failures_p_divides


@dataclass(frozen=True)
class CongruenceReport:
    p: int
    nmax: int
    precision: int
    klass: int
    results: tuple  # all four PairingResult
    matching: tuple  # ((basis_name, pair_name), ...) if a bijection of passes exists

    @property
    def ok(self) -> bool:
        return len(self.matching) == 2

    def passing(self, basis_name: str) -> list[str]:
        return [r.pair_name for r in self.results if r.basis_name == basis_name and r.ok]

    def summary(self) -> str:
        lines = [
            "p = %d (class %d mod 12), n*p^r <= %d, precision p^%d"
            % (self.p, self.klass, self.nmax, self.precision)
        ]
        for r in self.results:
            verdict = "holds" if r.ok else "fails (%d bad)" % (
                len(r.failures) + len(r.failures_p_divides)
            )
            lines.append(
                "  %-10s vs %-14s %s over %d instances" % (r.basis_name, r.pair_name, verdict, r.checked)
            )
        if self.ok:
            lines.append(
                "  matched: " + ", ".join("%s <-> %s" % pair for pair in self.matching)
            )
        else:
            lines.append("  NO consistent matching of basis elements to characteristic pairs")
        return "\n".join(lines)


def verify_congruences(
    p: int,
    nmax: int = 600,
    M: int = 8,
    spec: ASDBasisSpec | None = None,
    series: tuple[QSeries, QSeries] | None = None,
) -> CongruenceReport:
    """Check the three-term congruences for every basis/pair combination.

    Never raises on a failed congruence; failures land in the report,
    split into p | n and p coprime-to-n instances.
    """
    rmax = 0
    while p ** (rmax + 1) <= nmax:
        rmax += 1
    if M < 2 * rmax + 2:
        raise ValueError(
            "precision %d cannot certify mod p^%d congruences; need at least %d"
            % (M, 2 * rmax, 2 * rmax + 2)
        )
    if spec is None:
        spec = asd_basis(p, M)
    if series is None:
        series = cuspform_basis(nmax + 1)
    h1, h2 = series
    ring = spec.ring
    e1 = embed_series(h1.truncate(nmax + 1), ring)
    e2 = embed_series(h2.truncate(nmax + 1), ring)

    results = []
    for basis_name, (c1, c2) in spec.basis:
        a = [c1 * x + c2 * y for x, y in zip(e1, e2)]
        lead = a[1]
        inv = lead.inverse()  # a unit: see the basis construction
        a = [x * inv for x in a]
        for pair_name, (coeff_a, coeff_b) in spec.char_pairs:
            failures = []
            failures_pdiv = []
            checked = 0
            floors = []
            for r in range(1, rmax + 1):
                pr = p**r
                req = 2 * r
                floor = M
                for n in range(1, nmax // pr + 1):
                    idx = n * pr
                    x = a[idx] - coeff_a * a[idx // p]
                    if idx % (p * p) == 0:
                        x = x + coeff_b * a[idx // (p * p)]
                    checked += 1
                    val = x.valuation()
                    floor = min(floor, val)
                    if val < req:
                        entry = (n, r, val, req)
                        if n % p == 0:
                            failures_pdiv.append(entry)
                        else:
                            failures.append(entry)
                floors.append((r, floor))
            results.append(
                PairingResult(
                    basis_name=basis_name,
                    pair_name=pair_name,
                    checked=checked,
                    failures=tuple(failures),
                    failures_p_divides=tuple(failures_pdiv),
                    floors=tuple(floors),
                )
            )

    matching = _match(spec, results)
    return CongruenceReport(
        p=p,
        nmax=nmax,
        precision=M,
        klass=spec.klass,
        results=tuple(results),
        matching=matching,
    )


def _match(spec: ASDBasisSpec, results) -> tuple:
    """A bijection basis element -> passing characteristic pair, if one exists."""
    names = [name for name, _ in spec.basis]
    passing = {
        name: [r.pair_name for r in results if r.basis_name == name and r.ok] for name in names
    }
    for first in passing[names[0]]:
        for second in passing[names[1]]:
            if first != second:
                return ((names[0], first), (names[1], second))
    return ()
