"""The operator algebra acting on the cuspform pair (h1, h2).

Two operators generate everything: the order-3 diagonal action zeta
(the Hauptmodul rotation r -> exp(2 pi i/3) r) and the Fricke-type
involution A of the tau-half-plane, tau -> -1/(8 tau).  In the ordered
basis (h1, h2) they are

    zeta = diag(w, w^-1),   A = [[0, i 2^(4/3)], [i 2^(5/3), 0]],

with w a primitive cube root of unity.  The three products

    B_{-1} = A,  B_{-3} = zeta - zeta^2,  B_3 = A (zeta - zeta^2)

square to -8, -3, -24 and pairwise anticommute, so after scaling by
sqrt(8) and sqrt(3) they give a quaternion triple J_s with J_s^2 = -1.

Matrix entries are exact elements of the degree-3 tower over Q(zeta24),
so every identity here is checked by exact arithmetic.  The only float
work is numeric_slash_check, which pins down the one convention the
algebra cannot: whether the displayed matrix multiplies coordinate
columns or basis rows.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .exact import CycloElem, CycloTowerElem, root_of_unity, sqrt_embed
from .qseries import cuspform_basis

_ZERO = CycloTowerElem((CycloElem.from_rational(0),) * 3)
_ONE = CycloTowerElem.cbrt2() ** 0


def _tower(value) -> CycloTowerElem:
    if isinstance(value, CycloTowerElem):
        return value
    return _ONE * value


@dataclass(frozen=True)
class OpMatrix:
    """A 2x2 matrix with exact tower entries, in the basis (h1, h2)."""

    entries: tuple[tuple[CycloTowerElem, CycloTowerElem], tuple[CycloTowerElem, CycloTowerElem]]

    @classmethod
    def of(cls, a, b, c, d) -> "OpMatrix":
        return cls(((_tower(a), _tower(b)), (_tower(c), _tower(d))))

    @classmethod
    def identity(cls) -> "OpMatrix":
        return cls.of(1, 0, 0, 1)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return OpMatrix(((a + e, b + f), (c + g, d + h)))

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + (-other)

    def __neg__(self) -> "OpMatrix":
        (a, b), (c, d) = self.entries
        return OpMatrix(((-a, -b), (-c, -d)))

    def __mul__(self, other) -> "OpMatrix":
        if isinstance(other, OpMatrix):
            (a, b), (c, d) = self.entries
            (e, f), (g, h) = other.entries
            return OpMatrix(
                ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
            )
        s = _tower(other)
        (a, b), (c, d) = self.entries
        return OpMatrix(((a * s, b * s), (c * s, d * s)))

    def __rmul__(self, other) -> "OpMatrix":
        return self * other  # scalars commute with everything here

    def __pow__(self, n: int) -> "OpMatrix":
        out = OpMatrix.identity()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, s) -> "OpMatrix":
        return self * s

    def is_scalar(self, value) -> bool:
        (a, b), (c, d) = self.entries
        v = _tower(value)
        return a == v and d == v and b.is_zero() and c.is_zero()

    def apply_col(self, vec):
        """Matrix times coordinate column (v1, v2)."""
        (a, b), (c, d) = self.entries
        v1, v2 = (_tower(x) for x in vec)
        return (a * v1 + b * v2, c * v1 + d * v2)

    def apply_row(self, vec):
        """Row (v1, v2) times matrix."""
        (a, b), (c, d) = self.entries
        v1, v2 = (_tower(x) for x in vec)
        return (v1 * a + v2 * c, v1 * b + v2 * d)

    def to_complex(self):
        return [[x.to_complex() for x in row] for row in self.entries]


# the two generators
_W = root_of_unity(8)  # primitive cube root of unity
_I = root_of_unity(6)
_CBRT2 = CycloTowerElem.cbrt2()

ZETA_OP = OpMatrix.of(_W, 0, 0, _W.inv())
A_OP = OpMatrix.of(0, _I * 2 * _CBRT2, _I * 2 * _CBRT2 * _CBRT2, 0)

B_MINUS_1 = A_OP
B_MINUS_3 = ZETA_OP - ZETA_OP * ZETA_OP
B_3 = A_OP * B_MINUS_3


def _unit_j(matrix: OpMatrix, divisor: CycloElem) -> OpMatrix:
    return matrix * _tower(divisor).inv()


J_MINUS_1 = _unit_j(B_MINUS_1, sqrt_embed(2) * 2)
J_MINUS_3 = _unit_j(B_MINUS_3, sqrt_embed(3))
J_3 = J_MINUS_1 * J_MINUS_3


@dataclass(frozen=True)
class AlgebraVerdict:
    identities: tuple  # (name, bool) pairs

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.identities)

    def failed(self):
        return [name for name, v in self.identities if not v]


def operator_algebra_check() -> AlgebraVerdict:
    """Exact verification of the squares, anticommutators, and unit triple."""
    anti_b = B_MINUS_1 * B_MINUS_3 + B_MINUS_3 * B_MINUS_1
    anti_j = J_MINUS_1 * J_MINUS_3 + J_MINUS_3 * J_MINUS_1
    checks = (
        ("B(-1)^2 = -8", (B_MINUS_1 * B_MINUS_1).is_scalar(-8)),
        ("B(-3)^2 = -3", (B_MINUS_3 * B_MINUS_3).is_scalar(-3)),
        ("B(3)^2 = -24", (B_3 * B_3).is_scalar(-24)),
        ("B(-1)B(-3) = -B(-3)B(-1)", anti_b.is_scalar(0)),
        ("J(-1)^2 = -1", (J_MINUS_1 * J_MINUS_1).is_scalar(-1)),
        ("J(-3)^2 = -1", (J_MINUS_3 * J_MINUS_3).is_scalar(-1)),
        ("J(-1)J(-3) = -J(-3)J(-1)", anti_j.is_scalar(0)),
        ("J(3)^2 = -1", (J_3 * J_3).is_scalar(-1)),
        ("zeta^3 = 1", (ZETA_OP**3).is_scalar(1)),
    )
    return AlgebraVerdict(identities=checks)


# -- eigenvectors ----------------------------------------------------------

_B_BY_S = {-1: B_MINUS_1, -3: B_MINUS_3, 3: B_3}


@dataclass(frozen=True)
class EigenPair:
    s: int
    convention: str
    vectors: tuple  # two (vector, eigenvalue) with exact entries


def eigenbasis(s: int, convention: str = "column") -> EigenPair:
    """The two eigenvectors of B_s as combinations of (h1, h2).

    convention picks whether B_s acts on coordinate columns or basis
    rows; the numeric slash check discovers which one the displayed
    A-matrix actually uses (it is the column action).
    """
    if s not in _B_BY_S:
        raise ValueError("s must be one of -1, -3, 3")
    if convention not in ("column", "row"):
        raise ValueError("convention must be 'column' or 'row'")
    matrix = _B_BY_S[s]
    if s == -3:
        # already diagonal
        vecs = (
            ((_ONE, _ZERO), _tower(sqrt_embed(-3))),
            ((_ZERO, _ONE), _tower(-sqrt_embed(-3))),
        )
        return EigenPair(s=s, convention=convention, vectors=vecs)
    # antidiagonal: eigenvalue lambda with lambda^2 = (top right)(bottom left),
    # eigenvector (1, c)
    (_, top), (bottom, _) = matrix.entries
    # sqrt(-8) = 2 sqrt(-2) and sqrt(-24) = 2 sqrt(-6)
    lam = _tower(sqrt_embed({-1: -2, 3: -6}[s]) * 2)
    vecs = []
    for eig in (lam, -lam):
        if convention == "column":
            # bottom * 1 = eig * c
            c = bottom * eig.inv()
        else:
            # c * bottom = eig * 1
            c = eig * bottom.inv()
        vecs.append(((_ONE, c), eig))
    pair = EigenPair(s=s, convention=convention, vectors=tuple(vecs))
    _assert_eigen(matrix, pair)
    return pair


def _assert_eigen(matrix: OpMatrix, pair: EigenPair) -> None:
    for vec, eig in pair.vectors:
        image = matrix.apply_col(vec) if pair.convention == "column" else matrix.apply_row(vec)
        want = tuple(eig * v for v in vec)
        if image != want:
            raise AssertionError("eigenvector equation fails for s=%d" % pair.s)


def stated_combination_ratio(s: int) -> CycloTowerElem:
    """The h2-coefficient of the eigen-combinations as displayed:
    sqrt(2)/cbrt(2) for s = -1 and sqrt(-2)/cbrt(2) for s = 3."""
    if s == -1:
        return _tower(sqrt_embed(2)) * _CBRT2.inv()
    if s == 3:
        return _tower(sqrt_embed(-2)) * _CBRT2.inv()
    raise ValueError("the displayed combinations cover s in {-1, 3}")


# -- numeric verification of the A-action ----------------------------------


class TailBoundError(ValueError):
    pass


def _eval_series(series, tau: complex) -> complex:
    q = cmath.exp(2j * cmath.pi * tau)
    total = 0.0 + 0.0j
    power = 1.0 + 0.0j
    for n in range(int(series.order)):
        if n:
            power *= q
        c = series.coeff(n)
        if c:
            total += float(c) * power
    return total


def _tail_estimate(series, tau: complex) -> float:
    q = abs(cmath.exp(2j * cmath.pi * tau))
    n = int(series.order) - 1
    scale = max(abs(float(series.coeff(k))) for k in range(max(n - 5, 0), n + 1))
    # geometric tail with a cushion for polynomially growing coefficients
    return 10.0 * scale * q ** (n + 1) / (1.0 - q)


@dataclass(frozen=True)
class SlashVerdict:
    tau: complex
    terms: int
    convention: str  # "column" or "row"
    normalization: str  # "det^(k/2)" or "det^(k-1)"
    residual: float
    runner_up: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.residual < self.tol


#: determinant powers a weight-3 slash normalization could carry
_NORMALIZATIONS = (("det^(k/2)", 8.0**1.5), ("det^(k-1)", 8.0**2))


def numeric_slash_check(tau0: complex, terms: int = 400, tol: float = 1e-6) -> SlashVerdict:
    """Check the weight-3 slash action of tau -> -1/(8 tau) against A_OP.

    Evaluates det^e (8 tau0)^(-3) h_j(-1/(8 tau0)) by truncated q-series
    and compares with both readings of the matrix (columns: slashed = M H;
    rows: slashed = M^T H) under both candidate determinant powers.  The
    verdict records the unique combination that fits; empirically it is
    the row reading with det^(k-1).
    """
    if tau0.imag <= 0:
        raise ValueError("tau0 must lie in the upper half plane")
    h1, h2 = cuspform_basis(terms)
    a_tau = -1 / (8 * tau0)
    worst = max(
        _tail_estimate(h, tau) for h in (h1, h2) for tau in (tau0, a_tau)
    )
    if worst >= tol / 10:
        raise TailBoundError(
            "truncation tail %.3g exceeds tol/10; raise terms above %d" % (worst, terms)
        )
    here = (_eval_series(h1, tau0), _eval_series(h2, tau0))
    raw = (_eval_series(h1, a_tau), _eval_series(h2, a_tau))
    m = A_OP.to_complex()
    candidates = []
    for norm_name, det_power in _NORMALIZATIONS:
        factor = det_power * (8 * tau0) ** -3
        slashed = (factor * raw[0], factor * raw[1])
        scale = max(abs(x) for x in slashed)
        res_col = max(
            abs(slashed[j] - (m[j][0] * here[0] + m[j][1] * here[1])) for j in range(2)
        ) / scale
        res_row = max(
            abs(slashed[j] - (m[0][j] * here[0] + m[1][j] * here[1])) for j in range(2)
        ) / scale
        candidates.append((res_col, "column", norm_name))
        candidates.append((res_row, "row", norm_name))
    candidates.sort(key=lambda c: c[0])
    best, runner = candidates[0], candidates[1]
    return SlashVerdict(
        tau=tau0,
        terms=terms,
        convention=best[1],
        normalization=best[2],
        residual=best[0],
        runner_up=runner[0],
        tol=tol,
    )


def combination_convention(verdict: SlashVerdict) -> str:
    """Which eigenproblem the eigen-combinations of (h1, h2) solve.

    If functions transform by the transpose (the row reading), a
    combination v1 h1 + v2 h2 is slash-eigen exactly when (v1, v2) is a
    column eigenvector of the matrix, and vice versa.
    """
    return {"row": "column", "column": "row"}[verdict.convention]


A_FIXED_POINT = complex(0, 1 / (2 * 2**0.5))
