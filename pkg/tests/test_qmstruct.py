"""Exact operator identities and the numeric slash-action check."""

from __future__ import annotations

import pytest

from noncong.exact import root_of_unity, sqrt_embed
from noncong.qmstruct import (
    A_FIXED_POINT,
    A_OP,
    B_3,
    B_MINUS_1,
    B_MINUS_3,
    J_3,
    J_MINUS_1,
    J_MINUS_3,
    OpMatrix,
    TailBoundError,
    ZETA_OP,
    combination_convention,
    eigenbasis,
    numeric_slash_check,
    operator_algebra_check,
    stated_combination_ratio,
)


def test_algebra_verdict_all_identities_hold():
    verdict = operator_algebra_check()
    assert verdict.ok, verdict.failed()
    assert len(verdict.identities) == 9


def test_b_minus_3_is_diagonal_sqrt_minus_3():
    expect = OpMatrix.of(sqrt_embed(-3), 0, 0, -sqrt_embed(-3))
    assert B_MINUS_3 == expect


def test_squares():
    assert (B_MINUS_1 * B_MINUS_1).is_scalar(-8)
    assert (B_MINUS_3 * B_MINUS_3).is_scalar(-3)
    assert (B_3 * B_3).is_scalar(-24)


def test_anticommutators_vanish():
    assert (B_MINUS_1 * B_MINUS_3 + B_MINUS_3 * B_MINUS_1).is_scalar(0)
    assert (J_MINUS_1 * J_MINUS_3 + J_MINUS_3 * J_MINUS_1).is_scalar(0)


def test_unit_quaternion_triple():
    for j in (J_MINUS_1, J_MINUS_3, J_3):
        assert (j * j).is_scalar(-1)
    assert J_3 == J_MINUS_1 * J_MINUS_3


def test_zeta_has_order_exactly_three():
    assert (ZETA_OP**3).is_scalar(1)
    assert not ZETA_OP.is_scalar(1)
    assert not (ZETA_OP**2).is_scalar(1)


def test_matrix_algebra_is_associative():
    ms = (A_OP, ZETA_OP, B_3)
    for a in ms:
        for b in ms:
            for c in ms:
                assert (a * b) * c == a * (b * c)


# -- eigenvectors ----------------------------------------------------------


def test_diagonal_eigenbasis_is_standard():
    pair = eigenbasis(-3)
    (v1, lam1), (v2, lam2) = pair.vectors
    assert v1[0].is_zero() is False and v1[1].is_zero()
    assert v2[0].is_zero() and v2[1].is_zero() is False
    assert {lam1, lam2} == {
        lam1 * 0 + sqrt_embed(-3),
        lam1 * 0 - sqrt_embed(-3),
    }


@pytest.mark.parametrize("s", (-1, 3))
def test_column_eigen_ratio_matches_stated_combination(s):
    stated = stated_combination_ratio(s)
    pair = eigenbasis(s, "column")
    ratios = {vec[1] for vec, _ in pair.vectors}
    assert ratios == {stated, -stated}


@pytest.mark.parametrize("s", (-1, -3, 3))
@pytest.mark.parametrize("convention", ("column", "row"))
def test_eigen_equation_exact(s, convention):
    pair = eigenbasis(s, convention)
    matrix = {-1: B_MINUS_1, -3: B_MINUS_3, 3: B_3}[s]
    for vec, lam in pair.vectors:
        image = matrix.apply_col(vec) if convention == "column" else matrix.apply_row(vec)
        assert image == tuple(lam * v for v in vec)


def test_row_and_column_ratios_differ_by_exactly_cbrt2():
    from noncong.exact import CycloTowerElem

    col = eigenbasis(-1, "column").vectors[0][0][1]
    row = eigenbasis(-1, "row").vectors[0][0][1]
    # 2^(1/6) vs 2^(-1/6)
    assert col * row.inv() == CycloTowerElem.cbrt2()


def test_eigenbasis_rejects_bad_arguments():
    with pytest.raises(ValueError):
        eigenbasis(5)
    with pytest.raises(ValueError):
        eigenbasis(-1, "diagonal")
    with pytest.raises(ValueError):
        stated_combination_ratio(-3)


# -- numeric slash check ---------------------------------------------------


def test_slash_relation_holds_at_generic_point():
    verdict = numeric_slash_check(0.1 + 0.4j, terms=400, tol=1e-6)
    assert verdict.ok
    assert verdict.residual < 1e-6
    assert verdict.runner_up > 1e-6  # the losing readings are far off
    assert verdict.convention == "row"
    assert verdict.normalization == "det^(k-1)"


def test_slash_relation_at_fixed_point():
    tau = A_FIXED_POINT
    assert abs(-1 / (8 * tau) - tau) < 1e-15  # genuinely A-fixed
    verdict = numeric_slash_check(tau, terms=400, tol=1e-6)
    assert verdict.ok
    assert verdict.convention == "row"


def test_doubling_terms_leaves_residual_stable():
    r1 = numeric_slash_check(0.1 + 0.4j, terms=400, tol=1e-6)
    r2 = numeric_slash_check(0.1 + 0.4j, terms=800, tol=1e-6)
    assert abs(r1.residual - r2.residual) < 1e-7


def test_combination_convention_flips_the_reading():
    verdict = numeric_slash_check(0.1 + 0.4j)
    assert combination_convention(verdict) == "column"


def test_slash_guards():
    with pytest.raises(ValueError, match="upper half"):
        numeric_slash_check(0.5 + 0j)
    with pytest.raises(TailBoundError):
        numeric_slash_check(0.001j, terms=50, tol=1e-6)
