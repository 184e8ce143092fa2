import pytest

from noncong.exact import CycloElem, from_quad, root_of_unity
from noncong.frobchar import (
    GOLDEN_TABLE1,
    GOLDEN_TABLE2,
    TABLE_PRIMES,
    FactorizationError,
    FrobeniusRecord,
    char_poly,
    extract_zeta,
    factor_over_quadratic,
    golden_c,
    golden_g,
    golden_zeta,
    match_row_up_to_conjugation,
    numeric_root_check,
    quad_parts,
    quadratic_discriminant,
    structure_check,
    weil_check,
)

@pytest.mark.parametrize("p", TABLE_PRIMES)
@pytest.mark.parametrize("a", (2, 4))
def test_golden_rows(p, a, frob):
    table = GOLDEN_TABLE1 if a == 2 else GOLDEN_TABLE2
    rec, g, D = frob(p, a)
    row = table[p]
    assert D == quadratic_discriminant(p, a)
    c = golden_c(row)
    zetas = extract_zeta(g, c, p)
    assert match_row_up_to_conjugation(g, zetas, c, row)
    assert numeric_root_check(rec, g)
    assert structure_check(rec, g, D)


@pytest.mark.parametrize("p", (61, 71))
@pytest.mark.parametrize("a", (2, 4))
def test_structural_range_sample(p, a, frob):
    # beyond the table the quartic must still factor with the right shape;
    # the full sweep to 97 runs with the acceptance criteria
    rec, g, D = frob(p, a)
    assert numeric_root_check(rec, g)
    assert structure_check(rec, g, D)


@pytest.mark.parametrize("p", TABLE_PRIMES)
@pytest.mark.parametrize("a", (2, 4))
def test_factor_times_conjugate_is_the_quartic(p, a, frob):
    rec, g, D = frob(p, a)
    prod = g * g.conj()
    want = [CycloElem.from_rational(c) for c in rec.quartic()]
    assert [prod.coeff(k) for k in range(5)] == want


def test_weil_bounds_reject_violations():
    # deliberately violated bounds must raise
    with pytest.raises(ArithmeticError):
        weil_check(FrobeniusRecord(7, 2, 0, 0, 29, 0))
    with pytest.raises(ArithmeticError):
        weil_check(FrobeniusRecord(7, 2, 0, 0, 0, 295))


def test_char_poly_accepts_injected_sums():
    rec = char_poly(7, 2)
    again = char_poly(7, 2, sums=(rec.s1, rec.s2))
    assert again == rec


def test_canonical_branch_has_nonnegative_sqrt_part(frob):
    for p in TABLE_PRIMES:
        for a in (2, 4):
            _, g, D = frob(p, a)
            if D is None:
                continue
            (alpha, beta), (gamma, delta) = quad_parts(g, D)
            assert beta > 0 or (beta == 0 and delta >= 0)


def test_trichotomy_matches_p_mod_12():
    assert quadratic_discriminant(13, 2) == -3
    assert quadratic_discriminant(13, 4) is None
    assert quadratic_discriminant(7, 4) == -3
    assert quadratic_discriminant(17, 2) == -2
    assert quadratic_discriminant(23, 4) == -6
    with pytest.raises(ValueError):
        quadratic_discriminant(6, 2)


def test_extract_zeta_printed_rows():
    # row 5: the printed quadratic matches zeta = i through its conjugate
    row = GOLDEN_TABLE1[5]
    sols = extract_zeta(golden_g(row), golden_c(row), 5)
    assert any(z == root_of_unity(6) for _, z in sols)
    # row 11: zeta = 1
    row = GOLDEN_TABLE1[11]
    sols = extract_zeta(golden_g(row), golden_c(row), 11)
    assert any(z == CycloElem.from_rational(1) for _, z in sols)
    # row 13: u = 13 (1 + sqrt(-3))/2 forces a primitive sixth root
    row = GOLDEN_TABLE1[13]
    sols = extract_zeta(golden_g(row), golden_c(row), 13)
    zeta6 = root_of_unity(4)
    assert any(z in (zeta6, zeta6.conj()) for _, z in sols)


def test_extract_zeta_rejects_wrong_coefficient():
    row = GOLDEN_TABLE1[5]
    wrong = from_quad(0, 5, 2)  # 5 sqrt(2) is not c_5
    with pytest.raises(FactorizationError):
        extract_zeta(golden_g(row), wrong, 5)


def test_split_rows_differ_between_tables():
    for p in (7, 13, 19, 37):
        assert golden_g(GOLDEN_TABLE1[p]) != golden_g(GOLDEN_TABLE2[p])
    for p in (5, 11, 17, 23, 29, 41, 47, 53, 59):
        assert golden_g(GOLDEN_TABLE1[p]) == golden_g(GOLDEN_TABLE2[p])


def test_zeta_column_only_in_table1():
    for p in TABLE_PRIMES:
        assert golden_zeta(GOLDEN_TABLE1[p]) is not None
    for p in (7, 13, 19, 37):
        assert golden_zeta(GOLDEN_TABLE2[p]) is None
