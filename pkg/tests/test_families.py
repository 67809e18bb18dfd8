import math
from fractions import Fraction

import pytest

from ehrhartkit import families as fam
from ehrhartkit.counting import count_naive, counts_for_interpolation
from ehrhartkit.ehrhart import ehrhart_polynomial, sign_pattern
from ehrhartkit.errors import InvalidArgumentError
from ehrhartkit.exactmath import QPolynomial, binomial, interpolate

F = Fraction


def test_segment():
    assert ehrhart_polynomial(fam.segment(1)) == QPolynomial([1, 1])
    assert ehrhart_polynomial(fam.segment(40)) == QPolynomial([1, 40])
    with pytest.raises(InvalidArgumentError):
        fam.segment(0)


def test_reeve_examples():
    assert ehrhart_polynomial(fam.reeve(12)) == QPolynomial([1, 0, 1, 2])
    six = QPolynomial([1, 1, 1, 1])
    assert ehrhart_polynomial(fam.reeve(6)) == six
    assert [count_naive(fam.reeve(6), n) for n in (1, 2, 3)] == [six(1), six(2), six(3)]
    with pytest.raises(InvalidArgumentError):
        fam.reeve(-2)


def test_p4_p5():
    assert ehrhart_polynomial(fam.p4()) == fam.P4_PRINTED
    assert fam.P4_PRINTED(1) == 5
    assert ehrhart_polynomial(fam.p5()) == fam.P5_PRINTED


def test_A_values():
    assert fam.A(4, 1) == 1 and fam.A(4, 2) == 0
    assert fam.A(5, 2) == 4
    assert all(fam.A(d, 0) == 1 for d in range(4, 20))


def test_g_values():
    assert fam.g(5, 3) == 3
    for d in range(5, 30):
        assert fam.g(d, d - 2) == (d - 3) ** 2 - binomial(d - 3, 2) > 0
    assert fam.g(7, 4) == fam.g(6, 4) + fam.g(6, 3) + 7 * binomial(4, 3)
    with pytest.raises(InvalidArgumentError):
        fam.g(4, 3)


def test_g_grid():
    for d in range(5, 41):
        for j in range(3, d - 1):
            assert fam.g(d, j) > 0
    for d in range(7, 41):
        for j in range(4, d - 2):
            rhs = fam.g(d - 1, j) + fam.g(d - 1, j - 1) + (2 * d - 7) * binomial(d - 3, j - 1)
            assert fam.g(d, j) == rhs


def test_theorem_main_examples():
    P, poly = fam.theorem_main_polytope(4, 13)
    assert poly.coeff(1) == F(5, 6)
    assert poly == QPolynomial([1, 1]) * fam.reeve_formula(13)
    P, poly = fam.theorem_main_polytope(4, 19)
    assert poly.coeff(1) == poly.coeff(2) == F(-1, 6)
    assert P.dim == 4 and ehrhart_polynomial(P, routes="all") == poly


def test_closed_forms_against_expansion():
    for d in range(4, 9):
        for m in range(1, 31):
            poly = fam.theorem_main_polynomial(d, m)
            for j, c in fam.closed_form_coefficients(d, m).items():
                assert poly.coeff(j) == c
            for j in range(3, d - 1):
                alt = (-F((d - 3) ** (j - 3) * fam.g(d, j), 6) * m
                       + fam.A(d, j - 2) + 2 * fam.A(d, j - 1) + fam.A(d, j))
                assert poly.coeff(j) == alt


def _min_m_by_expansion(d):
    m = 1
    while True:
        poly = fam.theorem_main_polynomial(d, m)
        if all(poly.coeff(j) < 0 for j in range(1, d - 1)):
            return m
        m += 1


@pytest.mark.parametrize("d,expected", [(4, 19), (5, 37)])
def test_min_m_examples(d, expected):
    assert fam.min_m_all_negative(d) == expected


def test_min_m_six_matches_expansion_scan():
    assert fam.min_m_all_negative(6) == _min_m_by_expansion(6)


def test_lift_once_reeve():
    P, m = fam.lift_once(fam.reeve(13), 1)
    assert m == 7
    poly = ehrhart_polynomial(P)
    assert poly == QPolynomial([1, F(41, 6), F(-1, 6), F(55, 6), F(91, 6)])
    assert sign_pattern(poly).negatives == (2,)
    # one less would leave a nonnegative coefficient at n^2
    assert not sign_pattern(QPolynomial([1, m - 1]) * fam.reeve_formula(13)).is_exactly({2})

    P2, m2 = fam.lift_once(P, 2, poly)
    poly2 = QPolynomial([1, m2]) * poly
    assert sign_pattern(poly2).negatives == (3,)
    assert not sign_pattern(QPolynomial([1, m2 - 1]) * poly).is_exactly({3})


def test_lift_once_p4():
    _, m = fam.lift_once(fam.p4(), 1)
    assert m == 5


def test_lift_once_precondition():
    with pytest.raises(InvalidArgumentError, match="negatives are"):
        fam.lift_once(fam.reeve(13), 2)
    with pytest.raises(InvalidArgumentError):
        fam.lift_once(fam.reeve(12), 1)


def test_base_negative_linear():
    P, poly = fam.base_negative_linear(3)
    assert P.describe() == "Q_13" and poly == fam.reeve_formula(13)
    P, poly = fam.base_negative_linear(6)
    assert P.describe() == "Q_13 x Q_12"
    assert poly.coeff(1) == F(-1, 6) and poly.coeff(2) == 2
    P, poly = fam.base_negative_linear(7)
    assert poly == fam.P4_PRINTED * QPolynomial([1, 0, 1, 2])
    assert sign_pattern(poly).is_exactly({1})
    with pytest.raises(InvalidArgumentError):
        fam.base_negative_linear(2)


def test_lemma_induction():
    f, p = fam.reeve_formula(13), fam.reeve_formula(12)
    for s in range(6):
        q = f * p ** s
        assert q.coeff(1) == F(-1, 6) and q.coeff(2) == s + 1
        assert all(q.coeff(i) > 0 for i in range(2, q.degree + 1))


def test_single_negative_examples():
    P, poly, trace = fam.single_negative_polytope(3, 1)
    assert P.describe() == "Q_13" and trace == [{"step": "base", "dim": 3, "polytope": "Q_13"}]
    P, poly, trace = fam.single_negative_polytope(4, 2)
    assert P.describe() == "l_7 x Q_13"
    assert poly == QPolynomial([1, F(41, 6), F(-1, 6), F(55, 6), F(91, 6)])
    P, poly, trace = fam.single_negative_polytope(6, 3)
    assert trace[0]["polytope"] == "P4" and [t["step"] for t in trace].count("lift") == 2
    assert sign_pattern(poly).negatives == (3,)


@pytest.mark.parametrize(
    "d,k", [(d, k) for d in range(3, 10) for k in range(1, d - 1)], ids=str
)
def test_single_negative_coverage(d, k):
    P, poly, _ = fam.single_negative_polytope(d, k)
    assert P.dim == d
    assert sign_pattern(poly).is_exactly({k})
    if d <= 6:
        samples, _ = counts_for_interpolation(P)
        assert interpolate(samples) == poly


def test_single_negative_domain():
    with pytest.raises(InvalidArgumentError):
        fam.single_negative_polytope(5, 4)


@pytest.mark.parametrize("key", sorted(fam.CATALOGUE_PRINTED), ids=str)
def test_catalogue_printed(key):
    d, neg = key
    P, poly = fam.catalogue(d, neg)
    assert poly == fam.CATALOGUE_PRINTED[key]
    assert P.dim == d and sign_pattern(poly).is_exactly(neg)


@pytest.mark.parametrize(
    "d,neg", [(d, neg) for d in range(3, 7) for neg in fam.supported_patterns(d)], ids=str
)
def test_catalogue_covers_every_pattern(d, neg):
    P, poly = fam.catalogue(d, neg)
    assert P.dim == d
    assert sign_pattern(poly).is_exactly(neg)
    assert ehrhart_polynomial(P) == poly


def test_catalogue_examples():
    P, poly = fam.catalogue(6, [1, 4])
    assert P.describe() == "Q_12 x Q_16"
    P, poly = fam.catalogue(6, {1, 2, 3})
    assert P.describe() == "l_1 x l_1 x l_1 x Q_40"


def test_catalogue_unsupported():
    with pytest.raises(InvalidArgumentError, match="supported"):
        fam.catalogue(7, [1, 2])
    with pytest.raises(InvalidArgumentError):
        fam.catalogue(5, [4])
    with pytest.raises(InvalidArgumentError):
        fam.catalogue(5, [])


def test_reeve_formula_range():
    for m in range(1, 201):
        assert ehrhart_polynomial(fam.reeve(m)) == fam.reeve_formula(m)


def test_family_spec_round_trip():
    P, poly, spec = fam.build_family(fam.FamilySpec("theorem-main", d=5))
    assert spec.m == 37
    again = fam.FamilySpec.from_json(spec.to_json())
    assert again == spec
    with pytest.raises(InvalidArgumentError):
        fam.build_family(fam.FamilySpec("single-negative", d=5))
    with pytest.raises(InvalidArgumentError):
        fam.build_family(fam.FamilySpec("prism"))


def test_normalized_volume_of_catalogue_simplices():
    for key in [(6, (1, 2)), (6, (3, 4)), (5, (1, 2)), (5, (1, 3))]:
        poly = fam.CATALOGUE_PRINTED[key]
        vol = math.factorial(key[0]) * poly.leading
        assert vol.denominator == 1 and vol <= 1000
