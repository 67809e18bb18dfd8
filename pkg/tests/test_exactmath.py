from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhartkit.errors import InvalidArgumentError
from ehrhartkit.exactmath import (
    DeltaVector,
    QPolynomial,
    binomial,
    format_rational,
    interpolate,
    parse_rational,
    poly_eval,
    poly_mul,
    rat,
)

F = Fraction
Q13 = QPolynomial([1, F(-1, 6), 1, F(13, 6)])
Q100 = QPolynomial([1, F(-88, 6), 1, F(100, 6)])

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)
polys = st.lists(rationals, max_size=7).map(QPolynomial)


def test_rat_normalizes():
    assert rat(26, -12) == F(-13, 6)
    assert rat(26, -12).denominator == 6
    z = rat(0, 5)
    assert (z.numerator, z.denominator) == (0, 1)
    assert rat(12, 6) + rat(1, 6) == F(13, 6)


def test_rat_zero_denominator():
    with pytest.raises(InvalidArgumentError):
        rat(1, 0)


@pytest.mark.parametrize("value,text", [(F(-13, 6), "-13/6"), (F(4), "4"), (F(0), "0")])
def test_rational_strings(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


def test_poly_mul_segment_times_reeve():
    # (7n + 1)(13/6 n^3 + n^2 - 1/6 n + 1), expanded by hand
    expected = QPolynomial([1, F(41, 6), F(-1, 6), F(55, 6), F(91, 6)])
    assert poly_mul(QPolynomial([1, 7]), Q13) == expected
    assert poly_mul(Q13, QPolynomial([1])) == Q13


def test_poly_mul_l10_l10_q100():
    printed = QPolynomial([1, F(16, 3), F(-577, 3), -1430, F(1300, 3), F(5000, 3)])
    assert QPolynomial([1, 10]) ** 2 * Q100 == printed


def test_poly_eval():
    assert poly_eval(Q13, 1) == 4
    assert poly_eval(Q13, 0) == 1
    assert poly_eval(Q100, F(1, 2)) == -4


@pytest.mark.parametrize("n,k,value", [(3, 2, 3), (2, 3, 0), (6, 3, 20), (5, -1, 0), (0, 0, 1)])
def test_binomial(n, k, value):
    assert binomial(n, k) == value


def test_binomial_pascal():
    for n in range(1, 41):
        for k in range(0, n + 1):
            assert binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1)


def test_interpolate_examples():
    assert interpolate([(0, 1), (1, 4), (2, 22), (3, 68)]) == Q13
    for m in (1, 5, 40):
        assert interpolate([(0, 1), (1, m + 1)]) == QPolynomial([1, m])
    assert interpolate([(0, 1), (1, 1), (2, 1)]) == QPolynomial([1])


def test_interpolate_rejects_duplicates():
    with pytest.raises(InvalidArgumentError):
        interpolate([(0, 1), (0, 2)])


def test_polynomial_rendering():
    p4 = QPolynomial([1, F(-1, 12), F(3, 8), F(31, 12), F(9, 8)])
    assert p4.render() == "9/8 n^4 + 31/12 n^3 + 3/8 n^2 - 1/12 n + 1"
    assert QPolynomial([1, 1]).render() == "n + 1"
    assert p4.latex().startswith("\\frac{9}{8}n^{4}+")
    assert QPolynomial.from_json(p4.to_json()) == p4
    assert QPolynomial().to_json() == ["0"]


def test_divmod_reconstructs():
    a = Q13 * QPolynomial([3, 0, 2]) + QPolynomial([F(1, 2), 5])
    q, r = divmod(a, QPolynomial([3, 0, 2]))
    assert q == Q13 and r == QPolynomial([F(1, 2), 5])


def test_delta_vector_container():
    dv = DeltaVector([1, 0, 12, 0])
    assert dv.dimension == 3 and sum(dv) == 13 and dv.is_nonnegative()
    assert dv.to_json() == [1, 0, 12, 0]


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(polys, polys, rationals)
def test_mul_is_pointwise(p, q, x):
    assert poly_eval(poly_mul(p, q), x) == poly_eval(p, x) * poly_eval(q, x)


@settings(max_examples=60)
@given(st.lists(rationals, min_size=1, max_size=7).map(QPolynomial))
def test_interpolation_recovers_polynomial(p):
    deg = max(p.degree, 0)
    samples = [(x, p(x)) for x in range(deg + 1)]
    assert interpolate(samples) == p
