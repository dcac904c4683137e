from fractions import Fraction
from math import factorial

import pytest

from cohft.algebra.laurent import LaurentPolynomial
from cohft.checks import M2_POINTS, PM_WEIGHTS
from cohft.frobenius import AmModel, PmModel
from cohft.oscillating import (
    airy_recursion,
    bernoulli_diagonal,
    covariance_pm,
    fz_series,
    mumford_r_entry,
    pm_saddle_data,
    rmatrix_from_saddles_a,
    rmatrix_from_saddles_pm,
    saddle_expand_1d,
    saddle_expand_pm,
)
from cohft.qde import solve_r_a, solve_r_pm
from cohft.rmatrix import is_identity_matrix


def test_fz_values():
    fz = fz_series(9)
    assert fz.a[:3] == (1, 60, 27720)
    assert fz.b[:2] == (1, -84)
    for i in range(9):
        assert fz.a[i] == Fraction(factorial(6 * i), factorial(3 * i) * factorial(2 * i))
        assert fz.b[i] / fz.a[i] == Fraction(1 + 6 * i, 1 - 6 * i)


def test_m1_saddle_series_are_fz():
    model = AmModel(1)
    fz = fz_series(6)
    for k in range(2):
        s0, s1 = saddle_expand_1d(model, k, 1, 6)
        q, d = model.roots[k], model.deltas[k]
        w = Fraction(-1, 72) / d**3
        assert s0[0] == 1
        for n in range(6):
            assert s0[n] == fz.a[n] * w**n
            assert s1[n] == q * fz.b[n] * w**n


def test_airy_recursion_m1_is_fz():
    # Delta = 2Q, so -z/(72 Delta^3) = -z/(576 Q^3)
    fz = fz_series(7)
    assert airy_recursion(1, 7) == [fz.a[n] * Fraction(-1, 576) ** n for n in range(7)]


def test_airy_recursion_m2_matches_saddle():
    alphas = airy_recursion(2, 4)
    assert alphas[0] == 1
    (s0,) = saddle_expand_1d(AmModel(2, airy=True), 0, 0, 4)
    for n in range(4):
        assert (s0[n] - LaurentPolynomial.monomial((-4 * n, 0), alphas[n])).is_zero()


def test_saddle_rmatrix_identity_term():
    r = rmatrix_from_saddles_a(AmModel(2), 1)
    assert is_identity_matrix(r.hat.coeffs[0])


@pytest.mark.parametrize("m", [1, 2])
def test_saddle_equals_qde_symbolic(m):
    a = rmatrix_from_saddles_a(AmModel(m), 5).hat
    b = solve_r_a(AmModel(m), 5).hat
    assert (a - b).first_nonzero() is None


@pytest.mark.parametrize("point", M2_POINTS)
def test_saddle_equals_qde_specialized(point):
    model = AmModel.from_roots(point)
    assert (rmatrix_from_saddles_a(model, 3).hat - solve_r_a(model, 3).hat).first_nonzero() is None


def test_bernoulli_diagonal_examples():
    l0, l1 = Fraction(2), Fraction(-3)
    d = bernoulli_diagonal([l0, l1], 4)
    assert d.coeffs[1][0][0] == Fraction(1, 12) / (l1 - l0)
    assert d.coeffs[2][0][0] == Fraction(1, 288) / (l1 - l0) ** 2
    assert d.coeffs[1][0][1] == 0
    assert bernoulli_diagonal([Fraction(5)], 3).coeffs == [[[1]], [[0]], [[0]]]


def test_bernoulli_diagonal_int_weights_stay_exact():
    d = bernoulli_diagonal([0, 1], 3)
    assert d.coeffs[1][0][0] == Fraction(1, 12) and isinstance(d.coeffs[1][0][0], Fraction)


def test_mumford_entry():
    s = mumford_r_entry(Fraction(3), 4)
    assert s[1] == Fraction(3, 12) and s[2] == Fraction(9, 288)
    assert mumford_r_entry(Fraction(0), 4).coeffs == [1, 0, 0, 0]


def test_pm_saddle_normalization_and_limit():
    model = PmModel(1, q_order=2)
    target = bernoulli_diagonal(model.lambdas, 4)
    for i in range(2):
        s = saddle_expand_pm(model, i, 4)
        assert s[0][0] == 1
        for n in range(4):
            assert s[n][0] == target.coeffs[n][i][i]


def test_pm_saddle_equals_qde_m1():
    model = PmModel(1, q_order=3)
    a = rmatrix_from_saddles_pm(model, 3)
    b = solve_r_pm(model, 3)
    for n in range(3):
        for i in range(2):
            for j in range(2):
                assert (a.coefficient(n, i, j) - b.coefficient(n, i, j)).is_zero()


def test_pm_saddle_equals_qde_m2_specialized():
    model = PmModel(2, PM_WEIGHTS[2], q_order=3)
    a = rmatrix_from_saddles_pm(model, 3)
    b = solve_r_pm(model, 3)
    for n in range(3):
        for i in range(3):
            for j in range(3):
                assert (a.coefficient(n, i, j) - b.coefficient(n, i, j)).is_zero()


def test_covariance_symmetric_and_zero_sum():
    model = PmModel(2, PM_WEIGHTS[2], q_order=3)
    for i in range(3):
        w, delta = pm_saddle_data(model, i, 3)
        cov = covariance_pm(w, delta)
        for k in range(3):
            assert sum(cov[k][1:], cov[k][0]).is_zero()
            for l in range(3):
                assert (cov[k][l] - cov[l][k]).is_zero()
