from fractions import Fraction

import pytest

from cohft.algebra.series import SeriesMatrix
from cohft.charts import NonSemisimpleError
from cohft.checks import M2_POINTS, M3_POINT
from cohft.frobenius import AmModel, PmModel
from cohft.oscillating import fz_series
from cohft.qde import (
    first_failure,
    pm_qde_residual,
    qde_residual,
    residual_is_zero,
    solve_r_a,
    solve_r_kprime,
    solve_r_pm,
    verify_homogeneity,
    verify_symplectic,
)
from cohft.rmatrix import RMatrix, is_identity_matrix
from cohft.strata.relations import disc_adic


def corrupted(r):
    mats = [[list(row) for row in mat] for mat in r.hat.coeffs]
    mats[1][0][1] = -mats[1][0][1]
    return RMatrix(SeriesMatrix(mats), r.roots, r.deltas, r.side, "corrupted", r.chart)


def test_z_order_one_is_identity():
    r = solve_r_a(AmModel(2), 1)
    assert r.order == 1 and is_identity_matrix(r.hat.coeffs[0])


def test_m1_faber_zagier():
    r = solve_r_a(AmModel(1), 6)
    fz = fz_series(6)
    for n in range(6):
        for i in range(2):
            for k in range(2):
                ab = fz.a[n] + fz.b[n] if i == k else fz.a[n] - fz.b[n]
                assert r.hat.coeffs[n][i][k] == Fraction(ab, 2) * (Fraction(-1, 72) / r.deltas[k] ** 3) ** n


def test_m1_first_coefficient():
    r = solve_r_a(AmModel(1), 2)
    q0 = r.roots[0]
    assert r.hat.coeffs[1] == [[Fraction(1, 48) / q0**3, Fraction(1, 8) / q0**3], [Fraction(-1, 8) / q0**3, Fraction(-1, 48) / q0**3]]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_a_side_residuals(m):
    r = solve_r_a(AmModel(m), 5 if m < 3 else 4)
    assert residual_is_zero(qde_residual(r, r.chart.diff))
    assert residual_is_zero(verify_symplectic(r))
    assert residual_is_zero(verify_homogeneity(r))


def test_m1_symplectic_to_order_8():
    assert residual_is_zero(verify_symplectic(solve_r_a(AmModel(1), 9)))


def test_identity_residuals():
    chart = AmModel(1).chart
    ident = RMatrix(SeriesMatrix.identity(2, 4, one=chart.one), chart.roots, chart.deltas, chart=chart)
    assert residual_is_zero(verify_symplectic(ident))
    assert residual_is_zero(verify_homogeneity(ident))


def test_corrupted_r_fails_symplectic():
    bad = corrupted(solve_r_a(AmModel(1), 4))
    res = verify_symplectic(bad)
    assert not residual_is_zero(res)
    assert first_failure(res)["zPower"] == 1


@pytest.mark.parametrize("point", M2_POINTS)
def test_specialized_roots_sorted_and_symplectic(point):
    model = AmModel.from_roots(point)
    r = solve_r_a(model, 4)
    assert r.roots == sorted(Fraction(x) for x in point)
    assert residual_is_zero(verify_symplectic(r))


def test_specialized_m3_symplectic():
    assert residual_is_zero(verify_symplectic(solve_r_a(AmModel.from_roots(M3_POINT), 4)))


def test_pm_limit_and_residuals():
    model = PmModel(1, q_order=3)
    r = solve_r_pm(model, 4)
    l0, l1 = model.lambdas
    assert r.hat.coeffs[1][0][0][0] == Fraction(1, 12) / (l1 - l0)
    assert r.hat.coeffs[1][1][1][0] == Fraction(1, 12) / (l0 - l1)
    assert r.hat.coeffs[1][0][1][0] == 0 and r.hat.coeffs[2][1][0][0] == 0
    assert residual_is_zero(pm_qde_residual(r))
    assert residual_is_zero(verify_symplectic(r))
    assert residual_is_zero(verify_homogeneity(r))


def test_pm_m2_symbolic():
    model = PmModel(2, q_order=2)
    r = solve_r_pm(model, 3)
    lam = model.lambdas
    for j in range(3):
        want = sum(Fraction(1, 12) / (lam[l] - lam[j]) for l in range(3) if l != j)
        assert r.hat.coeffs[1][j][j][0] == want
    assert residual_is_zero(pm_qde_residual(r))
    assert residual_is_zero(verify_homogeneity(r))


def test_pm_non_semisimple():
    with pytest.raises(NonSemisimpleError, match="non-semisimple classical limit"):
        solve_r_pm(PmModel(2, [0, 1, 1]), 3)


def test_lambda_chart_residuals():
    r = solve_r_kprime(1, 4)
    assert residual_is_zero(verify_symplectic(r))
    assert residual_is_zero(verify_homogeneity(r))


@pytest.mark.parametrize("m,order", [(1, 5), (2, 3)])
def test_flat_denominators_are_disc_powers(m, order):
    r = solve_r_a(AmModel(m), order)
    chart = r.chart
    disc = chart.symmetric_to_t(chart.disc)
    for mat in r.flat().coeffs:
        for row in mat:
            for x in row:
                disc_adic(chart.symmetric_to_t(x), disc)
