from fractions import Fraction

import pytest

from cohft.comparison import (
    PhiSeries,
    airy_disc_degree,
    bernoulli_limit_check,
    degree_obstruction,
    intermediate_r,
    notpol_check,
    obstruction_m2,
    phi_series,
    scaling_action,
    thm1_check,
)
from cohft.frobenius import AmModel
from cohft.qde import solve_r_a


def test_thm1_m1_with_negative_control():
    rep = thm1_check(1, 4, 4)
    assert rep.passed, rep.failure
    assert rep.details["unscaledPositivePowers"] > 0


def test_thm1_m1_specialized_weights():
    rep = thm1_check(1, 3, 3, lambdas=[0, 2])
    assert rep.passed, rep.failure


def test_phi_coefficients():
    ph = phi_series(1, 4)
    assert ph.inverse_coeffs == [1, Fraction(3, 5), Fraction(3, 7), Fraction(1, 3)]
    for m in (1, 2, 3):
        assert phi_series(m, 3).inverse_coeffs[0] == 1


@pytest.mark.parametrize("m", [1, 2])
def test_phi_ode(m):
    assert phi_series(m, 8).ode_residual().is_zero()


def test_perturbed_phi_fails_ode():
    coeffs = list(phi_series(2, 6).inverse_coeffs)
    coeffs[2] += Fraction(1, 100)
    assert not PhiSeries(2, coeffs).ode_residual().is_zero()


def test_intermediate_r_m1():
    prod, rep = intermediate_r(1, 3, 6)
    assert rep.passed, rep.failure
    assert rep.details["directFreeParameters"] == 0
    assert rep.details["poleWithoutRescaling"] is True
    assert len(prod) == 3


@pytest.mark.parametrize("m", [1, 2, 3])
def test_notpol(m):
    rep = notpol_check(m, 6)
    assert rep.passed, rep.failure
    assert all(count > 0 for count in rep.details["support"].values())


def test_obstruction():
    rep = obstruction_m2()
    assert rep.passed, rep.failure
    assert rep.details["firstPoleOrder"] == 2
    assert rep.details["secondPoleOrder"] == 1
    # (15/16) / (2 t2)^3 at t1 = 0
    assert rep.details["firstAtT1Zero"] == "(15/128)/(t2^3)"


def test_airy_disc_and_degree_count():
    assert [airy_disc_degree(m) for m in (1, 2, 3)] == [1, 2, 3]
    rep = degree_obstruction(3)
    assert rep.passed and rep.details["degDisc"] == 3


@pytest.mark.parametrize("m", [1, 2])
def test_bernoulli_limit(m):
    assert bernoulli_limit_check(m, 4).passed


def test_scaling_action():
    r = solve_r_a(AmModel.from_roots([-1, 1]), 3)
    assert scaling_action(r, 1).hat.coeffs == r.hat.coeffs
    zeroed = scaling_action(r, 0).hat.coeffs
    assert zeroed[0] == r.hat.coeffs[0]
    assert all(x == 0 for mat in zeroed[1:] for row in mat for x in row)
    c = Fraction(5, 3)
    scaled = scaling_action(r, c).hat.coeffs
    assert scaled[1][0][1] == c * r.hat.coeffs[1][0][1]
    assert scaled[2][1][1] == c * c * r.hat.coeffs[2][1][1]
