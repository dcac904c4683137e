from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cohft.algebra.algebraic import AlgebraicElement, power_sum_over_roots
from cohft.algebra.laurent import LaurentPolynomial
from cohft.algebra.linsolve import InconsistentSystem, UnderdeterminedSystem, solve_sparse
from cohft.algebra.poly import Polynomial, field, rf_normalize
from cohft.algebra.rational import bernoulli, double_factorial, gaussian_moment
from cohft.algebra.serialize import from_json, to_json
from cohft.algebra.series import SeriesMatrix, TruncatedSeries, newton_root_series, series_exp, series_log
from cohft.algebra.wick import wick_moment

F = field("x", "y")
X, Y = F.gens()


def poly(fld, terms):
    return Polynomial.from_terms(fld, terms)


# rational functions -------------------------------------------------------------


def test_rf_normalize_cancels_common_factor():
    r = rf_normalize((X**2 - 1).numerator, (X - 1).numerator)
    assert r.num == (X + 1).num and r.den.is_one()


def test_rf_normalize_zero_numerator():
    r = rf_normalize(poly(F, {}), (5 * X).numerator)
    assert r.is_zero() and r.den.is_one()


def test_rf_normalize_monic_denominator():
    # the invariant makes the denominator monic, so 2x/4 is stored as (x/2) / 1
    r = rf_normalize((2 * X).numerator, poly(F, {(0, 0): 4}))
    assert r.den.is_one()
    assert r == X / 2


def test_rf_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rf_normalize(X.numerator, poly(F, {}))


small = st.integers(-3, 3)
monomial_terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-4, 4), max_size=3)


def _rf(num_terms, den_terms):
    den = F.from_dict(den_terms)
    if den.is_zero():
        den = F.one
    return F.from_dict(num_terms) / den


rfs = st.builds(_rf, monomial_terms, monomial_terms)


@settings(max_examples=40, deadline=None)
@given(rfs, rfs, rfs)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=30, deadline=None)
@given(monomial_terms, monomial_terms)
def test_normal_form_matches_sympy(num_terms, den_terms):
    r = _rf(num_terms, den_terms)
    sx, sy = sympy.symbols("x y")

    def to_sym(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * sx**e[0] * sy**e[1] for e, c in p.terms().items())

    ours = to_sym(r.numerator) / to_sym(r.denominator)
    den = F.from_dict(den_terms)
    raw = to_sym(F.from_dict(num_terms).numerator) / (to_sym(den.numerator) if not den.is_zero() else 1)
    assert sympy.simplify(ours - raw) == 0
    _, sden = sympy.fraction(sympy.cancel(raw))
    assert sympy.Poly(to_sym(r.denominator), sx, sy).total_degree() == sympy.Poly(sden, sx, sy).total_degree()


def test_rf_derivative_and_evaluate():
    r = (X**2 + Y) / (X - Y)
    assert r.evaluate([Fraction(3), Fraction(1)]) == 5
    assert r.derivative("x") == (2 * X * (X - Y) - (X**2 + Y)) / (X - Y) ** 2


# series ---------------------------------------------------------------------------


def test_series_exp_examples():
    assert series_exp(TruncatedSeries.zero(4)).coeffs == [1, 0, 0, 0]
    assert series_exp(TruncatedSeries([0, 1], 3)).coeffs == [1, 1, Fraction(1, 2)]
    assert series_exp(TruncatedSeries([0, 1, 1], 3)).coeffs == [1, 1, Fraction(3, 2)]


def test_series_exp_rejects_constant():
    with pytest.raises(ValueError):
        series_exp(TruncatedSeries([1, 1], 3))


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=7))
def test_exp_log_inverse(tail):
    s = TruncatedSeries([0] + tail)
    assert series_log(series_exp(s)) == s
    one_plus = TruncatedSeries([1] + tail)
    assert series_exp(series_log(one_plus)) == one_plus


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6), st.lists(fractions, min_size=1, max_size=6))
def test_series_inverse_and_mixed_order(a, b):
    sa = TruncatedSeries([1] + a)
    sb = TruncatedSeries(b + [0])
    assert (sa * sa.inverse()) == TruncatedSeries.one(sa.order)
    assert (sa * sb).order == min(sa.order, sb.order)
    assert (sa + sb).order == min(sa.order, sb.order)


def test_newton_root_m1_symbolic():
    fl = field("lam0", "lam1")
    l0, l1 = fl.gens()
    p = newton_root_series([l0 * l1, -(l0 + l1), fl.one], l0, 3)
    d = l0 - l1
    assert p.coeffs == [l0, 1 / d, -1 / d**3]


def test_newton_root_m1_numeric():
    p = newton_root_series([-1, 0, 1], Fraction(1), 3)
    assert p.coeffs == [1, Fraction(1, 2), Fraction(-1, 8)]


def test_newton_root_zero_rhs_is_constant():
    p = newton_root_series([-1, 0, 1], Fraction(1), 5, rhs=TruncatedSeries.zero(5, "q"))
    assert p.coeffs == [1, 0, 0, 0, 0]


def test_newton_root_rejects_double_root():
    with pytest.raises(ValueError, match="non-simple root"):
        newton_root_series([1, -2, 1], Fraction(1), 4)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=4, unique=True), st.integers(2, 6))
def test_newton_root_satisfies_equation(roots, order):
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip([Fraction(0)] + coeffs, coeffs + [Fraction(0)])]
    p = newton_root_series(coeffs, Fraction(roots[0]), order)
    val = TruncatedSeries.zero(order, "q")
    for c in reversed(coeffs):
        val = val * p + c
    assert val == TruncatedSeries.gen(order, "q")


def test_series_matrix_inverse():
    m = SeriesMatrix([[[1, 0], [0, 1]], [[1, 2], [3, 4]], [[0, 1], [1, 0]]])
    inv = m.inverse()
    for n in range(3):
        prod = [
            [sum(m.coeffs[a][i][k] * inv.coeffs[n - a][k][j] for a in range(n + 1) for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        assert prod == ([[1, 0], [0, 1]] if n == 0 else [[0, 0], [0, 0]])


# rationals ---------------------------------------------------------------------------


def test_bernoulli_examples():
    assert [bernoulli(n) for n in (0, 1, 2, 4)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30)]


def test_bernoulli_generating_function():
    # (e^x - 1)/x * sum B_n x^n/n! = 1, an independent series-division oracle
    n = 12
    from math import factorial

    e = TruncatedSeries([Fraction(1, factorial(k + 1)) for k in range(n)])
    b = TruncatedSeries([bernoulli(k) / factorial(k) for k in range(n)])
    assert e * b == TruncatedSeries.one(n)


def test_gaussian_moments():
    assert [gaussian_moment(k) for k in (0, 3, 6)] == [1, 0, 15]
    assert double_factorial(-1) == 1 and double_factorial(7) == 105


def test_gaussian_moment_quadrature():
    import mpmath

    val = mpmath.quad(lambda x: x**6 * mpmath.exp(-(x**2) / 2), [-mpmath.inf, mpmath.inf]) / mpmath.sqrt(2 * mpmath.pi)
    assert abs(val - 15) < 1e-20


# wick ---------------------------------------------------------------------------------


def _pairings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _pairings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


def brute_wick(exponents, cov):
    labels = [k for k, a in enumerate(exponents) for _ in range(a)]
    if len(labels) % 2:
        return 0
    total = 0
    for pairing in _pairings(labels):
        term = 1
        for a, b in pairing:
            term = term * cov[a][b]
        total = total + term
    return total


def test_wick_examples():
    s = [[Fraction(2), Fraction(3)], [Fraction(3), Fraction(5)]]
    assert wick_moment((1, 1), s) == 3
    assert wick_moment((2, 0), s) == 2
    assert wick_moment((2, 2), s) == 2 * 5 + 2 * 3**2


def test_wick_symbolic_covariance():
    fl = field("s00", "s01", "s11")
    s00, s01, s11 = fl.gens()
    assert wick_moment((2, 2), [[s00, s01], [s01, s11]]) == s00 * s11 + 2 * s01**2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_wick_matches_pairings(exps, entries):
    if sum(exps) > 8:
        exps = [min(e, 2) for e in exps]
    a, b, c, d, e, f = entries
    cov = [[a, b, c], [b, d, e], [c, e, f]]
    assert wick_moment(exps, cov) == brute_wick(exps, cov)


# algebraic elements and power sums ------------------------------------------------------


def test_generator_satisfies_modulus():
    fl = field("t1", "t2")
    t1, t2 = fl.gens()
    q = AlgebraicElement.generator((t1, 2 * t2, fl.zero), "Q")
    assert q**3 + 2 * t2 * q + t1 == 0
    prod = (q + 1) * (q**2 - t2)
    assert len(prod.coords) == 3
    assert prod == (q**2 - t2) * (q + 1)
    assert (q + 1) * (q + 1).inverse() == 1


def test_power_sum_examples():
    fl = field("t1", "t2")
    t1, t2 = fl.gens()
    assert power_sum_over_roots([t1, fl.zero, fl.one], 2) == -2 * t1
    assert power_sum_over_roots([t1, fl.zero, fl.one], 1) == 0
    assert power_sum_over_roots([t1, 2 * t2, fl.zero, fl.one], 2) == -4 * t2


def test_power_sum_pole_at_zero():
    with pytest.raises(ZeroDivisionError, match="zero root"):
        power_sum_over_roots([0, 1, 1], -1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5).filter(bool), min_size=1, max_size=3), st.integers(-4, 6))
def test_power_sum_matches_roots(roots, k):
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip([Fraction(0)] + coeffs, coeffs + [Fraction(0)])]
    assert power_sum_over_roots(coeffs, k) == sum(Fraction(r) ** k for r in roots)


@pytest.mark.parametrize("a,d,k", list(product([0, 1, -2], [2, 3, 5], [1, 2, 5, -3])))
def test_power_sum_quadratic_extension(a, d, k):
    # roots a +- sqrt(d) of x^2 - 2a x + a^2 - d
    s = AlgebraicElement.sqrt_of(Fraction(d))
    direct = ((a + s) ** k + (a - s) ** k).in_base()
    assert power_sum_over_roots([Fraction(a * a - d), Fraction(-2 * a), Fraction(1)], k) == direct


# laurent and linear systems -----------------------------------------------------------------


def test_laurent_inverse_monomial():
    m = LaurentPolynomial.monomial((2, -1), Fraction(3))
    assert (m * m.inverse_monomial()).terms == {(0, 0): 1}


def test_solve_sparse():
    cols = [{"a": 1, "b": 1}, {"a": 1, "b": -1}]
    assert solve_sparse(cols, {"a": 3, "b": 1}) == [2, 1]
    with pytest.raises(InconsistentSystem):
        solve_sparse([{"a": 1}, {"a": 2}], {"a": 1, "b": 1})
    with pytest.raises(UnderdeterminedSystem):
        solve_sparse([{"a": 1}, {"a": 2}], {"a": 1})


# serialization ------------------------------------------------------------------------------


def test_json_round_trip():
    r = (X**2 + Fraction(1, 3) * Y) / (X - 2)
    assert from_json(to_json(r)) == r
    assert to_json(Fraction(-3, 4)) == {"n": "-3", "d": "4"}
    s = TruncatedSeries([Fraction(1), Fraction(1, 2)], 3, "q")
    back = from_json(to_json(s))
    assert back.coeffs == s.coeffs and back.order == 3 and back.var == "q"
