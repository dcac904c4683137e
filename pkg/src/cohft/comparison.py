"""Comparing the projective-space R-matrix with the A-side one.

Three kinds of statements are checked at finite truncation, all with
exact arithmetic:

* the large-lambda limit: R_P(z/lam), written in A-side coordinates, has no
  positive powers of lam and its lam^0 part is the A-side R-matrix;
* in the Airy limit the two R-matrices differ by the rescaling z -> z*phi
  and an R-matrix without poles at t = 0;
* for m = 2 the z^1 coefficient of the A-side R-matrix has a second order
  pole in the discriminant, which obstructs the same comparison off the
  Airy line.

Airy-limit matrices are kept as Laurent polynomials in (t, lam) with
t = t^1; series in t are truncated at a fixed t-order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.laurent import LaurentPolynomial
from .algebra.algebraic import power_sum_over_roots
from .algebra.linsolve import solve_with_kernel
from .algebra.poly import field as rf_field
from .algebra.rational import double_factorial
from .algebra.series import SeriesMatrix, TruncatedSeries, mat_add, mat_inverse, mat_mul, mat_sub
from .charts import AiryChart
from .frobenius import AmModel, PmModel, matchup_phi, poly_mul, reduce_mod
from .oscillating import truncated_exp, bernoulli_diagonal, rmatrix_from_saddles_pm
from .qde import solve_r_a, solve_r_kprime, solve_r_pm
from .report import Report, timed
from .rmatrix import RMatrix

T, LAM = 0, 1  # variable slots of the (t, lam) Laurent polynomials


def _lp(exps, c):
    return LaurentPolynomial.monomial(exps, Fraction(c))


def _lp_zero():
    return LaurentPolynomial(None, 2)


def _is_zero(x):
    if isinstance(x, LaurentPolynomial):
        return x.is_zero()
    if isinstance(x, TruncatedSeries):
        return x.is_zero()
    return x == 0


def _lift(x):
    return x if isinstance(x, LaurentPolynomial) else LaurentPolynomial.constant(Fraction(x), 2)


# large-lambda limit ---------------------------------------------------------------


@dataclass
class LambdaExpansion:
    """Coefficients of z^n q^k lam^p in entry (i, j) of R_P(z/lam).

    ``cells`` maps (n, i, j, k, p) to a rational function of the
    equivariant weights (or a rational number at specialized weights).
    """

    dim: int
    z_order: int
    q_order: int
    cells: dict = field(default_factory=dict)

    def powers(self):
        return sorted({key[4] for key in self.cells})

    def positive_cells(self):
        return sorted(key for key in self.cells if key[4] > 0)

    def part(self, p):
        """The lam^p part as {(n, i, j, k): coefficient}."""
        return {key[:4]: c for key, c in self.cells.items() if key[4] == p}


def _matched_values(chart, model: PmModel):
    """Images of the chart coordinates Q_0..Q_{m-1}, lam under the matchup, as q-series."""
    lam = 1
    for x in model.lambdas:
        lam = lam * (model.lbar - x)
    lam = -lam
    return [model.Q[j] for j in range(chart.m)] + [TruncatedSeries([lam], model.q_order, "q")]


def _as_series(x, order):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries([x], order, "q")


def lambda_expansion(rk: RMatrix, model: PmModel) -> LambdaExpansion:
    """Regroup the lambda-chart solution R_P(z) as R_P(z/lam) = sum lam^{c-n} (...) z^n."""
    chart = rk.chart
    vals = _matched_values(chart, model)
    out = LambdaExpansion(rk.dim, rk.order, model.q_order)
    for n in range(rk.order):
        for i in range(rk.dim):
            for j in range(rk.dim):
                for c, coeff in chart.lambda_coefficients(rk.coefficient(n, i, j)).items():
                    if coeff.is_zero():
                        continue
                    s = _as_series(coeff.evaluate(vals), model.q_order)
                    for k in range(model.q_order):
                        if not s[k] == 0:
                            out.cells[(n, i, j, k, c - n)] = s[k]
    return out


def thm1_check(m: int, z_order: int = 4, q_order: int = 4, lambdas=None) -> Report:
    """Large-lambda limit of the projective-space R-matrix.

    R_P is solved once in A-side coordinates with lam as an extra variable
    (entries polynomial in lam). Checks:

    (a) R_P(z/lam) has no positive lam-powers;
    (b) its lam^0 part equals solve_r_a, both as chart functions and after
        the matchup as (z, q)-series;
    (c) resummed over lam and pushed through the matchup, the chart solution
        equals the independent q-series solution solve_r_pm;
    plus the negative control that R_P(z) itself does have positive powers.
    """
    params = {"m": m, "zOrder": z_order, "qOrder": q_order, "lambda": "symbolic" if lambdas is None else list(lambdas)}
    rep = Report("thm1", params)
    with timed(rep):
        rk = solve_r_kprime(m, z_order)
        chart = rk.chart
        ra = solve_r_a(AmModel(m), z_order)
        model = PmModel(m, lambdas, q_order)
        vals = _matched_values(chart, model)

        # the substitution Q_j -> Q_j(q) is the matchup
        t_match, lam_match = matchup_phi(m, model.lambdas, TruncatedSeries.gen(q_order, "q"))
        for mu in range(1, m + 1):
            got = _as_series(chart.t[mu].evaluate(vals), q_order)
            rep.require(_is_zero(got - t_match[mu - 1]), "chart t does not match the matchup", t=mu)
        rep.require(vals[-1][0] == lam_match, "lam does not match the matchup")

        exp = lambda_expansion(rk, model)
        positive = exp.positive_cells()
        rep.details["lambdaPowers"] = exp.powers()
        for n, i, j, k, p in positive[:1]:
            rep.fail("positive lambda power", zPower=n, row=i, col=j, qPower=k, lamPower=p)

        gens = chart.field.gens()[:m]
        zero_part = exp.part(0)
        for n in range(z_order):
            for i in range(m + 1):
                for j in range(m + 1):
                    a = ra.coefficient(n, i, j)
                    a_chart = chart.field(a) if a.field == chart.field else a.substitute(chart.field, gens)
                    top = chart.lambda_coefficients(rk.coefficient(n, i, j)).get(n, chart.zero)
                    rep.require((top - a_chart).is_zero(), "lambda^0 part differs from the A-side matrix", zPower=n, row=i, col=j)
                    a_q = _as_series(a.evaluate(vals[:m]), q_order)
                    for k in range(q_order):
                        rep.require(
                            zero_part.get((n, i, j, k), 0) == a_q[k],
                            "lambda^0 part differs after the matchup",
                            zPower=n, row=i, col=j, qPower=k,
                        )

        rp = solve_r_pm(model, z_order, q_order)
        for n in range(z_order):
            for i in range(m + 1):
                for j in range(m + 1):
                    s = _as_series(rk.coefficient(n, i, j).evaluate(vals), q_order)
                    rep.require(
                        _is_zero(s - rp.coefficient(n, i, j)),
                        "lambda-chart solution differs from the q-series solution",
                        zPower=n, row=i, col=j,
                    )

        unscaled = sorted(
            (n, i, j, c)
            for n in range(z_order)
            for i in range(m + 1)
            for j in range(m + 1)
            for c, v in chart.lambda_coefficients(rk.coefficient(n, i, j)).items()
            if c > 0 and not v.is_zero()
        )
        rep.details["unscaledPositivePowers"] = len(unscaled)
        if z_order > 1:
            rep.require(bool(unscaled), "negative control: R_P(z) without z -> z/lam shows no positive lambda powers")
    return rep


def bernoulli_limit_check(m: int, z_order: int = 5, lambdas=None) -> Report:
    """q^0 part of R_P against exp(diag b_j) built from Bernoulli numbers.

    Two routes that do not use the Bernoulli matrix as input: the lambda-chart
    QDE solution pushed through the matchup, and the P-side saddle expansion.
    """
    params = {"m": m, "zOrder": z_order, "lambda": "symbolic" if lambdas is None else list(lambdas)}
    rep = Report("bernoulli-limit", params)
    with timed(rep):
        model = PmModel(m, lambdas, 1)
        target = bernoulli_diagonal(model.lambdas, z_order)
        rk = solve_r_kprime(m, z_order)
        vals = _matched_values(rk.chart, model)
        saddle = rmatrix_from_saddles_pm(model, z_order, 1)
        for n in range(z_order):
            for i in range(m + 1):
                for j in range(m + 1):
                    want = target.coeffs[n][i][j]
                    via_chart = _as_series(rk.coefficient(n, i, j).evaluate(vals), 1)[0]
                    via_saddle = saddle.coefficient(n, i, j)[0]
                    rep.require(via_chart == want, "lambda-chart q^0 part differs", zPower=n, row=i, col=j)
                    rep.require(via_saddle == want, "saddle q^0 part differs", zPower=n, row=i, col=j)
    return rep


# Airy limit: phi ------------------------------------------------------------------------


@dataclass
class PhiSeries:
    """phi^{-1} = lam^{-1} sum_i c_i (-t/lam)^i."""

    m: int
    inverse_coeffs: list

    def inverse(self):
        """phi^{-1} as a Laurent polynomial in (t, lam), truncated at t^len(coeffs)."""
        out = _lp_zero()
        for i, c in enumerate(self.inverse_coeffs):
            out = out + _lp((i, -i - 1), c * (-1) ** i)
        return out

    def phi(self, order=None):
        """phi = 1 / phi^{-1}, truncated at t^order."""
        order = len(self.inverse_coeffs) if order is None else order
        if order > len(self.inverse_coeffs):
            raise ValueError("phi needs as many inverse coefficients as its t-order")
        return t_inverse(self.inverse(), order)

    def ode_residual(self):
        """-q^{-1} - phi^{-1} - L_E phi^{-1} with q = -t - lam, truncated at the series order."""
        order = len(self.inverse_coeffs)
        minus_q_inv = t_inverse(_lp((1, 0), 1) + _lp((0, 1), 1), order)
        inv = self.inverse()
        return (minus_q_inv - inv - euler_t(inv, self.m)).truncate(T, order)


def phi_series(m: int, order: int) -> PhiSeries:
    return PhiSeries(m, [Fraction(m + 2, m + 2 + i * (m + 1)) for i in range(order)])


def euler_t(x, m):
    """L_E = ((m+1)/(m+2)) t d/dt on a (t, lam) Laurent polynomial."""
    if not isinstance(x, LaurentPolynomial):
        return 0
    return x.derivative_log(T) * Fraction(m + 1, m + 2)


def t_inverse(x: LaurentPolynomial, order: int) -> LaurentPolynomial:
    """1/x as a series in t, truncated at t^order; the lowest t-power of x must be a monomial."""
    low = x.min_exponent(T)
    lead = {e: c for e, c in x.terms.items() if e[T] == low}
    if len(lead) != 1:
        raise ValueError("leading t-coefficient is not a monomial")
    (e0, c0), = lead.items()
    lead_inv = LaurentPolynomial.monomial((-e0[0], -e0[1]), 1 / Fraction(c0))
    u = x * lead_inv - 1  # t-valuation >= 1
    span = order + e0[0]
    acc = LaurentPolynomial.constant(Fraction(1), 2)
    power = LaurentPolynomial.constant(Fraction(1), 2)
    for _ in range(1, max(span, 0) + 1):
        power = (power * u * -1).truncate(T, span)
        if power.is_zero():
            break
        acc = acc + power
    return (acc * lead_inv).truncate(T, order)


def xi_matrix(m):
    """Multiplication by E = ((m+1)/(m+2)) t X in the basis 1, X, .., X^m with X^{m+1} = -t."""
    n_ = m + 1
    out = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
    for k in range(n_):
        j = (k + 1) % n_
        v = _lp((1, 0), Fraction(m + 1, m + 2))
        out[j][k] = v * _lp((1, 0), -1) if j == 0 else v
    return out


def mu_matrix(m):
    n_ = m + 1
    return [
        [LaurentPolynomial.constant(Fraction(2 * j - m, 2 * (m + 2)), 2) if i == j else _lp_zero() for j in range(n_)]
        for i in range(n_)
    ]


def x_power_matrix(m, b):
    """Multiplication by X^b in the Airy flat basis."""
    n_ = m + 1
    out = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
    for k in range(n_):
        # X^{k+b} = (-t)^{(k+b) // (m+1)} X^{(k+b) mod (m+1)}
        w, r = divmod(k + b, n_)
        out[r][k] = _lp((w, 0), (-1) ** w)
    return out


def airy_flat(r: RMatrix) -> list:
    """Flat-basis coefficients of an Airy-chart R-matrix as (t, lam) Laurent polynomials."""
    chart = r.chart
    return [[[chart.to_t(x) for x in row] for row in mat] for mat in r.flat().coeffs]


def _mat_map(mat, fn):
    return [[fn(x) for x in row] for row in mat]


def _trunc(mat, order):
    return _mat_map(mat, lambda x: _lift(x).truncate(T, order))


def _min_t(mat):
    es = [x.min_exponent(T) for row in mat for x in row if isinstance(x, LaurentPolynomial) and not x.is_zero()]
    return min(es) if es else 0


def _scale(mat, s):
    return _mat_map(mat, lambda x: _lift(x) * s)


def flat_qde_residuals(flat, side, m):
    """Flat-basis QDE residuals.

    A: [R_n, xi] + L_E R_{n-1} - R_{n-1} mu; P: [R_n, xi] - q L_E R_{n-1} + q R_{n-1} mu.
    """
    xi, mu = xi_matrix(m), mu_matrix(m)
    q = _lp((1, 0), -1) + _lp((0, 1), -1)
    out = []
    for n in range(1, len(flat)):
        comm = mat_sub(mat_mul(flat[n], xi), mat_mul(xi, flat[n]))
        drift = mat_sub(_mat_map(flat[n - 1], lambda x: euler_t(x, m)), mat_mul(flat[n - 1], mu))
        out.append(mat_add(comm, drift if side == "A" else _scale(drift, q * -1)))
    return out


def _product(p_flat, a_inv, phi_info, t_order):
    """R_n = sum_{p + r = n} P_p A^{-1}_r phi^r, exact below t^t_order."""
    out = []
    for n in range(len(p_flat)):
        acc = None
        for p in range(n + 1):
            r = n - p
            prod = mat_mul(p_flat[p], a_inv[r])
            bound = t_order - min(_min_t(prod), 0)
            scal = phi_info.phi(bound) if r else None
            pw = LaurentPolynomial.constant(Fraction(1), 2)
            for _ in range(r):
                pw = (pw * scal).truncate(T, bound)
            term = _trunc(_scale(prod, pw), t_order)
            acc = term if acc is None else mat_add(acc, term)
        out.append(acc)
    return out


def _dlog_phi(phi_info, order):
    """L_E phi / phi as a t-series."""
    ph = phi_info.phi(order)
    return (euler_t(ph, phi_info.m) * t_inverse(ph, order)).truncate(T, order)


def comp_residuals(r_coeffs, m, phi_info, t_order):
    """[R_n, xi] - q L_E R_{n-1} + q (L_E phi / phi) R_{n-1} mu, below t^t_order."""
    xi, mu = xi_matrix(m), mu_matrix(m)
    q = _lp((1, 0), -1) + _lp((0, 1), -1)
    psi = _dlog_phi(phi_info, t_order + 1)
    out = []
    for n in range(1, len(r_coeffs)):
        comm = mat_sub(mat_mul(r_coeffs[n], xi), mat_mul(xi, r_coeffs[n]))
        le = _scale(_mat_map(r_coeffs[n - 1], lambda x: euler_t(x, m)), q)
        rm = _scale(mat_mul(r_coeffs[n - 1], mu), q * psi)
        out.append(_trunc(mat_add(mat_sub(comm, le), rm), t_order))
    return out


def entry_degree(m, n, j, k):
    """(t, lam)-degree of the flat entry (j, k) of the z^n coefficient, or None if it must vanish.

    Homogeneity with X of weight 1, t and lam of weight m+1 and z of weight
    -1 gives weight k - j - n, i.e. degree (k - j - n) / (m + 1) in (t, lam).
    """
    w = k - j - n
    return w // (m + 1) if w % (m + 1) == 0 else None


def eta_adjoint(mat, m):
    """eta^{-1} A^t eta for the Airy metric eta_ij = delta_{i+j, m}."""
    n_ = m + 1
    return [[mat[m - k][m - j] for k in range(n_)] for j in range(n_)]


def symplectic_residuals(coeffs, m):
    """sum_{p + r = n} (-1)^r R_p R_r^* for n >= 0, minus the identity at n = 0."""
    n_ = m + 1
    out = []
    for n in range(len(coeffs)):
        acc = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
        for p in range(n + 1):
            r = n - p
            term = mat_mul(coeffs[p], eta_adjoint(coeffs[r], m))
            acc = mat_add(acc, _scale(term, (-1) ** r))
        if n == 0:
            acc = mat_sub(acc, [[1 if a == b else 0 for b in range(n_)] for a in range(n_)])
        out.append(_mat_map(acc, _lift))
    return out


def trace_log(coeffs, m, order=None):
    """z-coefficients of tr log R(z) for R = 1 + O(z); zero iff det R = 1."""
    n_ = m + 1
    order = len(coeffs) if order is None else order
    zero = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
    x = [zero] + [_mat_map(c, _lift) for c in coeffs[1:order]] + [zero] * max(0, order - len(coeffs))
    power = x
    acc = [_lp_zero() for _ in range(order)]
    for k in range(1, order):
        for i in range(order):
            for a in range(n_):
                acc[i] = acc[i] + _lift(power[i][a][a]) * Fraction((-1) ** (k + 1), k)
        nxt = []
        for i in range(order):
            mat = zero
            for p in range(1, i):
                mat = mat_add(mat, mat_mul(power[p], x[i - p]))
            nxt.append(_mat_map(mat, _lift))
        power = nxt
    return acc


def solve_comp_direct(m, z_order, t_order, phi_info):
    """Solve [R, xi] - zqL_E R + zq (L_E phi/phi) R mu = 0 with R = 1 + O(z) pole-free.

    The ansatz for R_n,jk is sum_{e >= 0} c_e t^e lam^{d - e} with d from
    entry_degree. Order s is fixed by solving R_s..R_{z_order} jointly, with
    the trace conditions that make each next order solvable. The equation
    is invariant under R -> g(z) R for scalar g in z^{m+1}/lam, so at orders
    divisible by m+1 a constant is left free. It is fixed by the
    symplectic condition R(z) R^*(-z) = 1 and by det R = 1 (tr log R = 0),
    both of which hold for the A-side and P-side factors.

    Returns (coefficients, free parameters before normalization, free
    parameters after it), counting only kernel directions that touch the
    compared cells.
    """
    n_ = m + 1
    xi, mu = xi_matrix(m), mu_matrix(m)
    q = _lp((1, 0), -1) + _lp((0, 1), -1)
    xpow = [x_power_matrix(m, b) for b in range(n_)]
    ident = [[LaurentPolynomial.constant(Fraction(1), 2) if a == b else _lp_zero() for b in range(n_)] for a in range(n_)]
    top = t_order + 3 * z_order + 3
    psi = _dlog_phi(phi_info, top + 1)

    def drift(mat):
        le = _scale(_mat_map(mat, lambda x: euler_t(x, m)), q)
        rm = _scale(mat_mul(mat, mu), q * psi)
        return mat_sub(rm, le)

    def add_eqs(target, tag, mat, bound, sign=1):
        for a, row in enumerate(mat):
            for b, x in enumerate(row):
                if not isinstance(x, LaurentPolynomial):
                    continue
                for e, c in x.terms.items():
                    if e[T] < bound:
                        key = tag + (a, b) + e
                        target[key] = target.get(key, 0) + sign * c

    def trace_eqs(target, tag, mat, bound):
        inner = mat_sub(_mat_map(mat, lambda x: euler_t(x, m)), _scale(mat_mul(mat, mu), psi))
        for b in range(n_):
            prod = mat_mul(inner, xpow[b])
            tr = _lp_zero()
            for a in range(n_):
                tr = tr + _lift(prod[a][a])
            add_eqs(target, tag + (b,), [[tr]], bound)

    def unit(j, k, mono):
        mat = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
        mat[j][k] = mono
        return mat

    known = [ident]
    free_before = free_after = 0
    for s in range(1, z_order):
        bound = top - 3 * (s - 1)
        keep = top - 3 * s
        unknowns = []
        for n in range(s, z_order + 1):
            for j in range(n_):
                for k in range(n_):
                    d = entry_degree(m, n, j, k)
                    if d is None:
                        continue
                    for e in range(bound):
                        unknowns.append((n, j, k, e, d - e))

        def system(with_symplectic):
            columns = []
            for n, j, k, e, lexp in unknowns:
                col = {}
                u = unit(j, k, _lp((e, lexp), 1))
                add_eqs(col, ("E", n), mat_sub(mat_mul(u, xi), mat_mul(xi, u)), bound)
                if n < z_order:
                    add_eqs(col, ("E", n + 1), drift(u), bound)
                trace_eqs(col, ("T", n), u, bound)
                if with_symplectic and n == s:
                    add_eqs(col, ("S",), mat_add(u, _scale(eta_adjoint(u, m), (-1) ** s)), bound)
                    if j == k:
                        add_eqs(col, ("D",), [[u[j][k]]], bound)
                columns.append({key: v for key, v in col.items() if v != 0})
            rhs = {}
            add_eqs(rhs, ("E", s), drift(known[s - 1]), bound, -1)
            if with_symplectic:
                lower = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
                for p in range(1, s):
                    term = mat_mul(known[p], eta_adjoint(known[s - p], m))
                    lower = mat_add(lower, _scale(term, (-1) ** (s - p)))
                add_eqs(rhs, ("S",), lower, bound, -1)
                add_eqs(rhs, ("D",), [[trace_log(known, m, s + 1)[s]]], bound, -1)
            rhs = {key: v for key, v in rhs.items() if v != 0}
            return solve_with_kernel(columns, rhs)

        def touching(kernel):
            cells = {idx for idx, (n, j, k, e, _) in enumerate(unknowns) if n == s and e < keep}
            return sum(1 for vec in kernel if any(idx in cells and v != 0 for idx, v in vec.items()))

        _, kernel = system(False)
        free_before += touching(kernel)
        solution, kernel = system(True)
        free_after += touching(kernel)
        mat = [[_lp_zero() for _ in range(n_)] for _ in range(n_)]
        for (n, j, k, e, lexp), c in zip(unknowns, solution):
            if c and n == s and e < keep:
                mat[j][k] = mat[j][k] + _lp((e, lexp), c)
        known.append(mat)
    return [_trunc(mat, t_order) for mat in known], free_before, free_after


def intermediate_r(m: int, z_order: int = 3, t_order: int = 6):
    """R(z) = R~_P(z) R~_A(z phi)^{-1} in the Airy limit, with a polynomiality report.

    Returns (coefficients, report); coefficients[n][j][k] is a (t, lam)
    Laurent polynomial exact below t^t_order.
    """
    params = {"m": m, "zOrder": z_order, "tOrder": t_order}
    rep = Report("thm2", params)
    with timed(rep):
        ra = solve_r_a(AmModel(m, airy=True), z_order)
        rp = solve_r_kprime(m, z_order, airy=True)
        a_flat, p_flat = airy_flat(ra), airy_flat(rp)
        for side, flat in (("A", a_flat), ("P", p_flat)):
            for n, res in enumerate(flat_qde_residuals(flat, side, m), start=1):
                rep.require(all(_is_zero(x) for row in res for x in row), f"flat {side}-side QDE residual", zPower=n)
        phi_info = phi_series(m, t_order + 4 * z_order + 4)
        a_inv = SeriesMatrix(a_flat).inverse().coeffs
        prod = _product(p_flat, a_inv, phi_info, t_order)
        for n, mat in enumerate(prod):
            rep.require(mat[0][0] is not None, "empty product")
            for j, row in enumerate(mat):
                for k, x in enumerate(row):
                    x = _lift(x)
                    if not x.is_zero() and x.min_exponent(T) < 0:
                        rep.fail("pole in t", zPower=n, row=j, col=k, tPower=x.min_exponent(T))
        if z_order:
            rep.require(
                all(_is_zero(_lift(x) - (1 if a == b else 0)) for a, row in enumerate(prod[0]) for b, x in enumerate(row)),
                "z^0 term is not the identity",
            )
        for n, res in enumerate(comp_residuals(prod, m, phi_info, t_order), start=1):
            rep.require(all(_is_zero(x) for row in res for x in row), "product violates the comparison equation", zPower=n)

        for side, flat in (("A", a_flat), ("P", p_flat)):
            rep.require(all(_is_zero(x) for x in trace_log(flat, m)), f"det of the {side}-side matrix is not 1")
        for n, res in enumerate(symplectic_residuals(prod, m)):
            rep.require(all(_is_zero(_lift(x).truncate(T, t_order)) for row in res for x in row), "product is not symplectic", zPower=n)
        direct, free_before, free_after = solve_comp_direct(m, z_order, t_order, phi_info)
        rep.details["directFreeBeforeNormalization"] = free_before
        rep.details["directFreeParameters"] = free_after
        rep.require(free_after == 0, "direct solve is not unique on the compared window")
        for n in range(z_order):
            for j in range(m + 1):
                for k in range(m + 1):
                    diff = _lift(direct[n][j][k]) - _lift(prod[n][j][k])
                    rep.require(diff.is_zero(), "direct solve differs from the product", zPower=n, row=j, col=k)

        # negative control: without the rescaling the quotient has poles
        plain = _product(p_flat, a_inv, PhiSeries(m, [Fraction(1)] + [Fraction(0)] * (t_order + 4 * z_order + 3)), t_order)
        rep.details["poleWithoutRescaling"] = any(
            _min_t(mat) < 0 for mat in plain
        )
    return prod, rep


def phi_check(m: int, order: int = 8) -> Report:
    rep = Report("phi-ode", {"m": m, "tOrder": order})
    with timed(rep):
        ph = phi_series(m, order)
        res = ph.ode_residual()
        rep.require(res.is_zero(), "phi ODE residual", sample=str(res))
        rep.require(ph.inverse_coeffs[0] == 1, "c_0 != 1")
        for i in range(1, min(order, 4)):
            bad = PhiSeries(m, [c + (1 if k == i else 0) for k, c in enumerate(ph.inverse_coeffs)])
            rep.require(not bad.ode_residual().is_zero(), "perturbed phi still solves the ODE", index=i)
    return rep


def phi_expansion_coeffs(m: int, order: int = 4):
    """phi = lam + c_0 + c_{-1}/lam + ..: returns [c_0, c_{-1}, ..] as t-monomials."""
    ph = phi_series(m, order + 2).phi(order + 2)
    out = []
    for k in range(order):
        # lam^{-k} coefficient, k = 0, 1, ...
        terms = {e: c for e, c in ph.terms.items() if e[LAM] == -k}
        out.append(LaurentPolynomial(terms, 2))
    return out


def airy_disc_degree(m: int) -> int:
    """t-degree of disc = prod Delta_i in the Airy limit."""
    chart = AiryChart(m)
    d = chart.one
    for x in chart.deltas:
        d = d * x
    d = chart.to_t(d)
    if len(d.terms) != 1:
        raise ArithmeticError("Airy discriminant is not a monomial")
    return next(iter(d.terms))[T]


def degree_obstruction(m: int) -> Report:
    """For m > 2, c_{-1} (degree 2 in t) cannot be a multiple of disc (degree m)."""
    rep = Report("degree-obstruction", {"m": m})
    c_m1 = phi_expansion_coeffs(m, 2)[1]
    deg_c = {e[T] for e in c_m1.terms}
    deg_disc = airy_disc_degree(m)
    rep.details.update({"degCMinus1": sorted(deg_c), "degDisc": deg_disc})
    rep.require(deg_c == {2}, "c_{-1} is not a multiple of t^2")
    if m > 2:
        rep.require(deg_disc > 2, "disc degree does not exceed 2")
    return rep


# R~ xi R~^{-1} is not polynomial in z ------------------------------------------------


def notpol_check(m: int, z_order: int = 6) -> Report:
    """P = R~_A xi R~_A^{-1} = xi + z P_1 + ..: support on cyclic diagonals and non-vanishing."""
    rep = Report("notpol", {"m": m, "zOrder": z_order})
    with timed(rep):
        ra = solve_r_a(AmModel(m, airy=True), z_order + 1)
        flat = airy_flat(ra)
        inv = SeriesMatrix(flat).inverse().coeffs
        xi, mu = xi_matrix(m), mu_matrix(m)
        n_ = m + 1
        p = []
        for i in range(z_order + 1):
            acc = None
            for a in range(i + 1):
                term = mat_mul(mat_mul(flat[a], xi), inv[i - a])
                acc = term if acc is None else mat_add(acc, term)
            p.append(_mat_map(acc, _lift))
        rep.require(all(_is_zero(p[0][j][k] - xi[j][k]) for j in range(n_) for k in range(n_)), "P_0 != xi")
        support = {}
        for i in range(z_order + 1):
            cells = [(j, k) for j in range(n_) for k in range(n_) if not p[i][j][k].is_zero()]
            support[i] = cells
            for j, k in cells:
                rep.require((k - j - (i - 1)) % n_ == 0, "entry off the (i-1)-th cyclic diagonal", zPower=i, row=j, col=k)
            rep.require(bool(cells), "P_i vanishes", zPower=i)
        # [P, xi] = z^2 dP/dz - z [P, mu]
        for i in range(1, z_order + 1):
            lhs = mat_sub(mat_mul(p[i], xi), mat_mul(xi, p[i]))
            rhs = _scale(p[i - 1], i - 1) if i >= 2 else [[_lp_zero()] * n_ for _ in range(n_)]
            rhs = mat_sub(rhs, mat_sub(mat_mul(p[i - 1], mu), mat_mul(mu, p[i - 1])))
            rep.require(all(_is_zero(_lift(x) - _lift(y)) for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2)), "P ODE residual", zPower=i)
        rep.details["support"] = {i: len(c) for i, c in support.items()}
    return rep


# m = 2 obstruction ----------------------------------------------------------------------


def saddle_z1_terms():
    """z^1 coefficient of E[exp(-x^3 sqrt(-z) a - (x^4/4)(-z) b)] for a standard Gaussian x.

    Returned as {(i, j): c} meaning c * a^i * b^j.
    """
    # exponent tuples (x, a, b, eps) with eps = sqrt(-z)
    v = {(3, 1, 0, 1): Fraction(-1), (4, 0, 1, 2): Fraction(-1, 4)}
    w = truncated_exp(v, 2, 3)
    out = {}
    for (nx, ia, jb, e), c in w.items():
        if e != 2 or nx % 2:
            continue
        # eps^2 = -z
        val = -c * double_factorial(nx - 1)
        out[(ia, jb)] = out.get((ia, jb), 0) + val
    return {k: v for k, v in out.items() if v != 0}


class _CubicTraces:
    """Sums over the roots of X^3 + 2 t2 X + t1 via traces in Q(t1, t2)[X]/(f)."""

    def __init__(self):
        self.field = rf_field("t1", "t2")
        t1, t2 = self.field.gens()
        self.modulus = [t1, 2 * t2, self.field.zero]
        self.fprime = [t1, 2 * t2, self.field.zero, self.field.one]
        self.power_sums = [power_sum_over_roots(self.fprime, k) for k in range(3)]
        self.t1, self.t2 = t1, t2

    def reduce(self, coeffs):
        coeffs = list(coeffs) + [self.field.zero] * max(0, 3 - len(coeffs))
        return reduce_mod(coeffs, self.modulus + [self.field.one])[:3]

    def mul(self, a, b):
        return self.reduce(poly_mul(a, b))

    def inverse(self, a):
        cols = [self.reduce(poly_mul(a, [0] * k + [1])) for k in range(3)]
        mat = [[cols[k][r] for k in range(3)] for r in range(3)]
        inv = mat_inverse(mat)
        return [inv[r][0] for r in range(3)]

    def power(self, a, k):
        out = [self.field.one, self.field.zero, self.field.zero]
        base = a if k >= 0 else self.inverse(a)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def trace(self, a):
        total = self.field.zero
        for c, p in zip(self.reduce(a), self.power_sums):
            total = total + c * p
        return total


def disc_pole_order(x, disc):
    """Largest k with disc^k dividing the denominator of x (which must be a unit times a disc-power)."""
    den = x.denominator
    k = 0
    while True:
        q, r = divmod(den.raw, disc.numerator.raw)
        if not r.is_zero():
            break
        den = type(den)(den.field, q)
        k += 1
    if not den.raw.is_constant():
        raise ArithmeticError("unexpected denominator")
    return k


def obstruction_m2() -> Report:
    """z^1 coefficient of the m = 2 A-side R-matrix entry r_20 as a sum over the roots."""
    rep = Report("obstruction", {"m": 2})
    with timed(rep):
        terms = saddle_z1_terms()
        rep.details["gaussianTerms"] = {f"a^{i} b^{j}": c for (i, j), c in sorted(terms.items())}
        ring = _CubicTraces()
        fld, t1, t2 = ring.field, ring.t1, ring.t2
        delta = [2 * t2, ring.field.zero, 3 * ring.field.one]
        x = [ring.field.zero, ring.field.one]
        # a^2 = Q^2 / Delta^3, b = 1 / Delta^2; each root also carries 1 / Delta
        pieces = {}
        for (i, j), c in terms.items():
            if i % 2:
                raise ArithmeticError("odd power of a survived")
            el = ring.mul(ring.power(x, i), ring.power(delta, -(3 * i) // 2 - 2 * j - 1))
            pieces[(i, j)] = ring.trace(el) * c
        first = pieces.get((2, 0), fld.zero)
        second = pieces.get((0, 1), fld.zero)
        s = 2 * t2
        closed = Fraction(-15, 2) * (-2 * s**3 + 27 * t1**2) / (-4 * s**3 - 27 * t1**2) ** 2
        rep.require((first - closed).is_zero(), "first summand differs from the closed form")
        disc = 32 * t2**3 + 27 * t1**2
        rep.details["secondSummand"] = str(second)
        rep.details["firstPoleOrder"] = disc_pole_order(first, disc)
        rep.details["secondPoleOrder"] = disc_pole_order(second, disc)
        rep.require(rep.details["firstPoleOrder"] == 2, "first summand is not a second order pole")
        rep.require(rep.details["secondPoleOrder"] == 1, "second summand is not a first order pole")
        f2 = rf_field("t2")
        at_zero = first.substitute(f2, [0, f2.gen("t2")])
        rep.details["firstAtT1Zero"] = str(at_zero)
        rep.require((at_zero - Fraction(15, 16) / (2 * f2.gen("t2")) ** 3).is_zero(), "t1 = 0 specialization")

        # cross-check with the flat (2, 0) entry of the QDE solution
        r = solve_r_a(AmModel(2), 2)
        chart = r.chart
        r20 = chart.symmetric_to_t(r.flat().coeffs[1][2][0])
        rep.require((r20 - (first + second)).is_zero(), "z^1 coefficient of r_20 differs from the root sum")
        rep.details["secondSummandCoefficient"] = str(terms.get((0, 1)))
    return rep


# scaling ----------------------------------------------------------------------------------


def scaling_action(r: RMatrix, phi) -> RMatrix:
    """R(z) -> R(phi z)."""
    mats = []
    power = 1
    for mat in r.hat.coeffs:
        mats.append([[x * power for x in row] for row in mat])
        power = power * phi
    return RMatrix(SeriesMatrix(mats, r.hat.var), r.roots, r.deltas, r.side, r.provenance + "-scaled", r.chart, r.kappa)
