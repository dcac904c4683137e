"""R-matrices by formal steepest descent.

Integrands are expanded as polynomials in the rescaled fluctuation
variables and eps = (-z)^{1/2}; Gaussian moments then turn even powers
of eps into powers of -z. Odd total degrees cancel and are asserted to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra.linsolve import solve_sparse
from .algebra.rational import bernoulli, double_factorial, faber_zagier_a, faber_zagier_b
from .algebra.series import SeriesMatrix, TruncatedSeries, series_exp
from .algebra.wick import GaussianExpectation
from .charts import NonSemisimpleError, poly_from_roots, synthetic_division
from .frobenius import AmModel, PmModel
from .rmatrix import RMatrix


# closed forms -----------------------------------------------------------------


@dataclass(frozen=True)
class FzSeries:
    a: tuple
    b: tuple


def fz_series(order: int) -> FzSeries:
    """Faber-Zagier coefficients a_i = (6i)!/((3i)!(2i)!), b_i = a_i (1+6i)/(1-6i), i < order."""
    return FzSeries(tuple(faber_zagier_a(i) for i in range(order)), tuple(faber_zagier_b(i) for i in range(order)))


def stirling_exponent(x, z_order: int, var: str = "z") -> TruncatedSeries:
    """sum_{i >= 1} B_{2i} / (2i(2i-1)) (x z)^{2i-1}, truncated at z^z_order."""
    coeffs = [0] * z_order
    for i in range(1, z_order):
        k = 2 * i - 1
        if k >= z_order:
            break
        coeffs[k] = bernoulli(2 * i) / (2 * i * (2 * i - 1)) * x**k
    return TruncatedSeries(coeffs, z_order, var)


def mumford_r_entry(t, z_order: int) -> TruncatedSeries:
    """The 1x1 Hodge R-matrix exp(sum B_{2i}/(2i(2i-1)) (t z)^{2i-1})."""
    return series_exp(stirling_exponent(t, z_order))


def bernoulli_diagonal(m_or_lambdas, lambdas=None, z_order=None) -> SeriesMatrix:
    """exp(diag(b_j)) with b_j = sum_i B_{2i}/(2i(2i-1)) sum_{l != j} (z/(lam_l - lam_j))^{2i-1}.

    Accepts (m, lambdas, z_order) or (lambdas, z_order).
    """
    if lambdas is None or z_order is None:
        lambdas, z_order = m_or_lambdas, lambdas
    lambdas = list(lambdas)
    n_ = len(lambdas)
    diag = []
    for j in range(n_):
        b = TruncatedSeries.zero(z_order)
        for l in range(n_):
            if l != j:
                diff = lambdas[l] - lambdas[j]
                if diff == 0:
                    raise NonSemisimpleError("non-semisimple classical limit")
                b = b + stirling_exponent(Fraction(1) / diff, z_order)
        diag.append(series_exp(b))
    mats = [[[diag[i][n] if i == j else 0 for j in range(n_)] for i in range(n_)] for n in range(z_order)]
    return SeriesMatrix(mats, "z")


# polynomials in (x_1.., eps) as {exponent tuple: coeff}, eps last -----------------


def _pmul(p, r, emax):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            if e1[-1] + e2[-1] > emax:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return {e: c for e, c in out.items() if not c == 0}


def truncated_exp(v, emax, nvars):
    """exp(v) for v of eps-valuation >= 1, truncated at eps^emax."""
    one = {(0,) * (nvars + 1): 1}
    total = dict(one)
    power = dict(one)
    for k in range(1, emax + 1):
        power = _pmul(power, v, emax)
        if not power:
            break
        for e, c in power.items():
            c = c * Fraction(1, factorial(k))
            total[e] = total[e] + c if e in total else c
    return total


# A-side ------------------------------------------------------------------------------


def _model_data(model):
    roots, deltas = model.roots, model.deltas
    if model.chart is not None:
        fprime = list(model.chart.fprime)
    else:
        fprime = poly_from_roots(roots, Fraction(1))
    return roots, deltas, fprime


def _derivative_values(coeffs, x, count):
    """[p(x), p'(x), p''(x), ...] for a polynomial given low-to-high."""
    out = []
    cs = list(coeffs)
    for _ in range(count):
        val = 0
        for c in reversed(cs):
            val = val * x + c
        out.append(val)
        cs = [k * c for k, c in enumerate(cs)][1:] or [0]
    return out


def saddle_expand_1d(model: AmModel, k: int, mu_max: int, z_order: int):
    """Normalized saddle series sqrt(Delta_k) e^{-u_k/z} S_{mu k} for mu = 0..mu_max.

    With u = x / sqrt(Delta_k) the integrand is
    (u eps + Q_k)^mu exp(-sum_{l >= 3} u^l eps^{l-2} f^{(l)}(Q_k) / l!), and
    E[u^N] = (N-1)!! Delta_k^{-N/2}.
    """
    roots, deltas, fprime = _model_data(model)
    q, delta = roots[k], deltas[k]
    if delta == 0:
        raise NonSemisimpleError("non-semisimple point")
    m = model.m
    emax = 2 * (z_order - 1)
    # f^{(l)}(Q) = (f')^{(l-1)}(Q), l = 3..m+2
    dvals = _derivative_values(fprime, q, m + 2)
    v = {}
    for l in range(3, m + 3):
        if l - 2 > emax:
            break
        c = dvals[l - 1] * Fraction(-1, factorial(l))
        if not c == 0:
            v[(l, l - 2)] = c
    weight = truncated_exp(v, emax, 1)
    # Delta^{-N/2} for even N
    dinv = Fraction(1) / delta
    dpow = [1]
    out = []
    for mu in range(mu_max + 1):
        pref = {(a, a): comb(mu, a) * q ** (mu - a) for a in range(mu + 1) if a <= emax}
        integrand = _pmul(pref, weight, emax)
        coeffs = [0] * z_order
        for (n, e), c in integrand.items():
            if n % 2 != e % 2:
                raise ArithmeticError("odd term survived in the saddle expansion")
            if n % 2:
                continue
            while len(dpow) <= n // 2:
                dpow.append(dpow[-1] * dinv)
            r = e // 2
            coeffs[r] = coeffs[r] + c * double_factorial(n - 1) * dpow[n // 2] * (-1) ** r
        out.append(TruncatedSeries(coeffs, z_order))
    return out


def rmatrix_from_saddles_a(model: AmModel, z_order: int) -> RMatrix:
    """R^_{ik} = (1/Delta_i) sum_a c_a(Q_i) S^_{ak}, sum_a c_a X^a = f'_t(X)/(X - Q_i)."""
    roots, deltas, fprime = _model_data(model)
    n_ = model.m + 1
    cols = [saddle_expand_1d(model, k, model.m, z_order) for k in range(n_)]
    cs = [synthetic_division(fprime, qi) for qi in roots]
    mats = []
    for n in range(z_order):
        mat = []
        for i in range(n_):
            row = []
            for k in range(n_):
                acc = 0
                for a in range(n_):
                    s = cols[k][a][n]
                    if not s == 0:
                        acc = acc + cs[i][a] * s
                row.append(acc / deltas[i])
            mat.append(row)
        mats.append(mat)
    return RMatrix(SeriesMatrix(mats, "z"), roots, deltas, "A", "saddle", model.chart)


def airy_recursion(m: int, z_order: int):
    """alpha_n with sqrt(Delta) e^{-u/z} S_0 = sum alpha_n (z / Q^{m+2})^n in the Airy limit.

    Solves D^{m+1} S^ = Q^{m+1} S^ for the conjugated operator
    D = z d/dt^1 + Q - (z/2) dlog(Delta)/dt^1, with Q^{m+1} = -t^1,
    dQ/dt^1 = -1/((m+1) Q^m) and Delta = (m+1) Q^m. Elements are dicts
    {(z-power, Q-power): coefficient}; alpha_n is fixed by the z^{n+1}
    equation.
    """
    def op(p):
        out = {}
        for (a, b), c in p.items():
            # z d/dt^1 Q^b = -(b/(m+1)) z Q^{b-m-1}; -(z/2) dlog Delta = (m/(2(m+1))) z Q^{-m-1}
            coeff = Fraction(-b, m + 1) + Fraction(m, 2 * (m + 1))
            if coeff:
                key = (a + 1, b - m - 1)
                out[key] = out.get(key, 0) + c * coeff
            key = (a, b + 1)
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def image(n):
        # D^{m+1} e_n - Q^{m+1} e_n for e_n = z^n Q^{-n(m+2)}
        p = {(n, -n * (m + 2)): Fraction(1)}
        for _ in range(m + 1):
            p = op(p)
        key = (n, -n * (m + 2) + m + 1)
        p[key] = p.get(key, 0) - 1
        return {k: v for k, v in p.items() if v}

    alphas = [Fraction(1)]
    images = [image(0)]
    for n in range(1, z_order):
        images.append(image(n))
        cols = [{key: v for key, v in images[n].items() if key[0] <= n + 1}]
        rhs = {}
        for j in range(n):
            for key, v in images[j].items():
                if key[0] <= n + 1:
                    rhs[key] = rhs.get(key, 0) - alphas[j] * v
        alphas.append(solve_sparse(cols, rhs)[0])
    return alphas


# P-side -----------------------------------------------------------------------------


def covariance_pm(weights, delta):
    """sigma_kl = -prod_{j not in {k,l}} w_j / Delta, sigma_kk = sum_{m != k} prod_{j not in {k,m}} w_j / Delta."""
    n_ = len(weights)

    def prod_except(excl):
        p = 1
        for j in range(n_):
            if j not in excl:
                p = p * weights[j]
        return p

    dinv = 1 / delta
    cov = [[None] * n_ for _ in range(n_)]
    for k in range(n_):
        for l in range(n_):
            if k != l:
                cov[k][l] = -prod_except({k, l}) * dinv
            else:
                acc = 0
                for mm in range(n_):
                    if mm != k:
                        acc = acc + prod_except({k, mm})
                cov[k][k] = acc * dinv
    return cov


def pm_saddle_data(model: PmModel, i: int, q_order: int):
    """(weights w_j = P_i - lam_j, Delta_i) as q-series truncated at q_order."""
    w = [(model.P[i] - lj).truncate(q_order) for lj in model.lambdas]
    return w, model.deltas[i].truncate(q_order)


def saddle_expand_pm(model: PmModel, i: int, z_order: int, q_order: int | None = None) -> list:
    """sqrt(Delta_i) e^{-u_i/z} S_{0i} as a list of q-series (one per z-power).

    Gaussian on {sum T_j = 0} with the covariance above and vertex weights
    exp(-sum_j w_j sum_{k >= 3} T_j^k eps^{k-2} / k!).
    """
    qo = model.q_order if q_order is None else q_order
    n_ = model.m + 1
    emax = 2 * (z_order - 1)
    w, delta = pm_saddle_data(model, i, qo)
    cov = covariance_pm(w, delta)
    v = {}
    for j in range(n_):
        for k in range(3, emax + 3):
            e = [0] * (n_ + 1)
            e[j] = k
            e[-1] = k - 2
            v[tuple(e)] = w[j] * Fraction(-1, factorial(k))
    integrand = truncated_exp(v, emax, n_)
    gauss = GaussianExpectation(cov)
    coeffs = [TruncatedSeries.zero(qo, "q") for _ in range(z_order)]
    for e, c in integrand.items():
        deg = sum(e[:-1])
        if deg % 2 != e[-1] % 2:
            raise ArithmeticError("odd term survived in the saddle expansion")
        if deg % 2:
            continue
        mom = gauss.moment(e[:-1])
        if isinstance(mom, int) and mom == 0:
            continue
        r = e[-1] // 2
        coeffs[r] = coeffs[r] + c * mom * (-1) ** r
    return coeffs


def rmatrix_from_saddles_pm(model: PmModel, z_order: int, q_order: int | None = None) -> RMatrix:
    """R^_{ki} = (1/Delta_k) sum_a c_a(Q_k) S^_{ai}.

    The columns S^_{ai} = sqrt(Delta_i) e^{-u_i/z} S_{ai} follow from S^_{0i} by
    S^_{a+1} = (Q_i + z theta - (z/2) theta(Delta_i)/Delta_i) S^_a with theta = q d/dq,
    which is (D - lambar) S_a = S_{a+1} conjugated by e^{u_i/z} / sqrt(Delta_i)
    (q du_i/dq = P_i - lam_i).
    """
    qo = model.q_order if q_order is None else q_order
    n_ = model.m + 1
    roots = [x.truncate(qo) for x in model.Q]
    deltas = [x.truncate(qo) for x in model.deltas]
    one = TruncatedSeries.one(qo, "q")
    cs = [synthetic_division(poly_from_roots(roots, one), qk) for qk in roots]
    columns = []
    for i in range(n_):
        ss = [saddle_expand_pm(model, i, z_order, qo)]
        half = _theta(deltas[i]) * deltas[i].inverse() * Fraction(1, 2)
        for _ in range(n_ - 1):
            prev = ss[-1]
            nxt = []
            for n in range(z_order):
                val = roots[i] * prev[n]
                if n:
                    val = val + _theta(prev[n - 1]) - half * prev[n - 1]
                nxt.append(val)
            ss.append(nxt)
        columns.append(ss)
    mats = []
    for n in range(z_order):
        mat = []
        for k in range(n_):
            dinv = deltas[k].inverse()
            row = []
            for i in range(n_):
                acc = TruncatedSeries.zero(qo, "q")
                for a in range(n_):
                    acc = acc + cs[k][a] * columns[i][a][n]
                row.append(acc * dinv)
            mat.append(row)
        mats.append(mat)
    return RMatrix(SeriesMatrix(mats, "z"), roots, deltas, "P", "saddle")


def _theta(s):
    return TruncatedSeries([c * k for k, c in enumerate(s.coeffs)], s.order, s.var)
