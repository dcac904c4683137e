"""R-matrices from the quantum differential equation.

All solvers work in the hat frame R^ = D^{-1/2} R D^{1/2} (D = diag(Delta_i)),
which needs no square roots. There the QDE reads

    [R^_n, xi] + kappa (dR^_{n-1} + A R^_{n-1} - R^_{n-1} B) = 0

with A = M^{-1} dM, B = diag(dDelta / 2Delta) and xi = diag(Q_j). The
off-diagonal part at z^n is solved by division by Q_k - Q_j; the diagonal
part comes from the z^{n+1} equation, dR^_{n,jj} = -sum_{l != j} A_jl R^_{n,lj},
and is integrated.

A-side: d = d/dt^1, kappa = 1, the integration constant is fixed by
homogeneity. P-side over Q(lam_i)[[q]]: d = theta = q d/dq, kappa = 1, and
the constant is the q^0 value exp(b_j) of the classical limit. In the
lambda-chart (A-side variables plus lam, t^1 = -q - lam) we have
q d/dq = (t^1 + lam) d/dt^1, so kappa = t^1 + lam there.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra.series import SeriesMatrix, TruncatedSeries, mat_add, mat_mul
from .charts import AiryChart, NonSemisimpleError, SplittingChart
from .frobenius import AmModel, PmModel
from .oscillating import bernoulli_diagonal
from .rmatrix import RMatrix, connection


def _check_semisimple(roots):
    for j in range(len(roots)):
        for k in range(j + 1, len(roots)):
            if (roots[j] - roots[k]) == 0:
                raise NonSemisimpleError("non-semisimple: coincident eigenvalues of xi")


def solve_in_chart(chart, z_order, target_degree, lam_max=None):
    """Hat-frame solution in a differential chart; target_degree(n) is the weight of R^_n."""
    roots, deltas = chart.roots, chart.deltas
    n_ = len(roots)
    _check_semisimple(roots)
    kappa = chart.kappa
    a, b = connection(roots, deltas, chart.diff)
    zero, one = chart.zero, chart.one
    mats = [[[one if i == j else zero for j in range(n_)] for i in range(n_)]]
    for n in range(1, z_order):
        prev = mats[-1]
        g = _g_matrix(prev, a, b, chart.diff)
        cur = [[zero] * n_ for _ in range(n_)]
        for j in range(n_):
            for k in range(n_):
                if j != k:
                    cur[j][k] = -(kappa * g[j][k]) / (roots[k] - roots[j])
        for j in range(n_):
            h = zero
            for l in range(n_):
                if l != j and not a[j][l] == 0 and not cur[l][j] == 0:
                    h = h - a[j][l] * cur[l][j]
            cur[j][j] = chart.integrate_diagonal(j, h, target_degree(n), lam_max)
        mats.append(cur)
    return SeriesMatrix(mats, "z")


def _g_matrix(prev, a, b, diff):
    n_ = len(prev)
    ar = mat_mul(a, prev)
    return [[diff(prev[j][k]) + ar[j][k] - prev[j][k] * b[k] for k in range(n_)] for j in range(n_)]


def solve_r_a(model: AmModel, z_order: int) -> RMatrix:
    """A-side R-matrix; for a specialized model the symbolic solution is evaluated at its roots."""
    m = model.m
    if model.chart is not None:
        chart = model.chart
        hat = solve_in_chart(chart, z_order, lambda n: -n * (m + 2))
        return RMatrix(hat, chart.roots, chart.deltas, "A", "qde", chart)
    chart = SplittingChart(m)
    sym = solve_in_chart(chart, z_order, lambda n: -n * (m + 2))
    values = model.roots[:m]
    hat = sym.map(lambda x: x.evaluate(values))
    return RMatrix(hat, model.roots, model.deltas, "A", "qde")


def solve_r_kprime(m: int, z_order: int, airy: bool = False) -> RMatrix:
    """P^m R-matrix written in A-side variables with the extra parameter lam.

    Entries are homogeneous of weight -n at z^n (lam has weight m+1); the
    integration ansatz puts no bound on the lam-degree.
    """
    chart = AiryChart(m, with_lambda=True) if airy else SplittingChart(m, with_lambda=True)
    hat = solve_in_chart(chart, z_order, lambda n: -n)
    return RMatrix(hat, chart.roots, chart.deltas, "P", "qde-lambda", chart, chart.kappa)


def theta(s):
    """q d/dq, which keeps the truncation order."""
    if not isinstance(s, TruncatedSeries):
        return 0
    return TruncatedSeries([c * k for k, c in enumerate(s.coeffs)], s.order, s.var)


def solve_r_pm(model: PmModel, z_order: int, q_order: int | None = None) -> RMatrix:
    """P-side R-matrix as a (z, q) double series.

    With theta = q d/dq the equation is the A-side one with d replaced by
    theta. The diagonal equation theta R^_jj = h_j needs h_j(q=0) = 0, which
    is asserted; the q^0 term is the classical limit exp(b_j).
    """
    n_ = model.m + 1
    qo = model.q_order if q_order is None else q_order
    if qo > model.q_order:
        raise ValueError("model truncated below the requested q-order")
    roots = [x.truncate(qo) for x in model.Q]
    deltas = [x.truncate(qo) for x in model.deltas]
    _check_semisimple([r[0] for r in roots])
    a, b = connection(roots, deltas, theta)
    limit = bernoulli_diagonal(model.lambdas, z_order)
    zero = TruncatedSeries.zero(qo, "q")
    one = TruncatedSeries.one(qo, "q")
    mats = [[[one if i == j else zero for j in range(n_)] for i in range(n_)]]
    for n in range(1, z_order):
        prev = mats[-1]
        g = _g_matrix(prev, a, b, theta)
        cur = [[zero] * n_ for _ in range(n_)]
        for j in range(n_):
            for k in range(n_):
                if j != k:
                    cur[j][k] = g[j][k] / (roots[j] - roots[k])
        for j in range(n_):
            h = zero
            for l in range(n_):
                if l != j:
                    h = h - a[j][l] * cur[l][j]
            if not h[0] == 0:
                raise ArithmeticError("diagonal equation has a q^0 obstruction")
            coeffs = [limit[n][j][j]] + [h[k] * Fraction(1, k) for k in range(1, qo)]
            cur[j][j] = TruncatedSeries(coeffs, qo, "q")
        mats.append(cur)
    return RMatrix(SeriesMatrix(mats, "z"), roots, deltas, "P", "qde")


# residual checks ------------------------------------------------------------------


def qde_residual(r: RMatrix, diff, kappa=1):
    """[R^_n, xi] + kappa (dR^_{n-1} + A R^_{n-1} - R^_{n-1} B) for n = 1..order-1.

    On the P-side pass diff = theta = q d/dq.
    """
    a, b = connection(r.roots, r.deltas, diff)
    out = []
    n_ = r.dim
    for n in range(1, r.order):
        g = _g_matrix(r.hat.coeffs[n - 1], a, b, diff)
        cur = r.hat.coeffs[n]
        res = [
            [cur[j][k] * (r.roots[k] - r.roots[j]) + kappa * g[j][k] for k in range(n_)]
            for j in range(n_)
        ]
        out.append(res)
    return out


def pm_qde_residual(r: RMatrix):
    """QDE residual of a P-side solution, with zq d/dq written as z theta."""
    return qde_residual(r, theta)


def verify_symplectic(r: RMatrix) -> SeriesMatrix:
    """R(z) R^t(-z) - 1, computed in the hat frame as R^(z) D^{-1} R^t(-z) D - 1."""
    n_ = r.dim
    d = r.deltas
    out = []
    for n in range(r.order):
        acc = None
        for p in range(n + 1):
            left = r.hat.coeffs[p]
            right = r.hat.coeffs[n - p]
            sign = -1 if (n - p) % 2 else 1
            term = [
                [sum((left[i][k] * right[j][k] * (d[j] / d[k]) for k in range(n_) if not left[i][k] == 0), 0) * sign for j in range(n_)]
                for i in range(n_)
            ]
            acc = term if acc is None else mat_add(acc, term)
        if n == 0:
            acc = [[x - 1 if i == j else x for j, x in enumerate(row)] for i, row in enumerate(acc)]
        out.append(acc)
    return SeriesMatrix(out, "z")


def euler_a(chart):
    """The A-side Euler field E = (1/(m+2)) sum Q_i d/dQ_i (plus (m+1) lam d/dlam) as an operator."""
    m = chart.m
    if isinstance(chart, AiryChart):
        def op(x):
            x = chart(x)
            return x.derivative_log(0) + (m + 1) * x.derivative_log(1) if chart.with_lambda else x.derivative_log(0)
    else:
        names = chart.names
        gens = chart.field.gens()

        def op(x):
            x = chart.field(x)
            total = chart.zero
            for nm, g in zip(names, gens):
                w = m + 1 if nm == "lam" else 1
                dx = x.derivative(nm)
                if not dx == 0:
                    total = total + w * g * dx
            return total
    return op


def verify_homogeneity(r: RMatrix, weight=None) -> SeriesMatrix:
    """z dR/dz + L_E R.

    A-side (chart entries): L_E = sum (m+2-mu)/(m+2) t^mu d/dt^mu, which on
    root coordinates is (1/(m+2)) sum Q_i d/dQ_i. lambda-chart: the P-side
    field (m+1) q d/dq + sum lam_i d/dlam_i, i.e. sum Q_i d/dQ_i + (m+1) lam d/dlam.
    P-side q-series with symbolic lam_i: (m+1) q d/dq + sum lam_i d/dlam_i
    applied coefficientwise. The conjugation by sqrt(Delta_i / Delta_j) has
    weight zero, so the check may be run on the hat frame.
    """
    if r.chart is not None:
        op = euler_a(r.chart)
        m = r.chart.m
        scale = 1 if r.chart.with_lambda else m + 2
        return SeriesMatrix(
            [[[n * scale * x + op(x) for x in row] for row in mat] for n, mat in enumerate(r.hat.coeffs)], "z"
        )
    if r.side == "P":
        first = r.roots[0][0]
        if not hasattr(first, "field"):
            raise ValueError("homogeneity needs symbolic equivariant parameters")
        fld = first.field
        gens = fld.gens()
        m = r.dim - 1

        def euler_series(s, n):
            coeffs = []
            for k, c in enumerate(s.coeffs):
                c = fld(c)
                val = (n + (m + 1) * k) * c
                for nm, g in zip(fld.names, gens):
                    val = val + g * c.derivative(nm)
                coeffs.append(val)
            return TruncatedSeries(coeffs, s.order, s.var)

        return SeriesMatrix(
            [[[euler_series(x, n) for x in row] for row in mat] for n, mat in enumerate(r.hat.coeffs)], "z"
        )
    raise ValueError("homogeneity needs symbolic coordinates")


def residual_is_zero(res) -> bool:
    if isinstance(res, SeriesMatrix):
        res = res.coeffs
    return all(_zero(x) for mat in res for row in mat for x in row)


def first_failure(res):
    if isinstance(res, SeriesMatrix):
        res = res.coeffs
    for n, mat in enumerate(res):
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if not _zero(x):
                    return {"zPower": n, "row": i, "col": j}
    return None


def _zero(x):
    if isinstance(x, TruncatedSeries):
        return x.is_zero()
    return x == 0
