"""The two semisimple Frobenius models.

A-side: Q[t^1..t^m][X] / f'_t(X) with f'_t = X^{m+1} + sum (mu+1) t^{mu+1} X^mu
and the residue pairing. P-side: the small equivariant quantum ring of P^m,
Q(lam)[[q]][H] / (prod (H - lam_i) - q), written in X = H - lambar.

Polynomials in X are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from .algebra.algebraic import AlgebraicElement
from .algebra.poly import RationalFunction, field
from .algebra.rational import to_fraction
from .algebra.series import TruncatedSeries, mat_mul, mat_transpose, newton_root_series
from .charts import AiryChart, NonSemisimpleError, SplittingChart, poly_from_roots, synthetic_division


def reduce_mod(coeffs, modulus):
    """Remainder of a polynomial modulo a monic polynomial, padded to deg(modulus)."""
    coeffs = list(coeffs)
    d = len(modulus) - 1
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        for j in range(d):
            if not modulus[j] == 0:
                coeffs[i - d + j] = coeffs[i - d + j] - c * modulus[j]
        coeffs[i] = 0
    return coeffs[:d] + [0] * max(0, d - len(coeffs))


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if not y == 0:
                out[i + j] = out[i + j] + x * y
    return out


class AmModel:
    """A_{m+1} versal deformation at symbolic or specialized t.

    ``t`` lists t^1..t^m; ``None`` means symbolic. The roots then live in
    the splitting chart Q(Q_0..Q_{m-1}), or in the Airy chart when ``airy``
    is set. For rational t the polynomial f'_t must split over Q; the roots
    are sorted increasingly.
    """

    side = "A"

    def __init__(self, m: int, t=None, airy: bool = False):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.airy = airy
        self.symbolic = t is None
        if airy:
            self.chart = AiryChart(m)
            self.base = field("t1")
            self.t = [self.base.gen("t1")] + [0] * (m - 1)
        elif t is None:
            self.chart = SplittingChart(m)
            self.base = field(*[f"t{mu}" for mu in range(1, m + 1)])
            self.t = list(self.base.gens())
        else:
            if len(t) != m:
                raise ValueError(f"expected {m} t-values")
            self.chart = None
            self.base = None
            self.t = [to_fraction(x) for x in t]
        if self.chart is not None:
            self.roots = list(self.chart.roots)
        else:
            self.roots = rational_roots(self.fprime_coeffs())
        self.eta = [
            [reduce_mod([0] * (a + b) + [1], self.fprime_coeffs())[m] for b in range(m + 1)]
            for a in range(m + 1)
        ]
        self.euler_weights = [Fraction(m + 2 - mu, m + 2) for mu in range(1, m + 1)]
        self.deltas = build_deltas(self)

    @classmethod
    def from_roots(cls, roots) -> "AmModel":
        """Specialized model whose f'_t has the given rational roots (summing to 0)."""
        roots = [to_fraction(r) for r in roots]
        if sum(roots) != 0:
            raise ValueError("roots of f'_t sum to zero")
        coeffs = poly_from_roots(roots, Fraction(1))
        m = len(roots) - 1
        return cls(m, [coeffs[mu - 1] / mu for mu in range(1, m + 1)])

    @classmethod
    def from_json(cls, spec: dict) -> "AmModel":
        if spec.get("side", "A") != "A":
            raise ValueError("not an A-side spec")
        t = spec.get("t")
        return cls(int(spec["m"]), None if t is None else [to_fraction(x) for x in t], bool(spec.get("airy", False)))

    def __repr__(self):
        return f"AmModel(m={self.m}, t={'symbolic' if self.symbolic else self.t}, airy={self.airy})"

    def fprime_coeffs(self):
        """f'_t with coefficients in the t-ring."""
        return [(mu + 1) * self.t[mu] for mu in range(self.m)] + [0, 1]

    def t_in_roots(self, mu):
        """t^mu expressed in the ring that holds the roots."""
        if self.chart is not None:
            return self.chart.t[mu]
        return self.t[mu - 1]

    def eta_in_roots(self):
        """eta with entries moved into the ring that holds the roots."""
        if self.chart is None:
            return self.eta
        images = [self.t_in_roots(mu) for mu in range(1, self.m + 1)]
        out = []
        for row in self.eta:
            new = []
            for x in row:
                if isinstance(x, RationalFunction):
                    if isinstance(self.chart, AiryChart):
                        # eta never involves t^1, so it is constant in the Airy limit
                        x = x.constant_value()
                    else:
                        x = x.substitute(self.chart.field, images[: len(x.field.names)])
                new.append(x)
            out.append(new)
        return out

    def disc(self):
        """Res_X(f'_t, f''_t), computed without the roots."""
        if self.base is None:
            f = self.fprime_coeffs()
            df = [k * f[k] for k in range(1, len(f))]
            p = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in map(Fraction, f)])
            dp = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in map(Fraction, df)])
            r = p.resultant(dp) if hasattr(p, "resultant") else None
            if r is None:
                out = Fraction(1)
                for x in self.roots:
                    out *= sum(c * x**k for k, c in enumerate(df))
                return out
            return Fraction(int(r.p), int(r.q))
        ring = field("X", *self.base.names)
        X = ring.gen("X")
        shift = ring.gens()[1:]
        f = X ** (self.m + 1)
        for mu in range(self.m):
            c = self.t[mu]
            if isinstance(c, RationalFunction):
                c = c.substitute(ring, shift)
            f = f + (mu + 1) * c * X**mu
        res = f.num.resultant(f.derivative("X").num, "X")
        return self.base.from_dict({e[1:]: Fraction(int(c.p), int(c.q)) for e, c in res.to_dict().items()})


def rational_roots(coeffs):
    """Rational roots (sorted) of a split squarefree polynomial."""
    fr = [to_fraction(c) for c in coeffs]
    p = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in fr])
    roots = []
    for r, mult in p.roots():
        if mult != 1:
            raise NonSemisimpleError("non-semisimple point")
        roots.append(Fraction(int(r.p), int(r.q)))
    if len(roots) != len(fr) - 1:
        raise ValueError("f'_t does not split over Q at this point")
    return sorted(roots)


def residue_pairing(a, b, model):
    """eta(a, b) = coefficient of X^m in a*b mod the defining polynomial (q set to 0 on the P-side)."""
    prod = poly_mul(list(a), list(b))
    if isinstance(model, PmModel):
        modulus = model.classical_modulus()
    else:
        modulus = model.fprime_coeffs()
    return reduce_mod(prod, modulus)[model.m]


def quantum_product(a, b, model, variable: str = "X"):
    """a*b reduced modulo f'_t (A-side) or prod(H - lam_i) - q (P-side).

    On the P-side ``variable`` selects whether the inputs are polynomials in
    X = H - lambar or in H itself.
    """
    prod = poly_mul(list(a), list(b))
    if isinstance(model, PmModel):
        modulus = model.quantum_modulus(variable)
        prod = [model.to_ring(c) for c in prod]
    else:
        modulus = model.fprime_coeffs()
    return reduce_mod(prod, modulus)


def build_deltas(model):
    """Delta_i = prod_{j != i}(Q_i - Q_j), checked against f''_t(Q_i)."""
    roots = model.roots
    m = model.m
    deltas = []
    for i, qi in enumerate(roots):
        d = 1
        for j, qj in enumerate(roots):
            if j != i:
                d = d * (qi - qj)
        if d == 0:
            raise NonSemisimpleError("non-semisimple point")
        alt = (m + 1) * qi**m
        for mu in range(1, m):
            alt = alt + (mu + 1) * mu * model.t_in_roots(mu + 1) * qi ** (mu - 1)
        if not (d - alt) == 0:
            raise ArithmeticError("the two formulas for Delta disagree")
        deltas.append(d)
    return deltas


class PsiMatrix:
    """Normalized idempotents in the power basis.

    Column i holds the coefficients of prod_{j != i}(X - Q_j) / sqrt(Delta_i).
    sqrt(Delta_i) is the formal generator s_i with s_i^2 = Delta_i, times the
    chosen sign.
    """

    def __init__(self, model, sqrt_choices):
        n = model.m + 1
        if sqrt_choices is None or len(sqrt_choices) != n:
            raise ValueError("a branch choice is required for every sqrt(Delta_i)")
        if any(s not in (1, -1) for s in sqrt_choices):
            raise ValueError("branch choices must be +1 or -1")
        self.model = model
        self.signs = list(sqrt_choices)
        self.deltas = model.deltas
        f = poly_from_roots(model.roots, 1)
        # unnormalized columns: coefficients of f'_t(X) / (X - Q_i)
        self.M = [[None] * n for _ in range(n)]
        for i, qi in enumerate(model.roots):
            col = synthetic_division(f, qi)
            for a in range(n):
                self.M[a][i] = col[a]

    def sqrt(self, i):
        return AlgebraicElement([0, self.signs[i]], (-self.deltas[i], 0), name=f"s{i}")

    def entry(self, a, i):
        """Psi_{a,i} = M_{a,i} / s_i = M_{a,i} s_i / Delta_i."""
        return self.sqrt(i) * (self.M[a][i] / self.deltas[i])

    def gram(self):
        """Psi^t eta Psi.

        The diagonal is (M^t eta M)_{ii} / s_i^2 = (M^t eta M)_{ii} / Delta_i.
        Off-diagonal entries are (M^t eta M)_{ij} / (s_i s_j); the returned
        value is the numerator, which is zero exactly when the entry is.
        """
        eta = self.model.eta_in_roots()
        g = mat_mul(mat_mul(mat_transpose(self.M), eta), self.M)
        n = len(g)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    # 1 / s_i^2 = 1 / Delta_i
                    out[i][i] = g[i][i] / self.deltas[i]
                else:
                    out[i][j] = g[i][j]
        return out

    def is_orthonormal(self) -> bool:
        g = self.gram()
        return all((x == 1) if i == j else (x == 0) for i, row in enumerate(g) for j, x in enumerate(row))


def build_psi(model, sqrt_choices) -> PsiMatrix:
    return PsiMatrix(model, sqrt_choices)


def idempotents(model):
    """Unnormalized idempotents eps_i = prod_{j != i}(X - Q_j) / Delta_i in the power basis."""
    f = poly_from_roots(model.roots, 1)
    return [[c / d for c in synthetic_division(f, qi)] for qi, d in zip(model.roots, model.deltas)]


def matchup_phi(m, lambdas, q):
    """(t, lam) with X^{m+1} + sum (mu+1) t^{mu+1} X^mu = prod(X + lambar - lam_i) - q.

    lam = -prod(lambar - lam_i), so that t^1 = -q - lam.
    """
    lambdas = list(lambdas)
    if len(lambdas) != m + 1:
        raise ValueError("need m+1 weights")
    lbar = sum(lambdas[1:], lambdas[0]) * Fraction(1, m + 1)
    coeffs = poly_from_roots([x - lbar for x in lambdas])
    coeffs[0] = coeffs[0] - q
    t = [coeffs[mu - 1] * Fraction(1, mu) for mu in range(1, m + 1)]
    lam = 1
    for x in lambdas:
        lam = lam * (lbar - x)
    return t, -lam


def tqft_value(g, n, indices, deltas):
    """Trivial CohFT on normalized idempotents.

    n >= 1: Delta_i^{(2g-2+n)/2} if all indices equal i, else 0; odd powers
    of sqrt(Delta_i) live in Q(..)[s]/(s^2 - Delta_i). n = 0: sum_j Delta_j^{g-1}.
    """
    if n == 0:
        total = 0
        for d in deltas:
            total = total + d ** (g - 1)
        return total
    indices = list(indices)
    if len(indices) != n:
        raise ValueError("one index per marking")
    if any(i != indices[0] for i in indices):
        return 0
    d = deltas[indices[0]]
    e = 2 * g - 2 + n
    if e % 2 == 0:
        return d ** (e // 2)
    return AlgebraicElement.sqrt_of(d, name=f"s{indices[0]}") ** e


class PmModel:
    """Equivariant small quantum ring of P^m; q-series truncated at q^q_order."""

    side = "P"

    def __init__(self, m: int, lambdas=None, q_order: int = 4):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.q_order = q_order
        if lambdas is None:
            self.base = field(*[f"lam{i}" for i in range(m + 1)])
            self.lambdas = list(self.base.gens())
            self.ring = field(*self.base.names, "q")
            self.symbolic = True
        else:
            if len(lambdas) != m + 1:
                raise ValueError("need m+1 weights")
            self.base = None
            self.lambdas = [to_fraction(x) for x in lambdas]
            self.ring = field("q")
            self.symbolic = False
            if len(set(self.lambdas)) != m + 1:
                raise NonSemisimpleError("non-semisimple classical limit")
        lam = self.lambdas
        self.lbar = sum(lam[1:], lam[0]) * Fraction(1, m + 1)
        classical = poly_from_roots(lam)
        self.P = [newton_root_series(classical, lam[i], q_order, var="q") for i in range(m + 1)]
        self.Q = [p - self.lbar for p in self.P]
        self.deltas = []
        for i in range(m + 1):
            d = TruncatedSeries.one(q_order, "q")
            for j in range(m + 1):
                if j != i:
                    d = d * (self.P[i] - self.P[j])
            self.deltas.append(d)
        self.eta = [
            [residue_pairing([0] * a + [1], [0] * b + [1], self) for b in range(m + 1)]
            for a in range(m + 1)
        ]
        self.euler = {"q": m + 1, "lambda": 1}

    @classmethod
    def from_json(cls, spec: dict) -> "PmModel":
        if spec.get("side") != "P":
            raise ValueError("not a P-side spec")
        lam = spec.get("lambda")
        return cls(int(spec["m"]), None if lam is None else [to_fraction(x) for x in lam], int(spec.get("qOrder", 4)))

    def __repr__(self):
        return f"PmModel(m={self.m}, lambda={'symbolic' if self.symbolic else self.lambdas}, qOrder={self.q_order})"

    def to_ring(self, x):
        """Move a base element into the ring that also contains q."""
        if isinstance(x, RationalFunction) and x.field != self.ring:
            return x.substitute(self.ring, self.ring.gens()[: len(x.field.names)])
        return x

    def classical_modulus(self):
        """prod(X + lambar - lam_i)."""
        return poly_from_roots([x - self.lbar for x in self.lambdas])

    def quantum_modulus(self, variable: str = "X"):
        roots = self.lambdas if variable == "H" else [x - self.lbar for x in self.lambdas]
        coeffs = [self.to_ring(c) for c in poly_from_roots(roots)]
        coeffs[0] = coeffs[0] - self.ring.gen("q")
        return coeffs

    def defining_residual(self, i):
        """prod_j (P_i - lam_j) - q, which vanishes to the truncation order."""
        val = TruncatedSeries.one(self.q_order, "q")
        for lj in self.lambdas:
            val = val * (self.P[i] - lj)
        return val - TruncatedSeries.gen(self.q_order, "q")
