"""Root coordinates for the A_{m+1} family.

The recursion for R-matrices runs in a differential field that contains
all roots Q_0..Q_m of f'_t, with d/dt^1 acting through dQ_j/dt^1 = -1/Delta_j.
Two such fields are provided:

* ``SplittingChart``: Q(Q_0, .., Q_{m-1}) with Q_m = -(Q_0 + .. + Q_{m-1}).
  The roots are the coordinates, so the t^mu are elementary symmetric
  functions and no algebraic extension is needed. An optional extra
  variable ``lam`` (independent of t^1) is used for the projective-space
  R-matrix written in A-side variables.
* ``AiryChart``: the locus t^2 = .. = t^m = 0, where Q_k = zeta^k s with
  s^{m+1} = -t^1. Elements are Laurent polynomials in (s, lam) over the
  cyclotomic field Q(zeta).

Both grade Q (or s) with weight 1 and lam with weight m+1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .algebra.algebraic import root_of_unity
from .algebra.laurent import LaurentPolynomial
from .algebra.linsolve import InconsistentSystem, solve_sparse
from .algebra.poly import RationalFunction, field


class NonSemisimpleError(ArithmeticError):
    pass


def poly_from_roots(roots, one=1):
    """Coefficients (low to high) of prod (X - r)."""
    coeffs = [one]
    for r in roots:
        new = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - r * c
        coeffs = new
    return coeffs


def synthetic_division(coeffs, root):
    """Quotient of the polynomial (low-to-high coefficients) by (X - root)."""
    n = len(coeffs) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = coeffs[k] + acc * root if k < n else coeffs[k]
        out[k - 1] = acc
    return out


def weighted_partitions(total, weights, bounds=None):
    """Exponent vectors e >= 0 with sum e_i * weights[i] == total."""
    if total < 0:
        return
    if not weights:
        if total == 0:
            yield ()
        return
    w = weights[0]
    cap = total // w
    if bounds and bounds[0] is not None:
        cap = min(cap, bounds[0])
    for e in range(cap + 1):
        for rest in weighted_partitions(total - e * w, weights[1:], bounds[1:] if bounds else None):
            yield (e,) + rest


class SplittingChart:
    def __init__(self, m: int, with_lambda: bool = False):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.with_lambda = with_lambda
        self.names = tuple(f"Q{i}" for i in range(m)) + (("lam",) if with_lambda else ())
        self.field = field(*self.names)
        gens = self.field.gens()
        self.one = self.field.one
        self.zero = self.field.zero
        q = list(gens[:m])
        self.roots = q + [-sum(q[1:], q[0])]
        self.lam = gens[m] if with_lambda else None
        self.fprime = poly_from_roots(self.roots, self.one)
        self.t = [None] + [self.fprime[mu - 1] / mu for mu in range(1, m + 1)]
        self.deltas = []
        for j, qj in enumerate(self.roots):
            d = self.one
            for i, qi in enumerate(self.roots):
                if i != j:
                    d = d * (qj - qi)
            self.deltas.append(d)
        self.kappa = self.one if not with_lambda else self.t[1] + self.lam
        self.weights = (1,) * m + ((m + 1,) if with_lambda else ())
        raw = [d.num for d in self.deltas[:m]]
        lcm = raw[0]
        for d in raw[1:]:
            lcm = lcm * d / lcm.gcd(d)
        self._lcm = lcm
        self._cof = [-(lcm / d) for d in raw]

    def __repr__(self):
        return f"SplittingChart(m={self.m}, lambda={self.with_lambda})"

    def __call__(self, x):
        return self.field(x)

    # differential structure -------------------------------------------------
    def diff(self, x):
        """d/dt^1 at fixed t^2..t^m (and fixed lam)."""
        x = self.field(x)
        if x.is_zero():
            return self.zero
        n, d = x.num, x.den
        const_den = d.is_constant()
        num = None
        for i in range(self.m):
            name = self.names[i]
            term = n.derivative(name) * d
            if not const_den:
                term = term - n * d.derivative(name)
            term = term * self._cof[i]
            num = term if num is None else num + term
        return RationalFunction(self.field, num, self._lcm * d * d, True)

    def weighted_degree(self, x):
        """Degree of a homogeneous element, None if x is not homogeneous."""
        x = self.field(x)
        if x.is_zero():
            return None
        degs = []
        for raw in (x.num, x.den):
            ds = {sum(e * w for e, w in zip(exps, self.weights)) for exps in raw.monoms()}
            if len(ds) != 1:
                return None
            degs.append(ds.pop())
        return degs[0] - degs[1]

    def lambda_coefficients(self, x):
        """{c: coefficient of lam^c} for x polynomial in lam (denominator lam-free)."""
        x = self.field(x)
        if not self.with_lambda:
            return {0: x}
        li = len(self.names) - 1
        if any(e[li] for e in x.den.monoms()):
            raise ValueError("denominator depends on lam")
        buckets = {}
        for exps, c in x.num.to_dict().items():
            c_ = exps[li]
            e = list(exps)
            e[li] = 0
            buckets.setdefault(c_, {})[tuple(e)] = c
        return {
            c_: RationalFunction(self.field, self.field.ctx.from_dict(t), x.den, True)
            for c_, t in buckets.items()
        }

    # helper ring Q[q, t^2..t^m, lam] for the diagonal ansatz ----------------
    @cached_property
    def _ansatz_ring(self):
        names = ("q",) + tuple(f"t{mu}" for mu in range(2, self.m + 1))
        if self.with_lambda:
            names += ("lam",)
        ring = field(*names)
        gens = ring.gens()
        q = gens[0]
        # f''(q) = (m+1) q^m + sum_{mu=1}^{m-1} mu (mu+1) t^{mu+1} q^{mu-1}
        delta = (self.m + 1) * q**self.m
        for mu in range(1, self.m):
            delta = delta + mu * (mu + 1) * gens[mu] * q ** (mu - 1)
        weights = (1,) + tuple(self.m + 2 - mu for mu in range(2, self.m + 1))
        if self.with_lambda:
            weights += (self.m + 1,)
        return ring, delta.num, weights

    def _to_chart(self, raw, j):
        ring, _, _ = self._ansatz_ring
        images = [self.roots[j].num] + [self.t[mu].num for mu in range(2, self.m + 1)]
        if self.with_lambda:
            images.append(self.lam.num)
        return raw.compose(*images, ctx=self.field.ctx)

    def integrate_diagonal(self, j: int, h, target_degree: int, lam_max=None):
        """The unique F(Q_j, t^2..t^m[, lam]) / Delta_j^K of weighted degree
        ``target_degree`` with dF/dt^1 = h.

        Uniqueness: a t^1-constant of negative degree vanishes, so no
        integration constant survives.
        """
        h = self.field(h)
        if h.is_zero():
            return self.zero
        delta = self.deltas[j].num
        den = h.den
        power = self.field.constant_poly(1)
        k_h = 0
        while True:
            _, r = divmod(power, den)
            if r.is_zero():
                break
            power = power * delta
            k_h += 1
            if k_h > 400:
                raise ArithmeticError("diagonal integrand has poles off Delta_j = 0")
        ring, delta_h, weights = self._ansatz_ring
        qname = ring.names[0]
        ddelta_h = delta_h.derivative(qname)
        gens = ring.ctx.gens()
        last_err = None
        for K in range(max(k_h - 2, 0), max(k_h - 2, 0) + 3):
            d_n = self.m * K + target_degree
            if d_n < 0:
                continue
            bounds = [None] * len(weights)
            if self.with_lambda:
                bounds[-1] = lam_max
            monos = list(weighted_partitions(d_n, weights, bounds))
            if not monos:
                continue
            target = h.num * (delta ** (K + 2) / den)
            cols, basis = [], []
            for e in monos:
                mono = ring.ctx.from_dict({e: 1})
                a = e[0]
                # d/dt^1 (mono / Delta^K) = p / Delta^(K+2), using dq/dt^1 = -1/Delta
                p = K * mono * ddelta_h
                if a:
                    p = p - a * (mono / gens[0]) * delta_h
                cols.append({k: v for k, v in self._to_chart(p, j).to_dict().items()})
                basis.append(mono)
            rhs = dict(target.to_dict().items())
            try:
                coeffs = solve_sparse(
                    [{k: _frac(v) for k, v in c.items()} for c in cols],
                    {k: _frac(v) for k, v in rhs.items()},
                )
            except InconsistentSystem as exc:
                last_err = exc
                continue
            num = ring.ctx.constant(0)
            for c, mono in zip(coeffs, basis):
                if c:
                    num = num + mono * _fmpq(c)
            return RationalFunction(self.field, self._to_chart(num, j), delta**K, True)
        raise ArithmeticError(f"homogeneity failed to fix the diagonal entry {j}: {last_err}")

    # conversion to t-coordinates -------------------------------------------------
    @cached_property
    def t_field(self):
        names = tuple(f"t{mu}" for mu in range(1, self.m + 1))
        if self.with_lambda:
            names += ("lam",)
        return field(*names)

    @cached_property
    def disc(self):
        d = self.one
        for x in self.deltas:
            d = d * x
        return d

    def _t_monomial(self, exps, cache={}):
        key = (self.m, self.with_lambda, exps)
        hit = cache.get(key)
        if hit is None:
            val = self.one
            for mu, e in enumerate(exps, start=1):
                if e:
                    val = val * self.t[mu] ** e
            hit = cache[key] = val.num
        return hit

    def symmetric_to_t(self, x):
        """Rewrite a root-symmetric element as a rational function of t (and lam).

        The denominator must divide a power of disc = prod Delta_i.
        """
        x = self.field(x)
        if x.is_zero():
            return self.t_field.zero
        disc = self.disc.num
        power = self.field.constant_poly(1)
        k = 0
        while True:
            _, r = divmod(power, x.den)
            if r.is_zero():
                break
            power = power * disc
            k += 1
            if k > 200:
                raise ArithmeticError("denominator is not a power of the discriminant")
        num = x.num * (power / x.den)
        p = self._symmetric_poly_to_t(num)
        if k == 0:
            return p
        return p / self._symmetric_poly_to_t(disc) ** k

    def _symmetric_poly_to_t(self, raw):
        m = self.m
        tw = tuple(m + 2 - mu for mu in range(1, m + 1))
        by_part = {}
        for exps, c in raw.to_dict().items():
            lam_e = exps[m] if self.with_lambda else 0
            deg = sum(exps[:m])
            by_part.setdefault((lam_e, deg), {})[tuple(exps[:m]) + ((0,) if self.with_lambda else ())] = c
        tf = self.t_field
        result = tf.zero
        for (lam_e, deg), terms in sorted(by_part.items()):
            monos = list(weighted_partitions(deg, tw))
            cols = [{k: _frac(v) for k, v in self._t_monomial(e).to_dict().items()} for e in monos]
            rhs = {k: _frac(v) for k, v in terms.items()}
            try:
                coeffs = solve_sparse(cols, rhs)
            except InconsistentSystem:
                raise ValueError("element is not symmetric in the roots") from None
            for c, e in zip(coeffs, monos):
                if c:
                    full = e + ((lam_e,) if self.with_lambda else ())
                    result = result + tf.monomial(full, c)
        return result


def _frac(v):
    return Fraction(int(v.p), int(v.q)) if hasattr(v, "p") else Fraction(v)


def _fmpq(c):
    import flint

    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


class AiryChart:
    """Laurent polynomials in (s, lam) over Q(zeta_{m+1}); Q_k = zeta^k s, s^{m+1} = -t^1."""

    def __init__(self, m: int, with_lambda: bool = False):
        self.m = m
        self.with_lambda = with_lambda
        self.zeta = root_of_unity(m + 1)
        self.one = LaurentPolynomial.constant(Fraction(1), 2)
        self.zero = LaurentPolynomial(None, 2)
        s = LaurentPolynomial.monomial((1, 0), Fraction(1))
        self.s = s
        self.roots = [LaurentPolynomial.monomial((1, 0), self.zeta**k if k else Fraction(1)) for k in range(m + 1)]
        self.lam = LaurentPolynomial.monomial((0, 1), Fraction(1)) if with_lambda else None
        self.t1 = -(s ** (m + 1))
        self.t = [None, self.t1] + [self.zero] * (m - 1)
        self.deltas = []
        for j, qj in enumerate(self.roots):
            d = self.one
            for i, qi in enumerate(self.roots):
                if i != j:
                    d = d * (qj - qi)
            self.deltas.append(d)
        self.fprime = poly_from_roots(self.roots, self.one)
        self.kappa = self.one if not with_lambda else self.t1 + self.lam
        self.weights = (1, m + 1)

    def __repr__(self):
        return f"AiryChart(m={self.m}, lambda={self.with_lambda})"

    def __call__(self, x):
        if isinstance(x, LaurentPolynomial):
            return x
        return LaurentPolynomial.constant(x, 2)

    def diff(self, x):
        """d/dt^1 using ds/dt^1 = -1 / ((m+1) s^m)."""
        x = self(x)
        out = {}
        for (k, c_), c in x.terms.items():
            if k:
                out[(k - self.m - 1, c_)] = c * Fraction(-k, self.m + 1)
        return LaurentPolynomial(out, 2)

    def weighted_degree(self, x):
        x = self(x)
        degs = {k + (self.m + 1) * c_ for (k, c_) in x.terms}
        return degs.pop() if len(degs) == 1 else None

    def lambda_coefficients(self, x):
        out = {}
        for (k, c_), c in self(x).terms.items():
            out.setdefault(c_, {})[(k, 0)] = c
        return {c_: LaurentPolynomial(t, 2) for c_, t in out.items()}

    def integrate_diagonal(self, j, h, target_degree, lam_max=None):
        out = {}
        for (k, c_), c in self(h).terms.items():
            k2 = k + self.m + 1
            if k2 == 0:
                raise ArithmeticError("logarithmic term in diagonal integration")
            if k2 + (self.m + 1) * c_ != target_degree:
                raise ArithmeticError("integrand is not homogeneous of the expected degree")
            if lam_max is not None and c_ > lam_max:
                raise ArithmeticError("lambda degree exceeds the allowed bound")
            out[(k2, c_)] = c * Fraction(-(self.m + 1), k2)
        return LaurentPolynomial(out, 2)

    def to_t(self, x):
        """Rewrite a Galois-invariant element as a Laurent polynomial in (t^1, lam) over Q."""
        out = {}
        for (k, c_), c in self(x).terms.items():
            if k % (self.m + 1):
                raise ValueError(f"s-exponent {k} is not a multiple of {self.m + 1}")
            r = k // (self.m + 1)
            if not isinstance(c, Fraction):
                c = c.in_base()
            out[(r, c_)] = c * (-1) ** (r % 2)
        return LaurentPolynomial(out, 2)
