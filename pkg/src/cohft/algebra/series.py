"""Truncated power series and matrices of them over an arbitrary exact ring."""

from __future__ import annotations

from fractions import Fraction


def _is_zero(c) -> bool:
    return c == 0


class TruncatedSeries:
    """sum_{k < order} c_k var^k, known modulo var^order.

    Coefficients may be any ring elements supporting +, -, * and equality
    with 0 (ints, Fractions, RationalFunctions, AlgebraicElements, ...).
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order: int | None = None, var: str = "z"):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[:order] + [0] * max(0, order - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.var = var

    @classmethod
    def zero(cls, order: int, var: str = "z"):
        return cls([], order, var)

    @classmethod
    def one(cls, order: int, var: str = "z", one=1):
        return cls([one], order, var)

    @classmethod
    def gen(cls, order: int, var: str = "z", one=1):
        return cls([0, one], order, var)

    def __getitem__(self, k: int):
        if k < 0:
            return 0
        if k >= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        terms = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not _is_zero(c)]
        return (" + ".join(terms) or "0") + f" + O({self.var}^{self.order})"

    def _other(self, o):
        if isinstance(o, TruncatedSeries):
            if o.var != self.var:
                raise ValueError(f"series in {self.var} and {o.var} cannot be combined")
            return o
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:order], min(order, self.order), self.var)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return None

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def __add__(self, o):
        s = self._other(o)
        if s is None:
            if self.order == 0:
                return self
            return TruncatedSeries([self.coeffs[0] + o] + self.coeffs[1:], self.order, self.var)
        n = min(self.order, s.order)
        return TruncatedSeries([self.coeffs[k] + s.coeffs[k] for k in range(n)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        s = self._other(o)
        if s is None:
            if isinstance(o, (int, Fraction)) and o == 0:
                return TruncatedSeries.zero(self.order, self.var)
            return TruncatedSeries([c * o for c in self.coeffs], self.order, self.var)
        n = min(self.order, s.order)
        a, b = self.coeffs, s.coeffs
        nza = [(i, a[i]) for i in range(n) if not _is_zero(a[i])]
        nzb = [(j, b[j]) for j in range(n) if not _is_zero(b[j])]
        out = [0] * n
        for i, x in nza:
            for j, y in nzb:
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + x * y
        return TruncatedSeries(out, n, self.var)

    def __rmul__(self, o):
        if isinstance(o, (int, Fraction)) and o == 0:
            return TruncatedSeries.zero(self.order, self.var)
        return TruncatedSeries([o * c for c in self.coeffs], self.order, self.var)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.one(self.order, self.var, _one_like(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        c = self.coeffs
        if self.order == 0:
            return self
        if _is_zero(c[0]):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / c[0] if isinstance(c[0], (int, Fraction)) else c[0] ** -1
        if isinstance(c[0], int):
            inv0 = Fraction(1, c[0])
        out = [inv0]
        for n in range(1, self.order):
            acc = 0
            for k in range(1, n + 1):
                if not _is_zero(c[k]):
                    acc = acc + c[k] * out[n - k]
            out.append(-(acc * inv0))
        return TruncatedSeries(out, self.order, self.var)

    def __truediv__(self, o):
        s = self._other(o)
        if s is None:
            if isinstance(o, int):
                o = Fraction(1, o)
                return self * o
            return self * (o ** -1 if not isinstance(o, Fraction) else 1 / o)
        return self * s.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __eq__(self, o):
        s = self._other(o) if isinstance(o, TruncatedSeries) else None
        if s is None:
            if isinstance(o, (int, Fraction)):
                return self == TruncatedSeries([o], self.order, self.var)
            return NotImplemented
        n = min(self.order, s.order)
        return all(self.coeffs[k] - s.coeffs[k] == 0 for k in range(n))

    __hash__ = None

    def derivative(self) -> "TruncatedSeries":
        """d/dvar; the result is known to one order less."""
        out = [self.coeffs[k] * k for k in range(1, self.order)]
        return TruncatedSeries(out, max(self.order - 1, 0), self.var)

    def integral(self, constant=0) -> "TruncatedSeries":
        """Antiderivative with the given constant term; known to one order more."""
        out = [constant] + [self.coeffs[k] * Fraction(1, k + 1) for k in range(self.order)]
        return TruncatedSeries(out, self.order + 1, self.var)

    def scale(self, c) -> "TruncatedSeries":
        """f(c * var)."""
        out, p = [], 1
        for k in range(self.order):
            out.append(self.coeffs[k] * p)
            p = p * c
        return TruncatedSeries(out, self.order, self.var)

    def shift(self, k: int) -> "TruncatedSeries":
        """var^k * f, keeping the same order."""
        return TruncatedSeries([0] * k + self.coeffs[: max(self.order - k, 0)], self.order, self.var)

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order, self.var)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """f(inner) for inner with zero constant term."""
        if not _is_zero(inner[0]):
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        result = TruncatedSeries.zero(n, inner.var)
        for c in reversed(self.coeffs[:n]):
            result = result * inner + c
        return result


def _one_like(s: TruncatedSeries):
    return 1


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp(s) for s with zero constant term, via n E_n = sum k s_k E_{n-k}."""
    if s.order and not _is_zero(s[0]):
        raise ValueError("exp needs a series with zero constant term")
    e = [1]
    for n in range(1, s.order):
        acc = 0
        for k in range(1, n + 1):
            if not _is_zero(s.coeffs[k]):
                acc = acc + s.coeffs[k] * k * e[n - k]
        e.append(acc * Fraction(1, n))
    return TruncatedSeries(e, s.order, s.var)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log(s) for s with constant term 1."""
    if s.order and s[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    ds = TruncatedSeries([s.coeffs[k] * k for k in range(s.order)], s.order, s.var)
    q = (ds * s.inverse()).coeffs
    out = [0] + [q[k] * Fraction(1, k) for k in range(1, s.order)]
    return TruncatedSeries(out, s.order, s.var)


def newton_root_series(coeffs, seed, order: int, rhs: TruncatedSeries | None = None, var: str = "q"):
    """Power-series root X(q) of sum_k coeffs[k] X^k = rhs(q) with X(0) = seed.

    ``coeffs`` lists the coefficients of the polynomial from degree 0 up;
    ``rhs`` defaults to the variable q itself. Newton iteration doubles the
    number of correct coefficients per step, so this needs seed to be a
    simple root of the polynomial.
    """
    if rhs is None:
        rhs = TruncatedSeries.gen(order, var)
    coeffs = list(coeffs)
    dcoeffs = [coeffs[k] * k for k in range(1, len(coeffs))]

    def horner(cs, x):
        acc = TruncatedSeries.zero(x.order, var)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    x = TruncatedSeries([seed], order, var)
    p0 = horner(coeffs, TruncatedSeries([seed], 1, var))[0]
    if order > 0 and p0 - rhs[0] != 0:
        raise ValueError("seed is not a root at q = 0")
    if order > 1 and horner(dcoeffs, TruncatedSeries([seed], 1, var))[0] == 0:
        raise ValueError("non-simple root")
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        xp = x.truncate(prec)
        f = horner(coeffs, xp) - rhs.truncate(prec)
        df = horner(dcoeffs, xp)
        x = TruncatedSeries((xp - f * df.inverse()).coeffs, order, var)
    return x


class SeriesMatrix:
    """Square matrix-valued power series stored as a list of coefficient matrices.

    ``coeffs[n][i][j]`` is the var^n coefficient of entry (i, j).
    """

    def __init__(self, coeffs, var: str = "z"):
        self.coeffs = [[list(row) for row in mat] for mat in coeffs]
        self.var = var
        self.dim = len(self.coeffs[0]) if self.coeffs else 0

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def identity(cls, dim: int, order: int, var="z", one=1):
        mats = [[[one if i == j else 0 for j in range(dim)] for i in range(dim)]]
        mats += [[[0] * dim for _ in range(dim)] for _ in range(order - 1)]
        return cls(mats, var)

    def entry(self, i: int, j: int) -> TruncatedSeries:
        return TruncatedSeries([m[i][j] for m in self.coeffs], self.order, self.var)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def truncate(self, order: int) -> "SeriesMatrix":
        return SeriesMatrix(self.coeffs[:order], self.var)

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix([mat_transpose(m) for m in self.coeffs], self.var)

    def negate_var(self) -> "SeriesMatrix":
        """R(-z)."""
        return SeriesMatrix([mat_scale(m, (-1) ** n) for n, m in enumerate(self.coeffs)], self.var)

    def __matmul__(self, o: "SeriesMatrix") -> "SeriesMatrix":
        n = min(self.order, o.order)
        out = []
        for k in range(n):
            acc = None
            for a in range(k + 1):
                term = mat_mul(self.coeffs[a], o.coeffs[k - a])
                acc = term if acc is None else mat_add(acc, term)
            out.append(acc)
        return SeriesMatrix(out, self.var)

    def __sub__(self, o: "SeriesMatrix") -> "SeriesMatrix":
        n = min(self.order, o.order)
        return SeriesMatrix([mat_sub(self.coeffs[k], o.coeffs[k]) for k in range(n)], self.var)

    def __add__(self, o: "SeriesMatrix") -> "SeriesMatrix":
        n = min(self.order, o.order)
        return SeriesMatrix([mat_add(self.coeffs[k], o.coeffs[k]) for k in range(n)], self.var)

    def map(self, fn) -> "SeriesMatrix":
        return SeriesMatrix([[[fn(x) for x in row] for row in m] for m in self.coeffs], self.var)

    def conjugate(self, left, right) -> "SeriesMatrix":
        """left * R * right with constant matrices."""
        return SeriesMatrix([mat_mul(mat_mul(left, m), right) for m in self.coeffs], self.var)

    def inverse(self) -> "SeriesMatrix":
        """Inverse of a series with identity constant term."""
        if not is_identity(self.coeffs[0]):
            raise ValueError("inverse implemented for series with R_0 = I")
        inv = [self.coeffs[0]]
        for k in range(1, self.order):
            acc = None
            for a in range(1, k + 1):
                term = mat_mul(self.coeffs[a], inv[k - a])
                acc = term if acc is None else mat_add(acc, term)
            inv.append(mat_scale(acc, -1))
        return SeriesMatrix(inv, self.var)

    def is_zero(self) -> bool:
        return all(x == 0 for m in self.coeffs for row in m for x in row)

    def first_nonzero(self):
        """(n, i, j) of the first nonzero coefficient, or None."""
        for n, m in enumerate(self.coeffs):
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    if not x == 0:
                        return n, i, j
        return None


# small dense-matrix helpers over generic rings ----------------------------


def mat_mul(a, b):
    n, k, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            acc = 0
            for l in range(k):
                x = ai[l]
                if _is_zero(x):
                    continue
                y = b[l][j]
                if _is_zero(y):
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def is_identity(a) -> bool:
    return all((x == 1) if i == j else (x == 0) for i, row in enumerate(a) for j, x in enumerate(row))


def mat_inverse(a):
    """Gauss-Jordan inverse over a field of exact elements."""
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(m[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        inv = Fraction(1, p) if isinstance(p, int) else (1 / p if isinstance(p, Fraction) else p ** -1)
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not _is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
