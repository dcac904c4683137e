"""Multivariate polynomials and rational functions over Q.

Both are thin wrappers around python-flint's ``fmpq_mpoly`` in graded
lexicographic order. A rational function is stored as a coprime pair
(numerator, denominator) whose denominator has leading coefficient 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import flint

from .rational import to_fraction

_SCALARS = (int, Fraction)


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = to_fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


class RationalFunctionField:
    """Q(x_1, ..., x_k) for a fixed tuple of variable names."""

    def __init__(self, names):
        self.names = tuple(names)
        if not self.names:
            raise ValueError("at least one variable is required")
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "deglex")
        self._pone = self.ctx.constant(1)
        self._pzero = self.ctx.constant(0)
        self.zero = RationalFunction(self, self._pzero, self._pone, False)
        self.one = RationalFunction(self, self._pone, self._pone, False)

    def __repr__(self):
        return f"QQ({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.names == self.names

    def __hash__(self):
        return hash(("RationalFunctionField", self.names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self) -> tuple:
        return tuple(RationalFunction(self, g, self._pone, False) for g in self.ctx.gens())

    def gen(self, name: str) -> "RationalFunction":
        return self.gens()[self.names.index(name)]

    def constant_poly(self, c):
        return self.ctx.constant(_fmpq(c))

    def __call__(self, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            if x.field is self or x.field == self:
                return x
            raise TypeError(f"element of {x.field} is not in {self}")
        if isinstance(x, Polynomial):
            return RationalFunction(self, x.raw, self._pone, False)
        if isinstance(x, flint.fmpq_mpoly):
            return RationalFunction(self, x, self._pone, False)
        return RationalFunction(self, self.constant_poly(x), self._pone, False)

    def from_dict(self, terms: dict) -> "RationalFunction":
        raw = self.ctx.from_dict({tuple(e): _fmpq(c) for e, c in terms.items()})
        return RationalFunction(self, raw, self._pone, False)

    def monomial(self, exps, coeff=1) -> "RationalFunction":
        return self.from_dict({tuple(exps): coeff})


@lru_cache(maxsize=None)
def field(*names) -> RationalFunctionField:
    """Cached constructor so equal variable tuples share one field object."""
    return RationalFunctionField(names)


class Polynomial:
    """A polynomial in the variables of a RationalFunctionField."""

    __slots__ = ("field", "raw")

    def __init__(self, fld: RationalFunctionField, raw):
        self.field = fld
        self.raw = raw

    @classmethod
    def from_terms(cls, fld, terms: dict) -> "Polynomial":
        return cls(fld, fld.ctx.from_dict({tuple(e): _fmpq(c) for e, c in terms.items()}))

    @property
    def variables(self) -> tuple:
        return self.field.names

    def terms(self) -> dict:
        return {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in self.raw.to_dict().items()}

    def _wrap(self, other):
        if isinstance(other, Polynomial):
            return other.raw
        return self.field.constant_poly(other)

    def __add__(self, o):
        return Polynomial(self.field, self.raw + self._wrap(o))

    __radd__ = __add__

    def __sub__(self, o):
        return Polynomial(self.field, self.raw - self._wrap(o))

    def __rsub__(self, o):
        return Polynomial(self.field, self._wrap(o) - self.raw)

    def __mul__(self, o):
        return Polynomial(self.field, self.raw * self._wrap(o))

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(self.field, -self.raw)

    def __pow__(self, k: int):
        return Polynomial(self.field, self.raw**k)

    def __eq__(self, o):
        if isinstance(o, (Polynomial, *_SCALARS)):
            return self.raw == self._wrap(o)
        return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        return str(self.raw)

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def total_degree(self) -> int:
        return -1 if self.raw.is_zero() else int(self.raw.total_degree())

    def gcd(self, o: "Polynomial") -> "Polynomial":
        return Polynomial(self.field, self.raw.gcd(o.raw))

    def divides(self, o: "Polynomial") -> bool:
        if self.raw.is_zero():
            return o.raw.is_zero()
        _, r = divmod(o.raw, self.raw)
        return r.is_zero()

    def derivative(self, name: str) -> "Polynomial":
        return Polynomial(self.field, self.raw.derivative(name))

    def __call__(self, *values):
        return evaluate_poly(self.raw, values)


def evaluate_poly(raw, values, cache=None):
    """Evaluate a flint polynomial at arbitrary ring elements.

    Uses flint's native evaluation when every value is rational, otherwise
    sums terms with cached powers so values may be series, algebraic
    elements, or rational functions of another field.
    """
    if all(isinstance(v, (int, Fraction, flint.fmpq)) for v in values):
        r = raw(*[_fmpq(v) for v in values])
        return Fraction(int(r.p), int(r.q))
    powers = [{0: 1, 1: v} for v in values] if cache is None else cache

    def power(i, e):
        table = powers[i]
        if e not in table:
            k = max(k for k in table if k <= e)
            acc = table[k]
            for j in range(k + 1, e + 1):
                acc = acc * values[i]
                table[j] = acc
        return table[e]

    total = 0
    for exps, c in raw.terms():
        term = Fraction(int(c.p), int(c.q))
        for i, e in enumerate(exps):
            if e:
                term = power(i, e) * term
        total = total + term
    return total


class RationalFunction:
    """Quotient of two coprime polynomials with a monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, fld: RationalFunctionField, num, den=None, normalize=True):
        self.field = fld
        if den is None:
            den = fld._pone
        if normalize:
            num, den = _normalize(fld, num, den)
        self.num = num
        self.den = den

    # construction helpers -------------------------------------------------
    def _coerce(self, o):
        if isinstance(o, RationalFunction):
            if o.field is not self.field and o.field != self.field:
                raise TypeError(f"mixing {self.field} and {o.field}")
            return o
        if isinstance(o, (int, Fraction, flint.fmpq)):
            return RationalFunction(self.field, self.field.constant_poly(o), self.field._pone, False)
        if isinstance(o, Polynomial):
            return RationalFunction(self.field, o.raw, self.field._pone, False)
        return None

    @property
    def numerator(self) -> Polynomial:
        return Polynomial(self.field, self.num)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial(self.field, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        c = self.num.to_dict().get((0,) * self.field.nvars, 0)
        c = _fmpq(c) if not isinstance(c, flint.fmpq) else c
        return Fraction(int(c.p), int(c.q))

    def __bool__(self):
        return not self.num.is_zero()

    # arithmetic ------------------------------------------------------------
    def __add__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                return self
            return RationalFunction(self.field, self.num + self.den * _fmpq(o), self.den, False)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return _add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, False)

    def __sub__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.__add__(-o)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return _add(self, -o)

    def __rsub__(self, o):
        return (-self).__add__(o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                return self.field.zero
            return RationalFunction(self.field, self.num * _fmpq(o), self.den, False)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.field, self.den, self.num, True)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return RationalFunction(self.field, self.num / _fmpq(o), self.den, False)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return _mul(self, o.inverse())

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return _mul(o, self.inverse())

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.field, self.num**k, self.den**k, False)

    def __eq__(self, o):
        if isinstance(o, RationalFunction):
            return self.num == o.num and self.den == o.den
        if isinstance(o, (int, Fraction)):
            return self.den.is_one() and self.num == self.field.constant_poly(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    # calculus and evaluation --------------------------------------------------
    def derivative(self, name: str) -> "RationalFunction":
        n, d = self.num, self.den
        dn = n.derivative(name)
        if d.is_one():
            return RationalFunction(self.field, dn, d, False)
        dd = d.derivative(name)
        return RationalFunction(self.field, dn * d - n * dd, d * d, True)

    def evaluate(self, values):
        """Substitute ring elements (in variable order) for the variables."""
        if isinstance(values, dict):
            values = [values[nm] for nm in self.field.names]
        values = list(values)
        num = evaluate_poly(self.num, values)
        if self.den.is_one():
            return num
        den = evaluate_poly(self.den, values)
        if isinstance(den, (int, Fraction)) and den == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return num / den

    def substitute(self, target: RationalFunctionField, images) -> "RationalFunction":
        """Ring map sending the i-th variable to images[i] in ``target``."""
        images = [target(x) for x in images]
        if all(x.den.is_one() for x in images):
            polys = [x.num for x in images]
            num = self.num.compose(*polys, ctx=target.ctx)
            den = self.den.compose(*polys, ctx=target.ctx)
            return RationalFunction(target, num, den, True)
        return target(self.evaluate(images))


def _normalize(fld, num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return fld._pzero, fld._pone
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _add(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    fld = x.field
    if x.num.is_zero():
        return y
    if y.num.is_zero():
        return x
    b, d = x.den, y.den
    if b == d:
        num = x.num + y.num
        if b.is_one():
            return RationalFunction(fld, num, b, False)
        return RationalFunction(fld, num, b, True)
    g = b.gcd(d)
    if g.is_one():
        return RationalFunction(fld, x.num * d + y.num * b, b * d, True)
    dg = d / g
    num = x.num * dg + y.num * (b / g)
    return RationalFunction(fld, num, b * dg, True)


def _mul(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    fld = x.field
    a, b, c, d = x.num, x.den, y.num, y.den
    if a.is_zero() or c.is_zero():
        return fld.zero
    if not d.is_one():
        g = a.gcd(d)
        if not g.is_constant():
            a = a / g
            d = d / g
    if not b.is_one():
        g = c.gcd(b)
        if not g.is_constant():
            c = c / g
            b = b / g
    den = b * d
    num = a * c
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return RationalFunction(fld, num, den, False)


def rf_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Reduce num/den to lowest terms with a monic denominator."""
    if num.field != den.field:
        raise TypeError("numerator and denominator live in different rings")
    return RationalFunction(num.field, num.raw, den.raw, True)
