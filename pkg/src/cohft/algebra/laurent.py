"""Sparse multivariate Laurent polynomials with arbitrary exact coefficients."""

from __future__ import annotations

from fractions import Fraction


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c ** -1


class LaurentPolynomial:
    """sum c_e x^e over integer exponent tuples e (negative entries allowed).

    Also used as a plain polynomial container for bookkeeping variables in
    the Gaussian expansions.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms=None, nvars: int = 1):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not c == 0:
                    self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, c, nvars: int):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps, c=1):
        return cls({tuple(exps): c}, len(exps))

    def copy(self):
        return LaurentPolynomial(dict(self.terms), self.nvars)

    def _lift(self, o):
        if isinstance(o, LaurentPolynomial):
            return o
        return LaurentPolynomial.constant(o, self.nvars)

    def __add__(self, o):
        o = self._lift(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        r = LaurentPolynomial(None, self.nvars)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPolynomial(None, self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, LaurentPolynomial):
            if o == 0:
                return LaurentPolynomial(None, self.nvars)
            r = LaurentPolynomial(None, self.nvars)
            r.terms = {e: c * o for e, c in self.terms.items()}
            return r
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPolynomial(out, self.nvars)

    def __rmul__(self, o):
        return self.__mul__(o)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse_monomial() ** (-k)
        result = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse_monomial(self) -> "LaurentPolynomial":
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are invertible in a Laurent polynomial ring")
        (e, c), = self.terms.items()
        return LaurentPolynomial({tuple(-x for x in e): _inv(c)}, self.nvars)

    def __truediv__(self, o):
        if isinstance(o, LaurentPolynomial):
            return self * o.inverse_monomial()
        return self * _inv(o)

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse_monomial()

    def __eq__(self, o):
        o = self._lift(o)
        diff = self - o
        return diff.is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*x^{e}" for e, c in sorted(self.terms.items()))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def min_exponent(self, var: int):
        return min((e[var] for e in self.terms), default=None)

    def max_exponent(self, var: int):
        return max((e[var] for e in self.terms), default=None)

    def truncate(self, var: int, bound: int) -> "LaurentPolynomial":
        """Drop terms whose exponent in ``var`` is >= bound."""
        return LaurentPolynomial({e: c for e, c in self.terms.items() if e[var] < bound}, self.nvars)

    def map_coeffs(self, fn) -> "LaurentPolynomial":
        return LaurentPolynomial({e: fn(c) for e, c in self.terms.items()}, self.nvars)

    def derivative_log(self, var: int) -> "LaurentPolynomial":
        """x_var * d/dx_var."""
        return LaurentPolynomial({e: c * e[var] for e, c in self.terms.items()}, self.nvars)
