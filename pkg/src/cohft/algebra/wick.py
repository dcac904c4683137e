"""Gaussian expectations of polynomials."""

from __future__ import annotations

from .rational import gaussian_moment


def wick_moment(exponents, covariance):
    """E[prod_k T_k^{a_k}] for a centred Gaussian vector with the given covariance.

    Uses E[T_k T^b] = sum_l cov[k][l] b_l E[T^{b - e_l}], memoised over
    multi-indices. The covariance may be singular and its entries may be
    any exact ring elements.
    """
    return GaussianExpectation(covariance).moment(exponents)


class GaussianExpectation:
    """Cached moment table for one covariance matrix."""

    def __init__(self, covariance):
        self.cov = [list(row) for row in covariance]
        self.n = len(self.cov)
        self._cache = {(0,) * self.n: 1}

    def moment(self, exponents):
        a = tuple(exponents)
        if len(a) != self.n:
            raise ValueError("exponent vector does not match covariance size")
        if sum(a) % 2:
            return 0
        return self._moment(a)

    def _moment(self, a):
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        k = next(i for i, x in enumerate(a) if x)
        b = list(a)
        b[k] -= 1
        total = 0
        for l in range(self.n):
            if b[l] == 0:
                continue
            s = self.cov[k][l]
            if s == 0:
                continue
            c = list(b)
            c[l] -= 1
            total = total + s * b[l] * self._moment(tuple(c))
        self._cache[a] = total
        return total

    def expect(self, poly_terms):
        """E[p(T)] for p given as {exponent tuple: coefficient}."""
        total = 0
        for e, c in poly_terms.items():
            m = self.moment(e)
            if not m == 0:
                total = total + c * m
        return total


def standard_expectation(terms):
    """E[p(x)] for one standard normal x; ``terms`` maps degree to coefficient."""
    total = 0
    for k, c in terms.items():
        m = gaussian_moment(k)
        if m:
            total = total + c * m
    return total
