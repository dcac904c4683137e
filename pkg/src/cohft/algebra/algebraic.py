"""Simple algebraic extensions K[x]/(p(x)) over an exact base field K.

The base can itself be an extension, so towers such as Q(t)(sqrt(D_0))(sqrt(D_1))
are built by nesting. Elements are coordinate vectors in the power basis.
"""

from __future__ import annotations

from fractions import Fraction


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c ** -1


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Univariate division with remainder over a field; lists low-to-high."""
    a = list(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = _inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c == 0:
            continue
        c = c * inv_lead
        q[i] = c
        for j, bj in enumerate(b):
            if not bj == 0:
                a[i + j] = a[i + j] - c * bj
    return q, _trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = out[i + j] + x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


class AlgebraicElement:
    """An element of K[x]/(modulus(x)), modulus monic of degree d.

    ``modulus`` lists the coefficients c_0..c_{d-1} of x^d + c_{d-1} x^{d-1} + ...;
    ``coords`` has length d. Two elements can be combined only if they share
    the same modulus object (same extension).
    """

    __slots__ = ("coords", "modulus", "name")

    def __init__(self, coords, modulus, name: str = "x"):
        self.modulus = tuple(modulus)
        d = len(self.modulus)
        coords = list(coords)
        if len(coords) > d:
            coords = _reduce(coords, self.modulus)
        self.coords = coords + [0] * (d - len(coords))
        self.name = name

    @classmethod
    def generator(cls, modulus, name="x"):
        d = len(modulus)
        if d == 1:
            return cls([-modulus[0]], modulus, name)
        return cls([0, 1], modulus, name)

    @classmethod
    def sqrt_of(cls, value, name="s"):
        """The formal square root of ``value``: generator of K[s]/(s^2 - value)."""
        return cls([0, 1], (-value, 0), name)

    @property
    def degree(self) -> int:
        return len(self.modulus)

    def _lift(self, o):
        if isinstance(o, AlgebraicElement) and o.modulus == self.modulus and o.name == self.name:
            return o
        return AlgebraicElement([o], self.modulus, self.name)

    def __add__(self, o):
        o = self._lift(o)
        return AlgebraicElement([a + b for a, b in zip(self.coords, o.coords)], self.modulus, self.name)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement([-a for a in self.coords], self.modulus, self.name)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, AlgebraicElement) or o.modulus != self.modulus or o.name != self.name:
            if o == 0:
                return AlgebraicElement([], self.modulus, self.name)
            return AlgebraicElement([a * o for a in self.coords], self.modulus, self.name)
        prod = _poly_mul(self.coords, o.coords)
        return AlgebraicElement(_reduce(prod, self.modulus), self.modulus, self.name)

    def __rmul__(self, o):
        return self.__mul__(o)

    def inverse(self) -> "AlgebraicElement":
        """Inverse by the extended Euclidean algorithm against the modulus."""
        mod = list(self.modulus) + [1]
        r0, r1 = mod, _trim(self.coords)
        if not r1:
            raise ZeroDivisionError("inverse of zero algebraic element")
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError("element is a zero divisor in this extension")
        c = _inv(r1[0])
        return AlgebraicElement(_reduce([x * c for x in s1], self.modulus), self.modulus, self.name)

    def __truediv__(self, o):
        if isinstance(o, AlgebraicElement) and o.modulus == self.modulus and o.name == self.name:
            return self * o.inverse()
        return self * _inv(o)

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._lift(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, AlgebraicElement):
            if o.modulus != self.modulus or o.name != self.name:
                return False
            return all(a - b == 0 for a, b in zip(self.coords, o.coords))
        return all((c - o == 0) if i == 0 else (c == 0) for i, c in enumerate(self.coords))

    __hash__ = None

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            parts.append(f"({c})" + ("" if i == 0 else f"*{self.name}" + (f"^{i}" if i > 1 else "")))
        return " + ".join(parts) or "0"

    def in_base(self):
        """The base-field value if this element has no x-component, else raise."""
        if any(not c == 0 for c in self.coords[1:]):
            raise ValueError("element does not lie in the base field")
        return self.coords[0]

    def trace(self):
        """Sum of the images under all embeddings (sum over conjugate roots)."""
        return sum((c * power_sum_over_roots(list(self.modulus) + [1], k) for k, c in enumerate(self.coords)), 0)

    def map_coeffs(self, fn) -> "AlgebraicElement":
        return AlgebraicElement([fn(c) for c in self.coords], tuple(fn(c) for c in self.modulus), self.name)


def _reduce(coeffs, modulus):
    """Reduce a coefficient list modulo the monic polynomial x^d + sum c_i x^i."""
    d = len(modulus)
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        for j, mj in enumerate(modulus):
            if not mj == 0:
                coeffs[i - d + j] = coeffs[i - d + j] - c * mj
        coeffs[i] = 0
    return coeffs[:d]


def power_sum_over_roots(p, k: int):
    """sum_i Q_i^k over the roots of the monic polynomial p (coefficients low-to-high).

    Newton's identities; negative k uses the reversed polynomial and needs
    a nonzero constant term.
    """
    p = list(p)
    d = len(p) - 1
    if d < 1 or p[-1] != 1:
        raise ValueError("power sums need a monic polynomial of positive degree")
    if k == 0:
        return d
    if k < 0:
        c0 = p[0]
        if c0 == 0:
            raise ZeroDivisionError("negative power sum with a zero root")
        inv = _inv(c0)
        rev = [c * inv for c in reversed(p)]
        return power_sum_over_roots(rev, -k)
    a = p[:-1]  # a[j] is the coefficient of x^j
    sums = [d]
    for n in range(1, k + 1):
        acc = 0
        for j in range(1, min(n - 1, d) + 1):
            coef = a[d - j]
            if not coef == 0:
                acc = acc + coef * sums[n - j]
        if n <= d:
            acc = acc + a[d - n] * n
        sums.append(-acc)
    return sums[k]


def cyclotomic_modulus(n: int):
    """Coefficients c_0..c_{d-1} of the monic n-th cyclotomic polynomial."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for k in range(1, n):
        if n % k == 0:
            poly, r = _poly_divmod(poly, list(cyclotomic_modulus(k)) + [1])
            if r:
                raise ArithmeticError("cyclotomic division not exact")
    return tuple(poly[:-1])


def root_of_unity(n: int) -> "AlgebraicElement | Fraction":
    """A primitive n-th root of unity as an element of Q(zeta_n)."""
    if n == 1:
        return Fraction(1)
    if n == 2:
        return Fraction(-1)
    return AlgebraicElement.generator(cyclotomic_modulus(n), name=f"zeta{n}")
