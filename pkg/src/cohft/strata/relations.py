"""Tautological relations from the A_{m+1} theory.

The theory at a generic point is R.omega with R the A-side QDE solution
and omega the trivial theory, both written over the splitting chart. With
flat inputs X^{a_i} the coefficients are root-symmetric, hence rational
functions of t^1..t^m whose denominators are powers of disc. Their polar
parts (the class modulo Q[t]) must vanish in cohomology, so every basis
element of the polar part gives a Q-linear relation between strata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..charts import SplittingChart
from ..frobenius import AmModel
from ..qde import solve_r_a
from ..rmatrix import change_of_basis
from .action import ActionData, TrivialCohft, rmatrix_action
from .elements import StrataElement


class UnexpectedDenominator(ArithmeticError):
    pass


@dataclass
class RelationVector:
    """One Q-linear relation: the coefficient of a polar basis element, per stratum."""

    label: str
    inputs: tuple
    coefficients: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "label": self.label,
            "inputs": list(self.inputs),
            "coefficients": {k: str(v) for k, v in sorted(self.coefficients.items())},
        }


class SpinTheory:
    """The A_{m+1} theory (r = m + 2) over Q(Q_0..Q_{m-1}) with t-coordinate readout."""

    def __init__(self, m, codim_max):
        self.m = m
        self.r = m + 2
        self.codim_max = codim_max
        self.chart = SplittingChart(m)
        self.rmatrix = solve_r_a(AmModel(m), codim_max + 2)
        self.omega = TrivialCohft(self.rmatrix.deltas)
        self.data = ActionData(self.omega, self.rmatrix, codim_max)
        _, minv = change_of_basis(self.rmatrix.roots, self.rmatrix.deltas)
        # X^a = sum_i (Q_i^a / Delta_i) b_i
        self.flat_vectors = [[minv[i][a] for i in range(m + 1)] for a in range(m + 1)]
        self.t_field = self.chart.t_field
        self.disc = self.chart.symmetric_to_t(self.chart.disc)

    def reconstruct(self, g, n, a):
        """R.omega_{g,n}(X^{a_1}, .., X^{a_n}) with coefficients in Q(t)."""
        if len(a) != n or any(not 0 <= x <= self.m for x in a):
            raise ValueError(f"inputs must be n = {n} indices in 0..{self.m}")
        vecs = [self.flat_vectors[x] for x in a]
        elem = rmatrix_action(self.omega, self.rmatrix, g, n, self.codim_max, vecs, self.data)
        return elem.map_coefficients(self.chart.symmetric_to_t)


@lru_cache(maxsize=8)
def spin_theory(m, codim_max):
    return SpinTheory(m, codim_max)


# polar parts ----------------------------------------------------------------------


def _divmod_first_variable(num, disc):
    """num = q * disc + r with deg_{t1} r < deg_{t1} disc.

    The top t1-coefficient of disc is a nonzero constant, so no
    denominators appear.
    """
    ctx = disc.context()
    dterms = disc.to_dict()
    d = max(e[0] for e in dterms)
    lead = [(e, c) for e, c in dterms.items() if e[0] == d]
    if len(lead) != 1 or any(lead[0][0][1:]):
        raise ArithmeticError("disc has a non-constant leading t1-coefficient")
    lc = lead[0][1]
    q = ctx.constant(0)
    r = num
    while True:
        top = [(e, c) for e, c in r.to_dict().items() if e[0] >= d]
        if not top:
            return q, r
        e, c = max(top)
        shift = ctx.from_dict({(e[0] - d,) + tuple(e[1:]): c / lc})
        q = q + shift
        r = r - shift * disc


def disc_adic(x, disc):
    """Split x = sum_j r_j / disc^j + polynomial, j >= 1, deg_{t1} r_j < deg_{t1} disc.

    Returns ({j: r_j}, polynomial part) as raw flint polynomials. A
    denominator that does not divide a power of disc raises
    UnexpectedDenominator.
    """
    dpoly = disc.num
    if not disc.den.is_one():
        raise ValueError("disc must be a polynomial")
    den = x.den
    k = 0
    power = dpoly.context().constant(1)
    while True:
        quo, rem = divmod(power, den)
        if rem.is_zero():
            break
        k += 1
        power = power * dpoly
        if k > 64:
            raise UnexpectedDenominator(f"unexpected denominator {den}")
    num = x.num * quo
    parts = {}
    for j in range(k, 0, -1):
        num, rest = _divmod_first_variable(num, dpoly)
        if not rest.is_zero():
            parts[j] = rest
    return parts, num


def polar_part(x, disc):
    """The class of x in B / A, as an element of the same field."""
    parts, _ = disc_adic(x, disc)
    fld = x.field
    total = fld.zero
    for j, r in parts.items():
        total = total + fld(r) / disc**j
    return total


def polar_coordinates(x, disc):
    """Coordinates of the polar part in the basis t^alpha / disc^j."""
    parts, _ = disc_adic(x, disc)
    names = x.field.names
    out = {}
    for j, r in parts.items():
        for e, c in r.to_dict().items():
            mono = "*".join(f"{nm}^{k}" for nm, k in zip(names, e) if k) or "1"
            out[f"{mono}/disc^{j}"] = Fraction(int(c.p), int(c.q))
    return out


def extract_relations(element: StrataElement, disc, inputs=()):
    """Relation vectors from the polar parts of the coefficients of element."""
    by_label = {}
    for stratum, coeff in element.sorted_terms():
        sid = stratum.stratum_id()
        for label, value in polar_coordinates(coeff, disc).items():
            by_label.setdefault(label, {})[sid] = value
    return [RelationVector(label, tuple(inputs), vec) for label, vec in sorted(by_label.items())]


def polar_element(element: StrataElement, disc):
    return element.map_coefficients(lambda c: polar_part(c, disc))


def relations(m, g, n, codim, a=None):
    """Relation vectors of codimension exactly ``codim`` for the inputs a (default all zero)."""
    theory = spin_theory(m, codim)
    a = tuple(a) if a is not None else (0,) * n
    elem = theory.reconstruct(g, n, a).codim_part(codim)
    return extract_relations(elem, theory.disc, a)


# degree vanishing -----------------------------------------------------------------


def witten_degree(r, g, a):
    """((r - 2)(g - 1) + sum a_i) / r, the degree of the r-spin class."""
    return Fraction((r - 2) * (g - 1) + sum(a), r)


def degree_vanishing_relations(m, g, n, a, codim_max):
    """Components of the reconstructed class in codimension > D.

    The shifted class has components in degrees 0..D only, also when D is
    fractional, so the components beyond D are relations. Their
    coefficients have negative weight r(D - d) and are pure polar parts.
    """
    deg = witten_degree(m + 2, g, a)
    elem = spin_theory(m, codim_max).reconstruct(g, n, tuple(a))
    return StrataElement(g, n, {s: c for s, c in elem.terms.items() if s.codim > deg})


def t_weight(x, m):
    """Weighted degree of a homogeneous element of Q(t), t^mu of weight m + 2 - mu; None if inhomogeneous."""
    weights = [m + 2 - mu for mu in range(1, m + 1)]

    def poly_weights(p):
        return {sum(w * int(k) for w, k in zip(weights, e)) for e in p.to_dict()}

    num, den = poly_weights(x.num), poly_weights(x.den)
    if len(num) != 1 or len(den) != 1:
        return None
    return num.pop() - den.pop()


__all__ = [
    "RelationVector",
    "SpinTheory",
    "UnexpectedDenominator",
    "degree_vanishing_relations",
    "disc_adic",
    "extract_relations",
    "polar_coordinates",
    "polar_element",
    "polar_part",
    "relations",
    "spin_theory",
    "t_weight",
    "witten_degree",
]
