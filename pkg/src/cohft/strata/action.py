"""Givental-Teleman R-matrix action on cohomological field theories.

Everything happens in the hat frame b_i = Delta_i e_i (e_i the idempotents),
where eta(b_i, b_j) = Delta_i delta_ij, the unit is sum_i b_i / Delta_i and
the trivial theory takes the value Delta_i^{g-1+n} on (b_i, .., b_i). No
square roots of Delta_i ever appear.

Conventions: legs carry R^{-1}(psi), an edge carries
(R^{-1}(psi_1) eta^{-1} R^{-1}(psi_2)^t - eta^{-1}) / (-psi_1 - psi_2),
extra points carry T(psi) = psi (1 - R^{-1}(psi)) 1 and are forgotten with
kappa_a = pi_*(psi^{a+1}). A graph Gamma is weighted by 1/|Aut Gamma|.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from ..algebra.series import SeriesMatrix
from .elements import DecoratedStratum, StrataElement, glue, pushforward_forgotten, vertex_slots
from .graphs import enumerate_stable_graphs


class SymplecticError(ArithmeticError):
    pass


class TrivialCohft:
    """The semisimple TQFT in the hat frame."""

    diagonal = True

    def __init__(self, deltas):
        self.deltas = list(deltas)
        self.dim = len(self.deltas)

    @property
    def unit(self):
        return [_inv(d) for d in self.deltas]

    @property
    def eta_inverse(self):
        return [[_inv(d) if i == j else 0 for j in range(self.dim)] for i, d in enumerate(self.deltas)]

    def scalar(self, g, indices):
        if any(i != indices[0] for i in indices):
            return 0
        return self.deltas[indices[0]] ** (g - 1 + len(indices))

    def value(self, g, indices):
        indices = list(indices)
        if not indices:
            return StrataElement(g, 0, {DecoratedStratum.smooth(g, 0): sum(d ** (g - 1) for d in self.deltas)})
        return StrataElement(g, len(indices), {DecoratedStratum.smooth(g, len(indices)): self.scalar(g, indices)})


class ActedCohft:
    """R.omega as a strata-valued theory, evaluated lazily on basis tuples."""

    diagonal = False

    def __init__(self, omega, r, codim_max):
        self.omega, self.r, self.codim_max = omega, r, codim_max
        self.deltas = omega.deltas
        self.dim = omega.dim
        self.unit = omega.unit
        self.eta_inverse = omega.eta_inverse
        self._memo = {}
        self._data = ActionData(omega, r, codim_max)

    def value(self, g, indices):
        key = (g, tuple(indices))
        if key not in self._memo:
            vecs = [_basis(self.dim, i) for i in indices]
            self._memo[key] = rmatrix_action(self.omega, self.r, g, len(vecs), self.codim_max, vecs, self._data)
        return self._memo[key]


def _inv(d):
    return Fraction(1, d) if isinstance(d, int) else 1 / d


def _basis(dim, i):
    return [1 if k == i else 0 for k in range(dim)]


def _hat(r):
    return r.hat if hasattr(r, "hat") else r


def t_vector(r, unit):
    """Coefficients of T(z) = z (1 - R^{-1}(z)) 1; T_0 = T_1 = 0 since R_0 = I."""
    rinv = _hat(r).inverse()
    dim = len(unit)
    out = [[0] * dim]
    for p in range(rinv.order):
        mat = rinv.coeffs[p]
        applied = [sum((mat[j][k] * unit[k] for k in range(dim)), 0) for j in range(dim)]
        out.append([(unit[j] if p == 0 else 0) - applied[j] for j in range(dim)])
    return out


def edge_bivector(r, eta_inverse):
    """B[p][q] (a dim x dim matrix) with B(w1, w2) = sum B[p][q] w1^p w2^q.

    The numerator R^{-1}(w1) eta^{-1} R^{-1}(w2)^t - eta^{-1} must be divisible
    by w1 + w2, which is the symplectic condition; otherwise SymplecticError.
    Coefficients are returned for p + q <= order - 2.
    """
    rinv = _hat(r).inverse()
    order = rinv.order
    dim = len(eta_inverse)

    def mul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(dim)), 0) for j in range(dim)] for i in range(dim)]

    def tr(a):
        return [[a[j][i] for j in range(dim)] for i in range(dim)]

    def numerator(p, q):
        val = mul(mul(rinv.coeffs[p], eta_inverse), tr(rinv.coeffs[q]))
        if p == 0 and q == 0:
            val = [[val[i][j] - eta_inverse[i][j] for j in range(dim)] for i in range(dim)]
        return val

    zero = [[0] * dim for _ in range(dim)]
    b = {}
    # N(p+1, q) = -(B(p, q) + B(p+1, q-1)), run along each antidiagonal
    for total in range(order - 1):
        for q in range(total + 1):
            p = total - q
            prev = b.get((p + 1, q - 1), zero)
            n_ = numerator(p + 1, q)
            b[(p, q)] = [[-n_[i][j] - prev[i][j] for j in range(dim)] for i in range(dim)]
        # the remaining coefficient N(0, total + 1) = -B(0, total) must agree
        last = numerator(0, total + 1)
        for i in range(dim):
            for j in range(dim):
                if not (last[i][j] + b[(0, total)][i][j]) == 0:
                    raise SymplecticError("symplectic condition violated")
    if not all(x == 0 for row in numerator(0, 0) for x in row):
        raise SymplecticError("symplectic condition violated")
    return b


def _series_terms(coeffs, lo=0):
    return [(p, c) for p, c in enumerate(coeffs) if p >= lo and not c == 0]


class ActionData:
    """The pieces of the graph sum that depend only on R and the frame."""

    def __init__(self, omega, r, codim_max):
        hat = _hat(r)
        if hat.order < codim_max + 2:
            raise ValueError(f"R-matrix needs order >= codim_max + 2 = {codim_max + 2}")
        self.codim_max = codim_max
        self.rinv = hat.inverse()
        tvec = t_vector(hat, omega.unit)
        self.t_series = [[tvec[p][j] if p < len(tvec) else 0 for p in range(codim_max + 2)] for j in range(omega.dim)]
        self.bivector = edge_bivector(hat, omega.eta_inverse)

    def leg_series(self, w):
        dim = len(w)
        return [
            [sum((self.rinv.coeffs[p][j][k] * w[k] for k in range(dim) if not w[k] == 0), 0) for p in range(self.codim_max + 1)]
            for j in range(dim)
        ]


def rmatrix_action(omega, r, g, n, codim_max, inputs=None, data=None):
    """(R.omega)_{g,n}(inputs) up to codimension codim_max, as a StrataElement.

    ``inputs`` are n vectors in hat-frame coordinates. Without inputs a dict
    over all tuples of basis vectors is returned.
    """
    data = data or ActionData(omega, r, codim_max)
    if inputs is None:
        return {idx: rmatrix_action(omega, r, g, n, codim_max, [_basis(omega.dim, i) for i in idx], data)
                for idx in product(range(omega.dim), repeat=n)}
    if len(inputs) != n:
        raise ValueError("one input vector per marking")
    leg_series = [data.leg_series(w) for w in inputs]
    total = StrataElement(g, n)
    for graph in enumerate_stable_graphs(g, n):
        budget = codim_max - len(graph.edges)
        if budget < 0:
            continue
        contribution = _graph_sum(omega, graph, budget, leg_series, data.t_series, data.bivector)
        aut = graph.automorphism_count
        for s, c in contribution.terms.items():
            total.add_term(s, c * Fraction(1, aut))
    return total.truncate(codim_max)


def _graph_sum(omega, graph, budget, leg_series, t_series, bivec):
    nv = graph.num_vertices
    dim = omega.dim
    slots = [vertex_slots(graph, v) for v in range(nv)]
    out = StrataElement(graph.genus, graph.n)
    memo = {}

    # distribute the extra-point budget: each forgotten point costs at least 1
    for ks in product(range(budget + 1), repeat=nv):
        if sum(ks) > budget:
            continue
        kfact = 1
        for k in ks:
            kfact *= factorial(k)
        for assignment in _index_assignments(omega, slots, ks, dim):
            slot_index, t_index = assignment
            factors = []
            for i in range(graph.n):
                j = slot_index[("leg", i)]
                factors.append([(((("leg", i), p),), c) for p, c in _series_terms(leg_series[i][j])])
            for e in range(len(graph.edges)):
                h0, h1 = ("half", (e, 0)), ("half", (e, 1))
                j0, j1 = slot_index[h0], slot_index[h1]
                opts = []
                for (p, q), mat in bivec.items():
                    c = mat[j0][j1]
                    if not c == 0:
                        opts.append((((h0, p), (h1, q)), c))
                factors.append(opts)
            for v in range(nv):
                for a in range(ks[v]):
                    j = t_index[v][a]
                    factors.append([(((("T", v, a), p),), c) for p, c in _series_terms(t_series[j], 2)])
            for choice, coeff, spent in _expand(factors, budget):
                exps = dict(choice)
                pieces = []
                for v in range(nv):
                    key = (
                        v,
                        tuple(slot_index[s] for s in slots[v]) + tuple(t_index[v]),
                        tuple(exps[s] for s in slots[v]) + tuple(exps[("T", v, a)] for a in range(ks[v])),
                    )
                    if key not in memo:
                        memo[key] = _vertex_class(omega, graph.genera[v], len(slots[v]), key[1], key[2])
                    pieces.append(memo[key])
                if any(p.is_zero() for p in pieces):
                    continue
                for combo in product(*[list(p.terms.items()) for p in pieces]):
                    c = coeff
                    for _, x in combo:
                        c = c * x
                    stratum = glue(graph, [s for s, _ in combo])
                    if stratum.codim - len(graph.edges) <= budget:
                        out.add_term(stratum, c * Fraction(1, kfact))
    return out


def _index_assignments(omega, slots, ks, dim):
    """Pairs (index of each slot, indices of the extra points per vertex)."""
    nv = len(slots)
    if omega.diagonal:
        for vidx in product(range(dim), repeat=nv):
            slot_index = {s: vidx[v] for v in range(nv) for s in slots[v]}
            yield slot_index, [[vidx[v]] * ks[v] for v in range(nv)]
        return
    all_slots = [s for v in range(nv) for s in slots[v]]
    nt = sum(ks)
    for idx in product(range(dim), repeat=len(all_slots) + nt):
        slot_index = dict(zip(all_slots, idx))
        rest = list(idx[len(all_slots):])
        t_index = []
        for k in ks:
            t_index.append(rest[:k])
            rest = rest[k:]
        yield slot_index, t_index


def _expand(factors, budget):
    """All choices of one option per factor with total cost <= budget.

    The cost of an option is its psi degree, minus one per extra point
    (which becomes a kappa class of one degree less).
    """
    def cost(option):
        total = 0
        for slot, p in option:
            total += p - 1 if slot[0] == "T" else p
        return total

    def rec(i, acc, coeff, spent):
        if i == len(factors):
            yield acc, coeff, spent
            return
        for option, c in factors[i]:
            s = spent + cost(option)
            if s <= budget:
                yield from rec(i + 1, acc + list(option), coeff * c, s)

    yield from rec(0, [], 1, 0)


def _vertex_class(omega, g, nslots, indices, exps):
    """omega_{g}(indices) times psi powers, with the extra points pushed forward."""
    base = omega.value(g, indices)
    shifted = StrataElement(base.g, base.n)
    for s, c in base.terms.items():
        shifted.add_term(s.with_leg_psi(exps), c)
    return pushforward_forgotten(shifted, len(indices) - nslots)


def inverse_rmatrix(r):
    """The series R^{-1} packaged like r (hat frame, same Delta_i)."""
    from ..rmatrix import RMatrix

    if isinstance(r, RMatrix):
        return RMatrix(r.hat.inverse(), r.roots, r.deltas, r.side, "inverse", r.chart)
    return SeriesMatrix(r.coeffs, r.var).inverse()
