"""The verification suite: every named check returns a list of Reports."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from .algebra.series import SeriesMatrix
from .comparison import bernoulli_limit_check, intermediate_r, notpol_check, obstruction_m2, phi_check, thm1_check
from .frobenius import AmModel, PmModel
from .oscillating import fz_series, mumford_r_entry, rmatrix_from_saddles_a, rmatrix_from_saddles_pm
from .qde import (
    first_failure,
    residual_is_zero,
    solve_r_a,
    solve_r_kprime,
    solve_r_pm,
    verify_homogeneity,
    verify_symplectic,
)
from .report import Report, timed
from .strata import ActedCohft, TrivialCohft, edge_bivector, enumerate_stable_graphs, inverse_rmatrix, rmatrix_action, spin_theory, t_vector
from .strata.graphs import brute_force_graphs
from .strata.relations import extract_relations

# f'_t splits over Q at these root vectors (roots sum to zero)
M2_POINTS = ([-2, -1, 3], [-3, 1, 2], [-5, 1, 4])
M3_POINT = [-3, -1, 1, 3]
PM_WEIGHTS = {1: [0, 1], 2: [0, 1, 3]}


def fz_check(max_i=8):
    """m = 1 hat entries against the Faber-Zagier series in -z/(72 Delta_k^3), both constructions."""
    z_order = max_i + 1
    model = AmModel(1)
    fz = fz_series(z_order)
    out = []
    for name, build in (("qde", solve_r_a), ("saddle", rmatrix_from_saddles_a)):
        rep = Report("fz", {"construction": name, "maxI": max_i})
        with timed(rep):
            r = build(model, z_order)
            for n in range(z_order):
                for i in range(2):
                    for k in range(2):
                        ab = fz.a[n] + fz.b[n] if i == k else fz.a[n] - fz.b[n]
                        expected = Fraction(ab, 2) * (Fraction(-1, 72) / r.deltas[k] ** 3) ** n
                        if not (r.hat.coeffs[n][i][k] - expected) == 0:
                            rep.fail("entry differs from the closed form", zPower=n, row=i, col=k)
        out.append(rep)
    return out


def random_split_point(m, rng):
    """m+1 distinct integer roots summing to zero."""
    while True:
        roots = [rng.randint(-9, 9) for _ in range(m)]
        roots.append(-sum(roots))
        if len(set(roots)) == m + 1:
            return sorted(roots)


def saddle_check(z_order=6, seed=None):
    """QDE solution equals the stationary-phase construction.

    A seed adds one random specialization of the m = 2 model.
    """
    points = list(M2_POINTS)
    if seed is not None:
        points.append(random_split_point(2, random.Random(seed)))
    models = [AmModel(1), AmModel(2)] + [AmModel.from_roots(p) for p in points]
    out = []
    for model in models:
        rep = Report("saddle", {"model": repr(model), "zOrder": z_order})
        with timed(rep):
            diff = solve_r_a(model, z_order).hat - rmatrix_from_saddles_a(model, z_order).hat
            cell = diff.first_nonzero()
            if cell is not None:
                rep.fail("QDE and saddle R-matrices differ", zPower=cell[0], row=cell[1], col=cell[2])
        out.append(rep)
    return out


def _solver_outputs(z_order):
    yield "A qde m=1", solve_r_a(AmModel(1), z_order), True
    yield "A qde m=2", solve_r_a(AmModel(2), z_order), True
    yield "A qde m=3", solve_r_a(AmModel(3), z_order), True
    yield "A saddle m=2", rmatrix_from_saddles_a(AmModel(2), z_order), True
    yield "A saddle m=3 specialized", rmatrix_from_saddles_a(AmModel.from_roots(M3_POINT), z_order), False
    yield "lambda chart m=1", solve_r_kprime(1, z_order), True
    yield "lambda chart m=2", solve_r_kprime(2, z_order), True
    for m in (1, 2):
        yield f"P qde m={m}", solve_r_pm(PmModel(m, q_order=3), z_order), True
    yield "P saddle m=1", rmatrix_from_saddles_pm(PmModel(1, q_order=3), z_order), True
    yield "P saddle m=2 specialized", rmatrix_from_saddles_pm(PmModel(2, PM_WEIGHTS[2], q_order=3), z_order), False


def symplectic_check(z_order=6):
    """R(z) R^t(-z) = 1 and homogeneity for every construction (homogeneity needs symbolic data)."""
    out = []
    for name, r, symbolic in _solver_outputs(z_order):
        rep = Report("symplectic", {"solver": name, "zOrder": z_order})
        with timed(rep):
            res = verify_symplectic(r)
            if not residual_is_zero(res):
                rep.fail("symplectic residual", **first_failure(res))
            if symbolic:
                res = verify_homogeneity(r)
                if not residual_is_zero(res):
                    rep.fail("homogeneity residual", **first_failure(res))
            rep.details["homogeneityChecked"] = symbolic
        out.append(rep)
    return out


def bernoulli_check(z_order=5):
    return [bernoulli_limit_check(m, z_order) for m in (1, 2)]


def thm1_suite(z_order=4, q_order=4, ms=(1, 2)):
    return [thm1_check(m, z_order, q_order) for m in ms]


def thm2_suite(z_order=3, t_order=6, ms=(1, 2)):
    out = []
    for m in ms:
        out.append(phi_check(m, 8))
        out.append(intermediate_r(m, z_order, t_order)[1])
    return out


def obstruction_check():
    return [obstruction_m2()]


def notpol_suite(z_order=6):
    return [notpol_check(m, z_order) for m in (1, 2, 3)]


def strata_suite():
    """Graph counts, T = O(z^2), bivector divisibility, equivariance, TQFT limit, inverse action, relations."""
    out = []

    rep = Report("strata-graphs", {"cases": "g + n <= 4 and (0,5)"})
    with timed(rep):
        counts = {}
        for g, n in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)]:
            mine = enumerate_stable_graphs(g, n)
            oracle = brute_force_graphs(g, n)
            counts[f"{g},{n}"] = len(mine)
            rep.require(len(mine) == len(oracle), "count differs from brute force", g=g, n=n)
            rep.require(
                sorted(x.automorphism_count for x in mine) == sorted(a for _, a in oracle),
                "automorphism counts differ from brute force",
                g=g,
                n=n,
            )
        expected = {"0,4": 4, "1,1": 2, "2,0": 7}
        for key, val in expected.items():
            rep.require(counts[key] == val, "graph count", case=key, got=counts[key], expected=val)
        rep.details["counts"] = counts
    out.append(rep)

    theories = []
    for m in (1, 2):
        r = solve_r_a(AmModel(m), 4)
        theories.append((f"A_{m + 1}", r, TrivialCohft(r.deltas)))
    hodge = mumford_r_entry(Fraction(1, 1), 4)
    theories.append(("hodge", SeriesMatrix([[[hodge[k]]] for k in range(4)]), TrivialCohft([1])))
    pm = solve_r_pm(PmModel(1, PM_WEIGHTS[1], q_order=3), 4)
    pm_omega = TrivialCohft(pm.deltas)

    rep = Report("strata-t-vector-bivector", {"theories": [t for t, _, _ in theories] + ["P^1"]})
    with timed(rep):
        for name, r, om in theories + [("P^1", pm, pm_omega)]:
            tv = t_vector(r, om.unit)
            rep.require(all(x == 0 for x in tv[0] + tv[1]), "T(z) is not O(z^2)", theory=name)
            try:
                edge_bivector(r, om.eta_inverse)
            except ArithmeticError as exc:
                rep.fail(str(exc), theory=name)
    out.append(rep)

    name, r, om = theories[0]
    rep = Report("strata-equivariance-tqft", {"theory": name, "cases": "(0,4) and (1,2), codim 2"})
    with timed(rep):
        for g, n in [(0, 4), (1, 2)]:
            full = rmatrix_action(om, r, g, n, 2)
            for idx, elem in full.items():
                deg0 = elem.codim_part(0)
                want = om.value(g, idx)
                rep.require(deg0 == want, "degree-0 part is not the TQFT", g=g, n=n, inputs=idx)
                for sigma in permutations(range(n)):
                    moved = tuple(idx[sigma.index(i)] for i in range(n))
                    rep.require(
                        full[moved] == elem.permute_markings(sigma),
                        "not S_n-equivariant",
                        g=g,
                        n=n,
                        inputs=idx,
                        sigma=sigma,
                    )
    out.append(rep)

    rep = Report("strata-inverse-action", {"theory": name, "cases": "(0,4) and (1,1), codim 2"})
    with timed(rep):
        acted = ActedCohft(om, r, 2)
        back = inverse_rmatrix(r)
        for g, n in [(1, 1), (0, 4)]:
            for idx, elem in rmatrix_action(acted, back, g, n, 2).items():
                rep.require(elem == om.value(g, idx), "R^{-1} R omega differs from omega", g=g, n=n, inputs=idx)
    out.append(rep)

    rep = Report("strata-3spin-relations", {"g": 1, "n": 1, "codim": 1, "relabel": "(1,2) inputs (0,1) vs (1,0)"})
    with timed(rep):
        theory = spin_theory(1, 1)
        found = []
        for a in [(0,), (1,)]:
            found += extract_relations(theory.reconstruct(1, 1, a).codim_part(1), theory.disc, a)
        rep.require(any(v.coefficients for v in found), "no relation at (1,1) codim 1")
        rep.details["relations"] = [v.to_json() for v in found]
        e01 = theory.reconstruct(1, 2, (0, 1)).codim_part(1)
        e10 = theory.reconstruct(1, 2, (1, 0)).codim_part(1)
        rel01 = {v.label: v.coefficients for v in extract_relations(e01.permute_markings((1, 0)), theory.disc)}
        rel10 = {v.label: v.coefficients for v in extract_relations(e10, theory.disc)}
        rep.require(bool(rel10), "no relation at (1,2) codim 1")
        rep.require(rel01 == rel10, "relations not consistent under relabeling")
    out.append(rep)
    return out


CHECKS = {
    "fz": fz_check,
    "saddle": saddle_check,
    "symplectic": symplectic_check,
    "bernoulli": bernoulli_check,
    "thm1": thm1_suite,
    "thm2": thm2_suite,
    "obstruction": obstruction_check,
    "notpol": notpol_suite,
    "strata": strata_suite,
}
