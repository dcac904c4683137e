from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohft.algebra.series import SeriesMatrix
from cohft.frobenius import AmModel
from cohft.oscillating import mumford_r_entry
from cohft.qde import solve_r_a
from cohft.rmatrix import RMatrix
from cohft.strata import (
    ActedCohft,
    DecoratedStratum,
    StrataElement,
    SymplecticError,
    TrivialCohft,
    UnexpectedDenominator,
    degree_vanishing_relations,
    edge_bivector,
    enumerate_stable_graphs,
    inverse_rmatrix,
    polar_part,
    pushforward_forgotten,
    relations,
    rmatrix_action,
    spin_theory,
    t_vector,
    witten_degree,
)
from cohft.strata.graphs import StableGraph, brute_force_graphs
from cohft.strata.relations import t_weight

# counts frozen from brute_force_graphs; (3,0) from the enumerator alone
GRAPH_COUNTS = {(0, 3): 1, (0, 4): 4, (0, 5): 26, (1, 1): 2, (1, 2): 5, (1, 3): 23, (2, 0): 7, (2, 1): 16, (3, 0): 42}


def hodge_r(t=Fraction(1), order=4):
    h = mumford_r_entry(t, order)
    return SeriesMatrix([[[h[k]]] for k in range(order)])


@pytest.fixture(scope="module")
def a2():
    r = solve_r_a(AmModel(1), 4)
    return r, TrivialCohft(r.deltas)


# stable graphs --------------------------------------------------------------------


@pytest.mark.parametrize("gn", sorted(GRAPH_COUNTS))
def test_graph_counts(gn):
    assert len(enumerate_stable_graphs(*gn)) == GRAPH_COUNTS[gn]


@pytest.mark.parametrize("gn", [(0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)])
def test_graphs_match_brute_force(gn):
    mine = enumerate_stable_graphs(*gn)
    oracle = brute_force_graphs(*gn)
    assert len(mine) == len(oracle)
    assert sorted(x.automorphism_count for x in mine) == sorted(a for _, a in oracle)
    assert len({x.canonical for x in mine}) == len(mine)


def test_known_automorphisms():
    loop = StableGraph((0,), (0,), ((0, 0),))
    assert loop.automorphism_count == 2
    banana = StableGraph((0, 0), (), ((0, 1), (0, 1), (0, 1)))
    assert banana.automorphism_count == 12


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_canonical_is_relabel_invariant(data):
    gn = data.draw(st.sampled_from([(0, 5), (1, 3), (2, 1), (3, 0)]))
    graph = data.draw(st.sampled_from(enumerate_stable_graphs(*gn)))
    perm = data.draw(st.permutations(range(graph.num_vertices)))
    moved = graph.relabel(perm)
    assert moved.canonical == graph.canonical
    assert moved.automorphism_count == graph.automorphism_count


def test_unstable_input_rejected():
    with pytest.raises(ValueError):
        enumerate_stable_graphs(0, 2)


# forgetting points ----------------------------------------------------------------


def smooth(g, n, psi=None, kappa=()):
    return StrataElement(g, n, {DecoratedStratum.smooth(g, n, psi, kappa): 1})


def cycle_formula(g, n, extra):
    """pi_* prod psi_{n+i}^{a_i + 1} = sum over sigma in S_k of prod over cycles kappa_{sum of a in the cycle}."""
    out = StrataElement(g, n)
    k = len(extra)
    for sigma in permutations(range(k)):
        seen, kappa = set(), []
        for start in range(k):
            if start in seen:
                continue
            total, i = 0, start
            while i not in seen:
                seen.add(i)
                total += extra[i]
                i = sigma[i]
            kappa.append(total)
        out.add_term(DecoratedStratum.smooth(g, n, None, kappa), 1)
    return out


def test_pushforward_examples():
    assert pushforward_forgotten(smooth(1, 2, (0, 2)), 1) == smooth(1, 1, None, (1,))
    assert pushforward_forgotten(smooth(2, 2, (0, 3)), 1) == smooth(2, 1, None, (2,))
    want = smooth(2, 1, None, (1, 1)) + smooth(2, 1, None, (2,))
    assert pushforward_forgotten(smooth(2, 3, (0, 2, 2)), 2) == want


@pytest.mark.parametrize("g,n,extra", [(2, 0, (1, 1)), (2, 0, (1, 2)), (3, 0, (1, 1, 1)), (3, 1, (2, 1)), (2, 1, (1, 1, 1))])
def test_pushforward_matches_cycle_formula(g, n, extra):
    psi = (0,) * n + tuple(a + 1 for a in extra)
    assert pushforward_forgotten(smooth(g, n + len(extra), psi), len(extra)) == cycle_formula(g, n, extra)


def test_pushforward_needs_psi_squared():
    with pytest.raises(ValueError):
        pushforward_forgotten(smooth(1, 2, (0, 1)), 1)


# T vector and edge bivector -------------------------------------------------------


def test_t_vector_identity_and_hodge():
    assert all(x == 0 for row in t_vector(SeriesMatrix.identity(2, 4), [1, 1]) for x in row)
    t = Fraction(3)
    tv = t_vector(hodge_r(t), [1])
    assert tv[0] == [0] and tv[1] == [0]
    assert tv[2] == [t / 12]


def test_t_vector_starts_at_z_squared(a2):
    r, om = a2
    tv = t_vector(r, om.unit)
    assert all(x == 0 for x in tv[0] + tv[1])
    assert any(x != 0 for x in tv[2])


def test_edge_bivector_identity_and_hodge():
    b = edge_bivector(SeriesMatrix.identity(2, 4), [[1, 0], [0, 1]])
    assert all(x == 0 for mat in b.values() for row in mat for x in row)
    t = Fraction(2)
    assert edge_bivector(hodge_r(t), [[1]])[(0, 0)] == [[t / 12]]


def test_edge_bivector_rejects_non_symplectic(a2):
    r, om = a2
    mats = [[list(row) for row in mat] for mat in r.hat.coeffs]
    mats[1][0][1] = -mats[1][0][1]
    bad = RMatrix(SeriesMatrix(mats), r.roots, r.deltas, r.side, "corrupted", r.chart)
    with pytest.raises(SymplecticError, match="symplectic condition violated"):
        edge_bivector(bad, om.eta_inverse)


# the action -----------------------------------------------------------------------


def test_identity_gives_tqft(a2):
    _, om = a2
    for idx, elem in rmatrix_action(om, SeriesMatrix.identity(2, 4), 1, 1, 2).items():
        assert elem == om.value(1, idx)


def test_hodge_genus_one():
    t = Fraction(1)
    got = rmatrix_action(TrivialCohft([1]), hodge_r(t), 1, 1, 1, [[1]])
    want = StrataElement(
        1,
        1,
        {
            DecoratedStratum.smooth(1, 1): 1,
            DecoratedStratum.smooth(1, 1, None, (1,)): t / 12,
            DecoratedStratum.smooth(1, 1, (1,)): -t / 12,
            DecoratedStratum((0,), (0,), (0,), ((0, 0, 0, 0),), ((),)): t / 24,
        },
    )
    assert got == want


def test_equivariance_and_degree_zero(a2):
    r, om = a2
    full = rmatrix_action(om, r, 0, 4, 1)
    for idx, elem in full.items():
        assert elem.codim_part(0) == om.value(0, idx)
        for sigma in [(1, 0, 2, 3), (3, 2, 1, 0), (1, 2, 3, 0)]:
            moved = tuple(idx[sigma.index(i)] for i in range(4))
            assert full[moved] == elem.permute_markings(sigma)


@pytest.mark.parametrize("gn", [(1, 1), (0, 4)])
def test_inverse_action_recovers_tqft(a2, gn):
    r, om = a2
    acted = ActedCohft(om, r, 2)
    for idx, elem in rmatrix_action(acted, inverse_rmatrix(r), *gn, 2).items():
        assert elem == om.value(gn[0], idx)


# relations ------------------------------------------------------------------------

# integrals of the top-degree strata used below
TOP_INTEGRALS = {
    "g1|L0^1|E|K": Fraction(1, 24),
    "g1|L0^0|E|K1": Fraction(1, 24),
    "g0|L0^0|E0^0-0^0|K": Fraction(1),
}


def test_relation_genus_one_one_point():
    (vec,) = relations(1, 1, 1, 1, (1,))
    assert vec.label == "1/disc^1"
    assert vec.coefficients == {
        "g0|L0^0|E0^0-0^0|K": Fraction(-1, 12),
        "g1|L0^0|E|K1": Fraction(5, 6),
        "g1|L0^1|E|K": Fraction(7, 6),
    }
    assert sum(c * TOP_INTEGRALS[s] for s, c in vec.coefficients.items()) == 0


def test_relation_genus_zero_four_points_integrates_to_zero():
    vecs = relations(1, 0, 4, 1)
    assert vecs
    for vec in vecs:
        assert len(vec.coefficients) == 8
        # boundary points, psi_i and kappa_1 on M_{0,4}-bar all have degree one
        assert sum(vec.coefficients.values()) == 0


def test_no_relations_without_poles():
    assert relations(1, 1, 1, 1, (0,)) == []
    assert relations(1, 0, 3, 0) == []


def test_polar_part_examples():
    th = spin_theory(1, 1)
    t1 = th.t_field.gens()[0]
    assert polar_part(3 * t1, th.disc) == 0
    assert polar_part(1 / th.disc, th.disc) == 1 / th.disc
    with pytest.raises(UnexpectedDenominator):
        polar_part(1 / (t1 + 1), th.disc)


def test_witten_degree():
    assert witten_degree(3, 4, ()) == 1
    assert witten_degree(3, 1, (1,)) == Fraction(1, 3)
    assert witten_degree(4, 2, ()) == Fraction(1, 2)


def test_coefficient_weights_are_homogeneous():
    m, g, a = 1, 1, (1,)
    deg = witten_degree(m + 2, g, a)
    elem = spin_theory(m, 1).reconstruct(g, 1, a)
    for s, c in elem.terms.items():
        assert t_weight(c, m) == (m + 2) * (deg - s.codim)


def test_degree_vanishing_parts_are_polar():
    th = spin_theory(1, 1)
    rel = degree_vanishing_relations(1, 1, 1, (1,), 1)
    assert len(rel) == 3
    for s, c in rel.terms.items():
        assert s.codim == 1 and polar_part(c, th.disc) == c
    # D = 2/3 here and the codim-1 part vanishes identically
    assert degree_vanishing_relations(1, 0, 4, (1, 1, 1, 0), 1).is_zero()
