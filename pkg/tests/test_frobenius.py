import random
from fractions import Fraction

import pytest

from cohft.algebra.algebraic import AlgebraicElement
from cohft.algebra.poly import field
from cohft.charts import NonSemisimpleError
from cohft.checks import M2_POINTS, random_split_point
from cohft.frobenius import (
    AmModel,
    PmModel,
    build_psi,
    idempotents,
    matchup_phi,
    quantum_product,
    reduce_mod,
    poly_mul,
    residue_pairing,
    tqft_value,
)


def x_power(a):
    return [0] * a + [1]


def test_residue_pairing_m1():
    model = AmModel(1)
    assert residue_pairing([1], [1], model) == 0
    assert residue_pairing([1], [0, 1], model) == 1
    assert residue_pairing([0, 1], [0, 1], model) == 0


def test_residue_pairing_x_squared():
    # X^2 = -t1 mod X^2 + t1 has no X^1 term, so eta(X^2, 1) vanishes
    assert residue_pairing([0, 0, 1], [1], AmModel(1)) == 0


def test_residue_pairing_m2_antidiagonal():
    assert residue_pairing([0, 1], [0, 1], AmModel(2)) == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_eta_shape_and_t1_independence(m):
    model = AmModel(m)
    for a in range(m + 1):
        for b in range(m + 1):
            x = model.eta[a][b]
            if a + b < m:
                assert x == 0
            elif a + b == m:
                assert x == 1
            elif a + b == m + 1:
                assert x == 0
            if hasattr(x, "derivative"):
                assert x.derivative("t1") == 0


def test_residue_pairing_equals_root_sum():
    model = AmModel.from_roots(M2_POINTS[0])
    for a in range(3):
        for b in range(3):
            direct = sum(Fraction(q) ** (a + b) / d for q, d in zip(model.roots, model.deltas))
            assert residue_pairing(x_power(a), x_power(b), model) == direct


def test_quantum_product_examples():
    m1 = AmModel(1)
    (t1,) = m1.t
    assert quantum_product([0, 1], [0, 1], m1) == [-t1, 0]
    m2 = AmModel(2)
    t1, t2 = m2.t
    assert quantum_product([0, 0, 1], [0, 1], m2) == [-t1, -2 * t2, 0]
    p = PmModel(1)
    l0, l1 = p.lambdas
    q = p.ring.gen("q")
    assert quantum_product([-l0, 1], [-l1, 1], p, "H") == [q, 0]


def test_deltas_m1():
    model = AmModel(1)
    q0 = model.roots[0]
    assert model.deltas == [2 * q0, -2 * q0]
    assert q0**2 == -model.t_in_roots(1)


def test_disc_m1_and_m2():
    t1 = AmModel(1).t[0]
    assert AmModel(1).disc() == 4 * t1
    t1, t2 = AmModel(2).t
    assert AmModel(2).disc() == 32 * t2**3 + 27 * t1**2


def test_disc_matches_delta_product_at_random_points():
    rng = random.Random(5)
    for m in (1, 2, 3):
        for _ in range(5):
            model = AmModel.from_roots(random_split_point(m, rng))
            prod = Fraction(1)
            for d in model.deltas:
                prod *= d
            # f' is monic, so Res(f', f'') = prod f''(Q_i) = prod Delta_i
            assert model.disc() == prod


def test_airy_deltas():
    model = AmModel(2, airy=True)
    for q, d in zip(model.roots, model.deltas):
        assert d == q * q * 3


def test_non_semisimple_point():
    with pytest.raises(NonSemisimpleError):
        AmModel(2, [0, 0])
    with pytest.raises(NonSemisimpleError):
        PmModel(1, [1, 1])


def test_psi_orthonormal():
    assert build_psi(AmModel(1), [1, 1]).is_orthonormal()
    assert build_psi(AmModel.from_roots(M2_POINTS[1]), [1, -1, 1]).is_orthonormal()
    assert build_psi(AmModel(2), [1, 1, 1]).is_orthonormal()


def test_psi_m1_columns():
    model = AmModel(1)
    psi = build_psi(model, [1, 1])
    q0, q1 = model.roots
    s0 = psi.sqrt(0)
    assert psi.entry(1, 0) * s0 == 1
    assert psi.entry(0, 0) * s0 == -q1


def test_psi_needs_branch_choice():
    with pytest.raises(ValueError):
        build_psi(AmModel(1), None)
    with pytest.raises(ValueError):
        build_psi(AmModel(1), [1])


@pytest.mark.parametrize("m", [1, 2])
def test_idempotent_relations(m):
    model = AmModel(m)
    fprime = list(model.chart.fprime)
    eps = idempotents(model)
    total = [sum(col[a] for col in eps) for a in range(m + 1)]
    assert total == [1] + [0] * m
    for i in range(m + 1):
        for j in range(m + 1):
            prod = reduce_mod(poly_mul(eps[i], eps[j]), fprime)
            expected = eps[i] if i == j else [0] * (m + 1)
            assert all((x - y) == 0 for x, y in zip(prod, expected))


def test_matchup_m1():
    fl = field("lam0", "lam1", "q")
    l0, l1, q = fl.gens()
    t, lam = matchup_phi(1, [l0, l1], q)
    assert lam == (l0 - l1) ** 2 / 4
    assert t[0] == -q - (l0 - l1) ** 2 / 4


def test_matchup_equal_weights():
    t, lam = matchup_phi(2, [Fraction(3)] * 3, Fraction(5))
    assert lam == 0 and t == [-5, 0]


def test_matchup_m2_t2():
    t, _ = matchup_phi(2, [0, 1, -1], 0)
    assert t[1] == Fraction(-1, 2)


@pytest.mark.parametrize("m", [1, 2])
def test_p_side_reduces_to_a_side(m):
    pm = PmModel(m, q_order=2)
    q = pm.ring.gen("q")
    lam = [pm.to_ring(x) for x in pm.lambdas]
    t, _ = matchup_phi(m, lam, q)
    am = AmModel(m)
    images = t
    for a in range(m + 1):
        for b in range(m + 1):
            x = am.eta[a][b]
            x = x.substitute(pm.ring, images) if hasattr(x, "substitute") else x
            assert pm.to_ring(pm.eta[a][b]) == x
            prod_p = quantum_product(x_power(a), x_power(b), pm)
            prod_a = quantum_product(x_power(a), x_power(b), am)
            for cp, ca in zip(prod_p, prod_a):
                ca = ca.substitute(pm.ring, images) if hasattr(ca, "substitute") else ca
                assert cp - ca == 0


@pytest.mark.parametrize("m", [1, 2])
def test_pm_roots(m):
    pm = PmModel(m, q_order=4)
    for i in range(m + 1):
        assert pm.P[i][0] == pm.lambdas[i]
        assert pm.defining_residual(i).is_zero()


def test_tqft_values():
    deltas = AmModel(1).deltas
    v = tqft_value(0, 3, [0, 0, 0], deltas)
    assert isinstance(v, AlgebraicElement) and v * v == deltas[0]
    w = tqft_value(1, 1, [1], deltas)
    assert w * w == deltas[1]
    assert tqft_value(0, 3, [0, 0, 1], deltas) == 0
    assert tqft_value(0, 4, [1] * 4, deltas) == deltas[1]
    assert tqft_value(2, 0, [], [Fraction(2), Fraction(3)]) == 5


def test_model_json():
    a = AmModel.from_json({"side": "A", "m": 2, "t": ["-6", "-7/2"]})
    assert a.roots == [-2, -1, 3]
    p = PmModel.from_json({"side": "P", "m": 1, "lambda": [0, 1], "qOrder": 3})
    assert p.q_order == 3 and p.lambdas == [0, 1]
