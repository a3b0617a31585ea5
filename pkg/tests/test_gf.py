import random

import pytest
from hypothesis import given, strategies as st

from ilrs import gf
from ilrs.gf import FieldTower, kappa, make_field, norm_identity_check, theta_pow

from conftest import FIELDS, tower
from oracles import brute_conjugate_classes, theta_direct


def test_f9_from_primitive_polynomial():
    t = make_field(3, 2, 1, modulus=(2, 2, 1))
    F = t.qm
    g = t.gamma
    # gamma is a root of x^2 + 2x + 2
    assert F.add(F.add(F.mul(g, g), F.mul(2, g)), 2) == 0
    assert len({F.pow(g, i) for i in range(8)}) == 8


def test_m1_theta_is_identity():
    t = make_field(2, 1)
    assert t.theta(1) == 1
    assert t.conjugacy_representatives() == [1]


def test_table_field_builds():
    t = make_field(3, 4, 1)
    assert t.qm.order == 81
    assert t.qm.pow(t.gamma, 40) != 1


@pytest.mark.parametrize("q", [6, 10, 12])
def test_non_prime_power(q):
    with pytest.raises(gf.NonPrimePowerQ):
        make_field(q, 2)


def test_reducible_modulus():
    with pytest.raises(gf.ReducibleModulus):
        make_field(3, 2, modulus=(1, 2, 1))


def test_theta_not_generator():
    with pytest.raises(gf.ThetaNotGenerator):
        make_field(3, 4, u=2)


def test_default_modulus_is_deterministic():
    assert FieldTower(3, 4).modulus == FieldTower(3, 4).modulus


def test_prime_power_base_field():
    t = make_field(4, 2)
    assert t.base.order == 4 and t.qm.order == 16
    fixed = [a for a in range(16) if t.theta(a) == a]
    assert len(fixed) == 4


def test_theta_values_f9():
    t = make_field(3, 2, modulus=(2, 2, 1))
    assert t.theta(t.gamma) == t.qm.pow(t.gamma, 3)


def test_theta_pow_layer_mismatch():
    t = tower(3, 2)
    with pytest.raises(gf.LayerMismatch):
        theta_pow(t, 9, 1)
    with pytest.raises(gf.LayerMismatch):
        theta_pow(t, 1, 1, layer="qms")


def test_theta_pow_on_qms_restricts_to_theta():
    t = tower(3, 2, s=3)
    for a in range(9):
        assert theta_pow(t, a, 1, layer="qms") == t.theta(a)


@pytest.mark.parametrize("q,m", FIELDS)
def test_theta_matches_exponentiation(q, m):
    t = tower(q, m)
    for a in range(t.qm.order):
        for i in (-2, -1, 0, 1, 2, m + 1):
            assert t.theta(a, i) == theta_direct(t, a, i)


@pytest.mark.parametrize("q,m", FIELDS)
def test_theta_order_and_fixed_field(q, m):
    t = tower(q, m)
    F = t.qm
    assert all(t.theta(a, m) == a for a in range(F.order))
    assert [a for a in range(F.order) if t.theta(a) == a] == list(range(q))


@pytest.mark.parametrize("q,m", FIELDS)
def test_theta_homomorphism(q, m):
    t = tower(q, m)
    F = t.qm
    r = random.Random(3)
    for _ in range(100):
        a, b = F.random(r), F.random(r)
        assert t.theta(F.mul(a, b)) == F.mul(t.theta(a), t.theta(b))
        assert t.theta(F.add(a, b)) == F.add(t.theta(a), t.theta(b))


def test_gen_norm_examples():
    t = make_field(3, 2, modulus=(2, 2, 1))
    g = t.gamma
    assert gf.gen_norm(t, 1, 0, g) == 1
    assert gf.gen_norm(t, 1, 1, g) == g
    assert gf.gen_norm(t, 1, 2, g) == t.elem(4)


@pytest.mark.parametrize("q,m", FIELDS)
def test_gen_norm_multiplicative(q, m):
    t = tower(q, m)
    F = t.qm
    r = random.Random(5)
    for _ in range(30):
        a = F.random_nonzero(r)
        for sign in (1, -1):
            for i in range(2 * m + 1):
                for j in range(2 * m + 1):
                    lhs = t.gen_norm(a, i + j, sign)
                    rhs = F.mul(t.theta(t.gen_norm(a, i, sign), sign * j), t.gen_norm(a, j, sign))
                    assert lhs == rhs


@pytest.mark.parametrize("q,m", FIELDS)
def test_full_norm_lies_in_base(q, m):
    t = tower(q, m)
    assert all(t.norm(a) < q for a in range(1, t.qm.order))


def test_norm_identity_examples():
    t = make_field(3, 2, modulus=(2, 2, 1))
    assert norm_identity_check(t, 0, 0, 5)
    assert norm_identity_check(t, 3, 5, t.gamma)
    assert norm_identity_check(t, 5, 3, t.gamma)


def test_norm_identity_zero():
    with pytest.raises(gf.ZeroElementForInverseIdentity):
        norm_identity_check(tower(3, 2), 1, 1, 0)


@pytest.mark.parametrize("q,m", FIELDS)
def test_norm_identities_all_indices(q, m):
    t = tower(q, m)
    r = random.Random(7)
    for _ in range(50):
        x = t.qm.random_nonzero(r)
        for a in range(2 * m + 1):
            for b in range(2 * m + 1):
                assert norm_identity_check(t, a, b, x), (a, b, x)


def test_conjugacy_representatives_examples():
    assert tower(2, 3).conjugacy_representatives() == [1]
    t = make_field(3, 2, modulus=(2, 2, 1))
    assert t.conjugacy_representatives() == [1, t.gamma]
    t5 = make_field(5, 2)
    reps = t5.conjugacy_representatives()
    assert len(reps) == 4
    classes = brute_conjugate_classes(t5)
    assert sorted(next(i for i, c in enumerate(classes) if a in c) for a in reps) == [0, 1, 2, 3]


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (3, 4), (4, 2), (5, 2)])
def test_conjugacy_representatives_cover(q, m):
    t = tower(q, m)
    classes = brute_conjugate_classes(t)
    assert len(classes) == q - 1
    reps = t.conjugacy_representatives()
    hit = [sum(a in c for a in reps) for c in classes]
    assert hit == [1] * (q - 1)
    for a in range(1, t.qm.order):
        assert sum(t.is_conjugate(a, r) for r in reps) == 1


def test_ext_examples():
    t = tower(3, 4)
    assert t.ext(0) == [0] * 4
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        assert t.ext(3 ** i) == e
    r = random.Random(2)
    for _ in range(100):
        x = t.qm.random(r)
        assert t.ext_inv(t.ext(x)) == x


def test_ext_shapes():
    t = tower(3, 2)
    assert len(t.ext([1, 2, 3])) == 2 and len(t.ext([1, 2, 3])[0]) == 3
    assert len(t.ext([[1, 2], [3, 4]])) == 4
    with pytest.raises(gf.LayerMismatch):
        t.ext(9)


@given(st.lists(st.integers(0, 80), min_size=1, max_size=6),
       st.lists(st.integers(0, 80), min_size=1, max_size=6), st.integers(0, 2))
def test_ext_linear(xs, ys, c):
    t = tower(3, 4)
    n = min(len(xs), len(ys))
    xs, ys = xs[:n], ys[:n]
    F, K = t.qm, t.base
    lhs = t.ext([F.add(F.mul(c, x), y) for x, y in zip(xs, ys)])
    ex, ey = t.ext(xs), t.ext(ys)
    rhs = [[K.add(K.mul(c, a), b) for a, b in zip(r1, r2)] for r1, r2 in zip(ex, ey)]
    assert lhs == rhs


def test_kappa_values():
    assert kappa(2, 100) == pytest.approx(3.463, abs=5e-4)
    assert kappa(3, 100) == pytest.approx(1.785, abs=5e-4)
    assert kappa(81, 100) == pytest.approx(1.013, abs=5e-4)
    assert kappa(81) / kappa(3) == pytest.approx(0.567, abs=5e-4)


def test_kappa_q_less_than_two():
    with pytest.raises(gf.QLessThanTwo):
        kappa(1, 10)


def test_kappa_monotone():
    for q in (2, 3, 5):
        vals = [kappa(q, t) for t in range(1, 30)]
        assert vals == sorted(vals)
    for t in (1, 5, 100):
        vals = [kappa(q, t) for q in (2, 3, 4, 5, 9)]
        assert vals == sorted(vals, reverse=True)
