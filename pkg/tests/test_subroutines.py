import random

import pytest
from hypothesis import given, settings, strategies as st

from ilrs import subroutines as sub
from ilrs.lrs import LrsCode
from ilrs.selftest import f9_example
from ilrs.skew import SkewRing
from ilrs.subroutines import (FqSpan, SyndromeSequences, fq_rank, gabidulin_core, gabidulin_solve,
                              root_space_bases, sr_synthesize, synthesize)
from ilrs.sumrank import _recompose_part, sample_part

from conftest import tower
from oracles import brute_rank, gauss, key_equation_oracle, op_eval_direct, sigma_direct


def ring_for(q, m, sign):
    return SkewRing(tower(q, m), sign)


def random_instance(rng, t, N, s):
    F = t.qm
    seqs = [[F.random(rng) for _ in range(N)] for _ in range(s)]
    offsets = [rng.randrange(N) for _ in range(s)]
    return seqs, offsets


@pytest.mark.parametrize("sign", [1, -1])
def test_all_zero_sequences(sign):
    R = ring_for(3, 4, sign)
    lam, L, unique = synthesize(R, [[0] * 5, [0] * 5], [0, 0])
    assert (lam, L, unique) == ([1], 0, True)


def test_empty_sequences_raise():
    R = ring_for(3, 4, 1)
    with pytest.raises(sub.AllSequencesEmpty):
        synthesize(R, [[1, 2]], [2])
    with pytest.raises(sub.AllSequencesEmpty):
        synthesize(R, [], [])


def test_syndrome_sequences_validation():
    with pytest.raises(ValueError):
        SyndromeSequences.make([[1, 2], [1]])
    with pytest.raises(ValueError):
        SyndromeSequences.make([[1, 2]], [-1])
    ss = SyndromeSequences.make([[1, 2, 3]])
    assert ss.offsets == (0,) and ss.length == 3


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (3, 4)])
@pytest.mark.parametrize("sign", [1, -1])
def test_synthesis_matches_oracle(q, m, sign):
    t = tower(q, m)
    R = SkewRing(t, sign)
    rng = random.Random(100 * q + m + sign)
    for _ in range(40):
        N = rng.randrange(2, 7)
        s = rng.randrange(1, 4)
        seqs, offsets = random_instance(rng, t, N, s)
        if all(N - d <= 0 for d in offsets):
            continue
        lam, L, unique = synthesize(R, seqs, offsets)
        tau, lam_o, unique_o = key_equation_oracle(t, sign, seqs, offsets)
        assert L == tau
        assert unique == unique_o
        if unique:
            assert lam + [0] * (L + 1 - len(lam)) == lam_o
        _check_relations(t, sign, seqs, offsets, lam, L)


def _check_relations(t, sign, seqs, offsets, lam, L):
    F = t.qm
    N = len(seqs[0])
    lam = lam + [0] * (L + 1 - len(lam))
    assert lam[0] == 1
    for seq, d in zip(seqs, offsets):
        for l in range(d + L + 1, N + 1):
            acc = 0
            for i in range(L + 1):
                acc = F.add(acc, F.mul(lam[i], sigma_direct(t, sign, seq[l - i - 1], i)))
            assert acc == 0


def test_synthesis_hits_both_regimes():
    t = tower(2, 3)
    R = SkewRing(t, -1)
    rng = random.Random(3)
    seen = set()
    for _ in range(100):
        seqs, offsets = random_instance(rng, t, rng.randrange(2, 6), rng.randrange(1, 3))
        if all(len(seqs[0]) - d <= 0 for d in offsets):
            continue
        seen.add(synthesize(R, seqs, offsets)[2])
    assert seen == {True, False}


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32), st.sampled_from([1, -1]))
def test_synthesis_degree_minimal(seed, sign):
    t = tower(3, 2)
    rng = random.Random(seed)
    seqs, offsets = random_instance(rng, t, 5, 2)
    if all(5 - d <= 0 for d in offsets):
        return
    R = SkewRing(t, sign)
    lam, L, _ = synthesize(R, seqs, offsets)
    _check_relations(t, sign, seqs, offsets, lam, L)
    assert key_equation_oracle(t, sign, seqs, offsets)[0] == L


def test_sr_synthesize_wrapper():
    R = ring_for(3, 4, -1)
    out = sr_synthesize([[0, 0, 0]], R)
    assert out.connection.coeffs == (1,) and out.unique and out.length == 0


def _table_code():
    return LrsCode(tower(3, 4, s=4), [4, 4], 3)


def test_synthesis_recovers_true_esp():
    # plain syndromes of h-errors: the connection is the annihilator of the
    # error values with parameters theta^{-1}(xi^{-1})
    code = _table_code()
    t = code.tower
    F = t.qm
    rng = random.Random(4)
    for _ in range(40):
        tau = rng.randrange(1, 3)
        part = sample_part(t, code.partition, "horizontal", 3, tau, rng)
        e = _recompose_part(t, part, code.partition, "horizontal", 3)
        S = [code.syndrome(e[j * 8:(j + 1) * 8]) for j in range(3)]
        lam, L, unique = synthesize(code.Rinv, S, [0, 0, 0])
        ps = [code.xi_hat[i] for i, r in enumerate(part.ranks) for _ in range(r)]
        mp = code.Rinv.min_poly(part.values, ps)
        want = code.Rinv.scale(F.inv(mp[0]), mp)
        assert unique and L == tau and lam == want


def test_synthesis_recovers_true_elp():
    # reversed syndromes of vertical errors: annihilator of the locators
    code = _table_code()
    t = code.tower
    F = t.qm
    N = code.redundancy
    rng = random.Random(5)
    for _ in range(40):
        tau = rng.randrange(1, 3)
        part = sample_part(t, code.partition, "vertical", 3, tau, rng)
        E = _recompose_part(t, part, code.partition, "vertical", 3)
        S = [code.syndrome(r) for r in E]
        rev = [code.Rinv.reverse(s_j, N - 1) for s_j in S]
        rev = [r + [0] * (N - len(r)) for r in rev]
        lam, L, unique = synthesize(code.Rinv, rev, [0, 0, 0])
        xs = [code.locator(row, i) for i, B in enumerate(part.locations) for row in B]
        ps = [code.xi_tilde[i] for i, B in enumerate(part.locations) for _ in B]
        mp = code.Rinv.min_poly(xs, ps)
        assert unique and L == tau and lam == code.Rinv.scale(F.inv(mp[0]), mp)


# -- spans -----------------------------------------------------------------

def test_fq_span():
    t = tower(3, 4)
    sp = FqSpan(t)
    assert sp.add(1) and sp.add(3) and not sp.add(4) and not sp.add(0)
    assert len(sp) == 2 and sp.contains(t.qm.add(1, t.qm.mul(2, 3)))
    rng = random.Random(6)
    for _ in range(50):
        es = [t.qm.random(rng) for _ in range(rng.randrange(5))]
        assert fq_rank(t, es) == brute_rank(t, es)


# -- root spaces -----------------------------------------------------------

@pytest.mark.parametrize("sign", [1, -1])
def test_root_space_of_full_norm_polynomial(sign):
    t = tower(3, 4)
    R = SkewRing(t, sign)
    F = t.qm
    a = t.gamma
    p = [F.neg(t.gen_norm(a, 4, sign)), 0, 0, 0, 1]
    (basis,) = root_space_bases(p, [a], ring=R, rng=random.Random(0))
    assert len(basis) == 4 and fq_rank(t, basis) == 4


@pytest.mark.parametrize("q,m", [(3, 2), (3, 4), (5, 2)])
@pytest.mark.parametrize("sign", [1, -1])
def test_root_space_span_equality(q, m, sign):
    t = tower(q, m)
    R = SkewRing(t, sign)
    F = t.qm
    reps = t.conjugacy_representatives()
    rng = random.Random(7)
    for _ in range(20):
        blocks = [[F.random(rng) for _ in range(rng.randrange(0, m))] for _ in reps]
        bs = [b for blk in blocks for b in blk]
        ps = [a for a, blk in zip(reps, blocks) for _ in blk]
        p = R.min_poly(bs, ps)
        stats = {}
        out = root_space_bases(p, reps, ring=R, rng=rng, stats=stats)
        total = 0
        for basis, blk, a in zip(out, blocks, reps):
            assert all(op_eval_direct(t, sign, p, b, a) == 0 for b in basis)
            assert fq_rank(t, basis) == len(basis) == fq_rank(t, blk)
            assert fq_rank(t, basis + blk) == len(basis)
            total += len(basis)
        assert total == len(p) - 1


def test_root_space_dimensions_bounded_by_degree():
    t = tower(3, 2)
    R = SkewRing(t, 1)
    reps = t.conjugacy_representatives()
    rng = random.Random(8)
    for _ in range(50):
        p = [t.qm.random_nonzero(rng) for _ in range(rng.randrange(1, 4))] + [1]
        out = root_space_bases(p, reps, ring=R, rng=rng)
        assert sum(map(len, out)) <= len(p) - 1


def test_root_space_seeds():
    t = tower(3, 4)
    R = SkewRing(t, 1)
    bs = [1, 3]
    p = R.min_poly(bs, [1, 1])
    stats = {}
    assert root_space_bases(p, [1], ring=R, seeds=[bs], stats=stats) == [bs]
    assert stats["draws"] == 0
    with pytest.raises(sub.BadSeed):
        root_space_bases(p, [1], ring=R, seeds=[[9]])
    with pytest.raises(sub.BadSeed):
        root_space_bases(p, [1], ring=R, seeds=[[1, 2]])
    with pytest.raises(ValueError):
        root_space_bases(p, [1])


def test_root_space_budget():
    t = tower(3, 4)
    R = SkewRing(t, 1)
    p = R.min_poly([1, 3], [1, 1])

    class Stuck(random.Random):
        def randrange(self, *a, **k):
            return 1

    with pytest.raises(sub.AttemptBudgetExceeded):
        root_space_bases(p, [1], ring=R, rng=Stuck(), max_attempts=3)


# -- Moore-structured solver -----------------------------------------------

def test_gabidulin_f9_example():
    t, a, xi, s = f9_example()
    stats = {"trace": True}
    x = gabidulin_solve(t, a, xi, s, stats=stats)
    g = t.elem
    assert x == [g(2), 1, g(1)]


def test_gabidulin_single_entry():
    t = tower(3, 4)
    F = t.qm
    a, s = 7, 11
    assert gabidulin_solve(t, [a], [t.gamma], [s]) == [F.div(s, a)]


def test_gabidulin_zero_pivot_and_short_rhs():
    t = tower(3, 4)
    with pytest.raises(sub.ZeroPivot):
        gabidulin_solve(t, [1, 1], [1, 1], [1, 2])  # F_q-dependent a
    with pytest.raises(ValueError):
        gabidulin_solve(t, [1, 3], [1, 1], [1])


def _generic_solve(t, sign, a, xi, s):
    """Apply sigma^{-l} to row l so the system becomes linear in x."""
    F = t.qm
    N = len(a)
    A, b = [], []
    for l in range(N):
        row = []
        for aj, pj in zip(a, xi):
            nl = 1
            for k in range(l):
                nl = F.mul(nl, sigma_direct(t, sign, pj, k))
            row.append(sigma_direct(t, sign, F.mul(aj, nl), -l))
        A.append(row)
        b.append(sigma_direct(t, sign, s[l], -l))
    x, null = gauss(F, A, b)
    assert null == 0
    return x


def _rhs(t, sign, a, xi, x, N):
    F = t.qm
    out = []
    for l in range(N):
        acc = 0
        for aj, pj, xj in zip(a, xi, x):
            nl = 1
            for k in range(l):
                nl = F.mul(nl, sigma_direct(t, sign, pj, k))
            acc = F.add(acc, F.mul(aj, F.mul(sigma_direct(t, sign, xj, l), nl)))
        out.append(acc)
    return out


@pytest.mark.parametrize("sign", [1, -1])
def test_gabidulin_against_generic_solver(sign):
    t = tower(3, 4)
    F = t.qm
    reps = t.conjugacy_representatives()
    rng = random.Random(9)
    done = 0
    while done < 100:
        sizes = [rng.randrange(0, 4) for _ in reps[:2]]
        a = []
        for sz in sizes:
            while True:
                blk = [F.random(rng) for _ in range(sz)]
                if fq_rank(t, blk) == sz:
                    break
            a += blk
        if not a:
            continue
        xi = [r for r, sz in zip(reps, sizes) for _ in range(sz)]
        x = [F.random(rng) for _ in a]
        N = len(a) + rng.randrange(3)
        s = _rhs(t, sign, a, xi, x, N)
        got = gabidulin_solve(t, a, xi, s, sign=sign)
        assert got == x == _generic_solve(t, sign, a, xi, s)
        done += 1


def test_gabidulin_over_extension_layer():
    t = tower(3, 2, s=2)
    Fs = t.qms
    rng = random.Random(10)
    for _ in range(20):
        # a over F_{q^2s}, x over F_{q^2}; sigma acts coordinate-wise
        a = [Fs.random(rng) for _ in range(2)]
        xi = [1, t.gamma]
        x = [t.qm.random(rng) for _ in range(2)]
        s = []
        for l in range(2):
            acc = 0
            for aj, pj, xj in zip(a, xi, x):
                nl = t.gen_norm(pj, l)
                acc = Fs.add(acc, Fs.mul(aj, Fs.mul(t.theta(xj, l), nl)))
            s.append(acc)
        try:
            got = gabidulin_solve(t, a, xi, s, layer="qms")
        except sub.ZeroPivot:
            continue
        assert got == x


@pytest.mark.parametrize("T", [4, 8, 16, 32])
def test_gabidulin_operation_count(T):
    t = tower(17, 3)
    F = t.qm
    reps = t.conjugacy_representatives()
    rng = random.Random(T)
    a, xi = [], []
    i = 0
    while len(a) < T:
        blk = [F.random(rng) for _ in range(min(3, T - len(a)))]
        if fq_rank(t, blk) == len(blk):
            a += blk
            xi += [reps[i]] * len(blk)
            i += 1
    x = [F.random(rng) for _ in a]
    s = _rhs(t, 1, a, xi, x, T)
    stats = {}
    assert gabidulin_solve(t, a, xi, s, stats=stats) == x
    assert stats["ops"] <= 2 * T * T


def test_gabidulin_core_trace_shapes():
    t, a, xi, s = f9_example()
    stats = {"trace": True}
    gabidulin_core(t.qm, lambda y, k: t.theta(y, k), a, xi, s, stats)
    assert len(stats["A"]) == 3 and all(len(r) == 3 for r in stats["Q"])
    # the eliminated system is upper triangular
    assert all(stats["A"][i][j] == 0 for i in range(3) for j in range(i))
