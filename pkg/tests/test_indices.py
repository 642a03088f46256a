import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bicap import game as g
from bicap import lattice as lat
from bicap.indices import (
    comb_lemma,
    interaction_bi,
    interaction_bi_moebius,
    interaction_bi_point,
    interaction_classical,
    interaction_classical_moebius,
    interaction_table,
    recursion_check,
    reduced_game,
    restricted_minus,
    restricted_zero,
    shapley_bi,
    shapley_bi_moebius,
    shapley_classical,
)
from bicap.lattice import BiSet, DomainError
from bicap.moebius import MoebiusRep, classical_moebius, classical_zeta, fast_moebius, fast_zeta


def all_pairs(n):
    """Every (S, T) with S ∩ T = ∅, as masks."""
    return [(x.pos, x.neg) for x in lat.enumerate_q(n)]


# -- classical ------------------------------------------------------------------

def test_classical_shapley_examples(rng):
    w = [0.1, 0.2, 0.3, 0.4]
    assert np.allclose(shapley_classical(g.additive_capacity(w)), w)
    phi = shapley_classical(g.unanimity(4, 0b0110))
    assert np.allclose(phi, [0, 0.5, 0.5, 0])
    nu = g.random_capacity(4, rng)
    assert shapley_classical(nu).sum() == pytest.approx(1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classical_interaction_two_formulas(n, rng):
    nu = g.random_capacity(n, rng)
    phi = shapley_classical(nu)
    for s in range(1 << n):
        a = interaction_classical(nu, s)
        assert a == pytest.approx(interaction_classical_moebius(nu, s), abs=1e-9)
    for i in range(n):
        assert interaction_classical(nu, 1 << i) == pytest.approx(phi[i], abs=1e-12)


def _k_additive_capacity(n, k, rng):
    m = np.zeros(1 << n)
    for a in range(1, 1 << n):
        if lat.popcount(a) <= k:
            m[a] = rng.random()
    return classical_zeta(m / m.sum(), n)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (4, 3)])
def test_classical_k_additive(n, k, rng):
    nu = _k_additive_capacity(n, k, rng)
    m = classical_moebius(nu)
    for s in range(1 << n):
        size = lat.popcount(s)
        if size > k:
            assert abs(interaction_classical(nu, s)) < 1e-12
        elif size == k:
            assert interaction_classical(nu, s) == pytest.approx(m[s])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_conjugate_interaction_nonempty(n, rng):
    nu = g.random_capacity(n, rng)
    bar = g.conjugate(nu)
    for s in range(1, 1 << n):
        want = (-1) ** (lat.popcount(s) + 1) * interaction_classical(nu, s)
        assert interaction_classical(bar, s) == pytest.approx(want, abs=1e-9)


def test_conjugate_interaction_at_empty_set_differs():
    # at S = ∅ the sign rule would force I^ν̄(∅) = -I^ν(∅); it does not hold
    nu = g.unanimity(2, 0b11)
    bar = g.conjugate(nu)
    assert interaction_classical(nu, 0) == pytest.approx(1 / 3)
    assert interaction_classical(bar, 0) == pytest.approx(2 / 3)


# -- bi-Shapley -----------------------------------------------------------------

def test_cpt_bi_shapley(rng):
    for n in range(1, 5):
        nu1, nu2 = g.random_capacity(n, rng), g.random_capacity(n, rng)
        sh = shapley_bi(g.make_cpt(nu1, nu2))
        assert np.allclose(sh.left, shapley_classical(nu1))
        assert np.allclose(sh.right, shapley_classical(nu2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unanimity_games(n):
    full = lat.full_mask(n)
    for c in lat.enumerate_q(n):
        t = lat.popcount(c.neg)
        if t == n:
            continue
        u = g.bi_unanimity(c)
        left = [1 / (n - t) if c.pos >> i & 1 else 0.0 for i in range(n)]
        right = [1 / (n - t) if (full & ~(c.pos | c.neg)) >> i & 1 else 0.0 for i in range(n)]
        shm = shapley_bi_moebius(fast_moebius(u))
        assert shm.left.tolist() == left and shm.right.tolist() == right
        sh = shapley_bi(u)
        assert np.max(np.abs(sh.left - left)) < 1e-15
        assert np.max(np.abs(sh.right - right)) < 1e-15


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_shapley_two_routes_and_efficiency(n, rng):
    for _ in range(10):
        v = g.random_game(n, rng)
        sh, shm = shapley_bi(v), shapley_bi_moebius(fast_moebius(v))
        assert np.allclose(sh.left, shm.left, atol=1e-9)
        assert np.allclose(sh.right, shm.right, atol=1e-9)
        full = lat.full_mask(n)
        assert sh.total == pytest.approx(v.at(full, 0) - v.at(0, full), abs=1e-9)


def test_additive_bi_shapley():
    w1, w2 = [0.1, 0.2, 0.7], [0.3, 0.3, 0.4]
    sh = shapley_bi_moebius(fast_moebius(g.make_additive(w1, w2)))
    assert np.allclose(sh.left, w1) and np.allclose(sh.right, w2)


def _plant_null(v, i, side):
    """Copy v so that player i never matters on one side."""
    bit = 1 << (i - 1)
    pos, neg = lat.index_tables(v.n)
    vals = v.values.copy()
    for k, (a, b) in enumerate(zip(pos.tolist(), neg.tolist())):
        if side == "left" and a & bit:
            vals[k] = v.at(a & ~bit, b)
        if side == "right" and b & bit:
            vals[k] = v.at(a, b & ~bit)
    return g.BiGame(v.n, vals)


@given(st.integers(1, 4), st.integers(0, 2 ** 32 - 1), st.data())
def test_null_players(n, seed, data):
    i = data.draw(st.integers(1, n))
    v = g.random_game(n, np.random.default_rng(seed))
    ln = _plant_null(v, i, "left")
    pos, neg = lat.index_tables(n)
    bit = 1 << (i - 1)
    assert all(ln.at(a | bit, b) == ln.at(a, b)
               for a, b in zip(pos.tolist(), neg.tolist()) if not (a | b) & bit)
    assert abs(shapley_bi(ln).left[i - 1]) < 1e-12
    rn = _plant_null(v, i, "right")
    assert abs(shapley_bi(rn).right[i - 1]) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fairness_every_permutation(n, rng):
    v = g.random_game(n, rng)
    sh = shapley_bi(v)
    for sigma in itertools.permutations(range(1, n + 1)):
        shp = shapley_bi(g.permute(v, sigma))
        for i in range(1, n + 1):
            assert shp.left[sigma[i - 1] - 1] == pytest.approx(sh.left[i - 1])
            assert shp.right[sigma[i - 1] - 1] == pytest.approx(sh.right[i - 1])


def _symmetric_partner(v1, i):
    """v2 with v2(S∪i,T) - v2(S,T) = v1(S,T) - v1(S,T∪i) on Q(N∖i), and v2 = 0 when i ∉ S."""
    bit = 1 << (i - 1)
    return g.BiGame.from_function(
        v1.n, lambda a, b: v1.at(a & ~bit, b) - v1.at(a & ~bit, b | bit) if a & bit else 0.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symmetry_axiom(n, rng):
    v1 = g.random_game(n, rng)
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        v2 = _symmetric_partner(v1, i)
        assert g.validate(v2).is_game
        for a, b in all_pairs(n):
            if (a | b) & bit:
                continue
            assert v2.at(a | bit, b) - v2.at(a, b) == pytest.approx(v1.at(a, b) - v1.at(a, b | bit))
        assert shapley_bi(v2).left[i - 1] == pytest.approx(shapley_bi(v1).right[i - 1])


# -- bi-interaction -------------------------------------------------------------

def test_pair_example_n2(rng):
    v = g.random_game(2, rng)
    want = v.at(1, 0) - v.at(0, 0) - v.at(1, 2) + v.at(0, 2)
    assert interaction_bi(v, 0b01, 0b10) == pytest.approx(want)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_singletons_are_shapley(n, rng):
    v = g.random_game(n, rng)
    sh = shapley_bi(v)
    for i in range(n):
        assert interaction_bi(v, 1 << i, 0) == pytest.approx(sh.left[i], abs=1e-12)
        assert interaction_bi(v, 0, 1 << i) == pytest.approx(sh.right[i], abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_interaction_routes(n, rng):
    v = g.random_game(n, rng)
    m = fast_moebius(v)
    table = interaction_table(v)
    assert np.allclose(interaction_table(m).values, table.values, atol=1e-12)
    for s, t in all_pairs(n):
        ref = interaction_bi(v, s, t)
        x = BiSet(s, lat.full_mask(n) & ~(s | t), n)
        assert interaction_bi_point(v, x) == pytest.approx(ref, abs=1e-9)
        assert interaction_bi_moebius(m, s, t) == pytest.approx(ref, abs=1e-9)
        assert table.st(s, t) == pytest.approx(ref, abs=1e-9)
        assert table.point(x) == table.st(s, t)


def test_interaction_pair_overlap_raises(rng):
    v = g.random_game(3, rng)
    with pytest.raises(DomainError):
        interaction_bi(v, 1, 1)


def _k_additive_game(n, k, rng):
    pos, neg = lat.index_tables(n)
    c = rng.standard_normal(3 ** n)
    sizes = np.array([lat.popcount(b) for b in neg.tolist()])
    c[sizes < n - k] = 0.0
    # restore v(∅,∅) = 0 by absorbing into the bottom coefficient
    c[0] -= fast_zeta(MoebiusRep(n, c)).values[(3 ** n - 1) // 2]
    return fast_zeta(MoebiusRep(n, c))


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_k_additive_interaction(n, k, rng):
    v = _k_additive_game(n, k, rng)
    m = fast_moebius(v)
    table = interaction_table(v)
    for x in lat.enumerate_q(n):
        size = lat.popcount(x.neg)
        if size < n - k:
            assert abs(table.point(x)) < 1e-9
        elif size == n - k:
            assert table.point(x) == pytest.approx(m[x], abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cpt_interaction_blocks(n, rng):
    nu1, nu2 = g.random_capacity(n, rng), g.random_capacity(n, rng)
    v = g.make_cpt(nu1, nu2)
    bar2 = g.conjugate(nu2)
    for s, t in all_pairs(n):
        val = interaction_bi(v, s, t)
        if s and t:
            assert abs(val) < 1e-12
        elif s:
            assert val == pytest.approx(interaction_classical(nu1, s), abs=1e-9)
        elif t:
            assert val == pytest.approx(interaction_classical(bar2, t), abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cpt_asymmetric_and_symmetric(n, rng):
    nu = g.random_capacity(n, rng)
    asym = g.make_cpt(nu, g.conjugate(nu))
    sym = g.make_cpt(nu, nu)
    for t in range(1, 1 << n):
        i_nu = interaction_classical(nu, t)
        assert interaction_bi(asym, 0, t) == pytest.approx(i_nu, abs=1e-9)
        sign = (-1) ** (lat.popcount(t) + 1)
        assert interaction_bi(sym, 0, t) == pytest.approx(sign * i_nu, abs=1e-9)


def test_cpt_origin_value_differs_from_capacity_index():
    # (∅,∅) falls in neither block: I_{∅,∅} is not I^{ν1}(∅) for a CPT game
    nu = g.unanimity(2, 0b11)
    v = g.make_cpt(nu, nu)
    assert interaction_bi(v, 0, 0) == pytest.approx(0.0)
    assert interaction_classical(nu, 0) == pytest.approx(1 / 3)


# -- reduced and restricted games -----------------------------------------------

def test_reduced_game_singleton_is_identity(rng):
    v = g.random_game(3, rng)
    red = reduced_game(v, 0b010)
    assert red.merged_player == 2
    assert np.array_equal(red.game.values, v.values)


def test_reduced_game_lift_and_values(rng):
    v = g.random_game(4, rng)
    red = reduced_game(v, 0b1010)  # K = {2, 4} becomes player 2 of three
    assert red.game.n == 3 and red.merged_player == 2
    assert red.lift(0b010) == 0b1010
    assert red.lift(0b101) == 0b0101
    assert red.project(0b1011) == 0b011
    with pytest.raises(DomainError):
        red.project(0b0010)
    for x in lat.enumerate_q(3):
        assert red.game[x] == v.at(red.lift(x.pos), red.lift(x.neg))
    with pytest.raises(DomainError):
        reduced_game(v, 0)


def test_restricted_games(rng):
    v = g.random_game(3, rng)
    z = restricted_zero(v, 0b010)   # players 1, 3 become 1, 2
    mnus = restricted_minus(v, 0b010)
    for x in lat.enumerate_q(2):
        a = (x.pos & 1) | (x.pos & 2) << 1
        b = (x.neg & 1) | (x.neg & 2) << 1
        assert z[x] == v.at(a, b)
        assert mnus[x] == v.at(a, b | 0b010)
    assert mnus[lat.origin(2)] == v.at(0, 0b010)
    with pytest.raises(DomainError):
        restricted_zero(v, 0b111)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_recursion_residual(n, rng):
    v = g.random_game(n, rng)
    for s, t in all_pairs(n):
        rep = recursion_check(v, s, t)
        assert rep.residual < 1e-9
        if s:
            assert rep.rhs_plus is not None
        if t:
            assert rep.rhs_minus is not None


def test_recursion_on_cpt_mixed_pairs(rng):
    n = 3
    v = g.make_cpt(g.random_capacity(n, rng), g.random_capacity(n, rng))
    for s, t in all_pairs(n):
        if s and t:
            rep = recursion_check(v, s, t)
            assert abs(rep.lhs) < 1e-12
            assert abs(rep.rhs_plus) < 1e-12 and abs(rep.rhs_minus) < 1e-12


def test_comb_lemma():
    assert comb_lemma(3, 1) == Fraction(1, 2)
    assert all(comb_lemma(n, 0) == Fraction(1, n) for n in range(1, 13))
    assert all(comb_lemma(n, k) == Fraction(1, n - k) for n in range(1, 13) for k in range(n))
    with pytest.raises(DomainError):
        comb_lemma(3, 3)
