from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import abelian_zero, nonabelian_2, sl2
from cmbialg.algebra import derivation_lie, dual_numbers, ground_field, truncated_polynomials
from cmbialg.enveloping import (
    Envelope,
    act_on_A,
    coproduct,
    iterated_coproduct,
    normal_order,
    pbw_basis,
    pbw_count,
)
from cmbialg.errors import DegreeOverflow
from cmbialg.exactlin import ONE, axpy, q

Q = ground_field()
A2 = dual_numbers()
A3 = truncated_polynomials(3)


def _envs():
    return [
        Envelope(abelian_zero(Q, 2), 3),
        Envelope(nonabelian_2(Q), 3),
        Envelope(sl2(Q), 3),
        Envelope(derivation_lie(A2), 3),
        Envelope(derivation_lie(A3), 3),
    ]


ENVS = _envs()
ENV_IDS = ["ab2", "aff", "sl2", "derA2", "derA3"]


class TestPBW:
    def test_one_generator(self):
        assert pbw_basis(abelian_zero(Q, 1), 2) == [(0,), (1,), (2,)]

    @pytest.mark.parametrize("m,n,count", [(2, 2, 6), (3, 3, 20), (1, 2, 3)])
    def test_counts(self, m, n, count):
        assert len(pbw_basis(abelian_zero(Q, m), n)) == count == pbw_count(m, n)

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_stars_and_bars(self, env):
        for n in range(env.N + 1):
            assert env.dim_upto(n) == sum(comb(env.m + k - 1, k) for k in range(n + 1))

    def test_degree_then_lex(self):
        assert pbw_basis(abelian_zero(Q, 2), 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


class TestNormalOrder:
    def test_unit(self):
        env = Envelope(sl2(Q), 3)
        v = env.mul_words((1,), (0,))
        assert normal_order(env, env.one(), v) == v

    def test_abelian_swap(self):
        env = Envelope(abelian_zero(Q, 2), 2)
        assert normal_order(env, env.gen(1), env.gen(0)) == {env.index[(0, 1)]: ONE}

    def test_single_rewrite(self):
        env = Envelope(nonabelian_2(Q), 2)  # [X_2, X_1] = X_1 in 1-based naming
        assert normal_order(env, env.gen(1), env.gen(0)) == {env.index[(0, 1)]: ONE, env.index[(0,)]: ONE}

    def test_overflow(self):
        env = Envelope(sl2(Q), 2)
        with pytest.raises(DegreeOverflow):
            normal_order(env, env.gen(0), env.mul_words((1, 2)))

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_associative(self, env):
        idx = range(env.dim)
        for i in idx:
            for j in idx:
                for k in idx:
                    if env.degrees[i] + env.degrees[j] + env.degrees[k] > env.N:
                        continue
                    u, v, w = {i: ONE}, {j: ONE}, {k: ONE}
                    assert env.mul(env.mul(u, v), w) == env.mul(u, env.mul(v, w))

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_commutator_is_bracket(self, env):
        for i in range(env.m):
            for j in range(env.m):
                lhs = env.mul(env.gen(i), env.gen(j))
                axpy(lhs, -ONE, env.mul(env.gen(j), env.gen(i)))
                assert lhs == env.lie_element(env.lie.brackets[i][j])


class TestCoproduct:
    def test_unit(self):
        env = Envelope(sl2(Q), 2)
        assert coproduct(env, env.one()) == {(0, 0): ONE}

    def test_generator(self):
        env = Envelope(sl2(Q), 2)
        x = env.index[(0,)]
        assert coproduct(env, env.gen(0)) == {(x, 0): ONE, (0, x): ONE}

    def test_square(self):
        env = Envelope(abelian_zero(Q, 1), 2)
        assert coproduct(env, {2: ONE}) == {(2, 0): ONE, (1, 1): q(2), (0, 2): ONE}

    def test_iterated_square(self):
        env = Envelope(abelian_zero(Q, 1), 2)
        got = iterated_coproduct(env, {2: ONE})
        assert got == {
            (2, 0, 0): ONE,
            (1, 1, 0): q(2),
            (1, 0, 1): q(2),
            (0, 2, 0): ONE,
            (0, 1, 1): q(2),
            (0, 0, 2): ONE,
        }

    def test_iterated_generator(self):
        env = Envelope(sl2(Q), 2)
        x = env.index[(1,)]
        assert iterated_coproduct(env, env.gen(1)) == {(x, 0, 0): ONE, (0, x, 0): ONE, (0, 0, x): ONE}

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_coassociative_and_counital(self, env):
        for i in range(env.dim):
            u = {i: ONE}
            assert env.iterated_coproduct(u) == env.iterated_coproduct_right(u)
            left, right = {}, {}
            for (a, b), c in env.coproduct(u).items():
                axpy(left, c * env.counit({a: ONE}), {b: ONE})
                axpy(right, c * env.counit({b: ONE}), {a: ONE})
            assert left == u == right

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_multiplicative(self, env):
        for i in range(env.dim):
            for j in range(env.dim):
                if env.degrees[i] + env.degrees[j] > env.N:
                    continue
                lhs = env.coproduct(env.mul({i: ONE}, {j: ONE}))
                rhs = {}
                for (a, b), c in env.coproduct({i: ONE}).items():
                    for (a2, b2), c2 in env.coproduct({j: ONE}).items():
                        for x, y in env.mul({a: ONE}, {a2: ONE}).items():
                            for z, w in env.mul({b: ONE}, {b2: ONE}).items():
                                rhs[(x, z)] = rhs.get((x, z), 0) + c * c2 * y * w
                assert lhs == {k: v for k, v in rhs.items() if v}


class TestAction:
    def test_unit_acts_trivially(self):
        env = Envelope(derivation_lie(A2), 2)
        assert act_on_A(env, env.one(), {1: q(3)}) == {1: q(3)}

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_kills_unit(self, env):
        a = env.lie.base
        for i in range(env.m):
            assert act_on_A(env, env.gen(i), a.unit) == {}

    def test_square_on_epsilon(self):
        env = Envelope(derivation_lie(A2), 2)
        assert act_on_A(env, {env.index[(0, 0)]: ONE}, {1: ONE}) == {1: ONE}

    @pytest.mark.parametrize("env", ENVS, ids=ENV_IDS)
    def test_module_algebra(self, env):
        a = env.lie.base
        for u in range(env.dim):
            for i in range(a.dim):
                for j in range(a.dim):
                    lhs = env.act({u: ONE}, a.mul({i: ONE}, {j: ONE}))
                    rhs = {}
                    for (u1, u2), c in env.coproduct({u: ONE}).items():
                        axpy(rhs, c, a.mul(env.act({u1: ONE}, {i: ONE}), env.act({u2: ONE}, {j: ONE})))
                    assert lhs == rhs

    @given(st.lists(st.integers(0, 1), min_size=0, max_size=3), st.lists(st.integers(0, 1), min_size=0, max_size=3))
    @settings(max_examples=40, deadline=None)
    def test_action_is_multiplicative(self, w1, w2):
        env = Envelope(derivation_lie(A3), 6)
        u, v = env.word_nf(tuple(w1)), env.word_nf(tuple(w2))
        for i in range(3):
            assert env.act(env.mul(u, v), {i: ONE}) == env.act(u, env.act(v, {i: ONE}))
