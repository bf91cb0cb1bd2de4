import pytest

from cases import bialgebroid
from cmbialg.algebra import derivation_lie, dual_numbers, ground_field, matrix_algebra
from cmbialg.bimodule_tensor import (
    EtaBimodule,
    associator,
    bimodule_actions,
    check_bimodule,
    takeuchi_subspace,
    tensor_over_A,
)
from cmbialg.cm_bialgebroid import build_cm, enveloping_bialgebroid
from cmbialg.errors import ValidationError
from cmbialg.exactlin import ONE, Mat, quotient_by

A2 = dual_numbers()


def regular(a, name="A"):
    d = a.dim
    return EtaBimodule(
        a,
        d,
        tuple(a.left_mult({i: ONE}) for i in range(d)),
        tuple(a.right_mult({i: ONE}) for i in range(d)),
        s_right=tuple(a.right_mult({i: ONE}) for i in range(d)),
        t_right=tuple(a.left_mult({i: ONE}) for i in range(d)),
        name=name,
    )


def trivial_space(n):
    k = ground_field()
    return EtaBimodule(k, n, (Mat.identity(n),), (Mat.identity(n),), (Mat.identity(n),), (Mat.identity(n),))


class TestTensor:
    def test_ground_field_no_quotient(self):
        t = tensor_over_A(trivial_space(2), trivial_space(3))
        assert t.dim == 6

    def test_enveloping_bialgebroid(self):
        assert enveloping_bialgebroid(A2).tensor2.dim == 8

    def test_cm_degree_one(self):
        b = build_cm(A2, derivation_lie(A2), 1)
        assert b.tensor2.dim == 2 * 2 * 2 * 2 * 2

    def test_regular_bimodule(self):
        m2 = matrix_algebra(2)
        assert tensor_over_A(regular(m2), regular(m2)).dim == 4

    @pytest.mark.parametrize("key", ["A2-der-N3", "M2-e11-N2"])
    def test_balanced_relation(self, key):
        b = bialgebroid(key)
        t = b.tensor2
        bm = b.bimodule
        for a in range(b.base.dim):
            for m in range(0, b.bdim, 3):
                for n in range(0, b.bdim, 5):
                    lhs = t.elementary(bm.t_act[a].col(m), {n: ONE})
                    rhs = t.elementary({m: ONE}, bm.s_act[a].col(n))
                    assert lhs == rhs

    def test_relation_order_irrelevant(self):
        t = bialgebroid("A2-der-N3").tensor2
        rels = list(t.relation_vectors())
        fwd = quotient_by(t.ambient_dim, rels)
        back = quotient_by(t.ambient_dim, rels[::-1])
        assert fwd.dim == back.dim == t.dim
        assert fwd.free == back.free


class TestTakeuchi:
    def test_ground_field_everything(self):
        t = tensor_over_A(trivial_space(2), trivial_space(2))
        assert takeuchi_subspace(t).dim == t.dim

    @pytest.mark.parametrize("key", ["A2-der-N3", "M2-e11-N2"])
    def test_unit_and_coproducts(self, key):
        b = bialgebroid(key)
        tak = b.takeuchi
        assert tak.contains(b.tensor2.elementary(b.unit, b.unit))
        for k in range(b.bdim):
            assert tak.contains(b.delta.col(k))

    def test_needs_right_actions(self):
        m = regular(A2)
        bare = EtaBimodule(A2, 2, m.s_act, m.t_act)
        with pytest.raises(ValidationError):
            takeuchi_subspace(tensor_over_A(bare, bare))


class TestActions:
    def test_unit_is_identity(self):
        t = bialgebroid("A2-der-N3").tensor2
        acts = bimodule_actions(t)
        assert acts.left_of(A2.unit, t.dim) == Mat.identity(t.dim)
        assert acts.right_of(A2.unit, t.dim) == Mat.identity(t.dim)

    def test_commutative_symmetric(self):
        t = tensor_over_A(regular(A2), regular(A2))
        acts = bimodule_actions(t)
        assert acts.left == acts.right

    @pytest.mark.parametrize("key", ["A2-der-N3", "M2-e11-N2"])
    def test_left_action_matches_source(self, key):
        b = bialgebroid(key)
        acts = bimodule_actions(b.tensor2)
        for a in range(b.base.dim):
            for k in range(b.bdim):
                assert acts.left[a].apply(b.delta.col(k)) == b.coproduct(b.mul(b.s({a: ONE}), {k: ONE}))

    def test_ill_defined(self):
        e = Mat.from_dense([[0, 0], [1, 0]])
        broken = EtaBimodule(A2, 2, (Mat.identity(2), e), (Mat.identity(2), e.T))
        assert not check_bimodule(broken).ok
        with pytest.raises(ValidationError):
            bimodule_actions(tensor_over_A(broken, regular(A2)))


def test_associator_is_invertible():
    b = build_cm(A2, derivation_lie(A2), 1)
    bm = b.bimodule
    t12 = tensor_over_A(bm, bm)
    t23 = tensor_over_A(bm, bm)
    left = tensor_over_A(t12.as_bimodule(), bm)
    right = tensor_over_A(bm, t23.as_bimodule())
    m = associator(left, right)
    assert m.nrows == m.ncols == left.dim and m.rank() == m.ncols
    # elementary tensors go to elementary tensors
    x, y, z = {1: ONE}, {5: ONE}, {7: ONE}
    assert m.apply(right.elementary(x, t23.elementary(y, z))) == left.elementary(t12.elementary(x, y), z)
