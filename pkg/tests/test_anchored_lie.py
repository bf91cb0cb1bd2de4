import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import sl2
from cmbialg.algebra import commutator_lie, derivation_lie, dual_numbers, ground_field, matrix_algebra
from cmbialg.anchored_lie import (
    AnchoredLie,
    DecompositionFailure,
    SemidirectDecomposition,
    SemidirectError,
    decompose_semidirect,
    is_ideal,
    is_morphism,
    restrict,
    semidirect,
    validate,
)
from cmbialg.errors import ValidationError
from cmbialg.exactlin import ONE, Mat, Subspace, q

Q = ground_field()
A2 = dual_numbers()


def abelian(base, m, anchors=None):
    d = base.dim
    anchors = anchors or [Mat.zeros(d, d)] * m
    return AnchoredLie.abelian(base, list(anchors))


class TestValidate:
    def test_abelian_zero_anchor(self):
        assert validate(abelian(A2, 2)).ok

    def test_sl2_over_any_base(self):
        for base in (Q, A2, matrix_algebra(2)):
            assert validate(sl2(base)).ok

    def test_anchor_not_a_derivation(self):
        bad = Mat.from_dense([[1, 0], [0, 0]])  # 1 ↦ 1 is not a derivation
        rep = validate(abelian(A2, 1, [bad]))
        assert [f.check for f in rep.failures] == ["leibniz"]

    def test_broken_jacobi(self):
        # [X0,X1] = X2, [X1,X2] = X0, [X2,X0] = X0 violates Jacobi
        f = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        f[0][1], f[1][0] = [0, 0, 1], [0, 0, -1]
        f[1][2], f[2][1] = [1, 0, 0], [-1, 0, 0]
        f[2][0], f[0][2] = [1, 0, 0], [-1, 0, 0]
        l = AnchoredLie.from_constants(Q, f, [[[0]]] * 3)
        assert any(x.check == "jacobi" for x in validate(l).failures)


class TestMorphism:
    def test_identity(self):
        l = derivation_lie(A2)
        assert is_morphism(Mat.identity(1), l, l)

    def test_zero_map_fails_on_anchor(self):
        l = derivation_lie(A2)
        assert not is_morphism(Mat.zeros(1, 1), l, l)

    def test_subalgebra_inclusion(self):
        m2 = matrix_algebra(2)
        cl = commutator_lie(m2)
        span = Subspace.span(4, [{0: ONE}, {3: ONE}])
        sub = restrict(cl, span)
        assert is_morphism(span.inclusion(), sub, cl)

    def test_base_mismatch(self):
        with pytest.raises(ValidationError):
            is_morphism(Mat.zeros(0, 0), abelian(Q, 0), abelian(A2, 0))


class TestSemidirect:
    def test_trivial_outer_factor(self):
        l1 = derivation_lie(A2)
        out = semidirect(abelian(A2, 0), l1, [])
        assert out.brackets == l1.brackets and out.anchor == l1.anchor

    def test_direct_sum(self):
        out = semidirect(sl2(Q), abelian(Q, 1), [Mat.zeros(1, 1)] * 3)
        assert validate(out).ok
        assert out.bracket({0: ONE}, {3: ONE}) == {}

    def test_two_dim(self):
        out = semidirect(abelian(Q, 1), abelian(Q, 1), [Mat.identity(1)])
        assert out.bracket({0: ONE}, {1: ONE}) == {1: ONE}
        assert validate(out).ok

    def test_rejects_non_derivation(self):
        l1 = sl2(Q)
        with pytest.raises(SemidirectError) as exc:
            semidirect(abelian(Q, 1), l1, [Mat.identity(3)])
        assert exc.value.where

    def test_rejects_anchor_incompatibility(self):
        der = derivation_lie(A2)  # ω(X) = D, δ(X) must satisfy [D, D] = ω'(δ X)
        with pytest.raises(SemidirectError):
            semidirect(der, der, [Mat.identity(1)])

    @given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n)))
    @settings(max_examples=40, deadline=None)
    def test_round_trip(self, grid):
        n = len(grid)
        delta = Mat.from_dense(grid)
        l2, l1 = abelian(Q, 1), abelian(Q, n)
        prod = semidirect(l2, l1, [delta])
        assert validate(prod).ok
        ideal = Subspace.span(n + 1, ({1 + i: ONE} for i in range(n)))
        outer = Subspace.span(n + 1, [{0: ONE}])
        res = decompose_semidirect(prod, ideal, outer)
        assert isinstance(res, SemidirectDecomposition)
        assert res.delta == (delta,)
        assert is_morphism(res.witness, res.product(), prod)


class TestDecompose:
    def test_whole_ideal(self):
        l = sl2(Q)
        res = decompose_semidirect(l, Subspace.full(3), Subspace.zero(3))
        assert isinstance(res, SemidirectDecomposition) and res.delta == ()

    def test_two_ideals(self):
        l = semidirect(sl2(Q), abelian(Q, 1), [Mat.zeros(1, 1)] * 3)
        res = decompose_semidirect(l, Subspace.span(4, [{3: ONE}]), Subspace.span(4, [{0: ONE}, {1: ONE}, {2: ONE}]))
        assert isinstance(res, SemidirectDecomposition)
        assert all(m.is_zero() for m in res.delta)

    def test_not_an_ideal(self):
        l = sl2(Q)
        res = decompose_semidirect(l, Subspace.span(3, [{0: ONE}]), Subspace.span(3, [{1: ONE}, {2: ONE}]))
        assert isinstance(res, DecompositionFailure) and res.condition == "ideal"

    def test_sum_too_small(self):
        l = abelian(Q, 2)
        res = decompose_semidirect(l, Subspace.span(2, [{0: ONE}]), Subspace.zero(2))
        assert res.condition == "sum"

    def test_overlap(self):
        l = abelian(Q, 2)
        res = decompose_semidirect(l, Subspace.full(2), Subspace.span(2, [{0: ONE}]))
        assert res.condition == "intersection"

    def test_is_ideal(self):
        l = sl2(Q)
        assert is_ideal(l, Subspace.full(3)) is None
        assert is_ideal(l, Subspace.span(3, [{2: ONE}])) is not None
