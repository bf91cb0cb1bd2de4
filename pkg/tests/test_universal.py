import itertools

import pytest
import sympy

from cases import CASE_IDS, CASES, abelian_zero, bialgebroid, case, nonabelian_2
from cmbialg.algebra import derivation_lie, dual_numbers, ground_field, matrix_algebra
from cmbialg.anchored_lie import AnchoredLie, SemidirectDecomposition, decompose_semidirect, is_morphism
from cmbialg.cm_bialgebroid import (
    build_cm,
    check_bialgebroid,
    endomorphism_bialgebroid,
    enveloping_bialgebroid,
    primitive_filtration,
    primitives,
)
from cmbialg.cm_bialgebroid.core import all_passed
from cmbialg.errors import DegreeOverflow, ValidationError
from cmbialg.exactlin import ONE, Echelon, Mat, Subspace, axpy, q, rank, sub
from cmbialg.universal import (
    RingMapInput,
    Representation,
    adjunction_counit,
    adjunction_unit,
    base_bialgebroid,
    base_representation,
    check_ring_input,
    cm_recognize,
    complement_candidates,
    endomorphism_ring_input,
    identity_ring_input,
    lift_unit,
    mat_to_vec,
    module_to_representation,
    representation_to_module,
    smash_quotient,
    triangle_identity,
    universal_ring_map,
    vec_to_mat,
)


def _a2():
    a = dual_numbers()
    return a, derivation_lie(a)


def _sym(m: Mat) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m.to_dense()])


class TestRingMap:
    @pytest.mark.parametrize("key", ["A2-der-N3", "Q-aff-N3", "M2-e11-N2", "A2-aff-N3"])
    def test_identity_target(self, key):
        b, c = bialgebroid(key), case(key)
        res = universal_ring_map(c.algebra, c.lie, c.N, identity_ring_input(b), b)
        assert res.report.ok
        assert res.matrix == Mat.identity(b.bdim)

    def test_endomorphisms_of_dual_numbers(self):
        # oracle: L_{e_i} R_{e_j} D^k with D = ω(X) computed in sympy
        a, l = _a2()
        b = bialgebroid("A2-der-N3")
        res = universal_ring_map(a, l, 3, endomorphism_ring_input(l), b)
        assert res.report.ok
        L = [_sym(a.left_mult({i: ONE})) for i in range(2)]
        R = [_sym(a.right_mult({i: ONE})) for i in range(2)]
        D = _sym(l.anchor[0])
        for k in range(b.bdim):
            i, u, j = b.split(k)
            m = L[i] * R[j] * D ** b.env.degrees[u]
            assert _sym(vec_to_mat(res.matrix.col(k), 2)) == m
        # frozen: 1 ⊗ x ⊗ 1 is E_{11}, while ε ⊗ x ⊗ 1 acts as zero
        assert res.matrix.col(b.index(0, 1, 0)) == {3: ONE}
        assert res.matrix.col(b.index(1, 1, 0)) == {}
        assert rank(res.matrix) == 3

    def test_zero_lie_is_phi_a(self):
        a = matrix_algebra(2)
        l = abelian_zero(a, 0)
        b = build_cm(a, l, 2)
        inp = endomorphism_ring_input(l)
        res = universal_ring_map(a, l, 2, inp, b)
        assert b.bdim == 16 and res.report.ok
        assert res.matrix == inp.phi_A

    def test_techuea_checked_to_degree_n(self):
        a, l = _a2()
        res = universal_ring_map(a, l, 3, endomorphism_ring_input(l))
        n = sum(1 for f in res.report.failures)
        assert n == 0 and res.report.checked > 16 * 16 // 2

    def test_rejects_non_lie_map(self):
        a, l = _a2()
        inp = endomorphism_ring_input(l)
        bad = RingMapInput(inp.target, inp.phi_A, inp.phi_L.scale(q(2)))
        assert not check_ring_input(l, bad).ok
        with pytest.raises(ValidationError, match="compatibility"):
            universal_ring_map(a, l, 2, bad)

    def test_rejects_wrong_shape(self):
        a, l = _a2()
        inp = endomorphism_ring_input(l)
        bad = RingMapInput(inp.target, inp.phi_A, Mat.zeros(4, 2))
        with pytest.raises(ValidationError, match="shape"):
            universal_ring_map(a, l, 2, bad)

    @pytest.mark.parametrize("key", ["A2-der-N3", "A2-aff-N3", "M2-e11-N2"])
    def test_uniqueness(self, key):
        # products of η(A^e) and J_L(L) span B, so a ring map is fixed by (φ_A, φ_L)
        b, c = bialgebroid(key), case(key)
        d = c.algebra.dim
        inp = endomorphism_ring_input(c.lie)
        res = universal_ring_map(c.algebra, c.lie, c.N, inp, b)
        T = inp.target
        span = Echelon(b.bdim)
        for length in range(c.N + 1):
            for word in itertools.product(range(c.lie.ldim), repeat=length):
                for x in range(d * d):
                    el, img = b.eta.col(x), inp.phi_A.col(x)
                    for w in word:
                        el = b.mul(el, b.lie_image({w: ONE}))
                        img = T.mul(img, inp.phi_L.col(w))
                    span.add(el)
                    assert res.matrix.apply(el) == img
        assert len(span) == b.bdim


class TestRepresentation:
    def test_base_gives_dot_action(self):
        a, l = _a2()
        b = bialgebroid("A2-der-N3")
        ms = representation_to_module(a, l, 3, base_representation(l), b)
        assert ms.report.ok
        for k in range(b.bdim):
            act = ms.act({k: ONE})
            for i in range(2):
                assert act.col(i) == b.dot({k: ONE}, {i: ONE})

    @pytest.mark.parametrize("key", ["A2-aff-N3", "M2-e11-N2", "A3-der-N3"])
    def test_base_round_trip(self, key):
        b, c = bialgebroid(key), case(key)
        rep = base_representation(c.lie)
        ms = representation_to_module(c.algebra, c.lie, c.N, rep, b)
        assert ms.report.ok
        assert module_to_representation(ms) == rep
        again = representation_to_module(c.algebra, c.lie, c.N, module_to_representation(ms), b)
        assert again.actions == ms.actions

    def test_counit_representation(self):
        # 1-dim M with A acting through the augmentation ε ↦ 0 and ρ = 0
        a = dual_numbers()
        l = abelian_zero(a, 1)
        aug = (Mat.identity(1), Mat.zeros(1, 1))
        rep = Representation(a, 1, aug, aug, (Mat.zeros(1, 1),))
        b = build_cm(a, l, 3)
        ms = representation_to_module(a, l, 3, rep, b)
        assert ms.report.ok
        for k in range(b.bdim):
            e = b.eps({k: ONE})
            assert ms.act({k: ONE}) == Mat(1, 1, [{0: e[0]} if e.get(0) else {}])

    def test_module_law_on_triples(self):
        a, l = _a2()
        b = bialgebroid("A2-der-N3")
        ms = representation_to_module(a, l, 3, base_representation(l), b)
        for k1 in range(b.bdim):
            for k2 in range(b.bdim):
                try:
                    prod = b.basis_product(k1, k2)
                except DegreeOverflow:
                    continue
                assert ms.act(prod) == ms.act({k1: ONE}) @ ms.act({k2: ONE})

    def test_leibniz_violation(self):
        a, l = _a2()
        rep = base_representation(l)
        bad = Representation(a, rep.mdim, rep.left, rep.right, (rep.rho[0].scale(q(2)),))
        with pytest.raises(ValidationError, match="Leibniz") as exc:
            representation_to_module(a, l, 2, bad)
        assert exc.value.where

    def test_matrix_vector_conversion(self):
        m = Mat(2, 2, [{1: q(3)}, {0: q("-1/2")}])
        assert vec_to_mat(mat_to_vec(m), 2) == m


class TestUnit:
    @pytest.mark.parametrize("key", CASE_IDS)
    def test_unit(self, key):
        b, c = bialgebroid(key), case(key)
        res = adjunction_unit(c.algebra, c.lie, c.N, b)
        assert res.report.ok
        assert rank(res.matrix) == c.lie.ldim
        for i in range(c.lie.ldim):
            assert res.prim.subspace.contains(res.in_B.col(i))
            assert res.prim.lie.anchor_of(res.matrix.col(i)) == c.lie.anchor[i]

    def test_needs_degree_one(self):
        a, l = _a2()
        with pytest.raises(ValidationError):
            adjunction_unit(a, l, 0)

    def test_degree_one(self):
        a, l = _a2()
        res = adjunction_unit(a, l, 1)
        assert res.report.ok and rank(res.matrix) == 1


class TestCounit:
    def test_enveloping_surjective_at_zero(self):
        b = enveloping_bialgebroid(dual_numbers())
        res = adjunction_counit(b, 0)
        assert res.report.ok and res.surjective

    def test_matrices_surjective_at_one(self):
        b = endomorphism_bialgebroid(matrix_algebra(2))
        res = adjunction_counit(b, 1)
        assert res.report.ok and res.surjective and res.primitively_generated

    def test_dual_numbers_endomorphisms_not_surjective(self):
        b = endomorphism_bialgebroid(dual_numbers())
        res = adjunction_counit(b, 2)
        assert res.report.ok
        assert not res.surjective and not res.primitively_generated

    @pytest.mark.parametrize("key", ["A2-der-N3", "M2-e11-N2", "A3-der-N3"])
    def test_kernel_element(self, key):
        # a⊗1⊗1 − 1⊗1⊗a − 1⊗(s(a) − t(a°))⊗1 is killed by the counit
        b, c = bialgebroid(key), case(key)
        A = c.algebra
        prim = adjunction_unit(A, c.lie, c.N, b).prim
        res = adjunction_counit(b, 1, prim)
        src = res.source
        for i in range(A.dim):
            st = sub(b.s({i: ONE}), b.t({i: ONE}))
            el = src.pure({i: ONE}, {0: ONE}, A.unit)
            axpy(el, -ONE, src.pure(A.unit, {0: ONE}, {i: ONE}))
            axpy(el, -ONE, src.lie_image(prim.coords(st)))
            assert res.matrix.apply(el) == {}
            if st:
                assert el


class TestTriangle:
    @pytest.mark.parametrize("key", CASE_IDS)
    def test_triangle_identity(self, key):
        b, c = bialgebroid(key), case(key)
        assert triangle_identity(b, c.N - 1).ok

    def test_lift_of_identity(self):
        b = bialgebroid("A2-aff-N3")
        assert lift_unit(b, Mat.identity(2), b) == Mat.identity(b.bdim)


class TestNaturality:
    """The inclusion span{X_2} ⊂ aff over A2 induces a morphism of CM bialgebroids."""

    def setup_method(self):
        self.a, self.small = _a2()
        self.src = bialgebroid("A2-der-N3")
        self.dst = bialgebroid("A2-aff-N3")
        self.f = Mat.from_columns(2, [{1: ONE}])
        self.phi = lift_unit(self.src, self.f, self.dst)

    def test_anchored_morphism(self):
        assert is_morphism(self.f, self.small, case("A2-aff-N3").lie)

    def test_algebra_map(self):
        s, t, phi = self.src, self.dst, self.phi
        for k1 in range(s.bdim):
            for k2 in range(s.bdim):
                try:
                    prod = s.basis_product(k1, k2)
                except DegreeOverflow:
                    continue
                assert phi.apply(prod) == t.mul(phi.col(k1), phi.col(k2))

    def test_coring_map(self):
        s, t, phi = self.src, self.dst, self.phi
        for k in range(s.bdim):
            img = {}
            for m, r, c in s.tensor2.sect_terms(s.delta.col(k)):
                axpy(img, c, t.tensor2.elementary(phi.col(m), phi.col(r)))
            assert t.coproduct(phi.col(k)) == img
            assert t.eps(phi.col(k)) == s.eps({k: ONE})

    def test_unit_square(self):
        # prim(φ) ∘ γ_L = γ_L' ∘ f
        gs = adjunction_unit(self.a, self.small, 3, self.src)
        gd = adjunction_unit(self.a, case("A2-aff-N3").lie, 3, self.dst)
        for i in range(1):
            assert self.phi.apply(gs.in_B.col(i)) == gd.in_B.apply(self.f.col(i))

    def test_filtration_compatible(self):
        fs = primitive_filtration(self.src, 3, primitives(self.src, self.src.degree_slice(2)).subspace)
        fd = primitive_filtration(self.dst, 3, primitives(self.dst, self.dst.degree_slice(2)).subspace)
        for n in range(4):
            for v in fs.level(n).basis:
                assert fd.level(n).contains(self.phi.apply(v))


class TestSmash:
    def test_ground_field_isomorphism(self):
        c = case("Q-aff-N3")
        res = smash_quotient(c.algebra, c.lie, 3, bialgebroid("Q-aff-N3"))
        assert res.report.ok
        assert res.kernel.dim == 0 and rank(res.matrix) == res.source.bdim == res.target.bdim

    def test_dual_numbers_kernel(self):
        a, l = _a2()
        res = smash_quotient(a, l, 2)
        assert res.source.bdim == 12 and res.target.bdim == 6
        assert res.kernel.dim == 6 and res.kernel_matches_ideal
        assert res.report.ok

    def test_counit_compatible(self):
        a, l = _a2()
        res = smash_quotient(a, l, 3, bialgebroid("A2-der-N3"))
        eps_s = res.target.counit @ res.matrix
        assert eps_s == res.source.counit

    @pytest.mark.parametrize("key", ["A2-der-N3", "A2-aff-N3", "D2-ab3-N3"])
    def test_kernel_is_ideal(self, key):
        c = case(key)
        res = smash_quotient(c.algebra, c.lie, c.N, bialgebroid(key))
        assert res.kernel_matches_ideal and res.report.ok

    def test_smash_axioms(self):
        a, l = _a2()
        res = smash_quotient(a, l, 2)
        assert all_passed(check_bialgebroid(res.target, "exhaustive"))
        assert res.target.s({1: ONE}) == res.target.t({1: ONE})

    def test_noncommutative_base(self):
        c = case("M2-e11-N2")
        with pytest.raises(ValidationError, match="base not commutative"):
            smash_quotient(c.algebra, c.lie, 2)


def _witness_lie() -> AnchoredLie:
    # [X, Y] = Y with Z central, written in the basis (X, Y + Z, Z)
    f = [
        [[0, 0, 0], [0, 1, -1], [0, 0, 0]],
        [[0, -1, 1], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    ]
    return AnchoredLie.from_constants(ground_field(), f, [[[0]]] * 3, name="w")


class TestComplements:
    def test_echelon_first(self):
        l = _witness_lie()
        st = Subspace.span(3, [{2: ONE}])
        labels = [lab for lab, _ in complement_candidates(l, st)]
        assert labels == ["echelon complement", "linear closure solve"]

    def test_linear_solve_finds_subalgebra(self):
        l = _witness_lie()
        st = Subspace.span(3, [{2: ONE}])
        cands = dict(complement_candidates(l, st))
        assert not isinstance(decompose_semidirect(l, st, cands["echelon complement"]), SemidirectDecomposition)
        lin = cands["linear closure solve"]
        assert lin == Subspace.span(3, [{0: ONE}, {1: ONE, 2: -ONE}])
        assert isinstance(decompose_semidirect(l, st, lin), SemidirectDecomposition)

    def test_commutative_mode_only_echelon(self):
        l = _witness_lie()
        st = Subspace.span(3, [{2: ONE}])
        assert [lab for lab, _ in complement_candidates(l, st, "commutative")] == ["echelon complement"]


class TestRecognize:
    @pytest.mark.parametrize("key", CASE_IDS)
    def test_self_recognition(self, key):
        b, c = bialgebroid(key), case(key)
        v = cm_recognize(b, c.N)
        assert v.status == "recognized", v.label
        assert v.lie.ldim == c.lie.ldim
        assert v.st_dim == c.algebra.dim - 1

    def test_matrices(self):
        v = cm_recognize(endomorphism_bialgebroid(matrix_algebra(2)), 2)
        assert v.status == "recognized"
        assert v.label == "recognized (bounded-degree certificate)"
        assert v.lie.ldim == 0
        assert "rank η = 16" in v.condition("free_lie_module").detail

    def test_corrupted_coproduct(self):
        b = bialgebroid("A2-der-N3")
        bad = b.with_delta(b.delta.scale(q(2)))
        v = cm_recognize(bad, 3)
        assert v.status == "refuted" and v.label == "refuted (axioms)"
        assert v.condition("axioms").witness is not None

    def test_base_over_itself(self):
        v = cm_recognize(base_bialgebroid(dual_numbers()), 2)
        assert v.status == "refuted"
        assert v.condition("free_lie_module").status == "fail"

    def test_dual_numbers_endomorphisms(self):
        v = cm_recognize(endomorphism_bialgebroid(dual_numbers()), 2)
        assert v.status == "refuted"
        assert v.condition("primitively_generated").status == "fail"

    def test_commutative_mode(self):
        v = cm_recognize(bialgebroid("A2-der-N3"), 3, mode="commutative")
        assert v.status == "recognized" and v.mode == "commutative"
        assert any("echelon complement" in n for n in v.notes)

    def test_commutative_mode_rejects_matrices(self):
        with pytest.raises(ValidationError):
            cm_recognize(bialgebroid("M2-e11-N2"), 2, mode="commutative")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            cm_recognize(bialgebroid("A2-der-N3"), 2, mode="other")

    def test_freeness_flagged(self):
        v = cm_recognize(bialgebroid("Q-aff-N3"), 3)
        assert any("freeness" in n for n in v.notes)
        names = [c.name for c in v.conditions]
        assert names == [
            "axioms",
            "semidirect_split",
            "primitively_generated",
            "graded_projective",
            "free_lie_module",
            "trivial_intersection",
            "strongly_graded",
        ]
