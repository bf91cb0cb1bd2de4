import pytest

from cmbialg.algebra import (
    FinAlgebra,
    check_algebra,
    commutator_lie,
    derivations,
    derivation_lie,
    diagonal_algebra,
    dual_numbers,
    enveloping,
    ground_field,
    inner_derivation,
    is_derivation,
    matrix_algebra,
    matrix_commutator,
    opposite,
    truncated_polynomials,
)
from cmbialg.anchored_lie import validate
from cmbialg.exactlin import ONE, Mat, Subspace, kernel_basis, q

ALGEBRAS = [ground_field(), dual_numbers(), truncated_polynomials(3), matrix_algebra(2), diagonal_algebra(3)]
IDS = [a.name for a in ALGEBRAS]

# E_ij at index 2*i + j
E11, E12, E21, E22 = 0, 1, 2, 3


class TestCheckAlgebra:
    @pytest.mark.parametrize("a", ALGEBRAS, ids=IDS)
    def test_presets_valid(self, a):
        assert check_algebra(a).ok

    def test_perturbed_constants(self):
        sc = dual_numbers().sc
        sc[1][1][1] = 1  # ε² = ε is fine, but break associativity with ε·1
        sc[1][0] = [0, 0]
        bad = FinAlgebra.from_constants(sc, [1, 0])
        rep = check_algebra(bad)
        assert not rep.ok
        assert rep.failures[0].where


class TestOpposite:
    def test_commutative(self):
        a = truncated_polynomials(3)
        assert opposite(a) == a

    def test_involution(self):
        m = matrix_algebra(2)
        assert opposite(opposite(m)) == m

    def test_matrix_transpose_spot_check(self):
        m = matrix_algebra(2)
        op = opposite(m)
        assert op.mul({E12: ONE}, {E21: ONE}) == m.mul({E21: ONE}, {E12: ONE}) == {E22: ONE}


class TestEnveloping:
    def test_dims(self):
        assert enveloping(ground_field()).dim == 1
        assert enveloping(matrix_algebra(2)).dim == 16

    def test_dual_numbers(self):
        ae = enveloping(dual_numbers())
        assert ae.dim == 4
        eps_1 = {1 * 2 + 0: ONE}
        assert ae.mul(eps_1, eps_1) == {}

    @pytest.mark.parametrize("a", ALGEBRAS, ids=IDS)
    def test_valid(self, a):
        assert check_algebra(enveloping(a)).ok


class TestDerivations:
    def test_ground_field(self):
        assert derivations(ground_field()) == []

    def test_dual_numbers(self):
        (d,) = derivations(dual_numbers())
        assert d == Mat.from_dense([[0, 0], [0, 1]])

    def test_matrix_all_inner(self):
        m = matrix_algebra(2)
        ders = derivations(m)
        assert len(ders) == 3
        inner = Subspace.span(16, (_flat(inner_derivation(m, {i: ONE})) for i in range(4)))
        assert inner.dim == 3
        assert all(inner.contains(_flat(d)) for d in ders)

    @pytest.mark.parametrize("a", ALGEBRAS, ids=IDS)
    def test_closed_under_commutator(self, a):
        ders = derivations(a)
        span = Subspace.span(a.dim**2, (_flat(d) for d in ders))
        for x in ders:
            assert is_derivation(a, x)
            for y in ders:
                assert span.contains(_flat(matrix_commutator(x, y)))

    @pytest.mark.parametrize("a", ALGEBRAS, ids=IDS)
    def test_lie_structure_valid(self, a):
        assert validate(derivation_lie(a)).ok


def _flat(m: Mat):
    n = m.ncols
    return {r * n + c: x for r, row in enumerate(m.rows()) for c, x in row.items()}


class TestInner:
    def test_unit_gives_zero(self):
        m = matrix_algebra(2)
        assert inner_derivation(m, m.unit).is_zero()

    def test_commutative_zero(self):
        a = truncated_polynomials(3)
        assert all(inner_derivation(a, {i: ONE}).is_zero() for i in range(3))

    def test_e11(self):
        m = matrix_algebra(2)
        d = inner_derivation(m, {E11: ONE})
        assert d.col(E12) == {E12: ONE}
        assert d.col(E21) == {E21: -ONE}
        assert d.col(E11) == {}

    @pytest.mark.parametrize("a", ALGEBRAS, ids=IDS)
    def test_vanishes_exactly_on_center(self, a):
        n = a.dim
        big = Mat.from_columns(n * n, [_flat(inner_derivation(a, {i: ONE})) for i in range(n)])
        assert kernel_basis(big) == a.center()

    def test_linear(self):
        m = matrix_algebra(2)
        x, y = {E12: q(2), E11: ONE}, {E21: q(-1)}
        lhs = inner_derivation(m, {E12: q(2), E11: ONE, E21: q(-1)})
        assert lhs == inner_derivation(m, x) + inner_derivation(m, y)


class TestCommutatorLie:
    def test_commutative_is_abelian(self):
        l = commutator_lie(truncated_polynomials(3))
        assert all(not b for row in l.brackets for b in row)
        assert all(m.is_zero() for m in l.anchor)

    def test_matrix(self):
        m = matrix_algebra(2)
        l = commutator_lie(m)
        assert l.ldim == 4
        assert validate(l).ok
        anchor = Mat.from_columns(16, [_flat(x) for x in l.anchor])
        assert kernel_basis(anchor) == Subspace.span(4, [{E11: ONE, E22: ONE}])
