"""Primitive elements, the ``⟨s − t⟩`` ideal and the semi-direct splitting."""

from __future__ import annotations

from dataclasses import dataclass

from ..anchored_lie import (
    AnchoredLie,
    DecompositionFailure,
    SemidirectDecomposition,
    decompose_semidirect,
)
from ..errors import ValidationError
from ..exactlin import ONE, Mat, Subspace, Vec, axpy, kernel_basis, sub
from ..report import Report
from .construct import CMBialgebroid
from .core import GenBialgebroid


def primitive_defect(b: GenBialgebroid, x: dict) -> Vec:
    """``Δx − x ⊗_A 1 − 1 ⊗_A x`` in quotient coordinates."""
    out = b.coproduct(x)
    axpy(out, -ONE, b.one_tensor(x, left=True))
    axpy(out, -ONE, b.one_tensor(x, left=False))
    return out


def primitive_subspace(b: GenBialgebroid, within: Subspace | None = None) -> Subspace:
    """Echelon basis of the primitives lying in ``within`` (default: all of ``B``)."""
    if within is None:
        within = Subspace.full(b.bdim)
    if within.ambient_dim != b.bdim:
        raise ValidationError("search space does not live in B")
    defects = Mat.from_columns(b.tensor2.dim, [primitive_defect(b, v) for v in within.basis])
    ker = kernel_basis(defects)
    return Subspace.span(b.bdim, (within.vector(c) for c in ker.basis))


@dataclass(frozen=True)
class PrimitiveData:
    """``prim(B)`` as an anchored Lie algebra with its embedding ``θ`` into ``B``."""

    lie: AnchoredLie
    subspace: Subspace
    embedding: Mat  # bdim x dim prim, column k is the k-th basis primitive
    counit_values: tuple[Vec, ...]  # ε of each basis primitive

    @property
    def dim(self) -> int:
        return self.lie.ldim

    def coords(self, x: dict) -> Vec:
        return self.subspace.coords(x)


def primitives(b: GenBialgebroid, within: Subspace | None = None) -> PrimitiveData:
    """Primitives with commutator bracket and anchor ``X ↦ (a ↦ X·a)``.

    For truncated constructions pass ``within = F_{N-1}``; brackets of
    primitives must stay inside the truncation or :class:`DegreeOverflow`
    propagates.  Only the coproduct condition is imposed; ``ε`` of each basis
    primitive is reported in ``counit_values``.
    """
    sub_ = primitive_subspace(b, within)
    basis = sub_.basis
    k = len(basis)
    table = []
    for p in range(k):
        row = []
        for q in range(k):
            br = sub(b.mul(basis[p], basis[q]), b.mul(basis[q], basis[p]))
            if not sub_.contains(br):
                raise ValidationError("primitives are not closed under the commutator", (p, q))
            row.append(sub_.coords(br))
        table.append(tuple(row))
    d = b.base.dim
    anchor = tuple(
        Mat.from_columns(d, [b.dot(v, {i: ONE}) for i in range(d)]) for v in basis
    )
    lie = AnchoredLie(b.base, k, tuple(table), anchor, name=f"prim({b.name})")
    return PrimitiveData(lie, sub_, sub_.inclusion(), tuple(b.eps(v) for v in basis))


def primitive_identities(b: GenBialgebroid, prim: PrimitiveData) -> Report:
    """Commutation of primitives with ``s``, ``t`` and ``η`` through the dot action.

    ``[X, t(a°)] = t(ε(X t(a°))°)``, ``[X, s(a)] = s(ε(X s(a)))`` and
    ``[X, η(a⊗b°)] = η(X·a ⊗ b° + a ⊗ (X·b)°)`` for basis ``X``, ``a``, ``b``.
    """
    A = b.base
    d = A.dim
    rep = Report("primitive identities")
    for k, x in enumerate(prim.subspace.basis):
        for a in range(d):
            ta, sa = b.t({a: ONE}), b.s({a: ONE})
            lhs = sub(b.mul(x, ta), b.mul(ta, x))
            rep.record(lhs == b.t(b.eps(b.mul(x, ta))), "[X, t(a°)] = t(ε(X t(a°))°)", (k, a))
            lhs = sub(b.mul(x, sa), b.mul(sa, x))
            rep.record(lhs == b.s(b.eps(b.mul(x, sa))), "[X, s(a)] = s(ε(X s(a)))", (k, a))
        dots = [b.dot(x, {i: ONE}) for i in range(d)]
        for i in range(d):
            for j in range(d):
                e = b.eta.col(i * d + j)
                lhs = sub(b.mul(x, e), b.mul(e, x))
                rhs: Vec = {}
                for p, c in dots[i].items():
                    axpy(rhs, c, b.eta.col(p * d + j))
                for p, c in dots[j].items():
                    axpy(rhs, c, b.eta.col(i * d + p))
                rep.record(lhs == rhs, "[X, η(a⊗b°)] = η(X·(a⊗b°))", (k, i, j))
    return rep


def st_vectors(b: GenBialgebroid) -> list[Vec]:
    return [sub(b.s({i: ONE}), b.t({i: ONE})) for i in range(b.base.dim)]


@dataclass(frozen=True)
class StIdeal:
    subspace: Subspace
    report: Report

    @property
    def dim(self) -> int:
        return self.subspace.dim


def st_ideal(b: GenBialgebroid) -> StIdeal:
    """``span{s(a) − t(a°)}`` with its bracket and anchor formulas verified."""
    A = b.base
    d = A.dim
    vecs = st_vectors(b)
    space = Subspace.span(b.bdim, vecs)
    rep = Report("st_ideal")
    for i, v in enumerate(vecs):
        rep.record(not primitive_defect(b, v), "s(a) - t(a°) primitive", (i,))
    for i in range(d):
        for j in range(d):
            lhs = sub(b.mul(vecs[i], vecs[j]), b.mul(vecs[j], vecs[i]))
            c = A.commutator({i: ONE}, {j: ONE})
            rhs = sub(b.s(c), b.t(c))
            rep.record(lhs == rhs, "bracket is s([a,b]) - t([a,b]°)", (i, j))
            rep.record(b.dot(vecs[i], {j: ONE}) == A.commutator({i: ONE}, {j: ONE}), "anchor is [a,-]", (i, j))
    return StIdeal(space, rep)


@dataclass(frozen=True)
class PrimDecomposition:
    prim: PrimitiveData
    lie_span: Subspace  # image of 1 ⊗ L ⊗ 1, in prim coordinates
    st_span: Subspace  # ⟨s − t⟩, in prim coordinates
    result: SemidirectDecomposition | DecompositionFailure

    @property
    def ok(self) -> bool:
        return isinstance(self.result, SemidirectDecomposition)


def prim_decomposition(b: CMBialgebroid) -> PrimDecomposition:
    """Split ``prim(B_L)`` as ``(1 ⊗ L ⊗ 1) ⋉ ⟨s − t⟩``."""
    if not isinstance(b, CMBialgebroid):
        raise ValidationError("prim_decomposition needs a bialgebroid built from an anchored Lie algebra")
    if b.lie.ldim and b.N < 2:
        raise ValidationError("brackets of primitives need truncation degree at least 2")
    prim = primitives(b, within=b.degree_slice(max(b.N - 1, 0)))
    lie_vecs = [b.lie_image({i: ONE}) for i in range(b.lie.ldim)]
    for i, v in enumerate(lie_vecs):
        if not prim.subspace.contains(v):
            raise ValidationError("1 ⊗ X ⊗ 1 is not primitive", (i,))
    lie_span = Subspace.span(prim.dim, (prim.coords(v) for v in lie_vecs))
    st_span = Subspace.span(prim.dim, (prim.coords(v) for v in st_vectors(b)))
    return PrimDecomposition(prim, lie_span, st_span, decompose_semidirect(prim.lie, st_span, lie_span))
