"""Lie algebras anchored in the derivations of a finite-dimensional algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import FinAlgebra, is_derivation
from .errors import ValidationError
from .exactlin import ONE, Mat, Subspace, Vec, axpy, intersect, q
from .report import Report


@dataclass(frozen=True, eq=False)
class AnchoredLie:
    """``(L, ω)``: ``brackets[i][j] = [X_i, X_j]``, ``anchor[i] = ω(X_i)``."""

    base: FinAlgebra
    ldim: int
    brackets: tuple[tuple[Vec, ...], ...]
    anchor: tuple[Mat, ...]
    name: str = field(default="L", compare=False)

    def __post_init__(self):
        if len(self.brackets) != self.ldim or any(len(r) != self.ldim for r in self.brackets):
            raise ValidationError(f"bracket table must be {self.ldim}x{self.ldim}")
        if len(self.anchor) != self.ldim:
            raise ValidationError("need one anchor matrix per Lie basis element")
        d = self.base.dim
        for i, m in enumerate(self.anchor):
            if m.shape != (d, d):
                raise ValidationError(f"anchor matrix {i} must be {d}x{d}", (i,))

    @classmethod
    def from_constants(
        cls,
        base: FinAlgebra,
        f: Sequence[Sequence[Sequence]],
        anchor: Sequence[Sequence[Sequence]],
        name: str = "L",
    ) -> AnchoredLie:
        """Dense constants ``f[i][j][k]`` and dense anchor matrices."""
        n = len(f)
        brackets = []
        for i in range(n):
            if len(f[i]) != n or any(len(f[i][j]) != n for j in range(n)):
                raise ValidationError("bracket constants must be ldim x ldim x ldim", (i,))
            brackets.append(tuple({k: q(x) for k, x in enumerate(f[i][j]) if q(x)} for j in range(n)))
        return cls(base, n, tuple(brackets), tuple(Mat.from_dense(m) for m in anchor), name)

    @classmethod
    def abelian(cls, base: FinAlgebra, anchor: Sequence[Mat], name: str = "L") -> AnchoredLie:
        n = len(anchor)
        return cls(base, n, tuple(tuple({} for _ in range(n)) for _ in range(n)), tuple(anchor), name)

    @property
    def f(self) -> list[list[list]]:
        n = self.ldim
        return [[[self.brackets[i][j].get(k, 0) for k in range(n)] for j in range(n)] for i in range(n)]

    def bracket(self, x: Mapping, y: Mapping) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            bi = self.brackets[i]
            for j, b in y.items():
                axpy(out, a * b, bi[j])
        return out

    def anchor_of(self, x: Mapping) -> Mat:
        d = self.base.dim
        acc = Mat.zeros(d, d)
        for i, c in x.items():
            acc = acc + self.anchor[i].scale(c)
        return acc

    def act(self, x: Mapping, a: Mapping) -> Vec:
        """``ω(x)(a)``."""
        out: Vec = {}
        for i, c in x.items():
            axpy(out, c, self.anchor[i].apply(a))
        return out

    def __repr__(self) -> str:
        return f"<AnchoredLie {self.name} dim {self.ldim} over {self.base.name}>"


def validate(l: AnchoredLie) -> Report:
    """Antisymmetry, Jacobi, anchor morphism and Leibniz checks on the basis."""
    rep = Report(f"anchored Lie {l.name}")
    n = l.ldim
    e = [{i: ONE} for i in range(n)]
    for i in range(n):
        rep.record(not l.brackets[i][i], "antisymmetry", (i, i))
        for j in range(i + 1, n):
            s = dict(l.brackets[i][j])
            axpy(s, ONE, l.brackets[j][i])
            rep.record(not s, "antisymmetry", (i, j))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = l.bracket(e[i], l.brackets[j][k])
                axpy(acc, ONE, l.bracket(e[j], l.brackets[k][i]))
                axpy(acc, ONE, l.bracket(e[k], l.brackets[i][j]))
                rep.record(not acc, "jacobi", (i, j, k))
    for i, m in enumerate(l.anchor):
        rep.record(is_derivation(l.base, m), "leibniz", (i,))
    for i in range(n):
        for j in range(n):
            lhs = l.anchor_of(l.brackets[i][j])
            rhs = l.anchor[i] @ l.anchor[j] - l.anchor[j] @ l.anchor[i]
            rep.record(lhs == rhs, "anchor morphism", (i, j))
    return rep


def is_morphism(f: Mat, src: AnchoredLie, dst: AnchoredLie) -> bool:
    """Whether ``f`` (``dst.ldim x src.ldim``) respects brackets and anchors."""
    if not src.base.same_as(dst.base):
        raise ValidationError("anchored Lie algebras live over different base algebras")
    if f.shape != (dst.ldim, src.ldim):
        raise ValidationError(f"morphism must be {dst.ldim}x{src.ldim}, got {f.shape[0]}x{f.shape[1]}")
    cols = f.columns()
    for i in range(src.ldim):
        if dst.anchor_of(cols[i]) != src.anchor[i]:
            return False
        for j in range(src.ldim):
            if f.apply(src.brackets[i][j]) != dst.bracket(cols[i], cols[j]):
                return False
    return True


class SemidirectError(ValidationError):
    """A semi-direct product datum fails one of its preconditions."""


def semidirect(l2: AnchoredLie, l1: AnchoredLie, delta: Sequence[Mat]) -> AnchoredLie:
    """Semi-direct product ``L'' ⋉ L'``.

    ``delta[a]`` is the ``l1.ldim x l1.ldim`` matrix of ``δ(X''_a)``.  The
    result has basis ``X''_0..X''_{m-1}`` followed by ``X'_0..X'_{n-1}``.
    Raises :class:`SemidirectError` naming the first violating basis tuple.
    """
    if not l1.base.same_as(l2.base):
        raise SemidirectError("factors live over different base algebras")
    m, n = l2.ldim, l1.ldim
    if len(delta) != m:
        raise SemidirectError(f"need {m} action matrices, got {len(delta)}")
    for a, da in enumerate(delta):
        if da.shape != (n, n):
            raise SemidirectError(f"action matrix {a} must be {n}x{n}", (a,))
    e1 = [{i: ONE} for i in range(n)]
    for a, da in enumerate(delta):
        for i in range(n):
            for j in range(n):
                lhs = da.apply(l1.brackets[i][j])
                rhs = l1.bracket(da.col(i), e1[j])
                axpy(rhs, ONE, l1.bracket(e1[i], da.col(j)))
                if lhs != rhs:
                    raise SemidirectError("δ(X'') is not a derivation of L'", (a, i, j))
    for a in range(m):
        for b in range(m):
            lhs = Mat.zeros(n, n)
            for c, x in l2.brackets[a][b].items():
                lhs = lhs + delta[c].scale(x)
            if lhs != delta[a] @ delta[b] - delta[b] @ delta[a]:
                raise SemidirectError("δ is not a Lie morphism", (a, b))
    for a in range(m):
        for i in range(n):
            lhs = l2.anchor[a] @ l1.anchor[i] - l1.anchor[i] @ l2.anchor[a]
            if lhs != l1.anchor_of(delta[a].col(i)):
                raise SemidirectError("anchor compatibility fails", (a, i))

    def lift1(v: Mapping) -> Vec:
        return {m + k: x for k, x in v.items()}

    total = m + n
    table: list[list[Vec]] = [[{} for _ in range(total)] for _ in range(total)]
    for a in range(m):
        for b in range(m):
            table[a][b] = dict(l2.brackets[a][b])
        for i in range(n):
            table[a][m + i] = lift1(delta[a].col(i))
            table[m + i][a] = lift1({k: -x for k, x in delta[a].col(i).items()})
    for i in range(n):
        for j in range(n):
            table[m + i][m + j] = lift1(l1.brackets[i][j])
    anchor = tuple(l2.anchor) + tuple(l1.anchor)
    return AnchoredLie(l1.base, total, tuple(tuple(r) for r in table), anchor, f"{l2.name}⋉{l1.name}")


def restrict(l: AnchoredLie, span: Subspace, name: str | None = None) -> AnchoredLie:
    """The anchored Lie subalgebra on ``span`` using its echelon basis."""
    if span.ambient_dim != l.ldim:
        raise ValidationError("span does not live in L")
    basis = span.basis
    k = len(basis)
    table = []
    for a in range(k):
        row = []
        for b in range(k):
            br = l.bracket(basis[a], basis[b])
            if not span.contains(br):
                raise ValidationError("span is not closed under the bracket", (a, b))
            row.append(span.coords(br))
        table.append(tuple(row))
    anchor = tuple(l.anchor_of(v) for v in basis)
    return AnchoredLie(l.base, k, tuple(table), anchor, name or f"sub({l.name})")


def is_ideal(l: AnchoredLie, span: Subspace) -> tuple[int, int] | None:
    """None if ``[L, span] ⊆ span``, else the first violating (i, b) pair."""
    for i in range(l.ldim):
        for b, v in enumerate(span.basis):
            if not span.contains(l.bracket({i: ONE}, v)):
                return (i, b)
    return None


@dataclass(frozen=True)
class SemidirectDecomposition:
    """``L ≅ L'' ⋉ L'`` with ``witness`` the isomorphism into ``L``."""

    l2: AnchoredLie
    l1: AnchoredLie
    delta: tuple[Mat, ...]
    witness: Mat

    def product(self) -> AnchoredLie:
        return semidirect(self.l2, self.l1, self.delta)


@dataclass(frozen=True)
class DecompositionFailure:
    condition: str  # "ideal" | "subalgebra" | "sum" | "intersection"
    where: tuple = ()
    detail: str = ""


def decompose_semidirect(
    l: AnchoredLie, l1_span: Subspace, l2_span: Subspace
) -> SemidirectDecomposition | DecompositionFailure:
    """Recover ``δ = ad`` restricted to ``L''`` acting on the ideal ``L'``."""
    for s in (l1_span, l2_span):
        if s.ambient_dim != l.ldim:
            raise ValidationError("span does not live in L")
    bad = is_ideal(l, l1_span)
    if bad is not None:
        return DecompositionFailure("ideal", bad, "[X_i, v_b] leaves the ideal candidate")
    if (l1_span + l2_span).dim != l.ldim:
        return DecompositionFailure("sum", (), f"spans sum to dimension {(l1_span + l2_span).dim} < {l.ldim}")
    common = intersect(l1_span, l2_span)
    if common.dim:
        return DecompositionFailure("intersection", (), f"spans share a subspace of dimension {common.dim}")
    try:
        l2 = restrict(l, l2_span, "L''")
    except ValidationError as exc:
        return DecompositionFailure("subalgebra", exc.where, str(exc))
    l1 = restrict(l, l1_span, "L'")
    delta = []
    for v in l2_span.basis:
        cols = [l1_span.coords(l.bracket(v, w)) for w in l1_span.basis]
        delta.append(Mat.from_columns(l1.ldim, cols))
    witness = Mat.from_columns(l.ldim, list(l2_span.basis) + list(l1_span.basis))
    return SemidirectDecomposition(l2, l1, tuple(delta), witness)

