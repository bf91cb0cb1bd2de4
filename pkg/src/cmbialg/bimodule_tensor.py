"""Bimodules induced by ``η: A^e → B`` and tensor products over ``A``.

A vector space ``M`` with commuting left actions of ``s(a)`` and ``t(a°)`` is
an ``A``-bimodule via ``a·m·b = s(a)t(b°)m``.  ``M ⊗_A N`` is materialized as
the quotient of ``M ⊗ N`` by ``t(a°)m ⊗ n − m ⊗ s(a)n``, generated over basis
elements of ``A``, ``M`` and ``N`` only (enough by bilinearity).  The ambient
index of ``m ⊗ n`` is ``m * N.vdim + n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .algebra import FinAlgebra
from .errors import ValidationError
from .exactlin import ONE, Echelon, Mat, QuotientSpace, Subspace, Vec, axpy, kernel_basis, vstack
from .report import Report


@dataclass(frozen=True, eq=False)
class EtaBimodule:
    """Action matrices of ``s(e_i)`` and ``t(e_i°)`` on a finite-dimensional space.

    ``s_right``/``t_right`` are the optional right multiplications
    ``m ↦ m s(e_i)`` and ``m ↦ m t(e_i°)``, which exist when ``M`` is itself a
    ring over ``A^e``.  They are needed only for Takeuchi products.
    """

    base: FinAlgebra
    vdim: int
    s_act: tuple[Mat, ...]
    t_act: tuple[Mat, ...]
    s_right: tuple[Mat, ...] | None = None
    t_right: tuple[Mat, ...] | None = None
    name: str = "M"
    origin: object = field(default=None, repr=False)

    def __post_init__(self):
        d = self.base.dim
        for label, acts in (("s", self.s_act), ("t", self.t_act), ("s_right", self.s_right), ("t_right", self.t_right)):
            if acts is None:
                continue
            if len(acts) != d:
                raise ValidationError(f"{label} needs one matrix per basis element of A")
            for i, m in enumerate(acts):
                if m.shape != (self.vdim, self.vdim):
                    raise ValidationError(f"{label} matrix {i} has the wrong shape", (i,))

    @property
    def has_right_actions(self) -> bool:
        return self.s_right is not None and self.t_right is not None

    def s_of(self, a: Mapping) -> Mat:
        return _combine(self.s_act, a, self.vdim)

    def t_of(self, a: Mapping) -> Mat:
        return _combine(self.t_act, a, self.vdim)


def _combine(mats: Sequence[Mat], a: Mapping, n: int) -> Mat:
    acc = Mat.zeros(n, n)
    for i, c in a.items():
        acc = acc + mats[i].scale(c)
    return acc


def check_bimodule(m: EtaBimodule) -> Report:
    """Unitality, multiplicativity and commutation of the supplied actions."""
    rep = Report(f"bimodule {m.name}")
    a = m.base
    d = a.dim
    ident = Mat.identity(m.vdim)
    rep.record(m.s_of(a.unit) == ident, "s unital", ())
    rep.record(m.t_of(a.unit) == ident, "t unital", ())
    if m.has_right_actions:
        rep.record(_combine(m.s_right, a.unit, m.vdim) == ident, "s_right unital", ())
        rep.record(_combine(m.t_right, a.unit, m.vdim) == ident, "t_right unital", ())
    for i in range(d):
        for j in range(d):
            p = a.table[i][j]
            rep.record(m.s_of(p) == m.s_act[i] @ m.s_act[j], "s multiplicative", (i, j))
            rep.record(m.t_of(p) == m.t_act[j] @ m.t_act[i], "t antimultiplicative", (i, j))
            rep.record(m.s_act[i] @ m.t_act[j] == m.t_act[j] @ m.s_act[i], "s/t commute", (i, j))
            if m.has_right_actions:
                rep.record(_combine(m.s_right, p, m.vdim) == m.s_right[j] @ m.s_right[i], "s_right", (i, j))
                rep.record(_combine(m.t_right, p, m.vdim) == m.t_right[i] @ m.t_right[j], "t_right", (i, j))
                for lft in (m.s_act[i], m.t_act[i]):
                    for rgt in (m.s_right[j], m.t_right[j]):
                        rep.record(lft @ rgt == rgt @ lft, "left/right commute", (i, j))
    return rep


class TensorOverA:
    """``left ⊗_A right`` as an explicit quotient space with fixed section."""

    def __init__(self, left: EtaBimodule, right: EtaBimodule):
        if not left.base.same_as(right.base):
            raise ValidationError("factors live over different base algebras")
        self.left = left
        self.right = right
        self.base = left.base
        self.ambient_dim = left.vdim * right.vdim
        self.space: QuotientSpace = QuotientSpace(self.ambient_dim, Subspace(self.ambient_dim, self._relations()))
        self._sect_pairs = tuple(divmod(c, right.vdim) for c in self.space.free)
        self._bimod: EtaBimodule | None = None

    def _relations(self) -> Echelon:
        e = Echelon(self.ambient_dim)
        for v in self.relation_vectors():
            e.add(v)
        return e

    def relation_vectors(self) -> Iterator[Vec]:
        """``t(e_i°)e_m ⊗ e_n − e_m ⊗ s(e_i)e_n`` over all basis triples."""
        nd = self.right.vdim
        for i in range(self.base.dim):
            tl = self.left.t_act[i]
            sr = self.right.s_act[i]
            for m in range(self.left.vdim):
                tm = tl.col(m)
                for n in range(nd):
                    v: Vec = {k * nd + n: x for k, x in tm.items()}
                    axpy(v, -ONE, {m * nd + k: x for k, x in sr.col(n).items()})
                    if v:
                        yield v

    @property
    def dim(self) -> int:
        return self.space.dim

    def sect_pair(self, i: int) -> tuple[int, int]:
        """Basis indices ``(m, n)`` with ``[e_m ⊗ e_n]`` = quotient basis vector ``i``."""
        return self._sect_pairs[i]

    def proj_pairs(self, t: Mapping[tuple[int, int], object]) -> Vec:
        nd = self.right.vdim
        amb: Vec = {}
        for (m, n), c in t.items():
            if c:
                k = m * nd + n
                amb[k] = amb.get(k, 0) + c
                if not amb[k]:
                    del amb[k]
        return self.space.proj_vec(amb)

    def proj_ambient(self, v: Mapping[int, object]) -> Vec:
        return self.space.proj_vec(v)

    def elementary(self, m: Mapping, n: Mapping) -> Vec:
        nd = self.right.vdim
        amb: Vec = {}
        for i, x in m.items():
            for j, y in n.items():
                amb[i * nd + j] = x * y
        return self.space.proj_vec(amb)

    def sect_terms(self, v: Mapping[int, object]) -> Iterator[tuple[int, int, object]]:
        """Representative ``Σ c e_m ⊗ e_n`` of a quotient vector."""
        for i, c in v.items():
            m, n = self._sect_pairs[i]
            yield m, n, c

    def tensor_map(self, f: Mat | None, g: Mat | None, dst: TensorOverA | None = None) -> Mat:
        """``f ⊗ g`` computed on sections; the caller vouches for well-definedness."""
        dst = dst or self
        cols = []
        for i in range(self.dim):
            m, n = self._sect_pairs[i]
            fm = f.col(m) if f is not None else {m: ONE}
            gn = g.col(n) if g is not None else {n: ONE}
            cols.append(dst.elementary(fm, gn))
        return Mat.from_columns(dst.dim, cols)

    def as_bimodule(self) -> EtaBimodule:
        """The induced structure: ``s`` acts on the left factor, ``t`` on the right."""
        if self._bimod is None:
            d = self.base.dim
            s_act = tuple(self.tensor_map(self.left.s_act[i], None) for i in range(d))
            t_act = tuple(self.tensor_map(None, self.right.t_act[i]) for i in range(d))
            self._bimod = EtaBimodule(
                self.base, self.dim, s_act, t_act, name=f"({self.left.name}⊗_A{self.right.name})", origin=self
            )
        return self._bimod

    def __repr__(self) -> str:
        return f"<TensorOverA {self.left.name}⊗_A{self.right.name} dim {self.dim}>"


def tensor_over_A(m: EtaBimodule, n: EtaBimodule) -> TensorOverA:
    return TensorOverA(m, n)


def black_right_maps(t: TensorOverA) -> tuple[tuple[Mat, ...], tuple[Mat, ...]]:
    """``[m⊗n] ↦ [m t(a°) ⊗ n]`` and ``[m⊗n] ↦ [m ⊗ n s(a)]`` for basis ``a``."""
    if t.left.t_right is None or t.right.s_right is None:
        raise ValidationError("Takeuchi product needs right actions on both factors")
    d = t.base.dim
    left = tuple(t.tensor_map(t.left.t_right[i], None) for i in range(d))
    right = tuple(t.tensor_map(None, t.right.s_right[i]) for i in range(d))
    return left, right


def takeuchi_subspace(t: TensorOverA) -> Subspace:
    """``{x : x t(a°) on the left factor = x s(a) on the right factor}``."""
    left, right = black_right_maps(t)
    if not left:
        return Subspace.full(t.dim)
    return kernel_basis(vstack(*[l - r for l, r in zip(left, right)]))


@dataclass(frozen=True)
class BimoduleActions:
    left: tuple[Mat, ...]  # a · (m ⊗ n) = s(a)m ⊗ n
    right: tuple[Mat, ...]  # (m ⊗ n) · a = m ⊗ t(a°)n

    def left_of(self, a: Mapping, n: int) -> Mat:
        return _combine(self.left, a, n)

    def right_of(self, a: Mapping, n: int) -> Mat:
        return _combine(self.right, a, n)


def bimodule_actions(t: TensorOverA, check: bool = True) -> BimoduleActions:
    """Induced ``A``-actions on ``M ⊗_A N``.

    With ``check`` the lift of every relation basis vector is verified to
    project to zero; a failure signals broken input actions.
    """
    d = t.base.dim
    lefts, rights = [], []
    for i in range(d):
        lefts.append((t.left.s_act[i], None))
        rights.append((None, t.right.t_act[i]))
    if check:
        nd = t.right.vdim
        for label, pairs in (("left", lefts), ("right", rights)):
            for i, (f, g) in enumerate(pairs):
                for r in t.space.relations.basis:
                    img: Vec = {}
                    for k, x in r.items():
                        m, n = divmod(k, nd)
                        fm = f.col(m) if f is not None else {m: ONE}
                        gn = g.col(n) if g is not None else {n: ONE}
                        for p, y in fm.items():
                            for s, z in gn.items():
                                axpy(img, x * y * z, {p * nd + s: ONE})
                    if t.space.proj_vec(img):
                        raise ValidationError(f"induced {label} action of e_{i} is not well defined", (i,))
    bm = t.as_bimodule()
    return BimoduleActions(bm.s_act, bm.t_act)


def associator(t12_3: TensorOverA, t1_23: TensorOverA) -> Mat:
    """Change of coordinates ``M ⊗_A (N ⊗_A P) → (M ⊗_A N) ⊗_A P``.

    ``t12_3`` must be built on ``t12.as_bimodule()`` and ``t1_23`` on
    ``t23.as_bimodule()`` for tensors ``t12 = M⊗_A N`` and ``t23 = N⊗_A P``.
    """
    t12 = t12_3.left.origin
    t23 = t1_23.right.origin
    if not isinstance(t12, TensorOverA) or not isinstance(t23, TensorOverA):
        raise ValidationError("associator needs iterated tensor products")
    cols = []
    for i in range(t1_23.dim):
        m, q23 = t1_23.sect_pair(i)
        n, p = t23.sect_pair(q23)
        q12 = t12.elementary({m: ONE}, {n: ONE})
        cols.append(t12_3.elementary(q12, {p: ONE}))
    return Mat.from_columns(t12_3.dim, cols)
