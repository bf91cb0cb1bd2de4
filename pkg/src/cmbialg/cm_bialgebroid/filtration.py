"""The primitive filtration and the associated graded coring."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..bimodule_tensor import EtaBimodule, TensorOverA
from ..errors import ValidationError
from ..exactlin import ONE, Echelon, Mat, QuotientSpace, Subspace, Vec, axpy, inverse, q
from ..report import Report
from .core import GenBialgebroid
from .primitives import primitive_subspace


@dataclass(frozen=True)
class FiltrationData:
    """``F_0 ⊆ ... ⊆ F_d`` inside ``B``; ``F_{-1} = 0``."""

    levels: tuple[Subspace, ...]
    exhaustive: bool  # F_d = B
    stabilized_at: int | None  # first n < d with F_{n+1} = F_n
    prim: Subspace

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> Subspace:
        if n < 0:
            return Subspace.zero(self.levels[0].ambient_dim)
        return self.levels[min(n, self.depth)]

    def dims(self) -> list[int]:
        return [f.dim for f in self.levels]


def primitive_filtration(b: GenBialgebroid, d: int, prim: Subspace | None = None) -> FiltrationData:
    """``F_0 = η(A^e)``, ``F_{n+1} = F_n + F_n · prim · η(A^e)``."""
    if d < 0:
        raise ValidationError("filtration depth must be nonnegative")
    if prim is None:
        prim = primitive_subspace(b)
    n2 = b.base.dim ** 2
    etas = [b.eta.col(x) for x in range(n2)]
    levels = [Subspace.span(b.bdim, etas)]
    stabilized = None
    for n in range(d):
        prev = levels[-1]
        g = Echelon(b.bdim)
        for f in prev.basis:
            for p in prim.basis:
                g.add(b.mul(f, p))
        e = Echelon(b.bdim)
        e.extend(prev.basis)
        for row in g.sorted_rows():
            for y in etas:
                e.add(b.mul(row, y))
        nxt = Subspace(b.bdim, e)
        if stabilized is None and nxt.dim == prev.dim:
            stabilized = n
        levels.append(nxt)
    return FiltrationData(tuple(levels), levels[-1].dim == b.bdim, stabilized, prim)


class _Slice:
    """``big / small`` for subspaces ``small ⊆ big`` of a common space."""

    def __init__(self, big: Subspace, small: Subspace):
        self.big = big
        rel = [big.coords(v) for v in small.basis]
        self.space = QuotientSpace(big.dim, Subspace.span(big.dim, rel))

    @property
    def dim(self) -> int:
        return self.space.dim

    def proj(self, v: Vec) -> Vec:
        return self.space.proj_vec(self.big.coords(v))

    def sect(self, i: int) -> Vec:
        return self.big.basis[self.space.free[i]]


@dataclass
class GradedCoring:
    """``gr(B)`` with the components ``Δ^{[h,k]}: gr_{h+k} → gr_h ⊗_A gr_k``."""

    filtration: FiltrationData
    pieces: list[_Slice]
    modules: list[EtaBimodule]
    tensors: dict[tuple[int, int], TensorOverA]
    components: dict[tuple[int, int], Mat]
    counit0: Mat
    report: Report
    lax_bijective: dict[int, bool] = field(default_factory=dict)

    def dims(self) -> list[int]:
        return [p.dim for p in self.pieces]

    def strongly_graded(self, max_total: int | None = None) -> tuple[bool, tuple[int, int] | None]:
        """All ``Δ^{[h,k]}`` injective for ``h + k <= max_total``; else a witness pair."""
        for (h, k), m in sorted(self.components.items()):
            if max_total is not None and h + k > max_total:
                continue
            if m.rank() != self.pieces[h + k].dim:
                return False, (h, k)
        return True, None


def _gr_module(b: GenBialgebroid, piece: _Slice, n: int) -> EtaBimodule:
    d = b.base.dim
    bm = b.bimodule
    s_act, t_act = [], []
    for i in range(d):
        for acts, mats in ((bm.s_act, s_act), (bm.t_act, t_act)):
            cols = [piece.proj(acts[i].apply(piece.sect(k))) for k in range(piece.dim)]
            mats.append(Mat.from_columns(piece.dim, cols))
    return EtaBimodule(b.base, piece.dim, tuple(s_act), tuple(t_act), name=f"gr_{n}")


def graded_coring(b: GenBialgebroid, f: FiltrationData, coassociativity: bool = True) -> GradedCoring:
    """Build ``gr(B)`` and its comultiplication through the lax-monoidal map.

    ``G_n ⊆ B ⊗_A B`` is spanned by ``F_i ⊗ F_j`` with ``i + j = n``.  The map
    ``⊕ gr_h ⊗_A gr_k → G_n / G_{n-1}`` is inverted explicitly; if it is not
    bijective the component of that degree is not computed and the report
    records the failure.
    """
    t2 = b.tensor2
    depth = f.depth
    rep = Report("graded coring")
    pieces = [_Slice(f.level(n), f.level(n - 1)) for n in range(depth + 1)]
    modules = [_gr_module(b, pieces[n], n) for n in range(depth + 1)]
    tensors: dict[tuple[int, int], TensorOverA] = {}
    for h in range(depth + 1):
        for k in range(depth + 1 - h):
            tensors[(h, k)] = TensorOverA(modules[h], modules[k])

    G: list[Subspace] = []
    for n in range(depth + 1):
        e = Echelon(t2.dim)
        for i in range(n + 1):
            for x in f.level(i).basis:
                for y in f.level(n - i).basis:
                    e.add(t2.elementary(x, y))
        G.append(Subspace(t2.dim, e))

    components: dict[tuple[int, int], Mat] = {}
    lax: dict[int, bool] = {}
    for n in range(depth + 1):
        gslice = _Slice(G[n], G[n - 1] if n else Subspace.zero(t2.dim))
        cols = []
        blocks = []
        for h in range(n + 1):
            t = tensors[(h, n - h)]
            blocks.append(t.dim)
            for i in range(t.dim):
                qh, qk = t.sect_pair(i)
                cols.append(gslice.proj(t2.elementary(pieces[h].sect(qh), pieces[n - h].sect(qk))))
        phi = Mat.from_columns(gslice.dim, cols)
        ok = phi.nrows == phi.ncols and phi.rank() == phi.ncols
        lax[n] = ok
        rep.record(ok, "lax monoidal map bijective", (n,))
        if not ok:
            continue
        phi_inv = inverse(phi)
        delta_cols = []
        for k in range(pieces[n].dim):
            dx = b.coproduct(pieces[n].sect(k))
            inside = G[n].contains(dx)
            rep.record(inside, "Δ(F_n) ⊆ Σ F_i ⊗ F_j", (n, k))
            delta_cols.append(phi_inv.apply(gslice.proj(dx)) if inside else {})
        off = 0
        for h in range(n + 1):
            size = blocks[h]
            comp_cols = [{i - off: x for i, x in c.items() if off <= i < off + size} for c in delta_cols]
            components[(h, n - h)] = Mat.from_columns(size, comp_cols)
            off += size

    d = b.base.dim
    counit0 = Mat.from_columns(d, [b.eps(pieces[0].sect(k)) for k in range(pieces[0].dim)])
    gc = GradedCoring(f, pieces, modules, tensors, components, counit0, rep, lax)
    _check_graded_laws(b, gc, coassociativity)
    return gc


def _check_graded_laws(b: GenBialgebroid, gc: GradedCoring, coassociativity: bool) -> None:
    rep = gc.report
    mods = gc.modules
    depth = gc.filtration.depth
    for n in range(depth + 1):
        if (0, n) not in gc.components:
            continue
        left = gc.components[(0, n)]
        right = gc.components[(n, 0)]
        t0n, tn0 = gc.tensors[(0, n)], gc.tensors[(n, 0)]
        for k in range(mods[n].vdim):
            acc: Vec = {}
            for q0, qn, c in t0n.sect_terms(left.col(k)):
                axpy(acc, c, mods[n].s_of(gc.counit0.col(q0)).col(qn))
            rep.record(acc == {k: ONE}, "graded left counit", (n, k))
            acc = {}
            for qn, q0, c in tn0.sect_terms(right.col(k)):
                axpy(acc, c, mods[n].t_of(gc.counit0.col(q0)).col(qn))
            rep.record(acc == {k: ONE}, "graded right counit", (n, k))
    if not coassociativity:
        return
    for n in range(depth + 1):
        for h in range(n + 1):
            for k in range(n + 1 - h):
                l = n - h - k
                keys = [(h + k, l), (h, k), (h, k + l), (k, l)]
                if any(key not in gc.components for key in keys):
                    continue
                thk = gc.tensors[(h, k)]
                t3 = TensorOverA(thk.as_bimodule(), mods[l])
                t_hk_l, t_h_kl, tkl = gc.tensors[(h + k, l)], gc.tensors[(h, k + l)], gc.tensors[(k, l)]
                for x in range(mods[n].vdim):
                    lhs: Vec = {}
                    for q1, q2, c in t_hk_l.sect_terms(gc.components[(h + k, l)].col(x)):
                        axpy(lhs, c, t3.elementary(gc.components[(h, k)].col(q1), {q2: ONE}))
                    rhs: Vec = {}
                    for q1, q2, c in t_h_kl.sect_terms(gc.components[(h, k + l)].col(x)):
                        for r1, r2, c2 in tkl.sect_terms(gc.components[(k, l)].col(q2)):
                            axpy(rhs, c * c2, t3.elementary(thk.elementary({q1: ONE}, {r1: ONE}), {r2: ONE}))
                    rep.record(lhs == rhs, "graded coassociativity", (h, k, l, x))


def strongly_graded(gc: GradedCoring, max_total: int | None = None) -> tuple[bool, tuple[int, int] | None]:
    return gc.strongly_graded(max_total)


def freeness_certificate(m: EtaBimodule, attempts: int | None = None, seed: int = 0) -> list[Vec] | None:
    """Generators of ``m`` as a free left ``A^e``-module, or None if none found.

    Candidates are tried greedily: first the basis vectors, then seeded
    pseudo-random integer combinations.  A candidate is kept when it enlarges
    the generated submodule by exactly ``dim(A)²``.  Failure to find a basis
    proves nothing about projectivity.
    """
    d = m.base.dim
    rank_step = d * d
    if m.vdim % rank_step:
        return None
    target = m.vdim // rank_step
    ops = [m.s_act[i] @ m.t_act[j] for i in range(d) for j in range(d)]
    span = Echelon(m.vdim)
    gens: list[Vec] = []

    def candidates():
        for k in range(m.vdim):
            yield {k: ONE}
        rng = random.Random(seed)
        for _ in range(attempts if attempts is not None else 4 * target + 8):
            v = {k: q(rng.randint(-3, 3)) for k in range(m.vdim)}
            yield {k: x for k, x in v.items() if x}

    for v in candidates():
        if len(gens) == target:
            break
        if not v:
            continue
        trial = Echelon(m.vdim)
        trial.extend(span.sorted_rows())
        before = len(trial)
        for op in ops:
            trial.add(op.apply(v))
        if len(trial) - before == rank_step:
            span = trial
            gens.append(v)
    if len(gens) == target and len(span) == m.vdim:
        return gens
    return None
