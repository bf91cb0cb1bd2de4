"""Concrete bialgebroids: ``A ⊗ F_N(U(L)) ⊗ A``, ``A^e`` and ``End(A)``."""

from __future__ import annotations

from typing import Mapping

from ..algebra import FinAlgebra, enveloping
from ..anchored_lie import AnchoredLie, validate
from ..enveloping import Envelope
from ..errors import DegreeOverflow, ValidationError
from ..exactlin import ONE, Mat, Subspace, Vec, axpy
from .core import GenBialgebroid


class CMBialgebroid(GenBialgebroid):
    """Truncated ``A ⊗ F_N(U(L)) ⊗ A``.

    Basis element ``(i, u, j)`` is ``e_i ⊗ x^u ⊗ e_j`` with flat index
    ``(i * dimU + u) * d + j``.  Products are defined when the PBW degrees add
    up to at most ``N``.
    """

    def __init__(self, lie: AnchoredLie, N: int, name: str | None = None):
        A = lie.base
        self.lie = lie
        self.env = Envelope(lie, N)
        self.N = N
        d, nu = A.dim, self.env.dim
        bdim = d * nu * d
        self._d, self._nu = d, nu
        eta = Mat.from_columns(bdim, [{self.index(i, 0, j): ONE} for i in range(d) for j in range(d)])
        counit_cols = []
        for i in range(d):
            for u in range(nu):
                for j in range(d):
                    counit_cols.append(A.table[i][j] if u == 0 else {})
        counit = Mat.from_columns(d, counit_cols)
        unit = self.pure(A.unit, {0: ONE}, A.unit)
        super().__init__(A, bdim, unit, eta, counit, name=name or f"{A.name}⊙U({lie.name})⊙{A.name}")

    def index(self, i: int, u: int, j: int) -> int:
        return (i * self._nu + u) * self._d + j

    def split(self, k: int) -> tuple[int, int, int]:
        iu, j = divmod(k, self._d)
        i, u = divmod(iu, self._nu)
        return i, u, j

    def pure(self, a: Mapping, h: Mapping, b: Mapping) -> Vec:
        """``a ⊗ h ⊗ b`` for coordinate vectors in ``A``, ``U``, ``A``."""
        out: Vec = {}
        for i, x in a.items():
            for u, y in h.items():
                xy = x * y
                for j, z in b.items():
                    k = self.index(i, u, j)
                    out[k] = out.get(k, 0) + xy * z
        return {k: v for k, v in out.items() if v}

    def filtration_degree(self, k: int) -> int:
        return self.env.degrees[self.split(k)[1]]

    def degree_slice(self, n: int) -> Subspace:
        """``A ⊗ F_n(U) ⊗ A`` as a subspace of ``B``."""
        return Subspace.span(self.bdim, ({k: ONE} for k in range(self.bdim) if self.filtration_degree(k) <= n))

    def _compute_product(self, k1: int, k2: int) -> Vec:
        i, u, j = self.split(k1)
        i2, v, j2 = self.split(k2)
        env = self.env
        total = env.degrees[u] + env.degrees[v]
        if total > self.N:
            raise DegreeOverflow(total, self.N)
        A = self.base
        out: Vec = {}
        wv = env.words[v]
        for (u1, u2, u3), c in env.iterated_coproduct({u: ONE}).items():
            left = A.mul({i: ONE}, env.action_matrix(u1).col(i2))
            if not left:
                continue
            right = A.mul(env.action_matrix(u3).col(j2), {j: ONE})
            if not right:
                continue
            mid = env.word_nf(env.words[u2] + wv)
            axpy(out, c, self.pure(left, mid, right))
        return out

    def _compute_delta_rep(self, k: int) -> Mapping[tuple[int, int], object]:
        i, u, j = self.split(k)
        A = self.base
        rep: dict[tuple[int, int], object] = {}
        for (u1, u2), c in self.env.mono_coproduct(u).items():
            for p, x in self.pure({i: ONE}, {u1: ONE}, A.unit).items():
                for r, y in self.pure(A.unit, {u2: ONE}, {j: ONE}).items():
                    rep[(p, r)] = rep.get((p, r), 0) + c * x * y
        return rep

    def lie_image(self, x: Mapping) -> Vec:
        """``J_L(x) = 1 ⊗ x ⊗ 1``."""
        A = self.base
        return self.pure(A.unit, self.env.lie_element(x), A.unit)


def build_cm(a: FinAlgebra, l: AnchoredLie, n: int, check: bool = True) -> CMBialgebroid:
    """The Connes-Moscovici bialgebroid of ``(L, ω)`` truncated at PBW degree ``n``."""
    if not l.base.same_as(a):
        raise ValidationError("anchored Lie algebra lives over a different base algebra")
    if n < 0:
        raise ValidationError("truncation degree must be nonnegative")
    if check:
        rep = validate(l)
        if not rep.ok:
            raise ValidationError(f"invalid anchored Lie algebra: {rep.failures[0]}", rep.failures[0].where)
    return CMBialgebroid(l, n)


def enveloping_bialgebroid(a: FinAlgebra) -> GenBialgebroid:
    """``A ⊗ A^op`` with ``η = id``, ``Δ(a⊗b°) = (a⊗1°)⊗_A(1⊗b°)``, ``ε(a⊗b°) = ab``."""
    ae = enveloping(a)
    d = a.dim
    n = d * d
    delta = []
    counit_cols = []
    for i in range(d):
        for j in range(d):
            rep: dict[tuple[int, int], object] = {}
            for p, x in a.unit.items():
                for r, y in a.unit.items():
                    key = (i * d + p, r * d + j)
                    rep[key] = rep.get(key, 0) + x * y
            delta.append(rep)
            counit_cols.append(a.table[i][j])
    return GenBialgebroid(
        a, n, ae.unit, Mat.identity(n), Mat.from_columns(d, counit_cols), delta=delta, table=ae.table, name=ae.name
    )


def endomorphism_bialgebroid(a: FinAlgebra) -> GenBialgebroid:
    """``End_K(A)`` with ``s = L_a``, ``t(a°) = R_a`` and ``ε(f) = f(1)``.

    Basis ``u_{qp}: e_p ↦ e_q`` has index ``q*d + p``.  The coproduct is the
    preimage of ``f(ab)`` under ``B ⊗_A B ≅ Hom(A ⊗ A, A)``, namely
    ``Δ(f) = Σ_i f∘R_{e_i} ⊗ e_i^*(−)1_A``.
    """
    d = a.dim
    n = d * d

    def matrix_to_vec(m: Mat) -> Vec:
        v: Vec = {}
        for q, row in enumerate(m.rows()):
            for p, x in row.items():
                v[q * d + p] = x
        return v

    table = [[({q * d + s: ONE} if p == r else {}) for r in range(d) for s in range(d)] for q in range(d) for p in range(d)]
    eta_cols = []
    for i in range(d):
        for j in range(d):
            eta_cols.append(matrix_to_vec(a.left_mult({i: ONE}) @ a.right_mult({j: ONE})))
    eta = Mat.from_columns(n, eta_cols)
    counit_cols = []
    for q in range(d):
        for p in range(d):
            x = a.unit.get(p)
            counit_cols.append({q: x} if x else {})
    counit = Mat.from_columns(d, counit_cols)
    # e_i^*(-) 1_A as an endomorphism: e_p ↦ δ_{ip} 1_A
    dual_unit = [{r * d + i: x for r, x in a.unit.items()} for i in range(d)]
    delta = []
    for q in range(d):
        for p in range(d):
            # (u_{qp} ∘ R_{e_i})(e_m) = u_{qp}(e_m e_i): coefficient of e_p in e_m e_i
            rep: dict[tuple[int, int], object] = {}
            for i in range(d):
                comp: Vec = {}
                for m in range(d):
                    c = a.table[m][i].get(p)
                    if c:
                        comp[q * d + m] = c
                for k1, x in comp.items():
                    for k2, y in dual_unit[i].items():
                        rep[(k1, k2)] = rep.get((k1, k2), 0) + x * y
            delta.append(rep)
    unit = {q * d + q: ONE for q in range(d)}
    return GenBialgebroid(a, n, unit, eta, counit, delta=delta, table=table, name=f"End({a.name})")
