"""Generic finite-dimensional left bialgebroids and their axiom suite."""

from __future__ import annotations

import copy
from typing import Iterable, Mapping, Sequence

from ..algebra import FinAlgebra
from ..bimodule_tensor import EtaBimodule, TensorOverA, takeuchi_subspace
from ..errors import DegreeOverflow, ValidationError
from ..exactlin import ONE, Mat, Subspace, Vec, axpy, sub
from ..report import Report


class GenBialgebroid:
    """Left ``A``-bialgebroid ``(B, η, Δ, ε)`` on a basis ``b_0..b_{bdim-1}``.

    ``eta`` is the ``bdim x d²`` matrix of ``η: A^e → B`` (column ``i*d + j`` is
    ``η(e_i ⊗ e_j°)``), ``counit`` the ``d x bdim`` matrix of ``ε``.  ``Δ`` is
    given per basis element as a representative ``{(m, n): c}`` in ``B ⊗ B`` and
    stored as a matrix into the canonical coordinates of ``B ⊗_A B``.

    The product may be partial (truncated constructions raise
    :class:`DegreeOverflow`); subclasses override :meth:`_compute_product`.
    """

    def __init__(
        self,
        base: FinAlgebra,
        bdim: int,
        unit: Mapping,
        eta: Mat,
        counit: Mat,
        delta: Sequence[Mapping[tuple[int, int], object]] | None = None,
        table: Sequence[Sequence[Mapping]] | None = None,
        name: str = "B",
    ):
        d = base.dim
        if eta.shape != (bdim, d * d):
            raise ValidationError(f"η must be {bdim}x{d * d}")
        if counit.shape != (d, bdim):
            raise ValidationError(f"ε must be {d}x{bdim}")
        if table is not None and (len(table) != bdim or any(len(r) != bdim for r in table)):
            raise ValidationError(f"multiplication table must be {bdim}x{bdim}")
        if delta is not None and len(delta) != bdim:
            raise ValidationError("need one coproduct representative per basis element")
        self.base = base
        self.bdim = bdim
        self.unit = dict(unit)
        self.eta = eta
        self.counit = counit
        self.name = name
        self._table = table
        self._delta_reps = delta
        self._prod: dict[tuple[int, int], Vec] = {}
        self._delta: Mat | None = None
        self._bimod: EtaBimodule | None = None
        self._t2: TensorOverA | None = None
        self._t3: TensorOverA | None = None
        self._tak: Subspace | None = None

    # -- algebra ------------------------------------------------------------

    def _compute_product(self, i: int, j: int) -> Vec:
        if self._table is None:
            raise NotImplementedError("no multiplication table supplied")
        return dict(self._table[i][j])

    def basis_product(self, i: int, j: int) -> Vec:
        hit = self._prod.get((i, j))
        if hit is None:
            hit = self._compute_product(i, j)
            self._prod[(i, j)] = hit
        return hit

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.basis_product(i, j))
        return out

    def product_defined(self, i: int, j: int) -> bool:
        try:
            self.basis_product(i, j)
        except DegreeOverflow:
            return False
        return True

    def one(self) -> Vec:
        return dict(self.unit)

    def filtration_degree(self, i: int) -> int:
        """Degree hint used to skip products known to be undefined."""
        return 0

    def eta_of(self, x: Mapping) -> Vec:
        return self.eta.apply(x)

    def s(self, a: Mapping) -> Vec:
        d = self.base.dim
        return self.eta.apply({i * d + j: x * y for i, x in a.items() for j, y in self.base.unit.items()})

    def t(self, a: Mapping) -> Vec:
        d = self.base.dim
        return self.eta.apply({i * d + j: x * y for i, x in self.base.unit.items() for j, y in a.items()})

    def eps(self, x: Mapping) -> Vec:
        return self.counit.apply(x)

    # -- bimodule and tensor structure ---------------------------------------

    @property
    def bimodule(self) -> EtaBimodule:
        if self._bimod is None:
            d, n = self.base.dim, self.bdim
            sv = [self.s({i: ONE}) for i in range(d)]
            tv = [self.t({i: ONE}) for i in range(d)]
            cols = lambda f: Mat.from_columns(n, [f(k) for k in range(n)])
            s_act = tuple(cols(lambda k, v=v: self.mul(v, {k: ONE})) for v in sv)
            t_act = tuple(cols(lambda k, v=v: self.mul(v, {k: ONE})) for v in tv)
            s_right = tuple(cols(lambda k, v=v: self.mul({k: ONE}, v)) for v in sv)
            t_right = tuple(cols(lambda k, v=v: self.mul({k: ONE}, v)) for v in tv)
            self._bimod = EtaBimodule(self.base, n, s_act, t_act, s_right, t_right, name=self.name)
        return self._bimod

    @property
    def tensor2(self) -> TensorOverA:
        """``B ⊗_A B``."""
        if self._t2 is None:
            self._t2 = TensorOverA(self.bimodule, self.bimodule)
        return self._t2

    @property
    def tensor3(self) -> TensorOverA:
        """``(B ⊗_A B) ⊗_A B``."""
        if self._t3 is None:
            self._t3 = TensorOverA(self.tensor2.as_bimodule(), self.bimodule)
        return self._t3

    @property
    def takeuchi(self) -> Subspace:
        if self._tak is None:
            self._tak = takeuchi_subspace(self.tensor2)
        return self._tak

    def share_structure(self, other: GenBialgebroid) -> None:
        """Reuse ``other``'s tensor quotients (same algebra and η)."""
        self._bimod, self._t2, self._t3, self._tak = other._bimod, other._t2, other._t3, other._tak
        self._prod = other._prod

    # -- coring -----------------------------------------------------------------

    def _compute_delta_rep(self, i: int) -> Mapping[tuple[int, int], object]:
        if self._delta_reps is None:
            raise NotImplementedError("no coproduct supplied")
        return self._delta_reps[i]

    @property
    def delta(self) -> Mat:
        """Matrix ``B → B ⊗_A B`` in quotient coordinates."""
        if self._delta is None:
            t2 = self.tensor2
            cols = [t2.proj_pairs(self._compute_delta_rep(i)) for i in range(self.bdim)]
            self._delta = Mat.from_columns(t2.dim, cols)
        return self._delta

    def coproduct(self, x: Mapping) -> Vec:
        return self.delta.apply(x)

    def with_delta(self, delta: Mat) -> GenBialgebroid:
        """Copy with the coproduct matrix replaced (for negative tests)."""
        if delta.shape != self.delta.shape:
            raise ValidationError("replacement coproduct has the wrong shape")
        out = copy.copy(self)
        out._delta = delta
        return out

    def with_counit(self, counit: Mat) -> GenBialgebroid:
        if counit.shape != self.counit.shape:
            raise ValidationError("replacement counit has the wrong shape")
        out = copy.copy(self)
        out.counit = counit
        return out

    def one_tensor(self, x: Mapping, left: bool) -> Vec:
        """``x ⊗_A 1`` if ``left`` else ``1 ⊗_A x``."""
        t2 = self.tensor2
        return t2.elementary(x, self.unit) if left else t2.elementary(self.unit, x)

    def tensor_mul(self, x: Mapping, y: Mapping) -> Vec:
        """Componentwise product of representatives, projected to ``B ⊗_A B``."""
        t2 = self.tensor2
        nd = self.bdim
        amb: Vec = {}
        ys = list(t2.sect_terms(y))
        for m, n, c in t2.sect_terms(x):
            for m2, n2, c2 in ys:
                p1 = self.basis_product(m, m2)
                p2 = self.basis_product(n, n2)
                cc = c * c2
                for k1, v1 in p1.items():
                    for k2, v2 in p2.items():
                        axpy(amb, cc * v1 * v2, {k1 * nd + k2: ONE})
        return t2.proj_ambient(amb)

    def dot(self, xi: Mapping, a: Mapping) -> Vec:
        """``ξ · a = ε(ξ t(a°))``."""
        return self.eps(self.mul(xi, self.t(a)))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} dim {self.bdim} over {self.base.name}>"


def dot_action(b: GenBialgebroid, xi: Mapping, a: Mapping) -> Vec:
    return b.dot(xi, a)


# --- axiom suite --------------------------------------------------------------

def _try(rep: Report, fn, *args) -> None:
    try:
        fn(*args)
    except DegreeOverflow:
        rep.skipped += 1


def _quick_sample(n: int, size: int = 12) -> list[int]:
    if n <= size:
        return list(range(n))
    step = (n - 1) / (size - 1)
    return sorted({round(k * step) for k in range(size)})


def check_bialgebroid(b: GenBialgebroid, level: str = "quick") -> dict[str, Report]:
    """Run every bialgebroid axiom and derived identity on basis elements.

    Pair identities are always exhaustive; ``level="quick"`` restricts the
    associativity triples to a deterministic sample of middle factors.
    Instances with an undefined product are counted as skipped.
    """
    if level not in ("quick", "exhaustive"):
        raise ValueError(f"unknown check level {level!r}")
    A = b.base
    d, n = A.dim, b.bdim
    e = [{i: ONE} for i in range(n)]
    ea = [{i: ONE} for i in range(d)]
    reports: dict[str, Report] = {}

    def new(name: str) -> Report:
        reports[name] = Report(name)
        return reports[name]

    # total algebra
    rep = new("algebra")
    for i in range(n):
        rep.record(b.mul(b.unit, e[i]) == e[i], "left unit", (i,))
        rep.record(b.mul(e[i], b.unit) == e[i], "right unit", (i,))
    mids = range(n) if level == "exhaustive" else _quick_sample(n)
    for j in mids:
        for i in range(n):
            for k in range(n):
                def assoc(i=i, j=j, k=k):
                    lhs = b.mul(b.basis_product(i, j), e[k])
                    rhs = b.mul(e[i], b.basis_product(j, k))
                    rep.record(lhs == rhs, "associativity", (i, j, k))
                _try(rep, assoc)

    # η is an algebra map
    rep = new("eta_algebra_map")
    from ..algebra import enveloping

    Ae = enveloping(A)
    rep.record(b.eta_of(Ae.unit) == b.unit, "unit", ())
    for x in range(d * d):
        for y in range(d * d):
            lhs = b.mul(b.eta.col(x), b.eta.col(y))
            rep.record(lhs == b.eta_of(Ae.table[x][y]), "multiplicative", (x, y))

    t2 = b.tensor2
    bm = b.bimodule

    # Δ is A-bilinear
    rep = new("coring_bilinear")
    for a in range(d):
        left_s = t2.tensor_map(bm.s_act[a], None)
        right_t = t2.tensor_map(None, bm.t_act[a])
        for i in range(n):
            dx = b.delta.col(i)
            rep.record(b.coproduct(bm.s_act[a].col(i)) == left_s.apply(dx), "Δ(s(a)ξ)", (a, i))
            rep.record(b.coproduct(bm.t_act[a].col(i)) == right_t.apply(dx), "Δ(t(a°)ξ)", (a, i))

    # coassociativity and counit laws
    rep = new("coassociativity")
    t3 = b.tensor3
    for i in range(n):
        lhs: Vec = {}
        rhs: Vec = {}
        for m, k, c in t2.sect_terms(b.delta.col(i)):
            axpy(lhs, c, t3.elementary(b.delta.col(m), {k: ONE}))
            for y, z, c2 in t2.sect_terms(b.delta.col(k)):
                axpy(rhs, c * c2, t3.elementary(t2.elementary({m: ONE}, {y: ONE}), {z: ONE}))
        rep.record(lhs == rhs, "coassociative", (i,))
    rep = new("counit")
    for i in range(n):
        left: Vec = {}
        right: Vec = {}
        for m, k, c in t2.sect_terms(b.delta.col(i)):
            axpy(left, c, b.mul(b.s(b.eps(e[m])), e[k]))
            axpy(right, c, b.mul(b.t(b.eps(e[k])), e[m]))
        rep.record(left == e[i], "Σ s(ε(ξ1))ξ2 = ξ", (i,))
        rep.record(right == e[i], "Σ t(ε(ξ2)°)ξ1 = ξ", (i,))

    # Takeuchi condition and multiplicativity
    rep = new("takeuchi")
    tak = b.takeuchi
    for i in range(n):
        rep.record(tak.contains(b.delta.col(i)), "Δ(ξ) in B ×_A B", (i,))
    rep = new("delta_multiplicative")
    rep.record(b.coproduct(b.unit) == t2.elementary(b.unit, b.unit), "Δ(1) = 1⊗1", ())
    for i in range(n):
        for j in range(n):
            def mult(i=i, j=j):
                lhs = b.coproduct(b.basis_product(i, j))
                rhs = b.tensor_mul(b.delta.col(i), b.delta.col(j))
                rep.record(lhs == rhs, "Δ(ξζ) = Δ(ξ)Δ(ζ)", (i, j))
            _try(rep, mult)

    # left character
    rep = new("left_character")
    for i in range(n):
        for j in range(n):
            def char(i=i, j=j):
                ej = b.eps(e[j])
                mid = b.eps(b.basis_product(i, j))
                rep.record(b.eps(b.mul(e[i], b.s(ej))) == mid, "ε(ξ s(ε(ξ'))) = ε(ξξ')", (i, j))
                rep.record(b.eps(b.mul(e[i], b.t(ej))) == mid, "ε(ξ t(ε(ξ')°)) = ε(ξξ')", (i, j))
            _try(rep, char)
    rep = new("counit_unit")
    rep.record(b.eps(b.unit) == A.unit, "ε(1) = 1", ())

    # derived identities
    rep = new("delta_source_target")
    for a in range(d):
        rep.record(b.coproduct(b.s(ea[a])) == t2.elementary(b.s(ea[a]), b.unit), "Δ(s(a)) = s(a)⊗1", (a,))
        rep.record(b.coproduct(b.t(ea[a])) == t2.elementary(b.unit, b.t(ea[a])), "Δ(t(a°)) = 1⊗t(a°)", (a,))
    rep = new("delta_right_black")
    for a in range(d):
        rs = t2.tensor_map(bm.s_right[a], None)
        rt = t2.tensor_map(None, bm.t_right[a])
        for i in range(n):
            dx = b.delta.col(i)
            rep.record(b.coproduct(bm.s_right[a].col(i)) == rs.apply(dx), "Δ(ξ s(a))", (a, i))
            rep.record(b.coproduct(bm.t_right[a].col(i)) == rt.apply(dx), "Δ(ξ t(a°))", (a, i))
    rep = new("counit_bilinear")
    for a in range(d):
        for c in range(d):
            st = b.mul(b.s(ea[a]), b.t(ea[c]))
            for i in range(n):
                lhs = b.eps(b.mul(st, e[i]))
                rhs = A.mul(A.mul(ea[a], b.eps(e[i])), ea[c])
                rep.record(lhs == rhs, "ε(s(a)t(b°)ξ) = aε(ξ)b", (a, c, i))
    rep = new("counit_source_target")
    for a in range(d):
        rep.record(b.eps(b.s(ea[a])) == ea[a], "ε(s(a)) = a", (a,))
        rep.record(b.eps(b.t(ea[a])) == ea[a], "ε(t(a°)) = a", (a,))
    rep = new("counit_swap")
    for a in range(d):
        for i in range(n):
            lhs = b.eps(bm.s_right[a].col(i))
            rhs = b.eps(bm.t_right[a].col(i))
            rep.record(lhs == rhs, "ε(ξ s(a)) = ε(ξ t(a°))", (a, i))
    rep = new("module_algebra")
    for i in range(n):
        rep.record(b.dot(e[i], A.unit) == b.eps(e[i]), "ξ·1 = ε(ξ)", (i,))
        terms = list(t2.sect_terms(b.delta.col(i)))
        for a in range(d):
            for c in range(d):
                lhs: Vec = {}
                for m, k, co in terms:
                    axpy(lhs, co, A.mul(b.dot(e[m], ea[a]), b.dot(e[k], ea[c])))
                rep.record(lhs == b.dot(e[i], A.table[a][c]), "Σ(ξ1·a)(ξ2·b) = ξ·(ab)", (i, a, c))
    return reports


def all_passed(reports: Mapping[str, Report]) -> bool:
    return all(r.ok for r in reports.values())


def first_failure(reports: Mapping[str, Report]):
    for name, r in reports.items():
        if r.failures:
            return name, r.failures[0]
    return None
