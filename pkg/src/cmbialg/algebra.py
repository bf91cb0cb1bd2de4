"""Finite-dimensional unital algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import ValidationError
from .exactlin import ONE, Mat, Subspace, Vec, axpy, kernel_basis, q, solve, sub
from .report import Report

if TYPE_CHECKING:
    from .anchored_lie import AnchoredLie

DerivationMat = Mat  # d x d matrix, column j is the image of e_j


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    """Algebra with basis ``e_0..e_{dim-1}``; ``table[i][j]`` is ``e_i e_j``."""

    dim: int
    table: tuple[tuple[Vec, ...], ...]
    unit: Vec
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise ValidationError(f"multiplication table must be {self.dim}x{self.dim}")
        for r in self.table:
            for v in r:
                if any(not 0 <= k < self.dim for k in v):
                    raise ValidationError("product coordinate out of range")
        if any(not 0 <= k < self.dim for k in self.unit):
            raise ValidationError("unit coordinate out of range")

    @classmethod
    def from_constants(cls, sc: Sequence[Sequence[Sequence]], unit: Sequence, name: str = "A") -> FinAlgebra:
        """Build from dense ``sc[i][j][k]`` and a dense unit vector."""
        d = len(sc)
        table = []
        for i in range(d):
            if len(sc[i]) != d:
                raise ValidationError("structure constants must be dim x dim x dim", (i,))
            row = []
            for j in range(d):
                if len(sc[i][j]) != d:
                    raise ValidationError("structure constants must be dim x dim x dim", (i, j))
                row.append({k: q(x) for k, x in enumerate(sc[i][j]) if q(x)})
            table.append(tuple(row))
        if len(unit) != d:
            raise ValidationError("unit vector has wrong length")
        u = {k: q(x) for k, x in enumerate(unit) if q(x)}
        return cls(d, tuple(table), u, name)

    @property
    def sc(self) -> list[list[list]]:
        d = self.dim
        return [[[self.table[i][j].get(k, 0) for k in range(d)] for j in range(d)] for i in range(d)]

    def basis(self, i: int) -> Vec:
        return {i: ONE}

    def one(self) -> Vec:
        return dict(self.unit)

    def mul(self, u: Mapping, v: Mapping) -> Vec:
        out: Vec = {}
        t = self.table
        for i, x in u.items():
            ti = t[i]
            for j, y in v.items():
                axpy(out, x * y, ti[j])
        return out

    def commutator(self, u: Mapping, v: Mapping) -> Vec:
        return sub(self.mul(u, v), self.mul(v, u))

    def left_mult(self, x: Mapping) -> Mat:
        return Mat.from_columns(self.dim, [self.mul(x, {j: ONE}) for j in range(self.dim)])

    def right_mult(self, x: Mapping) -> Mat:
        return Mat.from_columns(self.dim, [self.mul({j: ONE}, x) for j in range(self.dim)])

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(d) for j in range(i + 1, d))

    def center(self) -> Subspace:
        return kernel_basis(_stack_columns([inner_derivation(self, {i: ONE}) for i in range(self.dim)], self.dim))

    def same_as(self, other: FinAlgebra) -> bool:
        return self.dim == other.dim and self.table == other.table and self.unit == other.unit

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.dim, tuple(tuple(sorted(v.items())) for r in self.table for v in r)))

    def __repr__(self) -> str:
        return f"<FinAlgebra {self.name} dim {self.dim}>"


def _stack_columns(mats: Sequence[Mat], d: int) -> Mat:
    # Matrix whose column i is the flattening of mats[i]; its kernel picks out
    # the combinations that vanish.
    cols = []
    for m in mats:
        v: Vec = {}
        for r, row in enumerate(m.rows()):
            for c, x in row.items():
                v[r * d + c] = x
        cols.append(v)
    return Mat.from_columns(d * d, cols)


def check_algebra(a: FinAlgebra) -> Report:
    """Exhaustive associativity and unit-law check."""
    rep = Report(f"algebra {a.name}")
    d = a.dim
    e = [{i: ONE} for i in range(d)]
    for i in range(d):
        rep.record(a.mul(a.unit, e[i]) == e[i], "left unit", (i,))
        rep.record(a.mul(e[i], a.unit) == e[i], "right unit", (i,))
    for i in range(d):
        for j in range(d):
            ij = a.table[i][j]
            for k in range(d):
                lhs = a.mul(ij, e[k])
                rhs = a.mul(e[i], a.table[j][k])
                rep.record(lhs == rhs, "associativity", (i, j, k))
    return rep


def opposite(a: FinAlgebra) -> FinAlgebra:
    d = a.dim
    table = tuple(tuple(dict(a.table[j][i]) for j in range(d)) for i in range(d))
    return FinAlgebra(d, table, dict(a.unit), f"{a.name}^op")


def tensor_product(a: FinAlgebra, b: FinAlgebra, name: str | None = None) -> FinAlgebra:
    """``a ⊗ b`` with basis index ``i * b.dim + j`` for ``e_i ⊗ f_j``."""
    da, db = a.dim, b.dim
    table = []
    for i in range(da):
        for j in range(db):
            row = []
            for k in range(da):
                for l in range(db):
                    out: Vec = {}
                    for p, x in a.table[i][k].items():
                        for r, y in b.table[j][l].items():
                            out[p * db + r] = x * y
                    row.append(out)
            table.append(tuple(row))
    unit = {p * db + r: x * y for p, x in a.unit.items() for r, y in b.unit.items()}
    return FinAlgebra(da * db, tuple(table), unit, name or f"{a.name}⊗{b.name}")


def enveloping(a: FinAlgebra) -> FinAlgebra:
    """``A ⊗ A^op``; basis index ``i * dim + j`` stands for ``e_i ⊗ e_j°``."""
    return tensor_product(a, opposite(a), f"{a.name}^e")


def is_derivation(a: FinAlgebra, d: Mat) -> bool:
    n = a.dim
    for i in range(n):
        di = d.col(i)
        for j in range(n):
            lhs = d.apply(a.table[i][j])
            rhs = a.mul(di, {j: ONE})
            axpy(rhs, ONE, a.mul({i: ONE}, d.col(j)))
            if lhs != rhs:
                return False
    return True


def derivations(a: FinAlgebra) -> list[DerivationMat]:
    """Echelonized basis of ``Der(A)``.

    Unknown ``x[r*dim + c]`` is the ``e_r`` coefficient of ``D(e_c)``; each
    basis pair ``(i, j)`` contributes the ``dim`` scalar equations of
    ``D(e_i e_j) = D(e_i) e_j + e_i D(e_j)``.
    """
    n = a.dim
    t = a.table
    rows = []
    for i in range(n):
        for j in range(n):
            eqs: list[Vec] = [{} for _ in range(n)]
            for m, c in t[i][j].items():
                for k in range(n):
                    axpy(eqs[k], c, {k * n + m: ONE})
            for m in range(n):
                for k, c in t[m][j].items():
                    axpy(eqs[k], -c, {m * n + i: ONE})
                for k, c in t[i][m].items():
                    axpy(eqs[k], -c, {m * n + j: ONE})
            rows.extend(e for e in eqs if e)
    ker = kernel_basis(Mat(len(rows), n * n, rows))
    out = []
    for v in ker.basis:
        mrows: list[Vec] = [{} for _ in range(n)]
        for idx, x in v.items():
            mrows[idx // n][idx % n] = x
        out.append(Mat(n, n, mrows))
    return out


def inner_derivation(a: FinAlgebra, x: Mapping) -> DerivationMat:
    """Matrix of ``b ↦ xb − bx``."""
    return Mat.from_columns(a.dim, [a.commutator(x, {j: ONE}) for j in range(a.dim)])


def commutator_lie(a: FinAlgebra) -> AnchoredLie:
    """``A`` with its commutator bracket, anchored by the adjoint action."""
    from .anchored_lie import AnchoredLie

    d = a.dim
    brackets = tuple(tuple(a.commutator({i: ONE}, {j: ONE}) for j in range(d)) for i in range(d))
    anchor = tuple(inner_derivation(a, {i: ONE}) for i in range(d))
    return AnchoredLie(a, d, brackets, anchor, name=f"L({a.name})")


def derivation_lie(a: FinAlgebra) -> AnchoredLie:
    """``Der(A)`` on the basis of :func:`derivations`, anchored by inclusion."""
    from .anchored_lie import AnchoredLie

    ders = derivations(a)
    n = a.dim
    flat = lambda m: {r * n + c: x for r, row in enumerate(m.rows()) for c, x in row.items()}
    basis = Mat.from_columns(n * n, [flat(m) for m in ders])
    brackets = []
    for x in ders:
        row = []
        for y in ders:
            c = solve(basis, flat(matrix_commutator(x, y)))
            if c is None:
                raise ArithmeticError("commutator of derivations left Der(A)")
            row.append(c)
        brackets.append(tuple(row))
    return AnchoredLie(a, len(ders), tuple(brackets), tuple(ders), name=f"Der({a.name})")


def matrix_commutator(x: Mat, y: Mat) -> Mat:
    return x @ y - y @ x


# --- standard examples ----------------------------------------------------

def ground_field() -> FinAlgebra:
    return FinAlgebra(1, (({0: ONE},),), {0: ONE}, "Q")


def dual_numbers() -> FinAlgebra:
    """``Q[ε]/(ε²)`` with basis ``(1, ε)``."""
    return FinAlgebra(2, (({0: ONE}, {1: ONE}), ({1: ONE}, {})), {0: ONE}, "Q[ε]/(ε²)")


def truncated_polynomials(n: int) -> FinAlgebra:
    """``Q[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
    table = tuple(tuple(({i + j: ONE} if i + j < n else {}) for j in range(n)) for i in range(n))
    return FinAlgebra(n, table, {0: ONE}, f"Q[x]/(x^{n})")


def matrix_algebra(n: int) -> FinAlgebra:
    """``Mat_n(Q)``; basis ``E_{ij}`` at index ``i*n + j``."""
    table = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    row.append({i * n + l: ONE} if j == k else {})
            table.append(tuple(row))
    unit = {i * n + i: ONE for i in range(n)}
    return FinAlgebra(n * n, tuple(table), unit, f"Mat_{n}")


def diagonal_algebra(n: int) -> FinAlgebra:
    """``Q^n`` with orthogonal idempotents."""
    table = tuple(tuple(({i: ONE} if i == j else {}) for j in range(n)) for i in range(n))
    return FinAlgebra(n, table, {i: ONE for i in range(n)}, f"Q^{n}")
