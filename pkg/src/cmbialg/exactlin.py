"""Exact rational linear algebra.

Scalars are :class:`gmpy2.mpq` rationals.  Vectors are sparse dictionaries
``{coordinate: nonzero scalar}``; zero entries are never stored.  Matrices
(:class:`Mat`) keep sparse rows and lazily build sparse columns.

Every routine here is deterministic: echelon forms always pivot on the
leftmost available column, so subspaces and quotients have a unique
representation and can be compared structurally.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import gmpy2

Scalar = type(gmpy2.mpq())
Vec = dict  # dict[int, Scalar]

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def q(x) -> Scalar:
    """Coerce ``x`` to an exact rational.

    Accepts ints, :class:`fractions.Fraction`, ``mpq`` and strings of the form
    ``"p"`` or ``"p/q"``.  Floats are rejected outright.
    """
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return gmpy2.mpq(x)
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        text = x.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {x!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return gmpy2.mpq(n, d)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt(x: Scalar) -> str:
    """Canonical ``p/q`` (or ``p``) rendering of a scalar."""
    x = q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# --- sparse vectors -------------------------------------------------------

def vec(values: Sequence) -> Vec:
    """Sparse vector from a dense sequence."""
    out = {}
    for i, x in enumerate(values):
        x = q(x)
        if x:
            out[i] = x
    return out


def unit(i: int, c=ONE) -> Vec:
    return {i: q(c)} if c else {}


def dense(v: Mapping[int, Scalar], n: int) -> list[Scalar]:
    out = [ZERO] * n
    for i, x in v.items():
        out[i] = x
    return out


def axpy(dst: Vec, c: Scalar, src: Mapping[int, Scalar]) -> Vec:
    """In place ``dst += c * src``; returns ``dst``."""
    if not c:
        return dst
    for k, x in src.items():
        y = dst.get(k)
        if y is None:
            dst[k] = c * x
        else:
            y = y + c * x
            if y:
                dst[k] = y
            else:
                del dst[k]
    return dst


def scaled(v: Mapping[int, Scalar], c) -> Vec:
    c = q(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def add(*vs: Mapping[int, Scalar]) -> Vec:
    out: Vec = {}
    for v in vs:
        axpy(out, ONE, v)
    return out


def sub(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
    return axpy(dict(u), -ONE, v)


# --- matrices --------------------------------------------------------------

class Mat:
    """Immutable sparse matrix over the rationals.

    ``Mat`` is a linear map ``K^ncols -> K^nrows``; ``m.col(j)`` is the image
    of the ``j``-th basis vector.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, Scalar]]):
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        self.nrows = nrows
        self.ncols = ncols
        clean = []
        for r in rows:
            row = {}
            for k, x in r.items():
                if not 0 <= k < ncols:
                    raise ValueError(f"column index {k} out of range for {ncols} columns")
                if x:
                    row[k] = q(x)
            clean.append(row)
        self._rows = tuple(clean)
        self._cols = None

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence]) -> Mat:
        nrows = len(grid)
        ncols = len(grid[0]) if nrows else 0
        if any(len(r) != ncols for r in grid):
            raise ValueError("ragged matrix")
        return cls(nrows, ncols, [vec(r) for r in grid])

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Mapping[int, Scalar]]) -> Mat:
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, x in c.items():
                if not 0 <= i < nrows:
                    raise ValueError(f"row index {i} out of range for {nrows} rows")
                if x:
                    rows[i][j] = x
        m = cls(nrows, len(cols), rows)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Mat:
        return cls(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, [{i: ONE} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> Mapping[int, Scalar]:
        return self._rows[i]

    def rows(self) -> tuple[Mapping[int, Scalar], ...]:
        return self._rows

    def _columns(self) -> tuple[dict, ...]:
        if self._cols is None:
            cols: list[dict] = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self._rows):
                for j, x in r.items():
                    cols[j][i] = x
            self._cols = tuple(cols)
        return self._cols

    def col(self, j: int) -> Mapping[int, Scalar]:
        return self._columns()[j]

    def columns(self) -> tuple[Mapping[int, Scalar], ...]:
        return self._columns()

    def apply(self, v: Mapping[int, Scalar]) -> Vec:
        cols = self._columns()
        out: Vec = {}
        for j, x in v.items():
            axpy(out, x, cols[j])
        return out

    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat.from_columns(self.nrows, [self.apply(c) for c in other.columns()])

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat(self.nrows, self.ncols, [add(a, b) for a, b in zip(self._rows, other._rows)])

    def __sub__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat(self.nrows, self.ncols, [sub(a, b) for a, b in zip(self._rows, other._rows)])

    def __neg__(self) -> Mat:
        return self.scale(-1)

    def scale(self, c) -> Mat:
        return Mat(self.nrows, self.ncols, [scaled(r, c) for r in self._rows])

    def transpose(self) -> Mat:
        return Mat(self.ncols, self.nrows, self._columns())

    @property
    def T(self) -> Mat:
        return self.transpose()

    def to_dense(self) -> list[list[Scalar]]:
        return [dense(r, self.ncols) for r in self._rows]

    def is_zero(self) -> bool:
        return not any(self._rows)

    def rank(self) -> int:
        return rank(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            body = [[fmt(x) for x in r] for r in self.to_dense()]
            return f"Mat({body})"
        nnz = sum(len(r) for r in self._rows)
        return f"<Mat {self.nrows}x{self.ncols}, {nnz} nonzeros>"


def hstack(*mats: Mat) -> Mat:
    nrows = mats[0].nrows
    cols = []
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack needs equal row counts")
        cols.extend(m.columns())
    return Mat.from_columns(nrows, cols)


def vstack(*mats: Mat) -> Mat:
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack needs equal column counts")
        rows.extend(m.rows())
    return Mat(len(rows), ncols, rows)


# --- incremental echelon ---------------------------------------------------

def _reduce(pivot_rows: Mapping[int, Mapping[int, Scalar]], v: Mapping[int, Scalar]) -> Vec:
    # Pivot rows carry zeros in every other pivot column, so one pass suffices.
    w = dict(v)
    for p in [c for c in w if c in pivot_rows]:
        c = w.pop(p)
        for k, x in pivot_rows[p].items():
            if k == p:
                continue
            y = w.get(k)
            if y is None:
                w[k] = -c * x
            else:
                y = y - c * x
                if y:
                    w[k] = y
                else:
                    del w[k]
    return w


class Echelon:
    """Reduced row-echelon form maintained under row insertion.

    Rows are normalised to a leading 1 and kept fully reduced against each
    other, so the state after any sequence of insertions is the unique RREF
    of the span inserted so far.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, Vec] = {}
        self._occ: defaultdict[int, set[int]] = defaultdict(set)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[int, Scalar]) -> Vec:
        return _reduce(self.rows, v)

    def add(self, v: Mapping[int, Scalar]) -> bool:
        """Insert ``v``; return True iff the rank grew."""
        w = _reduce(self.rows, v)
        if not w:
            return False
        p = min(w)
        c = w[p]
        if c != ONE:
            inv = ONE / c
            w = {k: x * inv for k, x in w.items()}
        occ = self._occ
        for r in occ.pop(p, ()):
            row = self.rows[r]
            c2 = row.pop(p)
            for k, x in w.items():
                if k == p:
                    continue
                y = row.get(k)
                if y is None:
                    row[k] = -c2 * x
                    occ[k].add(r)
                else:
                    y = y - c2 * x
                    if y:
                        row[k] = y
                    else:
                        del row[k]
                        occ[k].discard(r)
        self.rows[p] = w
        for k in w:
            if k != p:
                occ[k].add(p)
        return True

    def extend(self, vs: Iterable[Mapping[int, Scalar]]) -> Echelon:
        for v in vs:
            self.add(v)
        return self

    def sorted_rows(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]


def rref(m: Mat) -> Mat:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    rows = Echelon(m.ncols).extend(m.rows()).sorted_rows()
    rows = rows + [{} for _ in range(m.nrows - len(rows))]
    return Mat(m.nrows, m.ncols, rows)


def rank(m: Mat) -> int:
    return len(Echelon(m.ncols).extend(m.rows()))


# --- subspaces -------------------------------------------------------------

class Subspace:
    """A subspace of ``K^ambient_dim`` stored by its RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_by_pivot")

    def __init__(self, ambient_dim: int, echelon: Echelon | None = None):
        self.ambient_dim = ambient_dim
        rows = echelon.rows if echelon is not None else {}
        self.pivots = tuple(sorted(rows))
        self.basis = tuple(rows[p] for p in self.pivots)
        self._by_pivot = dict(zip(self.pivots, self.basis))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, Scalar]]) -> Subspace:
        return cls(ambient_dim, Echelon(ambient_dim).extend(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls.span(ambient_dim, ({i: ONE} for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, v: Mapping[int, Scalar]) -> Vec:
        return _reduce(self._by_pivot, v)

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coords(self, v: Mapping[int, Scalar]) -> Vec:
        """Coordinates of ``v`` in this basis; raises if ``v`` is outside."""
        if self.reduce(v):
            raise ValueError("vector does not lie in the subspace")
        return {i: v[p] for i, p in enumerate(self.pivots) if p in v}

    def vector(self, coords: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, c in coords.items():
            axpy(out, c, self.basis[i])
        return out

    def issubset(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: Subspace) -> bool:
        return self.issubset(other)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        e = Echelon(self.ambient_dim)
        e.extend(self.basis)
        e.extend(other.basis)
        return Subspace(self.ambient_dim, e)

    def as_mat(self) -> Mat:
        return Mat(self.dim, self.ambient_dim, self.basis)

    def inclusion(self) -> Mat:
        """Matrix whose columns are the basis vectors."""
        return Mat.from_columns(self.ambient_dim, self.basis)

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(sorted(b.items())) for b in self.basis)))

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.basis)

    def __repr__(self) -> str:
        return f"<Subspace dim {self.dim} in K^{self.ambient_dim}>"


def kernel_basis(m: Mat) -> Subspace:
    """Echelonized basis of the right null space of ``m``."""
    e = Echelon(m.ncols).extend(m.rows())
    pivots = set(e.rows)
    by_col: defaultdict[int, list[tuple[int, Scalar]]] = defaultdict(list)
    for p, row in e.rows.items():
        for k, x in row.items():
            if k != p:
                by_col[k].append((p, x))
    kern = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: ONE}
        for p, x in by_col.get(f, ()):
            v[p] = -x
        kern.append(v)
    return Subspace.span(m.ncols, kern)


def image(m: Mat) -> Subspace:
    return Subspace.span(m.nrows, m.columns())


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Echelon basis of ``a ∩ b``."""
    a._check(b)
    residues = Mat.from_columns(a.ambient_dim, [a.reduce(v) for v in b.basis])
    k = kernel_basis(residues)
    return Subspace.span(a.ambient_dim, (b.vector(c) for c in k.basis))


def solve(m: Mat, rhs: Mapping[int, Scalar]) -> Vec | None:
    """A particular solution of ``m x = rhs`` (free variables set to 0), or None."""
    n = m.ncols
    e = Echelon(n + 1)
    for i, r in enumerate(m.rows()):
        row = dict(r)
        if i in rhs:
            row[n] = rhs[i]
        e.add(row)
    # Rows of rhs with no matrix row never appear; anything past nrows is inconsistent.
    if any(i >= m.nrows for i in rhs):
        return None
    if n in e.rows:
        return None
    return {p: row[n] for p, row in e.rows.items() if n in row}


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise ValueError("only square matrices are invertible")
    n = m.ncols
    e = Echelon(2 * n)
    for i, r in enumerate(m.rows()):
        row = dict(r)
        row[n + i] = ONE
        e.add(row)
    if any(p not in e.rows for p in range(n)):
        raise ValueError("matrix is singular")
    return Mat(n, n, [{k - n: x for k, x in e.rows[p].items() if k >= n} for p in range(n)])


# --- quotients -------------------------------------------------------------

class QuotientSpace:
    """``K^ambient_dim`` modulo a relation subspace.

    Quotient coordinates are the non-pivot ambient coordinates of the
    relations' RREF, in increasing order.  The fixed section sends quotient
    basis vector ``i`` to the ambient basis vector ``free[i]``.
    """

    __slots__ = ("ambient_dim", "relations", "free", "_free_index", "_proj", "_sect")

    def __init__(self, ambient_dim: int, relations: Subspace):
        self.ambient_dim = ambient_dim
        self.relations = relations
        piv = set(relations.pivots)
        self.free = tuple(c for c in range(ambient_dim) if c not in piv)
        self._free_index = {c: i for i, c in enumerate(self.free)}
        self._proj = None
        self._sect = None

    @property
    def dim(self) -> int:
        return len(self.free)

    def proj_vec(self, v: Mapping[int, Scalar]) -> Vec:
        fi = self._free_index
        return {fi[c]: x for c, x in self.relations.reduce(v).items()}

    def sect_vec(self, coords: Mapping[int, Scalar]) -> Vec:
        return {self.free[i]: x for i, x in coords.items()}

    @property
    def proj(self) -> Mat:
        if self._proj is None:
            self._proj = Mat.from_columns(
                self.dim, [self.proj_vec({c: ONE}) for c in range(self.ambient_dim)]
            )
        return self._proj

    @property
    def sect(self) -> Mat:
        if self._sect is None:
            self._sect = Mat.from_columns(self.ambient_dim, [{c: ONE} for c in self.free])
        return self._sect

    def __repr__(self) -> str:
        return f"<QuotientSpace dim {self.dim} = {self.ambient_dim} - {self.relations.dim}>"


def quotient_by(ambient_dim: int, relations: Iterable[Mapping[int, Scalar]]) -> QuotientSpace:
    return QuotientSpace(ambient_dim, Subspace.span(ambient_dim, relations))
