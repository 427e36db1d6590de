"""Exact sparse linear algebra over Q and over prime fields.

All homological computations in this package reduce to exact rank / kernel /
quotient computations on sparse matrices.  Everything here is exact: rational
work uses integer rows (denominators cleared once per row, content divided
out after each update), prime-field work uses ints mod p wrapped in a tiny
element class so that generic code can use ordinary operators.

Conventions
-----------
* A vector is a dict {index: scalar} with no explicit zeros.
* A SparseMatrix is column-major: ``cols[j][i]`` is the (i, j) entry.  A
  matrix of shape (m, n) represents a linear map k^n -> k^m acting on column
  vectors.
* Elimination works on rows, selects pivots from the sparsest active column
  (Markowitz-style, preferring unit entries), and -- over Q -- keeps rows as
  content-reduced integer vectors, which preserves rank, kernel and row span.
* Echelon output is a list of (pivot_col, row) in retirement order; a row
  retired at step t has zero coefficient in every pivot column retired before
  t, which is what the forward-reduction and back-substitution passes rely on.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence


class LinAlgError(ValueError):
    """A matrix does not satisfy what the operation requires (e.g. singular)."""


class TruncationError(ValueError):
    """A homology degree was requested that the truncated data cannot certify."""


class WellDefinednessError(ValueError):
    """An operator does not descend to the requested quotient."""


# ---------------------------------------------------------------------------
# fields and scalars
# ---------------------------------------------------------------------------


class GFElement:
    """An element of GF(p); supports field arithmetic via operators."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return GFElement(self.v + other.v, self.p)

    def __sub__(self, other):
        return GFElement(self.v - other.v, self.p)

    def __mul__(self, other):
        return GFElement(self.v * other.v, self.p)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFElement(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v}"


class RationalField:
    """The rationals; scalars are fractions.Fraction."""

    characteristic = 0
    name = "Q"

    @property
    def zero(self) -> Fraction:
        return _F0

    @property
    def one(self) -> Fraction:
        return _F1

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) for prime p; scalars are GFElement."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def from_int(self, n: int) -> GFElement:
        return GFElement(n, self.p)

    def coerce(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise TypeError("mixed prime fields")
            return x
        if isinstance(x, int):
            return GFElement(x, self.p)
        if isinstance(x, str):
            f = Fraction(x)
            return GFElement(f.numerator, self.p) / GFElement(f.denominator, self.p)
        if isinstance(x, Fraction):
            return GFElement(x.numerator, self.p) / GFElement(x.denominator, self.p)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_F0 = Fraction(0)
_F1 = Fraction(1)

QQ = RationalField()

Field = RationalField | PrimeField
Vec = dict  # {index: scalar}


# ---------------------------------------------------------------------------
# sparse vectors
# ---------------------------------------------------------------------------


def vec_iadd_scaled(target: Vec, src: Vec, c) -> Vec:
    """target += c * src, in place, dropping zeros."""
    if not c:
        return target
    for i, v in src.items():
        w = target.get(i)
        if w is None:
            target[i] = c * v
        else:
            w = w + c * v
            if w:
                target[i] = w
            else:
                del target[i]
    return target


def vec_scale(v: Vec, c) -> Vec:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def canonical_vec(v: Vec, field: Field) -> Vec:
    """Scale a nonzero vector to a canonical representative.

    Over Q: coprime integers with the lowest-index entry positive.
    Over GF(p): lowest-index entry equal to 1.
    """
    if not v:
        return {}
    lead = min(v)
    if field.characteristic == 0:
        den = 1
        for x in v.values():
            den = den * x.denominator // gcd(den, x.denominator)
        ints = {i: int(x * den) for i, x in v.items()}
        g = 0
        for x in ints.values():
            g = gcd(g, x)
        if ints[lead] < 0:
            g = -g
        return {i: Fraction(x // g) for i, x in ints.items()}
    return vec_scale(v, field.one / v[lead])


# ---------------------------------------------------------------------------
# sparse matrices
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Column-major sparse matrix over an exact field."""

    __slots__ = ("nrows", "ncols", "field", "cols")

    def __init__(self, nrows: int, ncols: int, field: Field, cols: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.cols = cols if cols is not None else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_entries(cls, nrows, ncols, field, entries: Iterable) -> "SparseMatrix":
        cols: dict = {}
        for i, j, val in entries:
            val = field.coerce(val)
            if not val:
                continue
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise LinAlgError(f"entry ({i},{j}) outside shape ({nrows},{ncols})")
            col = cols.setdefault(j, {})
            cur = col.get(i)
            new = val if cur is None else cur + val
            if new:
                col[i] = new
            elif cur is not None:
                del col[i]
        for j in [j for j, c in cols.items() if not c]:
            del cols[j]
        return cls(nrows, ncols, field, cols)

    @classmethod
    def from_columns(cls, nrows, field, columns: Sequence[Vec]) -> "SparseMatrix":
        cols = {j: dict(c) for j, c in enumerate(columns) if c}
        return cls(nrows, len(columns), field, cols)

    @classmethod
    def from_rows_dense(cls, rows: Sequence[Sequence], field: Field) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ent = [
            (i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v
        ]
        return cls.from_entries(nrows, ncols, field, ent)

    @classmethod
    def identity(cls, n: int, field: Field) -> "SparseMatrix":
        one = field.one
        return cls(n, n, field, {j: {j: one} for j in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field) -> "SparseMatrix":
        return cls(nrows, ncols, field, {})

    @classmethod
    def permutation(cls, perm: Sequence[int], field: Field) -> "SparseMatrix":
        """Matrix sending basis vector j to basis vector perm[j]."""
        n = len(perm)
        one = field.one
        return cls(n, n, field, {j: {perm[j]: one} for j in range(n)})

    # -- access -------------------------------------------------------------

    def column(self, j: int) -> Vec:
        return dict(self.cols.get(j, ()))

    def entry(self, i: int, j: int):
        return self.cols.get(j, {}).get(i, self.field.zero)

    def columns(self) -> Iterator[tuple[int, Vec]]:
        return iter(self.cols.items())

    def rows(self) -> dict:
        """Row-major copy {i: {j: val}}."""
        rows: dict = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def to_dense(self) -> list:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in self.cols.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"<SparseMatrix {self.nrows}x{self.ncols} over {self.field.name}, nnz={self.nnz()}>"

    # -- arithmetic ----------------------------------------------------------

    def apply(self, v: Vec) -> Vec:
        out: dict = {}
        cols = self.cols
        for j, c in v.items():
            col = cols.get(j)
            if col:
                vec_iadd_scaled(out, col, c)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise LinAlgError(
                f"shape mismatch: ({self.nrows},{self.ncols}) @ ({other.nrows},{other.ncols})"
            )
        cols = {}
        for j, col in other.cols.items():
            out = self.apply(col)
            if out:
                cols[j] = out
        return SparseMatrix(self.nrows, other.ncols, self.field, cols)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in addition")
        cols = {j: dict(c) for j, c in self.cols.items()}
        one = self.field.one
        for j, c in other.cols.items():
            tgt = cols.setdefault(j, {})
            vec_iadd_scaled(tgt, c, one)
            if not tgt:
                del cols[j]
        return SparseMatrix(self.nrows, self.ncols, self.field, cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-self.field.one)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-self.field.one)

    def scale(self, c) -> "SparseMatrix":
        if not c:
            return SparseMatrix.zero(self.nrows, self.ncols, self.field)
        cols = {j: {i: c * v for i, v in col.items()} for j, col in self.cols.items()}
        return SparseMatrix(self.nrows, self.ncols, self.field, cols)

    def transpose(self) -> "SparseMatrix":
        cols: dict = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                cols.setdefault(i, {})[j] = v
        return SparseMatrix(self.ncols, self.nrows, self.field, cols)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Tensor product; index (a, b) flattens to a * other.n + b."""
        on, om = other.nrows, other.ncols
        cols: dict = {}
        for j1, c1 in self.cols.items():
            for j2, c2 in other.cols.items():
                col = {}
                for i1, v1 in c1.items():
                    base = i1 * on
                    for i2, v2 in c2.items():
                        col[base + i2] = v1 * v2
                cols[j1 * om + j2] = col
        return SparseMatrix(self.nrows * on, self.ncols * om, self.field, cols)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.nrows != other.nrows:
            raise LinAlgError("row mismatch in hstack")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            cols[self.ncols + j] = dict(c)
        return SparseMatrix(self.nrows, self.ncols + other.ncols, self.field, cols)


def flip_matrix(d1: int, d2: int, field: Field) -> SparseMatrix:
    """The swap V1 (x) V2 -> V2 (x) V1 on flattened tensor indices."""
    one = field.one
    cols = {}
    for i in range(d1):
        for j in range(d2):
            cols[i * d2 + j] = {j * d1 + i: one}
    return SparseMatrix(d1 * d2, d1 * d2, field, cols)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _int_row(row: Vec) -> dict:
    """Clear denominators and content from a Fraction row; integer values."""
    den = 1
    for x in row.values():
        den = den * x.denominator // gcd(den, x.denominator)
    ints = {j: int(x * den) for j, x in row.items() if x}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    if g > 1:
        ints = {j: x // g for j, x in ints.items()}
    return ints


def _normalize_int_row(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        for j in list(row):
            row[j] //= g
    return row


class Echelon:
    """Result of row elimination: retired rows with their pivot columns.

    rows[t] has zero coefficient in pivots[s] for every s < t.  Over Q the
    retired rows hold ints; over GF(p) they hold GFElement.
    """

    __slots__ = ("field", "ncols", "pivots", "rows", "_pivot_set", "_leftovers")

    def __init__(self, field: Field, ncols: int, pivots: list, rows: list):
        self.field = field
        self.ncols = ncols
        self.pivots = pivots
        self.rows = rows
        self._pivot_set = set(pivots)
        self._leftovers: list = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_set(self) -> set:
        return self._pivot_set

    def free_cols(self) -> list:
        piv = self._pivot_set
        return [j for j in range(self.ncols) if j not in piv]

    def reduce(self, v: Vec) -> Vec:
        """Eliminate all pivot columns from v; the residual is supported on
        free columns and is zero iff v lies in the row span."""
        v = dict(v)
        fld = self.field
        rational = fld.characteristic == 0
        for pc, row in zip(self.pivots, self.rows):
            c = v.get(pc)
            if c:
                pv = row[pc]
                factor = (
                    -Fraction(c) / pv if rational else -(c / fld.coerce(pv))
                )
                coerce = Fraction if rational else fld.coerce
                for j, x in row.items():
                    w = v.get(j, fld.zero) + factor * coerce(x)
                    if w:
                        v[j] = w
                    elif j in v:
                        del v[j]
        return v

    def coords(self, v: Vec):
        """Coefficients c with v = sum c[t] * rows[t], or None if not in span."""
        v = dict(v)
        fld = self.field
        rational = fld.characteristic == 0
        coerce = Fraction if rational else fld.coerce
        out = []
        for pc, row in zip(self.pivots, self.rows):
            c = v.get(pc)
            if c:
                factor = coerce(c) / coerce(row[pc])
                out.append(factor)
                for j, x in row.items():
                    w = v.get(j, fld.zero) - factor * coerce(x)
                    if w:
                        v[j] = w
                    elif j in v:
                        del v[j]
            else:
                out.append(fld.zero)
        if v:
            return None
        return out

    def kernel_basis(self) -> list:
        """Canonical basis of {x : Rx = 0 for every retired row R}."""
        fld = self.field
        rational = fld.characteristic == 0
        coerce = Fraction if rational else fld.coerce
        order = list(range(len(self.pivots)))
        basis = []
        for f in self.free_cols():
            x: dict = {f: fld.one}
            for t in reversed(order):
                row = self.rows[t]
                pc = self.pivots[t]
                s = fld.zero
                for j, val in row.items():
                    if j != pc:
                        xc = x.get(j)
                        if xc:
                            s = s + coerce(val) * xc
                if s:
                    x[pc] = -s / coerce(row[pc])
            basis.append(canonical_vec(x, fld))
        return basis


def echelonize(rows: Iterable[Vec], field: Field, ncols: int, pivot_limit: int | None = None) -> Echelon:
    """Sparsity-pivoted Gaussian elimination on row vectors.

    ``pivot_limit`` restricts pivot choice to columns < pivot_limit (used for
    augmented solves, where right-hand-side columns must stay passive).
    """
    limit = ncols if pivot_limit is None else pivot_limit
    rational = field.characteristic == 0
    active: dict = {}
    col_rows: dict = {}
    heap: list = []

    def register(rid: int, row: dict):
        active[rid] = row
        for j in row:
            if j < limit:
                s = col_rows.setdefault(j, set())
                s.add(rid)
                # push only on first population: counts only grow on add, so
                # a stale smaller entry already queued keeps j discoverable,
                # and the pop loop re-queues the true count on a stale hit
                if len(s) == 1:
                    heapq.heappush(heap, (1, j))

    rid = 0
    for r in rows:
        if rational:
            row = _int_row(r)
        else:
            row = {j: field.coerce(v) for j, v in r.items() if field.coerce(v)}
        if row:
            register(rid, row)
            rid += 1

    pivots: list = []
    retired: list = []

    while heap:
        cnt, pc = heapq.heappop(heap)
        rows_here = col_rows.get(pc)
        if not rows_here or len(rows_here) != cnt:
            if rows_here:
                heapq.heappush(heap, (len(rows_here), pc))
            continue
        # pick the pivot row: prefer unit entries, then short rows
        best = None
        for r in rows_here:
            row = active[r]
            v = row[pc]
            key = (0 if (rational and v in (1, -1)) or (not rational) else 1, len(row), r)
            if best is None or key < best[0]:
                best = (key, r)
        prid = best[1]
        prow = active.pop(prid)
        pval = prow[pc]
        # unregister pivot row
        for j in prow:
            if j < limit:
                col_rows[j].discard(prid)
        # eliminate pc from the other rows
        victims = list(col_rows.get(pc, ()))
        for vrid in victims:
            vrow = active[vrid]
            vval = vrow[pc]
            # unregister old support
            for j in vrow:
                if j < limit:
                    col_rows[j].discard(vrid)
            if rational:
                g = gcd(pval, vval)
                ca, cb = pval // g, vval // g
                if ca != 1:
                    for j in list(vrow):
                        vrow[j] *= ca
                vec_iadd_scaled(vrow, prow, -cb)
                _normalize_int_row(vrow)
            else:
                vec_iadd_scaled(vrow, prow, -(vval / pval))
            del active[vrid]
            if vrow:
                register(vrid, vrow)
        col_rows.pop(pc, None)
        pivots.append(pc)
        retired.append(prow)

    # rows left active have support only beyond the pivot limit
    ech = Echelon(field, ncols, pivots, retired)
    ech._leftovers = [r for r in active.values() if r]
    return ech


def rank(m: SparseMatrix) -> int:
    return echelonize(m.rows().values(), m.field, m.ncols).rank


def rank_kernel(m: SparseMatrix) -> tuple[int, list]:
    """Rank and a canonical kernel basis of the column-vector map m."""
    ech = echelonize(m.rows().values(), m.field, m.ncols)
    return ech.rank, ech.kernel_basis()


def solve_matrix(a: SparseMatrix, rhs: SparseMatrix):
    """One solution X of a @ X = rhs, or None if any column is inconsistent.

    Free variables are set to zero.  Augmented elimination: right-hand-side
    entries ride along in columns >= a.ncols and are never chosen as pivots.
    """
    if a.nrows != rhs.nrows:
        raise LinAlgError("shape mismatch in solve")
    field = a.field
    n = a.ncols
    rows = a.rows()
    rrows = rhs.rows()
    merged = []
    for i in range(a.nrows):
        row = dict(rows.get(i, ()))
        for j, v in rrows.get(i, {}).items():
            row[n + j] = v
        if row:
            merged.append(row)
    ech = echelonize(merged, field, n + rhs.ncols, pivot_limit=n)
    if any(left for left in ech._leftovers):  # equations 0 = nonzero rhs
        return None
    rational = field.characteristic == 0
    coerce = Fraction if rational else field.coerce
    cols = {}
    order = list(range(ech.rank))
    for jrhs in range(rhs.ncols):
        x: dict = {}
        for t in reversed(order):
            row = ech.rows[t]
            pc = ech.pivots[t]
            acc = coerce(row[n + jrhs]) if (n + jrhs) in row else field.zero
            for j, val in row.items():
                if j != pc and j < n:
                    xc = x.get(j)
                    if xc:
                        acc = acc - coerce(val) * xc
            val = acc / coerce(row[pc])
            if val:
                x[pc] = val
        if x:
            cols[jrhs] = x
    return SparseMatrix(n, rhs.ncols, field, cols)


def solve(a: SparseMatrix, b: Vec):
    """One solution of a @ x = b, or None."""
    rhs = SparseMatrix(a.nrows, 1, a.field, {0: dict(b)} if b else {})
    x = solve_matrix(a, rhs)
    return None if x is None else x.column(0)


def invert(m: SparseMatrix) -> SparseMatrix:
    if m.nrows != m.ncols:
        raise LinAlgError("only square matrices can be inverted")
    x = solve_matrix(m, SparseMatrix.identity(m.nrows, m.field))
    if x is None or rank(m) != m.ncols:
        raise LinAlgError("matrix is singular")
    return x


# ---------------------------------------------------------------------------
# subspaces and quotients
# ---------------------------------------------------------------------------


class Subspace:
    """The span of a family of vectors inside k^ambient_dim."""

    def __init__(self, ambient_dim: int, field: Field, vectors: Iterable[Vec]):
        self.ambient_dim = ambient_dim
        self.field = field
        self._ech = echelonize(vectors, field, ambient_dim)
        self.basis = [
            canonical_vec({j: v for j, v in row.items()}, field)
            for row in self._ech.rows
        ]

    @property
    def dim(self) -> int:
        return self._ech.rank

    def contains(self, v: Vec) -> bool:
        return not self._ech.reduce(v)

    def basis_matrix(self) -> SparseMatrix:
        """Inclusion matrix: columns are the canonical basis vectors."""
        return SparseMatrix.from_columns(self.ambient_dim, self.field, self.basis)

    def coords(self, v: Vec):
        """Coordinates of v in the canonical basis, or None if outside."""
        mat = getattr(self, "_coord_cache", None)
        if mat is None:
            mat = self.basis_matrix()
            self._coord_cache = mat
        return solve(mat, v)


class QuotientSpace:
    """k^ambient_dim modulo the span of relator vectors.

    The quotient basis consists of the ambient coordinates that are not pivot
    columns of the relator echelon; ``project_vec`` reduces by the echelon and
    reads off those coordinates, ``section_vec`` embeds quotient basis vectors
    as ambient unit vectors (a genuine section: project o section = id).
    """

    def __init__(self, ambient_dim: int, field: Field, relators: Iterable[Vec]):
        self.ambient_dim = ambient_dim
        self.field = field
        self._ech = echelonize(relators, field, ambient_dim)
        self.free_cols = self._ech.free_cols()
        self._free_index = {c: k for k, c in enumerate(self.free_cols)}

    @property
    def dim(self) -> int:
        return len(self.free_cols)

    @property
    def relator_rank(self) -> int:
        return self._ech.rank

    def relator_span_vectors(self) -> list:
        """A spanning set of the relator span (the echelon rows as vectors)."""
        return [dict(r) for r in self._ech.rows]

    def project_vec(self, v: Vec) -> Vec:
        red = self._ech.reduce(v)
        idx = self._free_index
        return {idx[j]: val for j, val in red.items()}

    def section_vec(self, k: int) -> Vec:
        return {self.free_cols[k]: self.field.one}

    def contains_zero_class(self, v: Vec) -> bool:
        return not self._ech.reduce(v)

    def projection_matrix(self) -> SparseMatrix:
        cached = getattr(self, "_proj_cache", None)
        if cached is None:
            cols = {}
            for j in range(self.ambient_dim):
                col = self.project_vec({j: self.field.one})
                if col:
                    cols[j] = col
            cached = SparseMatrix(self.dim, self.ambient_dim, self.field, cols)
            self._proj_cache = cached
        return cached

    def section_matrix(self) -> SparseMatrix:
        cols = {k: {c: self.field.one} for k, c in enumerate(self.free_cols)}
        return SparseMatrix(self.ambient_dim, self.dim, self.field, cols)

    def induced_matrix(
        self,
        op: SparseMatrix,
        source: "QuotientSpace | None" = None,
        check: bool = True,
        what: str = "operator",
    ) -> SparseMatrix:
        """Transport an ambient operator to the quotient(s).

        op maps the source ambient space into this quotient's ambient space.
        With check=True, every vector spanning the source relator span must
        map into this quotient's relator span -- the well-definedness
        criterion; violations raise WellDefinednessError.
        """
        src = source if source is not None else self
        if op.ncols != src.ambient_dim or op.nrows != self.ambient_dim:
            raise LinAlgError("operator shape does not match ambient spaces")
        if check:
            for rvec in src._ech.rows:
                image = op.apply(
                    {j: Fraction(v) for j, v in rvec.items()}
                    if self.field.characteristic == 0
                    else {j: self.field.coerce(v) for j, v in rvec.items()}
                )
                if self._ech.reduce(image):
                    raise WellDefinednessError(
                        f"{what} does not preserve the relator span"
                    )
        cols = {}
        for k in range(src.dim):
            out = self.project_vec(op.apply(src.section_vec(k)))
            if out:
                cols[k] = out
        return SparseMatrix(self.dim, src.dim, self.field, cols)


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


def _ident(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _row_op(m: list, i: int, k: int, c: int):
    m[i] = [a + c * b for a, b in zip(m[i], m[k])]


def _col_op(m: list, j: int, k: int, c: int):
    for row in m:
        row[j] += c * row[k]


def _swap_rows(m: list, i: int, k: int):
    m[i], m[k] = m[k], m[i]


def _swap_cols(m: list, j: int, k: int):
    for row in m:
        row[j], row[k] = row[k], row[j]


def int_det(m: Sequence[Sequence[int]]) -> Fraction:
    """Exact determinant of a small integer matrix (fraction Gaussian)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def smith_normal_form(m: Sequence[Sequence[int]]):
    """U, D, V with U m V = D diagonal, d_i | d_{i+1}, U, V unimodular.

    Input is a dense integer matrix (list of rows); outputs are dense.
    """
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = _ident(nr)
    v = _ident(nc)

    def min_entry(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(best[2])):
                    best = (i, j, x)
        return best

    t = 0
    while t < min(nr, nc):
        found = min_entry(t)
        if found is None:
            break
        i, j, _ = found
        if i != t:
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)
        dirty = False
        for r in range(t + 1, nr):
            if a[r][t]:
                q = a[r][t] // a[t][t]
                _row_op(a, r, t, -q)
                _row_op(u, r, t, -q)
                if a[r][t]:
                    dirty = True
        for c in range(t + 1, nc):
            if a[t][c]:
                q = a[t][c] // a[t][t]
                _col_op(a, c, t, -q)
                _col_op(v, c, t, -q)
                if a[t][c]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block
        bad = None
        for r in range(t + 1, nr):
            for c in range(t + 1, nc):
                if a[r][c] % a[t][t]:
                    bad = r
                    break
            if bad is not None:
                break
        if bad is not None:
            _row_op(a, t, bad, 1)
            _row_op(u, t, bad, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    d = [[a[i][j] if i == j else 0 for j in range(nc)] for i in range(nr)]
    # sanity: the loop really produced a diagonal divisibility chain
    assert a == d, "SNF reduction left off-diagonal residue"
    for k in range(min(nr, nc) - 1):
        if d[k][k] and d[k + 1][k + 1] % d[k][k]:
            raise AssertionError("SNF divisibility chain violated")
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    return u, d, v


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list:
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a
    ]


# ---------------------------------------------------------------------------
# chain complexes
# ---------------------------------------------------------------------------


class ChainComplex:
    """A nonnegatively graded chain complex truncated at top_degree.

    dims[n] is the dimension of the degree-n term; diff(n) is the boundary
    C_n -> C_{n-1} for 1 <= n <= top_degree.  The composite of consecutive
    boundaries is verified to vanish at construction time.
    """

    def __init__(self, dims: Sequence[int], diffs: Sequence[SparseMatrix], field: Field):
        self.dims = list(dims)
        self.field = field
        self.top_degree = len(dims) - 1
        if len(diffs) != self.top_degree:
            raise LinAlgError("need exactly one boundary per positive degree")
        self._diffs = list(diffs)
        self._ranks: dict = {}
        for n, d in enumerate(self._diffs, start=1):
            if d.ncols != self.dims[n] or d.nrows != self.dims[n - 1]:
                raise LinAlgError(f"boundary {n} has wrong shape")
        for n in range(2, self.top_degree + 1):
            if not (self.diff(n - 1) @ self.diff(n)).is_zero():
                raise LinAlgError(f"boundary squared is nonzero at degree {n}")

    def diff(self, n: int) -> SparseMatrix:
        if not 1 <= n <= self.top_degree:
            raise TruncationError(f"no boundary stored at degree {n}")
        return self._diffs[n - 1]

    def boundary_rank(self, n: int) -> int:
        if n <= 0 or n > self.top_degree:
            return 0
        if n not in self._ranks:
            self._ranks[n] = rank(self._diffs[n - 1])
        return self._ranks[n]

    def homology_dim(self, n: int) -> int:
        if n < 0 or n > self.top_degree - 1:
            raise TruncationError(
                f"H_{n} needs the boundary from degree {n + 1}; "
                f"complex is truncated at {self.top_degree}"
            )
        return self.dims[n] - self.boundary_rank(n) - self.boundary_rank(n + 1)


def homology_dims(
    c: ChainComplex, low: int, high: int, jobs: int = 1
) -> list[int]:
    """[dim H_n for n in low..high]; raises TruncationError when the data
    cannot certify a requested degree."""
    if low < 0 or high > c.top_degree - 1:
        raise TruncationError(
            f"homology range [{low},{high}] not certified by a complex "
            f"truncated at degree {c.top_degree}"
        )
    needed = sorted({n for n in range(low, high + 2) if 1 <= n <= c.top_degree})
    if jobs > 1 and len(needed) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(c.boundary_rank, needed))
    return [c.homology_dim(n) for n in range(low, high + 1)]


class Bicomplex:
    """First-quadrant bicomplex with anticommuting squares.

    cells maps (p, q) -> dimension; horiz[(p, q)] : (p, q) -> (p-1, q) and
    vert[(p, q)] : (p, q) -> (p, q-1).  Construction verifies h o h = 0,
    v o v = 0 and h o v + v o h = 0 wherever all participating cells exist.
    """

    def __init__(self, cells: dict, horiz: dict, vert: dict, field: Field):
        self.cells = dict(cells)
        self.horiz = dict(horiz)
        self.vert = dict(vert)
        self.field = field
        for (p, q), m in self.horiz.items():
            if m.ncols != self.cells[(p, q)] or m.nrows != self.cells[(p - 1, q)]:
                raise LinAlgError(f"horizontal map at {(p, q)} has wrong shape")
        for (p, q), m in self.vert.items():
            if m.ncols != self.cells[(p, q)] or m.nrows != self.cells[(p, q - 1)]:
                raise LinAlgError(f"vertical map at {(p, q)} has wrong shape")
        for (p, q) in self.cells:
            h1 = self.horiz.get((p, q))
            h2 = self.horiz.get((p - 1, q))
            if h1 is not None and h2 is not None and not (h2 @ h1).is_zero():
                raise LinAlgError(f"horizontal squared nonzero at {(p, q)}")
            v1 = self.vert.get((p, q))
            v2 = self.vert.get((p, q - 1))
            if v1 is not None and v2 is not None and not (v2 @ v1).is_zero():
                raise LinAlgError(f"vertical squared nonzero at {(p, q)}")
            hv = (
                self.horiz.get((p, q - 1)),
                self.vert.get((p - 1, q)),
            )
            if v1 is not None and h1 is not None and hv[0] is not None and hv[1] is not None:
                if not (hv[0] @ v1 + hv[1] @ h1).is_zero():
                    raise LinAlgError(f"square at {(p, q)} does not anticommute")


def total_complex(b: Bicomplex, max_total_degree: int) -> ChainComplex:
    """Tot_n = direct sum of cells with p + q = n.

    The output complex runs through degree max_total_degree + 1 so that
    homology is certifiable through max_total_degree; every cell on the
    diagonals p + q <= max_total_degree + 1 must be populated (zero
    dimensions are fine), otherwise the truncation is insufficient.
    """
    layouts = []
    dims = []
    for n in range(max_total_degree + 2):
        cells = sorted((p, q) for (p, q) in b.cells if p + q == n)
        missing = [
            (p, n - p) for p in range(n + 1) if (p, n - p) not in b.cells
        ]
        if missing:
            raise TruncationError(
                f"total degree {n} needs missing cell(s) {missing}"
            )
        offs = {}
        o = 0
        for cell in cells:
            offs[cell] = o
            o += b.cells[cell]
        layouts.append(offs)
        dims.append(o)
    diffs = []
    for n in range(1, max_total_degree + 2):
        src = layouts[n]
        tgt = layouts[n - 1]
        entries = []
        for (p, q), off in src.items():
            for mp, cell_t in ((b.vert.get((p, q)), (p, q - 1)), (b.horiz.get((p, q)), (p - 1, q))):
                if mp is None or cell_t not in tgt:
                    continue
                toff = tgt[cell_t]
                for j, col in mp.cols.items():
                    for i, v in col.items():
                        entries.append((toff + i, off + j, v))
        diffs.append(
            SparseMatrix.from_entries(dims[n - 1], dims[n], b.field, entries)
        )
    return ChainComplex(dims, diffs, b.field)


@dataclass
class DegreeComparison:
    degree: int
    source_dim: int
    target_dim: int
    induced_rank: int

    @property
    def iso(self) -> bool:
        return self.source_dim == self.target_dim == self.induced_rank


@dataclass
class QuasiIsoReport:
    chain_map_ok: bool
    degrees: list
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.chain_map_ok and all(d.iso for d in self.degrees)


def quasi_iso_check(
    f: dict, c: ChainComplex, d: ChainComplex, low: int, high: int
) -> QuasiIsoReport:
    """Certify that a chain map induces isomorphisms H_n(C) -> H_n(D).

    f maps degrees to matrices f[n] : C_n -> D_n.  For each degree the rank
    of the induced map is computed exactly as rank([f K | im]) - rank(im)
    where K is a kernel basis upstairs and im the boundary image downstairs.
    """
    chain_ok = True
    witness = None
    for n, fn in sorted(f.items()):
        if n - 1 in f and 1 <= n <= min(c.top_degree, d.top_degree):
            lhs = d.diff(n) @ fn
            rhs = f[n - 1] @ c.diff(n)
            if lhs != rhs:
                chain_ok = False
                witness = f"chain-map square fails at degree {n}"
                break
    degrees = []
    for n in range(low, high + 1):
        if n not in f:
            raise TruncationError(f"no chain-map component at degree {n}")
        hc = c.homology_dim(n)
        hd = d.homology_dim(n)
        if n == 0:
            kernel = [
                {j: c.field.one} for j in range(c.dims[0])
            ]
        else:
            _, kernel = rank_kernel(c.diff(n))
        fk = SparseMatrix.from_columns(
            d.dims[n], d.field, [f[n].apply(v) for v in kernel]
        )
        if n + 1 <= d.top_degree:
            bd = d.diff(n + 1)
        else:
            raise TruncationError(
                f"image at degree {n} needs the boundary from degree {n + 1}"
            )
        stacked = fk.hstack(bd)
        induced = rank(stacked) - d.boundary_rank(n + 1)
        degrees.append(DegreeComparison(n, hc, hd, induced))
    return QuasiIsoReport(chain_ok, degrees, witness)


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Map preserving order; uses a thread pool when jobs > 1 (results are
    identical either way -- all workloads here are pure functions)."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
