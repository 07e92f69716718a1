"""Exact dense linear algebra over the rationals and prime fields.

Scalars are plain Python values: ``fractions.Fraction`` over the rationals,
``int`` in the range [0, p) over GF(p).  A ``Field`` object owns the
arithmetic so the elimination routines stay generic.  Everything here is
exact; no floats appear anywhere in the package.

Matrices are immutable by convention: no public routine mutates its inputs,
and ``Matrix`` instances may be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError, InvariantError


class Field:
    """Arithmetic context for an exact field."""

    kind: str
    characteristic: int

    def of(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        return f"GF({self.characteristic})"


class _Rationals(Field):
    kind = "rationals"
    characteristic = 0

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise InvariantError(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def parse(self, text: str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational literal {text!r}") from exc

    def format(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class _PrimeField(Field):
    kind = "prime_field"

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InvariantError(f"{p} is not prime")
        self.characteristic = p

    def of(self, x):
        if isinstance(x, int):
            return x % self.characteristic
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            # convenience for literals shared with QQ test data
            if x.denominator % self.characteristic == 0:
                raise InvariantError(f"{x} has no image in GF({self.characteristic})")
            return self.of(x.numerator) * pow(x.denominator, -1, self.characteristic) % self.characteristic
        raise InvariantError(f"cannot coerce {x!r} into GF({self.characteristic})")

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.characteristic)

    def parse(self, text: str):
        try:
            value = int(text)
        except ValueError as exc:
            raise FormatError(f"bad GF({self.characteristic}) literal {text!r}") from exc
        if not 0 <= value < self.characteristic:
            raise FormatError(
                f"literal {text!r} outside [0, {self.characteristic}) for GF({self.characteristic})"
            )
        return value

    def format(self, a) -> str:
        return str(a % self.characteristic)


QQ: Field = _Rationals()

_gf_cache: dict[int, Field] = {}


def GF(p: int) -> Field:
    """Return the field with p elements (p prime); instances are cached."""
    if p not in _gf_cache:
        _gf_cache[p] = _PrimeField(p)
    return _gf_cache[p]


def field_from_spec(kind: str, characteristic: int) -> Field:
    if kind == "rationals":
        if characteristic != 0:
            raise FormatError("rationals must have characteristic 0")
        return QQ
    if kind == "prime_field":
        return GF(characteristic)
    raise FormatError(f"unknown field kind {kind!r}")


class Matrix:
    """Immutable dense matrix with row-major flat storage."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: list):
        if rows < 0 or cols < 0:
            raise InvariantError("negative matrix dimensions")
        if len(entries) != rows * cols:
            raise InvariantError(
                f"entry count {len(entries)} does not match shape {rows}x{cols}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise InvariantError("ragged rows")
            flat.extend(field.of(x) for x in row)
        return cls(field, r, c, flat)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        flat = [z] * (n * n)
        for i in range(n):
            flat[i * n + i] = o
        return cls(field, n, n, flat)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Matrix":
        return cls(field, len(values), 1, [field.of(v) for v in values])

    # -- access ------------------------------------------------------------

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for x in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field:
            raise InvariantError("field mismatch")
        if self.shape != other.shape:
            raise InvariantError(f"shape mismatch {self.shape} vs {other.shape}")

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        flat = [f.add(a, b) for a, b in zip(self.entries, other.entries)]
        return Matrix(f, self.rows, self.cols, flat)

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        flat = [f.sub(a, b) for a, b in zip(self.entries, other.entries)]
        return Matrix(f, self.rows, self.cols, flat)

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.of(c)
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise InvariantError("field mismatch")
        if self.cols != other.rows:
            raise InvariantError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        n, m, k = self.rows, self.cols, other.cols
        z = f.zero
        out = [z] * (n * k)
        se, oe = self.entries, other.entries
        for i in range(n):
            base = i * m
            for l in range(m):
                a = se[base + l]
                if a == z:
                    continue
                ob = l * k
                rb = i * k
                for j in range(k):
                    out[rb + j] = f.add(out[rb + j], f.mul(a, oe[ob + j]))
        return Matrix(f, n, k, out)

    def transpose(self) -> "Matrix":
        f = self.field
        out = [f.zero] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[i * self.cols + j]
        return Matrix(f, self.cols, self.rows, out)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.to_rows()!r})"


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices with equal row counts side by side."""
    if not blocks:
        raise InvariantError("hstack of nothing")
    f = blocks[0].field
    r = blocks[0].rows
    for b in blocks:
        if b.field != f or b.rows != r:
            raise InvariantError("hstack shape/field mismatch")
    flat = []
    for i in range(r):
        for b in blocks:
            flat.extend(b.row(i))
    return Matrix(f, r, sum(b.cols for b in blocks), flat)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise InvariantError("vstack of nothing")
    f = blocks[0].field
    c = blocks[0].cols
    flat = []
    for b in blocks:
        if b.field != f or b.cols != c:
            raise InvariantError("vstack shape/field mismatch")
        flat.extend(b.entries)
    return Matrix(f, sum(b.rows for b in blocks), c, flat)


def mat_from_cols(field: Field, nrows: int, cols: Iterable[Sequence]) -> Matrix:
    """Build a matrix from an iterable of length-nrows column vectors."""
    cols = list(cols)
    flat = [field.zero] * (nrows * len(cols))
    for j, col in enumerate(cols):
        if len(col) != nrows:
            raise InvariantError("column length mismatch")
        for i, v in enumerate(col):
            flat[i * len(cols) + j] = field.of(v)
    return Matrix(field, nrows, len(cols), flat)


# -- elimination -----------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with leftmost pivots and unit leading entries.

    Returns the reduced matrix and the tuple of pivot column indices.  The
    output is canonical: equal row spaces give equal results.
    """
    f = m.field
    z = f.zero
    rows = [m.row(i) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != z:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        lead = rows[r][c]
        if lead != f.one:
            inv = f.inv(lead)
            rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i == r:
                continue
            factor = rows[i][c]
            if factor != z:
                ri, rr = rows[i], rows[r]
                rows[i] = [f.sub(ri[j], f.mul(factor, rr[j])) for j in range(m.cols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    flat = [x for row in rows for x in row]
    return Matrix(f, m.rows, m.cols, flat), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace_basis(m: Matrix) -> list[Matrix]:
    """Canonical kernel basis: one column vector per free column of rref(m).

    Free columns are taken in increasing order and each basis vector has a 1
    in its free coordinate, so the result is determined by the row space.
    """
    f = m.field
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [f.zero] * m.cols
        vec[fc] = f.one
        for r_idx, pc in enumerate(pivots):
            vec[pc] = f.neg(red.at(r_idx, fc))
        basis.append(Matrix(f, m.cols, 1, vec))
    return basis


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution X of a*X = b with free variables set to zero, else None."""
    if a.field != b.field:
        raise InvariantError("field mismatch")
    if a.rows != b.rows:
        raise InvariantError("row count mismatch in solve")
    f = a.field
    red, pivots = rref(hstack([a, b]))
    # inconsistent iff some pivot lands in the b block
    for p in pivots:
        if p >= a.cols:
            return None
    x = [f.zero] * (a.cols * b.cols)
    for r_idx, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc * b.cols + j] = red.at(r_idx, a.cols + j)
    return Matrix(f, a.cols, b.cols, x)


def inverse(m: Matrix) -> Matrix | None:
    if not m.is_square():
        return None
    if m.rows == 0:
        return Matrix(m.field, 0, 0, [])
    red, pivots = rref(hstack([m, Matrix.identity(m.field, m.rows)]))
    if len(pivots) != m.rows or any(p >= m.cols for p in pivots):
        return None
    flat = []
    for i in range(m.rows):
        flat.extend(red.row(i)[m.cols :])
    return Matrix(m.field, m.rows, m.rows, flat)


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.rows


def column_space_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column space, returned as the columns of a matrix.

    Computed as the nonzero rows of rref(m^T), so the basis depends only on
    the column space itself, not on the generating order.
    """
    red, pivots = rref(m.transpose())
    cols = [red.row(i) for i in range(len(pivots))]
    return mat_from_cols(m.field, m.rows, cols)


def quotient_map(basis: Matrix) -> Matrix:
    """Projection q onto complementary coordinates of a subspace.

    ``basis`` holds spanning columns of a subspace U of k^n.  Returns a
    (n - dim U) x n matrix q with ker q = U, built from rref data: eliminate
    each echelon row at its pivot coordinate, then keep the non-pivot
    coordinate rows.  Canonical for a given U.
    """
    f = basis.field
    n = basis.rows
    red, pivots = rref(basis.transpose())
    r = len(pivots)
    pivot_set = set(pivots)
    nonpivot = [c for c in range(n) if c not in pivot_set]
    flat = []
    for c in nonpivot:
        row = [f.zero] * n
        row[c] = f.one
        for i, p in enumerate(pivots):
            row[p] = f.neg(red.at(i, c))
        flat.extend(row)
    return Matrix(f, n - r, n, flat)


def preimage_basis(a: Matrix, target: Matrix) -> Matrix:
    """Canonical basis (as columns) of {x : a*x lies in the column space of target}."""
    q = quotient_map(column_space_basis(target))
    comp = q.mul(a)
    vecs = nullspace_basis(comp)
    if not vecs:
        return Matrix(a.field, a.cols, 0, [])
    return column_space_basis(hstack(vecs))


def columns_contained(inner: Matrix, outer: Matrix) -> bool:
    """Whether every column of ``inner`` lies in the column space of ``outer``."""
    if inner.cols == 0:
        return True
    return rank(hstack([outer, inner])) == rank(outer)
