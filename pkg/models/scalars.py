"""
Exact scalars and dense linear algebra over Q and F_p.

Matrices act on column vectors from the left, so mat_mul(a, b) is the linear
map "apply b, then a". Entries are sympy domain elements (QQ or GF(p)) kept in
row-major tuples; elimination is delegated to sympy's DomainMatrix.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping, Sequence

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from models.errors import FieldMismatchError, ShapeError


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    PRIME = "Fp"


@functools.lru_cache(maxsize=None)
def _domain(kind, p):
    if kind is FieldKind.RATIONALS:
        return QQ
    # symmetric=False keeps representatives in [0, p)
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: Q, or F_p for a prime p."""

    kind: FieldKind = FieldKind.RATIONALS
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if self.p is None or self.p < 2 or not isprime(self.p):
                raise ValueError(f"p={self.p} is not a prime modulus")
        elif self.p is not None:
            raise ValueError("a modulus only makes sense for prime fields")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls()

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(FieldKind.PRIME, int(p))

    @classmethod
    def parse(cls, label: str) -> FieldSpec:
        """Accepts the CLI labels: Q, F2, F5, ..."""
        text = label.strip()
        if text.upper() in ("Q", "QQ"):
            return cls.rationals()
        if text[:1].upper() == "F" and text[1:].isdigit():
            return cls.prime(int(text[1:]))
        raise ValueError(f"unknown field {label!r} (expected Q or F<p>)")

    @property
    def is_prime(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def label(self) -> str:
        return f"F{self.p}" if self.is_prime else "Q"

    @property
    def domain(self):
        return _domain(self.kind, self.p)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def scalar(self, value):
        """Converts ints, Fractions, scalar strings or domain elements."""
        domain = self.domain
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return domain(value)
        if isinstance(value, Fraction):
            return domain(value.numerator) / domain(value.denominator)
        return domain.convert(value)

    def parse_scalar(self, text: str):
        value = Rational(text.strip())
        if self.is_prime:
            if value.q != 1:
                raise ValueError(f"{text!r} is not an element of {self.label}")
            return self.domain(int(value.p))
        return self.domain.from_sympy(value)

    def format_scalar(self, value) -> str:
        as_sympy = self.domain.to_sympy(value)
        if self.is_prime:
            return str(int(as_sympy) % self.p)
        return str(as_sympy)

    def to_json(self) -> dict:
        if self.is_prime:
            return {"kind": "Fp", "p": self.p}
        return {"kind": "Q"}

    @classmethod
    def from_json(cls, payload: Mapping) -> FieldSpec:
        kind = payload.get("kind")
        if kind == "Q":
            return cls.rationals()
        if kind == "Fp":
            return cls.prime(payload["p"])
        raise ValueError(f"unknown field kind {kind!r}")


@dataclass(frozen=True)
class Matrix:
    """An exact rows x cols matrix over `field`."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ShapeError(f"entries do not fill a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = tuple(tuple(field.scalar(x) for x in row) for row in rows)
        return cls(field, len(rows), cols, entries)

    @classmethod
    def from_domain_matrix(cls, field: FieldSpec, dm: DomainMatrix) -> Matrix:
        rows, cols = dm.shape
        if rows == 0 or cols == 0:
            return zeros(field, rows, cols)
        return cls(field, rows, cols, tuple(tuple(row) for row in dm.to_list()))

    @cached_property
    def rep(self) -> DomainMatrix:
        # sparse: structure maps are mostly permutation blocks
        rows = {}
        for i, j, value in self.nonzeros:
            rows.setdefault(i, {})[j] = value
        return DomainMatrix(rows, (self.rows, self.cols), self.field.domain)

    @cached_property
    def nonzeros(self) -> tuple[tuple[int, int, Any], ...]:
        return tuple(
            (i, j, value)
            for i, row in enumerate(self.entries)
            for j, value in enumerate(row)
            if value
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in row) for row in self.entries)
        return f"Matrix<{self.field.label} {self.rows}x{self.cols}>[{body}]"

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __add__(self, other: Matrix) -> Matrix:
        _check_same(self, other)
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(-x for x in row) for row in self.entries))

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, factor) -> Matrix:
        c = self.field.scalar(factor)
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def submatrix(self, row_range: range, col_range: range) -> Matrix:
        return Matrix(
            self.field,
            len(row_range),
            len(col_range),
            tuple(tuple(self.entries[i][j] for j in col_range) for i in row_range),
        )

    def columns(self, indices: Sequence[int]) -> Matrix:
        return self.submatrix(range(self.rows), list(indices))

    def column(self, j: int) -> Matrix:
        return self.columns([j])

    def is_zero(self) -> bool:
        return not self.nonzeros

    def is_identity(self) -> bool:
        return self == identity(self.field, self.rows) if self.is_square else False

    def is_permutation(self) -> bool:
        if not self.is_square:
            return False
        one = self.field.one
        seen_rows, seen_cols = set(), set()
        for i, j, value in self.nonzeros:
            if value != one or i in seen_rows or j in seen_cols:
                return False
            seen_rows.add(i)
            seen_cols.add(j)
        return len(seen_rows) == self.rows

    def to_text(self) -> list[list[str]]:
        return [[self.field.format_scalar(x) for x in row] for row in self.entries]


def _check_same(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field.label} vs {b.field.label}")
    if a.shape != b.shape:
        raise ShapeError(f"shape {a.shape} vs {b.shape}")


def zeros(field: FieldSpec, rows: int, cols: int) -> Matrix:
    z = field.zero
    return Matrix(field, rows, cols, tuple((z,) * cols for _ in range(rows)))


def identity(field: FieldSpec, n: int) -> Matrix:
    z, one = field.zero, field.one
    return Matrix(field, n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))


def from_entries(field: FieldSpec, rows: int, cols: int, entries: Mapping[tuple[int, int], Any]) -> Matrix:
    """Builds a matrix from a sparse {(i, j): scalar} mapping."""
    grid = [[field.zero] * cols for _ in range(rows)]
    for (i, j), value in entries.items():
        grid[i][j] = field.scalar(value)
    return Matrix(field, rows, cols, tuple(tuple(row) for row in grid))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field.label} vs {b.field.label}")
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.rows == 0 or a.cols == 0 or b.cols == 0:
        return zeros(a.field, a.rows, b.cols)
    return Matrix.from_domain_matrix(a.field, a.rep.matmul(b.rep))


def mat_chain(field: FieldSpec, size: int, factors: Sequence[Matrix]) -> Matrix:
    """Product factors[-1] @ ... @ factors[0]; identity(size) when empty."""
    result = identity(field, size)
    for factor in factors:
        result = mat_mul(factor, result)
    return result


def block_matrix(
    field: FieldSpec,
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    blocks: Mapping[tuple[int, int], Matrix],
) -> Matrix:
    """Assembles a matrix from blocks; missing blocks are zero."""
    row_offsets = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
    col_offsets = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
    rows, cols = sum(row_sizes), sum(col_sizes)
    grid = [[field.zero] * cols for _ in range(rows)]
    for (bi, bj), block in blocks.items():
        if block.field != field:
            raise FieldMismatchError(f"block ({bi}, {bj}) is over {block.field.label}")
        if block.shape != (row_sizes[bi], col_sizes[bj]):
            raise ShapeError(f"block ({bi}, {bj}) has shape {block.shape}, expected {(row_sizes[bi], col_sizes[bj])}")
        r0, c0 = row_offsets[bi], col_offsets[bj]
        for i, j, value in block.nonzeros:
            grid[r0 + i][c0 + j] = value
    return Matrix(field, rows, cols, tuple(tuple(row) for row in grid))


def block_diag(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    return block_matrix(
        field,
        [b.rows for b in blocks],
        [b.cols for b in blocks],
        {(k, k): b for k, b in enumerate(blocks)},
    )


def hstack(field: FieldSpec, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    return block_matrix(field, [rows], [b.cols for b in blocks], {(0, k): b for k, b in enumerate(blocks)})


def vstack(field: FieldSpec, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    return block_matrix(field, [b.rows for b in blocks], [cols], {(k, 0): b for k, b in enumerate(blocks)})


def rref(a: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; pivots are chosen left to right."""
    if a.rows == 0 or a.cols == 0:
        return a, ()
    reduced, pivots = a.rep.rref()
    return Matrix.from_domain_matrix(a.field, reduced), tuple(pivots)


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> Matrix:
    """Columns form the echelon basis of {v : a v = 0}, one per free column."""
    field, n = a.field, a.cols
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    entries = {}
    for k, f in enumerate(free):
        entries[(f, k)] = field.one
        for r, p in enumerate(pivots):
            value = reduced[r, f]
            if value:
                entries[(p, k)] = -value
    return from_entries(field, n, len(free), entries)


def column_space(a: Matrix) -> Matrix:
    """The pivot columns of `a`: a basis of its image drawn from its own columns."""
    return a.columns(rref(a)[1])


def cokernel_data(a: Matrix) -> tuple[Matrix, Matrix]:
    """
    Returns (projection, section) for coker(a) with t = a.rows and r = rank(a).

    projection is (t - r) x t with projection @ a == 0, section is t x (t - r)
    with projection @ section == identity. The cokernel basis is the set of
    non-pivot coordinates of the column-reduced form of `a`.
    """
    field, t = a.field, a.rows
    reduced, pivots = rref(a.transpose())
    pivot_set = set(pivots)
    free = [k for k in range(t) if k not in pivot_set]
    proj, sect = {}, {}
    for row, k in enumerate(free):
        proj[(row, k)] = field.one
        sect[(k, row)] = field.one
        for r, j in enumerate(pivots):
            value = reduced[r, k]
            if value:
                proj[(row, j)] = -value
    return from_entries(field, len(free), t, proj), from_entries(field, t, len(free), sect)


def solve_in_columns(basis: Matrix, targets: Matrix) -> Matrix:
    """
    X with basis @ X == targets, for `basis` of full column rank and targets
    inside its column span (the caller guarantees membership).
    """
    field = basis.field
    if basis.cols == 0 or targets.cols == 0:
        return zeros(field, basis.cols, targets.cols)
    _, rows = rref(basis.transpose())
    square = basis.submatrix(list(rows), range(basis.cols))
    return mat_mul(inverse(square), targets.submatrix(list(rows), range(targets.cols)))


def spans_equal(a: Matrix, b: Matrix) -> bool:
    if a.rows != b.rows:
        return False
    joint = rank(hstack(a.field, a.rows, [a, b]))
    return joint == rank(a) == rank(b)


def is_invertible(a: Matrix) -> bool:
    return a.is_square and rank(a) == a.rows


def inverse(a: Matrix) -> Matrix:
    if not a.is_square:
        raise ShapeError(f"{a.rows}x{a.cols} matrix has no inverse")
    if a.rows == 0:
        return a
    if not is_invertible(a):
        raise ValueError("matrix is singular")
    return Matrix.from_domain_matrix(a.field, a.rep.to_dense().inv())
