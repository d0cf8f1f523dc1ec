"""Exact rational scalars and small dense linear algebra.

Every scalar is a ``fractions.Fraction``: arbitrary precision, always stored
reduced with a positive denominator, so arithmetic and comparisons are exact.
All sign decisions elsewhere in the package rest on this module, which is why
there is no floating-point mode.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, SingularMatrixError

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an exact scalar: Fraction, int, or a string.

    Strings may be integers ("6"), decimals ("0.6" becomes 3/5 exactly), or
    slash rationals ("17/20"). Floats are rejected: their binary value is
    almost never the decimal the user meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational scalar: {value!r}") from exc
    raise ValueError(f"not a rational scalar: {value!r} (floats are not accepted)")


def format_rational(value: Fraction) -> str:
    """Canonical text form: "6" for integers, reduced "a/b" otherwise."""
    return str(value)


class Matrix:
    """Immutable dense matrix of exact rationals.

    Zero-row matrices are supported (the column count must then be given
    explicitly), because lifting a 0 x n matrix is well defined.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows in matrix")
            if ncols is not None and ncols != width:
                raise DimensionError(f"ncols={ncols} but rows have {width} entries")
        else:
            if ncols is None:
                raise DimensionError("a zero-row matrix needs an explicit column count")
            width = ncols
        self.nrows = len(data)
        self.ncols = width
        self._rows = data

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        zero = Fraction(0)
        return cls([[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [tuple(as_rational(x) for x in col) for col in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise DimensionError("ragged columns")
        else:
            if nrows is None:
                raise DimensionError("a zero-column matrix needs an explicit row count")
            height = nrows
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(height)], ncols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.ncols)], ncols=self.nrows)

    def flatten(self) -> tuple[Fraction, ...]:
        """Row-major entry tuple; also the canonical sort key among equal shapes."""
        return tuple(x for row in self._rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


def _forward_eliminate(rows: list[list[Fraction]]) -> tuple[int, int]:
    """In-place row echelon reduction. Returns (rank, parity of row swaps)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivot_row = 0
    swaps = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        src = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if src is None:
            continue
        if src != pivot_row:
            rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
            swaps += 1
        pivot = rows[pivot_row][col]
        for r in range(pivot_row + 1, nrows):
            factor = rows[r][col]
            if factor:
                scale = factor / pivot
                row_r, row_p = rows[r], rows[pivot_row]
                for c in range(col, ncols):
                    row_r[c] -= scale * row_p[c]
        pivot_row += 1
    return pivot_row, swaps


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination; the empty matrix has determinant 1."""
    if m.nrows != m.ncols:
        raise DimensionError(f"determinant needs a square matrix, got {m.nrows}x{m.ncols}")
    rows = [list(r) for r in m.rows()]
    rank_, swaps = _forward_eliminate(rows)
    if rank_ < m.nrows:
        return Fraction(0)
    det = Fraction(1)
    for i in range(m.nrows):
        det *= rows[i][i]
    return -det if swaps % 2 else det


def rank(m: Matrix) -> int:
    """Exact linear rank over the rationals."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = [list(r) for r in m.rows()]
    r, _ = _forward_eliminate(rows)
    return r


def solve_linear(m: Matrix, b: Sequence) -> list[Fraction]:
    """Unique solution of m x = b for square nonsingular m.

    Raises SingularMatrixError when m is singular (whether the system is then
    inconsistent or underdetermined, there is no unique solution to return).
    """
    if m.nrows != m.ncols:
        raise DimensionError(f"solve_linear needs a square matrix, got {m.nrows}x{m.ncols}")
    rhs = [as_rational(x) for x in b]
    if len(rhs) != m.nrows:
        raise DimensionError(f"right-hand side has {len(rhs)} entries, expected {m.nrows}")
    n = m.nrows
    rows = [list(m.row(i)) + [rhs[i]] for i in range(n)]
    for col in range(n):
        src = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if src is None:
            raise SingularMatrixError("matrix is singular")
        if src != col:
            rows[col], rows[src] = rows[src], rows[col]
        pivot = rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col]
            if factor:
                scale = factor / pivot
                for c in range(col, n + 1):
                    rows[r][c] -= scale * rows[col][c]
    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n]
        for j in range(i + 1, n):
            acc -= rows[i][j] * solution[j]
        solution[i] = acc / rows[i][i]
    return solution


def solve_consistent(m: Matrix, b: Sequence) -> list[Fraction] | None:
    """One exact solution of a general (possibly non-square) system, or None.

    Free variables, if any, are set to zero. Returns None exactly when the
    system is inconsistent.
    """
    rhs = [as_rational(x) for x in b]
    if len(rhs) != m.nrows:
        raise DimensionError(f"right-hand side has {len(rhs)} entries, expected {m.nrows}")
    nrows, ncols = m.nrows, m.ncols
    rows = [list(m.row(i)) + [rhs[i]] for i in range(nrows)]
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        src = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if src is None:
            continue
        if src != pivot_row:
            rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        pivot = rows[pivot_row][col]
        for r in range(nrows):
            if r != pivot_row and rows[r][col]:
                scale = rows[r][col] / pivot
                for c in range(col, ncols + 1):
                    rows[r][c] -= scale * rows[pivot_row][c]
        pivot_cols.append(col)
        pivot_row += 1
    for r in range(pivot_row, nrows):
        if rows[r][ncols] != 0:
            return None
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivot_cols):
        solution[col] = rows[r][ncols] / rows[r][col]
    return solution


def solve_vandermonde(node_values: Sequence) -> list[Fraction]:
    """Coefficients of the degree <= d polynomial through (e, value_e), e = 0..d.

    The defining matrix at distinct integer nodes is nonsingular, so this
    always succeeds.
    """
    values = [as_rational(x) for x in node_values]
    size = len(values)
    if size == 0:
        raise DimensionError("need at least one node value")
    vandermonde = Matrix(
        [[Fraction(e) ** j for j in range(size)] for e in range(size)], ncols=size
    )
    return solve_linear(vandermonde, values)
