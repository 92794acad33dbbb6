"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator and uses arbitrary precision integers, so
equality of matrices is structural.  Matrices are immutable.

Vectors are plain tuples of Fractions.  Bases are returned as lists of such
tuples (column vectors).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction
Vector = tuple


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: nothing in this package may pass through binary
    floating point.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class RationalMatrix:
    """An immutable ``rows x cols`` matrix of Fractions.

    Zero-sized matrices are allowed and keep their shape, which matters for
    maps into and out of the zero vector space.
    """

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable], shape: Optional[tuple[int, int]] = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if shape is None:
            if not data:
                raise ValueError("shape is required for a matrix with no rows")
            shape = (len(data), len(data[0]))
        nrows, ncols = shape
        if len(data) != nrows or any(len(row) != ncols for row in data):
            raise ValueError(f"entries do not match shape {shape}")
        self._rows = data
        self._shape = (nrows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls(((0,) * ncols for _ in range(nrows)), (nrows, ncols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def scalar(cls, n: int, c) -> RationalMatrix:
        return cls(((c if i == j else 0 for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> RationalMatrix:
        cols = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length does not match nrows")
        return cls(((c[i] for c in cols) for i in range(nrows)), (nrows, len(cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.columns(), (self.ncols, self.nrows))

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._shape, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"RationalMatrix([{body}], shape={self._shape})"

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self._shape != other._shape:
            raise ValueError(f"shape mismatch {self._shape} vs {other._shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._shape,
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            (tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._shape,
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix((tuple(-a for a in r) for r in self._rows), self._shape)

    def scale(self, c) -> RationalMatrix:
        c = to_rational(c)
        return RationalMatrix((tuple(c * a for a in r) for r in self._rows), self._shape)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self._shape} by {other._shape}")
        cols = other.columns()
        return RationalMatrix(
            (tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
             for row in self._rows),
            (self.nrows, other.ncols),
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for matrix {self._shape}")
        v = [to_rational(x) for x in v]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self._rows)

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return RationalMatrix(
            (r + s for r, s in zip(self._rows, other._rows)),
            (self.nrows, self.ncols + other.ncols),
        )

    def rank(self) -> int:
        return len(rref(self)[1])


def block_diagonal(*blocks: RationalMatrix) -> RationalMatrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * offset + r + (0,) * (ncols - offset - b.ncols))
        offset += b.ncols
    return RationalMatrix(rows, (nrows, ncols))


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(row) for row in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RationalMatrix(a, m.shape), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the null space, one vector per free column of the rref."""
    red, pivots = rref(m)
    ncols = m.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -red[row, free]
        basis.append(tuple(v))
    return basis


def image_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the column space: the original columns at the pivot positions."""
    _, pivots = rref(m)
    return [m.column(j) for j in pivots]


def solve(m: RationalMatrix, b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero.
    """
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    aug = m.hstack(RationalMatrix(((x,) for x in b), (m.nrows, 1)))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, p in enumerate(pivots):
        x[p] = red[row, m.ncols]
    return tuple(x)


def solve_matrix(m: RationalMatrix, b: RationalMatrix) -> Optional[RationalMatrix]:
    """Column-by-column :func:`solve`; ``None`` if any column has no solution."""
    cols = []
    for col in b.columns():
        x = solve(m, col)
        if x is None:
            return None
        cols.append(x)
    return RationalMatrix.from_columns(cols, m.ncols)


def complement_indices(basis: RationalMatrix) -> list[int]:
    """Standard basis indices completing the columns of ``basis`` to a basis.

    ``basis`` must have independent columns.  The choice is the pivot set of
    ``[basis | I]`` so it is deterministic.
    """
    n, k = basis.shape
    _, pivots = rref(basis.hstack(RationalMatrix.identity(n)))
    if pivots[:k] != list(range(k)):
        raise ValueError("columns are not linearly independent")
    return [p - k for p in pivots[k:]]
