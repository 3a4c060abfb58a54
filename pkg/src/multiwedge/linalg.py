"""Exact linear algebra over arbitrary-precision rationals.

Vectors and matrices hold ``fractions.Fraction`` entries, so every
computation in this package is exact: equality means equality, no
tolerances anywhere. Scalars serialize as ``"p/q"`` (or ``"p"`` when the
denominator is 1) with the sign carried by the numerator.

All values are immutable after construction and all functions are pure,
so everything here can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def qparse(value: object) -> Fraction:
    """Parse a rational from ``"p/q"`` / ``"p"`` strings, ints or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"cannot parse a rational from {value!r}")


class QVector:
    """Immutable vector with rational entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[object]):
        self.entries = tuple(qparse(e) for e in entries)

    @classmethod
    def zero(cls, dim: int) -> "QVector":
        return cls([_ZERO] * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "QVector":
        return cls([_ONE if i == index else _ZERO for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def dot(self, other: "QVector") -> Fraction:
        if len(self.entries) != len(other.entries):
            raise ValueError("dimension mismatch in dot product")
        return sum((a * b for a, b in zip(self.entries, other.entries)), _ZERO)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __add__(self, other: "QVector") -> "QVector":
        return QVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "QVector") -> "QVector":
        return QVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "QVector":
        return QVector(-a for a in self.entries)

    def __mul__(self, scalar: object) -> "QVector":
        s = qparse(scalar)
        return QVector(s * a for a in self.entries)

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"QVector([{', '.join(str(e) for e in self.entries)}])"

    def to_json(self) -> list[str]:
        return [str(e) for e in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[object]) -> "QVector":
        return cls(data)


class QMatrix:
    """Immutable matrix with rational entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[object]):
        self.rows = rows
        self.cols = cols
        self.entries = tuple(qparse(e) for e in entries)
        if len(self.entries) != rows * cols:
            raise ValueError("entry count does not match matrix shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[object]]) -> "QMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("from_rows requires at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_cols(cls, cols: Sequence[Iterable[object]], nrows: int | None = None) -> "QMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            if nrows is None:
                raise ValueError("from_cols with no columns needs nrows")
            return cls(nrows, 0, [])
        nrows = len(cols[0])
        return cls(nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [_ONE if i == j else _ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [_ZERO] * (rows * cols))

    def row(self, i: int) -> QVector:
        return QVector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> QVector:
        return QVector(self.entries[j :: self.cols])

    def row_list(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def apply(self, v: QVector) -> QVector:
        if v.dim != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        c = self.cols
        return QVector(
            sum((self.entries[i * c + j] * v.entries[j] for j in range(c)), _ZERO)
            for i in range(self.rows)
        )

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols : (i + 1) * self.cols]
            for j in range(other.cols):
                out.append(
                    sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), _ZERO)
                )
        return QMatrix(self.rows, other.cols, out)

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar: object) -> "QMatrix":
        s = qparse(scalar)
        return QMatrix(self.rows, self.cols, [s * a for a in self.entries])

    __rmul__ = __mul__

    def _same_shape(self, other: "QMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(e) for e in self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        )
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(e) for e in row] for row in self.row_list()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QMatrix":
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("matrix entries do not match declared shape")
        return cls(rows, cols, [e for r in entries for e in r])


def _rref_rows(rows: list[list[Fraction]]) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns."""
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col]
        if inv != 1:
            rows[r] = [e * inv for e in rows[r]]
        rr = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rr)]
        pivots.append(col)
        r += 1
    return pivots


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form of ``m`` and the list of pivot columns."""
    rows = m.row_list()
    pivots = _rref_rows(rows)
    return QMatrix.from_rows(rows), pivots


@dataclass(frozen=True)
class Solution:
    """A particular solution of A x = b together with a nullspace basis."""

    particular: QVector
    nullspace: tuple[QVector, ...]


def _nullspace_from_rref(rows: list[list[Fraction]], pivots: list[int], ncols: int) -> list[QVector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[free] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(QVector(v))
    return basis


def nullspace(m: QMatrix) -> list[QVector]:
    """Canonical basis of {x : m x = 0} (from the reduced echelon form)."""
    rows = m.row_list()
    pivots = _rref_rows(rows)
    return _nullspace_from_rref(rows, pivots, m.cols)


def solve_linear(a: QMatrix, b: QVector) -> Solution | None:
    """Solve A x = b exactly.

    Returns a particular solution (free variables set to zero) and a basis
    of the nullspace of A, or None when the system is inconsistent.
    """
    if a.rows != b.dim:
        raise ValueError("rows(A) must equal dim(b)")
    rows = [list(r) + [be] for r, be in zip(a.row_list(), b.entries)]
    pivots = _rref_rows(rows)
    if pivots and pivots[-1] == a.cols:
        return None
    particular = [_ZERO] * a.cols
    for r, pc in enumerate(pivots):
        particular[pc] = rows[r][a.cols]
    null = _nullspace_from_rref([row[: a.cols] for row in rows], pivots, a.cols)
    return Solution(QVector(particular), tuple(null))


class _Echelon:
    """Incremental row-echelon accumulator for independence testing."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []
        self.leads: list[int] = []

    def residual(self, v: QVector) -> list[Fraction]:
        w = list(v.entries)
        for lead, row in zip(self.leads, self.rows):
            f = w[lead]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def add(self, v: QVector) -> bool:
        """Insert v if independent of what was added so far; report success."""
        w = self.residual(v)
        for lead, e in enumerate(w):
            if e != 0:
                inv = 1 / e
                self.rows.append([x * inv for x in w])
                self.leads.append(lead)
                return True
        return False

    def contains(self, v: QVector) -> bool:
        return all(e == 0 for e in self.residual(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def independent_indices(vectors: Sequence[QVector], dim: int) -> list[int]:
    """Greedy maximal linearly independent subset, scanning in list order."""
    ech = _Echelon(dim)
    kept = []
    for i, v in enumerate(vectors):
        if ech.add(v):
            kept.append(i)
    return kept


def span_rank(vectors: Sequence[QVector], dim: int) -> int:
    ech = _Echelon(dim)
    for v in vectors:
        ech.add(v)
    return ech.rank


def span_contains(vectors: Sequence[QVector], x: QVector, dim: int) -> bool:
    """Whether x lies in the linear span of ``vectors``."""
    ech = _Echelon(dim)
    for v in vectors:
        ech.add(v)
    return ech.contains(x)


def complement_basis(
    subspace_basis: Sequence[QVector], ambient_dim: int, *, reverse: bool = False
) -> list[QVector]:
    """Greedy standard-basis extension of ``subspace_basis`` to all of Q^n.

    Scans e_1, e_2, ... in index order (reversed when ``reverse``) and keeps
    each standard vector that is independent of everything kept so far. The
    fixed scan order makes every projection built on top reproducible.
    """
    ech = _Echelon(ambient_dim)
    for v in subspace_basis:
        ech.add(v)
    order = range(ambient_dim - 1, -1, -1) if reverse else range(ambient_dim)
    kept = []
    for k in order:
        e = QVector.unit(ambient_dim, k)
        if ech.add(e):
            kept.append(e)
    return kept


def matrix_inverse(m: QMatrix) -> QMatrix:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m.row_list())]
    pivots = _rref_rows(rows)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return QMatrix.from_rows([row[n:] for row in rows])
