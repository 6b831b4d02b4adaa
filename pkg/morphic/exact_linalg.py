"""
Exact integer matrices and Smith normal form.

Every entry is a Python int, so intermediate growth during elimination never
overflows. Matrices are immutable; the Smith reduction works on private
list-of-lists copies and records its row and column operations in the
transformation matrices.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeError


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        """Build from a list of rows; `cols` is needed only when there are no rows."""
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Iterable[int], rows: int = None, cols: int = None) -> "IntMatrix":
        """Diagonal matrix, optionally padded with zero rows or columns."""
        values = [int(v) for v in values]
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        if len(values) > min(rows, cols):
            raise ShapeError("diagonal longer than the matrix")
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = v
        return cls.from_rows(data, cols)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeError(f"cannot place {self.rows} rows beside {other.rows} rows")
        left, right = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows(
            [left[i] + right[i] for i in range(self.rows)], self.cols + other.cols
        )

    def row_block(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix.from_rows(self.to_rows()[start:stop], self.cols)

    def column_block(self, start: int, stop: int) -> "IntMatrix":
        width = max(0, min(stop, self.cols) - start)
        return IntMatrix.from_rows([r[start:stop] for r in self.to_rows()], width)

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)


@dataclass(frozen=True)
class SnfResult:
    """u @ a @ v == s with u, v unimodular and s in Smith normal form."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list:
        return [self.s[i, i] for i in range(min(self.s.rows, self.s.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product a @ b."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    left = a.to_rows()
    right_cols = [b.column(j) for j in range(b.cols)]
    return IntMatrix.from_rows(
        [[sum(x * y for x, y in zip(row, col)) for col in right_cols] for row in left],
        b.cols,
    )


def _find_pivot(m: list, t: int):
    """Minimal nonzero |entry| in the trailing block, ties broken by lowest (row, col)."""
    best = None
    for i in range(t, len(m)):
        for j in range(t, len(m[i])):
            x = m[i][j]
            if x != 0 and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return None if best is None else best[1:]


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms: u @ a @ v == s."""
    rows, cols = a.rows, a.cols
    m = a.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    # v is kept transposed so column operations become row operations
    vt = IntMatrix.identity(cols).to_rows()

    def add_row(dst, src, k):
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in m:
            r[dst] += k * r[src]
        vt[dst] = [x + k * y for x, y in zip(vt[dst], vt[src])]

    for t in range(min(rows, cols)):
        while True:
            pivot = _find_pivot(m, t)
            if pivot is None:
                break
            i, j = pivot
            m[t], m[i] = m[i], m[t]
            u[t], u[i] = u[i], u[t]
            for r in m:
                r[t], r[j] = r[j], r[t]
            vt[t], vt[j] = vt[j], vt[t]

            p = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // p))
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // p))

            if any(m[i][t] for i in range(t + 1, rows)) or any(m[t][j] for j in range(t + 1, cols)):
                continue

            # pull an entry the pivot does not divide into row t
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if pivot is None:
            break
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]

    v = IntMatrix.from_rows(vt, cols).transpose() if cols else IntMatrix.zeros(0, 0)
    return SnfResult(
        u=IntMatrix.from_rows(u, rows),
        s=IntMatrix.from_rows(m, cols),
        v=v,
    )


def snf_diagonal(a: IntMatrix) -> list:
    return snf(a).diagonal


def rank(a: IntMatrix) -> int:
    return snf(a).rank


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer solutions of a @ x == 0."""
    result = snf(a)
    return result.v.column_block(result.rank, a.cols)
