"""Exact integer matrices, Smith normal form and cokernel invariants.

Everything here works over Python ints, so intermediate pivots never
overflow. Matrices are immutable; the reduction routines copy into
plain lists, mutate those, and wrap the result again.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        data = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, values)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self._data, other._data)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self._data))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (k * a for a in self._data))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out, cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> list[int]:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d != 0)


@dataclass(frozen=True)
class DivisorChain:
    """Finitely generated abelian group ``Z^free_rank + sum Z/d_i``.

    ``torsion`` holds the invariant factors greater than one, each dividing
    the next.
    """

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"torsion divisor {d} must exceed 1")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"divisibility chain broken: {d} does not divide {e}")

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def direct_sum(self, other: "DivisorChain") -> "DivisorChain":
        diag = list(self.torsion) + list(other.torsion)
        free = self.free_rank + other.free_rank
        if not diag:
            return DivisorChain((), free)
        chain = cokernel_divisors(IntMatrix.diag(diag))
        return DivisorChain(chain.torsion, free)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for r in m:
        r[i], r[j] = r[j], r[i]


def _add_row(m, src, dst, k):
    # row[dst] += k * row[src]
    if k:
        rs, rd = m[src], m[dst]
        for c in range(len(rd)):
            rd[c] += k * rs[c]


def _add_col(m, src, dst, k):
    if k:
        for r in m:
            r[dst] += k * r[src]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Returns unimodular U, V with ``U @ A @ V == D`` where D is diagonal,
    nonnegative, each diagonal entry divides the next and zeros trail.
    """
    rows, cols = A.shape
    m = A.tolist()
    u = IntMatrix.identity(rows).tolist()
    v = IntMatrix.identity(cols).tolist()

    def row_swap(i, j):
        _swap_rows(m, i, j)
        _swap_rows(u, i, j)

    def col_swap(i, j):
        _swap_cols(m, i, j)
        _swap_cols(v, i, j)

    def row_add(src, dst, k):
        _add_row(m, src, dst, k)
        _add_row(u, src, dst, k)

    def col_add(src, dst, k):
        _add_col(m, src, dst, k)
        _add_col(v, src, dst, k)

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = m[i][j]
                if x and (best is None or abs(x) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])

        while True:
            p = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    row_add(t, i, -(m[i][t] // p))
            for j in range(t + 1, cols):
                if m[t][j]:
                    col_add(t, j, -(m[t][j] // p))
            # remainders are strictly smaller than the pivot; promote the least
            rest = [(abs(m[i][t]), 0, i) for i in range(t + 1, rows) if m[i][t]]
            rest += [(abs(m[t][j]), 1, j) for j in range(t + 1, cols) if m[t][j]]
            if rest:
                _, is_col, k = min(rest)
                if is_col:
                    col_swap(t, k)
                else:
                    row_swap(t, k)
                continue
            # row and column clear; enforce divisibility into the rest
            p = m[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(bad, t, 1)
        if m[t][t] < 0:
            for c in range(cols):
                m[t][c] = -m[t][c]
            for c in range(rows):
                u[t][c] = -u[t][c]
        t += 1

    return SmithDecomposition(
        IntMatrix.from_rows(u, rows),
        IntMatrix.from_rows(m, cols),
        IntMatrix.from_rows(v, cols),
    )


def cokernel_divisors(A: IntMatrix) -> DivisorChain:
    """Invariants of ``Z^rows / image(A)``."""
    snf = smith_normal_form(A)
    inv = snf.invariants
    rank = sum(1 for d in inv if d)
    return DivisorChain(tuple(d for d in inv if d > 1), A.rows - rank)


def has_two_torsion(d: DivisorChain) -> bool:
    return any(x % 2 == 0 for x in d.torsion)


def rank(A: IntMatrix) -> int:
    return smith_normal_form(A).rank


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of the integer kernel of A (shape cols x k)."""
    snf = smith_normal_form(A)
    r = snf.rank
    V = snf.V
    return IntMatrix.from_rows([V.row(i)[r:] for i in range(V.rows)], V.cols - r)


def determinantal_divisors(A: IntMatrix) -> list[int]:
    """gcd of all k x k minors, k = 1..min(rows, cols).

    Brute force over minors; only sensible for small matrices. Used as an
    SNF-free cross-check: invariant factors are the successive quotients.
    """
    from itertools import combinations

    out = []
    for k in range(1, min(A.rows, A.cols) + 1):
        g = 0
        for rs in combinations(range(A.rows), k):
            for cs in combinations(range(A.cols), k):
                g = gcd(g, IntMatrix.from_rows([[A[i, j] for j in cs] for i in rs], k).det())
        out.append(g)
    return out


def invariant_factors_by_minors(A: IntMatrix) -> list[int]:
    dd = determinantal_divisors(A)
    out = []
    prev = 1
    for d in dd:
        if d == 0:
            out.append(0)
            prev = 0
            continue
        out.append(d // prev)
        prev = d
    return out
