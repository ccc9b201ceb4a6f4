"""Dense integer matrices and the normal forms built on them.

Everything here uses Python ints, so arithmetic is exact at any size.
Matrices are immutable; the algorithms copy into nested lists, work in
place, and wrap the result again.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """An immutable ``rows x cols`` integer matrix.

    Shapes with zero rows or zero columns are legal and keep their other
    dimension, so ``IntMatrix.zeros(3, 0)`` is the relation matrix of the
    free group on three generators.
    """

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] = ()):
        entries = [int(x) for x in entries]
        if not entries:
            entries = [0] * (rows * cols)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"{len(entries)} entries do not fit a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._r = tuple(tuple(entries[i * cols:(i + 1) * cols]) for i in range(rows))

    @classmethod
    def _wrap(cls, rows: int, cols: int, data) -> "IntMatrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._r = tuple(tuple(r) for r in data)
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = [[int(x) for x in r] for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls._wrap(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length does not match row count")
        return cls._wrap(rows, len(columns), [[int(c[i]) for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._wrap(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls._wrap(n, n, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self._r for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._r]

    def row(self, i: int) -> tuple[int, ...]:
        return self._r[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._r)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._r[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._r))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {list(self.entries)})"

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols} empty]"
        w = max(len(str(x)) for x in self.entries)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in self._r)

    @property
    def T(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix._wrap(self.cols, 0, [[] for _ in range(self.cols)])
        return IntMatrix._wrap(self.cols, self.rows, zip(*self._r))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other._r)) if other.rows else [()] * other.cols
        data = [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._r]
        return IntMatrix._wrap(self.rows, other.cols, data)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._r)

    def _check_same(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix._wrap(self.rows, self.cols,
                               [[a + b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix._wrap(self.rows, self.cols,
                               [[a - b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(self.rows, self.cols, [[-a for a in r] for r in self._r])

    def __mul__(self, c: int) -> "IntMatrix":
        return IntMatrix._wrap(self.rows, self.cols, [[c * a for a in r] for r in self._r])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._r)

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix._wrap(self.rows, len(idx), [[r[j] for j in idx] for r in self._r])

    def select_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix._wrap(len(idx), self.cols, [self._r[i] for i in idx])

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def hstack(*mats: IntMatrix, rows: Optional[int] = None) -> IntMatrix:
    if rows is None:
        if not mats:
            raise ValueError("hstack of nothing needs an explicit row count")
        rows = mats[0].rows
    for m in mats:
        if m.rows != rows:
            raise ValueError(f"hstack: {m.rows} rows, expected {rows}")
    data = [[x for m in mats for x in m._r[i]] for i in range(rows)]
    return IntMatrix._wrap(rows, sum(m.cols for m in mats), data)


def vstack(*mats: IntMatrix, cols: Optional[int] = None) -> IntMatrix:
    if cols is None:
        if not mats:
            raise ValueError("vstack of nothing needs an explicit column count")
        cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise ValueError(f"vstack: {m.cols} columns, expected {cols}")
    return IntMatrix._wrap(sum(m.rows for m in mats), cols, [r for m in mats for r in m._r])


def block_diag(*mats: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i, r in enumerate(m._r):
            data[r0 + i][c0:c0 + m.cols] = r
        r0 += m.rows
        c0 += m.cols
    return IntMatrix._wrap(rows, cols, data)


# -- normal forms ------------------------------------------------------------

def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _row_echelon(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row Hermite form of ``a`` in place: returns (E, T, pivot_cols) with E = T a.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    T is unimodular. Zero rows of E come last.
    """
    n = len(a)
    t = _identity_rows(n)

    def sub(i, r, q, c):  # row_i -= q * row_r, columns before c are zero in row_r
        ai, ar, ti, tr = a[i], a[r], t[i], t[r]
        for k in range(c, ncols):
            ai[k] -= q * ar[k]
        for k in range(n):
            ti[k] -= q * tr[k]

    r = 0
    pivots = []
    for c in range(ncols):
        if r == n:
            break
        while True:
            best = None
            for i in range(r, n):
                x = a[i][c]
                if x and (best is None or abs(x) < abs(a[best][c])):
                    best = i
            if best is None:
                break
            if best != r:
                a[r], a[best] = a[best], a[r]
                t[r], t[best] = t[best], t[r]
            p = a[r][c]
            for i in range(r + 1, n):
                if a[i][c]:
                    sub(i, r, a[i][c] // p, c)
            if not any(a[i][c] for i in range(r + 1, n)):
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            t[r] = [-x for x in t[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                sub(i, r, q, c)
        pivots.append(c)
        r += 1
    return a, t, pivots


class ColumnEchelon:
    """Column Hermite form ``H = M V`` of an integer matrix ``M``.

    The first ``rank`` columns of H are a lattice basis of the column span of
    M, with strictly increasing pivot rows; the remaining columns of the
    unimodular ``V`` are a basis of the integer kernel of M.
    """

    __slots__ = ("matrix", "H", "V", "pivot_rows", "rank")

    def __init__(self, M: IntMatrix):
        m, n = M.shape
        e, t, piv = _row_echelon(M.T.tolist(), m)
        self.matrix = M
        self.rank = len(piv)
        self.pivot_rows = tuple(piv)
        self.H = IntMatrix._wrap(n, m, e).T
        self.V = IntMatrix._wrap(n, n, t).T

    def basis(self) -> IntMatrix:
        return self.H.select_columns(range(self.rank))

    def kernel_basis(self) -> IntMatrix:
        return self.V.select_columns(range(self.rank, self.matrix.cols))

    def solve(self, b: Sequence[int]) -> Optional[tuple[int, ...]]:
        M = self.matrix
        if len(b) != M.rows:
            raise ValueError(f"right-hand side of length {len(b)} for {M.rows} rows")
        res = [int(x) for x in b]
        y = [0] * M.cols
        H = self.H
        pivot_of = dict(zip(self.pivot_rows, range(self.rank)))
        for i in range(M.rows):
            k = pivot_of.get(i)
            if k is None:
                if res[i]:
                    return None
                continue
            p = H[i, k]
            if res[i] % p:
                return None
            q = res[i] // p
            if q:
                y[k] = q
                for r in range(i, M.rows):
                    res[r] -= q * H[r, k]
        return self.V.apply(y)


def hermite_basis(M: IntMatrix) -> IntMatrix:
    """Column Hermite normal form: a basis of the integer column span of M."""
    return ColumnEchelon(M).basis()


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Basis (as columns) of ``{x in Z^cols : M x = 0}``."""
    return ColumnEchelon(M).kernel_basis()


def solve_in_span(A: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer ``x`` with ``A x = b``, or None when b is outside the column span."""
    return ColumnEchelon(A).solve(b)


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with ``U M V = D`` in Smith normal form.

    U and V are unimodular; the diagonal of D is nonnegative with each entry
    dividing the next. The pivot is always the entry of least absolute value,
    ties going to the lowest row and then the lowest column, so the output is
    a fixed function of the input.
    """
    m, n = M.shape
    a = M.tolist()
    u = _identity_rows(m)
    v = _identity_rows(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(a[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return (IntMatrix._wrap(m, m, u), IntMatrix._wrap(m, n, a), IntMatrix._wrap(n, n, v))


def smith_diagonal(M: IntMatrix) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.shape))]


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, by Gauss-Jordan over the rationals."""
    n = U.rows
    a = [[Fraction(x) for x in U.row(i)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    if any(x.denominator != 1 for row in a for x in row[n:]):
        raise ValueError("matrix is not unimodular")
    out = [[int(x) for x in row[n:]] for row in a]
    return IntMatrix.from_rows(out, n)
