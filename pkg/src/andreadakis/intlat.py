"""Dense integer matrices: Smith normal form and lattice operations.

Lattices are given by generator columns.  Everything is exact over Python
ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import DimensionMismatch


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        data = tuple(tuple(int(x) for x in r) for r in self.data)
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        if len(data) != self.rows or any(len(r) != self.cols for r in data):
            raise DimensionMismatch(f"data does not match shape {self.rows}x{self.cols}")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for a matrix without columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise DimensionMismatch("columns of unequal length")
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def identity(cls, k: int):
        return cls(k, k, [[int(i == j) for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries, rows: int, cols: int):
        m = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(entries):
            m[i][i] = x
        return cls(rows, cols, m)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMatrix(self.rows, other.cols,
                             [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.data])
        v = list(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"cannot multiply {self.shape} by a vector of length {len(v)}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def to_json(self):
        return [[str(x) for x in r] for r in self.data]

    @classmethod
    def from_json(cls, data, cols: int | None = None):
        return cls.from_rows([[int(x) for x in r] for r in data], cols=cols)

    def __str__(self):
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols} matrix>"
        width = max(len(str(x)) for r in self.data for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.data)


@dataclass(frozen=True)
class SNFResult:
    """``left @ A @ right == diagonal``; ``left_inverse`` is ``left``'s inverse."""

    diagonal: IntMatrix
    left: IntMatrix
    right: IntMatrix
    left_inverse: IntMatrix

    @property
    def invariants(self) -> list[int]:
        d = self.diagonal
        return [d[i, i] for i in range(min(d.rows, d.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariants if x)


def _smith(a: IntMatrix, transforms: bool = True):
    m, n = a.rows, a.cols
    M = a.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, k):
        if i == k:
            return
        M[i], M[k] = M[k], M[i]
        if transforms:
            U[i], U[k] = U[k], U[i]
            for r in Ui:
                r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        if j == k:
            return
        for r in M:
            r[j], r[k] = r[k], r[j]
        if transforms:
            for r in V:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):
        # row dst += q * row src
        M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]
        if transforms:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        for r in M:
            r[dst] += q * r[src]
        if transforms:
            for r in V:
                r[dst] += q * r[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        if transforms:
            U[i] = [-x for x in U[i]]
            for r in Ui:
                r[i] = -r[i]

    t = 0
    while t < min(m, n):
        # smallest |entry| in the trailing block, lowest (row, col) on ties
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    clean = clean and not M[i][t]
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    clean = clean and not M[t][j]
            if not clean:
                cands = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                cands += [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            negate_row(t)
        t += 1

    D = IntMatrix(m, n, M)
    if not transforms:
        return D, None, None, None
    return D, IntMatrix(m, m, U), IntMatrix(n, n, V), IntMatrix(m, m, Ui)


def snf(a: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms."""
    D, U, V, Ui = _smith(a)
    return SNFResult(D, U, V, Ui)


def invariant_factors(a: IntMatrix) -> list[int]:
    D = _smith(a, transforms=False)[0]
    return [D[i, i] for i in range(min(a.rows, a.cols))]


def matrix_rank(a: IntMatrix) -> int:
    return sum(1 for x in invariant_factors(a) if x)


def _as_columns(gens, rows: int | None = None) -> IntMatrix:
    if isinstance(gens, IntMatrix):
        return gens
    return IntMatrix.from_columns(gens, rows=rows)


def member(v: Sequence[int], gens) -> tuple | None:
    """Integer coefficients ``c`` with ``gens @ c == v``, or None."""
    v = [int(x) for x in v]
    A = _as_columns(gens, rows=len(v))
    if A.rows != len(v):
        raise DimensionMismatch(f"vector of length {len(v)} against {A.rows}-row lattice")
    res = snf(A)
    w = res.left @ v
    z = [0] * A.cols
    for i, d in enumerate(res.invariants):
        if d:
            if w[i] % d:
                return None
            z[i] = w[i] // d
        elif w[i]:
            return None
    if any(w[i] for i in range(len(res.invariants), A.rows)):
        return None
    c = res.right @ z
    if A @ c != tuple(v):
        raise AssertionError("lattice membership certificate failed to verify")
    return c


def saturation(gens, rows: int | None = None) -> IntMatrix:
    """Basis (as columns) of all ambient vectors with a multiple in the lattice."""
    A = _as_columns(gens, rows=rows)
    res = snf(A)
    Ui = res.left_inverse
    return IntMatrix.from_columns([Ui.column(j) for j in range(res.rank)], rows=A.rows)


def saturation_index(gens, rows: int | None = None) -> int:
    """Index of the lattice in its saturation."""
    return prod(x for x in invariant_factors(_as_columns(gens, rows=rows)) if x)


def annihilating_functionals(gens, ambient_rank: int) -> IntMatrix:
    """Basis (as rows) of integer functionals vanishing on every generator."""
    A = _as_columns(gens, rows=ambient_rank)
    if A.rows != ambient_rank:
        raise DimensionMismatch(f"generators live in Z^{A.rows}, not Z^{ambient_rank}")
    res = snf(A)
    return IntMatrix.from_rows([res.left.data[i] for i in range(res.rank, A.rows)], cols=ambient_rank)


def cokernel_residue(v: Sequence[int], gens) -> tuple:
    """Coordinates of ``v`` in the cokernel of the lattice.

    Torsion coordinates are reduced modulo their invariant factor; the
    tuple is zero exactly when ``v`` lies in the lattice.
    """
    v = [int(x) for x in v]
    A = _as_columns(gens, rows=len(v))
    res = snf(A)
    w = list(res.left @ v)
    for i, d in enumerate(res.invariants):
        w[i] = w[i] % d if d else w[i]
    return tuple(w)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
