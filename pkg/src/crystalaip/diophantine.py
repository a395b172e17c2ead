"""Exact integer linear systems: column Hermite normal form and ``Ax = b`` over Z.

Everything here uses Python integers.  The elimination works column-wise on
sparse columns (AIP systems are 0/±1 and very sparse) and records the
unimodular transform ``U`` with ``A U = H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ShapeError


@dataclass(frozen=True)
class BigMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimensions")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BigMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "BigMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def __matmul__(self, other: "BigMatrix") -> "BigMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a = self.to_rows()
        b = other.to_rows()
        out = []
        for row in a:
            acc = [0] * other.cols
            for k, v in enumerate(row):
                if v:
                    bk = b[k]
                    for j in range(other.cols):
                        acc[j] += v * bk[j]
            out.append(acc)
        return BigMatrix.from_rows(out, other.cols)

    def apply(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ShapeError(f"vector of length {len(x)} for {self.cols} columns")
        return [sum(v * xi for v, xi in zip(row, x)) for row in self.to_rows()]


@dataclass
class DiophantineResult:
    feasible: bool
    witness: list[int] | None = None
    kernel_basis: list[list[int]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


SparseRow = dict  # column -> nonzero coefficient


class _Eliminator:
    """Unimodular column reduction of a sparse matrix, row by row."""

    def __init__(self, rows: Sequence[SparseRow], ncols: int):
        self.m = len(rows)
        self.ncols = ncols
        self.cols: list[dict[int, int]] = [dict() for _ in range(ncols)]
        self.row_nz: list[set[int]] = [set() for _ in range(self.m)]
        for r, row in enumerate(rows):
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise ShapeError(f"column {c} outside 0..{ncols - 1}")
                if v:
                    self.cols[c][r] = int(v)
                    self.row_nz[r].add(c)
        self.U: list[dict[int, int]] = [{c: 1} for c in range(ncols)]
        self.active = set(range(ncols))
        self.pivots: list[tuple[int, int]] = []  # (row, column)

    def _addmul(self, dst: int, src: int, k: int) -> None:
        """column[dst] += k * column[src], in both A and U."""
        col_d = self.cols[dst]
        for r, v in self.cols[src].items():
            nv = col_d.get(r, 0) + k * v
            if nv:
                if r not in col_d:
                    self.row_nz[r].add(dst)
                col_d[r] = nv
            elif r in col_d:
                del col_d[r]
                self.row_nz[r].discard(dst)
        u_d = self.U[dst]
        for r, v in self.U[src].items():
            nv = u_d.get(r, 0) + k * v
            if nv:
                u_d[r] = nv
            else:
                u_d.pop(r, None)

    def _negate(self, c: int) -> None:
        col = self.cols[c]
        for r in col:
            col[r] = -col[r]
        u = self.U[c]
        for r in u:
            u[r] = -u[r]

    def run(self) -> None:
        for r in range(self.m):
            cand = sorted(c for c in self.row_nz[r] if c in self.active)
            while len(cand) > 1:
                c0 = min(cand, key=lambda c: (abs(self.cols[c][r]), c))
                v0 = self.cols[c0][r]
                for c in cand:
                    if c != c0:
                        k = self.cols[c][r] // v0
                        if k:
                            self._addmul(c, c0, -k)
                cand = [c for c in cand if r in self.cols[c]]
            if cand:
                c = cand[0]
                if self.cols[c][r] < 0:
                    self._negate(c)
                self.active.discard(c)
                self.pivots.append((r, c))

    def reduce_left_of_pivots(self) -> None:
        """Bring entries left of each pivot into ``[0, pivot)``."""
        for s, (r, c) in enumerate(self.pivots):
            piv = self.cols[c][r]
            for _, ct in self.pivots[:s]:
                k = self.cols[ct].get(r, 0) // piv
                if k:
                    self._addmul(ct, c, -k)

    def column_order(self) -> list[int]:
        return [c for _, c in self.pivots] + sorted(self.active)


def _dense_rows(A) -> tuple[list[SparseRow], int]:
    if isinstance(A, BigMatrix):
        rows = A.to_rows()
        ncols = A.cols
    else:
        rows = [list(r) for r in A]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged matrix rows")
    return [{c: v for c, v in enumerate(r) if v} for r in rows], ncols


def hermite_normal_form(A) -> tuple[BigMatrix, BigMatrix]:
    """Column-style HNF: returns ``(H, U)`` with ``A @ U == H``, ``U`` unimodular.

    ``H`` is a lower staircase: pivot columns first, each pivot positive and
    strictly below the previous pivot row, entries left of a pivot reduced
    into ``[0, pivot)``; the remaining columns are zero.
    """
    rows, ncols = _dense_rows(A)
    el = _Eliminator(rows, ncols)
    el.run()
    el.reduce_left_of_pivots()
    order = el.column_order()
    m = el.m
    H = [[el.cols[c].get(r, 0) for c in order] for r in range(m)]
    U = [[el.U[c].get(r, 0) for c in order] for r in range(ncols)]
    return BigMatrix.from_rows(H, ncols), BigMatrix.from_rows(U, ncols)


def solve_sparse(rows: Sequence[SparseRow], b: Sequence[int], ncols: int,
                 kernel: bool = True) -> DiophantineResult:
    """Integer solution of a sparse system; ``rows[r]`` maps column -> coefficient."""
    if len(rows) != len(b):
        raise ShapeError(f"{len(rows)} rows but right-hand side of length {len(b)}")
    el = _Eliminator(rows, ncols)
    el.run()
    residual = {r: int(v) for r, v in enumerate(b) if v}
    pivot_of_row = dict(el.pivots)
    y: dict[int, int] = {}
    for r in range(el.m):
        res = residual.get(r, 0)
        if r in pivot_of_row:
            c = pivot_of_row[r]
            piv = el.cols[c][r]
            if res % piv:
                return DiophantineResult(False)
            yc = res // piv
            if yc:
                y[c] = yc
                for rr, v in el.cols[c].items():
                    nv = residual.get(rr, 0) - yc * v
                    if nv:
                        residual[rr] = nv
                    else:
                        residual.pop(rr, None)
        elif res:
            return DiophantineResult(False)
    x = [0] * ncols
    for c, yc in y.items():
        for var, v in el.U[c].items():
            x[var] += yc * v
    basis = []
    if kernel:
        for c in sorted(el.active):
            vec = [0] * ncols
            for var, v in el.U[c].items():
                vec[var] = v
            basis.append(vec)
    return DiophantineResult(True, x, basis)


def solve_diophantine(A, b: Iterable[int], kernel: bool = True) -> DiophantineResult:
    """Decide ``exists x in Z^n: A x = b`` and return a witness plus a kernel basis."""
    rows, ncols = _dense_rows(A)
    b = [int(v) for v in b]
    if len(b) != len(rows):
        raise ShapeError(f"matrix has {len(rows)} rows, right-hand side has {len(b)}")
    return solve_sparse(rows, b, ncols, kernel=kernel)
