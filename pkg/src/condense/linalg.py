"""Sparse exact linear algebra over the package scalars.

Matrices are dict-of-rows (``{row: {col: value}}``) with explicit shape; zero
entries are never stored.  Gaussian elimination always picks the first nonzero
column as pivot (or the last one with ``pivot="last"``) so every basis this
module returns is deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Row = dict  # {col: scalar}

ZERO = Fraction(0)
ONE = Fraction(1)


class SpMat:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[dict] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SpMat":
        return cls(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int, scale=ONE) -> "SpMat":
        return cls(n, n, {i: {i: scale} for i in range(n)} if scale else {})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "SpMat":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            d = {j: v for j, v in enumerate(r) if v}
            if d:
                out[i] = d
        return cls(nrows, ncols, out)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]) -> "SpMat":
        m = cls(nrows, ncols)
        for i, j, v in entries:
            m.add_entry(i, j, v)
        return m

    # -- access -----------------------------------------------------------
    def add_entry(self, i: int, j: int, v) -> None:
        if not v:
            return
        row = self.rows.setdefault(i, {})
        w = row.get(j, ZERO) + v
        if w:
            row[j] = w
        else:
            del row[j]
            if not row:
                del self.rows[i]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, ZERO)

    def entries(self):
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self) -> list[list]:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def copy(self) -> "SpMat":
        return SpMat(self.nrows, self.ncols, {i: dict(r) for i, r in self.rows.items()})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other: "SpMat") -> "SpMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = {}
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, ZERO) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SpMat(self.nrows, other.ncols, out)

    def __add__(self, other: "SpMat") -> "SpMat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        out = self.copy()
        for i, row in other.rows.items():
            for j, v in row.items():
                out.add_entry(i, j, v)
        return out

    def __neg__(self) -> "SpMat":
        return self.scale(-ONE)

    def __sub__(self, other: "SpMat") -> "SpMat":
        return self + (-other)

    def scale(self, c) -> "SpMat":
        if not c:
            return SpMat(self.nrows, self.ncols)
        return SpMat(self.nrows, self.ncols, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def transpose(self) -> "SpMat":
        out: dict = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return SpMat(self.ncols, self.nrows, out)

    T = property(transpose)

    def kron(self, other: "SpMat") -> "SpMat":
        """Kronecker product; index (i1, i2) -> i1 * other.nrows + i2."""
        out: dict = {}
        for i1, r1 in self.rows.items():
            for i2, r2 in other.rows.items():
                row = {}
                for j1, a in r1.items():
                    for j2, b in r2.items():
                        row[j1 * other.ncols + j2] = a * b
                out[i1 * other.nrows + i2] = row
        return SpMat(self.nrows * other.nrows, self.ncols * other.ncols, out)

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, SpMat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"SpMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# -- elimination ------------------------------------------------------------


def _axpy(row: Row, c, other: Row) -> None:
    """row += c * other, in place, dropping zeros."""
    for j, v in other.items():
        w = row.get(j, ZERO) + c * v
        if w:
            row[j] = w
        else:
            row.pop(j, None)


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``pivots`` maps pivot column -> row with a 1 in that column and zeros in
    every other pivot column.
    """

    def __init__(self, ncols: int, order: Optional[Sequence[int]] = None):
        self.ncols = ncols
        self.pivots: dict[int, Row] = {}
        # column priority: position of each column in the pivot order
        self._rank_of = None if order is None else {c: k for k, c in enumerate(order)}

    def _lead(self, row: Row) -> int:
        if self._rank_of is None:
            return min(row)
        return min(row, key=self._rank_of.__getitem__)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        for c in [c for c in row if c in self.pivots]:
            v = row.get(c)
            if v:
                _axpy(row, -v, self.pivots[c])
        return row

    def add(self, row: Row) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        c = self._lead(r)
        inv = ONE / r[c]
        r = {j: v * inv for j, v in r.items()}
        for prow in self.pivots.values():
            v = prow.get(c)
            if v:
                _axpy(prow, -v, r)
        self.pivots[c] = r
        return True

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def sorted_pivots(self) -> list[int]:
        if self._rank_of is None:
            return sorted(self.pivots)
        return sorted(self.pivots, key=self._rank_of.__getitem__)

    def nullspace(self) -> list[Row]:
        """Basis of {x : row . x = 0 for every added row}, one vector per free column."""
        basis = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            v = {f: ONE}
            for c, prow in self.pivots.items():
                a = prow.get(f)
                if a:
                    v[c] = -a
            basis.append(v)
        return basis


def echelon(rows: Iterable[Row], ncols: int, pivot: str = "first") -> Echelon:
    order = None if pivot == "first" else list(range(ncols - 1, -1, -1))
    e = Echelon(ncols, order)
    for r in rows:
        if r:
            e.add(r)
    return e


def rank(m: SpMat) -> int:
    return echelon(m.rows.values(), m.ncols).rank


def nullspace(m: SpMat) -> list[Row]:
    return echelon(m.rows.values(), m.ncols).nullspace()


def rank_factorization(m: SpMat, pivot: str = "first") -> tuple[SpMat, SpMat, list[int]]:
    """Return (C, R, pivots) with m == C @ R, C = m[:, pivots], R in RREF."""
    e = echelon((m.rows[i] for i in sorted(m.rows)), m.ncols, pivot)
    piv = e.sorted_pivots()
    r = len(piv)
    R = SpMat(r, m.ncols, {k: dict(e.pivots[c]) for k, c in enumerate(piv)})
    pos = {c: k for k, c in enumerate(piv)}
    C = SpMat(m.nrows, r)
    for i, row in m.rows.items():
        d = {pos[c]: v for c, v in row.items() if c in pos}
        if d:
            C.rows[i] = d
    return C, R, piv


def inverse(m: SpMat) -> SpMat:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    # Gauss-Jordan on [m | I]
    rows = []
    for i in range(n):
        r = dict(m.rows.get(i, {}))
        r[n + i] = ONE
        rows.append(r)
    e = Echelon(2 * n)
    for r in rows:
        e.add(r)
    if any(c not in e.pivots for c in range(n)):
        raise ZeroDivisionError("matrix is singular")
    out = {}
    for c in range(n):
        d = {j - n: v for j, v in e.pivots[c].items() if j >= n}
        if d:
            out[c] = d
    return SpMat(n, n, out)


def solve(m: SpMat, b: Sequence) -> Optional[list]:
    """One solution x of m x = b (dense vectors), or None if inconsistent."""
    n = m.ncols
    e = Echelon(n + 1)
    for i in range(m.nrows):
        r = dict(m.rows.get(i, {}))
        if b[i]:
            r[n] = b[i]
        if r:
            e.add(r)
    if n in e.pivots:
        return None
    x = [ZERO] * n
    for c, prow in e.pivots.items():
        x[c] = prow.get(n, ZERO)
    return x


def krylov_minpoly(apply, v: Row, dim: int) -> list:
    """Monic polynomial p (lowest degree first) of least degree with p(A) v = 0.

    ``apply`` maps a sparse vector to its image under A.
    """
    vecs = [dict(v)]
    e = Echelon(dim + dim + 1)
    # track combinations: each Krylov vector carries a tag column dim + k
    while True:
        k = len(vecs) - 1
        tagged = dict(vecs[-1])
        tagged[dim + k] = ONE
        r = e.reduce(tagged)
        if not any(c < dim for c in r):
            # dependency: sum of tags in r equals zero combination
            coeffs = [ZERO] * (k + 1)
            for c, val in r.items():
                coeffs[c - dim] = val
            lead = coeffs[k]
            return [c / lead for c in coeffs]
        e.add(r)
        vecs.append(apply(vecs[-1]))
