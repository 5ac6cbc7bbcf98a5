"""Exact linear algebra over the rationals.

Everything in the package that smells like numerics goes through this
module, and this module only ever touches ``fractions.Fraction``.  No
floats, no numpy: results are exact and runs are deterministic, which
the rest of the code relies on when it freezes computed values into
regression tests.

The central object is :class:`RatMatrix`, a dense matrix of Fractions
with reduced row echelon form, kernel/image bases and linear solving.
Echelon-based outputs are *canonical*: the same subspace always yields
the same basis, so callers may compare bases by equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction | int

__all__ = [
    "RatMatrix",
    "rank_kernel",
    "solve",
    "image_basis",
]


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """Dense rational matrix (row-major list of lists of Fraction)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[Rat]], cols: int | None = None):
        """Build from an iterable of rows.

        ``cols`` disambiguates the width of a matrix with zero rows;
        otherwise it is inferred (and checked) from the rows.
        """
        self.data: list[list[Fraction]] = [[_frac(x) for x in row] for row in data]
        self.rows: int = len(self.data)
        if self.rows:
            widths = {len(r) for r in self.data}
            if len(widths) != 1:
                raise ValueError(f"ragged rows: widths {sorted(widths)}")
            inferred = widths.pop()
            if cols is not None and cols != inferred:
                raise ValueError(f"cols={cols} but rows have width {inferred}")
            self.cols: int = inferred
        else:
            if cols is None:
                raise ValueError("zero-row matrix needs an explicit column count")
            self.cols = cols

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls.zeros(n, n)
        one = Fraction(1)
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def column(cls, entries: Sequence[Rat]) -> "RatMatrix":
        return cls([[x] for x in entries], cols=1)

    def copy(self) -> "RatMatrix":
        return RatMatrix([row[:] for row in self.data], cols=self.cols)

    # ------------------------------------------------------------------
    # basic protocol

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij: tuple[int, int], val: Rat) -> None:
        i, j = ij
        self.data[i][j] = _frac(val)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"RatMatrix.zeros({self.rows}, {self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix[{body}]"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return RatMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-x for x in row] for row in self.data], cols=self.cols)

    def scale(self, c: Rat) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix([[c * x for x in row] for row in self.data], cols=self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = RatMatrix.zeros(self.rows, other.cols)
        od = other.data
        for i, row in enumerate(self.data):
            acc = out.data[i]
            for k, a in enumerate(row):
                if a == 0:
                    continue
                ok = od[k]
                for j in range(other.cols):
                    b = ok[j]
                    if b != 0:
                        acc[j] += a * b
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def apply(self, vec: Sequence[Rat]) -> list[Fraction]:
        """Matrix-vector product (vec as a column of length ``cols``)."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != cols {self.cols}")
        v = [_frac(x) for x in vec]
        return [
            sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.data
        ]

    # ------------------------------------------------------------------
    # block assembly

    @classmethod
    def vstack(cls, blocks: Iterable["RatMatrix"]) -> "RatMatrix":
        blocks = list(blocks)
        if not blocks:
            raise ValueError("vstack of nothing")
        w = blocks[0].cols
        rows: list[list[Fraction]] = []
        for b in blocks:
            if b.cols != w:
                raise ValueError("vstack width mismatch")
            rows.extend(row[:] for row in b.data)
        return cls(rows, cols=w)

    @classmethod
    def hstack(cls, blocks: Iterable["RatMatrix"]) -> "RatMatrix":
        blocks = list(blocks)
        if not blocks:
            raise ValueError("hstack of nothing")
        h = blocks[0].rows
        for b in blocks:
            if b.rows != h:
                raise ValueError("hstack height mismatch")
        rows = [sum((b.data[i] for b in blocks), []) for i in range(h)]
        return cls(rows, cols=sum(b.cols for b in blocks))

    # ------------------------------------------------------------------
    # echelon machinery

    def rref(self) -> tuple["RatMatrix", list[int]]:
        """Reduced row echelon form.

        Returns ``(R, pivots)`` where ``R`` is the RREF and ``pivots``
        the list of pivot column indices in increasing order.  Gaussian
        elimination with exact pivoting; no magnitude concerns over Q,
        so the first nonzero entry in the current column is the pivot.
        """
        m = [row[:] for row in self.data]
        nrows, ncols = self.rows, self.cols
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            if pv != 1:
                inv = Fraction(1) / pv
                m[r] = [x * inv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    mr = m[r]
                    m[i] = [a - f * b for a, b in zip(m[i], mr)]
            pivots.append(c)
            r += 1
        return RatMatrix(m, cols=ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list[Fraction]]:
        """Canonical basis of the right kernel, one vector per free column.

        Vector for free column ``f`` has entry 1 at ``f``, the negated
        RREF coefficients at the pivot positions, zero elsewhere.  The
        list is ordered by free column index, so it is unique given the
        matrix — handy for reproducible hom-space bases downstream.
        """
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis: list[list[Fraction]] = []
        zero = Fraction(0)
        for f in free:
            v = [zero] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -R.data[i][f]
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence[Rat]) -> list[Fraction] | None:
        """One solution of ``self @ x = rhs`` or None if inconsistent.

        Free variables are set to zero, which pins down the output
        uniquely.  Raises on a length mismatch — that is a programming
        error, not an unsolvable system.
        """
        if len(rhs) != self.rows:
            raise ValueError(f"rhs length {len(rhs)} != rows {self.rows}")
        aug = RatMatrix(
            [row + [_frac(b)] for row, b in zip(self.data, rhs)],
            cols=self.cols + 1,
        )
        R, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None  # a row reduced to [0 ... 0 | 1]
        x = [Fraction(0)] * self.cols
        for i, p in enumerate(pivots):
            x[p] = R.data[i][self.cols]
        return x

    def image_basis(self) -> list[list[Fraction]]:
        """Canonical echelon basis of the column space.

        Computed as the nonzero rows of ``rref(self^T)``; two matrices
        with the same column space give literally equal output.
        """
        R, pivots = self.transpose().rref()
        return [R.data[i][:] for i in range(len(pivots))]

    def inverse(self) -> "RatMatrix":
        """Inverse of a square matrix (raises on singular input)."""
        if self.rows != self.cols:
            raise ValueError(f"inverse of non-square {self.shape}")
        n = self.rows
        aug = RatMatrix.hstack([self, RatMatrix.identity(n)])
        R, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix([row[n:] for row in R.data], cols=n)


# ----------------------------------------------------------------------
# module-level convenience wrappers


def rank_kernel(m: RatMatrix) -> tuple[int, list[list[Fraction]]]:
    """Rank and canonical kernel basis in one echelon pass."""
    R, pivots = m.rref()
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis: list[list[Fraction]] = []
    zero = Fraction(0)
    for f in free:
        v = [zero] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R.data[i][f]
        basis.append(v)
    return len(pivots), basis


def solve(m: RatMatrix, rhs: Sequence[Rat]) -> list[Fraction] | None:
    return m.solve(rhs)


def image_basis(m: RatMatrix) -> list[list[Fraction]]:
    return m.image_basis()
