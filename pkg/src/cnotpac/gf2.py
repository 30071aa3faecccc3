"""Linear algebra over F_2 with vectors packed into Python ints.

A vector in F_2^n is an int whose bit j is coordinate j.  A matrix is a
list of such row ints plus an explicit column count.  Elimination is
plain XOR on ints, which keeps the hot paths allocation-free and lets
augmented payloads (identity blocks, right-hand sides) ride along in the
bits above the column count.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional


def dot(u: int, v: int) -> int:
    """Inner product of two packed vectors over F_2."""
    return (u & v).bit_count() & 1


class SingularMatrixError(ValueError):
    """Raised when an operation needs an invertible matrix and got none."""


def _insert(table: dict, vec: int) -> bool:
    """Reduce ``vec`` against an echelon table keyed by pivot position.

    If the reduced vector is nonzero it is inserted under its leading bit
    and True is returned; a vector already in the span leaves the table
    unchanged and returns False.
    """
    while vec:
        p = vec.bit_length() - 1
        if p not in table:
            table[p] = vec
            return True
        vec ^= table[p]
    return False


def _rref(rows: list, n_cols: int) -> tuple:
    """Reduced row echelon form, pivoting on the highest column first.

    Bits at positions >= n_cols are treated as an augmentation payload
    and transformed along with the matrix part.  Returns (rows, pivots)
    where pivots[r] is the pivot column of row r; rows beyond len(pivots)
    have zero matrix part.
    """
    rows = list(rows)
    pivots = []
    r = 0
    for col in range(n_cols - 1, -1, -1):
        pick = None
        for i in range(r, len(rows)):
            if (rows[i] >> col) & 1:
                pick = i
                break
        if pick is None:
            continue
        rows[r], rows[pick] = rows[pick], rows[r]
        for i in range(len(rows)):
            if i != r and ((rows[i] >> col) & 1):
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return rows, pivots


class BitMatrix:
    """Dense F_2 matrix stored as a list of packed row ints."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, rows: Iterable[int], n_cols: int):
        rows = list(rows)
        if n_cols < 0:
            raise ValueError("negative column count")
        mask = (1 << n_cols) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise ValueError("row %r does not fit in %d columns" % (r, n_cols))
        self.rows = rows
        self.n_rows = len(rows)
        self.n_cols = n_cols

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls([0] * n_rows, n_cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_dense(cls, entries) -> "BitMatrix":
        """Build from a list of rows of 0/1 entries (entries[i][j] = row i, col j)."""
        n_cols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != n_cols:
                raise ValueError("ragged rows")
            acc = 0
            for j, e in enumerate(row):
                if e & 1:
                    acc |= 1 << j
            rows.append(acc)
        return cls(rows, n_cols)

    @classmethod
    def from_columns(cls, cols: Iterable[int], n_rows: int) -> "BitMatrix":
        """Build from packed column ints (cols[j] bit i = row i, col j)."""
        cols = list(cols)
        rows = []
        for i in range(n_rows):
            acc = 0
            for j, c in enumerate(cols):
                acc |= ((c >> i) & 1) << j
            rows.append(acc)
        return cls(rows, len(cols))

    def copy(self) -> "BitMatrix":
        return BitMatrix(list(self.rows), self.n_cols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        acc = 0
        for i, r in enumerate(self.rows):
            acc |= ((r >> j) & 1) << i
        return acc

    def to_dense(self) -> list:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def transpose(self) -> "BitMatrix":
        return BitMatrix([self.column(j) for j in range(self.n_cols)], self.n_rows)

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product M v; bit i of the result is <row_i, v>."""
        acc = 0
        for i, r in enumerate(self.rows):
            acc |= dot(r, v) << i
        return acc

    def premul_vec(self, v: int) -> int:
        """Vector-matrix product v^T M (equivalently M^T v): XOR of the rows picked by v."""
        acc = 0
        i = 0
        while v:
            if v & 1:
                acc ^= self.rows[i]
            v >>= 1
            i += 1
        return acc

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("dimension mismatch")
        return BitMatrix([other.premul_vec(r) for r in self.rows], other.n_cols)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return self.matmul(other)

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        return BitMatrix([a ^ b for a, b in zip(self.rows, other.rows)], self.n_cols)

    def add_col(self, src: int, dst: int) -> None:
        """XOR column src into column dst, in place."""
        for i, r in enumerate(self.rows):
            self.rows[i] ^= ((r >> src) & 1) << dst

    def rank(self) -> int:
        _, pivots = _rref(self.rows, self.n_cols)
        return len(pivots)

    def determinant(self) -> int:
        if self.n_rows != self.n_cols:
            raise ValueError("determinant of a non-square matrix")
        return 1 if self.rank() == self.n_rows else 0

    def is_invertible(self) -> bool:
        return self.n_rows == self.n_cols and self.rank() == self.n_rows

    def inverse(self) -> "BitMatrix":
        if self.n_rows != self.n_cols:
            raise SingularMatrixError("non-square matrix")
        n = self.n_cols
        aug = [self.rows[i] | (1 << (n + i)) for i in range(n)]
        red, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        inv = [0] * n
        for r, p in enumerate(pivots):
            inv[p] = red[r] >> n
        return BitMatrix(inv, n)

    def solve(self, b: int) -> int:
        """Unique solution of M x = b; raises SingularMatrixError otherwise."""
        sol = self.solve_affine(b)
        if sol is None or sol.dim != 0:
            raise SingularMatrixError("system has no unique solution")
        return sol.offset

    def solve_affine(self, b: int) -> Optional["AffineSubspace"]:
        """All solutions of M x = b as an affine subspace, or None if inconsistent."""
        n = self.n_cols
        aug = [self.rows[i] | (((b >> i) & 1) << n) for i in range(self.n_rows)]
        red, pivots = _rref(aug, n)
        mask = (1 << n) - 1
        for r in range(len(pivots), self.n_rows):
            if red[r] >> n:
                return None
        x0 = 0
        for r, p in enumerate(pivots):
            if red[r] >> n:
                x0 |= 1 << p
        return AffineSubspace(n, x0, self._null_basis(red, pivots))

    def null_space(self) -> list:
        """Basis (list of packed vectors) of the kernel {x : M x = 0}."""
        red, pivots = _rref(self.rows, self.n_cols)
        return self._null_basis(red, pivots)

    def _null_basis(self, red: list, pivots: list) -> list:
        basis = []
        pivot_set = set(pivots)
        for f in range(self.n_cols - 1, -1, -1):
            if f in pivot_set:
                continue
            v = 1 << f
            for r, p in enumerate(pivots):
                if (red[r] >> f) & 1:
                    v |= 1 << p
            basis.append(v)
        return basis

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n_cols, tuple(self.rows)))

    def __repr__(self) -> str:
        return "BitMatrix(%r, n_cols=%d)" % (self.rows, self.n_cols)


class AffineSubspace:
    """An affine subspace offset + span(basis) of F_2^n in canonical form.

    The canonical form keeps the basis fully reduced (each vector owns a
    distinct leading bit that is zero in every other basis vector, sorted
    by leading bit descending) and clears every pivot bit of the offset.
    Two equal subspaces therefore compare equal field-by-field, and the
    canonical offset is the minimum member of the coset as an integer.
    """

    __slots__ = ("n", "offset", "basis")

    def __init__(self, n: int, offset: int, vectors: Iterable[int] = ()):
        if offset < 0 or offset >> n:
            raise ValueError("offset outside F_2^%d" % n)
        table: dict = {}
        for v in vectors:
            if v < 0 or v >> n:
                raise ValueError("vector outside F_2^%d" % n)
            _insert(table, v)
        pivots = sorted(table)
        for p in pivots:  # ascending, so lower vectors are final when used
            v = table[p]
            for p2 in pivots:
                if p2 < p and ((v >> p2) & 1):
                    v ^= table[p2]
            table[p] = v
        for p in sorted(table, reverse=True):
            if (offset >> p) & 1:
                offset ^= table[p]
        self.n = n
        self.offset = offset
        self.basis = tuple(table[p] for p in sorted(table, reverse=True))

    @classmethod
    def full(cls, n: int) -> "AffineSubspace":
        return cls(n, 0, [1 << i for i in range(n)])

    @classmethod
    def single(cls, n: int, point: int) -> "AffineSubspace":
        return cls(n, point)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: int) -> bool:
        r = x ^ self.offset
        for v in self.basis:
            if (r >> (v.bit_length() - 1)) & 1:
                r ^= v
        return r == 0

    def points(self) -> Iterator[int]:
        """Iterate all 2^dim members (intended for small dimensions)."""
        for mask in range(1 << len(self.basis)):
            x = self.offset
            m = mask
            i = 0
            while m:
                if m & 1:
                    x ^= self.basis[i]
                m >>= 1
                i += 1
            yield x

    def constraints(self) -> tuple:
        """A linear system (C, d) with self == {x : C x = d}."""
        span = BitMatrix(list(self.basis), self.n)
        c_rows = span.null_space() if self.basis else [1 << i for i in range(self.n)]
        c = BitMatrix(c_rows, self.n)
        d = 0
        for i, row in enumerate(c_rows):
            d |= dot(row, self.offset) << i
        return c, d

    def intersect(self, other: "AffineSubspace") -> Optional["AffineSubspace"]:
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        c1, d1 = self.constraints()
        c2, d2 = other.constraints()
        stacked = BitMatrix(c1.rows + c2.rows, self.n)
        return stacked.solve_affine(d1 | (d2 << c1.n_rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineSubspace)
            and self.n == other.n
            and self.offset == other.offset
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.n, self.offset, self.basis))

    def __repr__(self) -> str:
        return "AffineSubspace(n=%d, offset=%d, basis=%r)" % (
            self.n,
            self.offset,
            self.basis,
        )


def complete_to_basis(vectors, n: int, rng) -> list:
    """Extend independent vectors to a full basis of F_2^n with random draws.

    Makes exactly one rng.randrange(1 << n) call per draw, accepted or
    not, so callers can meter the draw count by wrapping the rng.
    Returns the input vectors (in order) followed by the accepted draws.
    """
    table: dict = {}
    out = []
    for v in vectors:
        if not _insert(table, v):
            raise ValueError("input vectors are dependent")
        out.append(v)
    if len(out) > n:
        raise ValueError("more vectors than the dimension")
    while len(out) < n:
        draw = rng.randrange(1 << n)
        if _insert(table, draw):
            out.append(draw)
    return out


def deterministic_completion(vectors, n: int) -> list:
    """Like complete_to_basis but fills in greedily with unit vectors."""
    table: dict = {}
    out = []
    for v in vectors:
        if not _insert(table, v):
            raise ValueError("input vectors are dependent")
        out.append(v)
    if len(out) > n:
        raise ValueError("more vectors than the dimension")
    for i in range(n):
        if len(out) == n:
            break
        if _insert(table, 1 << i):
            out.append(1 << i)
    return out
