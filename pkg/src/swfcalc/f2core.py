"""Exact linear algebra over GF(2) and homology of finite chain complexes.

Matrices are dense and bit-packed: each row is a Python int whose bit j is
the entry in column j, so a row operation is a single XOR on a machine-word
chunked integer.  Reduction always picks the lowest-index set bit as pivot,
which makes every output reproducible bit for bit.

Degrees of chain complexes are signed integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InputError, InvalidComplexError


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over GF(2).

    ``data[i]`` holds row i as a bitmask; bit j is the entry in column j.
    """

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows:
            raise InputError(
                f"row data has length {len(self.data)}, expected {self.rows}"
            )
        mask = (1 << self.cols) - 1
        for row in self.data:
            if row < 0 or row & ~mask:
                raise InputError("row bitmask has bits outside the column range")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        """Build from a list of 0/1 entry lists."""
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for entries in rows:
            if len(entries) != cols:
                raise InputError("ragged rows in matrix input")
            mask = 0
            for j, e in enumerate(entries):
                if e not in (0, 1):
                    raise InputError(f"matrix entry {e!r} is not a bit")
                mask |= e << j
            data.append(mask)
        return cls(len(rows), cols, tuple(data))

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(row == 0 for row in self.data)

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.cols):
            mask = 0
            for i in range(self.rows):
                mask |= ((self.data[i] >> j) & 1) << i
            cols.append(mask)
        return BitMatrix(self.cols, self.rows, tuple(cols))

    def mul(self, other: "BitMatrix") -> "BitMatrix":
        """Matrix product self @ other over GF(2)."""
        if self.cols != other.rows:
            raise InputError(
                f"shape mismatch in product: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        out = []
        for row in self.data:
            acc = 0
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                acc ^= other.data[j]
                r &= r - 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec: int) -> int:
        """Apply to a column vector given as a bitmask over the columns."""
        acc = 0
        v = vec
        while v:
            j = (v & -v).bit_length() - 1
            acc ^= self.column(j)
            v &= v - 1
        return acc

    def column(self, j: int) -> int:
        mask = 0
        for i in range(self.rows):
            mask |= ((self.data[i] >> j) & 1) << i
        return mask


def rank(m: BitMatrix) -> int:
    """GF(2) rank by Gaussian elimination (pivot = first set bit)."""
    work = list(m.data)
    rk = 0
    for col in range(m.cols):
        pivot = None
        for i in range(rk, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for i in range(len(work)):
            if i != rk and (work[i] >> col) & 1:
                work[i] ^= work[rk]
        rk += 1
        if rk == len(work):
            break
    return rk


def solve(m: BitMatrix, target: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Return some x with m*x = target, or None if target is not in the column span.

    Free variables are set to 0, so the answer is deterministic.
    """
    if len(target) != m.rows:
        raise InputError(
            f"target has length {len(target)}, expected {m.rows} (matrix rows)"
        )
    for b in target:
        if b not in (0, 1):
            raise InputError(f"target entry {b!r} is not a bit")
    n = m.cols
    aug = [m.data[i] | (target[i] << n) for i in range(m.rows)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(aug)):
            if (aug[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        for i in range(len(aug)):
            if i != r and (aug[i] >> col) & 1:
                aug[i] ^= aug[r]
        pivot_cols.append(col)
        r += 1
        if r == len(aug):
            break
    lhs_mask = (1 << n) - 1
    for i in range(r, len(aug)):
        if aug[i] & lhs_mask == 0 and (aug[i] >> n) & 1:
            return None
    x = [0] * n
    for i, col in enumerate(pivot_cols):
        x[col] = (aug[i] >> n) & 1
    return tuple(x)


def inverse(m: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix; raises InputError if singular."""
    if m.rows != m.cols:
        raise InputError("only square matrices can be inverted")
    n = m.rows
    aug = [m.data[i] | (1 << (n + i)) for i in range(n)]
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, n):
            if (aug[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            raise InputError("matrix is singular over GF(2)")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        for i in range(n):
            if i != r and (aug[i] >> col) & 1:
                aug[i] ^= aug[r]
        r += 1
    return BitMatrix(n, n, tuple(row >> n for row in aug))


def row_space_basis(rows: Iterable[int], cols: int) -> list[int]:
    """Reduced basis of the span of the given row bitmasks."""
    basis: list[int] = []
    for row in rows:
        v = row
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            for i, b in enumerate(basis):
                if b & (v & -v):
                    basis[i] = b ^ v
            basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return basis


def span_dim(vectors: Iterable[int], cols: int) -> int:
    return len(row_space_basis(vectors, cols))


def in_span(vec: int, basis: Sequence[int]) -> bool:
    v = vec
    for b in basis:
        low = b & -b
        if v & low:
            v ^= b
    return v == 0


def image_basis(m: BitMatrix) -> list[int]:
    """Basis of the column space, as bitmasks over the row indices."""
    return row_space_basis(m.transpose().data, m.rows)


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of {x : m*x = 0}, as bitmasks over the column indices."""
    work = list(m.data)
    pivot_cols: list[int] = []
    r = 0
    for col in range(m.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
        pivot_cols.append(col)
        r += 1
    pivots = set(pivot_cols)
    basis = []
    for free in range(m.cols):
        if free in pivots:
            continue
        vec = 1 << free
        for i, col in enumerate(pivot_cols):
            if (work[i] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def intersect_spans(a: Sequence[int], b: Sequence[int], cols: int) -> list[int]:
    """Basis of span(a) & span(b) inside GF(2)^cols (Zassenhaus)."""
    # Rows [x | x] for x in a, [y | 0] for y in b; after elimination the
    # rows whose left half vanished carry the intersection in the right half.
    work = [x | (x << cols) for x in a] + [y for y in b]
    r = 0
    for col in range(cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
        r += 1
    tail = [row >> cols for row in work[r:] if row >> cols]
    return row_space_basis(tail, cols) if tail else []


@dataclass(frozen=True, eq=False)
class ChainComplexF2:
    """A finite chain complex of GF(2) vector spaces.

    ``boundaries[d]`` maps degree d to degree d-1 and has shape
    dims(d-1) x dims(d).  Matrices for degrees outside ``dims`` are zero.
    """

    dims: Mapping[int, int]
    boundaries: Mapping[int, BitMatrix]

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def boundary(self, d: int) -> BitMatrix:
        m = self.boundaries.get(d)
        if m is None:
            return BitMatrix.zeros(self.dim(d - 1), self.dim(d))
        return m


def _validate_complex(c: ChainComplexF2) -> None:
    for d, n in c.dims.items():
        if n < 0:
            raise InvalidComplexError(f"negative dimension {n} in degree {d}")
    for d, m in c.boundaries.items():
        if m.rows != c.dim(d - 1) or m.cols != c.dim(d):
            raise InvalidComplexError(
                f"boundary in degree {d} has shape {m.rows}x{m.cols}, "
                f"expected {c.dim(d - 1)}x{c.dim(d)}"
            )
    for d in sorted(c.boundaries):
        upper = c.boundary(d + 1)
        if upper.rows and upper.cols and not c.boundary(d).mul(upper).is_zero():
            raise InvalidComplexError(f"boundary squared is non-zero in degree {d + 1}")


def homology_dims(c: ChainComplexF2) -> dict[int, int]:
    """Dimension of H_d for every degree in the complex's support.

    dim H_d = dims(d) - rank(boundary_d) - rank(boundary_{d+1}); the
    complex is checked to satisfy boundary * boundary = 0 first.
    """
    _validate_complex(c)
    return {
        d: c.dim(d) - rank(c.boundary(d)) - rank(c.boundary(d + 1))
        for d in sorted(c.dims)
    }
