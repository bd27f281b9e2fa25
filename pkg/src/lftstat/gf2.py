"""
Dense linear algebra over GF(2).

Rows are bit-packed into Python ints: bit ``j`` of ``rows[i]`` is the entry
in row ``i``, column ``j``.  Matrices are immutable and hashable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class ShapeError(ValueError):
    """Raised when matrix dimensions are incompatible."""


class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2) with bit-packed rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[int]):
        if rows < 1 or cols < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        data = tuple(data)
        if len(data) != rows:
            raise ShapeError(f"expected {rows} packed rows, got {len(data)}")
        limit = 1 << cols
        for r in data:
            if r < 0 or r >= limit:
                raise ShapeError(f"packed row {r:#x} does not fit in {cols} columns")
        self.rows = rows
        self.cols = cols
        self.data = data

    # construction -----------------------------------------------------

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        if not entries or not entries[0]:
            raise ShapeError("matrix must have at least one row and one column")
        cols = len(entries[0])
        packed = []
        for row in entries:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            word = 0
            for j, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ValueError(f"entry {bit!r} is not a bit")
                word |= bit << j
            packed.append(word)
        return cls(len(entries), cols, packed)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        """Parse rows written as 0/1 strings, e.g. ``["0110", "1000"]``."""
        if not lines:
            raise ShapeError("matrix must have at least one row")
        entries = []
        for line in lines:
            if not line:
                raise ShapeError("empty row")
            if set(line) - {"0", "1"}:
                raise ValueError(f"row {line!r} is not a 0/1 string")
            entries.append([int(ch) for ch in line])
        return cls.from_lists(entries)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ShapeError("expected a 2-d array")
        return cls.from_lists((arr.astype(np.int64) & 1).tolist())

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, (1 << i for i in range(n)))

    @classmethod
    def column(cls, bits: Sequence[int]) -> "BitMatrix":
        return cls.from_lists([[b] for b in bits])

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8)

    def to_strings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.data]

    def column_word(self) -> int:
        """Pack an ``n x 1`` column vector into an int (bit ``i`` = entry ``i``)."""
        if self.cols != 1:
            raise ShapeError(f"expected a column vector, got {self.rows}x{self.cols}")
        word = 0
        for i, r in enumerate(self.data):
            word |= r << i
        return word

    @classmethod
    def from_column_word(cls, word: int, n: int) -> "BitMatrix":
        return cls(n, 1, ((word >> i) & 1 for i in range(n)))

    def is_zero(self) -> bool:
        return not any(self.data)

    @property
    def T(self) -> "BitMatrix":
        out = []
        for j in range(self.cols):
            word = 0
            for i, r in enumerate(self.data):
                word |= ((r >> j) & 1) << i
            out.append(word)
        return BitMatrix(self.cols, self.rows, out)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(self.rows, self.cols, (a ^ b for a, b in zip(self.data, other.data)))

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()!r})"

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    brows = b.data
    out = []
    for r in a.data:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= brows[j]
            r >>= 1
            j += 1
        out.append(acc)
    return BitMatrix(a.rows, b.cols, out)


def stack(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
    """Vertical concatenation."""
    if top.cols != bottom.cols:
        raise ShapeError(f"cannot stack {top.cols}-column and {bottom.cols}-column matrices")
    return BitMatrix(top.rows + bottom.rows, top.cols, top.data + bottom.data)


def _echelon_rows(rows: Sequence[int]) -> list[int]:
    """Return a row basis where each row has a distinct lowest set bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            pivot = basis.get(low)
            if pivot is None:
                basis[low] = r
                break
            r ^= pivot
    return list(basis.values())


def rank_of_words(rows: Sequence[int]) -> int:
    """Rank of a list of packed rows."""
    return len(_echelon_rows(rows))


def rank(m: BitMatrix) -> int:
    """Rank over GF(2)."""
    return rank_of_words(m.data)


def rref(m: BitMatrix) -> BitMatrix:
    """Reduced row echelon form over GF(2).

    Pivot columns increase down the rows, each pivot column has a single 1,
    and zero rows come last.
    """
    rows = list(m.data)
    nrows = len(rows)
    pivot_row = 0
    for col in range(m.cols):
        bit = 1 << col
        found = next((i for i in range(pivot_row, nrows) if rows[i] & bit), -1)
        if found < 0:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        prow = rows[pivot_row]
        for i in range(nrows):
            if i != pivot_row and rows[i] & bit:
                rows[i] ^= prow
        pivot_row += 1
        if pivot_row == nrows:
            break
    return BitMatrix(m.rows, m.cols, rows)


def is_rref(m: BitMatrix) -> bool:
    return rref(m) == m


def random_matrix(rows: int, cols: int, rng: np.random.Generator) -> BitMatrix:
    """Uniform random matrix; each entry an independent fair bit from ``rng``."""
    if rows < 1 or cols < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
    return BitMatrix(rows, cols, random_words(rows, cols, rng))


def random_words(rows: int, cols: int, rng: np.random.Generator) -> list[int]:
    """Draw ``rows`` packed rows of ``cols`` fair bits each."""
    if cols <= 62:
        return rng.integers(0, 1 << cols, size=rows, dtype=np.int64).tolist()
    bits = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
    return [int("".join(map(str, row[::-1])), 2) for row in bits]
