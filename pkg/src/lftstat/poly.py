"""
Polynomials over GF(2), the local ring F2[z]_S, polynomial matrices and
Smith normal form.

A polynomial is packed into an int with bit ``i`` holding the coefficient of
``z**i``.  The raw-int helpers (``pmul``, ``pdivmod``, ...) are what the hot
loops use; :class:`Poly2` wraps them for the public API.

F2[z]_S is the ring of fractions ``f/g`` with ``g(0) = 1``.  Up to units its
only irreducible element is ``z``, so invariant factors there are powers of
``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .gf2 import ShapeError

NEG_INF = -math.inf


class NotInvertibleError(ArithmeticError):
    """Raised when an element is not a unit of F2[z]_S (it is divisible by z)."""


# raw int polynomial arithmetic ----------------------------------------


def pmul(a: int, b: int) -> int:
    """Carry-less product of two packed polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    la = a.bit_length()
    while la >= db:
        s = la - db
        q |= 1 << s
        a ^= b << s
        la = a.bit_length()
    return q, a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def pval(a: int) -> int:
    """Index of the lowest set coefficient (z-adic valuation) of a nonzero poly."""
    return (a & -a).bit_length() - 1


def pdeg(a: int) -> int:
    return a.bit_length() - 1


def pstr(a: int) -> str:
    """Coefficient string, lowest degree first; ``"0"`` for the zero poly."""
    if not a:
        return "0"
    return "".join(str((a >> i) & 1) for i in range(a.bit_length()))


# Poly2 ----------------------------------------------------------------


class Poly2:
    """Element of F2[z]."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("packed coefficients must be nonnegative")
        self.bits = bits

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Poly2":
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_string(cls, text: str) -> "Poly2":
        """Parse a lowest-degree-first coefficient string such as ``"011"``."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"{text!r} is not a coefficient bit string")
        return cls.from_coeffs(int(ch) for ch in text)

    @classmethod
    def z(cls, power: int = 1) -> "Poly2":
        return cls(1 << power)

    @property
    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    @property
    def degree(self) -> float:
        return pdeg(self.bits) if self.bits else NEG_INF

    def is_zero(self) -> bool:
        return not self.bits

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.bits ^ _as_bits(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        return Poly2(pmul(self.bits, _as_bits(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly2":
        r, base = 1, self.bits
        while k:
            if k & 1:
                r = pmul(r, base)
            base = pmul(base, base)
            k >>= 1
        return Poly2(r)

    def __divmod__(self, other: "Poly2") -> tuple["Poly2", "Poly2"]:
        q, r = pdivmod(self.bits, _as_bits(other))
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: "Poly2") -> "Poly2":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly2") -> "Poly2":
        return divmod(self, other)[1]

    def divides(self, other: "Poly2") -> bool:
        if not self.bits:
            return not _as_bits(other)
        return pdivmod(_as_bits(other), self.bits)[1] == 0

    def __call__(self, x: int) -> int:
        """Evaluate at ``x`` in GF(2)."""
        if x & 1:
            return bin(self.bits).count("1") & 1
        return self.bits & 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly2", self.bits))

    def __str__(self) -> str:
        return pstr(self.bits)

    def __repr__(self) -> str:
        if not self.bits:
            return "Poly2(0)"
        terms = []
        for i in range(self.bits.bit_length()):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "z" if i == 1 else f"z^{i}")
        return f"Poly2({' + '.join(terms)})"


def _as_bits(p) -> int:
    if isinstance(p, Poly2):
        return p.bits
    if isinstance(p, int):
        if p < 0:
            raise ValueError("packed coefficients must be nonnegative")
        return p
    raise TypeError(f"expected Poly2, got {type(p).__name__}")


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    """Greatest common divisor (monic by default over GF(2))."""
    if not a.bits and not b.bits:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    return Poly2(pgcd(a.bits, b.bits))


def z_valuation(p: Poly2) -> int:
    """Largest ``k`` with ``z**k`` dividing ``p``."""
    if not p.bits:
        raise ValueError("the zero polynomial has no finite z-valuation")
    return pval(p.bits)


# F2[z]_S ----------------------------------------------------------------


class LocalFrac:
    """Reduced fraction ``num/den`` with ``den(0) = 1``."""

    __slots__ = ("_num", "_den")

    def __init__(self, num, den=1):
        n, d = _as_bits(num), _as_bits(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self._num, self._den = 0, 1
            return
        g = pgcd(n, d)
        if g != 1:
            n, d = pdivmod(n, g)[0], pdivmod(d, g)[0]
        if not d & 1:
            raise NotInvertibleError(
                f"denominator {pstr(d)} has zero constant term; not in F2[z]_S"
            )
        self._num, self._den = n, d

    @property
    def num(self) -> Poly2:
        return Poly2(self._num)

    @property
    def den(self) -> Poly2:
        return Poly2(self._den)

    def is_zero(self) -> bool:
        return not self._num

    def valuation(self) -> int:
        """z-adic valuation; the denominator is a unit so only the numerator counts."""
        if not self._num:
            raise ValueError("zero has no finite valuation")
        return pval(self._num)

    def __add__(self, other) -> "LocalFrac":
        o = _as_frac(other)
        if self._den == o._den:
            return LocalFrac(self._num ^ o._num, self._den)
        return LocalFrac(
            pmul(self._num, o._den) ^ pmul(o._num, self._den), pmul(self._den, o._den)
        )

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other) -> "LocalFrac":
        o = _as_frac(other)
        return LocalFrac(pmul(self._num, o._num), pmul(self._den, o._den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LocalFrac":
        o = _as_frac(other)
        if not o._num:
            raise ZeroDivisionError("division by zero in F2[z]_S")
        return LocalFrac(pmul(self._num, o._den), pmul(self._den, o._num))

    def __rtruediv__(self, other) -> "LocalFrac":
        return _as_frac(other) / self

    def __eq__(self, other) -> bool:
        try:
            o = _as_frac(other)
        except TypeError:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self) -> int:
        return hash(("LocalFrac", self._num, self._den))

    def __repr__(self) -> str:
        if self._den == 1:
            return f"LocalFrac({pstr(self._num)})"
        return f"LocalFrac({pstr(self._num)}/{pstr(self._den)})"


def _as_frac(x) -> LocalFrac:
    if isinstance(x, LocalFrac):
        return x
    if isinstance(x, (Poly2, int)):
        return LocalFrac(x, 1)
    raise TypeError(f"cannot interpret {type(x).__name__} as LocalFrac")


def frac_arith(a: LocalFrac, b: LocalFrac, op: str) -> LocalFrac:
    """Apply ``op`` in ``{"add", "mul", "div"}``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# polynomial matrices --------------------------------------------------


class PolyMatrix:
    """``rows x cols`` matrix over F2[z]; entries stored as packed ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Sequence[Sequence]):
        if not entries or not entries[0]:
            raise ShapeError("polynomial matrix must be at least 1x1")
        cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise ShapeError("ragged rows")
        self.rows = len(entries)
        self.cols = cols
        self.data = tuple(tuple(_as_bits(x) for x in row) for row in entries)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, entries: Sequence, rows: int, cols: int) -> "PolyMatrix":
        out = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            out[i][i] = _as_bits(e)
        return cls(out)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> Poly2:
        i, j = idx
        return Poly2(self.data[i][j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(
            [[a ^ b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(_matmul(self.data, other.data, self.cols, other.rows))

    def scale(self, p) -> "PolyMatrix":
        b = _as_bits(p)
        return PolyMatrix([[pmul(b, x) for x in row] for row in self.data])

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def max_degree(self) -> float:
        d = max(x.bit_length() for row in self.data for x in row) - 1
        return d if d >= 0 else NEG_INF

    def to_strings(self) -> list[list[str]]:
        return [[pstr(x) for x in row] for row in self.data]

    def __repr__(self) -> str:
        return f"PolyMatrix({self.to_strings()!r})"


def _matmul(a, b, acols: int, brows: int) -> list[list[int]]:
    if acols != brows:
        raise ShapeError(f"inner dimensions differ: {acols} vs {brows}")
    bcols = len(b[0])
    out = []
    for row in a:
        new = [0] * bcols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(bcols):
                    if bk[j]:
                        new[j] ^= pmul(x, bk[j])
        out.append(new)
    return out


def _det_cofactor(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return pmul(m[0][0], m[1][1]) ^ pmul(m[0][1], m[1][0])
    acc = 0
    for j, x in enumerate(m[0]):
        if x:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            acc ^= pmul(x, _det_cofactor(minor))
    return acc


def _det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), -1)
            if swap < 0:
                return 0
            a[k], a[swap] = a[swap], a[k]
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                num = pmul(ri[j], akk) ^ pmul(aik, rk[j])
                if prev != 1:
                    num, rem = pdivmod(num, prev)
                    assert rem == 0, "inexact Bareiss division"
                ri[j] = num
            ri[k] = 0
        prev = akk
    return a[n - 1][n - 1]


def _det_raw(m: Sequence[Sequence[int]], method: str = "auto") -> int:
    rows = [list(r) for r in m]
    if method == "cofactor" or (method == "auto" and len(rows) <= 4):
        return _det_cofactor(rows)
    if method in ("bareiss", "auto"):
        return _det_bareiss(rows)
    raise ValueError(f"unknown determinant method {method!r}")


def det(m: PolyMatrix, method: str = "auto") -> Poly2:
    """Determinant in F2[z].

    ``method`` is ``"cofactor"``, ``"bareiss"`` or ``"auto"`` (cofactor up to
    4x4, Bareiss above).
    """
    if m.rows != m.cols:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    return Poly2(_det_raw(m.data, method))


def _adjugate_raw(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        rows = [r for k, r in enumerate(m) if k != i]
        for j in range(n):
            minor = [r[:j] + r[j + 1 :] for r in rows]
            # signs vanish in characteristic 2
            adj[j][i] = _det_raw(minor)
    return adj


def adjugate(m: PolyMatrix) -> PolyMatrix:
    """Classical adjoint: ``m @ adjugate(m) == det(m) * I``."""
    if m.rows != m.cols:
        raise ShapeError(f"adjugate of non-square {m.rows}x{m.cols} matrix")
    return PolyMatrix(_adjugate_raw(m.data))


# Smith normal form ----------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ original @ v == diag(factors, 0, ...)`` with ``u``, ``v`` unimodular."""

    u: PolyMatrix
    v: PolyMatrix
    factors: tuple[Poly2, ...]
    rank: int

    def diagonal(self, rows: int, cols: int) -> PolyMatrix:
        return PolyMatrix.diag([f.bits for f in self.factors], rows, cols)


def _snf_raw(a: Sequence[Sequence[int]], track: bool = True):
    """Euclidean Smith reduction on packed polys.

    Returns ``(u, v, factors)``; ``u`` and ``v`` are ``None`` when ``track`` is
    false.
    """
    rows, cols = len(a), len(a[0])
    A = [list(r) for r in a]
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)] if track else None
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)] if track else None
    factors: list[int] = []

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rs, rd = A[src], A[dst]
        for j in range(cols):
            if rs[j]:
                rd[j] ^= pmul(q, rs[j])
        if track:
            us, ud = U[src], U[dst]
            for j in range(rows):
                if us[j]:
                    ud[j] ^= pmul(q, us[j])

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] ^= pmul(q, row[src])
        if track:
            for row in V:
                if row[src]:
                    row[dst] ^= pmul(q, row[src])

    for t in range(min(rows, cols)):
        best, bi, bj = 0, -1, -1
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                x = Ai[j]
                if x and (not best or x.bit_length() < best):
                    best, bi, bj = x.bit_length(), i, j
        if bi < 0:
            break
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)

        while True:
            p = A[t][t]
            # clear column t below the pivot
            for i in range(t + 1, rows):
                if A[i][t]:
                    q, _ = pdivmod(A[i][t], p)
                    add_row(i, t, q)
            # clear row t right of the pivot
            for j in range(t + 1, cols):
                if A[t][j]:
                    q, _ = pdivmod(A[t][j], p)
                    add_col(j, t, q)
            # leftover remainders have smaller degree than p: promote one
            best, bi, bj = p.bit_length(), -1, -1
            for i in range(t + 1, rows):
                x = A[i][t]
                if x and x.bit_length() < best:
                    best, bi, bj = x.bit_length(), i, t
            for j in range(t + 1, cols):
                x = A[t][j]
                if x and x.bit_length() < best:
                    best, bi, bj = x.bit_length(), t, j
            if bi >= 0:
                if bi != t:
                    swap_rows(bi, t)
                if bj != t:
                    swap_cols(bj, t)
                continue
            # pivot must divide the whole trailing block
            bad = -1
            for i in range(t + 1, rows):
                if any(x and pdivmod(x, p)[1] for x in A[i][t + 1 :]):
                    bad = i
                    break
            if bad < 0:
                break
            add_row(t, bad, 1)
        factors.append(A[t][t])
    return U, V, factors


def smith_normal_form(m: PolyMatrix) -> SmithDecomposition:
    """Smith normal form over F2[z] with unimodular multipliers."""
    U, V, factors = _snf_raw(m.data, track=True)
    return SmithDecomposition(
        u=PolyMatrix(U),
        v=PolyMatrix(V),
        factors=tuple(Poly2(f) for f in factors),
        rank=len(factors),
    )


def invariant_factors(m: PolyMatrix) -> tuple[Poly2, ...]:
    """Nonzero invariant factors only (no multiplier tracking)."""
    return tuple(Poly2(f) for f in _snf_raw(m.data, track=False)[2])


@dataclass(frozen=True)
class InvariantFactorProfile:
    """Multiplicities ``(n_0, ..., n_u)`` of z-valuations among invariant factors.

    When ``cap`` is set, valuations are clipped at ``cap`` and
    ``multiplicities[cap]`` (if present) counts the saturated factors.
    Trailing zero multiplicities are never stored.
    """

    multiplicities: tuple[int, ...]
    rank: int
    cap: Optional[int] = None

    @property
    def saturated(self) -> int:
        if self.cap is None or len(self.multiplicities) <= self.cap:
            return 0
        return self.multiplicities[self.cap]

    @property
    def top_valuation(self) -> Optional[int]:
        """Largest (possibly clipped) valuation ``u``; ``None`` for the zero matrix."""
        return len(self.multiplicities) - 1 if self.multiplicities else None

    def count_up_to(self, tau: int) -> int:
        """Number of invariant factors dividing ``z**tau``."""
        if self.cap is not None and tau >= self.cap:
            raise ValueError(f"valuations were clipped at {self.cap}; cannot count up to {tau}")
        return sum(self.multiplicities[: tau + 1])


def profile_from_valuations(vals: Iterable[int], cap: Optional[int] = None) -> InvariantFactorProfile:
    vals = [v if cap is None else min(v, cap) for v in vals]
    if not vals:
        return InvariantFactorProfile((), 0, cap)
    counts = [0] * (max(vals) + 1)
    for v in vals:
        counts[v] += 1
    return InvariantFactorProfile(tuple(counts), len(vals), cap)


def localize_invariant_factors(
    factors: Sequence[Poly2], cap: Optional[int] = None
) -> InvariantFactorProfile:
    """Replace each factor ``d`` by ``gcd(d, z**cap)`` and tally the z-powers.

    With ``cap=None`` no clipping happens and the exact local profile is
    returned.
    """
    if cap is not None and cap < 0:
        raise ValueError("cap must be nonnegative")
    vals = []
    for f in factors:
        bits = _as_bits(f)
        if not bits:
            raise ValueError("invariant factors must be nonzero")
        vals.append(pval(bits))
    return profile_from_valuations(vals, cap)


# matrices over F2[z]_S ------------------------------------------------


class FracMatrix:
    """Small dense matrix with :class:`LocalFrac` entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Sequence[Sequence]):
        if not entries or not entries[0]:
            raise ShapeError("matrix must be at least 1x1")
        cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise ShapeError("ragged rows")
        self.rows = len(entries)
        self.cols = cols
        self.data = tuple(tuple(_as_frac(x) for x in row) for row in entries)

    @classmethod
    def from_poly_matrix(cls, m: PolyMatrix, den=1) -> "FracMatrix":
        d = _as_bits(den)
        return cls([[LocalFrac(x, d) for x in row] for row in m.data])

    @classmethod
    def scalar(cls, n: int, value) -> "FracMatrix":
        return cls([[value if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> LocalFrac:
        i, j = idx
        return self.data[i][j]

    def __matmul__(self, other: "FracMatrix") -> "FracMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"inner dimensions differ: {self.cols} vs {other.rows}")
        out = []
        for row in self.data:
            new = []
            for j in range(other.cols):
                acc = LocalFrac(0)
                for k, x in enumerate(row):
                    if not x.is_zero():
                        y = other.data[k][j]
                        if not y.is_zero():
                            acc = acc + x * y
                new.append(acc)
            out.append(new)
        return FracMatrix(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FracMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"FracMatrix({[list(r) for r in self.data]!r})"
