"""
Linear finite transducers over GF(2).

An LFT with input dimension ``l``, output dimension ``m`` and size ``n`` is

    next_state = A s + B x        output = C s + D x

with A (n x n), B (n x l), C (m x n), D (m x l).  This module covers
simulation, the diagnostic matrix, canonicity, class sizes, the transfer
function matrix and injectivity with delay, plus definitional brute-force
oracles for small instances.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import poly
from .census import equivalence_class_size
from .gf2 import BitMatrix, ShapeError, multiply, rank, rank_of_words, stack, is_rref
from .poly import FracMatrix, InvariantFactorProfile, LocalFrac, PolyMatrix, pmul, pval


class LftFormatError(ValueError):
    """Malformed transducer description."""


class OracleTooLarge(ValueError):
    """The requested enumeration exceeds the configured guard."""


class NotInjectiveError(ValueError):
    """The transducer is not injective with the requested delay."""


@dataclass(frozen=True)
class Lft:
    l: int
    m: int
    n: int
    a: BitMatrix
    b: BitMatrix
    c: BitMatrix
    d: BitMatrix

    def __post_init__(self):
        expected = {
            "A": ((self.n, self.n), self.a),
            "B": ((self.n, self.l), self.b),
            "C": ((self.m, self.n), self.c),
            "D": ((self.m, self.l), self.d),
        }
        for name, (shape, mat) in expected.items():
            if not isinstance(mat, BitMatrix):
                raise TypeError(f"{name} must be a BitMatrix")
            if mat.shape != shape:
                raise ShapeError(f"{name} has shape {mat.shape}, expected {shape}")

    @classmethod
    def from_matrices(cls, a, b, c, d) -> "Lft":
        mats = [x if isinstance(x, BitMatrix) else BitMatrix.from_lists(x) for x in (a, b, c, d)]
        a, b, c, d = mats
        return cls(l=b.cols, m=c.rows, n=a.rows, a=a, b=b, c=c, d=d)

    @property
    def is_trivial(self) -> bool:
        return self.c.is_zero()

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "A": self.a.to_strings(),
            "B": self.b.to_strings(),
            "C": self.c.to_strings(),
            "D": self.d.to_strings(),
        }

    @classmethod
    def from_json(cls, obj) -> "Lft":
        """Load from a dict or JSON text ``{"l":..,"m":..,"n":..,"A":[rows],...}``."""
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise LftFormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise LftFormatError("transducer must be a JSON object")
        missing = [k for k in ("l", "m", "n", "A", "B", "C", "D") if k not in obj]
        if missing:
            raise LftFormatError(f"missing fields: {', '.join(missing)}")
        dims = {}
        for k in ("l", "m", "n"):
            v = obj[k]
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise LftFormatError(f"{k} must be a positive integer, got {v!r}")
            dims[k] = v
        mats = {}
        for k in ("A", "B", "C", "D"):
            rows = obj[k]
            if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
                raise LftFormatError(f"{k} must be a list of 0/1 strings")
            try:
                mats[k.lower()] = BitMatrix.from_strings(rows)
            except ValueError as exc:
                raise LftFormatError(f"{k}: {exc}") from exc
        try:
            return cls(**dims, **mats)
        except ShapeError as exc:
            raise LftFormatError(str(exc)) from exc


# simulation -------------------------------------------------------------


def _matvec(rows: Sequence[int], v: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        out |= ((r & v).bit_count() & 1) << i
    return out


def _check_vec(v: BitMatrix, size: int, what: str):
    if v.shape != (size, 1):
        raise ShapeError(f"{what} must be {size}x1, got {v.rows}x{v.cols}")


def step(t: Lft, s: BitMatrix, x: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """One transition: returns ``(A s + B x, C s + D x)``."""
    _check_vec(s, t.n, "state")
    _check_vec(x, t.l, "input")
    sw, xw = s.column_word(), x.column_word()
    nxt = _matvec(t.a.data, sw) ^ _matvec(t.b.data, xw)
    out = _matvec(t.c.data, sw) ^ _matvec(t.d.data, xw)
    return BitMatrix.from_column_word(nxt, t.n), BitMatrix.from_column_word(out, t.m)


def run(t: Lft, s0: BitMatrix, word: Sequence[BitMatrix]) -> list[BitMatrix]:
    """Output word produced from state ``s0`` on input ``word``."""
    _check_vec(s0, t.n, "state")
    out = []
    s = s0
    for x in word:
        s, y = step(t, s, x)
        out.append(y)
    return out


def final_state(t: Lft, s0: BitMatrix, word: Sequence[BitMatrix]) -> BitMatrix:
    s = s0
    for x in word:
        s, _ = step(t, s, x)
    return s


def _run_words(t: Lft, s: int, xs: Sequence[int]) -> tuple[int, ...]:
    out = []
    for x in xs:
        out.append(_matvec(t.c.data, s) ^ _matvec(t.d.data, x))
        s = _matvec(t.a.data, s) ^ _matvec(t.b.data, x)
    return tuple(out)


# structure ----------------------------------------------------------------


def diagnostic_matrix(t: Lft) -> BitMatrix:
    """The ``(m*n) x n`` stack ``[C; CA; ...; CA^(n-1)]``."""
    blocks = [t.c]
    for _ in range(t.n - 1):
        blocks.append(multiply(blocks[-1], t.a))
    rows = tuple(r for blk in blocks for r in blk.data)
    return BitMatrix(t.m * t.n, t.n, rows)


def doubling_diagnostic_stack(t: Lft) -> BitMatrix:
    """``K <- [K; K A]`` repeated ``n - 1`` times, starting from ``C``.

    Same row space as :func:`diagnostic_matrix` but with ``2**(n-1)`` blocks.
    """
    k = t.c
    for _ in range(t.n - 1):
        k = stack(k, multiply(k, t.a))
    return k


def diagnostic_rank(t: Lft) -> int:
    rows = list(t.c.data)
    block = t.c
    for _ in range(t.n - 1):
        block = multiply(block, t.a)
        rows.extend(block.data)
    return rank_of_words(rows)


def is_canonical(t: Lft) -> bool:
    """True iff ``Delta e_1, ..., Delta e_n`` is the reduced echelon basis of the image.

    Trivial LFTs (C = 0) are never canonical.
    """
    if t.is_trivial:
        return False
    dt = diagnostic_matrix(t).T
    if any(r == 0 for r in dt.data):
        return False
    return is_rref(dt)


def class_size(t: Lft) -> int:
    """Number of size-n LFTs (same l, m) equivalent to ``t``."""
    return equivalence_class_size(t.l, t.n, diagnostic_rank(t))


# transfer function ----------------------------------------------------------


def _markov_blocks(t: Lft, count: int) -> list[BitMatrix]:
    """``C A^k B`` for ``k < count``."""
    out = []
    ca = t.c
    for k in range(count):
        if k:
            ca = multiply(ca, t.a)
        out.append(multiply(ca, t.b))
    return out


def _char_matrix(t: Lft) -> list[list[int]]:
    # I - A z == I + A z over GF(2)
    n = t.n
    return [
        [(1 if i == j else 0) | (((t.a.data[i] >> j) & 1) << 1) for j in range(n)]
        for i in range(n)
    ]


def _transfer_raw(t: Lft, method: str = "series") -> tuple[list[list[int]], int]:
    f = poly._det_raw(_char_matrix(t))
    n = t.n
    if method == "series":
        # adj(I - Az) = f * sum_k A^k z^k truncated to degree < n, because the
        # adjugate has degree at most n - 1.
        mask = (1 << n) - 1
        markov = _markov_blocks(t, n)
        num = [[0] * t.l for _ in range(t.m)]
        for k, blk in enumerate(markov):
            for i, row in enumerate(blk.data):
                j = 0
                while row:
                    if row & 1:
                        num[i][j] ^= 1 << k
                    row >>= 1
                    j += 1
        fh = []
        for i in range(t.m):
            drow = t.d.data[i]
            fh.append(
                [
                    ((pmul(f, num[i][j]) & mask) << 1) ^ (f if (drow >> j) & 1 else 0)
                    for j in range(t.l)
                ]
            )
        return fh, f
    if method == "adjugate":
        adj = poly._adjugate_raw(_char_matrix(t))
        c = [[(r >> j) & 1 for j in range(n)] for r in t.c.data]
        b = [[(r >> j) & 1 for j in range(t.l)] for r in t.b.data]
        cab = poly._matmul(poly._matmul(c, adj, n, n), b, n, n)
        fh = [
            [(cab[i][j] << 1) ^ (f if (t.d.data[i] >> j) & 1 else 0) for j in range(t.l)]
            for i in range(t.m)
        ]
        return fh, f
    raise ValueError(f"unknown method {method!r}")


def transfer_numerator(t: Lft, method: str = "series") -> tuple[PolyMatrix, poly.Poly2]:
    """Return ``(f H, f)`` with ``f = det(I - A z)`` and
    ``f H = C adj(I - A z) B z + f D``.

    ``method="adjugate"`` evaluates that expression literally;
    ``"series"`` (default) gets the same matrix from ``f * sum C A^k B z^k``.
    """
    fh, f = _transfer_raw(t, method)
    return PolyMatrix(fh), poly.Poly2(f)


def transfer_matrix(t: Lft) -> FracMatrix:
    """``H(z)`` as a matrix over F2[z]_S."""
    fh, f = transfer_numerator(t)
    return FracMatrix.from_poly_matrix(fh, f)


def _local_valuations(t: Lft) -> list[int]:
    fh, _ = _transfer_raw(t)
    return [pval(d) for d in poly._snf_raw(fh, track=False)[2]]


def h_invariant_profile(t: Lft, cap: Optional[int] = None) -> InvariantFactorProfile:
    """Invariant-factor profile of ``H`` over F2[z]_S, clipped at ``z**cap``.

    ``f`` is a unit of the local ring, so the invariant factors of ``f H``
    give those of ``H`` after taking ``gcd`` with a power of ``z``.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    return poly.profile_from_valuations(_local_valuations(t), cap)


def is_injective_with_delay(t: Lft, tau: int) -> bool:
    """Injectivity with delay ``tau``: as many factors dividing ``z**tau`` as inputs."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    prof = h_invariant_profile(t, cap=tau + 1)
    return prof.count_up_to(tau) == t.l


def min_injectivity_delay(t: Lft) -> Optional[int]:
    """Smallest ``tau`` with ``t`` injective with delay ``tau``; ``None`` if none exists."""
    vals = _local_valuations(t)
    if len(vals) < t.l:
        return None
    return max(vals)


def left_inverse_transfer(t: Lft, tau: int) -> FracMatrix:
    """An ``l x m`` matrix ``H'`` over F2[z]_S with ``H' H == z**tau I``."""
    fh_raw, f = _transfer_raw(t)
    U, V, factors = poly._snf_raw(fh_raw, track=True)
    if len(factors) < t.l or any(pval(d) > tau for d in factors):
        raise NotInjectiveError(f"transducer is not injective with delay {tau}")
    zt = 1 << tau
    dplus = [[LocalFrac(0)] * t.m for _ in range(t.l)]
    for i, d in enumerate(factors):
        dplus[i][i] = LocalFrac(zt, d)
    u = FracMatrix([[LocalFrac(x) for x in row] for row in U])
    v = FracMatrix([[LocalFrac(pmul(f, x)) for x in row] for row in V])
    return v @ FracMatrix(dplus) @ u


# brute-force oracles --------------------------------------------------------

DEFAULT_ORACLE_GUARD = 1 << 20


def brute_force_injective(
    t: Lft, tau: int, mode: str = "kernel", guard: int = DEFAULT_ORACLE_GUARD
) -> bool:
    """Decide injectivity with delay ``tau`` straight from the definition.

    ``mode="kernel"`` searches, from state 0, for an input word ``x alpha``
    with ``x != 0`` and ``|alpha| = tau`` whose output is all zeros (linearity
    reduces the definition to this).  The search walks input words depth
    first, dropping prefixes that already produced a nonzero output and
    remembering ``(depth, state)`` pairs already known to be dead ends.

    ``mode="definition"`` enumerates every state and every pair of input
    words of length ``tau + 1``; only for tiny instances.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if mode == "kernel":
        work = (tau + 1) << (t.n + t.l)
        if work > guard:
            raise OracleTooLarge(f"kernel search needs ~{work} steps, guard is {guard}")
        return not _zero_output_path(t, tau)
    if mode == "definition":
        work = 1 << (t.n + t.l * (tau + 1))
        if work > guard:
            raise OracleTooLarge(f"definitional check needs {work} runs, guard is {guard}")
        return _definitional_injective(t, tau)
    raise ValueError(f"unknown mode {mode!r}")


def _zero_output_path(t: Lft, tau: int) -> bool:
    A, B, C, D = t.a.data, t.b.data, t.c.data, t.d.data
    inputs = range(1 << t.l)
    dead: set[tuple[int, int]] = set()

    def extend(state: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        if (remaining, state) in dead:
            return False
        cs = _matvec(C, state)
        as_ = _matvec(A, state)
        for x in inputs:
            if cs ^ _matvec(D, x):
                continue
            if extend(as_ ^ _matvec(B, x), remaining - 1):
                return True
        dead.add((remaining, state))
        return False

    for x in range(1, 1 << t.l):
        if _matvec(D, x):
            continue
        if extend(_matvec(B, x), tau):
            return True
    return False


def _definitional_injective(t: Lft, tau: int) -> bool:
    words = list(itertools.product(range(1 << t.l), repeat=tau + 1))
    for s in range(1 << t.n):
        first_by_output: dict[tuple[int, ...], int] = {}
        for w in words:
            y = _run_words(t, s, w)
            seen = first_by_output.setdefault(y, w[0])
            if seen != w[0]:
                return False
    return True


def _response_signature(t: Lft, depth: int) -> tuple[set, tuple]:
    """Per-state free responses and the zero-state input response, truncated."""
    ca = [t.c]
    for _ in range(depth - 1):
        ca.append(multiply(ca[-1], t.a))
    states = set()
    for s in range(1 << t.n):
        states.add(tuple(_matvec(blk.data, s) for blk in ca))
    markov = (t.d.data,) + tuple(multiply(blk, t.b).data for blk in ca)
    return states, markov


def transducers_equivalent(t1: Lft, t2: Lft, guard: int = 1 << 16) -> bool:
    """Brute-force transducer equivalence by enumerating both state spaces.

    States ``s1 ~ s2`` iff ``C1 A1^k s1 == C2 A2^k s2`` and the input
    responses ``D, C A^k B`` agree, for ``k < n1 + n2``.
    """
    if (t1.l, t1.m) != (t2.l, t2.m):
        raise ValueError("transducers must share input and output dimensions")
    work = (1 << t1.n) + (1 << t2.n)
    if work > guard:
        raise OracleTooLarge(f"state enumeration needs {work} states, guard is {guard}")
    depth = t1.n + t2.n
    s1, m1 = _response_signature(t1, depth)
    s2, m2 = _response_signature(t2, depth)
    return m1 == m2 and s1 == s2


def equivalence_signature(t: Lft, depth: int) -> tuple:
    """Hashable summary equal for two LFTs iff they are equivalent, provided
    ``depth`` is at least the sum of their sizes."""
    states, markov = _response_signature(t, depth)
    return (frozenset(states), markov)


def all_lfts(l: int, m: int, n: int) -> Iterator[Lft]:
    """Every LFT with the given parameters, in a fixed order."""
    def mats(rows, cols):
        return [BitMatrix(rows, cols, ws) for ws in itertools.product(range(1 << cols), repeat=rows)]

    As, Bs, Cs, Ds = mats(n, n), mats(n, l), mats(m, n), mats(m, l)
    for a in As:
        for b in Bs:
            for c in Cs:
                for d in Ds:
                    yield Lft(l, m, n, a, b, c, d)


def unit_delay() -> Lft:
    """The 1-state LFT whose output is the previous input."""
    return Lft.from_matrices([[0]], [[1]], [[1]], [[0]])


def identity_lft(l: int, n: int = 1) -> Lft:
    """Trivial LFT with ``D = I``: output equals input."""
    return Lft(
        l, l, n, BitMatrix.zeros(n, n), BitMatrix.zeros(n, l), BitMatrix.zeros(l, n), BitMatrix.identity(l)
    )
