"""
Exact counts of linear finite transducers and their equivalence classes.

Everything here is integer arithmetic on Python ints, parametric in the
field size ``q``.  Notation follows the usual LFT counting recurrence:

* ``LT``  all LFTs with parameters (l, m, n)
* ``TT``  trivial LFTs (C = 0)
* ``EC``  size of the class of a canonical (minimal, size n) LFT
* ``NM``  size-n LFTs equivalent to a fixed minimal size-i LFT
* ``TNM`` non-trivial, non-minimal size-n LFTs
* ``CT``  canonical LFTs, one per class with minimal size exactly n
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class CountParams:
    l: int
    m: int
    n: int
    q: int = 2

    def __post_init__(self):
        if min(self.l, self.m, self.n) < 1:
            raise ValueError(f"l, m, n must be positive, got {self.l}, {self.m}, {self.n}")
        if self.q < 2:
            raise ValueError(f"q must be at least 2, got {self.q}")


@dataclass(frozen=True)
class ClosedFormCounts:
    lt: int
    tt: int
    ec: int


def total_lfts(l: int, m: int, n: int, q: int = 2) -> int:
    return q ** (m * l + n * (l + m + n))


def trivial_lfts(l: int, m: int, n: int, q: int = 2) -> int:
    return q ** (n * n + l * (m + n))


def canonical_class_size(n: int, q: int = 2) -> int:
    """Order of GL(n, q): the class size of any minimal size-n LFT."""
    out = 1
    qn = q**n
    for i in range(n):
        out *= qn - q**i
    return out


def equivalence_class_size(l: int, n: int, r: int, q: int = 2) -> int:
    """Size of the class of a size-n LFT whose diagnostic matrix has rank ``r``.

    Equivalently, the number of size-n LFTs equivalent to a fixed minimal
    LFT of size ``r``.
    """
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} out of range for size {n}")
    out = q ** ((n + l) * (n - r))
    qn = q**n
    for i in range(r):
        out *= qn - q**i
    return out


def closed_form_counts(p: CountParams) -> ClosedFormCounts:
    return ClosedFormCounts(
        lt=total_lfts(p.l, p.m, p.n, p.q),
        tt=trivial_lfts(p.l, p.m, p.n, p.q),
        ec=canonical_class_size(p.n, p.q),
    )


def nm_count(l: int, n1: int, n2: int, q: int = 2) -> int:
    """Number of size-``n2`` LFTs equivalent to a fixed minimal size-``n1`` LFT."""
    if n1 < 1 or n2 < n1:
        raise ValueError(f"need n2 >= n1 >= 1, got n1={n1}, n2={n2}")
    return equivalence_class_size(l, n2, n1, q)


@lru_cache(maxsize=None)
def _ct(l: int, m: int, n: int, q: int) -> int:
    # No special n == 1 branch: (q**m - 1) * q**(l*(m+1)+1) equals LT - TT and
    # is only the canonical count when EC(1) = q - 1 = 1.
    tnm = tnm_count(l, m, n, q)
    remainder = total_lfts(l, m, n, q) - trivial_lfts(l, m, n, q) - tnm
    ct, rest = divmod(remainder, canonical_class_size(n, q))
    if rest or ct < 0:
        raise RuntimeError(
            f"canonical count for (l={l}, m={m}, n={n}, q={q}) is not a nonnegative integer"
        )
    return ct


def tnm_count(l: int, m: int, n: int, q: int = 2) -> int:
    """Non-trivial size-n LFTs that are not minimal."""
    return sum(_ct(l, m, i, q) * nm_count(l, i, n, q) for i in range(1, n))


def ct_canonical_count(p: CountParams) -> int:
    """Number of canonical LFTs with parameters ``(l, m, n)`` over F_q.

    For q = 2 and n = 1 this is ``(2**m - 1) * 2**(l*(m+1)+1)``.
    """
    # lru_cache tolerates concurrent misses; both writers store the same value.
    # Filling bottom-up keeps the recursion one level deep.
    for i in range(1, p.n + 1):
        _ct(p.l, p.m, i, p.q)
    return _ct(p.l, p.m, p.n, p.q)


def trivial_class_count(l: int, m: int, q: int = 2) -> int:
    """Trivial classes: one per output matrix D."""
    return q ** (l * m)


def total_classes(p: CountParams, max_n: int | None = None, include_trivial: bool = False) -> int:
    """Sum of canonical counts for sizes ``1..max_n`` (defaults to ``p.n``).

    With ``include_trivial`` the ``q**(l*m)`` trivial classes are added.
    """
    max_n = p.n if max_n is None else max_n
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    total = sum(ct_canonical_count(CountParams(p.l, p.m, i, p.q)) for i in range(1, max_n + 1))
    if include_trivial:
        total += trivial_class_count(p.l, p.m, p.q)
    return total
