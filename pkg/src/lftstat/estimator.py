"""
Random LFTs and importance-weighted estimates of how many equivalence
classes are injective with a given delay.

A uniformly drawn LFT lands in class E with probability
``p_E = |E| / |L(l,m,n)|``.  Averaging ``1/p_E`` over the injective draws is an
unbiased estimate of the number of injective classes.  The weight depends
only on the diagnostic rank of the draw, so a run is summarised by a tally of
``(rank, minimal delay)`` pairs and every delay threshold is read off the
same sample.

Reproducibility: samples are drawn in chunks of ``CHUNK_SIZE``.  Chunk ``i``
uses ``numpy.random.Generator(PCG64(SeedSequence(seed, spawn_key=(i,))))``.
Chunk tallies are merged exactly, so the result does not depend on the
number of workers.
"""

from __future__ import annotations

import csv
import io
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .census import (
    CountParams,
    equivalence_class_size,
    total_classes,
    total_lfts,
)
from .gf2 import BitMatrix, random_words
from .transducer import (
    Lft,
    OracleTooLarge,
    all_lfts,
    diagnostic_rank,
    equivalence_signature,
    is_canonical,
    min_injectivity_delay,
)

CHUNK_SIZE = 1000
DEFAULT_SAMPLES = 20000
DEFAULT_CENSUS_GUARD = 1 << 26


def random_lft(l: int, m: int, n: int, rng: np.random.Generator) -> Lft:
    """Uniform LFT: A, B, C, D drawn in that order, each entry a fair bit."""
    if min(l, m, n) < 1:
        raise ValueError("l, m, n must be positive")
    a = BitMatrix(n, n, random_words(n, n, rng))
    b = BitMatrix(n, l, random_words(n, l, rng))
    c = BitMatrix(m, n, random_words(m, n, rng))
    d = BitMatrix(m, l, random_words(m, l, rng))
    return Lft(l, m, n, a, b, c, d)


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def class_probability(t: Lft) -> Fraction:
    """Probability that a uniform LFT with t's parameters is equivalent to ``t``."""
    size = equivalence_class_size(t.l, t.n, diagnostic_rank(t))
    return Fraction(size, total_lfts(t.l, t.m, t.n))


# sampling ----------------------------------------------------------------

# (diagnostic rank, minimal delay or -1 when never injective) -> occurrences
Tally = Counter


def _tally_chunk(args) -> Tally:
    l, m, n, seed, chunk, count = args
    rng = chunk_rng(seed, chunk)
    tally: Tally = Counter()
    for _ in range(count):
        t = random_lft(l, m, n, rng)
        delay = min_injectivity_delay(t)
        tally[(diagnostic_rank(t), -1 if delay is None else delay)] += 1
    return tally


def _chunks(samples: int) -> list[tuple[int, int]]:
    return [(i, min(CHUNK_SIZE, samples - start)) for i, start in enumerate(range(0, samples, CHUNK_SIZE))]


def sample_tally(samples: int, l: int, m: int, n: int, seed: int, workers: int = 1) -> Tally:
    """Draw ``samples`` LFTs and tally ``(rank, min delay)`` over them."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    tasks = [(l, m, n, seed, i, count) for i, count in _chunks(samples)]
    total: Tally = Counter()
    if workers <= 1 or len(tasks) == 1:
        parts = map(_tally_chunk, tasks)
        for part in parts:
            total.update(part)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_tally_chunk, tasks):
                total.update(part)
    return total


def weighted_sum(tally: Tally, l: int, m: int, n: int, tau: int) -> tuple[Fraction, int]:
    """``(sum of 1/p over tau-injective draws, number of such draws)``."""
    lt = total_lfts(l, m, n)
    acc = Fraction(0)
    hits = 0
    for (r, delay), count in sorted(tally.items()):
        if 0 <= delay <= tau:
            acc += Fraction(count * lt, equivalence_class_size(l, n, r))
            hits += count
    return acc, hits


# reports -------------------------------------------------------------------


def decimal_string(x: Fraction, digits: int = 12) -> str:
    """Correctly rounded decimal rendering with ``digits`` significant digits."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return format(value.normalize(), "f") if abs(value) < Decimal(10) ** digits else str(value)


@dataclass
class EstimateReport:
    l: int
    m: int
    n: int
    tau: int
    samples: int
    seed: int
    estimate: Fraction
    injective_hits: int
    q: int = 2
    percentage: Optional[Fraction] = None
    include_trivial: Optional[bool] = None
    total_classes: Optional[int] = None
    wall_seconds: float = 0.0

    @property
    def estimate_decimal(self) -> str:
        return decimal_string(self.estimate)

    @property
    def percentage_decimal(self) -> Optional[str]:
        return None if self.percentage is None else decimal_string(self.percentage)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "tau": self.tau,
            "samples": self.samples,
            "seed": self.seed,
            "estimate": f"{self.estimate.numerator}/{self.estimate.denominator}",
            "estimate_decimal": self.estimate_decimal,
            "injective_hits": self.injective_hits,
        }
        if self.percentage is not None:
            out["percentage"] = f"{self.percentage.numerator}/{self.percentage.denominator}"
            out["percentage_decimal"] = self.percentage_decimal
            out["include_trivial"] = self.include_trivial
            out["total_classes"] = str(self.total_classes)
        if timing:
            out["wall_seconds"] = round(self.wall_seconds, 6)
        return out

    CSV_FIELDS = (
        "l", "m", "n", "q", "tau", "samples", "seed", "estimate", "estimate_decimal",
        "injective_hits", "percentage", "percentage_decimal", "include_trivial",
        "total_classes", "wall_seconds",
    )

    @classmethod
    def csv_fields(cls, timing: bool = True) -> tuple:
        return cls.CSV_FIELDS if timing else cls.CSV_FIELDS[:-1]

    def csv_row(self, timing: bool = True) -> list:
        d = self.to_dict(timing)
        return [d.get(k, "") for k in self.csv_fields(timing)]


def reports_to_csv(reports: Iterable[EstimateReport], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EstimateReport.csv_fields(timing))
    for r in reports:
        w.writerow(r.csv_row(timing))
    return buf.getvalue()


def estimate_for_taus(
    samples: int,
    l: int,
    m: int,
    n: int,
    taus: Sequence[int],
    seed: int,
    workers: int = 1,
    percentage: bool = False,
    include_trivial: bool = False,
) -> list[EstimateReport]:
    """One shared sample, one report per delay in ``taus``."""
    if any(t < 0 for t in taus):
        raise ValueError("tau must be nonnegative")
    start = time.perf_counter()
    tally = sample_tally(samples, l, m, n, seed, workers)
    denom = total_classes(CountParams(l, m, n), include_trivial=include_trivial) if percentage else None
    elapsed = time.perf_counter() - start
    reports = []
    for tau in taus:
        acc, hits = weighted_sum(tally, l, m, n, tau)
        est = acc / samples
        rep = EstimateReport(
            l=l, m=m, n=n, tau=tau, samples=samples, seed=seed,
            estimate=est, injective_hits=hits, wall_seconds=elapsed,
        )
        if percentage:
            rep.percentage = est * 100 / denom
            rep.include_trivial = include_trivial
            rep.total_classes = denom
        reports.append(rep)
    return reports


def estimate_injective_classes(
    samples: int, l: int, m: int, n: int, tau: int, seed: int, workers: int = 1
) -> EstimateReport:
    """Estimated number of equivalence classes injective with delay ``tau``."""
    return estimate_for_taus(samples, l, m, n, [tau], seed, workers)[0]


def estimate_injective_percentage(
    samples: int,
    l: int,
    m: int,
    n: int,
    tau: int,
    seed: int,
    workers: int = 1,
    include_trivial: bool = False,
) -> EstimateReport:
    """Estimated count divided by the number of classes with minimal size <= n.

    By default the denominator omits the ``2**(l*m)`` trivial classes, as the
    published tables do, although trivial draws do count in the numerator.
    """
    return estimate_for_taus(
        samples, l, m, n, [tau], seed, workers, percentage=True, include_trivial=include_trivial
    )[0]


# sample size ---------------------------------------------------------------

# Acklam's rational approximation, relative error below 1.2e-9.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if p < _P_LOW:
        q = math.sqrt(-2 * math.log(p))
        return (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1
        )
    if p > 1 - _P_LOW:
        return -normal_quantile(1 - p)
    q = p - 0.5
    r = q * q
    return (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / (
        ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1
    )


def two_sided_z(confidence: float) -> float:
    """``z`` with ``P(-z < Z < z) = confidence``."""
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must lie in (0, 1)")
    return normal_quantile(0.5 + confidence / 2)


def required_sample_size(confidence: float, margin: float, z_decimals: Optional[int] = 3) -> int:
    """``ceil((z / (2 * margin))**2)`` for a proportion at the given confidence.

    ``z`` is rounded to ``z_decimals`` places, as read from a printed normal
    table (2.576 at 99%); pass ``None`` to use the unrounded quantile.
    """
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie in (0, 1)")
    z = two_sided_z(confidence)
    if z_decimals is not None:
        z = float(Decimal(repr(z)).quantize(Decimal(1).scaleb(-z_decimals)))
    return math.ceil((z / (2 * margin)) ** 2 - 1e-9)


# exhaustive census -----------------------------------------------------------


@dataclass
class CensusResult:
    l: int
    m: int
    n: int
    lfts: int
    classes: int
    trivial_classes: int
    minimal_classes: int
    non_minimal_classes: int
    canonical_lfts: int
    injective_classes: dict[int, int] = field(default_factory=dict)

    def percentage(self, tau: int, include_trivial: bool = False) -> Fraction:
        """Injective classes over the canonical-count denominator, in percent."""
        denom = total_classes(CountParams(self.l, self.m, self.n), include_trivial=include_trivial)
        return Fraction(100 * self.injective_classes[tau], denom)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "lfts": self.lfts,
            "total_classes_by_kind": {
                "total": self.classes,
                "trivial": self.trivial_classes,
                "minimal_size_n": self.minimal_classes,
                "minimal_size_below_n": self.non_minimal_classes,
            },
            "canonical_lfts": self.canonical_lfts,
            "injective_class_count_per_tau": {str(k): v for k, v in sorted(self.injective_classes.items())},
            "percentage_per_tau": {
                str(k): decimal_string(self.percentage(k)) for k in sorted(self.injective_classes)
            },
        }


def exhaustive_census(
    l: int, m: int, n: int, taus: Sequence[int], guard: int = DEFAULT_CENSUS_GUARD
) -> CensusResult:
    """Enumerate every LFT, partition into equivalence classes, count injective ones.

    Classes are found by grouping on the brute-force equivalence signature
    (truncated free and input responses), not from the class-size formula.
    Injectivity of a class is read from its first member.
    """
    count = total_lfts(l, m, n)
    if count > guard:
        raise OracleTooLarge(f"census needs {count} LFTs (2^{count.bit_length() - 1}), guard is {guard}")
    depth = 2 * n
    reps: dict[tuple, tuple[bool, int, Optional[int]]] = {}
    canonical = 0
    for t in all_lfts(l, m, n):
        if is_canonical(t):
            canonical += 1
        key = equivalence_signature(t, depth)
        if key not in reps:
            reps[key] = (t.is_trivial, diagnostic_rank(t), min_injectivity_delay(t))
    trivial = sum(1 for triv, _, _ in reps.values() if triv)
    minimal = sum(1 for triv, r, _ in reps.values() if not triv and r == n)
    injective = {
        tau: sum(1 for _, _, d in reps.values() if d is not None and d <= tau) for tau in taus
    }
    return CensusResult(
        l=l, m=m, n=n, lfts=count, classes=len(reps), trivial_classes=trivial,
        minimal_classes=minimal, non_minimal_classes=len(reps) - trivial - minimal,
        canonical_lfts=canonical, injective_classes=injective,
    )
