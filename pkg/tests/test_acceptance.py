"""Exit criteria, each at its stated tolerance.  Run with ``pytest tests/test_acceptance.py``."""

import json
from fractions import Fraction

import numpy as np
import pytest

from lftstat.census import CountParams, closed_form_counts, ct_canonical_count, tnm_count
from lftstat.cli import main
from lftstat.estimator import (
    estimate_for_taus,
    estimate_injective_classes,
    exhaustive_census,
    random_lft,
    required_sample_size,
)
from lftstat.poly import PolyMatrix, det, smith_normal_form
from lftstat.transducer import (
    all_lfts,
    brute_force_injective,
    class_size,
    is_canonical,
    is_injective_with_delay,
    left_inverse_transfer,
    min_injectivity_delay,
    transducers_equivalent,
    transfer_matrix,
)
from lftstat.poly import FracMatrix, LocalFrac

acceptance = pytest.mark.acceptance


def rand_dims(rng, top_lm, top_n):
    return int(rng.integers(1, top_lm + 1)), int(rng.integers(1, top_lm + 1)), int(rng.integers(1, top_n + 1))


@acceptance(1, "SNF injectivity test agrees with brute force (exhaustive + 10^4 random)")
def test_oracle_equivalence():
    checks = 0
    for l in (1, 2):
        for m in (1, 2):
            for n in (1, 2):
                for t in all_lfts(l, m, n):
                    for tau in range(4):
                        assert is_injective_with_delay(t, tau) == brute_force_injective(t, tau), (t, tau)
                        checks += 1
    assert checks == 299584
    rng = np.random.default_rng(101)
    for _ in range(10_000):
        t = random_lft(*rand_dims(rng, 3, 4), rng)
        tau = int(rng.integers(0, 6))
        assert is_injective_with_delay(t, tau) == brute_force_injective(t, tau), (t, tau)


@acceptance(2, "LT == TT + TNM + EC*CT with exact division, l,m<=4, n<=8, q in {2,3}")
def test_counting_identity():
    for q in (2, 3):
        for l in range(1, 5):
            for m in range(1, 5):
                for n in range(1, 9):
                    p = CountParams(l, m, n, q)
                    c = closed_form_counts(p)
                    ct = ct_canonical_count(p)
                    assert isinstance(ct, int) and ct >= 0
                    assert c.lt == c.tt + tnm_count(l, m, n, q) + c.ec * ct


@acceptance(3, "canonical enumeration matches CT: 8, 32, 253952")
def test_canonical_enumeration():
    for (l, m, n), expected in {(1, 1, 1): 8, (1, 1, 2): 32, (2, 5, 1): 253952}.items():
        counted = sum(1 for t in all_lfts(l, m, n) if is_canonical(t))
        assert counted == ct_canonical_count(CountParams(l, m, n)) == expected


def partition(lfts):
    classes = []
    for t in lfts:
        for cls in classes:
            if transducers_equivalent(cls[0], t):
                cls.append(t)
                break
        else:
            classes.append([t])
    return classes


@acceptance(4, "equivalence partition sizes match class_size at n=1 and n=2")
def test_class_partition():
    classes = partition(list(all_lfts(1, 1, 1)))
    assert sorted(len(c) for c in classes) == [1] * 8 + [4] * 2
    for cls in classes:
        assert all(class_size(t) == len(cls) for t in cls)

    lfts = list(all_lfts(1, 1, 2))
    assert len(lfts) == 512
    classes = partition(lfts)
    for cls in classes:
        assert all(class_size(t) == len(cls) for t in cls)
    assert sum(len(c) for c in classes) == 512


@acceptance(5, "Table 1 cell l=1,m=5,n=1,tau=10 within 5% of exact (published value and estimator)")
def test_table1_cell():
    exact = exhaustive_census(1, 5, 1, [10]).injective_classes[10]
    assert abs(3.91e3 - exact) <= 0.05 * exact
    est = estimate_injective_classes(20000, 1, 5, 1, 10, seed=1).estimate
    assert abs(est - exact) <= Fraction(5, 100) * exact


@acceptance(6, "Table 2 l=2,m=5,n=1: exact within 1.0, estimator within 1.5 of 90.88/95.21")
def test_table2_size_one():
    published = {0: 90.88, 1: 95.21}
    census = exhaustive_census(2, 5, 1, [0, 1])
    assert census.lfts == 2**18
    for tau, value in published.items():
        assert abs(float(census.percentage(tau)) - value) <= 1.0
    for rep in estimate_for_taus(20000, 2, 5, 1, [0, 1], seed=1, percentage=True):
        assert rep.total_classes == 253952
        assert abs(float(rep.percentage) - published[rep.tau]) <= 1.5


@acceptance(7, "Table 2 n=2,3: three seeds within 1.5 points, monotone in tau")
def test_table2_larger():
    published = {2: {1: 97.06, 2: 97.2}, 3: {1: 98.27, 2: 98.58}}
    for n, cells in published.items():
        for seed in (1, 2, 3):
            reps = estimate_for_taus(20000, 2, 5, n, range(0, 11), seed, percentage=True)
            pct = [r.percentage for r in reps]
            assert pct == sorted(pct)
            for tau, value in cells.items():
                assert abs(float(pct[tau]) - value) <= 1.5, (n, seed, tau, float(pct[tau]))


@acceptance(8, "H'H == z^tau I for 500 random injective LFTs")
def test_left_inverse():
    rng = np.random.default_rng(808)
    done = 0
    while done < 500:
        t = random_lft(*rand_dims(rng, 3, 4), rng)
        tau = min_injectivity_delay(t)
        if tau is None:
            continue
        hp = left_inverse_transfer(t, tau)
        assert hp @ transfer_matrix(t) == FracMatrix.scalar(t.l, LocalFrac(1 << tau))
        done += 1


@acceptance(9, "SNF: u*m*v == diag, divisibility chain, unit determinants on 10^4 matrices")
def test_smith_normal_form():
    rng = np.random.default_rng(909)
    for _ in range(10_000):
        r, c = (int(x) for x in rng.integers(1, 6, size=2))
        m = PolyMatrix(rng.integers(0, 32, size=(r, c)).tolist())
        s = smith_normal_form(m)
        assert s.u @ m @ s.v == s.diagonal(r, c)
        for a, b in zip(s.factors, s.factors[1:]):
            assert a.divides(b)
        assert det(s.u) == 1 and det(s.v) == 1


@acceptance(10, "estimate output byte-identical across 3 runs and workers 1/4/8")
def test_determinism(capsys):
    def once(workers, fmt):
        argv = ["estimate", "-l", "2", "-m", "5", "-n", "2", "--tau", "0..3", "--samples", "5000",
                "--seed", "42", "--workers", str(workers), "--percentage", "--no-timing", "--format", fmt]
        assert main(argv) == 0
        return capsys.readouterr().out

    runs = [once(1, "json") for _ in range(3)]
    runs += [once(w, "json") for w in (4, 8)]
    assert len(set(runs)) == 1
    assert json.loads(runs[0])[0]["seed"] == 42
    csv_runs = {once(w, "csv") for w in (1, 4, 8)}
    assert len(csv_runs) == 1 and "wall_seconds" not in csv_runs.pop().splitlines()[0]


@acceptance(11, "required_sample_size(0.99, 0.01) == 16590 +- 1 and <= 20000")
def test_sample_size():
    n = required_sample_size(0.99, 0.01)
    assert abs(n - 16590) <= 1
    assert n <= 20000
