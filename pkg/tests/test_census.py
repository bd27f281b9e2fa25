import pytest

from lftstat.census import (
    CountParams,
    canonical_class_size,
    closed_form_counts,
    ct_canonical_count,
    equivalence_class_size,
    nm_count,
    tnm_count,
    total_classes,
    total_lfts,
    trivial_lfts,
)
from lftstat.transducer import all_lfts, class_size, diagnostic_rank, is_canonical


def test_closed_form_examples():
    c = closed_form_counts(CountParams(1, 1, 1))
    assert (c.lt, c.tt, c.ec) == (16, 8, 1)
    c = closed_form_counts(CountParams(2, 5, 1))
    assert (c.lt, c.tt) == (2**18, 2**13)
    assert c.lt - c.tt == 253952  # every non-trivial size-1 LFT is minimal
    assert canonical_class_size(2) == 6


def test_lt_counts_enumeration():
    assert sum(1 for _ in all_lfts(1, 2, 1)) == total_lfts(1, 2, 1)
    assert sum(1 for t in all_lfts(1, 2, 1) if t.is_trivial) == trivial_lfts(1, 2, 1)


def test_nm_examples():
    assert nm_count(1, 1, 1) == 1
    assert nm_count(1, 1, 2) == 24
    assert nm_count(2, 1, 2) == 48
    with pytest.raises(ValueError):
        nm_count(1, 2, 1)


def test_class_size_by_rank_matches_enumeration():
    # every size-2 LFT falls in a class whose size depends on its diagnostic rank only
    counts = {}
    for t in all_lfts(1, 1, 2):
        counts[diagnostic_rank(t)] = counts.get(diagnostic_rank(t), 0) + 1
        assert class_size(t) == equivalence_class_size(1, 2, diagnostic_rank(t))
    assert counts[2] == ct_canonical_count(CountParams(1, 1, 2)) * canonical_class_size(2)
    assert counts[1] == ct_canonical_count(CountParams(1, 1, 1)) * nm_count(1, 1, 2)
    assert counts[0] == trivial_lfts(1, 1, 2)


def test_ct_examples():
    assert ct_canonical_count(CountParams(1, 1, 1)) == 8
    assert ct_canonical_count(CountParams(1, 1, 2)) == 32
    assert ct_canonical_count(CountParams(2, 5, 1)) == 31 * 2**13 == 253952


@pytest.mark.parametrize("l,m,n", [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)])
def test_ct_matches_enumeration(l, m, n):
    assert sum(1 for t in all_lfts(l, m, n) if is_canonical(t)) == ct_canonical_count(CountParams(l, m, n))


def test_ct_size_one_base_formula():
    for l in range(1, 5):
        for m in range(1, 5):
            expected = (2**m - 1) * 2 ** (l * (m + 1) + 1)
            assert ct_canonical_count(CountParams(l, m, 1)) == expected


def test_ct_q3_size_one():
    # (q^m - 1) q^(l(m+1)+1) LFTs with C != 0, each in a class of |GL(1,3)| = 2
    assert ct_canonical_count(CountParams(1, 1, 1, q=3)) == (3 - 1) * 3**3 // 2 == 27


@pytest.mark.parametrize("q", [2, 3])
def test_counting_identity(q):
    for l in range(1, 4):
        for m in range(1, 4):
            for n in range(1, 6):
                p = CountParams(l, m, n, q)
                c = closed_form_counts(p)
                ct = ct_canonical_count(p)
                assert ct >= 0
                assert c.lt == c.tt + tnm_count(l, m, n, q) + c.ec * ct


def test_total_classes_examples():
    assert total_classes(CountParams(1, 1, 1)) == 8
    assert total_classes(CountParams(1, 1, 2)) == 40
    assert total_classes(CountParams(1, 1, 1), include_trivial=True) == 10
    assert total_classes(CountParams(1, 1, 3), max_n=2) == 40


def test_param_validation():
    with pytest.raises(ValueError):
        CountParams(0, 1, 1)
    with pytest.raises(ValueError):
        CountParams(1, 1, 1, q=1)
