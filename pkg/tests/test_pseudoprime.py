import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carmlab.core_arith import CapacityError, factorize, is_prime
from carmlab.pseudoprime import (
    ENUMERATION_CAP,
    PspCounts,
    PspRecord,
    count_psp,
    enumerate_semiprime_psp,
    extend_psp,
    fermat_survivors,
    galway_fit,
    is_fermat_psp,
    order_criterion_psp,
    ratio_table,
)

FIRST_PSP2 = [341, 561, 645, 1105, 1387, 1729, 1905]


def test_known_base2_pseudoprimes():
    for n in FIRST_PSP2:
        assert is_fermat_psp(n, 2)
    for n in [2, 3, 9, 15, 91, 340, 1000003]:
        assert not is_fermat_psp(n, 2)
    assert is_fermat_psp(91, 3)  # 91 = 7*13 is the first base-3 case


def test_survivors_prefix():
    surv = [int(n) for n in fermat_survivors(2000)]
    assert surv == [341, 561, 645, 1105, 1387, 1729, 1905]


def test_survivors_segment_size_invariance():
    full = fermat_survivors(10**5)
    for size in (1 << 12, 1 << 15, 77777):
        assert np.array_equal(fermat_survivors(10**5, segment_size=size), full)


def test_survivors_thread_invariance():
    full = fermat_survivors(10**5)
    assert np.array_equal(fermat_survivors(10**5, threads=4), full)


def test_survivors_cache_roundtrip(tmp_path):
    d = str(tmp_path)
    first = fermat_survivors(10**4, cache_dir=d)
    again = fermat_survivors(10**4, cache_dir=d)  # served from disk
    assert np.array_equal(first, again)
    assert any(p.suffix == ".npy" for p in tmp_path.iterdir())


def test_survivors_other_base():
    surv = [int(n) for n in fermat_survivors(2000, base=3)]
    assert surv[:4] == [91, 121, 286, 671]


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        fermat_survivors(ENUMERATION_CAP + 1)


def test_count_psp_small():
    counts = count_psp(10**4)
    assert counts.total == 22
    assert counts.by_omega == {2: 11, 3: 11}


def test_counts_validation():
    with pytest.raises(ValueError):
        PspCounts(bound=100, base=2, total=5, by_omega={2: 3})


def test_order_criterion_matches_fermat_sampled():
    surv = set(int(n) for n in fermat_survivors(10**4))
    for n in range(9, 10**4, 2):
        if not is_prime(n):
            assert order_criterion_psp(n) == (n in surv)


def test_order_criterion_rejects_bad_input():
    with pytest.raises(ValueError):
        order_criterion_psp(10)
    with pytest.raises(ValueError):
        order_criterion_psp(13)


def test_enumerate_semiprime():
    recs = enumerate_semiprime_psp(2000)
    assert [r.n for r in recs] == [341, 1387]
    assert all(r.factorization.is_squarefree() and r.omega == 2 for r in recs)


def test_galway_fit_reproduces_published_cell():
    assert abs(galway_fit(10**4, 11) - 9.331) < 1e-3


def test_extend_psp_first_cases():
    for n, expected in [(341, 1021), (561, 4481), (645, 1289)]:
        rec = PspRecord.make(n, base=2)
        p = extend_psp(rec, 10**7)
        assert p == expected
        assert is_fermat_psp(n * p, 2)
        assert factorize(n * p).omega == rec.omega + 1


def test_extend_psp_rejects_non_psp():
    with pytest.raises(ValueError):
        extend_psp(PspRecord.make(343, base=2), 10**6)


def test_extend_psp_none_when_bound_too_small():
    assert extend_psp(PspRecord.make(341, base=2), 500) is None


@given(st.integers(2, 10**6))
@settings(max_examples=150)
def test_psp_implies_fermat_congruence(n):
    if is_fermat_psp(n, 2):
        assert n % 2 == 1 and not is_prime(n) and pow(2, n - 1, n) == 1


def test_ratio_table_rounding():
    t = ratio_table([PspCounts(bound=10**4, base=2, total=22, by_omega={2: 11, 3: 11})])
    assert t.rows == [["10000", "11", "22", "0.50"]]
