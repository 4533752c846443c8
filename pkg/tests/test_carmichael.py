import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carmlab.carmichael import (
    CarmichaelCounts,
    CarmichaelRecord,
    carmichael_ratio_table,
    classify_primitive,
    count_carmichael,
    enumerate_carmichael_kprime,
    enumerate_carmichael_sieve,
    format_ratio,
    is_carmichael,
    is_carmichael_via_lambda,
)
from carmlab.core_arith import CapacityError

FIRST = [561, 1105, 1729, 2465, 2821, 6601, 8911]


def test_known_carmichael_numbers():
    for n in FIRST:
        assert is_carmichael(n)
    for n in [3, 15, 341, 561 * 3, 562, 1000]:
        assert not is_carmichael(n)


@given(st.integers(3, 10**5))
@settings(max_examples=300)
def test_korselt_matches_lambda_criterion(n):
    assert is_carmichael(n) == is_carmichael_via_lambda(n)


def test_sieve_enumeration_first_values():
    recs = enumerate_carmichael_sieve(10**4)
    assert [r.n for r in recs] == FIRST
    assert [r.k for r in recs] == [3] * 7
    assert recs[0].factors == [3, 11, 17]


def test_sieve_cap():
    with pytest.raises(CapacityError):
        enumerate_carmichael_sieve(10**9 + 1)


def test_kprime_matches_sieve_at_1e5():
    sieve = enumerate_carmichael_sieve(10**5)
    for k in (3, 4, 5):
        expected = [r.n for r in sieve if r.k == k]
        got = [r.n for r in enumerate_carmichael_kprime(10**5, k)]
        assert got == expected


def test_kprime_rejects_small_k():
    with pytest.raises(ValueError):
        enumerate_carmichael_kprime(10**4, 2)


def test_counts_match_bundled_row():
    counts = count_carmichael(10**5)
    assert counts.total == 16
    assert counts.by_k == {3: 12, 4: 4}


def test_record_fields_561():
    rec = CarmichaelRecord.from_primes(561, [17, 3, 11])
    assert rec.factors == [3, 11, 17]
    assert rec.g == 2 and rec.a == [1, 5, 8]
    assert rec.primitive  # g = 2 <= lcm(1, 5, 8) = 40
    assert not rec.boundary_case
    assert classify_primitive(rec)


def test_record_validation():
    with pytest.raises(ValueError):
        CarmichaelRecord.from_primes(31, [2, 3, 5])  # wrong product
    with pytest.raises(ValueError):
        CarmichaelRecord.from_primes(15, [3, 5])  # too few primes


def test_counts_validation():
    with pytest.raises(ValueError):
        CarmichaelCounts(bound=10**4, total=7, by_k={3: 6})


def test_format_ratio_published_rounding():
    assert format_ratio(0.5) == "0.50"
    assert format_ratio(1858 / 19279) == "0.096"
    assert format_ratio(224763 / 20138200) == "0.011"
    assert format_ratio(0.0995) == "0.10"


def test_ratio_table_shape():
    t = carmichael_ratio_table([count_carmichael(10**4)])
    assert t.rows == [["10000", "7", "7", "1.00"]]
