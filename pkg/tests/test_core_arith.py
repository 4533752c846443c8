import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carmlab.core_arith import (
    CapacityError,
    Factorization,
    SpfTable,
    carmichael_lambda,
    factorize,
    is_prime,
    iter_segments,
    jacobi,
    li_approx,
    mod_pow,
    multiplicative_order,
    prime_pi,
    prime_sieve,
    primes_up_to,
    read_spf_segment,
    sieve_segment,
    write_spf_segment,
    PRIME_PI_CAP,
)

SMALL_PRIMES = {int(p) for p in primes_up_to(10**4)}


@given(st.integers(0, 10**9), st.integers(0, 200), st.integers(1, 10**9))
def test_mod_pow_matches_builtin(b, e, m):
    assert mod_pow(b, e, m) == pow(b, e, m)


def test_mod_pow_rejects_bad_args():
    with pytest.raises(ValueError):
        mod_pow(2, -1, 5)
    with pytest.raises(ValueError):
        mod_pow(2, 3, 0)


@given(st.integers(0, 10**6), st.sampled_from(sorted(p for p in SMALL_PRIMES if p > 2)))
def test_jacobi_is_legendre_at_odd_primes(a, p):
    # Euler's criterion is an independent oracle at prime modulus
    euler = pow(a, (p - 1) // 2, p)
    expected = 0 if euler == 0 else (1 if euler == 1 else -1)
    assert jacobi(a, p) == expected


@given(st.integers(0, 10**4), st.integers(0, 10**4), st.integers(0, 5000))
def test_jacobi_multiplicative_in_numerator(a, b, k):
    n = 2 * k + 1
    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 10)


def test_is_prime_agrees_with_sieve():
    sieve = prime_sieve(10**5)
    for n in range(10**5 + 1):
        assert is_prime(n) == bool(sieve[n])


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    # strong pseudoprimes to several bases, all composite
    for n in (3215031751, 3474749660383, 341550071728321):
        assert not is_prime(n)


def test_sieve_segment_matches_whole_sieve():
    base = primes_up_to(1000)
    whole = prime_sieve(900000)
    lo, hi = 123456, 234567
    mask = sieve_segment(lo, hi, base)
    assert np.array_equal(mask, whole[lo:hi])


def test_prime_pi_known_values():
    assert prime_pi(10) == 4
    assert prime_pi(10**6) == 78498
    with pytest.raises(CapacityError):
        prime_pi(PRIME_PI_CAP + 1)


def test_li_approx_near_prime_pi():
    # Li overshoots pi(x) slightly in this range
    for e in (4, 5, 6):
        x = 10**e
        assert 0 < li_approx(x) - prime_pi(x) < 0.01 * prime_pi(x) + 50


@given(st.integers(2, 10**12))
@settings(max_examples=200)
def test_factorize_recomposes(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes())


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(n=12, factors=((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        Factorization(n=6, factors=((3, 1), (2, 1)))
    f = Factorization(n=12, factors=((2, 2), (3, 1)))
    assert f.omega == 2 and f.big_omega == 3 and not f.is_squarefree()


def test_spf_table_agrees_with_factorize(spf100k):
    for n in list(range(2, 500)) + [99991, 99856, 2 * 3 * 5 * 7 * 11 * 13]:
        assert spf100k.factor(n) == factorize(n)
    with pytest.raises(ValueError):
        spf100k.factor(10**5 + 1)


def test_spf_segment_roundtrip(tmp_path, spf100k):
    paths = spf100k.save_cache(str(tmp_path), segment_size=1 << 14)
    assert len(paths) > 1
    loaded = SpfTable.load_cache(str(tmp_path), 10**5)
    assert np.array_equal(loaded.spf, spf100k.spf)
    start, vals = read_spf_segment(paths[0])
    assert start == 0 and len(vals) == 1 << 14


def test_spf_segment_bad_magic(tmp_path):
    path = str(tmp_path / "bad.seg")
    write_spf_segment(path, 0, np.arange(10, dtype=np.uint32))
    raw = bytearray(open(path, "rb").read())
    raw[:4] = b"XXXX"
    open(path, "wb").write(bytes(raw))
    with pytest.raises(ValueError):
        read_spf_segment(path)


@given(st.integers(3, 3000))
@settings(max_examples=80)
def test_carmichael_lambda_is_universal_exponent(n):
    lam = carmichael_lambda(factorize(n))
    for a in range(2, min(n, 40)):
        if math.gcd(a, n) == 1:
            assert pow(a, lam, n) == 1


def test_carmichael_lambda_known_values():
    for n, expected in [(561, 80), (1105, 48), (8, 2), (16, 4), (2, 1), (15, 4)]:
        assert carmichael_lambda(factorize(n)) == expected


@given(st.integers(3, 5000), st.integers(2, 50))
@settings(max_examples=120)
def test_multiplicative_order_is_minimal(n, b):
    if math.gcd(b, n) != 1:
        return
    e = multiplicative_order(b, n)
    assert pow(b, e, n) == 1
    for q in {p for p, _ in factorize(e).factors} if e > 1 else set():
        assert pow(b, e // q, n) != 1


def test_iter_segments_cover_exactly():
    segs = list(iter_segments(3, 100, 7))
    assert segs[0][0] == 3 and segs[-1][1] == 101
    covered = [n for lo, hi in segs for n in range(lo, hi)]
    assert covered == list(range(3, 101))
