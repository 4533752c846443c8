"""Numerical evaluation of the explicit constants: T, rho, delta, C (Galway),
lambda, kappa_3, tau_3, and the derived psi-prime pair.

Every estimator returns a SeriesEstimate carrying its truncation parameters.
All series here have positive terms, so partials are monotone; the evaluators
assert this while accumulating and record it in the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum, gcd
from typing import Optional, Tuple

import numpy as np

from .core_arith import factorize, primes_up_to


@dataclass
class SeriesEstimate:
    value: float
    terms_used: int
    prime_cutoff: int
    monotone: bool
    target: Optional[float] = None
    tail: Optional[float] = None  # first-order multiplicative tail estimate


def rho(m: int) -> float:
    """Product over distinct odd prime divisors d of m of (d-1)/(d-2)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 1.0
    out = 1.0
    for p, _ in factorize(m).factors:
        if p > 2:
            out *= (p - 1) / (p - 2)
    return out


def rho_table(limit: int) -> np.ndarray:
    """rho(m) for all m <= limit via a multiplicative sieve."""
    table = np.ones(limit + 1)
    for p in primes_up_to(limit):
        p = int(p)
        if p > 2:
            table[p::p] *= (p - 1) / (p - 2)
    return table


def delta4(m: int) -> int:
    """2 if 4 | m, else 1."""
    return 2 if m % 4 == 0 else 1


def T_const(prime_cutoff: int) -> SeriesEstimate:
    """2 * prod over odd primes d of (1 - 2/d)/(1 - 1/d)^2, approx 1.32."""
    if prime_cutoff < 3:
        raise ValueError("cutoff must be >= 3")
    d = primes_up_to(prime_cutoff).astype(np.float64)
    d = d[d > 2]
    factors = (1 - 2 / d) / (1 - 1 / d) ** 2
    assert np.all(factors < 1.0)  # partial products strictly decreasing
    value = 2.0 * float(np.exp(np.sum(np.log(factors))))
    # log factor ~ -1/d^2; tail estimated by the prime sum past the cutoff
    tail = math.exp(-1.0 / (prime_cutoff * math.log(prime_cutoff)))
    return SeriesEstimate(
        value=value, terms_used=len(d), prime_cutoff=prime_cutoff,
        monotone=True, target=1.32, tail=tail,
    )


def C_const(rs_cutoff: int, prime_cutoff: int) -> SeriesEstimate:
    """Galway's constant: 4T * sum over coprime r > s >= 1, rs <= cutoff, of
    delta(rs) rho(rs(r-s)) / (rs)^(3/2). Approx 30.03 in the limit.

    r, s, r-s are pairwise coprime, so rho factors through a sieve table.
    """
    if rs_cutoff < 2:
        raise ValueError("rs_cutoff must be >= 2")
    t = T_const(prime_cutoff)
    rho_t = rho_table(rs_cutoff)
    partials = []
    terms = 0
    s = 1
    while s * (s + 1) <= rs_cutoff:
        r = np.arange(s + 1, rs_cutoff // s + 1, dtype=np.int64)
        r = r[np.gcd(r, s) == 1]
        delta = np.where((r % 4 == 0) | (s % 4 == 0), 2.0, 1.0)
        block = delta * rho_t[r] * rho_t[s] * rho_t[r - s] / (r.astype(np.float64) * s) ** 1.5
        assert np.all(block > 0)
        partials.append(float(np.sum(block)))
        terms += len(r)
        s += 1
    value = 4.0 * t.value * fsum(partials)
    return SeriesEstimate(
        value=value, terms_used=terms, prime_cutoff=prime_cutoff,
        monotone=True, target=30.03,
    )


def lambda_const(prime_cutoff: int) -> SeriesEstimate:
    """121.5 * prod over primes p > 3 of (1 - 3/p)/(1 - 1/p)^3, approx 77.1727."""
    if prime_cutoff < 5:
        raise ValueError("cutoff must be >= 5")
    p = primes_up_to(prime_cutoff).astype(np.float64)
    p = p[p > 3]
    factors = (1 - 3 / p) / (1 - 1 / p) ** 3
    assert np.all(factors < 1.0)
    value = 121.5 * float(np.exp(np.sum(np.log(factors))))
    tail = math.exp(-3.0 / (prime_cutoff * math.log(prime_cutoff)))
    return SeriesEstimate(
        value=value, terms_used=len(p), prime_cutoff=prime_cutoff,
        monotone=True, target=77.1727, tail=tail,
    )


def delta_prime(a: int, b: int, c: int) -> int:
    """2 if a = b = c mod 3 with common residue nonzero, else 1."""
    return 2 if (a % 3 == b % 3 == c % 3 != 0) else 1


def omega_abc(p: int, a: int, b: int, c: int) -> int:
    """Number of distinct residues of a, b, c modulo p."""
    return len({a % p, b % p, c % p})


def _coprime_triples(n: int):
    """Ordered pairwise-coprime triples a < b < c with abc = n."""
    f = factorize(n)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    for a in divs:
        if a * a * a >= n:
            break
        if n % a:
            continue
        m = n // a
        for b in divs:
            if b <= a:
                continue
            if b * b >= m or m % b:
                continue
            c = m // b
            if c <= b:
                continue
            if gcd(a, b) == 1 and gcd(a, c) == 1 and gcd(b, c) == 1:
                yield a, b, c


def kappa3_partial(n_cutoff: int, prime_cutoff: int) -> SeriesEstimate:
    """Partial sum of the slowly converging kappa_3 series up to n_cutoff.

    Per triple a < b < c the inner product over primes p > 3 with p not
    dividing n is finite in practice: for p > c the three residues are
    distinct, giving factor (p-3)/(p-3) = 1, so only p < c contribute.
    """
    if n_cutoff < 6:
        raise ValueError("n_cutoff must be >= 6")
    inner_primes = [int(p) for p in primes_up_to(prime_cutoff) if p > 3]
    total = 0.0
    terms = 0
    for n in range(6, n_cutoff + 1):
        triples = list(_coprime_triples(n))
        if not triples:
            continue
        outer = gcd(n, 6) / n ** (4.0 / 3.0)
        for p, _ in factorize(n).factors:
            if p > 3:
                outer *= p / (p - 3)
        inner = 0.0
        for a, b, c in triples:
            prod = float(delta_prime(a, b, c))
            for p in inner_primes:
                if p >= c:
                    break
                if n % p == 0:
                    continue
                prod *= (p - omega_abc(p, a, b, c)) / (p - 3)
            inner += prod
        term = outer * inner
        assert term >= 0.0
        total += term
        terms += 1
    return SeriesEstimate(
        value=total, terms_used=terms, prime_cutoff=prime_cutoff,
        monotone=True, target=27.05,
    )


def tau3(kappa3: float, lam: float) -> float:
    """tau_3 = kappa_3 * lambda, approx 2087.5 with the provisional kappa_3."""
    if kappa3 < 0 or lam < 0:
        raise ValueError("inputs must be nonnegative")
    return kappa3 * lam


def psi_primes(tau3_value: float, c_value: float) -> Tuple[float, float]:
    """(psi', psi'_1) = (tau_3/C, tau_3/(27 C))."""
    if c_value == 0:
        raise ValueError("C must be nonzero")
    return tau3_value / c_value, tau3_value / (27.0 * c_value)
