"""Korselt testing, Carmichael enumeration (sieve and constructive), counting.

Two independent enumeration routes are provided:
  * enumerate_carmichael_sieve: a base-2 Fermat prefilter over all odd
    composites followed by the exact Korselt check (every Carmichael number
    is odd and passes base 2).
  * enumerate_carmichael_kprime: recursive prime-tuple construction for a
    fixed number of prime factors k.
They must agree on overlapping ranges; tests enforce this.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, isqrt
from typing import Dict, List, Optional

from .core_arith import (
    CapacityError,
    SpfTable,
    carmichael_lambda,
    factorize,
    is_prime,
    primes_up_to,
)
from .pseudoprime import fermat_survivors
from .tables import CountTable

SIEVE_CAP = 10**9


@dataclass
class CarmichaelRecord:
    n: int
    factors: List[int]  # p_1 < ... < p_k
    k: int
    g: int  # gcd(p_i - 1)
    a: List[int]  # a_i = (p_i - 1) / g
    primitive: bool
    # True when g == lcm(a_i): the one boundary where a strict-inequality
    # reading of the primitive definition would flip the verdict.
    boundary_case: bool = False

    @classmethod
    def from_primes(cls, n: int, primes: List[int]) -> "CarmichaelRecord":
        primes = sorted(primes)
        if len(primes) < 3:
            raise ValueError("Carmichael numbers have at least three prime factors")
        prod = math.prod(primes)
        if prod != n:
            raise ValueError(f"primes do not multiply to {n}")
        g = reduce(gcd, (p - 1 for p in primes))
        a = [(p - 1) // g for p in primes]
        lcm_a = reduce(math.lcm, a)
        return cls(
            n=n,
            factors=primes,
            k=len(primes),
            g=g,
            a=a,
            primitive=g <= lcm_a,
            boundary_case=g == lcm_a,
        )


@dataclass
class CarmichaelCounts:
    bound: int
    total: int
    by_k: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.by_k and sum(self.by_k.values()) != self.total:
            raise ValueError("by_k does not sum to total")


def is_carmichael(n: int, spf: Optional[SpfTable] = None) -> bool:
    """Korselt's criterion: odd composite, squarefree, p-1 | n-1 for all p | n."""
    if n < 3 or n % 2 == 0 or is_prime(n):
        return False
    f = factorize(n, spf)
    if f.omega < 2 or not f.is_squarefree():
        return False
    return all((n - 1) % (p - 1) == 0 for p in f.primes())


def is_carmichael_via_lambda(n: int, spf: Optional[SpfTable] = None) -> bool:
    """Independent oracle: squarefree composite n with lambda(n) | n-1."""
    if n < 3 or n % 2 == 0 or is_prime(n):
        return False
    f = factorize(n, spf)
    if f.omega < 2 or not f.is_squarefree():
        return False
    return (n - 1) % carmichael_lambda(f) == 0


def classify_primitive(rec: CarmichaelRecord) -> bool:
    """g <= lcm(a_1..a_k); recomputes and stores the classification."""
    fresh = CarmichaelRecord.from_primes(rec.n, rec.factors)
    rec.g, rec.a = fresh.g, fresh.a
    rec.primitive, rec.boundary_case = fresh.primitive, fresh.boundary_case
    return rec.primitive


def enumerate_carmichael_sieve(
    bound: int,
    spf: Optional[SpfTable] = None,
    cap: int = SIEVE_CAP,
    threads: int = 1,
    cache_dir: Optional[str] = None,
) -> List[CarmichaelRecord]:
    """All Carmichael numbers <= bound, ascending, with full records."""
    if bound > cap:
        raise CapacityError(f"bound {bound} exceeds sieve cap {cap}")
    records = []
    for n in fermat_survivors(bound, base=2, threads=threads, cache_dir=cache_dir):
        n = int(n)
        f = factorize(n, spf)
        if f.omega < 3 or not f.is_squarefree():
            continue
        if all((n - 1) % (p - 1) == 0 for p in f.primes()):
            records.append(CarmichaelRecord.from_primes(n, f.primes()))
    return records


def _divisors(f) -> List[int]:
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return divs


def enumerate_carmichael_kprime(
    bound: int, k: int, spf: Optional[SpfTable] = None
) -> List[CarmichaelRecord]:
    """Carmichael numbers <= bound with exactly k prime factors, constructively.

    Choose odd primes p_1 < ... < p_{k-1} with product Q, then candidate
    p_k = d + 1 over divisors d of Q - 1 (p_k - 1 | n - 1 reduces to
    d | Q - 1 since Q p_k - 1 = Q(p_k - 1) + (Q - 1)), and keep tuples with
    Q p_k = 1 mod (p_i - 1) for every i.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    results: List[CarmichaelRecord] = []
    if bound < 3:
        return results
    # p_1 * p_2^(k-1) < p_1 * ... * p_k <= bound caps every intermediate prime
    prime_pool = [int(p) for p in primes_up_to(isqrt(bound) + 1) if p % 2 == 1]

    def choose(idx: int, chosen: List[int], q: int) -> None:
        remaining = k - len(chosen)  # primes still to pick, all > chosen[-1]
        if remaining == 1:
            _final_prime(chosen, q)
            return
        for j in range(idx, len(prime_pool)):
            p = prime_pool[j]
            if q * p**remaining > bound:
                break
            choose(j + 1, chosen + [p], q * p)

    def _final_prime(chosen: List[int], q: int) -> None:
        last = chosen[-1]
        limit = bound // q
        for d in _divisors(factorize(q - 1, spf)):
            pk = d + 1
            if pk <= last or pk > limit or not is_prime(pk):
                continue
            n = q * pk
            if all((n - 1) % (p - 1) == 0 for p in chosen):
                results.append(CarmichaelRecord.from_primes(n, chosen + [pk]))

    choose(0, [], 1)
    results.sort(key=lambda r: r.n)
    return results


def count_carmichael(bound: int, records: Optional[List[CarmichaelRecord]] = None, **kwargs) -> CarmichaelCounts:
    """C(bound) and the C_k(bound) breakdown from an enumeration."""
    if records is None:
        records = enumerate_carmichael_sieve(bound, **kwargs)
    by_k: Dict[int, int] = {}
    for rec in records:
        if rec.n <= bound:
            by_k[rec.k] = by_k.get(rec.k, 0) + 1
    return CarmichaelCounts(bound=bound, total=sum(by_k.values()), by_k=by_k)


def format_ratio(ratio: float) -> str:
    """Published rounding: two decimals down to 0.10, three below."""
    return f"{ratio:.2f}" if ratio >= 0.0995 else f"{ratio:.3f}"


def carmichael_ratio_table(counts: List[CarmichaelCounts]) -> CountTable:
    """(bound, C_3, C, ratio) rows supporting the vanishing-ratio conjecture."""
    table = CountTable(name="carmichael_ratio", columns=["bound", "c3", "c", "ratio"])
    for c in counts:
        three = c.by_k.get(3, 0)
        ratio = 0.0 if c.total == 0 else three / c.total
        table.add_row([c.bound, three, c.total, format_ratio(ratio)])
    return table
