"""Fermat pseudoprime testing, exact counting, and the extension construction.

Counting convention: a base-b pseudoprime is any composite n with gcd(b, n) = 1
and b^(n-1) = 1 (mod n). For b = 2 this forces n odd, which reproduces the
published base-2 tables exactly.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional

import numpy as np

from .core_arith import (
    CapacityError,
    DEFAULT_SEGMENT_SIZE,
    Factorization,
    SpfTable,
    factorize,
    is_prime,
    iter_segments,
    multiplicative_order,
    primes_up_to,
    sieve_segment,
)
from .tables import CountTable

# Vectorized counting multiplies residues below 2^32 inside uint64, so products
# never overflow. This is the hard ceiling for exact enumeration.
ENUMERATION_CAP = 1 << 32


@dataclass(frozen=True)
class PspRecord:
    n: int
    base: int
    factorization: Factorization
    omega: int

    @classmethod
    def make(cls, n: int, base: int, spf: Optional[SpfTable] = None) -> "PspRecord":
        f = factorize(n, spf)
        return cls(n=n, base=base, factorization=f, omega=f.omega)


@dataclass
class PspCounts:
    bound: int
    base: int
    total: int
    by_omega: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.by_omega and sum(self.by_omega.values()) != self.total:
            raise ValueError("by_omega does not sum to total")


def is_fermat_psp(n: int, b: int) -> bool:
    """True iff n is composite, coprime to b, and b^(n-1) = 1 mod n."""
    if n < 3:
        return False
    if gcd(b, n) != 1:
        return False
    if pow(b, n - 1, n) != 1:
        return False
    return not is_prime(n)


def order_criterion_psp(n: int, spf: Optional[SpfTable] = None) -> bool:
    """Base-2 pseudoprimality via the order criterion: ord_n(2) divides n-1."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if is_prime(n):
        raise ValueError("n must be composite")
    return (n - 1) % multiplicative_order(2, n, spf) == 0


def _fermat_segment(lo: int, hi: int, base: int, prime_mask: np.ndarray) -> np.ndarray:
    """Composite n in [lo, hi) coprime to base with base^(n-1) = 1 mod n."""
    n = np.arange(max(lo, 3), hi, dtype=np.uint64)
    if base == 2:
        n = n[n % 2 == 1]
    else:
        n = n[np.gcd(n, np.uint64(base)) == 1]
    if len(n) == 0:
        return n
    e = n - np.uint64(1)
    result = np.ones_like(n)
    b = np.mod(np.full_like(n, base), n)
    for j in range(int(e.max()).bit_length()):
        bit = ((e >> np.uint64(j)) & np.uint64(1)).astype(bool)
        result[bit] = result[bit] * b[bit] % n[bit]
        b = b * b % n
    survivors = n[result == 1]
    return survivors[~prime_mask[(survivors - lo).astype(np.int64)]]


def fermat_survivors(
    bound: int,
    base: int = 2,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache_dir: Optional[str] = None,
) -> np.ndarray:
    """All base-b Fermat pseudoprimes <= bound, ascending.

    Segmented and deterministic: per-segment results are merged in bound order
    regardless of thread count.
    """
    if bound > ENUMERATION_CAP:
        raise CapacityError(f"bound {bound} exceeds enumeration cap {ENUMERATION_CAP}")
    if bound < 3:
        return np.empty(0, dtype=np.uint64)
    base_primes = primes_up_to(math.isqrt(bound) + 1)
    segments = list(iter_segments(3, bound, segment_size))

    def run(seg):
        lo, hi = seg
        if cache_dir is not None:
            path = os.path.join(cache_dir, f"psp_b{base}_{lo}_{hi}.npy")
            if os.path.exists(path):
                return np.load(path)
        mask = sieve_segment(lo, hi, base_primes)
        out = _fermat_segment(lo, hi, base, mask)
        if cache_dir is not None:
            os.makedirs(cache_dir, exist_ok=True)
            tmp = path + ".tmp.npy"
            np.save(tmp, out)
            os.replace(tmp, path)
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, segments))
    else:
        parts = [run(seg) for seg in segments]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.uint64)


def count_psp(
    bound: int,
    base: int = 2,
    spf: Optional[SpfTable] = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache_dir: Optional[str] = None,
) -> PspCounts:
    """Exact P_b(bound) with the omega breakdown P_{b,k}(bound)."""
    survivors = fermat_survivors(bound, base, segment_size, threads, cache_dir)
    by_omega: Dict[int, int] = {}
    for n in survivors:
        k = factorize(int(n), spf).omega
        by_omega[k] = by_omega.get(k, 0) + 1
    return PspCounts(bound=bound, base=base, total=len(survivors), by_omega=by_omega)


def enumerate_semiprime_psp(
    bound: int, base: int = 2, spf: Optional[SpfTable] = None, **kwargs
) -> List[PspRecord]:
    """Base-b pseudoprimes n = pq with p < q distinct primes, ascending."""
    records = []
    for n in fermat_survivors(bound, base, **kwargs):
        f = factorize(int(n), spf)
        if f.omega == 2 and f.is_squarefree():
            records.append(PspRecord(n=int(n), base=base, factorization=f, omega=2))
    return records


def galway_fit(bound: int, count2: int) -> float:
    """Observed constant in P_{b,2}(x) ~ C sqrt(x)/log^2 x, solved for C."""
    if bound < 3:
        raise ValueError("bound must be >= 3")
    return count2 * math.log(bound) ** 2 / math.sqrt(bound)


def extend_psp(record: PspRecord, search_bound: int) -> Optional[int]:
    """Smallest prime p <= search_bound with p > n, p = 1 mod (n-1), and
    base^(n-1) = 1 mod p; then n*p is a base-b pseudoprime with one more
    distinct prime factor. Returns None if no such p exists below the bound.
    """
    n, base = record.n, record.base
    if not is_fermat_psp(n, base):
        raise ValueError(f"{n} is not a base-{base} pseudoprime")
    m = n - 1
    p = n + m  # n = 1 mod (n-1), so the next candidate in the progression
    while p <= search_bound:
        if pow(base, m, p) == 1 and is_prime(p):
            product = n * p
            assert is_fermat_psp(product, base)
            assert factorize(product).omega == record.omega + 1
            return p
        p += m
    return None


def ratio_table(counts: List[PspCounts]) -> CountTable:
    """(bound, P_{b,2}, P_b, ratio) rows with the published 2-decimal rounding."""
    table = CountTable(name="psp_ratio", columns=["bound", "psp2", "psp", "ratio"])
    for c in counts:
        two = c.by_omega.get(2, 0)
        ratio = 0.0 if c.total == 0 else two / c.total
        table.add_row([c.bound, two, c.total, f"{ratio:.2f}"])
    return table
