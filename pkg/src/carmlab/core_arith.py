"""Exact integer arithmetic primitives: sieves, modular arithmetic, factorization.

Everything here works on plain Python ints (values expected to fit 64 bits;
intermediates are arbitrary precision so nothing overflows silently). The
sieve-backed pieces use numpy arrays internally.
"""
from __future__ import annotations

import math
import os
import random
import struct
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, isqrt
from typing import Iterator, List, Optional, Tuple

import numpy as np

SPF_MAGIC = b"SPF1"
DEFAULT_SEGMENT_SIZE = 1 << 22


class CapacityError(ValueError):
    """Requested bound exceeds a documented enumeration cap."""


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base^exponent mod modulus by binary exponentiation (stdlib pow)."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    return pow(base, exponent, modulus)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1; 0 iff gcd(a, n) > 1."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# Witness set proving primality for all n < 3.3 * 10^24 (covers 64-bit range).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array of length limit+1 with True at prime indices."""
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return sieve


def primes_up_to(limit: int) -> np.ndarray:
    return np.nonzero(prime_sieve(limit))[0]


def sieve_segment(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    """Boolean primality mask for [lo, hi); base_primes must cover sqrt(hi)."""
    mask = np.ones(hi - lo, dtype=bool)
    for p in base_primes:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        mask[start - lo :: p] = False
    for i in range(lo, min(hi, 2)):
        mask[i - lo] = False
    return mask


class _PiCache:
    """Grow-on-demand cumulative prime count, exact up to PRIME_PI_CAP."""

    def __init__(self) -> None:
        self.limit = 0
        self.cumulative: Optional[np.ndarray] = None

    def ensure(self, limit: int) -> None:
        if self.cumulative is None or limit > self.limit:
            limit = max(limit, 1 << 16)
            self.cumulative = np.cumsum(prime_sieve(limit)).astype(np.int64)
            self.limit = limit

    def count(self, y: int) -> int:
        self.ensure(y)
        assert self.cumulative is not None
        return int(self.cumulative[y])


PRIME_PI_CAP = 10**8
_pi_cache = _PiCache()


def prime_pi(y: int) -> int:
    """Exact count of primes <= y (sieve-backed, cap PRIME_PI_CAP)."""
    if y < 2:
        return 0
    if y > PRIME_PI_CAP:
        raise CapacityError(f"prime_pi exact cap is {PRIME_PI_CAP}; use li_approx for larger y")
    return _pi_cache.count(int(y))


def li_approx(y: float) -> float:
    """Logarithmic integral li(y), offset form Li(y) = li(y) - li(2).

    Used as the flagged approximation for prime_pi above its exact cap.
    """
    from scipy.special import expi

    return float(expi(math.log(y)) - expi(math.log(2.0)))


@dataclass(frozen=True)
class Factorization:
    """A number as a sorted list of (prime, exponent) pairs."""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            prev = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors do not recompose to {self.n}")

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]


@dataclass
class SpfTable:
    """Smallest-prime-factor table for 2..limit, immutable after build.

    spf[i] is the smallest prime factor of i (spf[p] == p for prime p).
    Entries are uint32, so limit must stay below 2^32.
    """

    limit: int
    spf: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "SpfTable":
        if limit >= 1 << 32:
            raise CapacityError("SpfTable entries are 32-bit; limit must be < 2^32")
        spf = np.arange(limit + 1, dtype=np.uint32)
        for p in range(2, isqrt(limit) + 1):
            if spf[p] == p:
                view = spf[p * p :: p]
                np.minimum(view, np.uint32(p), out=view)
        spf.setflags(write=False)
        return cls(limit=limit, spf=spf)

    def smallest_factor(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range [2, {self.limit}]")
        return int(self.spf[n])

    def factor(self, n: int) -> Factorization:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range [2, {self.limit}]")
        m = n
        factors = []
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n=n, factors=tuple(factors))

    # Disk cache: one file per segment, header {magic "SPF1", start: u64, len: u64},
    # then little-endian uint32 entries.
    def save_cache(self, directory: str, segment_size: int = DEFAULT_SEGMENT_SIZE) -> List[str]:
        os.makedirs(directory, exist_ok=True)
        paths = []
        for start in range(0, self.limit + 1, segment_size):
            chunk = self.spf[start : start + segment_size]
            path = os.path.join(directory, f"spf_{start:012d}.seg")
            write_spf_segment(path, start, chunk)
            paths.append(path)
        return paths

    @classmethod
    def load_cache(cls, directory: str, limit: int) -> "SpfTable":
        spf = np.empty(limit + 1, dtype=np.uint32)
        filled = 0
        for name in sorted(os.listdir(directory)):
            if not name.endswith(".seg"):
                continue
            start, values = read_spf_segment(os.path.join(directory, name))
            if start > limit:
                continue
            take = min(len(values), limit + 1 - start)
            spf[start : start + take] = values[:take]
            filled += take
        if filled < limit + 1:
            raise ValueError(f"cache in {directory} covers only {filled} of {limit + 1} entries")
        spf.setflags(write=False)
        return cls(limit=limit, spf=spf)


def write_spf_segment(path: str, start: int, values: np.ndarray) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(SPF_MAGIC)
        fh.write(struct.pack("<QQ", start, len(values)))
        fh.write(values.astype("<u4").tobytes())
    os.replace(tmp, path)


def read_spf_segment(path: str) -> Tuple[int, np.ndarray]:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != SPF_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        start, length = struct.unpack("<QQ", fh.read(16))
        values = np.frombuffer(fh.read(4 * length), dtype="<u4")
        if len(values) != length:
            raise ValueError(f"{path}: truncated segment")
    return start, values.astype(np.uint32)


def _pollard_rho(n: int, rng: random.Random) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_LIMIT = 10**5
_trial_primes: Optional[List[int]] = None


def factorize(n: int, spf: Optional[SpfTable] = None) -> Factorization:
    """Complete factorization of n >= 2: SPF lookup, trial division, Pollard rho."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if spf is not None and n <= spf.limit:
        return spf.factor(n)
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = [int(p) for p in primes_up_to(_TRIAL_LIMIT)]
    counts: dict = {}
    m = n
    for p in _trial_primes:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        stack = [m]
        rng = random.Random(n)
        while stack:
            v = stack.pop()
            if is_prime(v):
                counts[v] = counts.get(v, 0) + 1
                continue
            root = isqrt(v)
            if root * root == v:
                stack.extend([root, root])
                continue
            d = _pollard_rho(v, rng)
            stack.extend([d, v // d])
    return Factorization(n=n, factors=tuple(sorted(counts.items())))


def carmichael_lambda(f: Factorization) -> int:
    """Carmichael function lambda(n) from a factorization."""
    parts = []
    for p, e in f.factors:
        if p == 2:
            parts.append(1 if e == 1 else 2 if e == 2 else 1 << (e - 2))
        else:
            parts.append(p ** (e - 1) * (p - 1))
    return reduce(math.lcm, parts, 1)


def multiplicative_order(b: int, n: int, spf: Optional[SpfTable] = None) -> int:
    """Smallest e >= 1 with b^e = 1 mod n; requires gcd(b, n) = 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if gcd(b, n) != 1:
        raise ValueError(f"gcd({b}, {n}) != 1")
    if n == 2:
        return 1
    e = carmichael_lambda(factorize(n, spf))
    for q, _ in factorize(e, spf).factors:
        while e % q == 0 and pow(b, e // q, n) == 1:
            e //= q
    return e


def iter_segments(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[Tuple[int, int]]:
    """Half-open [start, stop) windows covering [lo, hi]."""
    start = lo
    while start <= hi:
        stop = min(hi + 1, start + segment_size)
        yield start, stop
        start = stop
