"""Closed-form bounds, conjectural counting formulas, and smooth-number counts.

All logarithms are natural. Every o(1) appearing in a formula is a caller
supplied substitution (default 0), matching how the published comparison
tables were evidently computed.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, log
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from .core_arith import (
    PRIME_PI_CAP,
    CapacityError,
    iter_segments,
    li_approx,
    prime_pi,
    prime_sieve,
    primes_up_to,
    sieve_segment,
)

_E = math.e


@dataclass
class BoundEval:
    x: float
    name: str
    value: float
    o1_policy: float = 0.0


def _logs(x: float, depth: int) -> List[float]:
    """[log x, log log x, ...] up to depth iterations; raises if undefined."""
    out = []
    v = float(x)
    for _ in range(depth):
        v = log(v)
        if v <= 0:
            raise ValueError(f"iterated log of {x} undefined at depth {len(out) + 1}")
        out.append(v)
    return out


def L_fn(x: float) -> float:
    """exp(log x * logloglog x / loglog x), the universal scaling function."""
    if x <= _E**_E:
        raise ValueError("x must exceed e^e")
    l1, l2, l3 = _logs(x, 3)
    return math.exp(l1 * l3 / l2)


def h_of(x: float, count: int) -> float:
    """Exponent h with count = x * exp(-h * log x * log^(3) x / log^(2) x)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    l1, l2, l3 = _logs(x, 3)
    return (1.0 - log(count) / l1) * l2 / l3


def beta_of(x: float, count: int) -> float:
    """Exponent beta with count = x^beta."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return log(count) / log(x)


def bound_formulas(
    x: float, o1: float = 0.0, tau3_value: float = 2087.5
) -> Tuple[Dict[str, BoundEval], Dict[str, str]]:
    """Every named closed-form bound/conjecture value at x.

    Formulas whose iterated logs are undefined at this x are omitted with a
    reason. The upper bound's O-term is dropped (noted in the name).
    """
    values: Dict[str, BoundEval] = {}
    omitted: Dict[str, str] = {}

    def put(name: str, value: float) -> None:
        values[name] = BoundEval(x=x, name=name, value=value, o1_policy=o1)

    put("lower_agp_2_7", x ** (2.0 / 7.0))
    put("lower_harman", x**0.33336704)
    try:
        l1, l2, l3 = _logs(x, 3)
    except ValueError as exc:
        omitted.update({k: str(exc) for k in ("pomerance", "heuristic", "heuristic_alt", "upper_no_oterm")})
        return values, omitted
    put("pomerance", x ** (1.0 - (1.0 + o1) * l3 / l2))
    put("heuristic", x ** (1.0 - ((1.0 + o1) * l3 + 1.0) / l2))
    # alternative bracketing of the "+1" in the displayed exponent
    put("heuristic_alt", x ** (1.0 - (1.0 + o1) * (l3 + 1.0) / l2))
    put("c3_leading", tau3_value * x ** (1.0 / 3.0) / l1**3)
    try:
        l4 = log(l3)
        inner = l3 + l4 + (l4 - 1.0) / l3
        put("upper_no_oterm", x * math.exp(-(l1 / l2) * inner))
    except ValueError:
        omitted["upper_no_oterm"] = "log^(4) x undefined at this x"
    return values, omitted


def log_cube_integral(upper: float) -> float:
    """Integral of dt/log^3 t from 2 to upper, adaptive quadrature, rel 1e-8."""
    if upper <= 2:
        return 0.0
    value, _ = quad(lambda t: 1.0 / log(t) ** 3, 2.0, upper, epsrel=1e-8, limit=200)
    return value


def corollary_values(x: float, psi_p: float = 69.51, psi_p1: float = 2.57) -> Tuple[float, float]:
    """Both predicted counts from the corollary forms."""
    if x ** (1.0 / 3.0) < 2.0:
        raise ValueError("x^(1/3) must be >= 2")
    l1 = log(x)
    lx = L_fn(x)
    first = psi_p * x ** (5.0 / 6.0) / (l1 * lx)
    second = psi_p1 * math.sqrt(x) * l1**2 * log_cube_integral(x ** (1.0 / 3.0)) / lx
    return first, second


def observed_psi(x: float, count: int) -> Tuple[float, float]:
    """Observed (psi', psi'_1) solved from the corollary forms at a data point."""
    if x ** (1.0 / 3.0) < 2.0:
        raise ValueError("x^(1/3) must be >= 2")
    l1 = log(x)
    lx = L_fn(x)
    psi_p = count * l1 * lx / x ** (5.0 / 6.0)
    psi_p1 = count * lx / (math.sqrt(x) * l1**2 * log_cube_integral(x ** (1.0 / 3.0)))
    return psi_p, psi_p1


def pi_flex(y: float) -> Tuple[float, bool]:
    """(prime count, exact?) - exact sieve below the cap, else li(y), flagged."""
    if y <= PRIME_PI_CAP:
        return float(prime_pi(int(y))), True
    return li_approx(y), False


def a_of(x: float, o1: float = 0.0) -> float:
    """The refined heuristic count a(x); see heuristic_N for the floored form."""
    if x < 10**3:
        raise ValueError("a(x) is evaluated for x >= 10^3")
    l1, l2, l3 = _logs(x, 3)
    pi_val, _ = pi_flex(l1**l2)
    base = (l2 * l2) * pi_val * math.exp(-(1.0 + o1) * l2 * l3) / l1
    return base ** (l1 / (l2 * l2))


def heuristic_N(x: float, o1: float = 0.0) -> float:
    """(q/l)^l with q the smooth-progression prime count and l floored.

    Equals a_of up to flooring l = [log x / (loglog x)^2].
    """
    if x < 10**3:
        raise ValueError("evaluated for x >= 10^3")
    l1, l2, l3 = _logs(x, 3)
    pi_val, _ = pi_flex(l1**l2)
    q = pi_val * math.exp(-(1.0 + o1) * l2 * l3)
    ell = int(l1 / (l2 * l2))
    if ell < 1:
        raise ValueError("floored exponent vanishes at this x")
    return (q / ell) ** ell


SMOOTH_CAP = 10**9
SMOOTH_PRIME_CAP = 10**8


def psi_smooth(x: int, y: int) -> int:
    """Exact count of y-smooth integers in [1, x] (includes 1)."""
    if x > SMOOTH_CAP:
        raise CapacityError(f"psi_smooth exact cap is {SMOOTH_CAP}")
    if x < 1:
        return 0
    primes = [int(p) for p in primes_up_to(min(x, y))]

    @lru_cache(maxsize=None)
    def count(m: int, i: int) -> int:
        # smooth numbers <= m using primes[0..i]; flattened Buchstab recursion
        total = 1  # the empty product
        for j in range(i + 1):
            p = primes[j]
            if p > m:
                break
            total += count(m // p, j)
        return total

    result = count(x, len(primes) - 1)
    count.cache_clear()
    return result


def psi_smooth_brute(x: int, y: int) -> int:
    """Independent oracle: direct smoothness filter, for small x only."""
    if x < 1:
        return 0
    primes = [int(p) for p in primes_up_to(max(2, min(x, y)))]
    total = 0
    for n in range(1, x + 1):
        m = n
        for p in primes:
            while m % p == 0:
                m //= p
        if m == 1:
            total += 1
    return total


def psi_prime_smooth(x: int, y: int) -> int:
    """Primes p <= x with p-1 squarefree and y-smooth, by segmented sieve."""
    if x > SMOOTH_PRIME_CAP:
        raise CapacityError(f"psi_prime_smooth exact cap is {SMOOTH_PRIME_CAP}")
    if x < 2:
        return 0
    base_primes = primes_up_to(isqrt(x) + 1)
    small = primes_up_to(min(x, y))
    total = 0
    for lo, hi in iter_segments(2, x):
        residual = np.arange(lo, hi, dtype=np.int64) - 1  # p - 1 values
        squarefree = np.ones(hi - lo, dtype=bool)
        for p in base_primes:
            p = int(p)
            sq = p * p
            if sq >= hi:
                break
            start = ((lo - 1 + sq - 1) // sq) * sq  # multiples of p^2 among p-1
            squarefree[start - lo + 1 :: sq] = False
        for p in small:
            p = int(p)
            q = p
            while q < hi:
                start = ((lo - 1 + q - 1) // q) * q
                residual[start - lo + 1 :: q] //= p
                q *= p
        is_p = sieve_segment(lo, hi, base_primes)
        ok = is_p & squarefree & (residual == 1)
        if lo <= 2 < hi:
            ok[2 - lo] = True  # p = 2: p - 1 = 1 is vacuously smooth/squarefree
        total += int(np.count_nonzero(ok))
    return total


def smooth_ratio_check(x: int, y: int) -> Tuple[float, float]:
    """(Psi(x,y)/x, Psi'(x,y)/pi(x)) - reported for comparison, not asserted."""
    return psi_smooth(x, y) / x, psi_prime_smooth(x, y) / prime_pi(x)


def pi_k_exact(x: int, k: int) -> Tuple[int, int]:
    """(pi_k, tau_k): composites <= x with k distinct / k total prime factors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x > SMOOTH_CAP:
        raise CapacityError(f"pi_k_exact cap is {SMOOTH_CAP}")
    base_primes = primes_up_to(max(2, isqrt(x) + 1))
    pi_k = tau_k = 0
    for lo, hi in iter_segments(2, x):
        size = hi - lo
        omega = np.zeros(size, dtype=np.uint8)
        big = np.zeros(size, dtype=np.uint8)
        residual = np.arange(lo, hi, dtype=np.int64)
        for p in base_primes:
            p = int(p)
            if p * p >= hi:
                break
            first = ((lo + p - 1) // p) * p
            omega[first - lo :: p] += 1
            q = p
            while q < hi:
                qstart = ((lo + q - 1) // q) * q
                big[qstart - lo :: q] += 1
                residual[qstart - lo :: q] //= p
                q *= p
        # anything left > 1 is a single prime factor (possibly the number itself)
        leftover = residual > 1
        omega[leftover] += 1
        big[leftover] += 1
        is_p = sieve_segment(lo, hi, base_primes)
        composite = ~is_p
        pi_k += int(np.count_nonzero(composite & (omega == k)))
        tau_k += int(np.count_nonzero(composite & (big == k)))
    return pi_k, tau_k


def poisson_prob(x: float, k: int) -> float:
    """(loglog x)^(k-1) exp(-loglog x) / (k-1)!, the Erdos-Kac limit term."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x <= _E:
        raise ValueError("x must exceed e")
    lam = log(log(x))
    return lam ** (k - 1) * math.exp(-lam) / math.factorial(k - 1)


def log_star(x: float, base: float = _E) -> int:
    """Iterated-logarithm count: applications of log_base to bring x to <= 1."""
    if base <= math.exp(1.0 / _E):
        raise ValueError("base must exceed e^(1/e)")
    count = 0
    v = float(x)
    while v > 1.0:
        v = log(v, base)
        count += 1
    return count
