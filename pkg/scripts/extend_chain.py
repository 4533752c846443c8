#!/usr/bin/env python3
"""Grow a pseudoprime with many prime factors by repeated extension.

Starting from a base-2 pseudoprime n, repeatedly find a prime p = 1 mod
(n-1) with 2^(n-1) = 1 mod p and replace n by n*p; each step adds one
distinct prime factor while preserving pseudoprimality.
"""
import argparse

from carmlab.pseudoprime import PspRecord, extend_psp, fermat_survivors


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=341)
    ap.add_argument("--steps", type=int, default=4)
    ap.add_argument("--search-bound", type=int, default=10**13)
    args = ap.parse_args()

    if args.start == 0:
        args.start = int(fermat_survivors(10**4)[0])
    n = args.start
    rec = PspRecord.make(n, base=2)
    print(f"start: {n} (omega = {rec.omega})")
    for step in range(args.steps):
        p = extend_psp(rec, args.search_bound)
        if p is None:
            print(f"step {step + 1}: no prime below {args.search_bound}, stopping")
            break
        n *= p
        rec = PspRecord.make(n, base=2)
        print(f"step {step + 1}: * {p} -> omega = {rec.omega}, n has {n.bit_length()} bits")


if __name__ == "__main__":
    main()
