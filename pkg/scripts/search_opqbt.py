#!/usr/bin/env python3
"""Scan odd composites for quadratic-base test counterexamples.

No hit is expected at any reachable limit; a nonempty hit list would be a
publishable find, so the script prints full verdicts if any appear.
"""
import argparse
import time

from carmlab.opqbt import UPolicy, search_counterexamples


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=10**6)
    ap.add_argument("--policy", default="default",
                    help="default, or all-u:U for exhaustive u below U")
    args = ap.parse_args()

    if args.policy == "default":
        policy = UPolicy()
    else:
        policy = UPolicy(mode="all-u", u_max=int(args.policy.split(":", 1)[1]))

    t0 = time.time()
    summary = search_counterexamples(args.limit, policy)
    elapsed = time.time() - t0
    print(f"scanned {summary.scanned} odd composites <= {summary.limit} "
          f"in {elapsed:.1f}s ({policy.mode} policy)")
    if summary.hits:
        print(f"!! {len(summary.hits)} counterexamples:")
        for v in summary.hits:
            print(f"  n={v.n} u={v.u} eps={v.epsilon} strong={v.passes_strong}")
    else:
        print("no counterexamples")


if __name__ == "__main__":
    main()
