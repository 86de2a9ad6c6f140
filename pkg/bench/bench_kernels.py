#!/usr/bin/env python3
"""Benchmark the compiled scan kernels against the numpy fallback.

Runs the full-domain type-(a) and type-(b) filters at n=5 (32^5 candidates)
on both backends and reports throughput.  The compiled extension tests one
candidate at a time with early exits; the fallback filters a whole block at
once, so it touches more memory per rejected candidate.

Usage: python bench/bench_kernels.py [--quick]
"""

import argparse
import time

from knuthovals import FieldContext, knuth_kn, knuth_kn_td
from knuthovals._kernels import fallback
from knuthovals.search import _scan_tables

try:
    from knuthovals._kernels import _scan as compiled
except ImportError:
    compiled = None


def run(label, fn, contrib, star, total):
    t0 = time.time()
    result = fn(contrib, star, 0, total)
    dt = time.time() - t0
    rate = total / dt / 1e6
    print(f"  {label:8s} {dt:8.2f}s  ({rate:7.1f} M candidates/s)  "
          f"{len(result)} survivors")
    return dt, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="scan 1/8 of the domain")
    args = parser.parse_args()

    ctx = FieldContext(5)
    total = ctx.q ** ctx.n
    if args.quick:
        total //= 8

    for plane, tag in ((knuth_kn(ctx), "a"), (knuth_kn_td(ctx), "b")):
        contrib, star, _ = _scan_tables(plane, "full")
        scan_name = f"scan_type_{tag}"
        print(f"type-({tag}) full-domain scan on {plane.label} "
              f"({total} candidates):")
        t_np, r_np = run("numpy", getattr(fallback, scan_name), contrib, star, total)
        if compiled is None:
            print("  compiled extension not built; skipping comparison")
            continue
        t_cy, r_cy = run("cython", getattr(compiled, scan_name), contrib, star, total)
        assert r_np == ([tuple(t) for t in r_cy] if tag == "b" else r_cy), \
            "backends disagree"
        print(f"  speedup  {t_np / t_cy:8.1f}x")
        print()


if __name__ == "__main__":
    main()
