"""Benchmark the Fix-set search: compiled kernel vs pure-Python fallback.

Usage: python benchmarks/bench_oracle.py [--cases n:p n:p ...]

Both kernels run the identical generic-conjugation filter; the table reports
wall time per full search over all p^2 (p-1)^2 candidates and the speedup.
"""

import argparse
import time

from wpdcert import certifier


def run_case(n, p, repeat=3):
    best = {}
    for name, force_pure in (("compiled", False), ("pure", True)):
        if name == "compiled" and certifier._compiled_kernel is None:
            best[name] = None
            continue
        times = []
        for _ in range(repeat if name == "compiled" else 1):
            t0 = time.perf_counter()
            result = certifier.fix_set_bruteforce(n, p, force_pure=force_pure)
            times.append(time.perf_counter() - t0)
        best[name] = (min(times), len(result))
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cases", nargs="*", default=["2:7", "2:13", "3:17"],
                        help="n:p pairs to benchmark (try 2:31 for a bigger search)")
    args = parser.parse_args()
    print(f"{'case':<10} {'candidates':>12} {'compiled':>12} {'pure':>12} {'speedup':>9}  fix")
    for case in args.cases:
        n, p = (int(v) for v in case.split(":"))
        candidates = p * p * (p - 1) * (p - 1)
        res = run_case(n, p)
        pure_t, size = res["pure"]
        if res["compiled"] is None:
            print(f"{case:<10} {candidates:>12} {'n/a':>12} {pure_t:>11.3f}s {'n/a':>9}  {size}")
            continue
        comp_t, size_c = res["compiled"]
        assert size_c == size, "kernels disagree"
        print(f"{case:<10} {candidates:>12} {comp_t:>11.4f}s {pure_t:>11.3f}s {pure_t / comp_t:>8.1f}x  {size}")


if __name__ == "__main__":
    main()
