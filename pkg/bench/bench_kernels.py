#!/usr/bin/env python3
"""Compare the compiled visibility kernel against the pure-Python fallback.

Times find_witness over the full verifier workload for a few representative
sets and reports the speedup.  Both backends must agree on every answer.

Usage: python3 bench/bench_kernels.py [--h 6] [--repeat 3]
"""

import argparse
import time

from cubevis._kernels import VARIANT_DUAL, VARIANT_MUTUAL, VARIANT_OUTER, backends
from cubevis.constructions import code_total_set, layer_pair_set
from cubevis.cube import layer


def workloads(h):
    mid = max(1, h // 2)
    yield "layer-pair mutual", layer_pair_set(h, mid - 1, min(3, h - mid + 1)), VARIANT_MUTUAL
    yield "middle-layer outer", layer(h, 0, mid), VARIANT_OUTER
    if h >= 2:
        yield "code-set dual", code_total_set(h), VARIANT_DUAL


def run(h, repeat):
    impls = backends()
    if "c" not in impls:
        print("compiled backend unavailable; nothing to compare")
        return
    print(f"h={h}  repeat={repeat}")
    print(f"{'workload':<22}{'|M|':>5}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, M, variant in workloads(h):
        member = M.member_bytes()
        times = {}
        answers = {}
        for backend, impl in impls.items():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                answers[backend] = impl.find_witness(h, member, variant)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        if answers["python"] != answers["c"]:
            raise SystemExit(f"backend disagreement on {name}: {answers}")
        speedup = times["python"] / times["c"] if times["c"] > 0 else float("inf")
        print(
            f"{name:<22}{len(M):>5}{times['python'] * 1e3:>10.2f}ms"
            f"{times['c'] * 1e3:>10.2f}ms{speedup:>9.1f}x"
        )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--h", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    run(args.h, args.repeat)


if __name__ == "__main__":
    main()
