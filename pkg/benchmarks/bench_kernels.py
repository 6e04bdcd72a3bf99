#!/usr/bin/env python3
"""Compare the compiled and pure-python scoring kernels.

Runs each hot kernel on synthetic data sized like a large tabular learning
problem (thousands of rows, hundreds of candidate literals) and reports the
best-of-N wall time per backend, plus one end-to-end learning run per
backend in a subprocess (the backend is chosen at import time, so the pure
run sets FOLDLP_FORCE_PY=1).

Usage: python3 benchmarks/bench_kernels.py [--rows 8192] [--candidates 256]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
from pathlib import Path
from random import Random

import numpy as np

from foldlp._kernels import available_backends

TESTS_DIR = Path(__file__).resolve().parent.parent / "tests"


def best_of(fn, repeats: int = 5) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def make_masks(rng: Random, n_rows: int, n_candidates: int):
    n_words = (n_rows + 63) // 64
    def mask():
        return np.array(
            [rng.getrandbits(64) for _ in range(n_words)], dtype=np.uint64
        )
    stack = np.stack([mask() for _ in range(n_candidates)])
    return stack, mask(), mask()


def make_sweep_input(rng: Random, n_rows: int):
    values = np.sort(
        np.array([rng.choice(range(200)) for _ in range(n_rows)], dtype=np.float64)
    )
    is_pos = np.array([rng.randint(0, 1) for _ in range(n_rows)], dtype=np.uint8)
    return values, is_pos


def bench_backend(impl, stack, pos, neg, values, is_pos):
    return {
        "score_masks": best_of(lambda: impl.score_masks(stack, pos, neg)),
        "and_popcount": best_of(
            lambda: [impl.and_popcount(stack[i], pos) for i in range(len(stack))]
        ),
        "threshold_sweep": best_of(lambda: impl.threshold_sweep(values, is_pos)),
    }


def bench_end_to_end(force_pure: bool, instances: int) -> float:
    code = (
        "import time;"
        "from random import Random;"
        f"import sys; sys.path.insert(0, {str(TESTS_DIR)!r});"
        "import oracles;"
        "from foldlp import foldr;"
        "rng = Random(1);"
        f"work = [oracles.random_learn_instance(rng, numeric=True) for _ in range({instances})];"
        "t0 = time.perf_counter();"
        "[foldr(b, es) for b, es, _ in work];"
        "print(time.perf_counter() - t0)"
    )
    env = dict(os.environ)
    if force_pure:
        env["FOLDLP_FORCE_PY"] = "1"
    else:
        env.pop("FOLDLP_FORCE_PY", None)
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return float(out.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=8192, help="subjects per mask")
    ap.add_argument("--candidates", type=int, default=256, help="literals per scoring call")
    ap.add_argument("--learn-instances", type=int, default=60,
                    help="random instances for the end-to-end comparison")
    args = ap.parse_args()

    backends = available_backends()
    rng = Random(0)
    stack, pos, neg = make_masks(rng, args.rows, args.candidates)
    values, is_pos = make_sweep_input(rng, args.rows)

    print(f"rows={args.rows} candidates={args.candidates}")
    results = {}
    for name, impl in backends.items():
        results[name] = bench_backend(impl, stack, pos, neg, values, is_pos)
    kernels = sorted(next(iter(results.values())))
    print(f"{'kernel':<16} " + " ".join(f"{n:>12}" for n in results))
    for kernel in kernels:
        row = " ".join(f"{results[n][kernel] * 1e3:>10.3f}ms" for n in results)
        print(f"{kernel:<16} {row}")
    if {"numpy", "cython"} <= results.keys():
        for kernel in kernels:
            ratio = results["numpy"][kernel] / results["cython"][kernel]
            print(f"  {kernel}: compiled is {ratio:.1f}x the numpy backend")

    print(f"\nend-to-end: learn {args.learn_instances} random numeric instances")
    for label, force in (("active backend", False), ("forced pure", True)):
        seconds = bench_end_to_end(force, args.learn_instances)
        print(f"  {label:<14} {seconds:.3f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
