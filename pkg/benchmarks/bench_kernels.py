#!/usr/bin/env python3
"""Benchmark the compiled sparse kernels against the numpy fallback.

The workload mirrors pair generation: score many (row, row) overlap dot
products over a CSR sentence matrix, plus the shared-weight sums used by
the slot-similarity baseline.

    python3 benchmarks/bench_kernels.py [--pairs 200000] [--rows 5000]
"""

import argparse
import random
import time

import numpy as np

from paramine import _pykernels

try:
    from paramine import _ckernels
except ImportError:
    _ckernels = None


def build_matrix(rng, n_rows, row_len=14, id_space=20000):
    ids_parts, wts_parts, indptr = [], [], [0]
    for _ in range(n_rows):
        n = rng.randint(row_len // 2, row_len)
        ids_parts.append(np.array(sorted(rng.sample(range(id_space), n)), dtype=np.int32))
        wts_parts.append(np.array([rng.uniform(0.5, 9.0) for _ in range(n)]))
        indptr.append(indptr[-1] + n)
    return (
        np.concatenate(ids_parts),
        np.concatenate(wts_parts),
        np.asarray(indptr, dtype=np.intp),
    )


def bench_batch(impl, ids, wts, indptr, left, right, repeats=3):
    out = np.empty(left.shape[0])
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        impl.batch_dot(ids, wts, indptr, left, right, out)
        best = min(best, time.perf_counter() - started)
    return best, out


def bench_common_sum(impl, rows, pairs, repeats=3):
    best = float("inf")
    acc = 0.0
    for _ in range(repeats):
        started = time.perf_counter()
        acc = 0.0
        for i, j in pairs:
            ids_a, wts_a = rows[i]
            ids_b, wts_b = rows[j]
            acc += impl.common_sum(ids_a, wts_a, ids_b, wts_b)
        best = min(best, time.perf_counter() - started)
    return best, acc


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=200_000)
    parser.add_argument("--rows", type=int, default=5_000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    ids, wts, indptr = build_matrix(rng, args.rows)
    left = np.array([rng.randrange(args.rows) for _ in range(args.pairs)], dtype=np.intp)
    right = np.array([rng.randrange(args.rows) for _ in range(args.pairs)], dtype=np.intp)
    rows = [
        (ids[indptr[i]:indptr[i + 1]], wts[indptr[i]:indptr[i + 1]])
        for i in range(args.rows)
    ]
    sum_pairs = [(rng.randrange(args.rows), rng.randrange(args.rows)) for _ in range(20_000)]

    print(f"batch_dot over {args.pairs} row pairs ({args.rows} rows):")
    py_time, py_out = bench_batch(_pykernels, ids, wts, indptr, left, right)
    print(f"  python   {py_time * 1e3:9.1f} ms   ({args.pairs / py_time:,.0f} pairs/s)")
    if _ckernels is not None:
        c_time, c_out = bench_batch(_ckernels, ids, wts, indptr, left, right)
        print(f"  compiled {c_time * 1e3:9.1f} ms   ({args.pairs / c_time:,.0f} pairs/s)")
        print(f"  speedup  {py_time / c_time:9.1f}x")
        if not np.allclose(py_out, c_out, rtol=1e-9):
            raise SystemExit("backends disagree")
    else:
        print("  compiled kernels not built; python fallback only")

    print(f"common_sum over {len(sum_pairs)} row pairs:")
    py_time, py_acc = bench_common_sum(_pykernels, rows, sum_pairs)
    print(f"  python   {py_time * 1e3:9.1f} ms")
    if _ckernels is not None:
        c_time, c_acc = bench_common_sum(_ckernels, rows, sum_pairs)
        print(f"  compiled {c_time * 1e3:9.1f} ms")
        print(f"  speedup  {py_time / c_time:9.1f}x")
        if abs(py_acc - c_acc) > 1e-6 * max(1.0, abs(py_acc)):
            raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
