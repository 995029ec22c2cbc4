#!/usr/bin/env python3
"""Benchmark the compiled enumeration core against the pure-Python fallback.

Runs both engines on synthetic matrices (planted constant blocks over noise,
plus a mixed-kind instance), checks that their outputs are identical, and
prints timings.  Usage: python3 benchmarks/bench_engines.py [--repeat N]
"""

import argparse
import time

import numpy as np

from biclose import EnumParams, MixedMatrix, enumerate_biclusters
from biclose.enumerator import _engine_cy


def planted_blocks(rng, n_blocks, rows_per=10, block_cols=5, m=12, noise=0.02):
    n = rows_per * n_blocks
    vals = rng.randint(0, 40, size=(n, m)).astype(float)
    for b in range(n_blocks):
        rows = slice(b * rows_per, (b + 1) * rows_per)
        vals[rows, :block_cols] = rng.randint(0, 5, size=block_cols)
    flip = rng.uniform(size=vals.shape) < noise
    vals[flip] = rng.randint(0, 40, size=int(flip.sum()))
    missing = rng.uniform(size=vals.shape) < 0.03
    return MixedMatrix.from_numeric(vals, epsilons=[1.0] * m, missing=missing)


def mixed_survey(rng, n=300, m=10):
    vals = np.zeros((n, m))
    eps = []
    for j in range(m):
        if j % 3 == 0:
            vals[:, j] = np.round(rng.uniform(0, 1, n), 3)
            eps.append(0.15)
        elif j % 3 == 1:
            vals[:, j] = rng.randint(1, 4, n)
            eps.append(0.0)
        else:
            vals[:, j] = rng.randint(20, 60, n)
            eps.append(5.0)
    missing = rng.uniform(size=vals.shape) < 0.04
    return MixedMatrix.from_numeric(vals, epsilons=eps, missing=missing)


def bench(matrix, params, engine, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = enumerate_biclusters(matrix, params, engine=engine)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _engine_cy is None:
        print("compiled engine not available; nothing to compare")
        return

    rng = np.random.RandomState(2024)
    cases = [
        ("planted-8", planted_blocks(rng, 8), EnumParams(3, 2)),
        ("planted-24", planted_blocks(rng, 24), EnumParams(3, 2)),
        ("mixed-300x10", mixed_survey(rng), EnumParams(4, 2)),
    ]

    print(f"{'case':<14} {'biclusters':>10} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for name, matrix, params in cases:
        params = EnumParams(
            params.min_rows, params.min_cols,
            epsilons=tuple(matrix.epsilons),
        )
        t_cy, out_cy = bench(matrix, params, "compiled", args.repeat)
        t_py, out_py = bench(matrix, params, "python", args.repeat)
        pairs = lambda bs: [(b.extent, b.intent) for b in bs]
        assert pairs(out_cy) == pairs(out_py), f"engines disagree on {name}"
        print(
            f"{name:<14} {len(out_cy):>10} {t_cy * 1e3:>9.1f}ms"
            f" {t_py * 1e3:>9.1f}ms {t_py / t_cy:>7.1f}x"
        )


if __name__ == "__main__":
    main()
