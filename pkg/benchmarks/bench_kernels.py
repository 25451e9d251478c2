#!/usr/bin/env python3
"""Benchmark the batched bigram-cosine kernels (numba @njit vs pure numpy).

Builds a synthetic lexicon CSR store of the given size and times scoring a
stream of query n-grams against candidate row subsets of realistic sizes.
Run:  python3 benchmarks/bench_kernels.py [--entries 30000] [--queries 400]
"""

from __future__ import annotations

import argparse
import math
import random
import statistics
import string
import time

import numpy as np

from nl2vis.kernels import batch_cosine_numba, batch_cosine_numpy
from nl2vis.similarity import bigram_counts


def build_store(n_entries: int, seed: int):
    rng = random.Random(seed)
    words = [" ".join("".join(rng.choices(string.ascii_lowercase,
                                          k=rng.randint(3, 9)))
                      for _ in range(rng.randint(1, 3)))
             for _ in range(n_entries)]
    vocab: dict[str, int] = {}
    indptr = [0]
    ids: list[int] = []
    counts: list[float] = []
    norms: list[float] = []
    for word in words:
        grams = bigram_counts(word)
        norms.append(math.sqrt(sum(c * c for c in grams.values())))
        for gram in sorted(grams):
            ids.append(vocab.setdefault(gram, len(vocab)))
            counts.append(float(grams[gram]))
        indptr.append(len(ids))
    return (words, vocab, np.asarray(indptr, np.int64), np.asarray(ids, np.int32),
            np.asarray(counts, np.float32), np.asarray(norms, np.float32))


def query_vec(vocab, text):
    grams = bigram_counts(text)
    qvec = np.zeros(max(len(vocab), 1), dtype=np.float32)
    sq = 0.0
    for gram, count in grams.items():
        sq += count * count
        gid = vocab.get(gram)
        if gid is not None:
            qvec[gid] = count
    return qvec, np.float32(math.sqrt(sq))


def run(impl, workload):
    start = time.perf_counter()
    acc = 0.0
    for qvec, qnorm, indptr, ids, counts, norms, rows in workload:
        acc += float(impl(qvec, qnorm, indptr, ids, counts, norms, rows).sum())
    return time.perf_counter() - start, acc


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--entries", type=int, default=30_000)
    parser.add_argument("--queries", type=int, default=400)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = random.Random(1)
    words, vocab, indptr, ids, counts, norms = build_store(args.entries, seed=9)
    workload = []
    for _ in range(args.queries):
        text = rng.choice(words) if rng.random() < 0.5 else \
            "".join(rng.choices(string.ascii_lowercase, k=rng.randint(3, 12)))
        qvec, qnorm = query_vec(vocab, text)
        size = rng.choice([64, 512, 4096, args.entries])
        rows = np.asarray(sorted(rng.sample(range(args.entries),
                                            min(size, args.entries))), np.int64)
        workload.append((qvec, qnorm, indptr, ids, counts, norms, rows))

    # warm both paths (includes the one-time numba JIT compile)
    jit_start = time.perf_counter()
    run(batch_cosine_numba, workload[:2])
    jit_seconds = time.perf_counter() - jit_start
    run(batch_cosine_numpy, workload[:2])

    results = {}
    for name, impl in (("numba", batch_cosine_numba), ("numpy", batch_cosine_numpy)):
        times, checks = [], []
        for _ in range(args.repeats):
            seconds, acc = run(impl, workload)
            times.append(seconds)
            checks.append(acc)
        results[name] = (statistics.median(times), checks[0])

    print(f"entries={args.entries} queries={args.queries} "
          f"vocab={len(vocab)} repeats={args.repeats}")
    print(f"numba first-call warmup (JIT): {jit_seconds * 1000:.0f} ms")
    for name, (seconds, acc) in results.items():
        per_query = seconds / args.queries * 1e3
        print(f"{name:>6}: {seconds * 1000:8.1f} ms total  "
              f"{per_query:6.3f} ms/query  (checksum {acc:.2f})")
    drift = abs(results["numba"][1] - results["numpy"][1])
    print(f"checksum drift: {drift:.4f} (float32 rounding)")
    ratio = results["numpy"][0] / max(results["numba"][0], 1e-9)
    print(f"numba speedup over numpy: {ratio:.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
