"""Benchmark the compiled n-gram kernel against the pure-Python fallback.

Generates synthetic token sequences shaped like tokenized news articles
and times ``clipped_ngram_stats`` on both implementations for a few
(n, length, vocabulary) settings.  Run it from the repository root:

    python3 benchmarks/bench_ngram.py
    python3 benchmarks/bench_ngram.py --pairs 5000 --repeats 5
"""

import argparse
import random
import statistics
import time

from indicsum._kernels import _ngram_py

try:
    from indicsum._kernels import _ngram
except ImportError:
    _ngram = None


def make_pairs(pairs, length, vocab, seed):
    rng = random.Random(seed)
    words = [f"w{i}" for i in range(vocab)]
    out = []
    for _ in range(pairs):
        cand = [rng.choice(words) for _ in range(rng.randint(length // 2, length))]
        ref = [rng.choice(words) for _ in range(rng.randint(length // 2, length))]
        out.append((cand, ref))
    return out


def time_kernel(fn, data, n, repeats):
    best = []
    for _ in range(repeats):
        started = time.perf_counter()
        for cand, ref in data:
            fn(cand, ref, n)
        best.append(time.perf_counter() - started)
    return min(best), statistics.median(best)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=2000,
                        help="sequence pairs per setting (default 2000)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repetitions; best is reported")
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args(argv)

    settings = [
        (1, 300, 4000),
        (2, 300, 4000),
        (4, 300, 4000),
        (2, 40, 300),
        (4, 2000, 70000),  # wide vocabulary forces the fallback path
    ]

    print(f"{'n':>2} {'len':>5} {'vocab':>6} {'python':>10} {'cython':>10} "
          f"{'speedup':>8}")
    for n, length, vocab in settings:
        data = make_pairs(args.pairs, length, vocab, args.seed)
        py_best, _ = time_kernel(
            _ngram_py.clipped_ngram_stats, data, n, args.repeats
        )
        if _ngram is None:
            print(f"{n:>2} {length:>5} {vocab:>6} {py_best:>9.3f}s "
                  f"{'absent':>10} {'':>8}")
            continue
        cy_best, _ = time_kernel(
            _ngram.clipped_ngram_stats, data, n, args.repeats
        )
        for cand, ref in data[:50]:
            assert _ngram.clipped_ngram_stats(cand, ref, n) == (
                _ngram_py.clipped_ngram_stats(cand, ref, n)
            )
        print(f"{n:>2} {length:>5} {vocab:>6} {py_best:>9.3f}s "
              f"{cy_best:>9.3f}s {py_best / cy_best:>7.1f}x")


if __name__ == "__main__":
    main()
