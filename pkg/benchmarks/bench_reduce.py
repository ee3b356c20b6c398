#!/usr/bin/env python3
"""Benchmark the compiled word kernel against the pure-Python fallback.

The kernel functions carry every search in the package (free reduction and
junction concatenation run once per node of the certificate search and per
replay step of the halting cross-check), so this is the hot loop that the
optional C extension exists for.

Run after building the extension in place:

    python3 setup.py build_ext --inplace
    python3 benchmarks/bench_reduce.py
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from realword import _kernel_py  # noqa: E402

try:
    from realword import _kernel
except ImportError:
    _kernel = None


def make_words(rng, count, length, alphabet):
    return [tuple(rng.choice((1, -1)) * rng.randint(1, alphabet)
                  for _ in range(length)) for _ in range(count)]


def bench(fn, words, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for w in words:
            fn(w)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_concat(mod, pairs, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a, b in pairs:
            mod.concat_ids(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(0)
    print(f"{'case':<28}{'pure (ms)':>12}{'compiled (ms)':>16}{'speedup':>10}")
    for length, alphabet in ((8, 4), (40, 10), (200, 10), (1000, 20)):
        words = make_words(rng, 2000, length, alphabet)
        t_py = bench(_kernel_py.reduce_ids, words) * 1000
        row = f"reduce len={length:<5} alpha={alphabet:<3}"
        if _kernel is None:
            print(f"{row:<28}{t_py:>12.2f}{'not built':>16}{'-':>10}")
            continue
        t_c = bench(_kernel.reduce_ids, words) * 1000
        for w in words[:50]:
            assert _kernel.reduce_ids(w) == _kernel_py.reduce_ids(w)
        print(f"{row:<28}{t_py:>12.2f}{t_c:>16.2f}{t_py / t_c:>10.1f}x")

    reduced = [_kernel_py.reduce_ids(w) for w in make_words(rng, 2000, 60, 8)]
    pairs = list(zip(reduced, reduced[1:] + reduced[:1]))
    t_py = bench_concat(_kernel_py, pairs) * 1000
    row = "concat reduced len~60"
    if _kernel is None:
        print(f"{row:<28}{t_py:>12.2f}{'not built':>16}{'-':>10}")
        return
    t_c = bench_concat(_kernel, pairs) * 1000
    print(f"{row:<28}{t_py:>12.2f}{t_c:>16.2f}{t_py / t_c:>10.1f}x")


if __name__ == "__main__":
    main()
