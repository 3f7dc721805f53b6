#!/usr/bin/env python3
"""Benchmark the compiled edit-distance kernel against the pure fallback.

The kernel sits in the inner loop of fuzzy coauthor matching, where every
harvested author is compared against every corpus author, so a corpus of
realistic size multiplies any per-call cost by millions.

Usage: python benchmarks/bench_levenshtein.py [--pairs N] [--repeat N]
"""

import argparse
import random
import time

from jpbib.similarity import USING_COMPILED, levenshtein_py, names_match, MatchConfig

try:
    from jpbib.similarity._speedups import levenshtein as levenshtein_c
except ImportError:
    levenshtein_c = None

SYLLABLES = [
    "ka", "ki", "ku", "ke", "ko", "sa", "shi", "su", "se", "so",
    "ta", "chi", "tsu", "te", "to", "na", "ni", "nu", "ne", "no",
    "ha", "hi", "fu", "he", "ho", "ma", "mi", "mu", "me", "mo",
    "ya", "yu", "yo", "ra", "ri", "ru", "re", "ro", "wa", "n",
]


def random_name(rng: random.Random) -> str:
    return "".join(rng.choice(SYLLABLES) for _ in range(rng.randrange(2, 5))).capitalize()


def make_pairs(count: int, seed: int = 7) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        a = random_name(rng)
        # Half the pairs are near-misses of each other.
        if rng.random() < 0.5:
            b = list(a)
            b[rng.randrange(len(b))] = rng.choice("aiueo")
            b = "".join(b)
        else:
            b = random_name(rng)
        pairs.append((a, b))
    return pairs


def bench(function, pairs, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        for a, b in pairs:
            function(a, b)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=50_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    pairs = make_pairs(args.pairs)
    print(f"{args.pairs} name pairs, best of {args.repeat} runs")
    print(f"compiled kernel active in package: {USING_COMPILED}")

    py_time = bench(levenshtein_py, pairs, args.repeat)
    print(f"pure python : {py_time:8.3f} s  ({args.pairs / py_time:>12,.0f} pairs/s)")

    if levenshtein_c is None:
        print("compiled    : not built (install with Cython to compare)")
        return
    c_time = bench(levenshtein_c, pairs, args.repeat)
    print(f"compiled    : {c_time:8.3f} s  ({args.pairs / c_time:>12,.0f} pairs/s)")
    print(f"speedup     : {py_time / c_time:8.1f}x")

    sample = [(f"{a} {b}", f"{b} {a}") for a, b in pairs[:2_000]]
    cfg = MatchConfig()
    started = time.perf_counter()
    for a, b in sample:
        names_match(a, b, cfg)
    elapsed = time.perf_counter() - started
    print(f"names_match : {len(sample) / elapsed:>12,.0f} comparisons/s "
          f"(full-name, via {'compiled' if USING_COMPILED else 'pure'} kernel)")


if __name__ == "__main__":
    main()
