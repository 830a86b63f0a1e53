"""Shared statistical helpers for the test suite."""

from collections import Counter


def tv_distance(counts_a: Counter, counts_b: Counter) -> float:
    """Total-variation distance between two empirical distributions."""
    total_a = sum(counts_a.values())
    total_b = sum(counts_b.values())
    keys = set(counts_a) | set(counts_b)
    return 0.5 * sum(
        abs(counts_a.get(k, 0) / total_a - counts_b.get(k, 0) / total_b)
        for k in keys)


def empirical(fn, trials: int) -> Counter:
    counts = Counter()
    for _ in range(trials):
        counts[fn()] += 1
    return counts
