"""Shared enumeration helpers for the sweep tests."""

from __future__ import annotations

from typing import Iterator


def restricted_growth_strings(n: int, max_labels: int | None = None) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n (equivalently set partitions)."""
    if n == 0:
        return
    cap = n if max_labels is None else max_labels

    def rec(i: int, used: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(prefix)
            return
        for label in range(min(used + 1, cap)):
            prefix.append(label)
            yield from rec(i + 1, max(used, label + 1), prefix)
            prefix.pop()

    yield from rec(0, 0, [])


def set_partitions(n: int, max_classes: int | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of {1..n} into nonempty classes, ordered by first occurrence."""
    for rgs in restricted_growth_strings(n, max_classes):
        m = max(rgs) + 1
        classes: list[list[int]] = [[] for _ in range(m)]
        for v, label in enumerate(rgs, start=1):
            classes[label].append(v)
        yield tuple(tuple(c) for c in classes)


def canonical_colorings(n: int, max_m: int) -> Iterator[tuple[int, ...]]:
    """Color sequences of length n, at most max_m colors, labeled by first occurrence.

    One sequence per set partition, so sweeps over these are sweeps over
    partitions of the path's vertex set.
    """
    for rgs in restricted_growth_strings(n, max_m):
        yield tuple(label + 1 for label in rgs)
