"""Exact measure of finite unions of closed intervals."""

from __future__ import annotations

from typing import Iterable

from .pl import ZERO, scalar


def merge(intervals: Iterable) -> list:
    """Sort and merge overlapping or touching ``(lo, hi)`` pairs."""
    ivs = sorted((scalar(a), scalar(b)) for a, b in intervals if scalar(a) <= scalar(b))
    out = []
    for a, b in ivs:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def union_length(intervals: Iterable):
    return sum((b - a for a, b in merge(intervals)), ZERO)


def overlap(a, b, lo, hi):
    """Length of ``[a, b] & [lo, hi]`` (0 when disjoint)."""
    left = a if a > lo else lo
    right = b if b < hi else hi
    return right - left if right > left else ZERO
