"""Sub-families that are monotone in every coordinate of the first blocks."""

from __future__ import annotations

import itertools
from bisect import bisect_right
from typing import Sequence

from ..vectors import BlockVector

# beyond this many coordinates the exact direction enumeration is skipped
MAX_EXACT_COORDS = 12


def coordinate_table(points: Sequence[BlockVector], n0: int) -> list[list]:
    """Row per point: the coordinates of blocks 1..n0, concatenated."""
    return [[a for n in range(1, n0 + 1) for a in p.block(n)] for p in points]


def is_monotone(seq: Sequence) -> bool:
    up = all(a <= b for a, b in zip(seq, seq[1:]))
    down = all(a >= b for a, b in zip(seq, seq[1:]))
    return up or down


def longest_monotone(values: Sequence) -> list[int]:
    """Indices of a longest non-decreasing or non-increasing subsequence."""
    best: list[int] = []
    for sign in (1, -1):
        run = _longest_nondecreasing([sign * v for v in values])
        if len(run) > len(best):
            best = run
    return best


def _longest_nondecreasing(values: Sequence) -> list[int]:
    tails: list = []
    tail_idx: list[int] = []
    parent = [-1] * len(values)
    for i, v in enumerate(values):
        pos = bisect_right(tails, v)
        if pos == len(tails):
            tails.append(v)
            tail_idx.append(i)
        else:
            tails[pos] = v
            tail_idx[pos] = i
        parent[i] = tail_idx[pos - 1] if pos else -1
    out = []
    i = tail_idx[-1] if tail_idx else -1
    while i != -1:
        out.append(i)
        i = parent[i]
    return out[::-1]


def cascade(table: Sequence[Sequence]) -> list[int]:
    """Iterated longest-monotone extraction, one coordinate at a time."""
    keep = list(range(len(table)))
    width = len(table[0]) if table else 0
    for j in range(width):
        picked = longest_monotone([table[i][j] for i in keep])
        keep = [keep[t] for t in picked]
    return keep


def _longest_chain(table: Sequence[Sequence], signs: Sequence[int]) -> list[int]:
    size = len(table)
    length = [1] * size
    parent = [-1] * size
    for i in range(size):
        for h in range(i):
            if length[h] + 1 > length[i] and all(
                s * (b - a) >= 0 for s, a, b in zip(signs, table[h], table[i])
            ):
                length[i] = length[h] + 1
                parent[i] = h
    end = max(range(size), key=lambda i: (length[i], -i))
    out = []
    while end != -1:
        out.append(end)
        end = parent[end]
    return out[::-1]


def monotone_subfamily(points: Sequence[BlockVector], n0: int) -> list[int]:
    """Order-preserving sub-family monotone in every coordinate of blocks 1..n0.

    With few coordinates every direction pattern is tried and the longest
    chain for each is found by dynamic programming, which gives a maximum
    sub-family.  Otherwise the coordinate-by-coordinate cascade is used.
    Returns 0-based indices.
    """
    if not points:
        raise ValueError("monotone_subfamily needs at least one point")
    if n0 < 1:
        raise ValueError("block range must start at 1 and include at least block 1")
    table = coordinate_table(points, n0)
    best = cascade(table)
    width = len(table[0])
    if width <= MAX_EXACT_COORDS:
        for signs in itertools.product((1, -1), repeat=width):
            chain = _longest_chain(table, signs)
            if len(chain) > len(best):
                best = chain
    for j in range(width):
        if not is_monotone([table[i][j] for i in best]):
            raise AssertionError("monotone extraction produced a non-monotone coordinate")
    return best
