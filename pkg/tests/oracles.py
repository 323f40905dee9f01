"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import combinations


def straight_line_norm(a):
    """Plain loop over the block norms a_1, a_2, ... with no shared code."""
    a = [Fraction(v) for v in a]
    if not a:
        return Fraction(0)
    value = a[0]
    for n in range(2, len(a) + 1):
        t = a[n - 1]
        value = Fraction(n, n + 1) * (t + value) + Fraction(1, n + 1) * max(t / n, value)
    return value


def pattern_labels(a):
    """GE/LE/EQ per level 2.. computed from block norms via the oracle norm."""
    out = []
    for n in range(2, len(a) + 1):
        head = straight_line_norm(a[: n - 1])
        t = Fraction(a[n - 1]) / n
        out.append("GE" if head > t else "LE" if head < t else "EQ")
    return out


def compatible_set(patterns):
    for column in zip(*patterns):
        if "GE" in column and "LE" in column:
            return False
    return True


def best_common_subset(patterns, target):
    """Size of the largest subset whose patterns, with the target's, share a resolution."""
    for size in range(len(patterns), 0, -1):
        for subset in combinations(range(len(patterns)), size):
            if compatible_set([target] + [patterns[i] for i in subset]):
                return size
    return 0


def is_monotone(seq):
    return all(a <= b for a, b in zip(seq, seq[1:])) or all(a >= b for a, b in zip(seq, seq[1:]))


def best_monotone_subset(table):
    """Size of the largest order-preserving subset monotone in every column."""
    for size in range(len(table), 0, -1):
        for subset in combinations(range(len(table)), size):
            rows = [table[i] for i in subset]
            if all(is_monotone([r[j] for r in rows]) for j in range(len(table[0]))):
                return size
    return 0
