"""Evaluation of the inductive renorming of c_00((X_n)) and the l_1-sum norm.

For x = (x_1, ..., x_m) with a_n = ||x_n||_n the norm is the last term of

    N_1 = a_1
    N_n = (1 - 1/(n+1)) (a_n + N_{n-1}) + 1/(n+1) max(a_n / n, N_{n-1}),  n >= 2

Only block norms enter the recursion, so the whole evaluation is a single
forward pass over 1..support_end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numeric import FLOAT, RATIONAL, Scalar, apply_backend, is_exact, leq, reciprocal, weight
from .vectors import BlockVector, sub


@dataclass(frozen=True)
class NormValue:
    value: Scalar
    backend: str

    def __float__(self) -> float:
        return float(self.value)


def _value(values: list) -> NormValue:
    return NormValue(values[-1], RATIONAL if is_exact(values[-1]) else FLOAT)


def _block_norms(x: BlockVector, upto: int | None = None) -> list[Scalar]:
    return apply_backend(x.block_norms(upto))


def prefix_norms_from(block_norms: Sequence[Scalar]) -> list[Scalar]:
    """[N_1, ..., N_m] for the given block norms (empty input gives [])."""
    out: list[Scalar] = []
    exact = all(is_exact(a) for a in block_norms)
    for n, a in enumerate(block_norms, start=1):
        if n == 1:
            prev = a
        elif exact:
            # same value as the float branch, with fewer Fraction operations
            prev = (n * (a + prev) + max(a / n, prev)) / (n + 1)
        else:
            prev = weight(n, exact) * (a + prev) + reciprocal(n + 1, exact) * max(a * reciprocal(n, exact), prev)
        out.append(prev)
    return out


def prefix_norms(x: BlockVector, upto: int | None = None) -> list[Scalar]:
    """||P_n x|| for n = 1..upto (default support_end)."""
    return prefix_norms_from(_block_norms(x, upto))


def _zero(x: BlockVector) -> Scalar:
    return apply_backend([Fraction(0) if x.is_exact else 0.0])[0]


def terenzi_norm(x: BlockVector) -> NormValue:
    if x.is_zero():
        zero = _zero(x)
        return NormValue(zero, RATIONAL if is_exact(zero) else FLOAT)
    return _value(prefix_norms(x))


def norm(x: BlockVector) -> Scalar:
    """Shorthand for ``terenzi_norm(x).value``."""
    return terenzi_norm(x).value


def l1_sum_norm(x: BlockVector) -> NormValue:
    """The norm of Z = (sum X_n)_1: the plain sum of block norms."""
    total = _zero(x)
    for a in _block_norms(x):
        total = total + a
    return NormValue(total, RATIONAL if is_exact(total) else FLOAT)


def sandwich_bounds(x: BlockVector) -> tuple[Scalar, Scalar]:
    """(sum (1 - 1/(n+1)) a_n, sum a_n), which bracket terenzi_norm(x)."""
    lower = upper = _zero(x)
    for n, a in enumerate(_block_norms(x), start=1):
        lower = lower + weight(n, is_exact(a)) * a
        upper = upper + a
    return lower, upper


def strict_lower_check(x: BlockVector) -> bool:
    """Strict lower bound: nonzero vectors beat the weighted sum strictly."""
    if x.is_zero():
        return True
    lower, upper = sandwich_bounds(x)
    value = norm(x)
    if is_exact(value) and is_exact(lower):
        return value > lower
    return float(value) - float(lower) > 1e-12 * float(upper)


def isomorphism_check(x: BlockVector, rel: float = 1e-12) -> bool:
    """(1/2) ||x||_Z <= ||x|| <= ||x||_Z."""
    z = l1_sum_norm(x).value
    value = norm(x)
    return leq(z / 2, value, rel) and leq(value, z, rel)


def distance(x: BlockVector, y: BlockVector) -> NormValue:
    return terenzi_norm(sub(x, y))


def l1_distance(x: BlockVector, y: BlockVector) -> NormValue:
    return l1_sum_norm(sub(x, y))


NORMS = {"terenzi": terenzi_norm, "l1-sum": l1_sum_norm}


def distance_matrix(points: Sequence[BlockVector], norm_choice: str = "terenzi") -> list[list[Scalar]]:
    """Symmetric matrix of pairwise distances with an exact zero diagonal.

    Entries are computed once per unordered pair in row-major order, so the
    result does not depend on any evaluation schedule.
    """
    evaluate = NORMS[norm_choice]
    size = len(points)
    zero = apply_backend([Fraction(0) if all(p.is_exact for p in points) else 0.0])[0]
    matrix = [[zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            d = evaluate(sub(points[i], points[j])).value
            matrix[i][j] = matrix[j][i] = d
    return matrix
