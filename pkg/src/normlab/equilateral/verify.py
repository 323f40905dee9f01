from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..norm import distance_matrix
from ..numeric import Scalar, is_exact
from ..vectors import BlockVector, FamilyMismatch

DEFAULT_TOL = 1e-9


@dataclass
class EquilateralReport:
    points: list[BlockVector]
    distances: list[list[Scalar]]
    lambda_est: Scalar
    spread: Scalar
    is_equilateral: bool
    tol: float
    norm_choice: str = "terenzi"
    duplicate: bool = False
    meta: dict = field(default_factory=dict)


def spread_stats(matrix: Sequence[Sequence[Scalar]]) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """(mean, min, max, spread) over the strict upper triangle."""
    values = [matrix[i][j] for i in range(len(matrix)) for j in range(i + 1, len(matrix))]
    if not values:
        raise ValueError("need at least two points")
    total = values[0] * 0
    for v in values:
        total = total + v
    mean = total / len(values) if not is_exact(total) else Fraction(total) / len(values)
    lo, hi = min(values), max(values)
    return mean, lo, hi, hi - lo


def verify_equilateral(
    points: Sequence[BlockVector], tol: float = DEFAULT_TOL, norm_choice: str = "terenzi"
) -> EquilateralReport:
    """Pairwise distances, their mean and spread, and the equilateral verdict.

    The set counts as equilateral when spread <= tol * mean distance.  A zero
    distance marks a duplicate point and the set is never equilateral then.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError("need at least two points")
    if len({p.family for p in points}) != 1:
        raise FamilyMismatch("points live over different space families")
    matrix = distance_matrix(points, norm_choice)
    mean, lo, _, spread = spread_stats(matrix)
    duplicate = lo == 0
    ok = not duplicate and spread <= tol * mean
    return EquilateralReport(points, matrix, mean, spread, ok, tol, norm_choice, duplicate)
