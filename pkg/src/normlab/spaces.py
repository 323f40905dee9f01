"""Finite-dimensional component spaces and the families built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .numeric import Scalar, as_scalar, close, exact_root, is_exact

SCALAR_LINE = "scalar-line"
LP_SPACE = "lp-space"
SUP_SPACE = "sup-space"
KINDS = (SCALAR_LINE, LP_SPACE, SUP_SPACE)

Exponent = Union[int, Fraction, float]


@dataclass(frozen=True)
class ComponentSpec:
    """One component space X_n with the standard coordinate basis.

    ``p`` is only meaningful for ``lp-space``; ``sup-space`` plays the role of
    p = infinity.
    """

    kind: str
    dim: int = 1
    p: Exponent | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if self.kind == SCALAR_LINE and self.dim != 1:
            raise ValueError("scalar-line has dim 1")
        if self.kind == LP_SPACE:
            if self.p is None:
                raise ValueError("lp-space needs an exponent p")
            if isinstance(self.p, float) and not math.isfinite(self.p):
                raise ValueError("use sup-space for p = infinity")
            if self.p < 1:
                raise ValueError(f"p must be >= 1, got {self.p!r}")
            if isinstance(self.p, float) and self.p.is_integer():
                object.__setattr__(self, "p", int(self.p))
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no exponent")

    @classmethod
    def scalar(cls) -> "ComponentSpec":
        return cls(SCALAR_LINE, 1)

    @classmethod
    def lp(cls, dim: int, p: Exponent) -> "ComponentSpec":
        return cls(LP_SPACE, dim, p)

    @classmethod
    def sup(cls, dim: int) -> "ComponentSpec":
        return cls(SUP_SPACE, dim)

    def describe(self) -> str:
        if self.kind == LP_SPACE:
            return f"l_{self.p}^{self.dim}"
        if self.kind == SUP_SPACE:
            return f"l_inf^{self.dim}"
        return "R"


CONSTANT = "constant"
GROWING_LP = "growing-lp"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class SpaceFamily:
    """A rule assigning a component space to every index n >= 1."""

    rule: str
    space: ComponentSpec | None = None
    p: Exponent | None = None
    spaces: tuple[ComponentSpec, ...] = ()

    def __post_init__(self):
        if self.rule == CONSTANT:
            if self.space is None:
                raise ValueError("constant family needs a space")
        elif self.rule == GROWING_LP:
            if self.p is None or self.p < 1:
                raise ValueError("growing-lp family needs p >= 1")
            ComponentSpec.lp(1, self.p)  # validates p
        elif self.rule == EXPLICIT:
            if not self.spaces:
                raise ValueError("explicit family needs at least one space")
            object.__setattr__(self, "spaces", tuple(self.spaces))
        else:
            raise ValueError(f"unknown family rule {self.rule!r}")

    @classmethod
    def constant(cls, space: ComponentSpec) -> "SpaceFamily":
        return cls(CONSTANT, space=space)

    @classmethod
    def growing_lp(cls, p: Exponent) -> "SpaceFamily":
        return cls(GROWING_LP, p=p)

    @classmethod
    def explicit(cls, spaces: Sequence[ComponentSpec]) -> "SpaceFamily":
        return cls(EXPLICIT, spaces=tuple(spaces))

    def __getitem__(self, n: int) -> ComponentSpec:
        return component_at(self, n)

    def dim(self, n: int) -> int:
        return component_at(self, n).dim


SCALAR_FAMILY = SpaceFamily.constant(ComponentSpec.scalar())


def component_at(family: SpaceFamily, n: int) -> ComponentSpec:
    """The component space X_n of ``family`` (indices start at 1)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"component index must be >= 1, got {n!r}")
    if family.rule == CONSTANT:
        return family.space
    if family.rule == GROWING_LP:
        return ComponentSpec.lp(n, family.p)
    return family.spaces[min(n, len(family.spaces)) - 1]


def block_norm(space: ComponentSpec, coords: Sequence) -> Scalar:
    """Norm of one block in its component space.

    Exact whenever the coordinates are rational and the norm is a rational
    function of them (scalar line, l_1, l_inf, or an l_p norm whose p-th root
    happens to be rational).  Otherwise a float.
    """
    if len(coords) != space.dim:
        raise ValueError(f"block of length {len(coords)} does not fit {space.describe()}")
    values = [abs(as_scalar(c)) for c in coords]
    if space.kind == SCALAR_LINE:
        return values[0]
    if space.kind == SUP_SPACE:
        return max(values)
    p = space.p
    if p == 1:
        return sum(values, Fraction(0)) if all(is_exact(v) for v in values) else math.fsum(float(v) for v in values)
    if isinstance(p, int) and all(is_exact(v) for v in values):
        root = exact_root(sum((v ** p for v in values), Fraction(0)), p)
        if root is not None:
            return root
    return _float_lp(values, float(p))


def _float_lp(values, p: float) -> float:
    floats = [float(v) for v in values]
    top = max(floats)
    if top == 0.0:
        return 0.0
    # scale by the largest entry to keep |a|^p in range
    return top * math.fsum((v / top) ** p for v in floats) ** (1.0 / p)


def unconditionality_check(space: ComponentSpec, coords: Sequence, signs: Sequence[int]) -> bool:
    """Does flipping coordinate signs leave the block norm unchanged?"""
    if len(signs) != space.dim or len(coords) != space.dim:
        raise ValueError("coords and signs must both have length dim")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    flipped = [s * as_scalar(c) for s, c in zip(signs, coords)]
    return close(block_norm(space, flipped), block_norm(space, coords), 1e-12)
