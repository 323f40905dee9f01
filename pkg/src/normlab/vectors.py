"""Finite-support block vectors x = (x_1, ..., x_m, 0, ...) over a space family."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .numeric import RATIONAL, Scalar, as_scalar, backend_of
from .spaces import SCALAR_FAMILY, SpaceFamily, block_norm, component_at

Block = tuple[int, tuple[Scalar, ...]]


class FamilyMismatch(ValueError):
    pass


@dataclass(frozen=True)
class BlockVector:
    """Sparse, canonical storage: strictly increasing indices, no zero blocks.

    Build instances with :func:`make_vector` (or the helpers below) rather than
    the constructor, which trusts its arguments.
    """

    family: SpaceFamily
    blocks: tuple[Block, ...] = ()

    @property
    def support_end(self) -> int:
        return self.blocks[-1][0] if self.blocks else 0

    @cached_property
    def _stored_norms(self) -> dict[int, Scalar]:
        # instances are immutable, so block norms are computed once
        return {n: block_norm(component_at(self.family, n), c) for n, c in self.blocks}

    @cached_property
    def backend(self) -> str:
        return backend_of(c for _, coords in self.blocks for c in coords)

    @property
    def is_exact(self) -> bool:
        return self.backend == RATIONAL

    def is_zero(self) -> bool:
        return not self.blocks

    def block(self, n: int) -> tuple[Scalar, ...]:
        """Coordinates of block n, zeros when the block is not stored."""
        for index, coords in self.blocks:
            if index == n:
                return coords
            if index > n:
                break
        return _zeros(self.family, n, self.is_exact)

    def block_norm(self, n: int) -> Scalar:
        return block_norm(component_at(self.family, n), self.block(n))

    def block_norms(self, upto: int | None = None) -> list[Scalar]:
        """[||x_1||_1, ..., ||x_upto||_upto], defaulting to the support end."""
        end = self.support_end if upto is None else upto
        exact = self.is_exact
        zero = _zero(exact)
        stored = self._stored_norms
        return [stored.get(n, zero) for n in range(1, end + 1)]

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __add__(self, other: "BlockVector") -> "BlockVector":
        return add(self, other)

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        return sub(self, other)

    def __neg__(self) -> "BlockVector":
        return scale(-1, self)

    def __rmul__(self, c) -> "BlockVector":
        return scale(c, self)

    def __repr__(self) -> str:
        if self.family == SCALAR_FAMILY:
            dense = [str(self.block(n)[0]) for n in range(1, self.support_end + 1)]
            return f"BlockVector(({', '.join(dense)}))"
        inner = ", ".join(f"{n}: ({', '.join(map(str, c))})" for n, c in self.blocks)
        return f"BlockVector({{{inner}}})"


def _zero(exact: bool) -> Scalar:
    return as_scalar(0) if exact else 0.0


def _zeros(family: SpaceFamily, n: int, exact: bool) -> tuple[Scalar, ...]:
    return (_zero(exact),) * component_at(family, n).dim


def _normalized(family: SpaceFamily, items: Iterable[tuple[int, Sequence]]) -> BlockVector:
    kept = []
    for n, coords in sorted(items, key=lambda item: item[0]):
        if any(c != 0 for c in coords):
            kept.append((n, tuple(coords)))
    return BlockVector(family, tuple(kept))


def make_vector(family: SpaceFamily, blocks: Iterable[tuple[int, Sequence]]) -> BlockVector:
    """Validate and normalize ``[(n, coords), ...]`` into a BlockVector."""
    seen = set()
    items = []
    for n, coords in blocks:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"block index must be a positive integer, got {n!r}")
        if n in seen:
            raise ValueError(f"duplicate block index {n}")
        seen.add(n)
        coords = tuple(as_scalar(c) for c in coords)
        dim = component_at(family, n).dim
        if len(coords) != dim:
            raise ValueError(f"block {n} has {len(coords)} coordinates, X_{n} has dim {dim}")
        items.append((n, coords))
    return _normalized(family, items)


def dense(values: Sequence, family: SpaceFamily = SCALAR_FAMILY) -> BlockVector:
    """Vector from consecutive blocks starting at index 1.

    Over the scalar family plain numbers are accepted: ``dense([1, 0, -1])``.
    """
    blocks = []
    for n, value in enumerate(values, start=1):
        coords = value if isinstance(value, (list, tuple)) else (value,)
        blocks.append((n, coords))
    return make_vector(family, blocks)


def basis_vector(family: SpaceFamily, n: int, j: int = 0, value=1) -> BlockVector:
    """value * e_j^n, the j-th (0-based) basis vector of block n."""
    coords = [0] * component_at(family, n).dim
    coords[j] = value
    return make_vector(family, [(n, coords)])


def zero_vector(family: SpaceFamily = SCALAR_FAMILY) -> BlockVector:
    return BlockVector(family, ())


def _check_family(x: BlockVector, y: BlockVector) -> None:
    if x.family != y.family:
        raise FamilyMismatch("vectors live over different space families")


def _combine(x: BlockVector, y: BlockVector, sign: int) -> BlockVector:
    _check_family(x, y)
    merged: dict[int, list] = {n: list(c) for n, c in x.blocks}
    for n, coords in y.blocks:
        if n in merged:
            merged[n] = [a + sign * b for a, b in zip(merged[n], coords)]
        else:
            merged[n] = [sign * b for b in coords]
    return _normalized(x.family, merged.items())


def add(x: BlockVector, y: BlockVector) -> BlockVector:
    return _combine(x, y, 1)


def sub(x: BlockVector, y: BlockVector) -> BlockVector:
    return _combine(x, y, -1)


def scale(c, x: BlockVector) -> BlockVector:
    c = as_scalar(c)
    return _normalized(x.family, ((n, [c * a for a in coords]) for n, coords in x.blocks))


def prefix(x: BlockVector, m: int) -> BlockVector:
    """The projection P_m: keep blocks 1..m."""
    if m < 0:
        raise ValueError("prefix length must be >= 0")
    return BlockVector(x.family, tuple(b for b in x.blocks if b[0] <= m))


def tail(x: BlockVector, m: int) -> BlockVector:
    """Blocks with index > m (the complement of :func:`prefix`)."""
    return BlockVector(x.family, tuple(b for b in x.blocks if b[0] > m))


def splice(head: BlockVector, rest: BlockVector, m: int) -> BlockVector:
    """Blocks 1..m of ``head`` followed by blocks m+1.. of ``rest``."""
    _check_family(head, rest)
    return BlockVector(head.family, prefix(head, m).blocks + tail(rest, m).blocks)


def sign_flip(x: BlockVector, signs: Mapping[int, Sequence[int]]) -> BlockVector:
    """Multiply coordinates by signs; ``signs[n]`` covers block n, missing blocks keep +1."""
    items = []
    for n, coords in x.blocks:
        eps = signs.get(n, (1,) * len(coords))
        if len(eps) != len(coords) or any(e not in (1, -1) for e in eps):
            raise ValueError(f"bad sign pattern for block {n}")
        items.append((n, [e * a for e, a in zip(eps, coords)]))
    return _normalized(x.family, items)


def to_float(x: BlockVector) -> BlockVector:
    return BlockVector(x.family, tuple((n, tuple(float(a) for a in c)) for n, c in x.blocks))
