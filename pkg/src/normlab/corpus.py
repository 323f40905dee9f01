"""Seeded random families and vectors for property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .norm import prefix_norms
from .spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily, block_norm, component_at
from .vectors import BlockVector, make_vector

DEFAULT_SEED = 57950

FAMILIES = (
    SCALAR_FAMILY,
    SpaceFamily.growing_lp(3),
    SpaceFamily.growing_lp(1),
    SpaceFamily.constant(ComponentSpec.sup(2)),
    SpaceFamily.constant(ComponentSpec.lp(3, 1)),
    SpaceFamily.explicit([ComponentSpec.lp(2, 2), ComponentSpec.sup(3), ComponentSpec.scalar()]),
)


def random_family(rng: random.Random) -> SpaceFamily:
    return rng.choice(FAMILIES)


def random_coord(rng: random.Random, exact: bool):
    if exact:
        return Fraction(rng.randint(-12, 12), rng.randint(1, 8))
    return rng.uniform(-3.0, 3.0)


def random_vector(
    rng: random.Random,
    family: SpaceFamily | None = None,
    max_support: int = 20,
    exact: bool | None = None,
    zero_prob: float = 0.3,
    tie_prob: float = 0.15,
) -> BlockVector:
    """A random finite-support vector.

    Some blocks are zero; with probability ``tie_prob`` one level is rescaled
    so that a_n / n equals the prefix norm exactly, which puts a tie in the
    recursion (only when the block norm scales exactly, i.e. rationally).
    """
    family = family or random_family(rng)
    exact = rng.random() < 0.6 if exact is None else exact
    support = rng.randint(1, max_support)
    blocks = []
    for n in range(1, support + 1):
        if n < support and rng.random() < zero_prob:
            continue
        dim = component_at(family, n).dim
        blocks.append((n, [random_coord(rng, exact) for _ in range(dim)]))
    x = make_vector(family, blocks)
    if support >= 2 and rng.random() < tie_prob:
        x = inject_tie(x, rng.randint(2, support)) or x
    return x


def inject_tie(x: BlockVector, level: int) -> BlockVector | None:
    """Rescale block ``level`` so that ||x_level|| / level = ||P_{level-1} x||."""
    head = prefix_norms(x, level - 1)[-1]
    if head == 0:
        return None
    coords = list(x.block(level))
    if all(c == 0 for c in coords):
        coords = [1] + [0] * (len(coords) - 1)
    current = block_norm(component_at(x.family, level), coords)
    target = level * head
    factor = target / current
    scaled = [factor * c for c in coords]
    if block_norm(component_at(x.family, level), scaled) != target:
        return None
    blocks = [(n, c) for n, c in x.blocks if n != level] + [(level, scaled)]
    return make_vector(x.family, blocks)


def random_sequence(rng: random.Random, exact: bool = True, max_support: int = 6):
    """(x, u, family): a limit and a perturbation direction of the same family."""
    family = random_family(rng)
    x = random_vector(rng, family, max_support, exact, tie_prob=0)
    u = random_vector(rng, family, max_support, exact, tie_prob=0)
    return x, u, family
