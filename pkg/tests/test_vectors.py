from fractions import Fraction as F

import pytest

from normlab.spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily
from normlab.vectors import (
    FamilyMismatch,
    add,
    basis_vector,
    dense,
    make_vector,
    prefix,
    scale,
    sign_flip,
    splice,
    sub,
    tail,
    zero_vector,
)

G3 = SpaceFamily.growing_lp(3)


def test_normalization_strips_zero_blocks_and_sorts():
    x = make_vector(SCALAR_FAMILY, [(3, [1]), (1, [0]), (2, [F(1, 2)])])
    assert x.blocks == ((2, (F(1, 2),)), (3, (F(1),)))
    assert x.support_end == 3
    assert x.block(1) == (0,)
    assert x.is_exact and x.backend == "rational"


def test_validation():
    with pytest.raises(ValueError):
        make_vector(SCALAR_FAMILY, [(1, [1]), (1, [2])])
    with pytest.raises(ValueError):
        make_vector(G3, [(2, [1, 2, 3])])
    with pytest.raises(ValueError):
        make_vector(G3, [(0, [1])])


def test_arithmetic():
    x, y = dense([1, 2, 3]), dense([1, F(1, 2)])
    assert add(x, y) == dense([2, F(5, 2), 3])
    assert sub(x, x) == zero_vector()
    assert scale(F(1, 2), x) == dense([F(1, 2), 1, F(3, 2)])
    assert x - y == dense([0, F(3, 2), 3])
    assert -x == scale(-1, x)
    assert (2 * y).block(2) == (1,)
    with pytest.raises(FamilyMismatch):
        add(x, basis_vector(G3, 1))


def test_float_promotion():
    x = add(dense([1, 2]), dense([0.5]))
    assert x.backend == "float"


def test_projections_and_splice():
    x = dense([1, 2, 3, 4])
    assert prefix(x, 2) == dense([1, 2])
    assert tail(x, 2) == make_vector(SCALAR_FAMILY, [(3, [3]), (4, [4])])
    assert add(prefix(x, 2), tail(x, 2)) == x
    y = dense([9, 9, 9, 9, 9])
    assert splice(x, y, 2) == dense([1, 2, 9, 9, 9])
    assert prefix(x, 0).is_zero()


def test_sign_flip_and_basis():
    e = basis_vector(SpaceFamily.constant(ComponentSpec.sup(3)), 2, 1, F(1, 2))
    assert e.block(2) == (0, F(1, 2), 0)
    flipped = sign_flip(e, {2: (1, -1, 1)})
    assert flipped.block(2) == (0, F(-1, 2), 0)
    with pytest.raises(ValueError):
        sign_flip(e, {2: (1, 1)})
