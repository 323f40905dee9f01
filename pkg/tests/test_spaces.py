import math
from fractions import Fraction as F

import pytest

from normlab.numeric import exact_root, format_scalar, parse_scalar
from normlab.spaces import (
    SCALAR_FAMILY,
    ComponentSpec,
    SpaceFamily,
    block_norm,
    component_at,
    unconditionality_check,
)


def test_parse_and_format_scalars():
    assert parse_scalar("1/2") == F(1, 2)
    assert parse_scalar("-6/4") == F(-3, 2)
    assert isinstance(parse_scalar("0.5"), float)
    assert format_scalar(F(6, 4)) == "3/2"
    assert format_scalar(F(4)) == "4"
    assert format_scalar(1 / 3) == "0.333333333333"
    with pytest.raises(ValueError):
        parse_scalar("nan")


def test_exact_root():
    assert exact_root(F(25, 4), 2) == F(5, 2)
    assert exact_root(F(27, 8), 3) == F(3, 2)
    assert exact_root(F(2), 2) is None
    assert exact_root(F(10**60), 3) == F(10**20)


def test_component_validation():
    with pytest.raises(ValueError):
        ComponentSpec("scalar-line", 2)
    with pytest.raises(ValueError):
        ComponentSpec.lp(3, F(1, 2))
    with pytest.raises(ValueError):
        ComponentSpec.lp(0, 2)
    with pytest.raises(ValueError):
        ComponentSpec("sup-space", 2, p=3)
    assert ComponentSpec.lp(2, 2.0).p == 2


def test_families():
    g = SpaceFamily.growing_lp(3)
    assert component_at(g, 4) == ComponentSpec.lp(4, 3)
    e = SpaceFamily.explicit([ComponentSpec.sup(2), ComponentSpec.scalar()])
    assert component_at(e, 1).kind == "sup-space"
    assert component_at(e, 9) == ComponentSpec.scalar()
    assert component_at(SCALAR_FAMILY, 100).dim == 1
    with pytest.raises(ValueError):
        component_at(g, 0)


def test_block_norms_exact_and_float():
    assert block_norm(ComponentSpec.scalar(), [F(-3, 2)]) == F(3, 2)
    assert block_norm(ComponentSpec.sup(3), [1, -4, 2]) == 4
    assert block_norm(ComponentSpec.lp(3, 1), [1, -4, F(1, 2)]) == F(11, 2)
    assert block_norm(ComponentSpec.lp(2, 2), [3, 4]) == 5
    irrational = block_norm(ComponentSpec.lp(2, 2), [1, 1])
    assert isinstance(irrational, float) and math.isclose(irrational, math.sqrt(2))
    assert math.isclose(block_norm(ComponentSpec.lp(2, 3), [1e200, 1e200]), 2 ** (1 / 3) * 1e200)
    with pytest.raises(ValueError):
        block_norm(ComponentSpec.lp(2, 2), [1])


@pytest.mark.parametrize("space", [ComponentSpec.lp(3, 3), ComponentSpec.sup(3), ComponentSpec.lp(3, 1)])
def test_unconditionality(space):
    assert unconditionality_check(space, [F(1, 3), -2, 0.75], [1, -1, -1])
    with pytest.raises(ValueError):
        unconditionality_check(space, [1, 2, 3], [1, 0, 1])
