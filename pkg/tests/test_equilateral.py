import itertools
import random
from fractions import Fraction as F

import pytest

from normlab.documents import equilateral_to_doc
from normlab.equilateral import (
    AnsatzViolation,
    SearchConfig,
    audit_sequence,
    anchor_family,
    estimate_limit,
    is_monotone,
    monotone_subfamily,
    rescale_to_unit,
    search_equilateral,
    verify_equilateral,
)
from normlab.equilateral.monotone import coordinate_table
from normlab.norm import norm
from normlab.spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily
from normlab.vectors import add, basis_vector, dense, make_vector, scale

from oracles import best_monotone_subset, straight_line_norm

SUP3 = SpaceFamily.constant(ComponentSpec.sup(3))


def basis(count, family=SCALAR_FAMILY):
    return [basis_vector(family, n) for n in range(1, count + 1)]


def test_l1_basis_is_equilateral():
    report = verify_equilateral(basis(10), norm_choice="l1-sum")
    assert report.spread == 0 and report.lambda_est == 2 and report.is_equilateral


def test_terenzi_basis_is_not():
    report = verify_equilateral(basis(3))
    assert report.spread == F(1, 6)
    assert not report.is_equilateral


def test_l1_four_points_with_antipode():
    fam = SpaceFamily.constant(ComponentSpec.lp(3, 1))
    e = [basis_vector(fam, 1, j) for j in range(3)]
    pts = e + [scale(-1, e[0])]
    report = verify_equilateral(pts)
    assert report.spread == 0 and report.is_equilateral
    # the same configuration spread over three scalar blocks, under the sum norm
    e = basis(3)
    report = verify_equilateral(e + [scale(-1, e[0])], norm_choice="l1-sum")
    assert report.spread == 0 and report.lambda_est == 2
    # {2e_1, 2e_2, 2e_3, 0} is not equilateral: distances 4 and 2
    naive = verify_equilateral([scale(2, v) for v in e] + [dense([0])], norm_choice="l1-sum")
    assert naive.spread == 2


def test_duplicates_are_never_equilateral():
    report = verify_equilateral([dense([1]), dense([1])])
    assert report.duplicate and not report.is_equilateral


def test_exact_equilateral_triangle_in_two_block_plane():
    # ||(1, 0)|| = ||(1/2, 3/4)|| = ||(-1/2, 3/4)|| = 1
    pts = [dense([0, 0]), dense([1, 0]), dense([F(1, 2), F(3, 4)])]
    report = verify_equilateral(pts)
    assert report.spread == 0 and report.lambda_est == 1


def test_grid_brute_force_finds_equilateral_triangle():
    # fix the first point at the origin; distances are then norms of differences
    grid = [F(i, 4) for i in range(-4, 5)]
    best = None
    for a, b, c, d in itertools.product(grid, repeat=4):
        if (a, b) == (0, 0) or (c, d) == (0, 0) or (a, b) == (c, d):
            continue
        dists = [
            straight_line_norm([abs(a), abs(b)]),
            straight_line_norm([abs(c), abs(d)]),
            straight_line_norm([abs(a - c), abs(b - d)]),
        ]
        rel = (max(dists) - min(dists)) / (sum(dists) / 3)
        if best is None or rel < best:
            best = rel
    assert best == 0


def test_search_is_deterministic_and_good():
    config = SearchConfig(seed=42, restarts=8)
    first, second = search_equilateral(config), search_equilateral(config)
    assert equilateral_to_doc(first) == equilateral_to_doc(second)
    assert first.spread <= 1e-6
    assert first.meta["config"]["seed"] == 42


def test_search_l1_four_points():
    report = search_equilateral(SearchConfig(N=3, K=4, norm_choice="l1-sum", seed=7, restarts=8))
    assert report.spread <= 1e-6 * report.lambda_est


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(K=1)
    with pytest.raises(ValueError):
        SearchConfig(norm_choice="l2")
    with pytest.raises(ValueError):
        SearchConfig(seed=-1)


def test_monotone_subfamily_against_exhaustive():
    rng = random.Random(11)
    fam = SpaceFamily.constant(ComponentSpec.sup(2))
    for _ in range(40):
        size = rng.randint(1, 9)
        pts = [make_vector(fam, [(1, [rng.randint(-3, 3), rng.randint(-3, 3)]), (2, [1, 0])]) for _ in range(size)]
        n0 = rng.choice((1, 2))
        picked = monotone_subfamily(pts, n0)
        table = coordinate_table(pts, n0)
        assert picked == sorted(picked)
        assert all(is_monotone([table[i][j] for i in picked]) for j in range(len(table[0])))
        assert len(picked) == best_monotone_subset(table)


def test_estimate_limit_and_rescaling():
    pts = [dense([1, F(1, m)]) for m in range(1, 5)]
    assert estimate_limit(pts) == dense([1, F(7, 24)])
    assert all(norm(p) == 1 for p in rescale_to_unit(pts))
    anchored = anchor_family(basis(3, SpaceFamily.constant(ComponentSpec.lp(1, 1))))
    assert len(anchored) == 2


def test_audit_rejects_rescaled_basis():
    with pytest.raises(AnsatzViolation) as info:
        audit_sequence(rescale_to_unit(basis(4)))
    assert info.value.kind == "distance"
    assert info.value.pair == (0, 1)
    assert info.value.value == F(9, 5)


def sup_family():
    x = make_vector(SUP3, [(1, [1, 0, 0])])
    return x, [add(x, make_vector(SUP3, [(1, [0, s * F(1, 2), t * F(1, 2)])])) for s, t in itertools.product((1, -1), repeat=2)]


def test_audit_passes_on_constructed_family():
    x, pts = sup_family()
    report = audit_sequence(pts, x)
    assert report.verified
    assert report.radii == [F(1, 2)] * 4
    assert report.limit_gap == F(1, 2)
    assert report.n0 == 1
    assert all(q.verified for q in report.inequalities)
    assert report.inequalities


def test_audit_estimates_limit():
    _, pts = sup_family()
    report = audit_sequence(pts)
    assert report.limit_estimated and report.verified


def test_audit_convergent_family_without_ansatz():
    x, u = dense([1, 0, 1]), dense([0, 1, 1])
    pts = [add(x, scale(F(1, m), u)) for m in range(1, 6)]
    report = audit_sequence(pts, x, require_ansatz=False)
    assert report.verified
    assert any(t.strict for t in report.pairs)
    assert report.certificate is not None


def test_audit_needs_three_points():
    with pytest.raises(ValueError):
        audit_sequence(basis(2), require_ansatz=False)


def test_monotone_examples():
    assert monotone_subfamily([dense([v]) for v in (1, 2, 3, 4)], 1) == [0, 1, 2, 3]
    picked = monotone_subfamily([dense([v]) for v in (1, 3, 2, 4)], 1)
    assert len(picked) == 3
    zigzag = [dense([a, b]) for a, b in ((1, 4), (2, 3), (3, 2), (4, 1))]
    assert monotone_subfamily(zigzag, 2) == [0, 1, 2, 3]
    alternating = [dense([a, b]) for a, b in ((1, 2), (2, 1), (3, 2), (4, 1))]
    assert len(monotone_subfamily(alternating, 2)) >= 2
    with pytest.raises(ValueError):
        monotone_subfamily([], 1)
