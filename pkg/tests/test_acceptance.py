"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import json
import random
import time
from fractions import Fraction as F

import pytest

from normlab import corpus
from normlab.cli import main, worked_example
from normlab.documents import equilateral_to_doc
from normlab.equilateral import AnsatzViolation, SearchConfig, audit_sequence, rescale_to_unit, search_equilateral, verify_equilateral
from normlab.norm import isomorphism_check, strict_lower_check, terenzi_norm
from normlab.properties import (
    _prefix_monotone,
    _random_signs,
    _reconstruction,
    _sandwich,
    _tail_ok,
    _tail_rejects,
    _unconditional,
    pointwise_family,
    pointwise_limit_check,
    tail_family,
)
from normlab.representation import branch_pattern, select_common_pattern
from normlab.spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily
from normlab.vectors import add, basis_vector, dense, make_vector

from oracles import best_common_subset, compatible_set, straight_line_norm

CORPUS_SIZE = 10_000


@pytest.fixture(scope="module")
def vectors():
    rng = random.Random(corpus.DEFAULT_SEED)
    out = [corpus.random_vector(rng) for _ in range(CORPUS_SIZE)]
    assert any(x.family == SpaceFamily.growing_lp(3) for x in out)
    assert any(x.is_exact for x in out) and any(not x.is_exact for x in out)
    return out


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def test_01_golden_recursion_values(criterion):
    cases = {(1, 1): F(5, 3), (1, 4): F(4), (0, 1): F(5, 6), (1, 0, -1): F(7, 4), (0, 1, -1): F(19, 12)}

    def check():
        ok = True
        for coords, expected in cases.items():
            value = terenzi_norm(dense(list(coords)))
            ok &= value.value == expected and value.backend == "rational"
            ok &= straight_line_norm([abs(c) for c in coords]) == expected
        return ok

    ok, elapsed = timed(check)
    ok = ok and elapsed < 1
    criterion(1, "golden recursion values", ok, elapsed, 1)
    assert ok


def test_02_worked_example(criterion, capsys):
    def check():
        doc, matches = worked_example()
        code = main(["example"])
        printed = json.loads(capsys.readouterr().out)
        return (
            matches
            and code == 0
            and printed == doc
            and doc["norm"] == "7/6"
            and doc["representations"]["prefix"]["d"] == ["1", "2/3"]
            and doc["representations"]["tail"]["d"] == ["2/3", "5/6"]
            and doc["same_representation"] == {"x~y": True, "x~z": True, "y~z": False}
        )

    ok, elapsed = timed(check)
    ok = ok and elapsed < 1
    criterion(2, "worked example via the example verb", ok, elapsed, 1)
    assert ok


def test_03_04_sandwich_and_strict_lower(criterion, vectors):
    sandwich, t3 = timed(lambda: all(_sandwich(x) for x in vectors))
    strict, t4 = timed(lambda: all(strict_lower_check(x) for x in vectors if not x.is_zero()))
    ok3 = sandwich and t3 + t4 < 30
    criterion(3, f"sandwich bounds on {len(vectors)} vectors", ok3, t3, 30)
    ok4 = strict and t3 + t4 < 30
    criterion(4, "strict lower bound on nonzero corpus vectors", ok4, t4)
    assert ok3 and ok4


def test_05_reconstruction(criterion, vectors):
    ok, elapsed = timed(lambda: all(_reconstruction(x) for x in vectors))
    ok = ok and elapsed < 30
    criterion(5, "representation reconstruction, both tie choices", ok, elapsed, 30)
    assert ok


def test_06_tail_formula(criterion):
    def check():
        rng = random.Random(corpus.DEFAULT_SEED + 6)
        good = all(_tail_ok(*tail_family(rng, True, i % 3 != 0)) for i in range(1000))
        bad = all(_tail_rejects(*tail_family(rng, False, i % 3 != 0)) for i in range(1000))
        return good and bad

    ok, elapsed = timed(check)
    ok = ok and elapsed < 10
    criterion(6, "tail formula: 1000 satisfying, 1000 violating", ok, elapsed, 10)
    assert ok


def test_07_unconditional_and_prefix_monotone(criterion, vectors):
    def check():
        rng = random.Random(corpus.DEFAULT_SEED + 7)
        return all(_unconditional(x, _random_signs(rng, x)) and _prefix_monotone(x) for x in vectors)

    ok, elapsed = timed(check)
    ok = ok and elapsed < 10
    criterion(7, "sign-flip invariance and monotone prefixes", ok, elapsed, 10)
    assert ok


def test_08_two_isomorphism(criterion, vectors):
    ok, elapsed = timed(lambda: all(isomorphism_check(x) for x in vectors))
    ok = ok and elapsed < 5
    criterion(8, "(1/2)||x||_Z <= ||x|| <= ||x||_Z", ok, elapsed, 5)
    assert ok


def test_09_pointwise_limit(criterion):
    def check():
        rng = random.Random(corpus.DEFAULT_SEED + 9)
        return all(pointwise_limit_check(*pointwise_family(rng, i % 4 != 0)) for i in range(200))

    ok, elapsed = timed(check)
    ok = ok and elapsed < 5
    criterion(9, "pointwise-limit bound on 200 families", ok, elapsed, 5)
    assert ok


def _selection_cases(rng):
    for size in range(1, 13):
        for _ in range(12):
            limit = corpus.random_vector(rng, SCALAR_FAMILY, 6, True, tie_prob=0.8)
            while limit.is_zero():
                limit = corpus.random_vector(rng, SCALAR_FAMILY, 6, True, tie_prob=0.8)
            pts = []
            while len(pts) < size:
                p = corpus.random_vector(rng, SCALAR_FAMILY, 6, True, tie_prob=0.6)
                if not p.is_zero():
                    pts.append(p)
            yield pts, limit


def test_10_pigeonhole_selection(criterion):
    depth = 6

    def check():
        rng = random.Random(corpus.DEFAULT_SEED + 10)
        ok = True
        for pts, limit in _selection_cases(rng):
            chosen = select_common_pattern(pts, limit, depth)
            labels = [branch_pattern(p, depth).labels() for p in pts]
            target = branch_pattern(limit, depth).labels()
            ok &= compatible_set([target] + [labels[i] for i in chosen])
            ok &= len(chosen) == best_common_subset(labels, target)
        return ok

    ok, elapsed = timed(check)
    ok = ok and elapsed < 30
    criterion(10, "selection matches exhaustive maxima, sizes 1..12", ok, elapsed, 30)
    assert ok


def test_11_equilateral_contrast(criterion):
    def check():
        l1 = verify_equilateral([basis_vector(SCALAR_FAMILY, n) for n in range(1, 11)], norm_choice="l1-sum")
        ter = verify_equilateral([basis_vector(SCALAR_FAMILY, n) for n in range(1, 4)])
        d = ter.distances
        return l1.spread == 0 and ter.spread == F(1, 6) and (d[0][1], d[0][2], d[1][2]) == (F(5, 3), F(7, 4), F(19, 12))

    ok, elapsed = timed(check)
    ok = ok and elapsed < 1
    criterion(11, "l1-sum basis spread 0, 3-point basis spread 1/6", ok, elapsed, 1)
    assert ok


def test_12_search_sanity(criterion):
    def check():
        config = SearchConfig(family=SCALAR_FAMILY, N=2, K=3, norm_choice="terenzi", seed=42)
        first = search_equilateral(config)
        second = search_equilateral(config)
        same = json.dumps(equilateral_to_doc(first)) == json.dumps(equilateral_to_doc(second))
        return first.spread <= 1e-6 and same

    ok, elapsed = timed(check)
    ok = ok and elapsed < 60
    criterion(12, "search reaches spread <= 1e-6, byte-identical rerun", ok, elapsed, 60)
    assert ok


def test_13_audit_self_verification(criterion):
    def check():
        try:
            audit_sequence(rescale_to_unit([basis_vector(SCALAR_FAMILY, n) for n in range(1, 5)]))
            rejected = False
        except AnsatzViolation as exc:
            rejected = exc.pair == (0, 1) and exc.kind == "distance"
        sup3 = SpaceFamily.constant(ComponentSpec.sup(3))
        x = make_vector(sup3, [(1, [1, 0, 0])])
        pts = [add(x, make_vector(sup3, [(1, [0, s, t])])) for s in (F(1, 2), F(-1, 2)) for t in (F(1, 2), F(-1, 2))]
        report = audit_sequence(pts, x)
        again = all(q.reverify() for q in report.inequalities)
        return rejected and report.verified and again and len(report.inequalities) > 0

    ok, elapsed = timed(check)
    ok = ok and elapsed < 10
    criterion(13, "audit rejects the rescaled basis, verifies a passing family", ok, elapsed, 10)
    assert ok
