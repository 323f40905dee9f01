"""Randomized invariant suites behind the ``props`` command."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import corpus
from .norm import isomorphism_check, l1_sum_norm, norm, prefix_norms, sandwich_bounds, strict_lower_check
from .numeric import close, is_exact, leq, weight
from .representation import HypothesisFailed, extract_representation, tail_formula_check
from .spaces import block_norm, component_at
from .vectors import BlockVector, add, make_vector, prefix, scale, sign_flip, sub

REL = 1e-10


def _sandwich(x: BlockVector) -> bool:
    lower, upper = sandwich_bounds(x)
    value = norm(x)
    return leq(lower, value, REL) and leq(value, upper, REL) and leq(upper / 2, lower, REL)


def _reconstruction(x: BlockVector) -> bool:
    if x.is_zero():
        return True
    value = norm(x)
    norms = x.block_norms()
    for choice in ("prefix", "tail"):
        rep = extract_representation(x, choice)
        if not close(rep.reconstruct(norms), value, REL):
            return False
        if not all(0 < d <= 1 for d in rep.coefficients):
            return False
        k = rep.stabilization_index
        exact = is_exact(value)
        if any(rep.coefficient(n) != weight(n, exact) for n in range(k, rep.horizon + 3)):
            return False
    return True


def _random_signs(rng: random.Random, x: BlockVector) -> dict:
    return {n: tuple(rng.choice((1, -1)) for _ in c) for n, c in x.blocks}


def _unconditional(x: BlockVector, signs: dict) -> bool:
    flipped = sign_flip(x, signs)
    blocks_ok = flipped.block_norms() == x.block_norms()
    return blocks_ok and norm(flipped) == norm(x) and l1_sum_norm(flipped).value == l1_sum_norm(x).value


def _prefix_monotone(x: BlockVector) -> bool:
    # prefix_norms[m - 1] is ||P_m x||; spot-check that against a truncation
    values = [norm(prefix(x, 0))] + prefix_norms(x, x.support_end + 1)
    m = (x.support_end + 1) // 2
    # floats may lose an ulp across a zero block, since n/(n+1) + 1/(n+1) rounds
    return close(values[m], norm(prefix(x, m)), REL) and all(leq(a, b, REL) for a, b in zip(values, values[1:]))


def _homogeneous(x: BlockVector, c) -> bool:
    return close(norm(scale(c, x)), abs(c) * norm(x), REL)


def _triangle(x: BlockVector, y: BlockVector) -> bool:
    return leq(norm(add(x, y)), norm(x) + norm(y), REL)


def tail_family(rng: random.Random, satisfy: bool, exact: bool = True):
    """(x, k, c) built to satisfy, or to violate, the tail-formula hypothesis."""
    family = corpus.random_family(rng)
    k = rng.randint(1, 6)
    head = corpus.random_vector(rng, family, k, exact, zero_prob=0.2, tie_prob=0)
    while head.is_zero() or head.support_end > k:
        head = corpus.random_vector(rng, family, k, exact, zero_prob=0.2, tie_prob=0)
    c_head = prefix_norms(head, k)[-1]
    c = c_head * Fraction(rng.randint(1, 4), 4) if is_exact(c_head) else c_head * rng.uniform(0.25, 1.0)
    blocks = list(head.blocks)
    end = k + rng.randint(1, 8)
    bad_level = rng.randint(k + 1, end)
    for n in range(k + 1, end + 1):
        coords = [corpus.random_coord(rng, exact) for _ in range(component_at(family, n).dim)]
        if all(v == 0 for v in coords):
            coords[0] = 1 if exact else 1.0
        a = block_norm(component_at(family, n), coords)
        if satisfy or n != bad_level:
            frac = Fraction(rng.randint(0, 15), 16) if exact else rng.uniform(0.0, 0.95)
            target = n * c * frac
        else:
            frac = Fraction(rng.randint(17, 40), 16) if exact else rng.uniform(1.05, 2.5)
            target = n * c * frac
        coords = [v * target / a for v in coords]
        blocks.append((n, coords))
    x = make_vector(family, blocks)
    if not satisfy and rng.random() < 0.25:
        # violate the other half of the hypothesis instead
        return head_violation(x, k, c_head)
    return x, k, c


def head_violation(x, k, c_head):
    return x, k, c_head * 2 if is_exact(c_head) else c_head * 2.0


def _tail_ok(x, k, c) -> bool:
    try:
        return tail_formula_check(x, k, c) is True
    except HypothesisFailed:
        return False


def _tail_rejects(x, k, c) -> bool:
    try:
        tail_formula_check(x, k, c)
    except HypothesisFailed:
        return True
    return False


def pointwise_family(rng: random.Random, exact: bool = True):
    """(x, u) scaled so that ||x + t u|| <= 1 for every t in [0, 1].

    The norm is convex along the segment, so dividing by the larger endpoint
    norm bounds every x_m = x + u/m, m >= 1, by 1.
    """
    x, u, _ = corpus.random_sequence(rng, exact)
    while x.is_zero():
        x, u, _ = corpus.random_sequence(rng, exact)
    s = max(norm(x), norm(add(x, u)))
    return scale(1 / s, x), scale(1 / s, u)


def pointwise_limit_check(x: BlockVector, u: BlockVector, members: int = 40) -> bool:
    """Given members with norm <= 1 converging blockwise to x: is ||x|| <= 1?

    Also checks the quantitative estimate ||P_k x|| <= ||x_m|| + sum_{n<=k}
    ||x_mn - x_n||_n for every member and cut k, which is how the bound is
    obtained.
    """
    end = max(x.support_end, u.support_end, 1)
    for m in range(1, members + 1):
        xm = add(x, scale(Fraction(1, m) if x.is_exact and u.is_exact else 1.0 / m, u))
        norm_m = norm(xm)
        if not leq(norm_m, 1, REL):
            return False
        diff = sub(xm, x).block_norms(end)
        heads = prefix_norms(x, end)
        running = 0
        for k in range(1, end + 1):
            running = running + diff[k - 1]
            if not leq(heads[k - 1], norm_m + running, REL):
                return False
    return leq(norm(x), 1, REL)


@dataclass
class Suite:
    name: str
    generate: Callable[[random.Random], tuple]
    check: Callable[..., bool]


def _one(rng):
    return (corpus.random_vector(rng),)


def _neg_scale(rng):
    x = corpus.random_vector(rng)
    c = Fraction(rng.randint(-9, 9), rng.randint(1, 5)) if x.is_exact else rng.uniform(-3, 3)
    return x, c


def _pair(rng):
    family = corpus.random_family(rng)
    exact = rng.random() < 0.6
    return corpus.random_vector(rng, family, exact=exact), corpus.random_vector(rng, family, exact=exact)


def _signed(rng):
    x = corpus.random_vector(rng)
    return x, _random_signs(rng, x)


SUITES = [
    Suite("sandwich", _one, _sandwich),
    Suite("strict-lower", _one, strict_lower_check),
    Suite("isomorphism", _one, isomorphism_check),
    Suite("reconstruction", _one, _reconstruction),
    Suite("unconditional", _signed, _unconditional),
    Suite("prefix-monotone", _one, _prefix_monotone),
    Suite("homogeneity", _neg_scale, _homogeneous),
    Suite("triangle", _pair, _triangle),
    Suite("tail-formula", lambda rng: tail_family(rng, True, rng.random() < 0.7), _tail_ok),
    Suite("tail-hypothesis", lambda rng: tail_family(rng, False, rng.random() < 0.7), _tail_rejects),
    Suite("pointwise-limit", lambda rng: pointwise_family(rng, rng.random() < 0.7), pointwise_limit_check),
]


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    reproduction: tuple | None = None


@dataclass
class PropsRun:
    seed: int
    count: int
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results)

    def transcript(self) -> str:
        lines = [f"seed {self.seed}, {self.count} cases per suite"]
        for r in self.results:
            status = "PASS" if r.failed == 0 else "FAIL"
            lines.append(f"{status} {r.name}: {r.passed} passed, {r.failed} failed")
        return "\n".join(lines)


def shrink(check: Callable[..., bool], args: tuple) -> tuple:
    """Drop blocks from the vector arguments while the check keeps failing."""
    args = list(args)
    changed = True
    while changed:
        changed = False
        for i, arg in enumerate(args):
            if not isinstance(arg, BlockVector):
                continue
            if len(arg.blocks) <= 1:
                continue
            for n, _ in arg.blocks:
                smaller = BlockVector(arg.family, tuple(b for b in arg.blocks if b[0] != n))
                trial = args[:i] + [smaller] + args[i + 1:]
                try:
                    still_fails = not check(*trial)
                except Exception:
                    still_fails = False
                if still_fails:
                    args = trial
                    changed = True
                    break
    return tuple(args)


def run_suites(seed: int = corpus.DEFAULT_SEED, count: int = 200, names=None) -> PropsRun:
    run = PropsRun(seed, count)
    for index, suite in enumerate(SUITES):
        if names and suite.name not in names:
            continue
        rng = random.Random(seed * 1009 + index)
        result = SuiteResult(suite.name)
        for _ in range(count):
            args = suite.generate(rng)
            try:
                ok = bool(suite.check(*args))
            except Exception:
                ok = False
            if ok:
                result.passed += 1
            else:
                result.failed += 1
                if result.reproduction is None:
                    result.reproduction = shrink(suite.check, args)
        run.results.append(result)
    return run
