"""Coefficient representations ||x|| = sum d_n ||x_n||_n and branch structure.

At every level n >= 2 the recursion takes ``max(a_n / n, N_{n-1})``.  Resolving
that max one way or the other fixes how the coefficients are updated:

* tail dominates (a_n / n wins): every earlier d scales by n/(n+1) and
  d_n = n/(n+1) + 1/(n(n+1));
* prefix dominates: earlier d stay put and d_n = n/(n+1).

The coefficient sequence therefore depends only on the resolved choice at each
level, which is what makes the "same representation" relation decidable by
comparing branch patterns.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence, Union

from .norm import NormValue, _block_norms, prefix_norms_from, terenzi_norm
from .numeric import FLOAT, RATIONAL, Scalar, close, is_exact, leq, reciprocal, weight
from .vectors import BlockVector, FamilyMismatch

TIE_REL = 1e-9


class Relation(str, Enum):
    TAIL = "tail"
    PREFIX = "prefix"
    TIE = "tie"


class Cmp(str, Enum):
    """Comparison of ||P_{n-1} x|| against a_n / n at one level."""

    GE = "GE"  # prefix strictly larger
    LE = "LE"  # tail term strictly larger
    EQ = "EQ"  # tie, compatible with either side


_CMP_OF = {Relation.PREFIX: Cmp.GE, Relation.TAIL: Cmp.LE, Relation.TIE: Cmp.EQ}

TieChoice = Union[str, Relation]


class ZeroVectorError(ValueError):
    """The zero vector has no representation."""


class HypothesisFailed(ValueError):
    """The tail-formula hypothesis does not hold; no equality verdict is given."""

    def __init__(self, level: int, message: str):
        super().__init__(message)
        self.level = level


@dataclass(frozen=True)
class BranchRecord:
    level: int
    relation: Relation
    tail_term: Scalar  # a_n / n
    prefix_norm: Scalar  # ||P_{n-1} x||
    resolved: Relation = Relation.PREFIX

    @property
    def cmp(self) -> Cmp:
        return _CMP_OF[self.relation]


@dataclass(frozen=True)
class Representation:
    coefficients: tuple[Scalar, ...]
    branches: tuple[BranchRecord, ...]
    stabilization_index: int
    norm: NormValue
    tie_choice: Relation = Relation.PREFIX

    @property
    def horizon(self) -> int:
        return len(self.coefficients)

    def coefficient(self, n: int) -> Scalar:
        """d_n for any n >= 1; past the horizon the n/(n+1) rule applies."""
        if n <= self.horizon:
            return self.coefficients[n - 1]
        return weight(n, self.norm.backend == RATIONAL)

    def reconstruct(self, block_norms: Sequence[Scalar]) -> Scalar:
        total = block_norms[0] * 0 if block_norms else 0
        for n, a in enumerate(block_norms, start=1):
            total = total + self.coefficient(n) * a
        return total


def classify(tail_term: Scalar, prefix_norm: Scalar) -> Relation:
    """Exact trichotomy for rationals; floats within TIE_REL count as ties."""
    if is_exact(tail_term) and is_exact(prefix_norm):
        if tail_term == prefix_norm:
            return Relation.TIE
    elif close(tail_term, prefix_norm, TIE_REL):
        return Relation.TIE
    return Relation.TAIL if tail_term > prefix_norm else Relation.PREFIX


def _as_relation(choice: TieChoice) -> Relation:
    rel = Relation(choice.value if isinstance(choice, Relation) else _TIE_ALIASES.get(choice, choice))
    if rel is Relation.TIE:
        raise ValueError("a tie must be resolved to 'prefix' or 'tail'")
    return rel


_TIE_ALIASES = {"prefix-dominates": "prefix", "tail-dominates": "tail"}


def branch_records(x: BlockVector, depth: int | None = None) -> list[BranchRecord]:
    """Unresolved branch records for levels 2..depth (default support_end)."""
    end = x.support_end if depth is None else depth
    norms = _block_norms(x, end)
    prefixes = prefix_norms_from(norms)
    records = []
    for n in range(2, end + 1):
        exact = is_exact(norms[n - 1])
        tail_term = norms[n - 1] * reciprocal(n, exact)
        records.append(BranchRecord(n, classify(tail_term, prefixes[n - 2]), tail_term, prefixes[n - 2]))
    return records


def extract_representation(
    x: BlockVector,
    tie_choice: TieChoice | Mapping[int, TieChoice] = Relation.PREFIX,
) -> Representation:
    """Coefficients d_n in (0, 1] with sum d_n ||x_n||_n = ||x||.

    ``tie_choice`` resolves every tie the same way, or may map individual
    levels to a resolution (unlisted tie levels fall back to prefix).
    """
    if x.is_zero():
        raise ZeroVectorError("the zero vector has no norm representation")
    if isinstance(tie_choice, Mapping):
        per_level = {n: _as_relation(c) for n, c in tie_choice.items()}
        default = Relation.PREFIX
    else:
        per_level = {}
        default = _as_relation(tie_choice)

    value = terenzi_norm(x)
    exact = value.backend != FLOAT
    coeffs: list[Scalar] = [Fraction(1) if exact else 1.0]
    branches = []
    last_tail = 0
    for record in branch_records(x):
        n = record.level
        resolved = record.relation
        if resolved is Relation.TIE:
            resolved = per_level.get(n, default)
        w = weight(n, exact)
        if resolved is Relation.TAIL:
            coeffs = [w * d for d in coeffs]
            coeffs.append(w + reciprocal(n * (n + 1), exact))
            last_tail = n
        else:
            coeffs.append(w)
        branches.append(BranchRecord(n, record.relation, record.tail_term, record.prefix_norm, resolved))

    k = max(2, last_tail + 1)
    for n in range(len(coeffs) + 1, k + 1):
        coeffs.append(weight(n, exact))
    return Representation(tuple(coeffs), tuple(branches), k, value, default)


def tail_formula_check(x: BlockVector, k: int, c: Scalar) -> bool:
    """||x|| = ||P_k x|| + sum_{n>k} (1 - 1/(n+1)) a_n, under its hypothesis.

    The hypothesis a_n / n < c <= ||P_k x|| for every support level n > k is
    verified first; :class:`HypothesisFailed` is raised when it does not hold.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not c > 0:
        raise HypothesisFailed(0, "c must be positive")
    norms = _block_norms(x, max(k, x.support_end))
    prefixes = prefix_norms_from(norms)
    head = prefixes[k - 1]
    # float heads may round just below an exactly chosen c
    if not leq(c, head, 1e-12):
        raise HypothesisFailed(k, f"c = {c} exceeds ||P_k x|| = {head}")
    expected = head
    for n in range(k + 1, x.support_end + 1):
        a = norms[n - 1]
        if not a * reciprocal(n, is_exact(a)) < c:
            raise HypothesisFailed(n, f"||x_{n}|| / {n} is not below c")
        expected = expected + weight(n, is_exact(a)) * a
    return close(prefixes[-1], expected, 1e-10)


@dataclass(frozen=True)
class BranchPattern:
    """Entries for levels 2..depth; ``entries[0]`` is level 2."""

    entries: tuple[Cmp, ...]

    @property
    def depth(self) -> int:
        return len(self.entries) + 1

    def at(self, level: int) -> Cmp:
        return self.entries[level - 2]

    def labels(self) -> list[str]:
        return [e.value for e in self.entries]


def branch_pattern(x: BlockVector, depth: int) -> BranchPattern:
    if depth < 2:
        raise ValueError("depth must be >= 2")
    return BranchPattern(tuple(r.cmp for r in branch_records(x, depth)))


def compatible(p: Cmp, q: Cmp) -> bool:
    return p is Cmp.EQ or q is Cmp.EQ or p is q


def patterns_compatible(p: BranchPattern, q: BranchPattern) -> bool:
    return all(compatible(a, b) for a, b in zip(p.entries, q.entries))


def _require_nonzero(*vectors: BlockVector) -> None:
    for v in vectors:
        if v.is_zero():
            raise ZeroVectorError("representations of the zero vector are undefined")


def common_choice(x: BlockVector, y: BlockVector) -> dict[int, Relation] | None:
    """A per-level resolution valid for both vectors, or None when none exists.

    Levels where both vectors tie are resolved to prefix.  Beyond both support
    ends every level is prefix-dominated, so comparing up to the larger support
    end (at least level 2) decides the question.
    """
    if x.family != y.family:
        raise FamilyMismatch("vectors live over different space families")
    _require_nonzero(x, y)
    depth = max(2, x.support_end, y.support_end)
    px, py = branch_pattern(x, depth), branch_pattern(y, depth)
    choice = {}
    for level, (a, b) in enumerate(zip(px.entries, py.entries), start=2):
        if not compatible(a, b):
            return None
        side = a if a is not Cmp.EQ else b
        choice[level] = Relation.TAIL if side is Cmp.LE else Relation.PREFIX
    return choice


def same_representation(x: BlockVector, y: BlockVector) -> bool:
    return common_choice(x, y) is not None


def remark_sufficient(x: BlockVector, y: BlockVector, k: int, bound: Scalar | None = None) -> str | None:
    """Check the two sufficient conditions for x ~ y given agreement through k.

    Returns ``"zero-tail"`` when both vectors vanish past k, ``"bounded"`` when
    ||x||, ||y|| <= bound and both ||P_k||  exceed 2 bound / (k+1), and None when
    neither condition applies (which says nothing about x ~ y).
    """
    _require_nonzero(x, y)
    if k < 2:
        raise ValueError("k must be >= 2")
    px, py = branch_pattern(x, k + 1), branch_pattern(y, k + 1)
    # the implications GE => GE and LE => LE for 1 <= n <= k
    for a, b in zip(px.entries, py.entries):
        if a is Cmp.GE and b is not Cmp.GE and b is not Cmp.EQ:
            return None
        if a is Cmp.LE and b is not Cmp.LE and b is not Cmp.EQ:
            return None
        if a is Cmp.EQ and b is not Cmp.EQ:
            return None
    if x.support_end <= k and y.support_end <= k:
        return "zero-tail"
    if bound is not None:
        from .norm import norm, prefix_norms

        threshold = 2 * bound / (k + 1)
        if (
            norm(x) <= bound
            and norm(y) <= bound
            and prefix_norms(x, k)[-1] > threshold
            and prefix_norms(y, k)[-1] > threshold
        ):
            return "bounded"
    return None


_LABEL_ORDER = (Cmp.GE, Cmp.LE)


def select_common_pattern(
    points: Sequence[BlockVector], limit: BlockVector, depth: int
) -> list[int]:
    """Largest sub-family sharing a branch resolution with ``limit``.

    Levels where the limit is strict force that side on every kept point; at
    the limit's tie levels a side has to be picked, and a point survives when
    it is compatible with the picked side at every level.  The sides are
    searched exhaustively (pruned by the best size found so far), trying GE
    before LE, so among maximal sub-families the lexicographically first side
    assignment wins.  Returns sorted 0-based indices.
    """
    if not points:
        raise ValueError("select_common_pattern needs at least one point")
    _require_nonzero(limit, *points)
    target = branch_pattern(limit, depth)
    patterns = [branch_pattern(p, depth) for p in points]

    alive = [i for i, pat in enumerate(patterns) if patterns_compatible(pat, target)]
    # only tie levels of the limit where kept points disagree need a decision
    open_levels = []
    for idx, entry in enumerate(target.entries):
        if entry is Cmp.EQ:
            seen = {patterns[i].entries[idx] for i in alive} - {Cmp.EQ}
            if len(seen) == 2:
                open_levels.append(idx)

    best: list[int] = []
    found = False

    def search(level_pos: int, members: list[int]) -> None:
        nonlocal best, found
        if found and len(members) <= len(best):
            return
        if level_pos == len(open_levels):
            best, found = members, True
            return
        idx = open_levels[level_pos]
        for side in _LABEL_ORDER:
            kept = [i for i in members if compatible(patterns[i].entries[idx], side)]
            search(level_pos + 1, kept)

    search(0, alive)
    return sorted(best)


def family_compatible(patterns: Sequence[BranchPattern]) -> bool:
    """All patterns admit a single common resolution (levelwise check)."""
    for column in itertools.zip_longest(*(p.entries for p in patterns), fillvalue=Cmp.EQ):
        if Cmp.GE in column and Cmp.LE in column:
            return False
    return True
