"""Numeric trace of the obstruction argument against equilateral sequences.

Given a finite family x_0, ..., x_{M-1} normalized so that ||x_m|| = 1 and
||x_m - x_k|| = 1, and a (real or estimated) pointwise limit x, the auditor
evaluates every quantity the argument manipulates:

1. radii r_m = ||x_m - x|| and offsets b_m = r_m - 1/2;
2. ||x|| and its gap from 1/2;
3. for each level l, the first index from which all points agree with x on
   blocks 1..l;
4. representations A_mn of x_m - x, and for pairs (m, k) whether the spliced
   vector (x_m - x_k on blocks <= n0, x_m - x beyond) shares them;
5. on a monotone sub-family over blocks 1..n0, the lambda ratios, the
   unconditional contraction bound and the strict contraction test;

and finishes with the certificate built from y = (x_k on blocks <= n0, x
beyond).  Every inequality carries a closure that recomputes both sides by
direct norm evaluation; the report is marked verified only when all of them
reproduce their stored values and verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..norm import distance_matrix, norm
from ..numeric import Scalar, close, is_exact
from ..representation import Representation, ZeroVectorError, common_choice, extract_representation
from ..vectors import BlockVector, FamilyMismatch, make_vector, scale, splice, sub
from .monotone import monotone_subfamily
from .verify import DEFAULT_TOL

HALF = Fraction(1, 2)
SLACK = 1e-10


class AnsatzViolation(ValueError):
    """The family is not normalized equilateral within tolerance."""

    def __init__(self, kind: str, pair: tuple[int, int], value: Scalar, tol: float):
        self.kind = kind
        self.pair = pair
        self.value = value
        self.tol = tol
        what = f"||x_{pair[0]}||" if kind == "norm" else f"||x_{pair[0]} - x_{pair[1]}||"
        super().__init__(f"{what} = {value} is not within {tol} of 1")


def _compare(lhs: Scalar, rhs: Scalar, relation: str) -> bool:
    if is_exact(lhs) and is_exact(rhs):
        slack = 0
    else:
        slack = SLACK * max(1.0, abs(float(lhs)), abs(float(rhs)))
    if relation == "<":
        return lhs < rhs - slack
    if relation == "<=":
        return lhs <= rhs + slack
    if relation == ">":
        return lhs > rhs + slack
    if relation == ">=":
        return lhs >= rhs - slack
    if relation == "=":
        return abs(lhs - rhs) <= slack
    raise ValueError(f"unknown relation {relation!r}")


@dataclass
class Inequality:
    name: str
    lhs: Scalar
    relation: str
    rhs: Scalar
    recompute: Callable[[], tuple[Scalar, Scalar]] = field(repr=False, compare=False)
    holds: bool = False
    verified: bool = False

    def __post_init__(self):
        self.holds = _compare(self.lhs, self.rhs, self.relation)

    def reverify(self) -> bool:
        lhs, rhs = self.recompute()
        self.verified = (
            close(lhs, self.lhs, 1e-9)
            and close(rhs, self.rhs, 1e-9)
            and _compare(lhs, rhs, self.relation) == self.holds
        )
        return self.verified


@dataclass
class PairTrace:
    m: int
    k: int
    same_representation: bool
    coefficients: tuple[Scalar, ...]
    lambdas: dict[int, list[Scalar]]
    max_lambda: dict[int, Scalar]
    contracted: Scalar  # sum_{n<=n0} A_mn ||x_mn - x_kn||
    reference: Scalar  # sum_{n<=n0} A_mn ||x_mn - x_n||
    strict: bool


@dataclass
class AuditReport:
    points: list[BlockVector]
    limit: BlockVector
    limit_estimated: bool
    tol: float
    radii: list[Scalar] = field(default_factory=list)
    offsets: list[Scalar] = field(default_factory=list)
    step1: dict = field(default_factory=dict)
    limit_norm: Scalar | None = None
    limit_gap: Scalar | None = None
    agreement: list[dict] = field(default_factory=list)
    n0: int | None = None
    representations: list[Representation | None] = field(default_factory=list)
    monotone: list[int] = field(default_factory=list)
    pairs: list[PairTrace] = field(default_factory=list)
    certificate: dict | None = None
    inequalities: list[Inequality] = field(default_factory=list)
    verified: bool = False


def estimate_limit(points: Sequence[BlockVector]) -> BlockVector:
    """Coordinatewise mean of the last ceil(M/2) points."""
    tail_part = points[len(points) - math.ceil(len(points) / 2):]
    family = tail_part[0].family
    exact = all(p.is_exact for p in tail_part)
    count = Fraction(len(tail_part)) if exact else float(len(tail_part))
    end = max(p.support_end for p in tail_part)
    blocks = []
    for n in range(1, end + 1):
        columns = zip(*(p.block(n) for p in tail_part))
        blocks.append((n, [sum(col) / count for col in columns]))
    return make_vector(family, blocks)


def rescale_to_unit(points: Sequence[BlockVector]) -> list[BlockVector]:
    """Divide every point by its norm."""
    out = []
    for p in points:
        value = norm(p)
        if value == 0:
            raise ZeroVectorError("cannot rescale the zero vector")
        out.append(scale(1 / value, p))
    return out


def anchor_family(points: Sequence[BlockVector]) -> list[BlockVector]:
    """(x_m - x_0) / lambda for m >= 1, lambda the mean pairwise distance.

    For an exactly equilateral family this is the usual reduction to
    ||x_m|| = 1 = ||x_m - x_k||.
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    matrix = distance_matrix(points)
    values = [matrix[i][j] for i in range(len(points)) for j in range(i + 1, len(points))]
    lam = sum(values[1:], values[0]) / len(values)
    return [scale(1 / lam, sub(p, points[0])) for p in points[1:]]


def check_ansatz(points: Sequence[BlockVector], tol: float, matrix=None) -> None:
    for m, p in enumerate(points):
        value = norm(p)
        if abs(float(value) - 1.0) > tol:
            raise AnsatzViolation("norm", (m, m), value, tol)
    matrix = distance_matrix(points) if matrix is None else matrix
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(float(matrix[i][j]) - 1.0) > tol:
                raise AnsatzViolation("distance", (i, j), matrix[i][j], tol)


def _first_difference(points: Sequence[BlockVector], limit: BlockVector) -> int | None:
    end = max([limit.support_end] + [p.support_end for p in points])
    for n in range(1, end + 1):
        if any(p.block(n) != limit.block(n) for p in points):
            return n
    return None


def _lambda(am, ak, a) -> Scalar:
    if am == a:
        return am * 0
    return (am - ak) / (am - a)


def audit_sequence(
    points: Sequence[BlockVector],
    limit: BlockVector | None = None,
    tol: float = DEFAULT_TOL,
    n0: int | None = None,
    require_ansatz: bool = True,
) -> AuditReport:
    """Trace the five steps on a finite family; see the module docstring.

    Raises :class:`AnsatzViolation` naming the offending index pair when the
    family is not normalized equilateral within ``tol`` (norms are reported as
    the pair (m, m)).  ``require_ansatz=False`` traces arbitrary families,
    which is useful for studying convergent sequences that are not equilateral.
    """
    points = list(points)
    if len(points) < 3:
        raise ValueError("the audit needs at least three points")
    if len({p.family for p in points} | ({limit.family} if limit is not None else set())) != 1:
        raise FamilyMismatch("points and limit live over different space families")
    matrix = distance_matrix(points)
    if require_ansatz:
        check_ansatz(points, tol, matrix)

    estimated = limit is None
    if estimated:
        limit = estimate_limit(points)
    report = AuditReport(points, limit, estimated, tol)
    ineqs = report.inequalities
    x = limit

    # step 1: radii and the dichotomy around 1/2
    diffs = [sub(p, x) for p in points]
    radii = [norm(d) for d in diffs]
    report.radii = radii
    report.offsets = [r - HALF for r in radii]
    below = [m for m, r in enumerate(radii) if r < HALF - tol]
    above = [m for m, r in enumerate(radii) if r > HALF + tol]
    limit_norm = norm(x)
    report.step1 = {
        "below_half": below,
        "above_half": above,
        "at_half": [m for m in range(len(points)) if m not in below and m not in above],
        "at_most_one_below": len(below) <= 1,
        "offsets_bounded": all(b <= Fraction(3, 2) + tol for b in report.offsets) if limit_norm <= 1 + tol else None,
    }
    for s in range(len(points)):
        for l in range(s + 1, len(points)):
            ineqs.append(Inequality(
                f"step1.triangle[{s},{l}]", radii[s] + radii[l], ">=", matrix[s][l],
                lambda s=s, l=l: (norm(sub(points[s], x)) + norm(sub(points[l], x)),
                                  norm(sub(points[s], points[l]))),
            ))
    for m in range(len(points)):
        ineqs.append(Inequality(
            f"step1.radius_bound[{m}]", radii[m], "<=", norm(points[m]) + limit_norm,
            lambda m=m: (norm(sub(points[m], x)), norm(points[m]) + norm(x)),
        ))

    # step 2: the limit norm
    report.limit_norm = limit_norm
    report.limit_gap = limit_norm - HALF
    for m in range(len(points)):
        ineqs.append(Inequality(
            f"step2.reverse_triangle[{m}]", radii[m], ">=", norm(points[m]) - limit_norm,
            lambda m=m: (norm(sub(points[m], x)), norm(points[m]) - norm(x)),
        ))

    # step 3: eventual agreement of prefixes with the limit
    end = max([x.support_end] + [p.support_end for p in points])
    for level in range(1, end + 1):
        agree = [all(p.block(n) == x.block(n) for n in range(1, level + 1)) for p in points]
        m0 = None
        for start in range(len(points) - 1, -1, -1):
            if not agree[start]:
                break
            m0 = start
        report.agreement.append({"level": level, "m0": m0})
    report.n0 = n0 if n0 is not None else _first_difference(points, x)

    # step 4: representations of x_m - x
    for m, d in enumerate(diffs):
        if d.is_zero():
            report.representations.append(None)
            continue
        rep = extract_representation(d)
        report.representations.append(rep)
        ineqs.append(Inequality(
            f"step4.representation[{m}]", _weighted(rep.coefficients, d, d.support_end), "=", radii[m],
            lambda rep=rep, m=m: (_weighted_fresh(rep, sub(points[m], x)), norm(sub(points[m], x))),
        ))

    if report.n0 is None:
        report.verified = all(q.reverify() for q in ineqs)
        return report
    N0 = report.n0

    # step 5: monotone sub-family and contraction
    report.monotone = monotone_subfamily(points, N0)
    chosen = None
    for a_pos, m in enumerate(report.monotone):
        for k in report.monotone[a_pos + 1:]:
            trace = _pair_trace(points, x, diffs, m, k, N0, ineqs)
            if trace is None:
                continue
            report.pairs.append(trace)
            if trace.strict and chosen is None and trace.same_representation:
                chosen = trace
    if chosen is None:
        chosen = next((t for t in report.pairs if t.strict), report.pairs[0] if report.pairs else None)

    if chosen is not None:
        report.certificate = _certificate(points, x, radii, matrix, chosen, N0, ineqs)
    report.verified = all(q.reverify() for q in ineqs)
    return report


def _weighted(coefficients, d: BlockVector, end: int) -> Scalar:
    norms = d.block_norms(end)
    total = norms[0] * 0
    for n, a in enumerate(norms, start=1):
        total = total + coefficients[n - 1] * a
    return total


def _weighted_fresh(rep: Representation, d: BlockVector) -> Scalar:
    return rep.reconstruct(d.block_norms())


def _pair_trace(points, x, diffs, m, k, n0, ineqs) -> PairTrace | None:
    dm = diffs[m]
    if dm.is_zero():
        return None
    xm, xk = points[m], points[k]
    spliced = splice(sub(xm, xk), dm, n0)
    choice = None if spliced.is_zero() else common_choice(spliced, dm)
    rep = extract_representation(dm, choice if choice is not None else "prefix")
    coeff = rep.coefficient

    lambdas: dict[int, list[Scalar]] = {}
    max_lambda: dict[int, Scalar] = {}
    contracted = reference = None
    for n in range(1, n0 + 1):
        am, ak, a = xm.block(n), xk.block(n), x.block(n)
        lam = [_lambda(p, q, r) for p, q, r in zip(am, ak, a)]
        lambdas[n] = lam
        max_lambda[n] = max(abs(v) for v in lam)
        left = sub(xm, xk).block_norm(n)
        right = dm.block_norm(n)
        ineqs.append(Inequality(
            f"step5.contraction_bound[{m},{k},{n}]", left, "<=", max_lambda[n] * right,
            lambda n=n: _contraction_sides(points[m], points[k], x, n),
        ))
        contracted = coeff(n) * left if contracted is None else contracted + coeff(n) * left
        reference = coeff(n) * right if reference is None else reference + coeff(n) * right

    strict = Inequality(
        f"step5.strict_contraction[{m},{k}]", contracted, "<", reference,
        lambda: _contraction_sums(rep, points[m], points[k], x, n0),
    )
    ineqs.append(strict)
    same = choice is not None
    if same:
        ineqs.append(Inequality(
            f"step4.spliced_identity[{m},{k}]", norm(spliced), "=", _spliced_sum(rep, xm, xk, x, n0),
            lambda: (norm(splice(sub(points[m], points[k]), sub(points[m], x), n0)),
                     _spliced_sum(rep, points[m], points[k], x, n0)),
        ))
    return PairTrace(m, k, same, rep.coefficients, lambdas, max_lambda, contracted, reference, strict.holds)


def _contraction_sides(xm, xk, x, n):
    am, ak, a = xm.block(n), xk.block(n), x.block(n)
    top = max(abs(_lambda(p, q, r)) for p, q, r in zip(am, ak, a))
    return sub(xm, xk).block_norm(n), top * sub(xm, x).block_norm(n)


def _contraction_sums(rep, xm, xk, x, n0):
    left = sum((rep.coefficient(n) * sub(xm, xk).block_norm(n) for n in range(2, n0 + 1)),
               rep.coefficient(1) * sub(xm, xk).block_norm(1))
    right = sum((rep.coefficient(n) * sub(xm, x).block_norm(n) for n in range(2, n0 + 1)),
                rep.coefficient(1) * sub(xm, x).block_norm(1))
    return left, right


def _spliced_sum(rep, xm, xk, x, n0):
    spliced = splice(sub(xm, xk), sub(xm, x), n0)
    end = max(spliced.support_end, n0)
    total = None
    for n in range(1, end + 1):
        term = rep.coefficient(n) * spliced.block_norm(n)
        total = term if total is None else total + term
    return total


def _certificate(points, x, radii, matrix, trace: PairTrace, n0, ineqs) -> dict:
    m, k = trace.m, trace.k
    y = splice(points[k], x, n0)
    d_my = norm(sub(points[m], y))
    d_ky = norm(sub(points[k], y))
    d_mk = matrix[m][k]

    def fresh():
        yy = splice(points[k], x, n0)
        return norm(sub(points[m], yy)), norm(sub(points[k], yy))

    claims = [
        Inequality("final.triangle", d_mk, "<=", d_my + d_ky,
                   lambda: (norm(sub(points[m], points[k])), sum(fresh()))),
        Inequality("final.tail_bound", d_ky, "<=", radii[k],
                   lambda: (fresh()[1], norm(sub(points[k], x)))),
        Inequality("final.star", d_my, "<", radii[m],
                   lambda: (fresh()[0], norm(sub(points[m], x)))),
        Inequality("final.chain_strict", d_my + d_ky, "<", radii[m] + radii[k],
                   lambda: (sum(fresh()), norm(sub(points[m], x)) + norm(sub(points[k], x)))),
        Inequality("final.below_unit_distance", d_my + d_ky, "<", d_my * 0 + 1,
                   lambda: (sum(fresh()), Fraction(1) if is_exact(d_my) else 1.0)),
    ]
    ineqs.extend(claims)
    return {
        "m": m,
        "k": k,
        "y": y,
        "dist_m_y": d_my,
        "dist_k_y": d_ky,
        "dist_m_k": d_mk,
        "via_limit": radii[m] + radii[k],
        "strict_chain": claims[3].holds,
        "contradiction": claims[4].holds,
    }
