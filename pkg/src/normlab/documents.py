"""JSON-shaped documents for families, vectors and reports.

Coordinates travel as strings: ``"p/q"`` or an integer is exact, anything
with a decimal point or exponent is a float.  Emitted documents use the same
schema plus a ``"backend"`` field, and rationals always print reduced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .equilateral.audit import AuditReport
from .equilateral.verify import EquilateralReport
from .norm import NormValue
from .numeric import Scalar, as_scalar, backend_of, format_coord, format_scalar, parse_scalar
from .representation import Relation, Representation
from .spaces import (
    CONSTANT,
    EXPLICIT,
    GROWING_LP,
    LP_SPACE,
    SCALAR_FAMILY,
    ComponentSpec,
    SpaceFamily,
)
from .vectors import BlockVector, make_vector


class DocumentError(ValueError):
    """A document failed to parse or validate; ``path`` locates the problem."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _require(doc, key: str, path: str):
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected an object")
    if key not in doc:
        raise DocumentError(path, f"missing field {key!r}")
    return doc[key]


def _scalar(value, path: str) -> Scalar:
    try:
        if isinstance(value, str):
            return parse_scalar(value)
        return as_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(path, f"bad scalar {value!r} ({exc})") from None


def _exponent(value, path: str):
    p = _scalar(value, path)
    if isinstance(p, Fraction) and p.denominator == 1:
        return int(p)
    return p


def _exponent_out(p):
    if isinstance(p, Fraction):
        return format_scalar(p)
    return p


def space_from_doc(doc, path: str = "space") -> ComponentSpec:
    kind = _require(doc, "kind", path)
    try:
        if kind == LP_SPACE:
            return ComponentSpec(kind, int(_require(doc, "dim", path)), _exponent(_require(doc, "p", path), f"{path}.p"))
        return ComponentSpec(kind, int(doc.get("dim", 1)))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(path, str(exc)) from None


def space_to_doc(space: ComponentSpec) -> dict:
    if space.kind == LP_SPACE:
        return {"kind": space.kind, "dim": space.dim, "p": _exponent_out(space.p)}
    if space.dim == 1 and space.kind != "sup-space":
        return {"kind": space.kind}
    return {"kind": space.kind, "dim": space.dim}


def family_from_doc(doc, path: str = "family") -> SpaceFamily:
    rule = _require(doc, "rule", path)
    try:
        if rule == CONSTANT:
            return SpaceFamily.constant(space_from_doc(_require(doc, "space", path), f"{path}.space"))
        if rule == GROWING_LP:
            return SpaceFamily.growing_lp(_exponent(_require(doc, "p", path), f"{path}.p"))
        if rule == EXPLICIT:
            spaces = _require(doc, "spaces", path)
            if not isinstance(spaces, list):
                raise DocumentError(f"{path}.spaces", "expected a list")
            return SpaceFamily.explicit([space_from_doc(s, f"{path}.spaces[{i}]") for i, s in enumerate(spaces)])
    except DocumentError:
        raise
    except (TypeError, ValueError) as exc:
        raise DocumentError(path, str(exc)) from None
    raise DocumentError(f"{path}.rule", f"unknown rule {rule!r}")


def family_to_doc(family: SpaceFamily) -> dict:
    if family.rule == CONSTANT:
        return {"rule": CONSTANT, "space": space_to_doc(family.space)}
    if family.rule == GROWING_LP:
        return {"rule": GROWING_LP, "p": _exponent_out(family.p)}
    return {"rule": EXPLICIT, "spaces": [space_to_doc(s) for s in family.spaces]}


def vector_from_doc(doc, family: SpaceFamily | None = None, path: str = "vector") -> BlockVector:
    """Parse a vector document; its own ``"family"`` field wins over ``family``."""
    blocks_doc = _require(doc, "blocks", path)
    if "family" in doc:
        family = family_from_doc(doc["family"], f"{path}.family")
    family = family or SCALAR_FAMILY
    if not isinstance(blocks_doc, list):
        raise DocumentError(f"{path}.blocks", "expected a list")
    blocks = []
    for i, block in enumerate(blocks_doc):
        where = f"{path}.blocks[{i}]"
        n = _require(block, "n", where)
        coords = _require(block, "coords", where)
        if not isinstance(n, int) or isinstance(n, bool):
            raise DocumentError(f"{where}.n", "block index must be an integer")
        if not isinstance(coords, list):
            raise DocumentError(f"{where}.coords", "expected a list")
        blocks.append((n, [_scalar(c, f"{where}.coords[{j}]") for j, c in enumerate(coords)]))
    try:
        return make_vector(family, blocks)
    except ValueError as exc:
        raise DocumentError(path, str(exc)) from None


def vector_to_doc(x: BlockVector, with_family: bool = True) -> dict:
    doc: dict[str, Any] = {}
    if with_family:
        doc["family"] = family_to_doc(x.family)
    doc["blocks"] = [{"n": n, "coords": [format_coord(c) for c in coords]} for n, coords in x.blocks]
    doc["backend"] = x.backend
    return doc


def points_from_doc(doc, family: SpaceFamily | None = None, path: str = "") -> tuple[list[BlockVector], BlockVector | None]:
    """``{"family": ..., "points": [...], "limit": ...}`` or a bare list of vectors."""
    if isinstance(doc, list):
        items, limit_doc = doc, None
    else:
        items = _require(doc, "points", path or "document")
        limit_doc = doc.get("limit")
        if "family" in doc:
            family = family_from_doc(doc["family"], f"{path}family" if path else "family")
    if not isinstance(items, list):
        raise DocumentError("points", "expected a list")
    points = [vector_from_doc(p, family, f"points[{i}]") for i, p in enumerate(items)]
    limit = vector_from_doc(limit_doc, family, "limit") if limit_doc is not None else None
    return points, limit


def norm_to_doc(value: NormValue) -> dict:
    return {"norm": format_scalar(value.value), "backend": value.backend}


def representation_to_doc(rep: Representation) -> dict:
    branches = []
    for b in rep.branches:
        entry = {"n": b.level, "rel": b.relation.value}
        if b.relation is Relation.TIE:
            entry["resolved"] = b.resolved.value
        branches.append(entry)
    return {
        "norm": format_scalar(rep.norm.value),
        "d": [format_scalar(d) for d in rep.coefficients],
        "branches": branches,
        "k": rep.stabilization_index,
        "backend": rep.norm.backend,
    }


def matrix_to_doc(matrix) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in matrix]


def equilateral_to_doc(report: EquilateralReport) -> dict:
    values = [v for row in report.distances for v in row]
    doc = {
        "norm": report.norm_choice,
        "points": [vector_to_doc(p, with_family=False) for p in report.points],
        "family": family_to_doc(report.points[0].family),
        "distances": matrix_to_doc(report.distances),
        "lambda_est": format_scalar(report.lambda_est),
        "spread": format_scalar(report.spread),
        "is_equilateral": report.is_equilateral,
        "duplicate": report.duplicate,
        "tol": report.tol,
        "backend": backend_of(values),
    }
    if report.meta:
        meta = dict(report.meta)
        if "objective" in meta:
            meta["objective"] = format_scalar(meta["objective"])
        doc["search"] = meta
    return doc


def _fmt_opt(value):
    return None if value is None else format_scalar(value)


def audit_to_doc(report: AuditReport) -> dict:
    doc = {
        "family": family_to_doc(report.limit.family),
        "limit": vector_to_doc(report.limit, with_family=False),
        "limit_estimated": report.limit_estimated,
        "tol": report.tol,
        "step1": {
            "r": [format_scalar(r) for r in report.radii],
            "b": [format_scalar(b) for b in report.offsets],
            **report.step1,
        },
        "step2": {"limit_norm": _fmt_opt(report.limit_norm), "gap": _fmt_opt(report.limit_gap)},
        "step3": {
            "agreement": report.agreement,
            "assertion_holds": all(a["m0"] is not None for a in report.agreement),
            "n0": report.n0,
        },
        "step4": [
            None if rep is None else {"A": [format_scalar(d) for d in rep.coefficients], "k": rep.stabilization_index}
            for rep in report.representations
        ],
        "step5": {
            "monotone": report.monotone,
            "pairs": [
                {
                    "m": t.m,
                    "k": t.k,
                    "same_representation": t.same_representation,
                    "lambda": {str(n): [format_scalar(v) for v in lam] for n, lam in t.lambdas.items()},
                    "max_lambda": {str(n): format_scalar(v) for n, v in t.max_lambda.items()},
                    "contracted": format_scalar(t.contracted),
                    "reference": format_scalar(t.reference),
                    "strict": t.strict,
                }
                for t in report.pairs
            ],
            "strict_found": any(t.strict for t in report.pairs),
        },
        "certificate": None,
        "inequalities": [
            {
                "name": q.name,
                "lhs": format_scalar(q.lhs),
                "rel": q.relation,
                "rhs": format_scalar(q.rhs),
                "holds": q.holds,
                "verified": q.verified,
            }
            for q in report.inequalities
        ],
        "verified": report.verified,
    }
    if report.certificate is not None:
        cert = dict(report.certificate)
        cert["y"] = vector_to_doc(cert["y"], with_family=False)
        for key in ("dist_m_y", "dist_k_y", "dist_m_k", "via_limit"):
            cert[key] = format_scalar(cert[key])
        doc["certificate"] = cert
    return doc


def rejection_to_doc(exc) -> dict:
    return {
        "rejected": {
            "reason": exc.kind,
            "pair": list(exc.pair),
            "value": format_scalar(exc.value),
            "tol": exc.tol,
        },
        "verified": True,
    }


__all__ = [
    "DocumentError",
    "audit_to_doc",
    "equilateral_to_doc",
    "family_from_doc",
    "family_to_doc",
    "norm_to_doc",
    "points_from_doc",
    "representation_to_doc",
    "vector_from_doc",
    "vector_to_doc",
]
