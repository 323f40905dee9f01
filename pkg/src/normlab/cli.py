"""Command-line front end.

Exit codes: 0 success, 1 property or assertion failure, 2 input error,
3 I/O error.  Reports go to standard output (or ``-o``) as compact JSON with
a fixed key order, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import corpus
from .documents import (
    DocumentError,
    audit_to_doc,
    equilateral_to_doc,
    family_from_doc,
    norm_to_doc,
    points_from_doc,
    rejection_to_doc,
    representation_to_doc,
    vector_from_doc,
    vector_to_doc,
)
from .equilateral import AnsatzViolation, SearchConfig, anchor_family, audit_sequence, rescale_to_unit, search_equilateral, verify_equilateral
from .norm import NORMS, l1_sum_norm, sandwich_bounds, strict_lower_check, terenzi_norm
from .numeric import BackendError, format_scalar, parse_scalar
from .properties import SUITES, run_suites
from .representation import (
    HypothesisFailed,
    ZeroVectorError,
    branch_pattern,
    common_choice,
    extract_representation,
    same_representation,
)
from .spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily
from .vectors import BlockVector, FamilyMismatch, dense

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_IO = 3


class InputError(Exception):
    pass


class OutputError(Exception):
    pass


# ---------------------------------------------------------------- input


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_family(text: str | None) -> SpaceFamily:
    """``scalar``, ``growing-lp:P``, ``sup:DIM``, ``lp:DIM:P`` or a family document path."""
    if text is None or text == "scalar":
        return SCALAR_FAMILY
    head, _, rest = text.partition(":")
    try:
        if head == "growing-lp" and rest:
            return SpaceFamily.growing_lp(_exponent(rest))
        if head == "sup" and rest:
            return SpaceFamily.constant(ComponentSpec.sup(int(rest)))
        if head == "lp" and rest:
            dim, _, p = rest.partition(":")
            return SpaceFamily.constant(ComponentSpec.lp(int(dim), _exponent(p)))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--family {text}: {exc}") from None
    try:
        return family_from_doc(_read_json(text))
    except DocumentError as exc:
        raise InputError(f"{text}: {exc}") from None


def _exponent(text: str):
    p = parse_scalar(text)
    return int(p) if isinstance(p, Fraction) and p.denominator == 1 else p


def _vector(doc, family: SpaceFamily, path: str) -> BlockVector:
    # a bare list of scalars is a dense vector with one coordinate per block
    if isinstance(doc, list):
        try:
            return dense([parse_scalar(v) if isinstance(v, str) else v for v in doc], family)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: {exc}") from None
    try:
        return vector_from_doc(doc, family)
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_vector(path: str, family: SpaceFamily) -> BlockVector:
    return _vector(_read_json(path), family, path)


def load_points(path: str, family: SpaceFamily):
    doc = _read_json(path)
    if isinstance(doc, list) and doc and all(isinstance(p, list) for p in doc):
        return [_vector(p, family, f"{path}: points[{i}]") for i, p in enumerate(doc)], None
    try:
        return points_from_doc(doc, family)
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


# ---------------------------------------------------------------- output


def render(doc, pretty: bool) -> str:
    if not pretty:
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"
    if isinstance(doc, str):
        return doc if doc.endswith("\n") else doc + "\n"
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _table(rows: list[list[str]]) -> str:
    width = max((len(c) for row in rows for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in rows)


def emit(text: str, path: str | None) -> None:
    if not path or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from None


# ---------------------------------------------------------------- verbs


def cmd_norm(args):
    x = load_vector(args.input, args.family)
    value = terenzi_norm(x) if args.norm_choice == "terenzi" else l1_sum_norm(x)
    doc = norm_to_doc(value)
    return doc, (format_scalar(value.value) if args.pretty else doc), EXIT_OK


def cmd_bounds(args):
    x = load_vector(args.input, args.family)
    lower, upper = sandwich_bounds(x)
    value = terenzi_norm(x)
    doc = {
        "lower": format_scalar(lower),
        "norm": format_scalar(value.value),
        "upper": format_scalar(upper),
        "strict_lower": strict_lower_check(x) if not x.is_zero() else None,
        "backend": value.backend,
    }
    text = f"{doc['lower']} <= {doc['norm']} <= {doc['upper']}"
    return doc, (text if args.pretty else doc), EXIT_OK


def cmd_repr(args):
    x = load_vector(args.input, args.family)
    rep = extract_representation(x, args.tie_choice)
    doc = representation_to_doc(rep)
    if args.depth:
        doc["pattern"] = branch_pattern(x, args.depth).labels()
    if args.pretty:
        rows = [["n", "a_n", "d_n"]] + [
            [str(n), format_scalar(a), format_scalar(rep.coefficient(n))]
            for n, a in enumerate(x.block_norms(rep.horizon), start=1)
        ]
        return doc, f"norm {doc['norm']}, k = {rep.stabilization_index}\n{_table(rows)}", EXIT_OK
    return doc, doc, EXIT_OK


def cmd_same_repr(args):
    x = load_vector(args.first, args.family)
    y = load_vector(args.second, args.family)
    choice = common_choice(x, y)
    doc = {
        "same_representation": choice is not None,
        "ties": None if choice is None else {str(n): r.value for n, r in sorted(choice.items())},
    }
    return doc, ("true" if choice is not None else "false") if args.pretty else doc, EXIT_OK


def _rescaled(points, how):
    if how == "unit":
        return rescale_to_unit(points)
    if how == "anchor":
        return anchor_family(points)
    return list(points)


def cmd_distance_matrix(args):
    points, _ = load_points(args.input, args.family)
    if len(points) < 2:
        raise InputError(f"{args.input}: need at least two points")
    report = verify_equilateral(_rescaled(points, args.rescale), args.tol, args.norm_choice)
    doc = equilateral_to_doc(report)
    if args.pretty:
        verdict = "true" if report.is_equilateral else "false"
        text = f"{_table(doc['distances'])}\nspread {doc['spread']}, equilateral {verdict}"
        return doc, text, EXIT_OK
    return doc, doc, EXIT_OK


def cmd_search(args):
    try:
        config = SearchConfig(
            family=args.family,
            N=args.N,
            K=args.K,
            restarts=args.restarts,
            iterations=args.iterations,
            seed=args.seed if args.seed is not None else SearchConfig.seed,
            norm_choice=args.norm_choice,
            tol=args.tol,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = equilateral_to_doc(search_equilateral(config))
    return doc, doc, EXIT_OK


def cmd_audit(args):
    points, limit = load_points(args.input, args.family)
    points = _rescaled(points, args.rescale)
    try:
        report = audit_sequence(points, limit, args.tol, args.n0, require_ansatz=not args.no_ansatz)
    except AnsatzViolation as exc:
        doc = rejection_to_doc(exc)
        print(f"error: ansatz rejected: {exc}", file=sys.stderr)
        return doc, doc, EXIT_INPUT
    doc = audit_to_doc(report)
    return doc, doc, EXIT_OK if report.verified else EXIT_FAILURE


def _arg_doc(value):
    if isinstance(value, BlockVector):
        return vector_to_doc(value)
    if isinstance(value, dict):
        return {str(k): _arg_doc(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_arg_doc(v) for v in value]
    if isinstance(value, (Fraction, float)):
        return format_scalar(value)
    return value


def cmd_props(args):
    seed = corpus.DEFAULT_SEED if args.seed is None else args.seed
    run = run_suites(seed, args.count, args.suite or None)
    doc = {
        "seed": seed,
        "count": args.count,
        "suites": [{"name": r.name, "passed": r.passed, "failed": r.failed} for r in run.results],
        "ok": run.ok,
    }
    failures = {r.name: _arg_doc(list(r.reproduction)) for r in run.results if r.reproduction is not None}
    if failures:
        doc["reproductions"] = failures
    text = run.transcript()
    if failures:
        text += "\n" + json.dumps(failures, indent=2)
    return doc, text if args.pretty else doc, EXIT_OK if run.ok else EXIT_FAILURE


EXAMPLE_X = ("1/2", "1")
EXAMPLE_Y = ("1/2", "2")
EXAMPLE_Z = ("1/2", "1/2")


def worked_example() -> tuple[dict, bool]:
    """Non-uniqueness example: a level-2 tie, two representations, a non-transitive relation."""
    x, y, z = (dense([parse_scalar(v) for v in vals]) for vals in (EXAMPLE_X, EXAMPLE_Y, EXAMPLE_Z))
    value = terenzi_norm(x)
    reps = {choice: extract_representation(x, choice) for choice in ("prefix", "tail")}
    # coefficients on the support of x; later entries are the trailing n/(n+1)
    d = {c: [format_scalar(v) for v in r.coefficients[: x.support_end]] for c, r in reps.items()}
    verdicts = {
        "x~y": same_representation(x, y),
        "x~z": same_representation(x, z),
        "y~z": same_representation(y, z),
    }
    expected = {
        "norm": "7/6",
        "prefix": ["1", "2/3"],
        "tail": ["2/3", "5/6"],
        "verdicts": {"x~y": True, "x~z": True, "y~z": False},
    }
    doc = {
        "vectors": {name: vector_to_doc(v) for name, v in (("x", x), ("y", y), ("z", z))},
        "norm": format_scalar(value.value),
        "representations": {
            c: {"d": d[c], "k": reps[c].stabilization_index} for c in ("prefix", "tail")
        },
        "same_representation": verdicts,
        "backend": value.backend,
    }
    ok = (
        doc["norm"] == expected["norm"]
        and d["prefix"] == expected["prefix"]
        and d["tail"] == expected["tail"]
        and verdicts == expected["verdicts"]
    )
    doc["matches"] = ok
    return doc, ok


def cmd_example(args):
    doc, ok = worked_example()
    if args.pretty:
        lines = [
            f"x = ({', '.join(EXAMPLE_X)}), ||x|| = {doc['norm']}",
            f"prefix choice: d = ({', '.join(doc['representations']['prefix']['d'])})",
            f"tail choice:   d = ({', '.join(doc['representations']['tail']['d'])})",
        ]
        lines += [f"{k}: {str(v).lower()}" for k, v in doc["same_representation"].items()]
        lines.append("matches" if ok else "MISMATCH")
        return doc, "\n".join(lines), EXIT_OK if ok else EXIT_FAILURE
    return doc, doc, EXIT_OK if ok else EXIT_FAILURE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument(
        "--family",
        default="scalar",
        help="scalar, growing-lp:P, sup:DIM, lp:DIM:P or a family document path (default scalar)",
    )
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance (default 1e-9)")

    parser = argparse.ArgumentParser(prog="normlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = verb("norm", cmd_norm, "norm of a vector document")
    p.add_argument("input")
    p.add_argument("--norm-choice", choices=sorted(NORMS), default="terenzi")

    p = verb("bounds", cmd_bounds, "sandwich bounds of a vector")
    p.add_argument("input")

    p = verb("repr", cmd_repr, "coefficient representation of the norm")
    p.add_argument("input")
    p.add_argument("--tie-choice", choices=("prefix", "tail"), default="prefix")
    p.add_argument("--depth", type=int, help="also print the branch pattern up to this level")

    p = verb("same-repr", cmd_same_repr, "do two vectors admit a common representation")
    p.add_argument("first")
    p.add_argument("second")

    p = verb("distance-matrix", cmd_distance_matrix, "pairwise distances and spread")
    p.add_argument("input")
    p.add_argument("--norm-choice", choices=sorted(NORMS), default="terenzi")
    p.add_argument("--rescale", choices=("unit", "anchor"))

    p = verb("search", cmd_search, "multi-start search for a near-equilateral set")
    p.add_argument("--N", type=int, default=2, help="number of blocks")
    p.add_argument("--K", type=int, default=3, help="number of points")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--seed", type=int)
    p.add_argument("--norm-choice", choices=sorted(NORMS), default="terenzi")

    p = verb("audit", cmd_audit, "trace the equilateral-set argument on a finite family")
    p.add_argument("input")
    p.add_argument("--rescale", choices=("unit", "anchor"))
    p.add_argument("--n0", type=int)
    p.add_argument("--no-ansatz", action="store_true", help="skip the normalized-equilateral precondition")

    p = verb("props", cmd_props, "run the randomized invariant suites")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=200, help="cases per suite (default 200)")
    p.add_argument("--suite", action="append", choices=[s.name for s in SUITES])

    verb("example", cmd_example, "reproduce the non-uniqueness example")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.family = parse_family(args.family)
        _, out, code = args.func(args)
        emit(render(out, args.pretty), args.output)
        return code
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, DocumentError, FamilyMismatch, BackendError, ZeroVectorError, HypothesisFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
