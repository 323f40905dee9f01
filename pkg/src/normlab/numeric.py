"""Scalar handling for the dual rational/float backend.

Every quantity in the package is either a :class:`fractions.Fraction` (exact
mode) or a ``float``.  Python's own promotion rules do most of the work: any
arithmetic touching a float produces a float.  This module adds parsing,
formatting, backend selection and the tolerance-aware comparisons.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"
AUTO = "auto"

BACKEND_ENV = "NORMLAB_BACKEND"


class BackendError(ValueError):
    """Raised when the exact backend is forced on an inexact computation."""


def requested_backend() -> str:
    mode = os.environ.get(BACKEND_ENV, AUTO).strip().lower() or AUTO
    if mode not in (AUTO, RATIONAL, FLOAT):
        raise BackendError(f"{BACKEND_ENV} must be auto, rational or float, got {mode!r}")
    return mode


def as_scalar(value) -> Scalar:
    """Coerce ints and rationals to Fraction, keep floats, reject the rest."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or an integer as a Fraction, anything else as a float.

    >>> parse_scalar("1/2")
    Fraction(1, 2)
    >>> parse_scalar("-3")
    Fraction(-3, 1)
    >>> parse_scalar("0.25")
    0.25
    """
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    body = s[1:] if s[0] in "+-" else s
    if body.isdigit() or ("/" in body and all(part.strip().isdigit() for part in body.split("/", 1))):
        return Fraction(s.replace(" ", ""))
    value = float(s)
    if not math.isfinite(value):
        raise ValueError(f"non-finite scalar {text!r}")
    return value


def format_scalar(value: Scalar) -> str:
    """Reduced ``p/q`` for rationals, 12 significant digits for floats."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return format(float(value), ".12g")


def format_coord(value: Scalar) -> str:
    """Like :func:`format_scalar` but floats keep every bit (shortest repr)."""
    if isinstance(value, Fraction):
        return format_scalar(value)
    text = repr(float(value))
    return text if any(ch in text for ch in ".en") else text + ".0"


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def backend_of(values: Iterable) -> str:
    return RATIONAL if all(is_exact(v) for v in values) else FLOAT


def apply_backend(values: list) -> list:
    """Apply the NORMLAB_BACKEND override to a list of intermediate scalars."""
    mode = requested_backend()
    if mode == FLOAT:
        return [float(v) for v in values]
    if mode == RATIONAL and not all(is_exact(v) for v in values):
        raise BackendError("rational backend requested but an input is not exactly representable")
    return values


def weight(n: int, exact: bool) -> Scalar:
    """The level weight 1 - 1/(n+1) = n/(n+1)."""
    return Fraction(n, n + 1) if exact else n / (n + 1)


def reciprocal(n: int, exact: bool) -> Scalar:
    return Fraction(1, n) if exact else 1.0 / n


def close(a: Scalar, b: Scalar, rel: float) -> bool:
    """Exact equality for two rationals, relative closeness otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300) or a == b


def leq(a: Scalar, b: Scalar, rel: float) -> bool:
    """``a <= b``, with relative slack when either side is a float."""
    if is_exact(a) and is_exact(b):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + rel * max(abs(a), abs(b))


def exact_root(value: Fraction, p: int) -> Fraction | None:
    """Return the exact p-th root of a non-negative rational, or None."""
    if value < 0:
        raise ValueError("negative radicand")
    num = _int_root(value.numerator, p)
    den = _int_root(value.denominator, p)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, p: int) -> int | None:
    if n in (0, 1) or p == 1:
        return n
    if p == 2:
        r = math.isqrt(n)
    else:
        r = int(round(n ** (1.0 / p))) if n.bit_length() < 1000 else _newton_root(n, p)
        while r ** p > n:
            r -= 1
        while (r + 1) ** p <= n:
            r += 1
    return r if r ** p == n else None


def _newton_root(n: int, p: int) -> int:
    x = 1 << ((n.bit_length() + p - 1) // p)
    while True:
        y = ((p - 1) * x + n // x ** (p - 1)) // p
        if y >= x:
            return x
        x = y
