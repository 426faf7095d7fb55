"""Exact integer and rational arithmetic primitives.

Everything downstream (lattices, plumbing graphs, correction terms) is built
on top of this module.  All values are Python ints or ``fractions.Fraction``;
no floating point is used anywhere in the package.

Continued fractions here follow the minus convention

    [c1, c2, ..., cm] = c1 - 1/(c2 - 1/( ... - 1/cm)),

the one used throughout plumbing calculus.  Expansions come in exactly two
flavours: all entries >= 2 (for values > 1) and all entries <= -2 (for values
< -1, the Hirzebruch-Jung expansions of negative-definite legs).  Mixing the
two sign conventions is the classic source of sign bugs, so the plus
convention is deliberately not implemented.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

__all__ = [
    "Fraction",
    "ZeroTailError",
    "NotExpandableError",
    "NotCoprimeError",
    "bezout",
    "mod_inverse",
    "cf_eval",
    "hj_expand",
    "hj_expand_negative",
]


class ZeroTailError(ZeroDivisionError):
    """A proper suffix of the continued fraction evaluates to zero."""


class NotExpandableError(ValueError):
    """No continued-fraction expansion exists in the requested sign mode."""


class NotCoprimeError(ValueError):
    """Arguments required to be coprime are not."""


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``a*x + b*y = g``.

    Requires ``(a, b) != (0, 0)``.
    """
    if a == 0 and b == 0:
        raise ValueError("bezout(0, 0) is undefined")
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    g0, g1 = a, b
    while g1:
        q = g0 // g1
        g0, g1 = g1, g0 - q * g1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if g0 < 0:
        g0, x0, y0 = -g0, -x0, -y0
    return g0, x0, y0


def mod_inverse(a: int, m: int) -> int:
    """Return the inverse of ``a`` modulo ``m`` in ``[0, m)``; ``m >= 2``."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    g, x, _ = bezout(a % m, m)
    if g != 1:
        raise NotCoprimeError(f"{a} is not invertible modulo {m}")
    return x % m


def cf_eval(word) -> Fraction:
    """Evaluate ``[c1, ..., cm] = c1 - 1/(c2 - ... - 1/cm)`` exactly.

    Raises :class:`ZeroTailError` when some proper suffix evaluates to zero,
    which would require dividing by zero.
    """
    coeffs = list(word)
    if not coeffs:
        raise ValueError("continued fraction word must be nonempty")
    value = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        if value == 0:
            raise ZeroTailError(f"suffix of {coeffs} evaluates to 0")
        value = c - 1 / value
    return value


def hj_expand(value) -> tuple[int, ...]:
    """Expand ``value > 1`` as ``[c1, ..., cm]`` with every ``ci >= 2``.

    The expansion is unique and ``cf_eval`` inverts it.  For a reduced
    fraction p/q the length is at most p.
    """
    v = Fraction(value)
    if v <= 1:
        raise NotExpandableError(f"{v} has no all->=2 expansion (need value > 1)")
    out: list[int] = []
    while True:
        c = ceil(v)
        out.append(c)
        if v == c:
            return tuple(out)
        # 0 < c - v < 1, so the next value is again > 1 and the
        # denominator strictly drops: termination is Euclidean.
        v = 1 / (c - v)


def hj_expand_negative(value) -> tuple[int, ...]:
    """Expand ``value < -1`` as ``[c1, ..., cm]`` with every ``ci <= -2``."""
    v = Fraction(value)
    if v >= -1:
        raise NotExpandableError(f"{v} has no all-<=-2 expansion (need value < -1)")
    # Negating every coefficient negates the value of a minus-convention word.
    return tuple(-c for c in hj_expand(-v))
