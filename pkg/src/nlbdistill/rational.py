"""Parsing and formatting of exact rationals.

Probabilities, noise parameters and Bell values are ``fractions.Fraction``
throughout.  Strings use the form ``p/q`` with ``q`` omitted when it is 1.
"""

from fractions import Fraction
from numbers import Rational

__all__ = ["Fraction", "to_fraction", "parse_rational", "format_rational", "format_float"]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to ``Fraction``.

    Floats are refused: they rarely carry the value the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"3/4"``, ``"-2"`` or a decimal such as ``"0.125"`` exactly."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_float(q, digits: int = 15) -> str:
    return f"{float(Fraction(q)):.{digits}g}"
