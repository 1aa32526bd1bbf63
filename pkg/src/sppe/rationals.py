"""Exact rational parsing and formatting.

Every numeric quantity in this package is a ``fractions.Fraction``; no code
path downstream of input parsing introduces floating point.  JSON payloads
carry rationals as integers or strings ("7", "3.25", "5/4").  Floats are
accepted for convenience and converted through their shortest decimal
representation, so a literal ``0.1`` means exactly 1/10.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

Rat = Fraction


def to_rat(value: object) -> Fraction:
    """Convert an input number to an exact Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not valid rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(Decimal(repr(value)))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Lowest-terms rendering: "p/q", or plain "p" for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
