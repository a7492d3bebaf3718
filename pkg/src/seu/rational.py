"""Exact rational parsing and formatting.

Every numeric quantity in this package is a ``fractions.Fraction``.  Wire
formats (JSON documents, CLI output, HTTP payloads) carry rationals as
strings: either ``"p/q"`` with integer p and positive integer q, a decimal
such as ``"0.25"``, or a plain integer string.  Floats are refused on input
because they are inexact by construction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


class RationalFormatError(ValueError):
    """Raised when a value cannot be read as an exact rational."""


def parse_rational(value: RationalLike) -> Fraction:
    """Read an exact rational from a string, int, or Fraction.

    Accepted string forms: ``"3/4"``, ``"-3/4"``, ``"0.75"``, ``"12"``.
    Floats are rejected: a JSON document must spell inexact-looking values
    as strings so that ``0.1`` means one tenth, not its binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalFormatError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise RationalFormatError(
            f"refusing float {value!r}: write it as a string such as "
            f"'1/10' or '0.1' to keep the value exact"
        )
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                p = int(num.strip())
                q = int(den.strip())
            except ValueError:
                raise RationalFormatError(f"malformed rational string: {value!r}") from None
            if q <= 0:
                raise RationalFormatError(f"denominator must be positive: {value!r}")
            return Fraction(p, q)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise RationalFormatError(f"malformed rational string: {value!r}") from None
    raise RationalFormatError(f"not a rational value: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical string form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, places: int = 4) -> str:
    """Fixed-point decimal rendering, exact up to truncation at ``places``.

    Used for display only; round-half-away-from-zero on the last digit.
    """
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    units = scaled.numerator // scaled.denominator
    remainder = scaled - units
    if 2 * remainder >= 1:
        units += 1
    digits = str(units).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"
