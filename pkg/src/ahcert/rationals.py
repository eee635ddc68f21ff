"""Canonical parsing and formatting of exact rationals.

Every rational that appears in a JSON report is rendered as "p/q" in
lowest terms with q >= 1 and the sign carried by p.  This keeps reports
byte-reproducible and trivially parseable from any language.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction, rejecting floats.

    Floats are rejected on purpose: certified comparisons must never be
    seeded from binary approximations.
    """
    if isinstance(value, bool):
        raise InputError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise InputError(
            f"refusing to coerce float {value!r} to an exact rational; "
            "pass a Fraction, int, or 'p/q' string"
        )
    raise InputError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (decimal integers, optional leading sign)."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {text!r}: {exc}") from exc


def format_rational(value) -> str:
    """Render as "p/q" in lowest terms (always with the denominator)."""
    f = as_fraction(value)
    return f"{f.numerator}/{f.denominator}"
