"""Fixed-point amount arithmetic in atto-units (10^-18 of a whole unit).

Every token or currency quantity in the ledger is an unsigned integer
number of atto-units. Arithmetic is exact; anything that would leave the
unsigned 128-bit range is an error, never a wrap or a rounding.
"""

from __future__ import annotations

from .errors import Overflow, ValidationError, ZeroAmount

ATTO = 10**18
MAX_AMOUNT = 2**128 - 1


def check_amount(value: int, *, allow_zero: bool = True) -> int:
    """Validate an amount is an int within [0, 2^128-1]."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"amount must be an integer, got {type(value).__name__}")
    if value < 0:
        raise ValidationError(f"amount must be non-negative, got {value}")
    if value > MAX_AMOUNT:
        raise Overflow(f"amount {value} exceeds 128-bit range")
    if value == 0 and not allow_zero:
        raise ZeroAmount("amount must be positive")
    return value


def checked_add(a: int, b: int) -> int:
    total = a + b
    if total > MAX_AMOUNT:
        raise Overflow(f"{a} + {b} exceeds 128-bit range")
    return total


def checked_mul(a: int, b: int) -> int:
    product = a * b
    if product > MAX_AMOUNT:
        raise Overflow(f"{a} * {b} exceeds 128-bit range")
    return product


def parse_units(text: str) -> int:
    """Parse a whole-unit decimal string ("1.5", "0.01") to atto-units, exactly.

    More than 18 fractional digits is an error rather than a silent rounding.
    """
    if not isinstance(text, str):
        raise ValidationError("expected a decimal string")
    s = text.strip()
    if not s:
        raise ValidationError("empty amount string")
    if s.startswith("-"):
        raise ValidationError("amounts are non-negative")
    if s.startswith("+"):
        s = s[1:]
    whole, sep, frac = s.partition(".")
    if whole == "" and frac == "":
        raise ValidationError(f"malformed amount {text!r}")
    whole = whole or "0"
    if not whole.isdigit() or (sep and not (frac == "" or frac.isdigit())):
        raise ValidationError(f"malformed amount {text!r}")
    if len(frac) > 18:
        raise ValidationError(f"more than 18 fractional digits in {text!r}")
    value = int(whole) * ATTO + int(frac.ljust(18, "0") or "0")
    return check_amount(value)


def parse_atto(text: str) -> int:
    """Parse an atto-unit decimal string (the wire format) to an int."""
    if not isinstance(text, str) or not text.isdigit():
        raise ValidationError(f"malformed atto-unit amount {text!r}")
    return check_amount(int(text))


def format_units(value: int) -> str:
    """Render atto-units as a whole-unit decimal string, trailing zeros trimmed."""
    whole, frac = divmod(value, ATTO)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:018d}".rstrip("0")
