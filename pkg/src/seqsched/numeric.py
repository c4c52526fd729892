"""Exact arithmetic on values ``a + b*eps`` ordered as ``eps -> 0+``.

Coefficients are :class:`fractions.Fraction` instances, so every value is
stored in lowest terms with a positive denominator. Comparison is
lexicographic on ``(a, b)``, which agrees with the real ordering for every
sufficiently small positive ``eps``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

__all__ = [
    "DenominatorVanishes",
    "EpsValue",
    "Ordering",
    "ParseError",
    "Rational",
    "ZERO",
    "add",
    "compare",
    "limit_ratio",
    "parse_eps",
    "parse_rational",
    "render_rational",
]


class ParseError(ValueError):
    """Raised when a textual or JSON value cannot be read as a number."""


class DenominatorVanishes(ZeroDivisionError):
    """The limit of a ratio does not exist because the denominator tends to 0."""


class Ordering(enum.IntEnum):
    Less = -1
    Equal = 0
    Greater = 1


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_EPS_RE = re.compile(
    r"^\s*(?P<c>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])\s*(?P<e>\d+(?:/\d+)?)?\s*\*?\s*eps)?\s*$"
)


def parse_rational(value: RationalLike) -> Fraction:
    """Read an int, a Fraction or a ``"p/q"`` string as an exact rational."""
    if isinstance(value, bool):
        raise ParseError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # JSON numbers such as 1.5 are taken at their decimal spelling.
        return Fraction(repr(value))
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            try:
                return Fraction(value.strip())
            except ValueError:
                raise ParseError(f"not a rational: {value!r}") from None
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise ParseError(f"not a number: {value!r}")


def render_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class EpsValue:
    """The number ``c + e*eps`` for an infinitesimal ``eps > 0``.

    Values are immutable. Addition, subtraction and scaling by a rational
    are supported; multiplying two EpsValues is not.
    """

    c: Fraction = Fraction(0)
    e: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.c, Fraction):
            object.__setattr__(self, "c", parse_rational(self.c))
        if not isinstance(self.e, Fraction):
            object.__setattr__(self, "e", parse_rational(self.e))

    @classmethod
    def of(cls, c: RationalLike = 0, e: RationalLike = 0) -> EpsValue:
        return cls(parse_rational(c), parse_rational(e))

    # ordering -------------------------------------------------------------
    def __lt__(self, other: EpsValue) -> bool:
        return (self.c, self.e) < (other.c, other.e)

    def __le__(self, other: EpsValue) -> bool:
        return (self.c, self.e) <= (other.c, other.e)

    def __gt__(self, other: EpsValue) -> bool:
        return (self.c, self.e) > (other.c, other.e)

    def __ge__(self, other: EpsValue) -> bool:
        return (self.c, self.e) >= (other.c, other.e)

    def is_positive(self) -> bool:
        return self.c > 0 or (self.c == 0 and self.e > 0)

    def is_zero(self) -> bool:
        return self.c == 0 and self.e == 0

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: EpsValue) -> EpsValue:
        if not isinstance(other, EpsValue):
            return NotImplemented
        return EpsValue(self.c + other.c, self.e + other.e)

    def __sub__(self, other: EpsValue) -> EpsValue:
        if not isinstance(other, EpsValue):
            return NotImplemented
        return EpsValue(self.c - other.c, self.e - other.e)

    def __neg__(self) -> EpsValue:
        return EpsValue(-self.c, -self.e)

    def __mul__(self, q: int | Fraction) -> EpsValue:
        if isinstance(q, EpsValue) or not isinstance(q, (int, Fraction)):
            return NotImplemented
        return EpsValue(self.c * q, self.e * q)

    __rmul__ = __mul__

    def __truediv__(self, q: int | Fraction) -> EpsValue:
        if isinstance(q, EpsValue) or not isinstance(q, (int, Fraction)):
            return NotImplemented
        if q == 0:
            raise ZeroDivisionError("division of EpsValue by zero")
        return EpsValue(self.c / q, self.e / q)

    def at(self, eps: Fraction) -> Fraction:
        """Evaluate at a concrete positive ``eps``."""
        return self.c + self.e * eps

    # rendering ------------------------------------------------------------
    def __str__(self) -> str:
        sign = "-" if self.e < 0 else "+"
        return f"{render_rational(self.c)}{sign}{render_rational(abs(self.e))}*eps"

    def __repr__(self) -> str:
        return f"EpsValue({self})"

    def human(self) -> str:
        """Render as ``a + b·ε``, dropping a zero ε term."""
        if self.e == 0:
            return render_rational(self.c)
        sign = "-" if self.e < 0 else "+"
        mag = abs(self.e)
        coef = "" if mag == 1 else render_rational(mag)
        if self.c == 0:
            lead = "-" if self.e < 0 else ""
            return f"{lead}{coef}ε"
        return f"{render_rational(self.c)} {sign} {coef}ε"

    def to_json(self) -> Any:
        """Instance-file encoding: bare number when there is no ε term."""
        if self.e == 0:
            if self.c.denominator == 1:
                return self.c.numerator
            return render_rational(self.c)
        return {"c": render_rational(self.c), "e": render_rational(self.e)}


ZERO = EpsValue()


def parse_eps(value: Any) -> EpsValue:
    """Read a processing time from JSON-ish input.

    Accepts a bare number (``e = 0``), a ``"p/q"`` string, a ``(c, e)`` pair,
    a ``{"c": ..., "e": ...}`` mapping, or the rendered form ``"3-11*eps"``.
    """
    if isinstance(value, EpsValue):
        return value
    if isinstance(value, dict):
        unknown = set(value) - {"c", "e"}
        if unknown:
            raise ParseError(f"unexpected keys {sorted(unknown)} in {value!r}")
        return EpsValue(parse_rational(value.get("c", 0)), parse_rational(value.get("e", 0)))
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ParseError(f"expected a (c, e) pair, got {value!r}")
        return EpsValue(parse_rational(value[0]), parse_rational(value[1]))
    if isinstance(value, str) and "eps" in value:
        m = _EPS_RE.match(value)
        if m is None or (m.group("c") is None and m.group("sign") is None):
            raise ParseError(f"not an eps value: {value!r}")
        c = parse_rational(m.group("c") or "0")
        e = Fraction(0)
        if m.group("sign") is not None:
            e = parse_rational(m.group("e") or "1")
            if m.group("sign") == "-":
                e = -e
        return EpsValue(c, e)
    return EpsValue(parse_rational(value), Fraction(0))


def add(x: EpsValue, y: EpsValue) -> EpsValue:
    return x + y


def compare(x: EpsValue, y: EpsValue) -> Ordering:
    kx, ky = (x.c, x.e), (y.c, y.e)
    if kx < ky:
        return Ordering.Less
    if kx > ky:
        return Ordering.Greater
    return Ordering.Equal


def limit_ratio(num: EpsValue, den: EpsValue) -> Fraction:
    """Limit of ``num / den`` as ``eps -> 0+``.

    Raises:
        DenominatorVanishes: if the constant part of ``den`` is zero.
    """
    if den.c == 0:
        raise DenominatorVanishes(f"limit of ({num}) / ({den}) is not a finite rational")
    return num.c / den.c
