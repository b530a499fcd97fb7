"""Exact nonnegative rationals extended with infinity.

Scalars are plain :class:`fractions.Fraction` values or the singleton
:data:`INF`.  ``INF`` cooperates with the ordinary arithmetic operators,
so ``Fraction(0) * INF == 0`` and ``Fraction(1, 3) + INF is INF``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import ParseError

__all__ = [
    "INF", "ONE", "ZERO", "Scalar", "add", "mul", "star", "scalar",
    "parse_scalar", "format_scalar", "is_finite", "leq",
]


class _Infinity:
    """The top element of the semiring.  Use the module constant ``INF``."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Infinity, ())

    @staticmethod
    def _ok(other):
        return isinstance(other, (int, Fraction, _Infinity)) and not isinstance(other, bool)

    def __add__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if not self._ok(other):
            return NotImplemented
        # 0 * inf = 0: the zero measure stays zero on null sets
        if other == 0:
            return ZERO
        return self

    __rmul__ = __mul__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("pcoh.inf")

    def __lt__(self, other):
        if not self._ok(other):
            return NotImplemented
        return False

    def __le__(self, other):
        if not self._ok(other):
            return NotImplemented
        return other is self

    def __gt__(self, other):
        if not self._ok(other):
            return NotImplemented
        return other is not self

    def __ge__(self, other):
        if not self._ok(other):
            return NotImplemented
        return True

    def __bool__(self):
        return True

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()
ZERO = Fraction(0)
ONE = Fraction(1)

Scalar = Union[Fraction, _Infinity]


def scalar(value) -> Scalar:
    """Coerce ``value`` (int, Fraction, str or INF) into a Scalar.

    Floats are refused: every law in this package is an exact equality.
    """
    if value is INF:
        return INF
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"not an exact scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"scalars are nonnegative, got {value}")
        return value
    raise TypeError(f"not a scalar: {value!r}")


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    if a == 0 or b == 0:
        return ZERO
    return a * b


def star(a: Scalar) -> Scalar:
    """Sum of the geometric series 1 + a + a^2 + ...; ``INF`` once ``a >= 1``."""
    if a is INF or a >= 1:
        return INF
    return 1 / (1 - a)


def leq(a: Scalar, b: Scalar) -> bool:
    return a <= b


def is_finite(a: Scalar) -> bool:
    return a is not INF


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p"`` or ``"inf"``."""
    s = text.strip()
    if s == "inf":
        return INF
    num, sep, den = s.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise ParseError(f"bad scalar {text!r}")
    if sep and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def format_scalar(a: Scalar) -> str:
    if a is INF:
        return "inf"
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
