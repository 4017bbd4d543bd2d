"""Exact extended rationals.

``XValue`` is a rational number or one of ``+inf``/``-inf``, with the
arithmetic conventions used throughout measure theory:

* ``0 * (+-inf) = 0``
* ``inf + (-inf) = 0``   (and the flagged variant reports that this happened)
* ``a * inf = sgn(a) * inf`` for ``a != 0``

No floating point is used here; rationals are ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ParseError

__all__ = [
    "XValue",
    "xv",
    "add",
    "add_flagged",
    "mul",
    "pos_part",
    "neg_part",
    "xsum",
    "ZERO",
    "ONE",
    "INF",
    "NEG_INF",
]


class XValue:
    """An element of [-inf, inf] with a rational finite part."""

    __slots__ = ("_q", "_inf")

    def __init__(self, value=0, *, _inf: int = 0):
        if _inf:
            self._q = Fraction(0)
            self._inf = 1 if _inf > 0 else -1
            return
        if isinstance(value, XValue):
            self._q, self._inf = value._q, value._inf
            return
        if isinstance(value, bool) or not isinstance(value, (int, Rational)):
            raise TypeError(f"XValue needs an int or Fraction, got {type(value).__name__}")
        self._q = Fraction(value)
        self._inf = 0

    def __setattr__(self, name, value):
        if hasattr(self, "_inf") and name in self.__slots__:
            raise AttributeError("XValue is immutable")
        object.__setattr__(self, name, value)

    # -- inspection -------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def is_pos_inf(self) -> bool:
        return self._inf == 1

    @property
    def is_neg_inf(self) -> bool:
        return self._inf == -1

    @property
    def fraction(self) -> Fraction:
        if self._inf:
            raise ValueError(f"{self} has no finite value")
        return self._q

    def sign(self) -> int:
        if self._inf:
            return self._inf
        return (self._q > 0) - (self._q < 0)

    def _key(self):
        return (self._inf, self._q)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self._inf:
            return XValue(_inf=-self._inf)
        return XValue(-self._q)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_finite or other._q == 0:
            raise ZeroDivisionError("division only by finite nonzero values")
        if self._inf:
            return XValue(_inf=self._inf * (1 if other._q > 0 else -1))
        return XValue(self._q / other._q)

    def __abs__(self):
        if self._inf:
            return INF
        return XValue(abs(self._q))

    # -- ordering -----------------------------------------------------------
    def _cmp(self, other) -> int:
        if self._inf != other._inf:
            return (self._inf > other._inf) - (self._inf < other._inf)
        if self._inf:
            return 0
        return (self._q > other._q) - (self._q < other._q)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) == 0

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) >= 0

    def __hash__(self):
        if self._inf:
            return hash(("xv-inf", self._inf))
        return hash(self._q)

    def __bool__(self):
        return self._inf != 0 or self._q != 0

    def __float__(self):
        if self._inf:
            return float("inf") * self._inf
        return float(self._q)

    # -- text form ----------------------------------------------------------
    def __str__(self):
        if self._inf == 1:
            return "inf"
        if self._inf == -1:
            return "-inf"
        if self._q.denominator == 1:
            return str(self._q.numerator)
        return f"{self._q.numerator}/{self._q.denominator}"

    def __repr__(self):
        return f"XValue({str(self)!r})"

    @classmethod
    def parse(cls, text) -> "XValue":
        """Read ``"p/q"``, ``"p"``, ``"inf"``/``"+inf"``/``"-inf"`` (or an int)."""
        if isinstance(text, XValue):
            return text
        if isinstance(text, bool):
            raise ParseError(f"not a scalar: {text!r}")
        if isinstance(text, (int, Fraction)):
            return cls(text)
        if not isinstance(text, str):
            raise ParseError(f"not a scalar: {text!r}")
        s = text.strip().lower()
        if s in ("inf", "+inf", "infinity", "∞"):
            return INF
        if s in ("-inf", "-infinity", "-∞"):
            return NEG_INF
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a scalar: {text!r}") from exc
        if "." in s or "e" in s:
            raise ParseError(f"decimal literals are not exact scalars: {text!r}")
        return cls(q)


def _coerce(value):
    if isinstance(value, XValue):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Rational)):
        return XValue(value)
    return NotImplemented


def xv(value) -> XValue:
    """Build an XValue from an int, Fraction, XValue or scalar string."""
    if isinstance(value, str):
        return XValue.parse(value)
    return XValue(value)


def add_flagged(a: XValue, b: XValue) -> tuple[XValue, bool]:
    """Sum with a flag telling whether ``inf + (-inf) := 0`` was applied."""
    a, b = xv(a), xv(b)
    if a._inf and b._inf:
        if a._inf != b._inf:
            return ZERO, True
        return a, False
    if a._inf:
        return a, False
    if b._inf:
        return b, False
    return XValue(a._q + b._q), False


def add(a: XValue, b: XValue) -> XValue:
    return add_flagged(a, b)[0]


def mul(a: XValue, b: XValue) -> XValue:
    a, b = xv(a), xv(b)
    if a._inf or b._inf:
        s = a.sign() * b.sign()
        if s == 0:
            return ZERO
        return XValue(_inf=s)
    return XValue(a._q * b._q)


def pos_part(a: XValue) -> XValue:
    a = xv(a)
    return a if a.sign() > 0 else ZERO


def neg_part(a: XValue) -> XValue:
    a = xv(a)
    return -a if a.sign() < 0 else ZERO


def xsum(values) -> XValue:
    """Sum of nonnegative values (or values of one sign). Mixed infinities give 0."""
    total = ZERO
    for v in values:
        total = add(total, v)
    return total


ZERO = XValue(0)
ONE = XValue(1)
INF = XValue(_inf=1)
NEG_INF = XValue(_inf=-1)
