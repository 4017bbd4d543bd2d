"""Finite unions of real intervals plus finitely many isolated points.

Endpoints are ``Fraction`` or ``math.inf``/``-math.inf``. Every set is kept in
canonical form: sorted, pairwise disjoint, non-adjacent components, with
isolated points that touch no component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from ..errors import MeasureKitError, ParseError

INF = math.inf


def _endpoint(x):
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise MeasureKitError("finite endpoints must be rational, not float")
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf"):
            return INF
        if s == "-inf":
            return -INF
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad endpoint {x!r}") from exc
    return Fraction(x)


def fmt_endpoint(x) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    """One interval; ``lo == hi`` is allowed only for a closed point."""

    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = _endpoint(self.lo), _endpoint(self.hi)
        lo_c, hi_c = bool(self.lo_closed), bool(self.hi_closed)
        if lo == -INF:
            lo_c = False
        if hi == INF:
            hi_c = False
        if lo == INF or hi == -INF:
            raise MeasureKitError("interval endpoints are reversed at infinity")
        if lo > hi or (lo == hi and not (lo_c and hi_c)):
            raise MeasureKitError(f"empty or reversed interval ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lo_c)
        object.__setattr__(self, "hi_closed", hi_c)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self):
        if self.is_point:
            return "{" + fmt_endpoint(self.lo) + "}"
        return (
            ("[" if self.lo_closed else "(")
            + fmt_endpoint(self.lo)
            + ", "
            + fmt_endpoint(self.hi)
            + ("]" if self.hi_closed else ")")
        )

    def to_data(self) -> list:
        return [fmt_endpoint(self.lo), fmt_endpoint(self.hi), self.lo_closed, self.hi_closed]


def _sample_points(endpoints: list) -> list:
    """One test point per elementary piece: gaps and endpoints, left to right."""
    pts = []
    if not endpoints:
        return [("gap", Fraction(0), -INF, INF)]
    pts.append(("gap", endpoints[0] - 1, -INF, endpoints[0]))
    for i, e in enumerate(endpoints):
        pts.append(("pt", e, e, e))
        nxt = endpoints[i + 1] if i + 1 < len(endpoints) else None
        if nxt is None:
            pts.append(("gap", e + 1, e, INF))
        else:
            pts.append(("gap", (e + nxt) / 2, e, nxt))
    return pts


class IntervalSet:
    """Canonical finite union of intervals and isolated points."""

    __slots__ = ("components", "points")

    def __init__(self, intervals: Iterable[Interval] = (), points: Iterable = ()):
        ivs = [iv for iv in intervals]
        pts = [_endpoint(p) for p in points]
        for p in pts:
            if math.isinf(p):
                raise MeasureKitError("isolated points must be finite")
        comps, isolated = _canonicalize(lambda x: any(iv.contains(x) for iv in ivs) or x in pts, ivs, pts)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "points", isolated)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    # -- constructors --------------------------------------------------------
    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    @classmethod
    def real_line(cls) -> "IntervalSet":
        return cls([Interval(-INF, INF, False, False)])

    @classmethod
    def half_open(cls, a, b) -> "IntervalSet":
        """(a, b]"""
        a, b = _endpoint(a), _endpoint(b)
        if a >= b:
            return cls()
        return cls([Interval(a, b, False, True)])

    @classmethod
    def closed(cls, a, b) -> "IntervalSet":
        return cls([Interval(a, b, True, True)])

    @classmethod
    def open(cls, a, b) -> "IntervalSet":
        a, b = _endpoint(a), _endpoint(b)
        if a >= b:
            return cls()
        return cls([Interval(a, b, False, False)])

    @classmethod
    def point_set(cls, pts: Iterable) -> "IntervalSet":
        return cls((), pts)

    @classmethod
    def from_data(cls, data) -> "IntervalSet":
        """``{"intervals": [[lo, hi, lo_closed, hi_closed], ...], "points": [...]}``."""
        if isinstance(data, dict):
            ivs = data.get("intervals", [])
            pts = data.get("points", [])
        else:
            ivs, pts = data, []
        try:
            intervals = [Interval(_endpoint(i[0]), _endpoint(i[1]), bool(i[2]), bool(i[3])) for i in ivs]
        except (IndexError, TypeError) as exc:
            raise ParseError(f"bad interval list {ivs!r}") from exc
        return cls(intervals, [_endpoint(p) for p in pts])

    def to_data(self) -> dict:
        return {
            "intervals": [iv.to_data() for iv in self.components],
            "points": [fmt_endpoint(p) for p in self.points],
        }

    # -- queries -------------------------------------------------------------
    def contains(self, x) -> bool:
        return x in self.points or any(iv.contains(x) for iv in self.components)

    __contains__ = contains

    def is_empty(self) -> bool:
        return not self.components and not self.points

    def endpoints(self) -> list:
        es = set(self.points)
        for iv in self.components:
            for e in (iv.lo, iv.hi):
                if not math.isinf(e):
                    es.add(e)
        return sorted(es)

    def pieces(self) -> list[Interval]:
        """Components and isolated points as one sorted list of intervals."""
        out = list(self.components) + [Interval(p, p, True, True) for p in self.points]
        out.sort(key=lambda iv: (iv.lo, not iv.lo_closed))
        return out

    def is_bounded(self) -> bool:
        return all(not math.isinf(iv.lo) and not math.isinf(iv.hi) for iv in self.components)

    # -- algebra ---------------------------------------------------------------
    def _combine(self, other: "IntervalSet", op: Callable[[bool, bool], bool]) -> "IntervalSet":
        es = sorted(set(self.endpoints()) | set(other.endpoints()))
        return IntervalSet._from_membership(es, lambda x: op(self.contains(x), other.contains(x)))

    @staticmethod
    def _from_membership(endpoints: list, member: Callable) -> "IntervalSet":
        out = IntervalSet.__new__(IntervalSet)
        comps, pts = _rebuild(endpoints, member)
        object.__setattr__(out, "components", comps)
        object.__setattr__(out, "points", pts)
        return out

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a and not b)

    def symmetric_difference(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a != b)

    def complement(self) -> "IntervalSet":
        return IntervalSet._from_membership(self.endpoints(), lambda x: not self.contains(x))

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def issubset(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty()

    def closure(self) -> "IntervalSet":
        ivs = [Interval(iv.lo, iv.hi, True, True) for iv in self.components]
        return IntervalSet(ivs, self.points)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.components == other.components and self.points == other.points

    def __hash__(self):
        return hash((self.components, self.points))

    def __str__(self):
        if self.is_empty():
            return "∅"
        return " ∪ ".join(str(iv) for iv in self.pieces())

    def __repr__(self):
        return f"IntervalSet({self})"


def _canonicalize(member, ivs, pts):
    es = set(pts)
    for iv in ivs:
        for e in (iv.lo, iv.hi):
            if not math.isinf(e):
                es.add(e)
    return _rebuild(sorted(es), member)


def _rebuild(endpoints: list, member) -> tuple[tuple, tuple]:
    pieces = _sample_points(endpoints)
    flags = [member(p[1]) for p in pieces]
    comps, isolated = [], []
    i, n = 0, len(pieces)
    while i < n:
        if not flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and flags[j + 1]:
            j += 1
        first, last = pieces[i], pieces[j]
        if i == j and first[0] == "pt":
            isolated.append(first[1])
        else:
            lo = first[2]
            lo_closed = first[0] == "pt"
            hi = last[3]
            hi_closed = last[0] == "pt"
            comps.append(Interval(lo, hi, lo_closed, hi_closed))
        i = j + 1
    return tuple(comps), tuple(isolated)
