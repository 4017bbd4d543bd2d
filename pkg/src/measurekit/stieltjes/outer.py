"""Outer measures over the half-open interval algebra and Caratheodory splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..errors import MeasureKitError
from ..numerics import XValue, xv
from .cdf import CDFSpec, NUMERIC_TOL, _to_xvalue, upper_inverse
from .intervals import INF, Interval, IntervalSet


def _norm(F: CDFSpec, v):
    return _to_xvalue(v) if F.exact else float(v)


class Premeasure:
    """nu((a, b]) = F(b) - F(a) on finite disjoint unions of half-open intervals."""

    def __init__(self, cdf: CDFSpec):
        self.cdf = cdf

    @staticmethod
    def in_algebra(S: IntervalSet) -> bool:
        if S.points:
            return False
        return all(not iv.lo_closed and (iv.hi_closed or iv.hi == INF) for iv in S.components)

    def value(self, S: IntervalSet):
        if not self.in_algebra(S):
            raise MeasureKitError(f"{S} is not a finite union of half-open intervals (a, b]")
        F = self.cdf
        total = Fraction(0)
        for iv in S.components:
            total = total + (F(iv.hi) - F(iv.lo))
        return _norm(F, total)

    __call__ = value


@dataclass(frozen=True)
class CoverMember:
    """(lo - shift, hi] when ``countable_hi`` is false, else the increasing union of (lo - shift, hi - d] as d -> 0.

    ``closed_lo`` records that lo itself must be covered, so shift must stay positive.
    """

    lo: object
    hi: object
    shift: object
    countable_hi: bool
    closed_lo: bool = False

    def describe(self) -> str:
        from .intervals import fmt_endpoint

        left = fmt_endpoint(self.lo) if not self.shift else f"{fmt_endpoint(self.lo)}-{fmt_endpoint(self.shift)}"
        right = f"{fmt_endpoint(self.hi)}-" if self.countable_hi else fmt_endpoint(self.hi)
        return f"({left}, {right}]"


def canonical_cover(S: IntervalSet, eps) -> list[CoverMember]:
    """Cover of S by algebra members whose total cost tends to the outer measure as eps -> 0.

    A closed left endpoint a is covered by shifting the left end to a - eps;
    an open finite right end b uses the countable union of (lo, b - d].
    """
    eps = Fraction(eps)
    out = []
    for iv in S.pieces():
        shift = eps if iv.lo_closed else Fraction(0)
        countable = (not iv.hi_closed) and not math.isinf(iv.hi)
        out.append(CoverMember(iv.lo, iv.hi, shift, countable, iv.lo_closed))
    return out


def cover_cost(nu: Premeasure, cover: Iterable[CoverMember]):
    """Total premeasure of a cover; countable members cost their limit F(hi-) - F(lo)."""
    F = nu.cdf
    total = Fraction(0)
    for m in cover:
        lo = m.lo - m.shift if not math.isinf(m.lo) else m.lo
        top = F.left_limit(m.hi) if m.countable_hi else F(m.hi)
        total = total + (top - F(lo))
    return _norm(F, total)


def outer_measure(nu: Premeasure, S: IntervalSet):
    """inf of cover costs: the eps -> 0 limit of the canonical cover cost.

    Shifting a closed left end a to a - eps costs F(a) - F(a - eps), which
    decreases to the jump F(a) - F(a-); so the infimum replaces F(a - eps) by F(a-).
    """
    F = nu.cdf
    total = Fraction(0)
    for m in canonical_cover(S, 0):
        top = F.left_limit(m.hi) if m.countable_hi else F(m.hi)
        bottom = F.left_limit(m.lo) if m.closed_lo else F(m.lo)
        total = total + (top - bottom)
    return _norm(F, total)


@dataclass
class SplitCheck:
    test: IntervalSet
    whole: object
    inside: object
    outside: object
    passed: bool


@dataclass
class CaratheodoryReport:
    E: IntervalSet
    checks: list = field(default_factory=list)
    provenance: str = "exact"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def caratheodory_measurable(nu: Premeasure, E: IntervalSet, tests: Iterable[IntervalSet]) -> CaratheodoryReport:
    """Check outer(A) == outer(A & E) + outer(A - E) for every test A."""
    exact = nu.cdf.exact
    rep = CaratheodoryReport(E, provenance="exact" if exact else f"tolerance {NUMERIC_TOL:g}")
    for A in tests:
        whole = outer_measure(nu, A)
        inside = outer_measure(nu, A & E)
        outside = outer_measure(nu, A - E)
        if exact:
            ok = whole == inside + outside
        else:
            s = inside + outside
            ok = (math.isinf(whole) and whole == s) or abs(whole - s) <= NUMERIC_TOL * max(1.0, abs(whole))
        rep.checks.append(SplitCheck(A, whole, inside, outside, ok))
    return rep


@dataclass
class RegularityWitness:
    A: IntervalSet
    B: IntervalSet
    gap: object
    eps: Fraction
    passed: bool
    note: str = ""


@dataclass
class RegularityReport:
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(w.passed for w in self.witnesses)


def _shrink_point(F: CDFSpec, a: Fraction, b, budget: Fraction) -> Fraction:
    """Some x in (a, b) with F(x) - F(a) <= budget, using right-continuity at a."""
    t = F(a) + budget
    x = upper_inverse(F, t)
    if isinstance(x, float) and not math.isinf(x):
        x = Fraction(x)
    if x == INF or x >= b:
        x = (a + b) / 2 if b != INF else a + 1
    elif F(x) > t:
        # a jump sits at x; any point strictly between a and x stays below it
        x = (a + x) / 2
    if x <= a:
        raise MeasureKitError(f"cannot shrink (a, b] at a={a}: F is not right-continuous there")
    while F(x) - F(a) > budget:
        x = (a + x) / 2
        if x - a < Fraction(1, 10**30):
            raise MeasureKitError(f"cannot shrink (a, b] at a={a}")
    return x


def compact_regularity_check(nu: Premeasure, samples: Iterable[IntervalSet], eps) -> RegularityReport:
    """For each sample A in the algebra on [0, 1] build B with closure(B) inside A and nu(A - B) <= eps."""
    eps = Fraction(eps)
    F = nu.cdf
    unit = IntervalSet.closed(0, 1)
    rep = RegularityReport()
    for A in samples:
        if not nu.in_algebra(A) or not A.issubset(unit):
            raise MeasureKitError(f"{A} is not an algebra member inside [0, 1]")
        comps = A.components
        if not comps:
            rep.witnesses.append(RegularityWitness(A, A, _norm(F, Fraction(0)), eps, True))
            continue
        budget = eps / len(comps)
        B = []
        notes = []
        for iv in comps:
            x = _shrink_point(F, iv.lo, iv.hi, budget)
            B.append(Interval(x, iv.hi, False, True))
            right = upper_inverse(F, F(iv.lo) + budget)
            if not isinstance(right, float) and right < iv.hi and F.jump(right):
                notes.append(f"shrunk below jump at {right}")
        Bset = IntervalSet(B)
        gap = nu.value(A - Bset) if nu.in_algebra(A - Bset) else outer_measure(nu, A - Bset)
        ok = Bset.closure().issubset(A) and (gap <= eps if F.exact else float(gap) <= float(eps) + NUMERIC_TOL)
        rep.witnesses.append(RegularityWitness(A, Bset, gap, eps, ok, "; ".join(notes)))
    return rep


__all__ = [
    "Premeasure",
    "CoverMember",
    "canonical_cover",
    "cover_cost",
    "outer_measure",
    "caratheodory_measurable",
    "compact_regularity_check",
    "CaratheodoryReport",
    "RegularityReport",
]
