"""Series for discrete laws with infinite support, with certified remainders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import MeasureKitError


@dataclass(frozen=True)
class SeriesResult:
    partial_sum: Fraction
    terms: int
    tail_bound: Fraction

    @property
    def lower(self) -> Fraction:
        return self.partial_sum

    @property
    def upper(self) -> Fraction:
        return self.partial_sum + self.tail_bound


def geometric_pmf(p, k: int) -> Fraction:
    """P(X = k) = p (1 - p)^(k - 1) for k >= 1."""
    p = Fraction(p)
    return p * (1 - p) ** (k - 1)


def geometric_mean_series(p, tol=Fraction(1, 10**12), max_terms: int = 100_000) -> SeriesResult:
    """Partial sums of sum_k k p (1-p)^(k-1) until a certified remainder bound is <= tol.

    Term ratios t_{k+1}/t_k = q (k+1)/k decrease in k, so for k >= n+1 they are at
    most r = q (n+2)/(n+1); once r < 1 the remainder is at most t_{n+1} / (1 - r).
    """
    p, tol = Fraction(p), Fraction(tol)
    if not 0 < p <= 1:
        raise MeasureKitError("p must lie in (0, 1]")
    q = 1 - p
    s = Fraction(0)
    term = p  # t_1
    for n in range(1, max_terms + 1):
        s += term
        nxt = term * q * (n + 1) / n  # t_{n+1}
        if q == 0:
            return SeriesResult(s, n, Fraction(0))
        r = q * (n + 2) / (n + 1)
        if r < 1:
            bound = nxt / (1 - r)
            if bound <= tol:
                return SeriesResult(s, n, bound)
        term = nxt
    raise MeasureKitError(f"tail bound above {tol} after {max_terms} terms")
