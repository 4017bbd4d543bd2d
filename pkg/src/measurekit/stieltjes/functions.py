"""Exponential-polynomial pieces ``p(x) * exp(rate * x)`` and piecewise functions.

``rate == 0`` gives a plain polynomial with rational coefficients, which is
integrated exactly. Any nonzero rate puts the piece in the numeric layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import IllDefinedIntegralError, MeasureKitError, ParseError
from .intervals import INF, Interval, IntervalSet, _endpoint, fmt_endpoint


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise MeasureKitError("coefficients must be rational")
    return Fraction(x)


@dataclass(frozen=True)
class ExpPoly:
    coeffs: tuple = (Fraction(0),)
    rate: Fraction = Fraction(0)

    def __post_init__(self):
        cs = [_frac(c) for c in self.coeffs] or [Fraction(0)]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "rate", _frac(self.rate))

    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls((c,))

    @classmethod
    def poly(cls, *coeffs) -> "ExpPoly":
        return cls(tuple(coeffs))

    @property
    def exact(self) -> bool:
        return self.rate == 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_constant(self) -> bool:
        return self.exact and self.degree == 0

    def poly_at(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        if self.exact:
            return self.poly_at(Fraction(x)) if not isinstance(x, float) else float(self.poly_at(Fraction(x)))
        xf = float(x)
        return sum(float(c) * xf**k for k, c in enumerate(self.coeffs)) * math.exp(float(self.rate) * xf)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExpPoly(tuple(out), self.rate + other.rate)

    def derivative_poly(self) -> tuple:
        return tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (Fraction(0),)

    def compose_affine(self, scale: Fraction, shift: Fraction) -> "ExpPoly":
        """x -> p(scale * x + shift) for exact pieces."""
        if not self.exact:
            raise MeasureKitError("affine substitution is only exact for polynomial pieces")
        out = [Fraction(0)]
        power = [Fraction(1)]
        for c in self.coeffs:
            for k, a in enumerate(power):
                if k >= len(out):
                    out.append(Fraction(0))
                out[k] += c * a
            nxt = [Fraction(0)] * (len(power) + 1)
            for k, a in enumerate(power):
                nxt[k] += a * shift
                nxt[k + 1] += a * scale
            power = nxt
        return ExpPoly(tuple(out))

    def scaled(self, c) -> "ExpPoly":
        return ExpPoly(tuple(a * _frac(c) for a in self.coeffs), self.rate)

    # -- integration -------------------------------------------------------------
    def antiderivative(self) -> tuple:
        """Coefficients of an exact antiderivative (polynomial pieces only)."""
        if not self.exact:
            raise MeasureKitError("exact antiderivative needs a polynomial piece")
        return (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs))

    def _tail_sign(self, at_plus: bool) -> int:
        """Sign of the integrand as x -> +inf (or -inf)."""
        lead = self.coeffs[-1]
        if lead == 0:
            return 0
        s = 1 if lead > 0 else -1
        if not at_plus and self.degree % 2:
            s = -s
        return s

    def integral(self, a, b):
        """Integral over (a, b); Fraction when exact and finite, else float (possibly +-inf)."""
        a, b = _endpoint(a), _endpoint(b)
        if a > b:
            return -self.integral(b, a)
        if a == b or self.is_zero():
            return Fraction(0)
        if self.exact:
            if math.isinf(a) or math.isinf(b):
                sgn_hi = self._tail_sign(True) if math.isinf(b) else 0
                sgn_lo = self._tail_sign(False) if math.isinf(a) else 0
                if sgn_hi and sgn_lo and sgn_hi != sgn_lo:
                    raise IllDefinedIntegralError("integral of a polynomial over R with mixed tails is undefined")
                return math.inf * (sgn_hi or sgn_lo)
            anti = self.antiderivative()
            F = ExpPoly(anti)
            return F.poly_at(b) - F.poly_at(a)
        return self._exp_integral(a, b)

    def _exp_integral(self, a, b) -> float:
        # antiderivative of p(x) e^{kx} is e^{kx} * sum_j (-1)^j p^(j)(x) / k^(j+1)
        k = self.rate
        derivs = [self.coeffs]
        for _ in range(self.degree):
            derivs.append(tuple(j * c for j, c in enumerate(derivs[-1]))[1:])
        terms = [tuple(c * (-1) ** j / k ** (j + 1) for c in d) for j, d in enumerate(derivs)]
        combined: list = []
        for t in terms:
            for i, c in enumerate(t):
                if i >= len(combined):
                    combined.append(Fraction(0))
                combined[i] += c
        q = ExpPoly(tuple(combined))

        def anti(x):
            if math.isinf(x):
                if (x > 0 and k < 0) or (x < 0 and k > 0):
                    return 0.0
                sgn = q._tail_sign(x > 0)
                return math.inf * sgn if sgn else 0.0
            return float(q.poly_at(x)) * math.exp(float(k) * float(x))

        return anti(b) - anti(a)

    def to_data(self) -> dict:
        d = {"coeffs": [fmt_endpoint(c) for c in self.coeffs]}
        if self.rate:
            d["rate"] = fmt_endpoint(self.rate)
        return d

    @classmethod
    def from_data(cls, data) -> "ExpPoly":
        try:
            return cls(tuple(Fraction(c) for c in data.get("coeffs", ["0"])), Fraction(data.get("rate", "0")))
        except (ValueError, ZeroDivisionError, AttributeError) as exc:
            raise ParseError(f"bad expression piece {data!r}") from exc


@dataclass(frozen=True)
class Segment:
    region: Interval
    expr: ExpPoly


class PiecewiseFunction:
    """Function equal to ``expr`` on each (disjoint) segment, 0 elsewhere."""

    def __init__(self, segments: Sequence[tuple]):
        segs = [Segment(r if isinstance(r, Interval) else Interval(*r), e) for r, e in segments]
        regions = [IntervalSet([s.region]) for s in segs]
        for i, a in enumerate(regions):
            for b in regions[i + 1 :]:
                if not a.intersection(b).is_empty():
                    raise MeasureKitError("segments of a piecewise function overlap")
        self.segments = tuple(segs)

    @classmethod
    def on(cls, lo, hi, expr: ExpPoly, lo_closed=True, hi_closed=True) -> "PiecewiseFunction":
        return cls([(Interval(lo, hi, lo_closed, hi_closed), expr)])

    @property
    def exact(self) -> bool:
        return all(s.expr.exact for s in self.segments)

    def __call__(self, x):
        for s in self.segments:
            if s.region.contains(x):
                return s.expr(x)
        return Fraction(0)

    def to_data(self) -> list:
        return [{"region": s.region.to_data(), **s.expr.to_data()} for s in self.segments]

    @classmethod
    def from_data(cls, data) -> "PiecewiseFunction":
        segs = []
        for d in data:
            r = d["region"]
            segs.append((Interval(_endpoint(r[0]), _endpoint(r[1]), bool(r[2]), bool(r[3])), ExpPoly.from_data(d)))
        return cls(segs)


__all__ = ["ExpPoly", "PiecewiseFunction", "Segment", "INF"]
