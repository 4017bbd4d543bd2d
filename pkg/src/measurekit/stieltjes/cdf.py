"""Lebesgue-Stieltjes measures from piecewise distribution-like functions.

A ``CDFSpec`` is a nondecreasing right-continuous F given by density pieces
between breakpoints plus point jumps. F is pinned by its value at an anchor
point; when the left tail has finite mass the default pins F(-inf) = 0.

Pieces with polynomial densities form the exact layer (``Fraction`` results);
exponential pieces are evaluated in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import IllDefinedIntegralError, MeasureKitError, NotDistributionError, ParseError
from ..numerics import INF as XINF, NEG_INF as XNEG_INF, XValue, xv
from .functions import ExpPoly, PiecewiseFunction
from .intervals import INF, Interval, IntervalSet, _endpoint, fmt_endpoint

NUMERIC_TOL = 1e-12


def _to_xvalue(v):
    if isinstance(v, float):
        if v == math.inf:
            return XINF
        if v == -math.inf:
            return XNEG_INF
        raise MeasureKitError("exact layer produced a float")
    return xv(v)


@dataclass(frozen=True)
class Piece:
    lo: object
    hi: object
    density: ExpPoly


class CDFSpec:
    """Piecewise specification of a nondecreasing right-continuous F."""

    def __init__(
        self,
        pieces: Sequence,
        jumps: dict | None = None,
        anchor_point=0,
        anchor_value=None,
    ):
        ps = []
        for p in pieces:
            if isinstance(p, Piece):
                ps.append(p)
            else:
                lo, hi, d = p
                ps.append(Piece(_endpoint(lo), _endpoint(hi), d if isinstance(d, ExpPoly) else ExpPoly.const(d)))
        if not ps:
            ps = [Piece(-INF, INF, ExpPoly.const(0))]
        ps = [Piece(_endpoint(p.lo), _endpoint(p.hi), p.density) for p in ps]
        if ps[0].lo != -INF or ps[-1].hi != INF:
            raise MeasureKitError("pieces must cover the whole real line")
        for a, b in zip(ps, ps[1:]):
            if a.hi != b.lo:
                raise MeasureKitError("pieces must be contiguous")
        for p in ps:
            if p.lo >= p.hi:
                raise MeasureKitError("empty piece")
            self._check_density(p)
        js = {}
        for x, j in (jumps or {}).items():
            x, j = _endpoint(x), Fraction(j)
            if math.isinf(x):
                raise MeasureKitError("jumps must sit at finite points")
            if j < 0:
                raise MeasureKitError("jumps must be nonnegative")
            if j:
                js[x] = j
        self.pieces = tuple(ps)
        self.jumps = dict(sorted(js.items()))
        self.anchor_point = Fraction(anchor_point)
        left = self._mass(-INF, self.anchor_point)
        if anchor_value is None:
            anchor_value = left if not (isinstance(left, float) and math.isinf(left)) else Fraction(0)
        self.anchor_value = anchor_value if isinstance(anchor_value, float) else Fraction(anchor_value)

    @staticmethod
    def _check_density(p: Piece):
        d = p.density
        if d.is_zero():
            return
        if (math.isinf(p.lo) or math.isinf(p.hi)) and d.exact and d.degree > 0:
            raise MeasureKitError("polynomial densities of positive degree need a bounded piece")
        lo = p.lo if not math.isinf(p.lo) else (p.hi - 64 if not math.isinf(p.hi) else Fraction(-64))
        hi = p.hi if not math.isinf(p.hi) else lo + 128
        for k in range(33):
            x = lo + (hi - lo) * Fraction(k, 32)
            v = d.poly_at(x)
            if v < 0:
                raise MeasureKitError(f"density is negative at {x}")

    # -- structure -----------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(p.density.exact for p in self.pieces)

    @property
    def breakpoints(self) -> list:
        return [p.lo for p in self.pieces[1:]]

    def events(self) -> list:
        return sorted(set(self.breakpoints) | set(self.jumps))

    def jump(self, x) -> Fraction:
        return self.jumps.get(Fraction(x), Fraction(0))

    def piece_at(self, x) -> Piece:
        for p in self.pieces:
            if p.lo < x < p.hi or (x == p.lo and p.lo == -INF):
                return p
        for p in self.pieces:
            if p.lo <= x < p.hi:
                return p
        return self.pieces[-1]

    def _density_integral(self, a, b):
        total = Fraction(0)
        for p in self.pieces:
            lo, hi = max(p.lo, a), min(p.hi, b)
            if lo < hi:
                total = total + p.density.integral(lo, hi)
        return total

    def _mass(self, a, b):
        """dF((a, b]) for a <= b (endpoints may be infinite)."""
        if a >= b:
            return Fraction(0)
        total = self._density_integral(a, b)
        for x, j in self.jumps.items():
            if a < x <= b:
                total = total + j
        return total

    # -- evaluation --------------------------------------------------------------
    def __call__(self, x):
        x = _endpoint(x)
        if x == INF:
            return self.limit_hi()
        if x == -INF:
            return self.limit_lo()
        ap = self.anchor_point
        if x >= ap:
            return self.anchor_value + self._mass(ap, x)
        return self.anchor_value - self._mass(x, ap)

    def left_limit(self, x):
        x = _endpoint(x)
        if math.isinf(x):
            return self(x)
        return self(x) - self.jump(x)

    def limit_hi(self):
        return self.anchor_value + self._mass(self.anchor_point, INF)

    def limit_lo(self):
        return self.anchor_value - self._mass(-INF, self.anchor_point)

    def total_mass(self):
        return self._mass(-INF, INF)

    def is_distribution(self) -> bool:
        lo, hi = self.limit_lo(), self.limit_hi()
        if self.exact:
            return lo == 0 and hi == 1
        return abs(float(lo)) <= NUMERIC_TOL and abs(float(hi) - 1) <= NUMERIC_TOL

    # -- serialization -------------------------------------------------------------
    def to_data(self) -> dict:
        d = {
            "pieces": [
                {"lo": fmt_endpoint(p.lo), "hi": fmt_endpoint(p.hi), **p.density.to_data()} for p in self.pieces
            ],
            "jumps": {fmt_endpoint(x): fmt_endpoint(j) for x, j in self.jumps.items()},
            "anchor_point": fmt_endpoint(self.anchor_point),
        }
        if not isinstance(self.anchor_value, float):
            d["anchor_value"] = fmt_endpoint(self.anchor_value)
        return d

    @classmethod
    def from_data(cls, data: dict) -> "CDFSpec":
        if not isinstance(data, dict):
            raise ParseError("CDF spec must be an object")
        kinds = {p.get("kind", "exppoly") for p in data.get("pieces", [])}
        unsupported = kinds - {"exppoly", "const", "poly", "exp"}
        if unsupported:
            raise ParseError(f"unsupported piece kinds {sorted(unsupported)}")
        try:
            pieces = [(p["lo"], p["hi"], ExpPoly.from_data(p)) for p in data.get("pieces", [])]
            return cls(
                pieces,
                data.get("jumps", {}),
                data.get("anchor_point", "0"),
                data.get("anchor_value"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad CDF spec: {exc}") from exc

    def __eq__(self, other):
        if not isinstance(other, CDFSpec):
            return NotImplemented
        return self.to_data() == other.to_data()

    def __repr__(self):
        return f"CDFSpec({self.to_data()!r})"


# -- standard laws -----------------------------------------------------------------


def lebesgue() -> CDFSpec:
    """F(x) = x."""
    return CDFSpec([(-INF, INF, ExpPoly.const(1))])


def uniform(a=0, b=1) -> CDFSpec:
    a, b = Fraction(a), Fraction(b)
    return CDFSpec([(-INF, a, ExpPoly.const(0)), (a, b, ExpPoly.const(1 / (b - a))), (b, INF, ExpPoly.const(0))])


def dirac(c=0) -> CDFSpec:
    return CDFSpec([], {Fraction(c): 1})


def discrete(masses: dict) -> CDFSpec:
    return CDFSpec([], masses)


def exponential(rate) -> CDFSpec:
    rate = Fraction(rate)
    return CDFSpec([(-INF, 0, ExpPoly.const(0)), (0, INF, ExpPoly((rate,), -rate))])


def from_density_pieces(pieces: Iterable, jumps: dict | None = None) -> CDFSpec:
    """Pieces given as (lo, hi, density) on a bounded region; zero outside."""
    pieces = sorted(((_endpoint(lo), _endpoint(hi), d) for lo, hi, d in pieces), key=lambda t: t[0])
    out = []
    cur = -INF
    for lo, hi, d in pieces:
        if lo > cur:
            out.append((cur, lo, ExpPoly.const(0)))
        elif lo < cur:
            raise MeasureKitError("density pieces overlap")
        out.append((lo, hi, d if isinstance(d, ExpPoly) else ExpPoly.const(d)))
        cur = hi
    if cur < INF:
        out.append((cur, INF, ExpPoly.const(0)))
    return CDFSpec(out, jumps)


# -- operations ----------------------------------------------------------------------


def eval_cdf(F: CDFSpec, x):
    return F(x)


def eval_left_limit(F: CDFSpec, x):
    return F.left_limit(x)


def _component_measure(F: CDFSpec, iv: Interval):
    if iv.is_point:
        return F.jump(iv.lo)
    m = F._mass(iv.lo, iv.hi)
    if iv.lo_closed:
        m = m + F.jump(iv.lo)
    if not iv.hi_closed and not math.isinf(iv.hi):
        m = m - F.jump(iv.hi)
    return m


def measure_set(F: CDFSpec, S: IntervalSet):
    """dF(S): XValue in the exact layer, float otherwise."""
    total = Fraction(0)
    for iv in S.pieces():
        total = total + _component_measure(F, iv)
    if isinstance(total, float) and math.isnan(total):
        raise MeasureKitError("measure evaluation produced inf - inf")
    if F.exact:
        return _to_xvalue(total)
    return float(total)


@dataclass(frozen=True)
class CDFClass:
    finite: bool
    probability: bool
    sigma_finite: bool
    mass: object


def classify_cdf(F: CDFSpec) -> CDFClass:
    """Every Stieltjes measure is sigma-finite; finite iff F is bounded."""
    mass = F.total_mass()
    finite = not (isinstance(mass, float) and math.isinf(mass))
    if F.exact:
        prob = mass == 1
    else:
        prob = finite and abs(float(mass) - 1) <= NUMERIC_TOL
    return CDFClass(finite, prob, True, _to_xvalue(mass) if F.exact else float(mass))


# -- generalized inverse --------------------------------------------------------------


def _solve_in_piece(F: CDFSpec, s, e, t):
    """Largest v in (s, e) with F(v) <= t, given F(s+) <= t < F(e-)."""
    d = F.piece_at(s if not math.isinf(s) else (e - 1 if not math.isinf(e) else Fraction(0))).density
    if d.is_constant():
        c = d.coeffs[0]
        if not math.isinf(e):
            return e - (F.left_limit(e) - t) / c
        ref = s if not math.isinf(s) else Fraction(0)
        return ref + (t - F(ref)) / c
    if not d.exact and d.degree == 0 and not math.isinf(s):
        # F(v) = F(s) + c/k (e^{kv} - e^{ks})
        c, k = float(d.coeffs[0]), float(d.rate)
        arg = math.exp(k * float(s)) + k * (float(t) - float(F(s))) / c
        if arg > 0:
            return math.log(arg) / k
    lo = s
    hi = e
    if math.isinf(lo):
        lo = (hi if not math.isinf(hi) else Fraction(0)) - 1
        while F(lo) > t:
            lo = lo * 2 - 1 if lo < 0 else lo - 1
    if math.isinf(hi):
        hi = lo + 1
        while F(hi) <= t:
            hi = hi * 2 + 1 if hi > 0 else hi + 1
    lo, hi = Fraction(lo), Fraction(hi)
    for _ in range(80):
        mid = (lo + hi) / 2
        if F(mid) <= t:
            lo = mid
        else:
            hi = mid
    if d.exact:
        guess = lo.limit_denominator(10**9)
        if F(guess) == t and all(F(guess + Fraction(1, 10**k)) > t for k in (12, 15)):
            return guess
    return float(lo)


def upper_inverse(F: CDFSpec, t):
    """inf{v : F(v) > t}; ``-inf`` if F > t everywhere, ``inf`` if never."""
    if F.limit_lo() > t:
        return -INF
    events = F.events()
    prev = -INF
    for e in events:
        if F.left_limit(e) > t:
            return _solve_in_piece(F, prev, e, t)
        if F(e) > t:
            return e
        prev = e
    if F.limit_hi() > t:
        return _solve_in_piece(F, prev, INF, t)
    return INF


def quantile(F: CDFSpec, u):
    """F<-(u) = inf{v : F(v) > u} for u in (0, 1)."""
    if not F.is_distribution():
        raise NotDistributionError("F is not a distribution function")
    if not isinstance(u, float):
        u = Fraction(u)
    if not 0 < u < 1:
        raise MeasureKitError("quantile level must lie in (0, 1)")
    return upper_inverse(F, u)


@dataclass
class InversePiece:
    """On u in (u0, u1): constant ``x0`` (a plateau of F<-) or x0 + (u - u0) / slope."""

    u0: Fraction
    u1: Fraction
    x0: Fraction
    slope: Fraction | None = None


def inverse_table(F: CDFSpec) -> list[InversePiece]:
    """Explicit piecewise description of F<- on (0, 1) for piecewise-linear F."""
    if not F.exact or any(p.density.degree > 0 for p in F.pieces):
        raise MeasureKitError("quantile push-forward check needs constant densities and jumps only")
    if not F.is_distribution():
        raise NotDistributionError("F is not a distribution function")
    out = []
    level = Fraction(0)
    for p in F.pieces:
        c = p.density.coeffs[0]
        cuts = [p.lo] + [x for x in F.jumps if p.lo < x < p.hi] + [p.hi]
        if p.lo in F.jumps and not math.isinf(p.lo):
            j = F.jumps[p.lo]
            out.append(InversePiece(level, level + j, p.lo))
            level += j
        for a, b in zip(cuts, cuts[1:]):
            if c > 0:
                if math.isinf(a) or math.isinf(b):
                    raise NotDistributionError("positive density on an unbounded piece")
                rise = c * (b - a)
                out.append(InversePiece(level, level + rise, a, c))
                level += rise
            if b in F.jumps and b < p.hi:
                j = F.jumps[b]
                out.append(InversePiece(level, level + j, b))
                level += j
    return out


def pushforward_of_uniform(table: list[InversePiece], a, b) -> Fraction:
    """leb{u in (0,1) : a < F<-(u) <= b} from the inverse table."""
    total = Fraction(0)
    for pc in table:
        if pc.slope is None:
            if a < pc.x0 <= b:
                total += pc.u1 - pc.u0
        else:
            x1 = pc.x0 + (pc.u1 - pc.u0) / pc.slope
            lo, hi = max(pc.x0, a), min(x1, b)
            if lo < hi:
                total += (hi - lo) * pc.slope
    return total


@dataclass
class PushforwardReport:
    intervals_checked: int
    mismatches: list

    @property
    def passed(self) -> bool:
        return not self.mismatches


def rational_grid(F: CDFSpec, extra: Iterable = ()) -> list[Fraction]:
    pts = set(F.events()) | {Fraction(x) for x in extra}
    pts = sorted(pts) or [Fraction(0)]
    grid = set(pts)
    for a, b in zip(pts, pts[1:]):
        grid.add((a + b) / 2)
        grid.add(a + (b - a) / 3)
    grid.add(pts[0] - 1)
    grid.add(pts[-1] + 1)
    return sorted(grid)


def quantile_pushforward_check(F: CDFSpec, grid: Iterable | None = None) -> PushforwardReport:
    """Compare leb_(0,1) o (F<-)^-1 with dF on every (a, b] from a rational grid."""
    table = inverse_table(F)
    pts = sorted(set(grid)) if grid is not None else rational_grid(F)
    mismatches = []
    n = 0
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            n += 1
            lhs = pushforward_of_uniform(table, a, b)
            rhs = F(b) - F(a)
            if lhs != rhs:
                mismatches.append((a, b, lhs, rhs))
    return PushforwardReport(n, mismatches)


# -- Stieltjes integration ----------------------------------------------------------------


def integrate_stieltjes(f: PiecewiseFunction, F: CDFSpec, epsrel: float = 1e-10):
    """Integral of f against dF.

    Exact (XValue) when f and all density pieces are polynomial; otherwise the
    absolutely continuous part uses adaptive quadrature and the result is a float.
    """
    exact = f.exact and F.exact
    pos, neg = Fraction(0), Fraction(0)
    acc = Fraction(0)
    for seg in f.segments:
        r = seg.region
        for p in F.pieces:
            lo, hi = max(p.lo, r.lo), min(p.hi, r.hi)
            if lo >= hi or p.density.is_zero() or seg.expr.is_zero():
                continue
            prod = seg.expr * p.density
            if exact or prod.exact:
                v = prod.integral(lo, hi)
            else:
                v = _quad(prod, lo, hi, epsrel)
            if isinstance(v, float) and math.isinf(v):
                if v > 0:
                    pos = math.inf
                else:
                    neg = math.inf
            else:
                acc = acc + v
        for x, j in F.jumps.items():
            if r.contains(x):
                acc = acc + seg.expr(x) * j
    if isinstance(pos, float) and isinstance(neg, float):
        raise IllDefinedIntegralError("integral has infinite positive and negative parts")
    if isinstance(pos, float):
        acc = math.inf
    elif isinstance(neg, float):
        acc = -math.inf
    if exact:
        return _to_xvalue(acc)
    return float(acc)


def _quad(expr: ExpPoly, lo, hi, epsrel: float) -> float:
    from scipy.integrate import quad

    a = -math.inf if lo == -INF else float(lo)
    b = math.inf if hi == INF else float(hi)
    val, _err = quad(lambda x: expr(x), a, b, epsabs=1e-15, epsrel=epsrel, limit=200)
    return val


def tail_integral(F: CDFSpec):
    """Integral over (0, inf) of 1 - F(y) dy, exact for piecewise-polynomial F."""
    if not F.exact:
        raise MeasureKitError("tail integral is implemented for the exact layer")
    cuts = sorted({Fraction(0)} | {e for e in F.events() if e > 0})
    total = Fraction(0)
    bounds = list(zip(cuts, cuts[1:])) + [(cuts[-1], INF)]
    for a, b in bounds:
        d = F.piece_at(a).density
        anti = ExpPoly(d.antiderivative())
        # on (a, b): F(y) = F(a) + anti(y) - anti(a)
        base = F(a) - anti.poly_at(a)
        one_minus = ExpPoly(tuple(-c for c in anti.coeffs)) if anti.coeffs else ExpPoly()
        one_minus = ExpPoly((one_minus.coeffs[0] + 1 - base,) + one_minus.coeffs[1:])
        v = one_minus.integral(a, b)
        if isinstance(v, float):
            return XINF if v > 0 else _to_xvalue(v)
        total += v
    return xv(total)


# -- monotone transport ------------------------------------------------------------------


class PiecewiseLinearMap:
    """Continuous strictly increasing piecewise-linear map given by knots."""

    def __init__(self, knots: Sequence, left_slope=None, right_slope=None):
        ks = [(Fraction(x), Fraction(y)) for x, y in knots]
        if not ks:
            raise MeasureKitError("need at least one knot")
        for (x1, y1), (x2, y2) in zip(ks, ks[1:]):
            if x2 <= x1 or y2 <= y1:
                raise MeasureKitError("map must be strictly increasing")
        slopes = [(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(ks, ks[1:])]
        self.knots = ks
        self.left_slope = Fraction(left_slope) if left_slope is not None else (slopes[0] if slopes else Fraction(1))
        self.right_slope = Fraction(right_slope) if right_slope is not None else (slopes[-1] if slopes else Fraction(1))
        if self.left_slope <= 0 or self.right_slope <= 0:
            raise MeasureKitError("map must be strictly increasing")

    @classmethod
    def affine(cls, slope, shift) -> "PiecewiseLinearMap":
        slope, shift = Fraction(slope), Fraction(shift)
        return cls([(0, shift), (1, shift + slope)])

    def segments(self):
        """(x_lo, x_hi, slope, intercept) covering R."""
        ks = self.knots
        out = []
        x0, y0 = ks[0]
        out.append((-INF, x0, self.left_slope, y0 - self.left_slope * x0))
        for (x1, y1), (x2, y2) in zip(ks, ks[1:]):
            s = (y2 - y1) / (x2 - x1)
            out.append((x1, x2, s, y1 - s * x1))
        xn, yn = ks[-1]
        out.append((xn, INF, self.right_slope, yn - self.right_slope * xn))
        return out

    def __call__(self, x):
        x = Fraction(x)
        for lo, hi, s, c in self.segments():
            if lo <= x <= hi:
                return s * x + c
        raise AssertionError("unreachable")

    def inverse(self, y):
        y = Fraction(y)
        for lo, hi, s, c in self.segments():
            ylo = -INF if math.isinf(lo) else s * lo + c
            yhi = INF if math.isinf(hi) else s * hi + c
            if ylo <= y <= yhi:
                return (y - c) / s
        raise AssertionError("unreachable")


def pushforward_monotone(F: CDFSpec, G: PiecewiseLinearMap) -> CDFSpec:
    """CDF of the image of dF under G; image density is f(G^-1(y)) / G'(G^-1(y))."""
    if not F.exact:
        raise MeasureKitError("monotone push-forward is implemented for the exact layer")
    pieces = []
    for p in F.pieces:
        for lo, hi, s, c in G.segments():
            a, b = max(p.lo, lo), min(p.hi, hi)
            if a >= b:
                continue
            ya = -INF if math.isinf(a) else s * a + c
            yb = INF if math.isinf(b) else s * b + c
            # x = (y - c) / s
            dens = p.density.compose_affine(1 / s, -c / s).scaled(1 / s)
            pieces.append((ya, yb, dens))
    pieces = _merge_pieces(pieces)
    jumps = {G(x): j for x, j in F.jumps.items()}
    ap = G(F.anchor_point)
    return CDFSpec(pieces, jumps, ap, F.anchor_value)


def _merge_pieces(pieces):
    out = []
    for lo, hi, d in pieces:
        if out and out[-1][2] == d and out[-1][1] == lo:
            out[-1] = (out[-1][0], hi, d)
        else:
            out.append((lo, hi, d))
    return out


def same_increments(F: CDFSpec, G: CDFSpec, grid: Iterable) -> bool:
    """F(b) - F(a) == G(b) - G(a) for all grid pairs."""
    pts = sorted(set(grid))
    return all(F(b) - F(a) == G(b) - G(a) for i, a in enumerate(pts) for b in pts[i + 1 :])
