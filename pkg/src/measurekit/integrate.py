"""Lebesgue integration on finite measure spaces.

Functions are ``NumFn`` tables, one extended-rational value per atom (a
function on a finite space is measurable iff it is constant on atoms).
Integrals follow the usual conventions: the positive and negative parts are
integrated separately and the integral is well defined when at least one of
them is finite. An ill-defined integral reports ``well_defined=False`` and
the convention value 0 rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, log2
from typing import Callable, Iterable, Sequence

from .errors import (
    AbsoluteContinuityError,
    IllDefinedIntegralError,
    MeasureKitError,
    NotMeasurableError,
    PremiseError,
    SigmaFiniteError,
    SpaceMismatchError,
)
from .measure import MeasureTable, classify, evaluate
from .numerics import INF, NEG_INF, ONE, ZERO, XValue, add, add_flagged, mul, neg_part, pos_part, xsum, xv
from .setalg import GroundSet, SigmaField

DEFAULT_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class NumFn:
    """Extended-real function constant on the atoms of ``space``."""

    space: SigmaField
    values: tuple

    def __init__(self, space: SigmaField, values: Sequence):
        vals = tuple(xv(v) for v in values)
        if len(vals) != len(space.atoms):
            raise MeasureKitError(f"{len(vals)} values for {len(space.atoms)} atoms")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_points(cls, space: SigmaField, values: dict | Callable) -> "NumFn":
        """Build from per-point values; raises if they are not constant on atoms."""
        get = values if callable(values) else values.__getitem__
        out = []
        for atom in space.atoms:
            vs = {xv(get(x)) for x in atom}
            if len(vs) != 1:
                raise NotMeasurableError("function is not constant on an atom", witness=atom)
            out.append(vs.pop())
        return cls(space, out)

    @classmethod
    def constant(cls, space: SigmaField, c) -> "NumFn":
        return cls(space, [c] * len(space.atoms))

    @classmethod
    def indicator(cls, space: SigmaField, subset) -> "NumFn":
        idx = set(space.atoms_in(subset))
        return cls(space, [ONE if i in idx else ZERO for i in range(len(space.atoms))])

    def at(self, x) -> XValue:
        return self.values[self.space.atom_index(x)]

    def __call__(self, x) -> XValue:
        return self.at(x)

    def items(self):
        return zip(self.space.atoms, self.values)

    def _check(self, other: "NumFn"):
        if self.space != other.space:
            raise SpaceMismatchError("functions live on different spaces")

    def map(self, fn: Callable[[XValue], XValue]) -> "NumFn":
        return NumFn(self.space, [fn(v) for v in self.values])

    def __add__(self, other):
        if isinstance(other, NumFn):
            self._check(other)
            return NumFn(self.space, [add(a, b) for a, b in zip(self.values, other.values)])
        return self.map(lambda v: add(v, xv(other)))

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        return self + (-other if isinstance(other, NumFn) else -xv(other))

    def __mul__(self, other):
        if isinstance(other, NumFn):
            self._check(other)
            return NumFn(self.space, [mul(a, b) for a, b in zip(self.values, other.values)])
        return self.map(lambda v: mul(v, xv(other)))

    __rmul__ = __mul__

    def __abs__(self):
        return self.map(abs)

    def pos(self) -> "NumFn":
        return self.map(pos_part)

    def neg(self) -> "NumFn":
        return self.map(neg_part)

    def minimum(self, other: "NumFn") -> "NumFn":
        self._check(other)
        return NumFn(self.space, [min(a, b) for a, b in zip(self.values, other.values)])

    def maximum(self, other: "NumFn") -> "NumFn":
        self._check(other)
        return NumFn(self.space, [max(a, b) for a, b in zip(self.values, other.values)])

    def le(self, other: "NumFn") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    def lift(self, finer: SigmaField) -> "NumFn":
        """Same function viewed on a finer sigma-field."""
        if not finer.refines(self.space):
            raise NotMeasurableError("target sigma-field does not refine the function's space")
        return NumFn.from_points(finer, self.at)


@dataclass(frozen=True)
class IntegralResult:
    value: XValue
    well_defined: bool
    pos_part_integral: XValue
    neg_part_integral: XValue

    @property
    def integrable(self) -> bool:
        return self.pos_part_integral.is_finite and self.neg_part_integral.is_finite


def _same_space(f: NumFn, mu: MeasureTable):
    if f.space != mu.space:
        raise SpaceMismatchError("function and measure live on different spaces")


def integrate(f: NumFn, mu: MeasureTable, over=None) -> IntegralResult:
    """Integral of ``f`` against ``mu`` (optionally over a measurable set)."""
    _same_space(f, mu)
    idx = range(len(mu.weights)) if over is None else mu.space.atoms_in(over)
    pos = xsum(mul(pos_part(f.values[i]), mu.weights[i]) for i in idx)
    neg = xsum(mul(neg_part(f.values[i]), mu.weights[i]) for i in idx)
    if not pos.is_finite and not neg.is_finite:
        return IntegralResult(ZERO, False, pos, neg)
    return IntegralResult(add(pos, -neg), True, pos, neg)


def integral_value(f: NumFn, mu: MeasureTable, over=None) -> XValue:
    """Like ``integrate`` but raises on an ill-defined integral."""
    r = integrate(f, mu, over)
    if not r.well_defined:
        raise IllDefinedIntegralError("both parts of the integral are infinite")
    return r.value


def simple_approx(f: NumFn, n: int) -> NumFn:
    """``(2^-n floor(2^n f)) min n``, with floor(inf) = inf."""
    if n < 1:
        raise MeasureKitError("n must be a positive integer")
    if not f.is_nonnegative():
        raise MeasureKitError("simple_approx needs a nonnegative function")
    cap = Fraction(n)
    out = []
    for v in f.values:
        if not v.is_finite:
            out.append(xv(cap))
        else:
            scaled = Fraction(floor(v.fraction * 2**n), 2**n)
            out.append(xv(min(scaled, cap)))
    return NumFn(f.space, out)


def indefinite(f: NumFn, mu: MeasureTable) -> MeasureTable:
    """The measure A -> integral of f over A."""
    _same_space(f, mu)
    if not f.is_nonnegative():
        raise MeasureKitError("indefinite integral needs a nonnegative function")
    return MeasureTable(mu.space, [mul(v, w) for v, w in zip(f.values, mu.weights)])


def is_absolutely_continuous(mu: MeasureTable, nu: MeasureTable) -> bool:
    """mu << nu."""
    return _ac_witness(mu, nu) is None


def _ac_witness(mu: MeasureTable, nu: MeasureTable):
    if mu.space != nu.space:
        raise SpaceMismatchError("measures live on different spaces")
    for a, wm, wn in zip(mu.space.atoms, mu.weights, nu.weights):
        if wn == ZERO and wm > 0:
            return a
    return None


def radon_nikodym(mu: MeasureTable, nu: MeasureTable) -> NumFn:
    """d(mu)/d(nu): per-atom weight ratio, 0 on nu-null atoms."""
    for name, m in (("mu", mu), ("nu", nu)):
        if not classify(m).sigma_finite:
            bad = next(a for a, w in m.items() if not w.is_finite)
            raise SigmaFiniteError(f"{name} is not sigma-finite", witness=bad)
    witness = _ac_witness(mu, nu)
    if witness is not None:
        raise AbsoluteContinuityError("mu is not absolutely continuous w.r.t. nu", witness=witness)
    return NumFn(mu.space, [ZERO if wn == ZERO else wm / wn for wm, wn in zip(mu.weights, nu.weights)])


def epsilon_delta(mu: MeasureTable, nu: MeasureTable, eps) -> XValue:
    """A delta with nu(A) <= delta  =>  mu(A) <= eps, for finite mu << nu.

    Uses delta = eps / (largest density value on atoms of finite positive nu-weight).
    """
    eps = xv(eps)
    if not (eps > 0 and eps.is_finite):
        raise MeasureKitError("eps must be a positive rational")
    if not classify(mu).finite:
        raise PremiseError("mu must be finite")
    witness = _ac_witness(mu, nu)
    if witness is not None:
        raise AbsoluteContinuityError("mu is not absolutely continuous w.r.t. nu", witness=witness)
    ratios = [wm / wn for wm, wn in zip(mu.weights, nu.weights) if wn > 0 and wn.is_finite]
    top = max(ratios, default=ZERO)
    if top == ZERO:
        return eps
    return eps / top


def verify_epsilon_delta(mu: MeasureTable, nu: MeasureTable, eps, delta) -> frozenset | None:
    """Exhaustive check; returns a violating set or None."""
    eps, delta = xv(eps), xv(delta)
    for s in mu.space.members():
        if evaluate(nu, s) <= delta and evaluate(mu, s) > eps:
            return s
    return None


# -- L^p -------------------------------------------------------------------


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_bracket(x: Fraction, k: int, width: Fraction = DEFAULT_WIDTH) -> tuple[Fraction, Fraction]:
    """Rationals lo <= x**(1/k) <= hi with hi - lo <= width; lo == hi when exact."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("root of a negative number")
    if k == 1 or x == 0:
        return x, x
    rn, rd = iroot(x.numerator, k), iroot(x.denominator, k)
    if rn**k == x.numerator and rd**k == x.denominator:
        r = Fraction(rn, rd)
        return r, r
    s = max(1, ceil(log2(1 / width)) + 1)
    lo_int = iroot((x.numerator << (s * k)) // x.denominator, k)
    return Fraction(lo_int, 1 << s), Fraction(lo_int + 1, 1 << s)


@dataclass(frozen=True)
class LpNorm:
    """A seminorm value: exact (``value`` set) or bracketed in [lo, hi]."""

    p: XValue
    lo: XValue
    hi: XValue
    power_integral: XValue | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> XValue | None:
        return self.lo if self.exact else None

    @property
    def is_finite(self) -> bool:
        return self.hi.is_finite

    def __float__(self):
        if self.exact:
            return float(self.lo)
        return float((self.lo.fraction + self.hi.fraction) / 2)

    def __str__(self):
        if self.exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def _parse_p(p) -> XValue:
    if isinstance(p, float) and p == float("inf"):
        return INF
    p = xv(p)
    if p < 1:
        raise MeasureKitError("p must be at least 1")
    return p


def lp_seminorm(f: NumFn, mu: MeasureTable, p, width: Fraction = DEFAULT_WIDTH) -> LpNorm:
    """||f||_p; essential supremum for p = inf."""
    _same_space(f, mu)
    p = _parse_p(p)
    pairs = list(zip((abs(v) for v in f.values), mu.weights))
    if not p.is_finite:
        top = max((a for a, w in pairs if w > 0), default=ZERO)
        return LpNorm(p, top, top)
    if any(a > 0 and w > 0 and not (a.is_finite and w.is_finite) for a, w in pairs):
        return LpNorm(p, INF, INF, INF)
    pairs = [(a.fraction, w.fraction) for a, w in pairs if a > 0 and w > 0]
    pq = p.fraction
    if pq.denominator == 1:
        s = sum((a ** pq.numerator * w for a, w in pairs), Fraction(0))
        lo, hi = root_bracket(s, pq.numerator, width)
        return LpNorm(p, xv(lo), xv(hi), xv(s))
    num, den = pq.numerator, pq.denominator
    w_inner = width
    for _ in range(8):
        w_inner = w_inner / 1024
        s_lo = s_hi = Fraction(0)
        for a, w in pairs:
            lo, hi = root_bracket(a**num, den, w_inner)
            s_lo += lo * w
            s_hi += hi * w
        lo = root_bracket(s_lo**den, num, w_inner)[0]
        hi = root_bracket(s_hi**den, num, w_inner)[1]
        if hi - lo <= width:
            break
    power = xv(s_lo) if s_lo == s_hi else None
    return LpNorm(p, xv(lo), xv(hi), power)


# -- inequalities ------------------------------------------------------------


@dataclass
class ConvexSpec:
    """A rational-valued convex function on an open interval.

    kind: ``"square"``, ``"abs"``, ``"reciprocal"`` (1/x on (0, inf)),
    ``"power"`` (x**n, n even) or ``"piecewise"`` (continuous piecewise linear
    with nondecreasing slopes).
    """

    kind: str
    degree: int = 2
    breakpoints: tuple = ()
    slopes: tuple = ()
    value_at_zero: Fraction = Fraction(0)
    lower: Fraction | None = None
    upper: Fraction | None = None

    def __post_init__(self):
        if self.kind == "reciprocal":
            self.lower = Fraction(0) if self.lower is None else max(Fraction(self.lower), Fraction(0))
        if self.kind == "power" and (self.degree < 2 or self.degree % 2):
            raise MeasureKitError("power convex specs need an even degree >= 2")
        if self.kind == "piecewise":
            bps = tuple(Fraction(b) for b in self.breakpoints)
            sl = tuple(Fraction(s) for s in self.slopes)
            if len(sl) != len(bps) + 1:
                raise MeasureKitError("piecewise spec needs len(slopes) == len(breakpoints) + 1")
            if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
                raise MeasureKitError("breakpoints must increase")
            if any(s2 < s1 for s1, s2 in zip(sl, sl[1:])):
                raise MeasureKitError("slopes must be nondecreasing for convexity")
            self.breakpoints, self.slopes = bps, sl
            self.value_at_zero = Fraction(self.value_at_zero)
        elif self.kind not in ("square", "abs", "reciprocal", "power"):
            raise MeasureKitError(f"unknown convex kind {self.kind!r}")

    @property
    def strictly_convex(self) -> bool:
        return self.kind in ("square", "reciprocal", "power")

    def in_domain(self, x: XValue) -> bool:
        if not x.is_finite:
            return False
        q = x.fraction
        if self.lower is not None and q <= self.lower:
            return False
        if self.upper is not None and q >= self.upper:
            return False
        return True

    def __call__(self, x) -> XValue:
        x = xv(x)
        if not self.in_domain(x):
            raise MeasureKitError(f"{x} is outside the open domain of the convex function")
        q = x.fraction
        if self.kind == "square":
            return xv(q * q)
        if self.kind == "power":
            return xv(q**self.degree)
        if self.kind == "abs":
            return xv(abs(q))
        if self.kind == "reciprocal":
            return xv(1 / q)
        return xv(self._piecewise(q))

    def _piecewise(self, q: Fraction) -> Fraction:
        # integrate the slope function from 0 to q
        def slope_at(t: Fraction) -> Fraction:
            i = sum(1 for b in self.breakpoints if b <= t)
            return self.slopes[i]

        cuts = sorted({Fraction(0), q, *[b for b in self.breakpoints if min(0, q) < b < max(0, q)]})
        total = Fraction(0)
        for a, b in zip(cuts, cuts[1:]):
            total += slope_at((a + b) / 2) * (b - a)
        return self.value_at_zero + (total if q >= 0 else -total)


@dataclass
class InequalityCheck:
    name: str
    status: str  # "pass", "fail" or "premise"
    lhs: str = ""
    rhs: str = ""
    equality: bool | None = None
    provenance: str = "exact"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equality": self.equality,
            "provenance": self.provenance,
            "note": self.note,
        }


def markov_check(f: NumFn, mu: MeasureTable, a) -> InequalityCheck:
    a = xv(a)
    over = frozenset().union(*(atom for atom, v in f.items() if v >= a))
    left = integrate(f, mu, over)
    if not left.well_defined:
        return InequalityCheck("markov", "premise", note="integral of f over {f >= a} is ill-defined")
    right = mul(a, evaluate(mu, over))
    return InequalityCheck(
        "markov", "pass" if left.value >= right else "fail", str(left.value), str(right), left.value == right
    )


def _compare_brackets(lhs: LpNorm | XValue, rhs_lo: XValue, rhs_hi: XValue):
    lo = lhs.lo if isinstance(lhs, LpNorm) else lhs
    hi = lhs.hi if isinstance(lhs, LpNorm) else lhs
    if hi <= rhs_lo:
        return True
    if lo > rhs_hi:
        return False
    return None


def holder_check(f: NumFn, g: NumFn, mu: MeasureTable, p, q) -> InequalityCheck:
    p, q = _parse_p(p), _parse_p(q)
    inv = lambda t: ZERO if not t.is_finite else ONE / t  # noqa: E731
    if inv(p) + inv(q) != ONE:
        return InequalityCheck("holder", "premise", note="1/p + 1/q must equal 1")
    lhs = lp_seminorm(f * g, mu, 1).lo
    nf, ng = lp_seminorm(f, mu, p), lp_seminorm(g, mu, q)
    if nf.exact and ng.exact:
        rhs = mul(nf.lo, ng.lo)
        return InequalityCheck("holder", "pass" if lhs <= rhs else "fail", str(lhs), str(rhs), lhs == rhs)
    if p == 2 and q == 2:
        # compare squares: lhs^2 <= (int f^2)(int g^2)
        sq = mul(nf.power_integral, ng.power_integral)
        lsq = mul(lhs, lhs)
        return InequalityCheck(
            "holder", "pass" if lsq <= sq else "fail", f"({lhs})^2 = {lsq}", str(sq), lsq == sq,
            note="compared in the squared domain",
        )
    rlo, rhi = mul(nf.lo, ng.lo), mul(nf.hi, ng.hi)
    verdict = _compare_brackets(lhs, rlo, rhi)
    return InequalityCheck(
        "holder", "fail" if verdict is False else "pass", str(lhs), f"[{rlo}, {rhi}]", None,
        provenance="tolerance",
    )


def _sum_has_convention(f: NumFn, g: NumFn, mu: MeasureTable) -> bool:
    return any(add_flagged(a, b)[1] and w > 0 for a, b, w in zip(f.values, g.values, mu.weights))


def minkowski_check(f: NumFn, g: NumFn, mu: MeasureTable, p) -> InequalityCheck:
    p = _parse_p(p)
    if _sum_has_convention(f, g, mu):
        return InequalityCheck("minkowski", "premise", note="f + g hits inf - inf on a non-null atom")
    ns, nf, ng = lp_seminorm(f + g, mu, p), lp_seminorm(f, mu, p), lp_seminorm(g, mu, p)
    if ns.exact and nf.exact and ng.exact:
        rhs = nf.lo + ng.lo
        return InequalityCheck("minkowski", "pass" if ns.lo <= rhs else "fail", str(ns.lo), str(rhs), ns.lo == rhs)
    if p == 2:
        c, a, b = ns.power_integral, nf.power_integral, ng.power_integral
        d = c - a - b
        if d <= 0:
            ok, eq = True, False
        else:
            four_ab = mul(xv(4), mul(a, b))
            ok, eq = mul(d, d) <= four_ab, mul(d, d) == four_ab
        return InequalityCheck(
            "minkowski", "pass" if ok else "fail", f"sqrt({c})", f"sqrt({a}) + sqrt({b})", eq,
            note="compared in the squared domain",
        )
    verdict = _compare_brackets(ns, nf.lo + ng.lo, nf.hi + ng.hi)
    return InequalityCheck(
        "minkowski", "fail" if verdict is False else "pass", str(ns), f"[{nf.lo + ng.lo}, {nf.hi + ng.hi}]",
        provenance="tolerance",
    )


def jensen_check(f: NumFn, mu: MeasureTable, phi: ConvexSpec) -> InequalityCheck:
    if classify(mu).mass != ONE:
        return InequalityCheck("jensen", "premise", note="mu must be a probability")
    r = integrate(f, mu)
    if not r.integrable:
        return InequalityCheck("jensen", "premise", note="f must be integrable")
    live = [(v, w) for v, w in zip(f.values, mu.weights) if w > 0]
    if not all(phi.in_domain(v) for v, _ in live):
        return InequalityCheck("jensen", "premise", note="range of f leaves the open domain of phi")
    lhs = xsum(mul(phi(v), w) for v, w in live)
    rhs = phi(r.value)
    equality = lhs == rhs
    note = ""
    if phi.strictly_convex:
        degenerate = len({v for v, _ in live}) <= 1
        note = "f a.s. constant" if degenerate else "f not a.s. constant"
        if equality != degenerate:
            return InequalityCheck("jensen", "fail", str(lhs), str(rhs), equality, note=note + "; equality mismatch")
    return InequalityCheck("jensen", "pass" if lhs >= rhs else "fail", str(lhs), str(rhs), equality, note=note)


def inequality_suite(
    f: NumFn, g: NumFn, mu: MeasureTable, p=2, q=2, phi: ConvexSpec | None = None, a=None
) -> list[InequalityCheck]:
    """Markov, Hoelder, Minkowski and Jensen on one instance."""
    checks = []
    if a is not None:
        checks.append(markov_check(f, mu, a))
    checks.append(holder_check(f, g, mu, p, q))
    checks.append(minkowski_check(f, g, mu, p))
    if phi is not None:
        checks.append(jensen_check(f, mu, phi))
    return checks


@dataclass
class InclusionReport:
    q_norm: LpNorm
    p_norm: LpNorm

    @property
    def holds(self) -> bool:
        return not self.q_norm.is_finite or self.p_norm.is_finite


def lq_subset_lp_check(mu: MeasureTable, f: NumFn, p, q) -> InclusionReport:
    """||f||_q < inf  =>  ||f||_p < inf  for finite mu and p <= q."""
    if not classify(mu).finite:
        raise PremiseError("mu must be finite")
    p, q = _parse_p(p), _parse_p(q)
    if p > q:
        raise MeasureKitError("need p <= q")
    return InclusionReport(lp_seminorm(f, mu, q), lp_seminorm(f, mu, p))


# -- convergence theorems ---------------------------------------------------------


@dataclass(frozen=True)
class EventualSequence:
    """``prefix`` followed by ``cycle`` repeated forever."""

    prefix: tuple
    cycle: tuple

    def __init__(self, prefix: Sequence[NumFn], cycle: Sequence[NumFn]):
        if not cycle:
            raise MeasureKitError("cycle must be nonempty")
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "cycle", tuple(cycle))

    @classmethod
    def eventually_constant(cls, seq: Sequence[NumFn]) -> "EventualSequence":
        if not seq:
            raise MeasureKitError("empty sequence")
        return cls(seq[:-1], seq[-1:])

    def one_period(self) -> list[NumFn]:
        """Enough terms to check any consecutive-pair property: prefix, cycle, cycle[0]."""
        return list(self.prefix) + list(self.cycle) + [self.cycle[0]]

    def liminf(self) -> NumFn:
        out = self.cycle[0]
        for h in self.cycle[1:]:
            out = out.minimum(h)
        return out

    def limsup(self) -> NumFn:
        out = self.cycle[0]
        for h in self.cycle[1:]:
            out = out.maximum(h)
        return out


@dataclass
class ConvergenceReport:
    mode: str
    premises_ok: bool
    problems: list = field(default_factory=list)
    lhs: XValue | None = None
    rhs: XValue | None = None
    holds: bool | None = None
    equality: bool | None = None


def convergence_suite(
    seq, mu: MeasureTable, mode: str, dominator: NumFn | None = None
) -> ConvergenceReport:
    """Levi, Fatou or dominated convergence on an eventually periodic sequence."""
    if not isinstance(seq, EventualSequence):
        seq = EventualSequence.eventually_constant(list(seq))
    terms = seq.one_period()
    problems = []
    if mode in ("levi", "fatou"):
        g = dominator
        if g is None:
            g = terms[0].neg() if mode == "levi" else NumFn.constant(mu.space, ZERO)
        if not all(h.neg().le(g) for h in terms):
            problems.append("some f_n^- exceeds the dominator")
        if not integrate(g, mu).pos_part_integral.is_finite:
            problems.append("dominator is not integrable")
        if mode == "levi" and not all(a.le(b) for a, b in zip(terms, terms[1:])):
            problems.append("sequence is not nondecreasing")
    elif mode == "dominated":
        if dominator is None:
            raise MeasureKitError("dominated convergence needs a dominator")
        if not all(abs(h).le(dominator) for h in terms):
            problems.append("|f_n| exceeds the dominator")
        if not integrate(dominator, mu).pos_part_integral.is_finite:
            problems.append("dominator is not integrable")
        lim, top = seq.liminf(), seq.limsup()
        if any(a != b and w > 0 for a, b, w in zip(lim.values, top.values, mu.weights)):
            problems.append("sequence does not converge a.e.")
    else:
        raise MeasureKitError(f"unknown mode {mode!r}")

    report = ConvergenceReport(mode, not problems, problems)
    if problems:
        return report
    cycle_ints = [integrate(h, mu) for h in seq.cycle]
    if not all(r.well_defined for r in cycle_ints):
        report.premises_ok = False
        report.problems.append("an integral in the tail is ill-defined")
        return report
    if mode == "levi":
        lhs = integrate(seq.liminf(), mu).value
        rhs = max(r.value for r in cycle_ints)
        report.lhs, report.rhs, report.holds, report.equality = lhs, rhs, lhs == rhs, lhs == rhs
    elif mode == "fatou":
        lhs = integrate(seq.liminf(), mu).value
        rhs = min(r.value for r in cycle_ints)
        report.lhs, report.rhs, report.holds, report.equality = lhs, rhs, lhs <= rhs, lhs == rhs
    else:
        lim = seq.liminf()
        lhs = integrate(lim, mu).value
        rhs = cycle_ints[0].value
        same = all(r.value == rhs for r in cycle_ints)
        gaps = [integrate(abs(h - lim), mu).value for h in seq.cycle]
        report.lhs, report.rhs = lhs, rhs
        report.holds = same and lhs == rhs and all(gap == ZERO for gap in gaps)
        report.equality = report.holds
    return report


# -- determination / comparison --------------------------------------------------


@dataclass
class DeterminationReport:
    integrals_agree: bool
    ae_equal: bool
    witness: frozenset | None = None

    @property
    def consistent(self) -> bool:
        return self.integrals_agree == self.ae_equal


def determination_check(f: NumFn, g: NumFn, mu: MeasureTable) -> DeterminationReport:
    """(integrals over every measurable A agree)  <=>  f = g a.e."""
    _same_space(f, mu)
    _same_space(g, mu)
    witness = None
    for s in mu.space.members():
        rf, rg = integrate(f, mu, s), integrate(g, mu, s)
        if (rf.value, rf.well_defined) != (rg.value, rg.well_defined):
            witness = s
            break
    ae = all(a == b or w == ZERO for a, b, w in zip(f.values, g.values, mu.weights))
    return DeterminationReport(witness is None, ae, witness)


def dominated_by_integrals(f: NumFn, g: NumFn, mu: MeasureTable) -> tuple[bool, bool]:
    """(for all A: int_A f <= int_A g,  f <= g a.e.)."""
    all_sets = all(
        integrate(f, mu, s).value <= integrate(g, mu, s).value for s in mu.space.members()
    )
    ae = all(a <= b or w == ZERO for a, b, w in zip(f.values, g.values, mu.weights))
    return all_sets, ae


def compose_function(g: NumFn, f_map, domain_space: SigmaField) -> NumFn:
    """g o f as a NumFn on ``domain_space`` (f must be measurable)."""
    return NumFn.from_points(domain_space, lambda x: g.at(f_map(x)))
