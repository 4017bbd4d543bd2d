"""Seeded random instances for the property suites.

All generators take a ``random.Random`` and return exact objects, so a
(seed, case id) pair always reproduces the same instance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .integrate import ConvexSpec, NumFn
from .measure import MeasureTable
from .numerics import INF, NEG_INF, XValue, xv
from .setalg import GroundSet, SetFamily, SigmaField
from .stieltjes.cdf import CDFSpec
from .stieltjes.functions import ExpPoly
from .stieltjes.intervals import INF as RINF, Interval, IntervalSet


def rational(rng: random.Random, lo: int = -5, hi: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(1, max_den))


def nonneg_rational(rng: random.Random, hi: int = 4, max_den: int = 4, zero_prob: float = 0.2) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(1, hi * max_den), rng.randint(1, max_den))


def ground(rng: random.Random, lo: int = 1, hi: int = 5) -> GroundSet:
    return GroundSet(range(1, rng.randint(lo, hi) + 1))


def partition(rng: random.Random, g: GroundSet, blocks: int | None = None) -> SigmaField:
    n = len(g)
    k = blocks if blocks is not None else rng.randint(1, max(1, n))
    labels = [rng.randrange(k) for _ in range(n)]
    groups: dict = {}
    for x, b in zip(g, labels):
        groups.setdefault(b, []).append(x)
    return SigmaField(g, groups.values())


def coarsen(rng: random.Random, s: SigmaField) -> SigmaField:
    """Random sub-sigma-field: merge atoms of ``s`` at random."""
    k = rng.randint(1, len(s.atoms))
    groups: dict = {}
    for a in s.atoms:
        groups.setdefault(rng.randrange(k), set()).update(a)
    return SigmaField(s.ground, groups.values())


def measure(
    rng: random.Random,
    space: SigmaField,
    inf_prob: float = 0.0,
    zero_prob: float = 0.2,
    probability: bool = False,
) -> MeasureTable:
    ws: list = []
    for _ in space.atoms:
        if rng.random() < inf_prob:
            ws.append(INF)
        else:
            ws.append(xv(nonneg_rational(rng, zero_prob=zero_prob)))
    if probability:
        if all(w == 0 for w in ws):
            ws[rng.randrange(len(ws))] = xv(1)
        total = sum((w.fraction for w in ws), Fraction(0))
        ws = [xv(w.fraction / total) for w in ws]
    return MeasureTable(space, ws)


def numfn(rng: random.Random, space: SigmaField, inf_prob: float = 0.0, nonneg: bool = False) -> NumFn:
    vals: list = []
    for _ in space.atoms:
        r = rng.random()
        if r < inf_prob / 2:
            vals.append(INF)
        elif r < inf_prob and not nonneg:
            vals.append(NEG_INF)
        elif r < inf_prob:
            vals.append(INF)
        else:
            q = rational(rng)
            vals.append(xv(abs(q) if nonneg else q))
    return NumFn(space, vals)


def measurable_fn(rng: random.Random, sub: SigmaField, space: SigmaField) -> NumFn:
    """Random function on ``space`` that is measurable for the coarser ``sub``."""
    vals = {a: rational(rng) for a in sub.atoms}
    return NumFn.from_points(space, lambda x: vals[sub.atom_of(x)])


def convex(rng: random.Random) -> ConvexSpec:
    kind = rng.choice(["square", "abs", "piecewise", "power"])
    if kind == "piecewise":
        k = rng.randint(1, 3)
        bps = sorted({rational(rng) for _ in range(k)})
        slopes = sorted(rational(rng) for _ in range(len(bps) + 1))
        return ConvexSpec("piecewise", breakpoints=tuple(bps), slopes=tuple(slopes), value_at_zero=rational(rng))
    if kind == "power":
        return ConvexSpec("power", degree=rng.choice([2, 4]))
    return ConvexSpec(kind)


def family(rng: random.Random, g: GroundSet, size: int | None = None) -> SetFamily:
    k = size if size is not None else rng.randint(0, 4)
    out = []
    for _ in range(k):
        out.append([x for x in g if rng.random() < 0.5])
    return SetFamily(g, out)


def pi_closure(g: GroundSet, members) -> SetFamily:
    fam = {frozenset(m) for m in members}
    while True:
        new = {a & b for a in fam for b in fam} - fam
        if not new:
            return SetFamily(g, sorted(fam, key=lambda s: g.sort_key(s)))
        fam |= new


# -- real line ---------------------------------------------------------------------


def interval_set(rng: random.Random, unbounded_prob: float = 0.1) -> IntervalSet:
    ivs = []
    for _ in range(rng.randint(0, 3)):
        a = rational(rng, -4, 4, 3)
        b = a + nonneg_rational(rng, 3, 3, zero_prob=0.0)
        if rng.random() < unbounded_prob:
            a = -RINF
        if rng.random() < unbounded_prob:
            b = RINF
        ivs.append(Interval(a, b, rng.random() < 0.5, rng.random() < 0.5))
    pts = [rational(rng, -4, 4, 3) for _ in range(rng.randint(0, 2))]
    return IntervalSet(ivs, pts)


def piecewise_linear_cdf(rng: random.Random) -> CDFSpec:
    """Distribution with constant densities on bounded pieces plus jumps."""
    k = rng.randint(1, 5)
    cuts = sorted({rational(rng, -3, 3, 4) for _ in range(k + 1)})
    if len(cuts) < 2:
        cuts = [cuts[0], cuts[0] + 1]
    dens = [nonneg_rational(rng, 3, 3, zero_prob=0.3) for _ in cuts[1:]]
    jumps = {}
    for c in cuts:
        if rng.random() < 0.4:
            jumps[c] = nonneg_rational(rng, 2, 3, zero_prob=0.0)
    if rng.random() < 0.3:
        mid = (cuts[0] + cuts[-1]) / 2 + Fraction(1, 7)
        if cuts[0] < mid < cuts[-1]:
            jumps[mid] = Fraction(1, 5)
    total = sum(d * (b - a) for d, a, b in zip(dens, cuts, cuts[1:])) + sum(jumps.values())
    if total == 0:
        dens[0] = Fraction(1)
        total = cuts[1] - cuts[0]
    pieces = [(-RINF, cuts[0], ExpPoly.const(0))]
    pieces += [(a, b, ExpPoly.const(d / total)) for d, a, b in zip(dens, cuts, cuts[1:])]
    pieces.append((cuts[-1], RINF, ExpPoly.const(0)))
    return CDFSpec(pieces, {x: j / total for x, j in jumps.items()})


def polynomial(rng: random.Random, max_degree: int = 4) -> ExpPoly:
    return ExpPoly(tuple(rational(rng) for _ in range(rng.randint(0, max_degree) + 1)))


def seeded(seed: int, case: int) -> random.Random:
    """Independent generator per (seed, case id)."""
    return random.Random(f"{seed}:{case}")


__all__ = [
    "coarsen",
    "convex",
    "family",
    "ground",
    "interval_set",
    "measurable_fn",
    "measure",
    "nonneg_rational",
    "numfn",
    "partition",
    "pi_closure",
    "piecewise_linear_cdf",
    "polynomial",
    "rational",
    "seeded",
]
