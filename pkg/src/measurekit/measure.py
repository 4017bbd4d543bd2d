"""Exact measures on finite measurable spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import MeasureKitError, NotMeasurableError, SpaceMismatchError
from .numerics import INF, ONE, ZERO, XValue, mul, xsum, xv
from .setalg import (
    GroundSet,
    MeasurableMap,
    SetFamily,
    SigmaField,
    generate_sigma_field,
    is_measurable,
    is_pi_system,
    trace,
)


@dataclass(frozen=True)
class MeasureTable:
    """Nonnegative weight per atom of ``space``; weights may be ``inf``."""

    space: SigmaField
    weights: tuple

    def __init__(self, space: SigmaField, weights: Sequence):
        ws = tuple(xv(w) for w in weights)
        if len(ws) != len(space.atoms):
            raise MeasureKitError(f"{len(ws)} weights for {len(space.atoms)} atoms")
        if any(w < 0 for w in ws):
            raise MeasureKitError("measure weights must be nonnegative")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_points(cls, ground: GroundSet, weights: dict) -> "MeasureTable":
        """Measure on the power set from per-point weights (missing points weigh 0)."""
        space = ground.power_set()
        return cls(space, [weights.get(next(iter(a)), ZERO) for a in space.atoms])

    @classmethod
    def from_atoms(cls, space: SigmaField, table: dict) -> "MeasureTable":
        """``table`` maps atoms (any iterable of labels) to weights."""
        lookup = {frozenset(k): v for k, v in table.items()}
        unknown = set(lookup) - set(space.atoms)
        if unknown:
            raise NotMeasurableError(f"{len(unknown)} keys are not atoms of the space")
        return cls(space, [lookup.get(a, ZERO) for a in space.atoms])

    @property
    def ground(self) -> GroundSet:
        return self.space.ground

    def weight_of(self, atom) -> XValue:
        return self.weights[self.space.atoms.index(frozenset(atom))]

    def point_atom_weight(self, x) -> XValue:
        return self.weights[self.space.atom_index(x)]

    def __call__(self, subset) -> XValue:
        return evaluate(self, subset)

    def items(self):
        return zip(self.space.atoms, self.weights)

    def mass(self) -> XValue:
        return xsum(self.weights)

    def __eq__(self, other):
        if not isinstance(other, MeasureTable):
            return NotImplemented
        return self.space == other.space and self.weights == other.weights

    def __hash__(self):
        return hash((self.space, self.weights))


def uniform(ground: GroundSet, space: SigmaField | None = None) -> MeasureTable:
    """Classical probability |A|/|Omega|."""
    space = space or ground.power_set()
    n = len(ground)
    return MeasureTable(space, [xv(len(a)) / n for a in space.atoms])


def dirac(space: SigmaField, x) -> MeasureTable:
    return MeasureTable(space, [ONE if x in a else ZERO for a in space.atoms])


def zero_measure(space: SigmaField) -> MeasureTable:
    return MeasureTable(space, [ZERO] * len(space.atoms))


def counting(space: SigmaField) -> MeasureTable:
    return MeasureTable(space, [xv(len(a)) for a in space.atoms])


def evaluate(mu: MeasureTable, subset: Iterable) -> XValue:
    return xsum(mu.weights[i] for i in mu.space.atoms_in(subset))


@dataclass(frozen=True)
class MeasureClass:
    finite: bool
    probability: bool
    sigma_finite: bool
    mass: XValue


def classify(mu: MeasureTable) -> MeasureClass:
    mass = mu.mass()
    return MeasureClass(
        finite=mass.is_finite,
        probability=mass == ONE,
        sigma_finite=all(w.is_finite for w in mu.weights),
        mass=mass,
    )


def restrict(mu: MeasureTable, subset) -> MeasureTable:
    """Restriction to a measurable set, living on the trace sigma-field."""
    idx = mu.space.atoms_in(subset)
    sub = trace(mu.space, subset)
    table = {mu.space.atoms[i]: mu.weights[i] for i in idx}
    return MeasureTable(sub, [table[a] for a in sub.atoms])


def restrict_to_subfield(mu: MeasureTable, sub: SigmaField) -> MeasureTable:
    """mu|_B for a sub-sigma-field B (same ground, coarser partition)."""
    if not mu.space.refines(sub):
        raise NotMeasurableError("target is not a sub-sigma-field of the measure's space")
    return MeasureTable(sub, [evaluate(mu, a) for a in sub.atoms])


def pushforward_measure(f: MeasurableMap, mu: MeasureTable, sigma_cod: SigmaField) -> MeasureTable:
    if not is_measurable(f, mu.space, sigma_cod):
        raise NotMeasurableError("map is not measurable for the given sigma-fields")
    return MeasureTable(sigma_cod, [evaluate(mu, f.preimage(a)) for a in sigma_cod.atoms])


def sum_measures(mus: Sequence[MeasureTable], coeffs: Sequence | None = None) -> MeasureTable:
    if not mus:
        raise MeasureKitError("need at least one measure")
    coeffs = [ONE] * len(mus) if coeffs is None else [xv(c) for c in coeffs]
    if len(coeffs) != len(mus):
        raise MeasureKitError("one coefficient per measure")
    if any(c < 0 for c in coeffs):
        raise MeasureKitError("coefficients must be nonnegative")
    space = mus[0].space
    for m in mus[1:]:
        if m.space != space:
            raise SpaceMismatchError("measures live on different spaces")
    weights = [xsum(mul(c, m.weights[i]) for c, m in zip(coeffs, mus)) for i in range(len(space.atoms))]
    return MeasureTable(space, weights)


@dataclass(frozen=True)
class CompletionResult:
    completed_space: SigmaField
    completed_measure: MeasureTable
    added_null_sets: SetFamily


def complete(mu: MeasureTable) -> CompletionResult:
    """Split every null atom into singletons; the new pieces weigh 0."""
    blocks, weights, added = [], [], []
    for a, w in mu.items():
        if w == ZERO and len(a) > 1:
            for x in mu.ground.ordered(a):
                blocks.append([x])
                weights.append(ZERO)
                added.append([x])
        else:
            blocks.append(a)
            weights.append(w)
    space = SigmaField(mu.ground, blocks)
    table = dict(zip((frozenset(b) for b in blocks), weights))
    measure = MeasureTable(space, [table[a] for a in space.atoms])
    return CompletionResult(space, measure, SetFamily(mu.ground, added))


def null_sets(mu: MeasureTable) -> list[frozenset]:
    """Measurable sets of measure zero."""
    return [s for s in mu.space.members() if evaluate(mu, s) == ZERO]


def almost_everywhere(pred: Callable[[frozenset], bool], mu: MeasureTable) -> bool:
    """``pred`` is called once per atom; true iff the failing atoms are null."""
    return xsum(w for a, w in mu.items() if not pred(a)) == ZERO


@dataclass
class AgreementVerdict:
    is_pi_system: bool
    generates: bool
    localizer_ok: bool
    agree_on_pi: bool
    conclusion: bool
    localizer_problems: list
    counterexample: frozenset | None = None

    @property
    def premises_hold(self) -> bool:
        return self.is_pi_system and self.generates and self.localizer_ok and self.agree_on_pi

    @property
    def consistent(self) -> bool:
        """Premises imply conclusion on this instance."""
        return self.conclusion or not self.premises_hold


def agree_on_pi_system(mu: MeasureTable, nu: MeasureTable, pi: SetFamily, localizer) -> AgreementVerdict:
    """Check every premise of the equality-of-measures theorem and its conclusion."""
    if mu.space != nu.space:
        raise SpaceMismatchError("measures live on different spaces")
    space = mu.space
    ground = space.ground
    locs = [ground.subset(L) for L in localizer]
    pi_ok = is_pi_system(pi)
    measurable = all(space.contains(m) for m in pi.members)
    gen = measurable and generate_sigma_field(ground, pi) == space
    problems = []
    pi_set = pi.as_set()
    if not all(L in pi_set for L in locs):
        problems.append("localizer is not contained in the pi-system")
    nested = all(a <= b for a, b in zip(locs, locs[1:]))
    disjoint = all(not (a & b) for i, a in enumerate(locs) for b in locs[i + 1 :])
    if not (nested or disjoint):
        problems.append("localizer is neither nondecreasing nor pairwise disjoint")
    for L in locs:
        if not space.contains(L):
            problems.append("localizer member is not measurable")
            break
        m, n = evaluate(mu, L), evaluate(nu, L)
        if m != n or not m.is_finite:
            problems.append("localizer member without finite equal measure")
            break
    if frozenset().union(*locs) != ground.full():
        problems.append("localizer does not exhaust the ground set")
    agree = measurable and all(evaluate(mu, m) == evaluate(nu, m) for m in pi.members)
    witness = None
    for a, wm, wn in zip(space.atoms, mu.weights, nu.weights):
        if wm != wn:
            witness = a
            break
    return AgreementVerdict(
        is_pi_system=pi_ok,
        generates=gen,
        localizer_ok=not problems,
        agree_on_pi=agree,
        conclusion=witness is None,
        localizer_problems=problems,
        counterexample=witness,
    )


@dataclass
class BorelCantelliResult:
    limsup_set: frozenset
    mass_sum: XValue
    limsup_mass: XValue

    @property
    def holds(self) -> bool:
        return not self.mass_sum.is_finite or self.limsup_mass == ZERO


def borel_cantelli(mu: MeasureTable, prefix: Sequence, cycle: Sequence) -> BorelCantelliResult:
    """First Borel-Cantelli lemma on an eventually periodic sequence ``prefix + cycle*``.

    A point lies in infinitely many sets iff it lies in some member of the cycle.
    """
    if not cycle:
        raise MeasureKitError("cycle must be nonempty")
    ground = mu.ground
    pre = [ground.subset(s) for s in prefix]
    cyc = [ground.subset(s) for s in cycle]
    for s in pre + cyc:
        if not mu.space.contains(s):
            raise NotMeasurableError("sequence member is not measurable", witness=s)
    limsup = frozenset().union(*cyc)
    total = xsum(evaluate(mu, s) for s in pre)
    if any(evaluate(mu, s) > 0 for s in cyc):
        total = INF
    return BorelCantelliResult(limsup, total, evaluate(mu, limsup))


def p_trivial_sets(mu: MeasureTable) -> list[frozenset]:
    """Sets of probability 0 or 1."""
    return [s for s in mu.space.members() if evaluate(mu, s) in (ZERO, ONE)]
