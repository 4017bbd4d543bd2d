"""Finite products, Fubini-Tonelli, independence, and projective families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import config
from .errors import MeasureKitError, NotMeasurableError, PremiseError, SigmaFiniteError, SpaceMismatchError
from .integrate import NumFn, integrate
from .measure import MeasureTable, evaluate, pushforward_measure
from .numerics import ONE, ZERO, XValue, mul, xv
from .setalg import (
    GroundSet,
    MeasurableMap,
    SetFamily,
    SigmaField,
    generate_sigma_field,
    is_measurable,
    is_pi_system,
    sigma_of_map,
)

GENERATOR_ID = "numpy-pcg64-v1"


# -- product spaces and measures ---------------------------------------------------


@dataclass(frozen=True)
class ProductSpace:
    factors: tuple
    space: SigmaField

    @property
    def ground(self) -> GroundSet:
        return self.space.ground

    def projection(self, i: int) -> MeasurableMap:
        g = self.ground
        return MeasurableMap(g, self.factors[i].ground, {x: x[i] for x in g})

    def rectangle(self, sets: Sequence[Iterable]) -> frozenset:
        return frozenset(itertools.product(*[self.factors[i].ground.ordered(s) for i, s in enumerate(sets)]))


def product_space(*factors: SigmaField) -> ProductSpace:
    """Tuple ground set; atoms are products of factor atoms."""
    if not factors:
        raise MeasureKitError("need at least one factor")
    ground = GroundSet(itertools.product(*[f.ground.elements for f in factors]))
    atoms = [frozenset(itertools.product(*combo)) for combo in itertools.product(*[f.atoms for f in factors])]
    return ProductSpace(tuple(factors), SigmaField(ground, atoms))


def _require_sigma_finite(mu: MeasureTable):
    for a, w in mu.items():
        if not w.is_finite:
            raise SigmaFiniteError("factor measure is not sigma-finite", witness=a)


def product_measure(*mus: MeasureTable) -> MeasureTable:
    """Unique measure with mu_1 x ... x mu_n (A_1 x ... x A_n) = prod mu_i(A_i)."""
    for m in mus:
        _require_sigma_finite(m)
    ps = product_space(*[m.space for m in mus])
    table = {}
    for combo in itertools.product(*[list(m.items()) for m in mus]):
        atom = frozenset(itertools.product(*[a for a, _ in combo]))
        w = ONE
        for _, wi in combo:
            w = mul(w, wi)
        table[atom] = w
    return MeasureTable(ps.space, [table[a] for a in ps.space.atoms])


def marginal(mu: MeasureTable, factors: Sequence[SigmaField], i: int) -> MeasureTable:
    ps = product_space(*factors)
    if ps.space != mu.space:
        raise SpaceMismatchError("measure does not live on this product space")
    return pushforward_measure(ps.projection(i), mu, factors[i])


def pair_map(f: MeasurableMap, g: MeasurableMap) -> MeasurableMap:
    """x -> (f(x), g(x)) into the product of the codomains."""
    if f.domain != g.domain:
        raise SpaceMismatchError("maps need a common domain")
    cod = GroundSet(itertools.product(f.codomain.elements, g.codomain.elements))
    return MeasurableMap(f.domain, cod, {x: (f(x), g(x)) for x in f.domain})


# -- Fubini-Tonelli -------------------------------------------------------------------


@dataclass
class FubiniReport:
    premises: dict
    joint: XValue
    iterated_xy: XValue
    iterated_yx: XValue
    joint_well_defined: bool

    @property
    def premise_holds(self) -> bool:
        return any(self.premises.values())

    @property
    def premise_used(self) -> str | None:
        for k in ("a", "b", "c"):
            if self.premises[k]:
                return k
        return None

    @property
    def equal(self) -> bool:
        return self.joint == self.iterated_xy == self.iterated_yx

    @property
    def passed(self) -> bool:
        return not self.premise_holds or self.equal


def _inner(f: NumFn, mu: MeasureTable, nu: MeasureTable, ps: ProductSpace, over_first: bool) -> NumFn:
    """x' -> integral of f(., x') d mu (or x -> integral of f(x, .) d nu)."""
    outer = nu if over_first else mu
    inner = mu if over_first else nu
    vals = []
    for b in outer.space.atoms:
        sl = []
        for a in inner.space.atoms:
            pt = (next(iter(a)), next(iter(b))) if over_first else (next(iter(b)), next(iter(a)))
            sl.append(f(pt))
        # ill-defined inner integrals take the convention value; they sit on null slices
        vals.append(integrate(NumFn(inner.space, sl), inner).value)
    return NumFn(outer.space, vals)


def _iterated(f: NumFn, mu: MeasureTable, nu: MeasureTable, ps: ProductSpace, over_first: bool):
    g = _inner(f, mu, nu, ps, over_first)
    r = integrate(g, nu if over_first else mu)
    return r.value, r.well_defined


def fubini_check(f: NumFn, mu: MeasureTable, nu: MeasureTable) -> FubiniReport:
    """Joint integral against mu x nu and both iterated integrals, with premises (a)/(b)/(c)."""
    ps = product_space(mu.space, nu.space)
    if f.space != ps.space:
        raise SpaceMismatchError("integrand does not live on the product space")
    prod = product_measure(mu, nu)
    joint = integrate(f, prod)
    neg = f.neg()
    neg_xy, _ = _iterated(neg, mu, nu, ps, True)
    neg_yx, _ = _iterated(neg, mu, nu, ps, False)
    premises = {
        "a": f.is_nonnegative(),
        "b": integrate(abs(f), prod).value.is_finite,
        "c": min(neg_xy, neg_yx).is_finite,
    }
    xy, _ = _iterated(f, mu, nu, ps, True)
    yx, _ = _iterated(f, mu, nu, ps, False)
    return FubiniReport(premises, joint.value, xy, yx, joint.well_defined)


# -- independence --------------------------------------------------------------------


@dataclass
class IndependenceReport:
    passed: bool
    subcollections_checked: int
    counterexample: tuple | None = None  # (family indices, chosen sets, lhs, rhs)


def _require_probability(P: MeasureTable):
    if P.mass() != ONE:
        raise MeasureKitError("P must be a probability")


def is_independency(P: MeasureTable, families: Sequence) -> IndependenceReport:
    """Product rule over every sub-collection of size >= 2 and every choice of members."""
    _require_probability(P)
    fams = [f.members if isinstance(f, SetFamily) else tuple(P.ground.subset(s) for s in f) for f in families]
    probs = []
    for fam in fams:
        row = {}
        for s in fam:
            if not P.space.contains(s):
                raise NotMeasurableError("family member is not measurable", witness=s)
            row[s] = evaluate(P, s)
        probs.append(row)
    checked = 0
    for k in range(2, len(fams) + 1):
        for idx in itertools.combinations(range(len(fams)), k):
            checked += 1
            for choice in itertools.product(*[fams[i] for i in idx]):
                inter = frozenset.intersection(*choice)
                lhs = evaluate(P, inter)
                rhs = ONE
                for i, s in zip(idx, choice):
                    rhs = rhs * probs[i][s]
                if lhs != rhs:
                    return IndependenceReport(False, checked, (idx, choice, lhs, rhs))
    return IndependenceReport(True, checked)


@dataclass
class RaiseReport:
    premise_pi: bool
    families_independent: bool
    generated_independent: bool
    counterexample: tuple | None = None

    @property
    def consistent(self) -> bool:
        return not (self.premise_pi and self.families_independent) or self.generated_independent


def raise_independence_check(P: MeasureTable, pi_families: Sequence[SetFamily], strict: bool = True) -> RaiseReport:
    """Independent pi-systems generate independent sigma-fields.

    With ``strict`` a non-pi-system input raises; otherwise the report records
    the failed premise and still evaluates both sides.
    """
    pi_ok = all(is_pi_system(f) for f in pi_families)
    if strict and not pi_ok:
        raise PremiseError("every family must be a pi-system")
    fam = is_independency(P, pi_families)
    gens = [generate_sigma_field(P.ground, f).members() for f in pi_families]
    gen = is_independency(P, gens)
    return RaiseReport(pi_ok, fam.passed, gen.passed, gen.counterexample)


@dataclass
class JointLawReport:
    independent: bool
    joint_is_product: bool

    @property
    def consistent(self) -> bool:
        return self.independent == self.joint_is_product


def joint_vs_product_check(X: MeasurableMap, Y: MeasurableMap, P: MeasureTable) -> JointLawReport:
    """sigma(X), sigma(Y) independent iff the joint law is the product of the marginals."""
    _require_probability(P)
    sx, sy = sigma_of_map(X), sigma_of_map(Y)
    for s in (sx, sy):
        if not P.space.refines(s):
            raise NotMeasurableError("map is not measurable for P's sigma-field")
    indep = is_independency(P, [sx.members(), sy.members()]).passed
    law_x = pushforward_measure(X, P, X.codomain.power_set())
    law_y = pushforward_measure(Y, P, Y.codomain.power_set())
    XY = pair_map(X, Y)
    joint = pushforward_measure(XY, P, XY.codomain.power_set())
    return JointLawReport(indep, joint == product_measure(law_x, law_y))


@dataclass
class GridIndependence:
    independent: bool
    factorizes: bool

    @property
    def consistent(self) -> bool:
        return self.independent == self.factorizes


def grid_density_check(density: Mapping, wx: Mapping, wy: Mapping) -> GridIndependence:
    """Joint law w_x(x) w_y(y) f(x, y); compares independence with f = f_X f_Y a.e."""
    xs, ys = list(wx), list(wy)
    f = {(x, y): Fraction(density.get((x, y), 0)) for x in xs for y in ys}
    fx = {x: sum(f[x, y] * Fraction(wy[y]) for y in ys) for x in xs}
    fy = {y: sum(f[x, y] * Fraction(wx[x]) for x in xs) for y in ys}
    law = {(x, y): f[x, y] * Fraction(wx[x]) * Fraction(wy[y]) for x in xs for y in ys}
    if sum(law.values()) != 1:
        raise MeasureKitError("grid density does not integrate to 1")
    px = {x: fx[x] * Fraction(wx[x]) for x in xs}
    py = {y: fy[y] * Fraction(wy[y]) for y in ys}
    indep = all(law[x, y] == px[x] * py[y] for x in xs for y in ys)
    fact = all(f[x, y] == fx[x] * fy[y] for x in xs for y in ys if Fraction(wx[x]) * Fraction(wy[y]) > 0)
    return GridIndependence(indep, fact)


# -- projective families ---------------------------------------------------------------


def law_to_points(mu: MeasureTable) -> dict:
    """Point weights of a measure on a power set, dropping zeros."""
    out = {}
    for a, w in mu.items():
        if len(a) != 1:
            raise MeasureKitError("marginal laws must live on power sets")
        if w != ZERO:
            out[next(iter(a))] = w
    return out


@dataclass
class MarginalFamily:
    """Laws mu_F on configurations indexed by sorted tuples F of labels.

    A configuration for F is a tuple of states aligned with F.
    """

    index_universe: tuple
    laws: dict

    def __post_init__(self):
        order = {k: i for i, k in enumerate(self.index_universe)}
        laws = {}
        for F, law in self.laws.items():
            key = tuple(sorted(F, key=order.__getitem__))
            if key != tuple(F):
                raise MeasureKitError("index subsets must follow the universe order")
            if law.mass() != ONE:
                raise MeasureKitError(f"marginal for {F} is not a probability")
            laws[key] = law
        self.laws = laws


@dataclass
class ConsistencyReport:
    pairs_checked: int
    witness: tuple | None = None  # (F, G, configuration, projected weight, mu_F weight)

    @property
    def passed(self) -> bool:
        return self.witness is None


def project_law(points: dict, G: tuple, F: tuple) -> dict:
    pos = [G.index(i) for i in F]
    out: dict = {}
    for cfg, w in points.items():
        key = tuple(cfg[p] for p in pos)
        out[key] = out.get(key, ZERO) + w
    return {k: v for k, v in out.items() if v != ZERO}


def kolmogorov_consistency(fam: MarginalFamily) -> ConsistencyReport:
    """(pr_{G->F})_* mu_G == mu_F for every pair F subset of G in the family."""
    pts = {F: law_to_points(m) for F, m in fam.laws.items()}
    checked = 0
    for G in pts:
        for F in pts:
            if F == G or not set(F) <= set(G):
                continue
            checked += 1
            proj = project_law(pts[G], G, F)
            target = pts[F]
            for cfg in sorted(set(proj) | set(target), key=repr):
                a, b = proj.get(cfg, ZERO), target.get(cfg, ZERO)
                if a != b:
                    return ConsistencyReport(checked, (F, G, cfg, a, b))
    return ConsistencyReport(checked)


def product_marginals(states: Sequence, law: Mapping, universe: Sequence, subsets: Iterable[Sequence]) -> MarginalFamily:
    """Marginals of the i.i.d. product of a single factor law."""
    laws = {}
    order = {k: i for i, k in enumerate(universe)}
    for F in subsets:
        F = tuple(sorted(F, key=order.__getitem__))
        g = GroundSet(itertools.product(states, repeat=len(F)))
        w = {}
        for cfg in g:
            p = Fraction(1)
            for s in cfg:
                p *= Fraction(law[s])
            w[cfg] = p
        laws[F] = MeasureTable.from_points(g, w)
    return MarginalFamily(tuple(universe), laws)


# -- binary tree ---------------------------------------------------------------------


def tree_nodes(n: int) -> tuple:
    """Nodes of T_n as bit strings, level by level ('' is the root)."""
    return tuple("".join(bits) for k in range(n + 1) for bits in itertools.product("01", repeat=k))


def _tree_config(n: int, leaves: Sequence[int]) -> tuple:
    vals = {}
    for w, v in zip(("".join(b) for b in itertools.product("01", repeat=n)), leaves):
        vals[w] = v
    for k in range(n - 1, -1, -1):
        for bits in itertools.product("01", repeat=k):
            w = "".join(bits)
            vals[w] = vals[w + "0"] * vals[w + "1"]
    return tuple(vals[w] for w in tree_nodes(n))


def binary_tree_law(n: int) -> MeasureTable:
    """Law of (xi_w)_{w in T_n}: i.i.d. uniform signs at level n, xi_w = xi_{w0} xi_{w1} above.

    The ground set is the support, one configuration per leaf assignment.
    """
    if n < 0:
        raise MeasureKitError("level must be nonnegative")
    if n > config.binary_tree_cap:
        raise MeasureKitError(f"level {n} exceeds the configured cap {config.binary_tree_cap}")
    leaves = 2**n
    cfgs = [_tree_config(n, ls) for ls in itertools.product((-1, 1), repeat=leaves)]
    g = GroundSet(cfgs)
    w = Fraction(1, 2**leaves)
    return MeasureTable(g.power_set(), [w] * len(g))


def tree_restriction(n: int) -> MeasurableMap:
    """Coordinate projection from the level n+1 support onto level-n coordinates."""
    src = binary_tree_law(n + 1).ground
    dst = binary_tree_law(n).ground
    k = len(tree_nodes(n))
    return MeasurableMap(src, dst, {cfg: cfg[:k] for cfg in src})


def binary_tree_family(max_level: int) -> MarginalFamily:
    """Marginal family indexed by the nodes of T_max_level, one law per T_k."""
    universe = tree_nodes(max_level)
    laws = {tree_nodes(k): binary_tree_law(k) for k in range(max_level + 1)}
    return MarginalFamily(universe, laws)


def node_marginal(law: MeasureTable, n: int, node: str) -> dict:
    i = tree_nodes(n).index(node)
    out: dict = {}
    for cfg, w in law_to_points(law).items():
        out[cfg[i]] = out.get(cfg[i], ZERO) + w
    return out


# -- countable products as samplers ------------------------------------------------------


@dataclass
class CoordinateSampler:
    """Independent coordinates; factor laws follow ``prefix`` then repeat ``cycle``."""

    prefix: list
    cycle: list
    seed: int
    generator_id: str = GENERATOR_ID

    def __post_init__(self):
        if not self.cycle:
            raise MeasureKitError("cycle must be nonempty")
        if self.generator_id != GENERATOR_ID:
            raise MeasureKitError(f"unknown generator {self.generator_id!r}")
        for law in list(self.prefix) + list(self.cycle):
            if sum(Fraction(p) for p in law.values()) != 1:
                raise MeasureKitError("factor laws must be probabilities")

    def law(self, i: int) -> dict:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def stream(self, i: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(i,))))

    def coordinate(self, i: int, count: int) -> list:
        law = self.law(i)
        states = list(law)
        cum = np.cumsum([float(Fraction(law[s])) for s in states])
        u = self.stream(i).random(count)
        idx = np.searchsorted(cum, u, side="right")
        idx = np.minimum(idx, len(states) - 1)
        return [states[j] for j in idx]


def sample_coordinates(s: CoordinateSampler, count: int, n_coords: int) -> list[tuple]:
    cols = [s.coordinate(i, count) for i in range(n_coords)]
    return list(zip(*cols))


def fair_bits(seed: int) -> CoordinateSampler:
    return CoordinateSampler([], [{0: Fraction(1, 2), 1: Fraction(1, 2)}], seed)


def coin_to_uniform(bits: Sequence[int], k: int | None = None) -> Fraction:
    """sum_{n <= k} b_n / 2^n."""
    bits = list(bits)[: k if k is not None else None]
    return sum((Fraction(b, 2 ** (n + 1)) for n, b in enumerate(bits)), Fraction(0))


def dyadic_law(k: int) -> dict:
    """Exact law of coin_to_uniform over k fair bits, by enumeration."""
    out: dict = {}
    w = Fraction(1, 2**k)
    for bits in itertools.product((0, 1), repeat=k):
        v = coin_to_uniform(bits)
        out[v] = out.get(v, Fraction(0)) + w
    return out
