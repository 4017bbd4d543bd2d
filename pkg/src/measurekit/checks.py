"""Named property suites with per-assertion provenance.

Every suite takes a case count and a seed and returns a ``SuiteReport``; the
assertion order depends only on (suite, cases, seed).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import randinst as ri
from .config import config
from .conditioning import (
    cond_exp,
    independent_item,
    jensen_item,
    regular_cond_prob,
    repeated_item,
    taking_out_item,
    tower_item,
    verify_defining,
    verify_kernel,
)
from .errors import AbsoluteContinuityError, MeasureKitError
from .integrate import (
    NumFn,
    determination_check,
    indefinite,
    inequality_suite,
    integrate,
    is_absolutely_continuous,
    radon_nikodym,
    simple_approx,
)
from .measure import MeasureTable, agree_on_pi_system, borel_cantelli, complete, evaluate, pushforward_measure, uniform
from .numerics import ZERO, xv
from .product import (
    binary_tree_family,
    binary_tree_law,
    dyadic_law,
    fair_bits,
    fubini_check,
    kolmogorov_consistency,
    node_marginal,
    product_marginals,
    product_measure,
    product_space,
    sample_coordinates,
    coin_to_uniform,
    tree_restriction,
    MarginalFamily,
)
from .setalg import GroundSet, MeasurableMap, SetFamily, SigmaField, _lambda_closure_masks, is_pi_system
from .stieltjes import cdf as sc
from .stieltjes.functions import ExpPoly, PiecewiseFunction
from .stieltjes.intervals import INF as RINF, IntervalSet
from .stieltjes.laws import geometric_mean_series
from .stieltjes.outer import Premeasure, caratheodory_measurable, outer_measure

EXACT = "exact"


@dataclass
class Assertion:
    case_id: str
    name: str
    passed: bool
    provenance: str = EXACT
    detail: str = ""

    def to_data(self) -> dict:
        return {
            "case": self.case_id,
            "name": self.name,
            "passed": self.passed,
            "provenance": self.provenance,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    assertions: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def failures(self) -> list:
        return [a for a in self.assertions if not a.passed]

    def add(self, case_id, name, passed, provenance=EXACT, detail=""):
        self.assertions.append(Assertion(str(case_id), name, bool(passed), provenance, detail))

    def to_data(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "assertions": [a.to_data() for a in self.assertions],
        }

    def summary(self) -> str:
        n = len(self.assertions)
        bad = len(self.failures)
        status = "PASS" if not bad else "FAIL"
        return f"{self.suite}: {status} ({n - bad}/{n} assertions, {self.cases} cases, seed {self.seed})"


# -- dynkin ------------------------------------------------------------------------------


def _sigma_masks(n: int, members) -> set[int]:
    classes: dict = {}
    for i in range(n):
        classes.setdefault(tuple(m >> i & 1 for m in members), 0)
        classes[tuple(m >> i & 1 for m in members)] |= 1 << i
    atoms = list(classes.values())
    out = set()
    for pick in range(1 << len(atoms)):
        m = 0
        for j, a in enumerate(atoms):
            if pick >> j & 1:
                m |= a
        out.add(m)
    return out


def _is_pi(members) -> bool:
    s = set(members)
    return all((a & b) in s for a in members for b in members)


def dynkin_exhaustive(max_n: int = 4) -> tuple[int, list]:
    """For every pi-system on |Omega| <= max_n compare lambda-closure and generated sigma-field.

    Returns (number of pi-systems checked, list of exceptions as (n, members)).
    """
    checked, bad = 0, []
    for n in range(max_n + 1):
        subsets = list(range(1 << n))
        for bits in range(1 << len(subsets)):
            members = [m for m in subsets if bits >> m & 1]
            if not _is_pi(members):
                continue
            checked += 1
            if _lambda_closure_masks(n, members) != _sigma_masks(n, members):
                bad.append((n, members))
    return checked, bad


def run_dynkin(cases: int | None, seed: int) -> SuiteReport:
    rep = SuiteReport("dynkin", seed, 0)
    checked, bad = dynkin_exhaustive(4)
    rep.cases = checked
    rep.add("exhaustive-4", "lambda-closure equals generated sigma-field on every pi-system", not bad,
            detail=f"{checked} pi-systems, {len(bad)} exceptions")
    return rep


# -- measure laws ----------------------------------------------------------------------


def agreement_instance(rng: random.Random):
    """Random (mu, nu, pi, localizer) with the premises of the equality theorem."""
    g = ri.ground(rng, 1, 5)
    s = ri.partition(rng, g)
    mu = ri.measure(rng, s)
    atoms = list(s.atoms)
    rng.shuffle(atoms)
    if rng.random() < 0.5:
        chain, acc = [], frozenset()
        for a in atoms:
            acc = acc | a
            chain.append(acc)
        pi = SetFamily(g, chain)
    else:
        extra = [frozenset().union(*rng.sample(atoms, rng.randint(1, len(atoms)))) for _ in range(2)]
        pi = ri.pi_closure(g, atoms + extra + [g.full()])
    if rng.random() < 0.5:
        nu = mu
    else:
        nu = MeasureTable(s, [w if rng.random() < 0.7 else xv(rng.randint(0, 2)) for w in mu.weights])
    return mu, nu, pi, [g.full()]


def counterexample_instance():
    """Two probabilities agreeing on a generating family that is not a pi-system."""
    g = GroundSet([1, 2, 3, 4])
    s = g.power_set()
    mu = uniform(g)
    nu = MeasureTable.from_points(g, {1: Fraction(1, 2), 3: Fraction(1, 2)})
    fam = SetFamily(g, [{1, 2}, {2, 3}, {1, 2, 3, 4}])
    return mu, nu, fam, [g.full()]


def borel_cantelli_instance(rng: random.Random, finite: bool = True):
    g = ri.ground(rng, 2, 6)
    s = ri.partition(rng, g)
    mu = ri.measure(rng, s, zero_prob=0.4)
    if finite and all(w > 0 for w in mu.weights):
        ws = list(mu.weights)
        ws[rng.randrange(len(ws))] = ZERO
        mu = MeasureTable(s, ws)
    null = [a for a, w in mu.items() if w == ZERO]
    pos = [a for a, w in mu.items() if w > 0]

    def union_of(atoms):
        return frozenset().union(*atoms) if atoms else frozenset()

    prefix = [union_of([a for a in s.atoms if rng.random() < 0.5]) for _ in range(rng.randint(0, 4))]
    cycle = [union_of([a for a in null if rng.random() < 0.5]) for _ in range(rng.randint(1, 3))]
    if not finite:
        if not pos:
            return borel_cantelli_instance(rng, finite)
        cycle[0] = cycle[0] | rng.choice(pos)
    return mu, prefix, cycle


def run_measure_laws(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 1000
    rep = SuiteReport("measure-laws", seed, n)
    valid = 0
    case = 0
    while valid < n:
        rng = ri.seeded(seed, case)
        mu, nu, pi, loc = agreement_instance(rng)
        v = agree_on_pi_system(mu, nu, pi, loc)
        if v.premises_hold:
            valid += 1
            rep.add(case, "agreement: premises imply mu == nu", v.conclusion)
        case += 1
    mu, nu, fam, loc = counterexample_instance()
    v = agree_on_pi_system(mu, nu, fam, loc)
    rep.add("constructed", "non-pi generator yields a counterexample report",
            not v.is_pi_system and v.agree_on_pi and not v.conclusion and v.counterexample is not None,
            detail=f"witness atom {sorted(v.counterexample) if v.counterexample else None}")
    for c in range(min(n, 100)):
        rng = ri.seeded(seed, 10**6 + c)
        mu, prefix, cycle = borel_cantelli_instance(rng)
        r = borel_cantelli(mu, prefix, cycle)
        rep.add(f"bc-{c}", "finite mass sum gives mu(limsup) = 0", r.mass_sum.is_finite and r.limsup_mass == ZERO)
    rng = ri.seeded(seed, 2 * 10**6)
    mu, prefix, cycle = borel_cantelli_instance(rng, finite=False)
    r = borel_cantelli(mu, prefix, cycle)
    rep.add("bc-infinite", "infinite mass sum exhibits mu(limsup) > 0", not r.mass_sum.is_finite and r.limsup_mass > 0)
    for c in range(min(n, 200)):
        rng = ri.seeded(seed, 3 * 10**6 + c)
        g = ri.ground(rng, 1, 5)
        s = ri.partition(rng, g)
        mu = ri.measure(rng, s, inf_prob=0.1)
        members = s.members()
        A, B = rng.choice(members), rng.choice(members)
        ok = evaluate(mu, A | B) + evaluate(mu, A & B) == evaluate(mu, A) + evaluate(mu, B)
        ok = ok and (not A <= B or evaluate(mu, A) <= evaluate(mu, B))
        rep.add(f"modular-{c}", "modularity and monotonicity", ok)
        cr = complete(mu)
        rep.add(f"complete-{c}", "completion extends the measure",
                all(evaluate(cr.completed_measure, m) == evaluate(mu, m) for m in members))
    return rep


# -- integral laws and inequalities ---------------------------------------------------------


def run_integral_laws(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 300
    rep = SuiteReport("integral-laws", seed, n)
    for c in range(n):
        rng = ri.seeded(seed, c)
        g = ri.ground(rng, 1, 5)
        s = ri.partition(rng, g)
        mu = ri.measure(rng, s, inf_prob=0.1)
        f, h = ri.numfn(rng, s), ri.numfn(rng, s)
        rf, rh, rs = integrate(f, mu), integrate(h, mu), integrate(f + h, mu)
        if rf.integrable and rh.integrable:
            rep.add(c, "additivity", rs.value == rf.value + rh.value)
        if f.le(h) and rf.well_defined and rh.well_defined:
            rep.add(c, "monotonicity", rf.value <= rh.value)
        fp = ri.numfn(rng, s, inf_prob=0.2, nonneg=True)
        approx = [simple_approx(fp, k) for k in range(1, 6)]
        ok = all(a.le(b) for a, b in zip(approx, approx[1:])) and all(a.le(fp) for a in approx)
        ints = [integrate(a, mu).value for a in approx]
        ok = ok and all(x <= y for x, y in zip(ints, ints[1:]))
        rep.add(c, "simple approximations increase below f", ok)
        dens = ri.numfn(rng, s, nonneg=True)
        fin = ri.measure(rng, s)
        nu = indefinite(dens, fin)
        test = ri.numfn(rng, s)
        rep.add(c, "integral against f.mu is integral of g f", integrate(test, nu).value == integrate(test * dens, fin).value)
        if all(w.is_finite for w in mu.weights):
            d = determination_check(f, h, mu)
            rep.add(c, "integrals over all sets determine f a.e.", d.consistent)
    return rep


def run_inequalities(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 300
    rep = SuiteReport("inequalities", seed, n)
    for c in range(n):
        rng = ri.seeded(seed, c)
        g = ri.ground(rng, 1, 5)
        s = ri.partition(rng, g)
        mu = ri.measure(rng, s, probability=rng.random() < 0.5)
        f, h = ri.numfn(rng, s), ri.numfn(rng, s)
        p = rng.choice([1, 2, 3, "3/2"])
        q_map = {1: "inf", 2: 2, 3: "3/2", "3/2": 3}
        phi = ri.convex(rng) if mu.mass() == 1 else None
        checks = inequality_suite(f, h, mu, p, q_map[p], phi, a=ri.rational(rng))
        for chk in checks:
            rep.add(c, chk.name, chk.status != "fail", chk.provenance, chk.note)
    return rep


# -- fubini --------------------------------------------------------------------------------


def fubini_instance(rng: random.Random, kind: str):
    mu = ri.measure(rng, ri.partition(rng, ri.ground(rng, 1, 4)))
    nu = ri.measure(rng, ri.partition(rng, ri.ground(rng, 1, 4)))
    ps = product_space(mu.space, nu.space)
    if kind == "a":
        f = ri.numfn(rng, ps.space, inf_prob=0.2, nonneg=True)
    elif kind == "b":
        f = ri.numfn(rng, ps.space)
    else:
        base = ri.numfn(rng, ps.space)
        f = NumFn(ps.space, [xv("inf") if rng.random() < 0.25 else v for v in base.values])
    return f, mu, nu


def run_fubini(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 500
    rep = SuiteReport("fubini", seed, n)
    for c in range(n):
        kind = "abc"[c % 3]
        f, mu, nu = fubini_instance(ri.seeded(seed, c), kind)
        r = fubini_check(f, mu, nu)
        rep.add(c, f"premise ({kind}) holds", r.premises[kind])
        rep.add(c, "three integrals agree", r.equal, detail=f"{r.joint} {r.iterated_xy} {r.iterated_yx}")
    return rep


# -- radon-nikodym -----------------------------------------------------------------------------


def rn_chain(rng: random.Random):
    g = ri.ground(rng, 1, 6)
    s = ri.partition(rng, g)
    lam = ri.measure(rng, s)
    nu = MeasureTable(s, [ZERO if w == ZERO else xv(ri.nonneg_rational(rng)) for w in lam.weights])
    mu = MeasureTable(s, [ZERO if w == ZERO else xv(ri.nonneg_rational(rng)) for w in nu.weights])
    return mu, nu, lam


def rn_violation():
    g = GroundSet([1, 2, 3])
    s = g.power_set()
    mu = MeasureTable.from_points(g, {1: 1, 2: 1, 3: 1})
    nu = MeasureTable.from_points(g, {1: 1, 2: 0, 3: 2})
    return mu, nu


def run_rn(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 1000
    rep = SuiteReport("rn", seed, n)
    for c in range(n):
        mu, nu, lam = rn_chain(ri.seeded(seed, c))
        d_mn = radon_nikodym(mu, nu)
        rep.add(c, "indefinite(dmu/dnu, nu) == mu", indefinite(d_mn, nu) == mu)
        d_nl, d_ml = radon_nikodym(nu, lam), radon_nikodym(mu, lam)
        prod = d_mn * d_nl
        ok = all(a == b or w == ZERO for a, b, w in zip(d_ml.values, prod.values, lam.weights))
        rep.add(c, "chain rule lam-a.e.", ok and is_absolutely_continuous(mu, lam))
    mu, nu = rn_violation()
    try:
        radon_nikodym(mu, nu)
        rep.add("violation", "non-absolutely-continuous pair errors with witness", False)
    except AbsoluteContinuityError as exc:
        rep.add("violation", "non-absolutely-continuous pair errors with witness", exc.witness == frozenset({2}),
                detail=f"witness {sorted(exc.witness)}")
    return rep


# -- conditional expectation ---------------------------------------------------------------------


def condexp_instance(rng: random.Random):
    g = ri.ground(rng, 1, 6)
    s = ri.partition(rng, g)
    P = ri.measure(rng, s, probability=True)
    B = ri.coarsen(rng, s)
    C = ri.coarsen(rng, B)
    if rng.random() < 0.5:
        B, C = C, B
    f = ri.numfn(rng, s)
    gfn = ri.measurable_fn(rng, B, s)
    phi = ri.convex(rng)
    return f, gfn, P, B, C, phi


def independence_instance(rng: random.Random):
    """P a product law on pairs, f a function of the first coordinate, B generated by the second."""
    s1 = ri.partition(rng, ri.ground(rng, 1, 3))
    s2 = ri.partition(rng, ri.ground(rng, 1, 3))
    p1 = ri.measure(rng, s1, probability=True)
    p2 = ri.measure(rng, s2, probability=True)
    ps = product_space(s1, s2)
    P = product_measure(p1, p2)
    vals = {a: ri.rational(rng) for a in s1.atoms}
    f = NumFn.from_points(ps.space, lambda w: vals[s1.atom_of(w[0])])
    B = SigmaField(ps.ground, [frozenset(w for w in ps.ground if w[1] in a) for a in s2.atoms])
    return f, P, B


def worked_example():
    g = GroundSet([1, 2, 3, 4])
    P = uniform(g)
    f = NumFn.from_points(g.power_set(), lambda x: x)
    B = SigmaField(g, [{1, 2}, {3, 4}])
    return cond_exp(f, P, B).values


def run_condexp(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 500
    rep = SuiteReport("condexp", seed, n)
    for c in range(n):
        f, gfn, P, B, C, phi = condexp_instance(ri.seeded(seed, c))
        ce = cond_exp(f, P, B)
        rep.add(c, "defining property", verify_defining(ce, f, P).passed)
        for item in (tower_item(f, P, B), taking_out_item(f, gfn, P, B), repeated_item(f, P, B, C), jensen_item(f, P, B, phi)):
            rep.add(c, item.name, item.status == "pass", detail=item.note)
        f2, P2, B2 = independence_instance(ri.seeded(seed, 10**6 + c))
        item = independent_item(f2, P2, B2)
        rep.add(c, item.name, item.status == "pass", detail=item.note)
    vals = worked_example()
    rep.add("worked", "uniform {1..4}, f = id, B = {{1,2},{3,4}} gives (3/2, 7/2)", vals == (xv("3/2"), xv("7/2")))
    for c in range(min(n, 100)):
        rng = ri.seeded(seed, 2 * 10**6 + c)
        g = ri.ground(rng, 1, 6)
        P = ri.measure(rng, g.power_set(), probability=True)
        cx, cz = GroundSet(range(rng.randint(1, 3))), GroundSet(range(rng.randint(1, 3)))
        X = MeasurableMap(g, cx, {w: rng.choice(cx.elements) for w in g})
        Z = MeasurableMap(g, cz, {w: rng.choice(cz.elements) for w in g})
        K = regular_cond_prob(X, Z, P)
        tests = [lambda x, e: x + 2 * e, lambda x, e: x * x - e, lambda x, e: Fraction(1, 1 + x + e)]
        rep.add(f"kernel-{c}", "regular conditional probability reconstructs P[f(X,Z)|Z]", verify_kernel(K, X, Z, P, tests).passed)
    return rep


# -- stieltjes -----------------------------------------------------------------------------


def length_sum(S: IntervalSet):
    total = Fraction(0)
    for iv in S.components:
        if math.isinf(iv.lo) or math.isinf(iv.hi):
            return xv("inf")
        total += iv.hi - iv.lo
    return xv(total)


def run_stieltjes(cases: int | None, seed: int) -> SuiteReport:
    n = cases or 200
    rep = SuiteReport("stieltjes", seed, n)
    nu = Premeasure(sc.lebesgue())
    battery = [ri.interval_set(ri.seeded(seed, c)) for c in range(n)]
    for c, S in enumerate(battery):
        rep.add(c, "outer measure equals length sum", outer_measure(nu, S) == length_sum(S))
    step = max(1, n // 50)
    for c, E in enumerate(battery[::step]):
        r = caratheodory_measurable(nu, E, battery)
        rep.add(f"split-{c}", "Caratheodory splitting against the battery", r.passed)
    for c in range(min(n, 50)):
        F = ri.piecewise_linear_cdf(ri.seeded(seed, 10**6 + c))
        r = sc.quantile_pushforward_check(F)
        rep.add(f"quantile-{c}", "pushforward of leb through F<- equals dF", r.passed, detail=f"{r.intervals_checked} intervals")
    for p in (Fraction(1, 2), Fraction(1, 4)):
        s = geometric_mean_series(p, Fraction(1, 10**10))
        ok = s.lower <= 1 / p <= s.upper and 1 / p - s.partial_sum <= Fraction(1, 10**9)
        rep.add(f"geometric-{p}", "partial sums reach 1/p with a certified tail", ok, detail=f"{s.terms} terms")
    for lam, m in ((2, 1), (1, 3)):
        f = PiecewiseFunction.on(0, RINF, ExpPoly((1,), -m), True, False)
        v = sc.integrate_stieltjes(f, sc.exponential(lam))
        rep.add(f"laplace-{lam}-{m}", "Laplace transform of Exp(lam)", abs(v - lam / (lam + m)) <= config.tolerance,
                f"tolerance {config.tolerance:g}", detail=repr(v))
    leb = sc.lebesgue()
    rep.add("riemann-x2", "integral of x^2 over [0,1]", sc.integrate_stieltjes(PiecewiseFunction.on(0, 1, ExpPoly((0, 0, 1))), leb) == xv("1/3"))
    for c in range(10):
        rng = ri.seeded(seed, 2 * 10**6 + c)
        p = ri.polynomial(rng)
        a = ri.rational(rng)
        b = a + ri.nonneg_rational(rng, zero_prob=0)
        anti = ExpPoly(p.antiderivative())
        exact = anti.poly_at(b) - anti.poly_at(a)
        got = sc.integrate_stieltjes(PiecewiseFunction.on(a, b, p), leb)
        rep.add(f"riemann-{c}", "polynomial integral matches antiderivative", got == xv(exact))
    return rep


# -- kolmogorov ----------------------------------------------------------------------------


def run_kolmogorov(cases: int | None, seed: int) -> SuiteReport:
    rep = SuiteReport("kolmogorov", seed, cases or 3)
    for n in range(3):
        law = binary_tree_law(n + 1)
        pushed = pushforward_measure(tree_restriction(n), law, binary_tree_law(n).space)
        rep.add(f"tree-{n}", f"level {n + 1} law projects onto level {n}", pushed == binary_tree_law(n))
    for n in range(4):
        m = node_marginal(binary_tree_law(n), n, "")
        rep.add(f"root-{n}", "root marginal is uniform", m.get(1) == xv("1/2") and m.get(-1) == xv("1/2"))
    rep.add("tree-family", "binary-tree family is consistent", kolmogorov_consistency(binary_tree_family(3)).passed)
    fam = product_marginals((0, 1, 2), {0: Fraction(1, 2), 1: Fraction(1, 3), 2: Fraction(1, 6)}, "abc", ["a", "ab", "abc", "bc", "c"])
    rep.add("product-family", "i.i.d. product marginals are consistent", kolmogorov_consistency(fam).passed)
    laws = dict(fam.laws)
    bad = laws[("a",)]
    laws[("a",)] = MeasureTable(bad.space, list(reversed(bad.weights)))
    r = kolmogorov_consistency(MarginalFamily(fam.index_universe, laws))
    rep.add("perturbed", "perturbed marginal is caught with a witness", not r.passed and r.witness is not None)
    return rep


# -- sampling ------------------------------------------------------------------------------


def run_sampling(cases: int | None, seed: int) -> SuiteReport:
    from .sampling import EmpiricalLaw, RNGStream, ks_band, ks_distance, sample_quantile

    n = cases or 10_000
    rep = SuiteReport("sampling", seed, n)
    law = dyadic_law(10)
    rep.add("dyadic-exact", "10-bit dyadic output is uniform on j/1024",
            len(law) == 1024 and set(law) == {Fraction(j, 1024) for j in range(1024)} and set(law.values()) == {Fraction(1, 1024)})
    rows = sample_coordinates(fair_bits(seed), n, 10)
    emp = EmpiricalLaw.of([float(coin_to_uniform(r)) for r in rows])
    d = ks_distance(emp, sc.uniform(0, 1))
    rep.add("coin-ks", "coin-to-uniform KS distance below 0.03", d < 0.03, "fixed-seed statistical", f"KS {d:.5f}")
    for c in range(3):
        F = ri.piecewise_linear_cdf(ri.seeded(seed, c))
        emp = sample_quantile(F, min(n, 4000), RNGStream(seed=seed, index=c))
        d = ks_distance(emp, F)
        exact_ok = sc.quantile_pushforward_check(F).passed
        rep.add(c, "exact and Monte Carlo quantile checks agree", exact_ok == (d < ks_band(emp.count)),
                "fixed-seed statistical", f"KS {d:.5f}")
    return rep


SUITES: dict[str, Callable[[int | None, int], SuiteReport]] = {
    "dynkin": run_dynkin,
    "measure-laws": run_measure_laws,
    "integral-laws": run_integral_laws,
    "inequalities": run_inequalities,
    "fubini": run_fubini,
    "rn": run_rn,
    "condexp": run_condexp,
    "stieltjes": run_stieltjes,
    "kolmogorov": run_kolmogorov,
    "sampling": run_sampling,
}


def run_suite(name: str, cases: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise MeasureKitError(f"unknown suite {name!r}")
    t0 = time.perf_counter()
    rep = SUITES[name](cases, seed)
    rep.seconds = time.perf_counter() - t0
    return rep
