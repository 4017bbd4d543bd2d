"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Where feasible the library result is compared with an independent oracle
from ``oracles.py`` or an explicit closed form.
"""

from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction

from conftest import ACCEPTANCE
from oracles import lambda_fixpoint, point_integral, poly_integral, sigma_closure

from measurekit import randinst as ri
from measurekit.checks import (
    agreement_instance,
    borel_cantelli_instance,
    condexp_instance,
    counterexample_instance,
    dynkin_exhaustive,
    fubini_instance,
    independence_instance,
    rn_chain,
    rn_violation,
    worked_example,
)
from measurekit.conditioning import (
    cond_exp,
    independent_item,
    jensen_item,
    repeated_item,
    taking_out_item,
    tower_item,
    verify_defining,
)
from measurekit.errors import AbsoluteContinuityError
from measurekit.integrate import indefinite, radon_nikodym
from measurekit.measure import agree_on_pi_system, borel_cantelli, evaluate, pushforward_measure
from measurekit.numerics import INF, ZERO, XValue, xv
from measurekit.product import (
    binary_tree_law,
    coin_to_uniform,
    dyadic_law,
    fair_bits,
    fubini_check,
    law_to_points,
    node_marginal,
    product_space,
    sample_coordinates,
    tree_nodes,
    tree_restriction,
)
from measurekit.sampling import EmpiricalLaw, ks_distance
from measurekit.stieltjes import cdf as sc
from measurekit.stieltjes.functions import ExpPoly, PiecewiseFunction
from measurekit.stieltjes.intervals import INF as RINF
from measurekit.stieltjes.laws import geometric_mean_series
from measurekit.stieltjes.outer import Premeasure, caratheodory_measurable, outer_measure

SEED = 0


def record(n: int, ok: bool, text: str):
    ACCEPTANCE[n] = (ok, text)
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
    assert ok, text


def _weights(mu) -> dict:
    return {a: w for a, w in mu.items()}


# 1 ---------------------------------------------------------------------------------


def _pi_systems_oracle(n):
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    for bits in range(1 << len(subsets)):
        fam = [s for i, s in enumerate(subsets) if bits >> i & 1]
        fs = set(fam)
        if all(a & b in fs for a in fam for b in fam):
            yield fam


def test_criterion_01_dynkin_exhaustive():
    t0 = time.perf_counter()
    checked, bad = dynkin_exhaustive(4)
    elapsed = time.perf_counter() - t0
    oracle_checked = oracle_bad = 0
    for n in range(5):
        for fam in _pi_systems_oracle(n):
            oracle_checked += 1
            if lambda_fixpoint(range(n), fam) != sigma_closure(range(n), fam):
                oracle_bad += 1
    ok = not bad and oracle_bad == 0 and checked == oracle_checked and elapsed < 60
    record(1, ok, f"{checked} pi-systems on |Omega|<=4, {len(bad)} exceptions, oracle agrees on count, {elapsed:.2f}s < 60s")


# 2 ---------------------------------------------------------------------------------


def test_criterion_02_measure_agreement():
    t0 = time.perf_counter()
    valid = bad = case = 0
    while valid < 1000:
        mu, nu, pi, loc = agreement_instance(ri.seeded(SEED, case))
        v = agree_on_pi_system(mu, nu, pi, loc)
        if v.premises_hold:
            valid += 1
            # oracle: the measures are equal iff every atom weight is equal
            same = all(a == b for a, b in zip(mu.weights, nu.weights))
            if not (v.conclusion and same):
                bad += 1
        case += 1
    mu, nu, fam, loc = counterexample_instance()
    v = agree_on_pi_system(mu, nu, fam, loc)
    cx = v.counterexample
    cx_ok = (
        not v.is_pi_system
        and v.agree_on_pi
        and not v.conclusion
        and cx is not None
        and evaluate(mu, cx) != evaluate(nu, cx)
    )
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and cx_ok and elapsed < 10
    record(2, ok, f"1000 valid instances, {bad} with mu != nu; counterexample {sorted(cx) if cx else None}; {elapsed:.2f}s < 10s")


# 3 ---------------------------------------------------------------------------------


def _length_oracle(S):
    total = Fraction(0)
    for iv in S.components:
        if iv.lo == -RINF or iv.hi == RINF:
            return INF
        total += Fraction(iv.hi) - Fraction(iv.lo)
    return xv(total)


def test_criterion_03_caratheodory():
    nu = Premeasure(sc.lebesgue())
    battery = [ri.interval_set(ri.seeded(SEED, c)) for c in range(200)]
    length_bad = sum(outer_measure(nu, S) != _length_oracle(S) for S in battery)
    pairs = split_bad = 0
    for E in battery:
        rep = caratheodory_measurable(nu, E, battery)
        pairs += len(rep.checks)
        split_bad += sum(not c.passed for c in rep.checks)
    ok = length_bad == 0 and split_bad == 0 and pairs == 200 * 200
    record(3, ok, f"200 interval sets, {length_bad} length mismatches; splitting {pairs - split_bad}/{pairs} pairs")


# 4 ---------------------------------------------------------------------------------


def test_criterion_04_geometric_mean():
    t0 = time.perf_counter()
    notes, ok = [], True
    for p in (Fraction(1, 2), Fraction(1, 4)):
        s = geometric_mean_series(p, Fraction(1, 10**10))
        q = 1 - p
        n = s.terms
        # closed form of the partial sum and of the exact tail
        closed = (1 - (n + 1) * q**n + n * q ** (n + 1)) / p
        tail = 1 / p - closed
        ok &= s.partial_sum == closed and 0 <= tail <= s.tail_bound and 1 / p - s.partial_sum <= Fraction(1, 10**9)
        notes.append(f"p={p}: {n} terms, gap {float(1 / p - s.partial_sum):.2e}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1
    record(4, ok, "; ".join(notes) + f"; {elapsed:.3f}s < 1s")


# 5 ---------------------------------------------------------------------------------


def test_criterion_05_laplace():
    errs, ok = [], True
    for lam, m in ((2, 1), (1, 3)):
        f = PiecewiseFunction.on(0, RINF, ExpPoly((1,), -m), True, False)
        v = sc.integrate_stieltjes(f, sc.exponential(lam))
        err = abs(float(v) - lam / (lam + m))
        errs.append(f"({lam},{m}) err {err:.1e}")
        ok &= err <= 1e-8
    record(5, ok, "Laplace transform of Exp(lam) " + ", ".join(errs) + " within 1e-8")


# 6 ---------------------------------------------------------------------------------


def test_criterion_06_quantile_coupling():
    bad = intervals = 0
    for c in range(50):
        F = ri.piecewise_linear_cdf(ri.seeded(SEED, 10**6 + c))
        rep = sc.quantile_pushforward_check(F)
        table = sc.inverse_table(F)
        grid = sc.rational_grid(F)
        # oracle: dF((a, b]) = F(b) - F(a) on every pair of grid points
        for a, b in itertools.combinations(grid, 2):
            intervals += 1
            if sc.pushforward_of_uniform(table, a, b) != Fraction(F(b)) - Fraction(F(a)):
                bad += 1
        bad += not rep.passed
    record(6, bad == 0, f"50 piecewise-linear CDFs with jumps, {intervals} rational intervals, {bad} mismatches")


# 7 ---------------------------------------------------------------------------------


def _ext_sum(terms):
    """Oracle sum in [-inf, inf] with 0 * inf = 0; None when inf - inf."""
    pos_inf = neg_inf = False
    total = Fraction(0)
    for v, w in terms:
        if w == ZERO or v == ZERO:
            continue
        if v.is_finite and w.is_finite:
            total += v.fraction * w.fraction
        elif v > ZERO:
            pos_inf = True
        else:
            neg_inf = True
    if pos_inf and neg_inf:
        return None
    return INF if pos_inf else (-INF if neg_inf else xv(total))


def test_criterion_07_fubini():
    kinds = {"a": 0, "b": 0, "c": 0}
    bad = 0
    for c in range(500):
        kind = "abc"[c % 3]
        f, mu, nu = fubini_instance(ri.seeded(SEED, c), kind)
        r = fubini_check(f, mu, nu)
        kinds[kind] += r.premises[kind]
        wm, wn = _weights(mu), _weights(nu)
        terms = []
        for a in mu.space.atoms:
            for b in nu.space.atoms:
                x, y = next(iter(a)), next(iter(b))
                wa, wb = wm[a], wn[b]
                w = ZERO if ZERO in (wa, wb) else wa * wb
                terms.append((f.at((x, y)), w))
        joint = _ext_sum(terms)
        if not (r.premises[kind] and r.equal and r.joint == r.iterated_xy == r.iterated_yx and joint == r.joint):
            bad += 1
    ok = bad == 0 and all(v == sum(1 for c in range(500) if "abc"[c % 3] == k) for k, v in kinds.items())
    record(7, ok, f"500 instances, premises a/b/c held in {kinds['a']}/{kinds['b']}/{kinds['c']}, {bad} disagreements")


# 8 ---------------------------------------------------------------------------------


def test_criterion_08_radon_nikodym():
    bad = 0
    for c in range(1000):
        mu, nu, lam = rn_chain(ri.seeded(SEED, c))
        d_mn, d_nl, d_ml = radon_nikodym(mu, nu), radon_nikodym(nu, lam), radon_nikodym(mu, lam)
        ok = indefinite(d_mn, nu) == mu
        for i, (wm, wn, wl) in enumerate(zip(mu.weights, nu.weights, lam.weights)):
            # oracle: the density is the ratio of atom weights where the base is positive
            if wn > ZERO:
                ok &= d_mn.values[i].fraction == wm.fraction / wn.fraction
            if wl > ZERO:
                ok &= d_ml.values[i] == d_mn.values[i] * d_nl.values[i]
        bad += not ok
    mu, nu = rn_violation()
    try:
        radon_nikodym(mu, nu)
        witness = None
    except AbsoluteContinuityError as exc:
        witness = exc.witness
    w_ok = witness is not None and evaluate(nu, witness) == ZERO and evaluate(mu, witness) > ZERO
    record(8, bad == 0 and w_ok, f"1000 chains, {bad} failures; violation witness {sorted(witness) if witness else None}")


# 9 ---------------------------------------------------------------------------------


def test_criterion_09_condexp():
    counts = {n: {"pass": 0, "fail": 0} for n in ("tower", "taking-out", "repeated", "conditional-jensen", "independent")}
    oracle_bad = 0
    c = 0
    while min(v["pass"] for v in counts.values()) < 500 and c < 20_000:
        f, g, P, B, C, phi = condexp_instance(ri.seeded(SEED, c))
        ce = cond_exp(f, P, B)
        # oracle: P[f; I] / P(I) on positive atoms, summed over P's atoms inside I
        for atom, val in ce.items():
            mass = evaluate(P, atom).fraction
            if mass == 0:
                oracle_bad += val != ZERO
                continue
            num = sum(
                (f.at(next(iter(a))).fraction * w.fraction for a, w in P.items() if a <= atom), Fraction(0)
            )
            oracle_bad += val.fraction != num / mass
        oracle_bad += not verify_defining(ce, f, P).passed
        items = [tower_item(f, P, B), taking_out_item(f, g, P, B), repeated_item(f, P, B, C), jensen_item(f, P, B, phi)]
        f2, P2, B2 = independence_instance(ri.seeded(SEED, 10**6 + c))
        items.append(independent_item(f2, P2, B2))
        for key, it in zip(counts, items):
            if it.status in counts[key]:
                counts[key][it.status] += 1
        c += 1
    worked = worked_example() == (xv("3/2"), xv("7/2"))
    fails = sum(v["fail"] for v in counts.values())
    enough = all(v["pass"] >= 500 for v in counts.values())
    ok = fails == 0 and oracle_bad == 0 and enough and worked
    summary = ", ".join(f"{k} {v['pass']}" for k, v in counts.items())
    record(9, ok, f"{c} cases: {summary} passes, {fails} violations, oracle mismatches {oracle_bad}; worked example {'ok' if worked else 'wrong'}")


# 10 --------------------------------------------------------------------------------


def test_criterion_10_coin_uniform():
    law = dyadic_law(10)
    oracle: dict = {}
    for bits in itertools.product((0, 1), repeat=10):
        x = sum(Fraction(b, 2 ** (i + 1)) for i, b in enumerate(bits))
        oracle[x] = oracle.get(x, 0) + Fraction(1, 1024)
    exact_ok = law == oracle and set(law) == {Fraction(j, 1024) for j in range(1024)}
    rows = sample_coordinates(fair_bits(SEED), 10_000, 10)
    emp = EmpiricalLaw.of([float(coin_to_uniform(r)) for r in rows])
    d = ks_distance(emp, sc.uniform(0, 1))
    record(10, exact_ok and d < 0.03, f"10-bit law uniform on j/1024: {exact_ok}; KS {d:.5f} < 0.03 (n=10^4, seed {SEED})")


# 11 --------------------------------------------------------------------------------


def _tree_oracle(n):
    nodes = tree_nodes(n)
    out: dict = {}
    for leaves in itertools.product((-1, 1), repeat=2**n):
        val = {w: v for w, v in zip((x for x in nodes if len(x) == n), leaves)}
        for w in sorted((x for x in nodes if len(x) < n), key=len, reverse=True):
            val[w] = val[w + "0"] * val[w + "1"]
        cfg = tuple(val[w] for w in nodes)
        out[cfg] = out.get(cfg, 0) + Fraction(1, 2 ** (2**n))
    return out


def test_criterion_11_binary_tree():
    ok = True
    for n in range(3):
        law_n = binary_tree_law(n)
        pushed = pushforward_measure(tree_restriction(n), binary_tree_law(n + 1), law_n.space)
        ok &= pushed == law_n
        ok &= {k: v.fraction for k, v in law_to_points(law_n).items()} == _tree_oracle(n)
    roots = [node_marginal(binary_tree_law(n), n, "").get(1) for n in range(4)]
    ok &= all(r == xv("1/2") for r in roots)
    record(11, ok, f"levels 1,2,3 project onto 0,1,2 exactly; root P(xi=1) = {', '.join(str(r) for r in roots)}")


# 12 --------------------------------------------------------------------------------


def test_criterion_12_riemann():
    leb = sc.lebesgue()
    x2 = sc.integrate_stieltjes(PiecewiseFunction.on(0, 1, ExpPoly((0, 0, 1))), leb)
    bad = 0
    for c in range(10):
        rng = ri.seeded(SEED, 2 * 10**6 + c)
        p = ri.polynomial(rng)
        a = ri.rational(rng)
        b = a + ri.nonneg_rational(rng, zero_prob=0)
        got = sc.integrate_stieltjes(PiecewiseFunction.on(a, b, p), leb)
        bad += got != xv(poly_integral(p.coeffs, a, b))
    record(12, x2 == xv("1/3") and bad == 0, f"integral of x^2 over [0,1] = {x2}; 10 polynomials, {bad} mismatches")


# 13 --------------------------------------------------------------------------------


def test_criterion_13_borel_cantelli():
    bad = 0
    for c in range(100):
        mu, prefix, cycle = borel_cantelli_instance(ri.seeded(SEED, 10**6 + c))
        r = borel_cantelli(mu, prefix, cycle)
        limsup = frozenset().union(*map(frozenset, cycle))
        mass = sum((w.fraction for a, w in mu.items() if a <= limsup), Fraction(0))
        bad += not (r.mass_sum.is_finite and r.limsup_mass == ZERO and mass == 0 and r.limsup_set == limsup)
    mu, prefix, cycle = borel_cantelli_instance(ri.seeded(SEED, 2 * 10**6), finite=False)
    r = borel_cantelli(mu, prefix, cycle)
    inf_ok = not r.mass_sum.is_finite and r.limsup_mass > ZERO
    record(13, bad == 0 and inf_ok, f"100 finite-sum sequences, {bad} with positive limsup mass; infinite case limsup mass {r.limsup_mass}")
