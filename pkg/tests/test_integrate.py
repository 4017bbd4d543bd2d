from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from oracles import point_integral

from measurekit.errors import AbsoluteContinuityError, PremiseError, SigmaFiniteError
from measurekit.integrate import (
    ConvexSpec,
    EventualSequence,
    NumFn,
    convergence_suite,
    determination_check,
    epsilon_delta,
    holder_check,
    indefinite,
    integrate,
    jensen_check,
    lp_seminorm,
    lq_subset_lp_check,
    markov_check,
    minkowski_check,
    radon_nikodym,
    root_bracket,
    simple_approx,
    verify_epsilon_delta,
)
from measurekit.measure import MeasureTable, evaluate, uniform
from measurekit.numerics import INF, NEG_INF, XValue
from measurekit.setalg import GroundSet, SigmaField

G2 = GroundSet([1, 2])
G3 = GroundSet([1, 2, 3])
P2 = G2.power_set()
P3 = G3.power_set()
Q = Fraction


def fn(space, *vals):
    return NumFn(space, [XValue.parse(v) if isinstance(v, str) else v for v in vals])


def test_integrate_examples():
    mu = uniform(G3)
    ind = NumFn.indicator(P3, [1, 2])
    assert integrate(ind, mu).value == evaluate(mu, [1, 2])
    inf_mu = MeasureTable(P3, [INF, 1, 0])
    assert integrate(NumFn.constant(P3, 0), inf_mu).value == 0
    r = integrate(fn(P2, "inf", 1), MeasureTable(P2, [0, 1]))
    assert r.value == 1 and r.well_defined


def test_integral_ill_defined():
    r = integrate(fn(P2, "inf", "-inf"), uniform(G2))
    assert not r.well_defined and r.value == 0
    assert r.pos_part_integral == INF and r.neg_part_integral == INF


def test_simple_approx_examples():
    assert simple_approx(fn(P2, "5/3", 0), 1).values[0] == 1
    assert simple_approx(fn(P2, 0, 0), 4).values == (0, 0)
    assert simple_approx(fn(P2, "inf", 0), 3).values[0] == 3


def test_indefinite_examples():
    mu = uniform(G2)
    assert indefinite(NumFn.constant(P2, 1), mu) == mu
    two = indefinite(NumFn.constant(P2, 2), mu)
    assert two.mass() == 2 and list(two.weights) == [1, 1]
    nullinf = indefinite(fn(P2, "inf", 0), MeasureTable(P2, [0, 1]))
    assert nullinf.mass() == 0


def test_radon_nikodym_examples():
    mu = MeasureTable(P3, [Q(1, 6), Q(2, 6), Q(3, 6)])
    assert radon_nikodym(mu, uniform(G3)).values == (Q(1, 2), 1, Q(3, 2))
    assert radon_nikodym(mu, mu).values == (1, 1, 1)
    with pytest.raises(AbsoluteContinuityError) as exc:
        radon_nikodym(MeasureTable(P2, [1, 1]), MeasureTable(P2, [1, 0]))
    assert exc.value.witness == frozenset([2])
    with pytest.raises(SigmaFiniteError):
        radon_nikodym(MeasureTable(P2, [INF, 1]), MeasureTable(P2, [1, 1]))


def test_epsilon_delta_examples():
    P = uniform(G2)
    d = epsilon_delta(P, P, Q(1, 2))
    assert d == Q(1, 2) and verify_epsilon_delta(P, P, Q(1, 2), d) is None
    mu = MeasureTable(P3, [Q(1, 6), Q(2, 6), Q(3, 6)])
    d = epsilon_delta(mu, uniform(G3), Q(1, 4))
    assert d == Q(1, 6)
    assert verify_epsilon_delta(mu, uniform(G3), Q(1, 4), d) is None
    with pytest.raises(PremiseError):
        epsilon_delta(MeasureTable(P2, [INF, 1]), MeasureTable(P2, [1, 1]), Q(1, 2))


def test_lp_examples():
    P = uniform(G2)
    assert lp_seminorm(NumFn.constant(P2, 1), P, 3).value == 1
    assert lp_seminorm(fn(P2, 3, -4), P, "inf").value == 4
    n = lp_seminorm(fn(P2, 3, 4), P, 2)
    assert not n.exact
    lo, hi = n.lo.fraction, n.hi.fraction
    assert lo * lo <= Q(25, 2) <= hi * hi and hi - lo <= Q(1, 10**12)


def test_root_bracket():
    lo, hi = root_bracket(Q(2), 2)
    assert lo * lo <= 2 <= hi * hi and hi - lo <= Q(1, 10**12)
    assert root_bracket(Q(9, 4), 2) == (Q(3, 2), Q(3, 2))


def test_inequality_examples():
    P = uniform(G2)
    m = markov_check(fn(P2, 0, 2), P, 2)
    assert m.passed and m.equality and m.lhs == "1" and m.rhs == "1"
    one = NumFn.constant(P2, 1)
    cs = holder_check(one, one, P, 2, 2)
    assert cs.passed and cs.equality
    j = jensen_check(fn(P2, 0, 1), P, ConvexSpec("square"))
    assert j.passed and j.lhs == "1/2" and j.rhs == "1/4" and not j.equality
    assert j.note == "f not a.s. constant"
    assert holder_check(one, one, P, 3, 3).status == "premise"


def test_lq_subset_lp_examples():
    P = uniform(G2)
    assert lq_subset_lp_check(P, fn(P2, 1, 2), 1, 2).holds
    r = lq_subset_lp_check(P, fn(P2, "inf", 1), 1, 2)
    assert not r.q_norm.is_finite and not r.p_norm.is_finite and r.holds
    r = lq_subset_lp_check(P, fn(P2, 3, 4), 1, 2)
    assert r.p_norm.value == Q(7, 2)


def test_convergence_examples():
    P = uniform(G2)
    f = fn(P2, "5/3", "1/3")
    const = [f, f, f]
    for mode in ("levi", "fatou"):
        r = convergence_suite(const, P, mode)
        assert r.holds and r.equality
    r = convergence_suite(const, P, "dominated", dominator=f)
    assert r.holds
    seq = [simple_approx(f, n) for n in range(1, 7)]
    r = convergence_suite(seq, P, "levi")
    assert r.premises_ok and r.holds
    a, ac = NumFn.indicator(P2, [1]), NumFn.indicator(P2, [2])
    r = convergence_suite(EventualSequence([], [a, ac]), P, "fatou")
    assert r.lhs == 0 and r.rhs == Q(1, 2) and r.holds and not r.equality


def test_determination_examples():
    mu = MeasureTable(P3, [1, 0, 1])
    f = fn(P3, 1, 2, 3)
    assert determination_check(f, f, mu).consistent
    r = determination_check(f, fn(P3, 1, 7, 3), mu)
    assert r.integrals_agree and r.ae_equal
    r = determination_check(f, fn(P3, 9, 2, 3), mu)
    assert not r.integrals_agree and not r.ae_equal and r.witness is not None


# -- properties ---------------------------------------------------------------------

vals = st.one_of(st.fractions(-5, 5, max_denominator=4), st.sampled_from([INF, NEG_INF]))
finite_vals = st.fractions(-5, 5, max_denominator=4)
weights = st.fractions(0, 3, max_denominator=4)


@st.composite
def instance(draw, values=finite_vals, n_funcs=1):
    n = draw(st.integers(1, 4))
    g = GroundSet(range(n))
    P = g.power_set()
    ws = draw(st.lists(weights, min_size=n, max_size=n))
    fs = [draw(st.lists(values, min_size=n, max_size=n)) for _ in range(n_funcs)]
    return MeasureTable(P, ws), [NumFn(P, f) for f in fs]


@given(instance(n_funcs=2))
def test_integral_linear_against_oracle(inst):
    mu, (f, g) = inst
    w = {x: mu.point_atom_weight(x).fraction for x in mu.ground}
    fv = {x: f.at(x).fraction for x in mu.ground}
    gv = {x: g.at(x).fraction for x in mu.ground}
    assert integrate(f, mu).value == point_integral(fv, w)
    assert integrate(f + g, mu).value == point_integral(fv, w) + point_integral(gv, w)


@given(instance(values=vals))
def test_integral_pos_neg_split(inst):
    mu, (f,) = inst
    r = integrate(f, mu)
    assert r.pos_part_integral == integrate(f.pos(), mu).value
    assert r.neg_part_integral == integrate(f.neg(), mu).value
    if r.well_defined:
        assert r.value == r.pos_part_integral - r.neg_part_integral


@given(instance(values=st.fractions(0, 5, max_denominator=4)))
def test_simple_approx_monotone_to_f(inst):
    mu, (f,) = inst
    prev = None
    for n in range(1, 8):
        s = simple_approx(f, n)
        assert s.le(f)
        if prev is not None:
            assert prev.le(s)
        prev = s
    # dyadic values below the cap are reproduced exactly
    quarters = f.map(lambda v: XValue(Fraction(math.floor(v.fraction * 4), 4)))
    assert simple_approx(quarters, 8) == quarters


@settings(max_examples=60)
@given(instance(n_funcs=0), st.data())
def test_radon_nikodym_round_trip(inst, data):
    nu, _ = inst
    n = len(nu.ground)
    ws = [data.draw(weights) if nu.weights[i] > 0 else Fraction(0) for i in range(n)]
    mu = MeasureTable(nu.space, ws)
    d = radon_nikodym(mu, nu)
    assert indefinite(d, nu) == mu


@given(instance(n_funcs=2), st.fractions(0, 3, max_denominator=3))
def test_inequalities_hold(inst, a):
    mu, (f, g) = inst
    if a > 0:
        assert markov_check(abs(f), mu, a).passed
    assert holder_check(f, g, mu, 2, 2).passed
    assert minkowski_check(f, g, mu, 1).passed
    assert minkowski_check(f, g, mu, 2).passed


@given(instance())
def test_jensen_on_probabilities(inst):
    mu, (f,) = inst
    if mu.mass() == 0:
        return
    P = MeasureTable(mu.space, [w / mu.mass() for w in mu.weights])
    for phi in (ConvexSpec("square"), ConvexSpec("abs"), ConvexSpec("power", degree=4)):
        assert jensen_check(f, P, phi).passed
