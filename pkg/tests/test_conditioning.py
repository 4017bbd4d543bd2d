from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from measurekit import randinst
from measurekit.conditioning import (
    CondExpTable,
    cond_exp,
    conditional_image_measure_check,
    density_conditioning,
    doob_dynkin_factor,
    independent_conditioning,
    jensen_item,
    property_suite,
    regular_cond_prob,
    repeated_item,
    taking_out_item,
    tower_item,
    verify_defining,
    verify_kernel,
)
from measurekit.checks import independence_instance
from measurekit.errors import MeasureKitError, NotMeasurableError
from measurekit.integrate import ConvexSpec, NumFn, integrate
from measurekit.measure import MeasureTable, evaluate, uniform
from measurekit.numerics import xv
from measurekit.product import product_measure, product_space
from measurekit.setalg import GroundSet, MeasurableMap, SigmaField

Q = Fraction
G4 = GroundSet([1, 2, 3, 4])
B2 = SigmaField(G4, [{1, 2}, {3, 4}])


def ident():
    return NumFn.from_points(G4.power_set(), lambda x: x)


def test_cond_exp_examples():
    P = uniform(G4)
    ce = cond_exp(ident(), P, B2)
    assert ce.values == (xv("3/2"), xv("7/2"))
    assert ce.at(3) == xv("7/2")
    full = cond_exp(ident(), P, G4.power_set())
    assert full.values == tuple(xv(x) for x in [1, 2, 3, 4])
    triv = cond_exp(ident(), P, G4.trivial())
    assert triv.values == (xv("5/2"),)


def test_zero_mass_atom_gets_zero():
    P = MeasureTable.from_points(G4, {1: Q(1, 2), 2: Q(1, 2), 3: 0, 4: 0})
    assert cond_exp(ident(), P, B2).values == (xv("3/2"), xv(0))


def test_verify_defining():
    P = uniform(G4)
    ce = cond_exp(ident(), P, B2)
    rep = verify_defining(ce, ident(), P)
    assert rep.passed and rep.members_checked == 4
    bad = CondExpTable(B2, (xv("3/2"), xv(4)))
    rep = verify_defining(bad, ident(), P)
    assert not rep.passed and 3 in rep.witness
    assert verify_defining(bad, ident(), P, pi=[[1, 2]]).passed is False
    assert verify_defining(ce, ident(), P, pi=[[1, 2]]).passed


def test_property_examples():
    P = uniform(G4)
    f = ident()
    assert tower_item(f, P, B2).status == "pass"
    assert integrate(cond_exp(f, P, B2).lift(P.space), P).value == xv("5/2")
    g = NumFn.indicator(G4.power_set(), [1, 2])
    assert taking_out_item(f, g, P, B2).status == "pass"
    assert repeated_item(f, P, B2, G4.trivial()).status == "pass"
    f01 = NumFn.from_points(G4.power_set(), {1: 0, 2: 1, 3: 0, 4: 1})
    sq = ConvexSpec("square")
    assert cond_exp(f01.map(sq), P, B2).values == (xv("1/2"), xv("1/2"))
    assert [sq(v) for v in cond_exp(f01, P, B2).values] == [xv("1/4"), xv("1/4")]
    assert jensen_item(f01, P, B2, sq).status == "pass"


def test_taking_out_premise():
    P = uniform(G4)
    g = NumFn.from_points(G4.power_set(), lambda x: x)
    assert taking_out_item(ident(), g, P, B2).status == "premise"


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_property_suite_random(seed):
    rng = randinst.seeded(seed, 0)
    g = randinst.ground(rng, 1, 6)
    s = randinst.partition(rng, g)
    P = randinst.measure(rng, s, probability=True)
    B = randinst.coarsen(rng, s)
    C = randinst.coarsen(rng, B)
    f = randinst.numfn(rng, s)
    gfn = randinst.measurable_fn(rng, B, s)
    rep = property_suite(f, gfn, P, B, C, randinst.convex(rng))
    assert rep.passed
    ce = cond_exp(f, P, B)
    assert verify_defining(ce, f, P).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_independent_item_random(seed):
    from measurekit.conditioning import independent_item

    f, P, B = independence_instance(randinst.seeded(seed, 0))
    assert independent_item(f, P, B).status == "pass"


def test_doob_dynkin():
    X = MeasurableMap(G4, GroundSet([-1, 1, 2]), {1: -1, 2: 1, 3: 2, 4: 2})
    Y = NumFn.from_points(G4.power_set(), lambda w: X(w) ** 2)
    h = doob_dynkin_factor(Y, X)
    assert h.h == {-1: xv(1), 1: xv(1), 2: xv(4)}
    c = doob_dynkin_factor(NumFn.constant(G4.power_set(), 7), X)
    assert set(c.h.values()) == {xv(7)}
    Z = NumFn.from_points(G4.power_set(), lambda w: w)
    with pytest.raises(NotMeasurableError) as exc:
        doob_dynkin_factor(Z, X)
    assert exc.value.witness == (3, 4)


def test_density_conditioning():
    ff = {0: 1, 1: 1}
    ee = {0: 1, 1: 1}
    f12 = {(0, 0): Q(1, 4), (1, 0): Q(1, 4), (0, 1): Q(1, 8), (1, 1): Q(3, 8)}
    f2 = {0: Q(1, 2), 1: Q(1, 2)}
    h = {(0, 0): 1, (1, 0): Q(5, 2), (0, 1): 2, (1, 1): 4}
    assert density_conditioning(h, f12, f2, ff, ee) == {0: xv("7/4"), 1: xv("7/2")}
    ones = {k: 1 for k in h}
    assert density_conditioning(ones, f12, f2, ff, ee) == {0: xv(1), 1: xv(1)}
    with pytest.raises(MeasureKitError):
        density_conditioning(h, f12, {0: 1, 1: 0}, ff, ee)
    # independent joint collapses to a weighted sum against f1
    f1 = {0: Q(1, 3), 1: Q(2, 3)}
    g2 = {0: Q(1, 4), 1: Q(3, 4)}
    ind = {(x, y): f1[x] * g2[y] for x in ff for y in ee}
    c = density_conditioning(h, ind, g2, {0: 1, 1: 1}, {0: 1, 1: 1})
    for y in ee:
        assert c[y] == xv(sum(Fraction(h[(x, y)]) * f1[x] for x in ff))


def test_independent_conditioning():
    gx, gy = GroundSet([-1, 1]), GroundSet([1, 2, 3])
    ps = product_space(gx.power_set(), gy.power_set())
    P = product_measure(uniform(gx), MeasureTable.from_points(gy, {1: Q(1, 2), 2: Q(1, 3), 3: Q(1, 6)}))
    X, Y = ps.projection(0), ps.projection(1)
    r = independent_conditioning(lambda x, y: x * y, X, Y, P)
    assert r.matches and set(r.d.values()) == {xv(0)}
    assert set(r.ce.values) == {xv(0)}
    r = independent_conditioning(lambda x, y: 5, X, Y, P)
    assert set(r.d.values()) == {xv(5)}
    r = independent_conditioning(lambda x, y: x * x + y, X, Y, P)
    assert r.matches and r.d == {1: xv(2), 2: xv(3), 3: xv(4)}
    with pytest.raises(MeasureKitError):
        independent_conditioning(lambda x, y: x, X, X, P)


def test_kernel_examples():
    gx, gz = GroundSet([0, 1]), GroundSet(["a", "b"])
    ps = product_space(gx.power_set(), gz.power_set())
    P = product_measure(MeasureTable.from_points(gx, {0: Q(1, 3), 1: Q(2, 3)}), uniform(gz))
    X, Z = ps.projection(0), ps.projection(1)
    K = regular_cond_prob(X, Z, P)
    assert K.rows == {"a": {0: Q(1, 3), 1: Q(2, 3)}, "b": {0: Q(1, 3), 1: Q(2, 3)}}
    K = regular_cond_prob(X, X, P)
    assert K.rows == {0: {0: 1, 1: 0}, 1: {0: 0, 1: 1}}
    Pz = product_measure(uniform(gx), MeasureTable.from_points(gz, {"a": 1, "b": 0}))
    K = regular_cond_prob(X, Z, Pz, default=1)
    assert K.rows["b"] == {1: 1}
    assert verify_kernel(K, X, Z, Pz, [lambda x, e: x + (e == "a")]).passed


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_kernel_disintegration_random(seed):
    rng = randinst.seeded(seed, 0)
    g = randinst.ground(rng, 1, 6)
    P = randinst.measure(rng, g.power_set(), probability=True)
    cx, cz = GroundSet(range(rng.randint(1, 3))), GroundSet(range(rng.randint(1, 3)))
    X = MeasurableMap(g, cx, {w: rng.choice(cx.elements) for w in g})
    Z = MeasurableMap(g, cz, {w: rng.choice(cz.elements) for w in g})
    K = regular_cond_prob(X, Z, P)
    f = lambda x, e: x * x - 3 * e + 1
    rep = verify_kernel(K, X, Z, P, [f])
    assert rep.passed
    # double-sum oracle computed pointwise
    direct = sum((evaluate(P, [w]).fraction * f(X(w), Z(w)) for w in g), Fraction(0))
    via = sum(
        (evaluate(P, Z.preimage([e])).fraction * sum((K(e, x) * f(x, e) for x in cx), Fraction(0)) for e in cz),
        Fraction(0),
    )
    assert direct == via


def test_conditional_image_measure():
    X = MeasurableMap(G4, GroundSet(["a", "b", "c"]), {1: "a", 2: "b", 3: "b", 4: "c"})
    cod = GroundSet(["a", "b", "c"]).power_set()
    f = NumFn.from_points(cod, {"a": 1, "b": 2, "c": 6})
    A = SigmaField(GroundSet(["a", "b", "c"]), [{"a", "b"}, {"c"}])
    P = MeasureTable.from_points(G4, {1: Q(1, 2), 2: Q(1, 4), 3: Q(1, 8), 4: Q(1, 8)})
    assert conditional_image_measure_check(X, f, A, P).passed
