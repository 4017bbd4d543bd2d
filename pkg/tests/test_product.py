from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from measurekit import randinst
from measurekit.errors import PremiseError, SigmaFiniteError
from measurekit.integrate import NumFn
from measurekit.measure import MeasureTable, dirac, evaluate, uniform
from measurekit.numerics import INF
from measurekit.product import (
    MarginalFamily,
    binary_tree_family,
    binary_tree_law,
    coin_to_uniform,
    dyadic_law,
    fair_bits,
    fubini_check,
    grid_density_check,
    is_independency,
    joint_vs_product_check,
    kolmogorov_consistency,
    law_to_points,
    marginal,
    node_marginal,
    product_marginals,
    product_measure,
    product_space,
    pushforward_measure,
    raise_independence_check,
    sample_coordinates,
    tree_restriction,
)
from measurekit.setalg import GroundSet, MeasurableMap, SetFamily, SigmaField

Q = Fraction
G2 = GroundSet([1, 2])
G4 = GroundSet([1, 2, 3, 4])


def test_product_measure_examples():
    p = product_measure(uniform(G2), uniform(G2))
    assert p.space.ground == GroundSet(itertools.product([1, 2], [1, 2]))
    assert set(p.weights) == {Q(1, 4)} and len(p.weights) == 4
    mu = MeasureTable(G2.power_set(), [Q(1, 3), 2])
    d = product_measure(dirac(G2.power_set(), 1), mu)
    assert evaluate(d, [(1, 1)]) == Q(1, 3) and evaluate(d, [(1, 2)]) == 2
    assert evaluate(d, [(2, 1), (2, 2)]) == 0
    m1 = MeasureTable(G2.power_set(), [1, 2])
    m2 = MeasureTable(G2.power_set(), [Q(1, 2), Q(1, 4)])
    assert product_measure(m1, m2).mass() == 3 * Q(3, 4)
    with pytest.raises(SigmaFiniteError):
        product_measure(MeasureTable(G2.power_set(), [INF, 1]), m1)


def test_marginal_recovers_factor():
    mu = MeasureTable(G2.power_set(), [Q(1, 3), Q(2, 3)])
    nu = MeasureTable(G2.power_set(), [Q(1, 4), Q(3, 4)])
    p = product_measure(mu, nu)
    assert marginal(p, [mu.space, nu.space], 0) == mu
    assert marginal(p, [mu.space, nu.space], 1) == nu


def test_fubini_examples():
    ps = product_space(G2.power_set(), G2.power_set())
    U = uniform(G2)
    r = fubini_check(NumFn.from_points(ps.space, lambda xy: xy[0] + xy[1]), U, U)
    assert (r.joint, r.iterated_xy, r.iterated_yx) == (3, 3, 3) and r.passed
    mu = MeasureTable(G2.power_set(), [1, 2])
    nu = MeasureTable(G2.power_set(), [3, 5])
    r = fubini_check(NumFn.constant(ps.space, 1), mu, nu)
    assert r.joint == 24 == r.iterated_xy == r.iterated_yx
    f = NumFn.from_points(ps.space, lambda xy: INF if xy == (1, 1) else 1)
    r = fubini_check(f, U, U)
    assert r.premise_used == "a" and r.joint == INF and r.equal


def test_fubini_without_premise_is_reported():
    ps = product_space(G2.power_set(), G2.power_set())
    U = uniform(G2)
    f = NumFn.from_points(ps.space, lambda xy: INF if xy == (1, 1) else (-INF if xy == (2, 2) else 0))
    r = fubini_check(f, U, U)
    assert not r.premise_holds and r.passed


def _xor_families():
    P = uniform(G4)
    A, B, C = [1, 2], [1, 3], [1, 4]
    return P, [SetFamily(G4, [A]), SetFamily(G4, [B]), SetFamily(G4, [C])]


def test_independency_examples():
    P, fams = _xor_families()
    assert is_independency(P, fams[:2]).passed
    assert is_independency(P, [fams[0], fams[2]]).passed
    r = is_independency(P, fams)
    assert not r.passed
    idx, choice, lhs, rhs = r.counterexample
    assert idx == (0, 1, 2) and lhs == Q(1, 4) and rhs == Q(1, 8)
    assert is_independency(P, [fams[0], G4.trivial().members()]).passed


def test_raise_independence_examples():
    ps = product_space(G2.power_set(), G2.power_set())
    P = product_measure(uniform(G2), uniform(G2))
    rows = SetFamily(ps.ground, [[(1, 1), (1, 2)], []])
    cols = SetFamily(ps.ground, [[(1, 1), (2, 1)], []])
    r = raise_independence_check(P, [rows, cols])
    assert r.premise_pi and r.families_independent and r.generated_independent
    c1 = SetFamily(G4, [[1, 2], [1, 3]])
    c2 = SetFamily(G4, [[1, 4]])
    with pytest.raises(PremiseError):
        raise_independence_check(uniform(G4), [c1, c2])
    r = raise_independence_check(uniform(G4), [c1, c2], strict=False)
    assert not r.premise_pi and r.families_independent and not r.generated_independent
    assert r.consistent and r.counterexample is not None
    assert raise_independence_check(uniform(G4), [SetFamily(G4, [[1]])]).generated_independent


def test_joint_vs_product_examples():
    ps = product_space(G2.power_set(), G2.power_set())
    P = product_measure(uniform(G2), uniform(G2))
    X, Y = ps.projection(0), ps.projection(1)
    r = joint_vs_product_check(X, Y, P)
    assert r.independent and r.joint_is_product
    r = joint_vs_product_check(X, X, P)
    assert not r.independent and not r.joint_is_product


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_joint_vs_product_random(seed):
    rng = randinst.seeded(seed, 0)
    g = randinst.ground(rng, 2, 4)
    P = randinst.measure(rng, g.power_set(), probability=True)
    cod = GroundSet(["a", "b"])
    X = MeasurableMap(g, cod, {x: rng.choice("ab") for x in g})
    Y = MeasurableMap(g, cod, {x: rng.choice("ab") for x in g})
    assert joint_vs_product_check(X, Y, P).consistent


def test_grid_density():
    wx = {0: Q(1, 2), 1: Q(1, 2)}
    wy = {0: Q(1, 2), 1: Q(1, 2)}
    indep = grid_density_check({(x, y): 1 for x in wx for y in wy}, wx, wy)
    assert indep.independent and indep.factorizes
    dep = grid_density_check({(0, 0): 2, (1, 1): 2}, wx, wy)
    assert not dep.independent and not dep.factorizes


def test_kolmogorov_examples():
    fam = product_marginals([0, 1], {0: Q(1, 3), 1: Q(2, 3)}, ["a", "b", "c"], [["a"], ["a", "b"], ["a", "b", "c"], ["c"]])
    assert kolmogorov_consistency(fam).passed
    laws = dict(fam.laws)
    bad = MeasureTable.from_points(GroundSet([(0,), (1,)]), {(0,): Q(1, 2), (1,): Q(1, 2)})
    laws[("c",)] = bad
    r = kolmogorov_consistency(MarginalFamily(fam.index_universe, laws))
    assert not r.passed
    F, G, cfg, projected, target = r.witness
    assert F == ("c",) and projected != target


def test_binary_tree():
    law0 = binary_tree_law(0)
    assert law_to_points(law0) == {(-1,): Q(1, 2), (1,): Q(1, 2)}
    for n in range(4):
        assert node_marginal(binary_tree_law(n), n, "") == {-1: Q(1, 2), 1: Q(1, 2)}
    for n in range(3):
        pushed = pushforward_measure(tree_restriction(n), binary_tree_law(n + 1), binary_tree_law(n).space)
        assert pushed == binary_tree_law(n)
    assert kolmogorov_consistency(binary_tree_family(3)).passed


def test_coin_to_uniform():
    assert dyadic_law(1) == {Q(0): Q(1, 2), Q(1, 2): Q(1, 2)}
    assert dyadic_law(3) == {Q(j, 8): Q(1, 8) for j in range(8)}
    assert coin_to_uniform([1, 0, 1]) == Q(5, 8)
    assert coin_to_uniform([1, 1, 1, 1], 2) == Q(3, 4)


def test_sampler_determinism():
    s = fair_bits(42)
    a = sample_coordinates(s, 5, 8)
    b = sample_coordinates(fair_bits(42), 5, 8)
    assert a == b and len(a) == 5 and all(len(r) == 8 for r in a)
    assert sample_coordinates(fair_bits(43), 5, 8) != a
    assert all(v in (0, 1) for r in a for v in r)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_product_is_unique_on_rectangles(seed):
    rng = randinst.seeded(seed, 0)
    g1, g2 = randinst.ground(rng, 1, 3), randinst.ground(rng, 1, 3)
    s1, s2 = randinst.partition(rng, g1), randinst.partition(rng, g2)
    mu, nu = randinst.measure(rng, s1), randinst.measure(rng, s2)
    ps = product_space(s1, s2)
    p = product_measure(mu, nu)
    for a in s1.members():
        for b in s2.members():
            assert evaluate(p, ps.rectangle([a, b])) == evaluate(mu, a) * evaluate(nu, b)
