from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st
from oracles import atoms_of, lambda_fixpoint, powerset, sigma_closure

from measurekit.config import config
from measurekit.errors import GroundSizeError, MeasureKitError, NotMeasurableError, SpaceMismatchError
from measurekit.setalg import (
    GroundSet,
    MeasurableMap,
    SetFamily,
    SigmaField,
    all_subsets,
    generate_sigma_field,
    is_lambda_system,
    is_measurable,
    is_pi_system,
    join,
    lambda_closure,
    meet,
    pullback_sigma,
    pushforward_sigma,
    sigma_of_map,
    trace,
)


def fs(*sets):
    return {frozenset(s) for s in sets}


G3 = GroundSet([1, 2, 3])
G4 = GroundSet([1, 2, 3, 4])


def test_generate_single_set():
    sf = generate_sigma_field(G3, SetFamily(G3, [[1]]))
    assert set(sf.atoms) == fs([1], [2, 3])
    assert set(sf.members()) == fs([], [1], [2, 3], [1, 2, 3])


def test_generate_empty_family():
    sf = generate_sigma_field(G3, SetFamily(G3, []))
    assert set(sf.atoms) == fs([1, 2, 3])
    assert sf.n_members() == 2


def test_generate_overlapping_pair_gives_power_set():
    fam = [[1, 2], [2, 3]]
    sf = generate_sigma_field(G4, SetFamily(G4, fam))
    assert set(sf.atoms) == fs([1], [2], [3], [4])
    assert set(sf.members()) == sigma_closure(G4, fam)
    assert len(sf.members()) == 16


def test_pi_system_examples():
    assert is_pi_system(SetFamily(G3, [[1], [1, 2], [1, 2, 3]]))
    assert not is_pi_system(SetFamily(G3, [[1, 2], [2, 3]]))
    assert is_pi_system(SetFamily(G3, []))


def test_lambda_system_examples():
    g = GroundSet([1, 2])
    assert is_lambda_system(g, g.power_set().family())
    assert is_lambda_system(g, SetFamily(g, [[], [1, 2], [1], [2]]))
    assert not is_lambda_system(g, SetFamily(g, [[1, 2], [1]]))


def test_lambda_closure_examples():
    lc = lambda_closure(G3, SetFamily(G3, [[1]]))
    assert lc.as_set() == fs([], [1], [2, 3], [1, 2, 3])
    full = G3.power_set().family()
    assert lambda_closure(G3, full).same_members(full)


def test_lambda_closure_strictly_smaller_for_non_pi_family():
    fam = SetFamily(G4, [[1, 2], [2, 3]])
    lc = lambda_closure(G4, fam).as_set()
    sigma = frozenset(generate_sigma_field(G4, fam).members())
    assert lc == lambda_fixpoint(G4, fam.members)
    assert lc < sigma
    assert frozenset([2]) not in lc


def test_lambda_closure_three_point_pair_is_not_a_strict_gap():
    # on three points the pair {1,2},{2,3} already generates every subset via complements and disjoint unions
    fam = SetFamily(G3, [[1, 2], [2, 3]])
    assert lambda_closure(G3, fam).as_set() == frozenset(powerset(G3))


def test_trace_examples():
    sf = SigmaField(G3, [[1], [2, 3]])
    assert set(trace(sf, [2, 3]).atoms) == fs([2, 3])
    assert trace(G3.power_set(), [1, 3]) == GroundSet([1, 3]).power_set()
    assert set(trace(SigmaField(G4, [[1, 2], [3, 4]]), [2, 3]).atoms) == fs([2], [3])


def test_join_and_meet():
    a = SigmaField(G4, [[1, 2], [3, 4]])
    b = SigmaField(G4, [[1, 3], [2, 4]])
    assert join([a, b]) == G4.power_set()
    assert join([a, G4.trivial()]) == a
    assert join([a, a]) == a
    assert meet([a, b]) == G4.trivial()
    assert meet([a, G4.power_set()]) == a


def test_pullback_examples():
    cod = GroundSet(["a", "b"])
    const = MeasurableMap.constant(G3, cod, "a")
    assert pullback_sigma(const, cod.power_set()) == G3.trivial()
    ident = MeasurableMap.identity(G3)
    sf = SigmaField(G3, [[1], [2, 3]])
    assert pullback_sigma(ident, sf) == sf
    f = MeasurableMap(G3, cod, {1: "a", 2: "a", 3: "b"})
    assert set(pullback_sigma(f, cod.power_set()).atoms) == fs([1, 2], [3])
    assert sigma_of_map(f) == pullback_sigma(f, cod.power_set())


def test_pushforward_examples():
    cod = GroundSet(["a", "b"])
    f = MeasurableMap(GroundSet([1, 2]), cod, {1: "a", 2: "b"})
    assert pushforward_sigma(f, GroundSet([1, 2]).power_set()) == cod.power_set()
    const = MeasurableMap.constant(G3, cod, "a")
    assert pushforward_sigma(const, G3.trivial()) == cod.power_set()
    assert set(pushforward_sigma(f, GroundSet([1, 2]).trivial()).atoms) == fs(["a", "b"])


def test_is_measurable_examples():
    sf = SigmaField(G3, [[1, 2], [3]])
    assert is_measurable(MeasurableMap.identity(G3), sf, sf)
    two = GroundSet([0, 1])
    ind = MeasurableMap(G3, two, {1: 1, 2: 0, 3: 0})  # indicator of {1}, not in sf
    assert not is_measurable(ind, sf, two.power_set())
    assert is_measurable(ind, sf, two.trivial())


def test_errors():
    with pytest.raises(MeasureKitError):
        GroundSet([1, 1])
    with pytest.raises(MeasureKitError):
        SigmaField(G3, [[1], [1, 2], [3]])
    with pytest.raises(MeasureKitError):
        SigmaField(G3, [[1]])
    with pytest.raises(MeasureKitError):
        MeasurableMap(G3, G3, {1: 1})
    with pytest.raises(NotMeasurableError) as exc:
        SigmaField(G3, [[1, 2], [3]]).atoms_in([1])
    assert exc.value.witness == frozenset([1, 2])
    with pytest.raises(SpaceMismatchError):
        join([G3.power_set(), G4.power_set()])
    big = GroundSet(range(config.max_ground_size + 1))
    with pytest.raises(GroundSizeError):
        all_subsets(big)
    with pytest.raises(GroundSizeError):
        big.power_set().members()


# -- properties ---------------------------------------------------------------------


@st.composite
def ground_and_family(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    g = GroundSet(range(n))
    members = draw(st.lists(st.sets(st.integers(0, n - 1)), max_size=4))
    return g, members


@given(ground_and_family())
def test_generated_field_matches_closure_oracle(gf):
    g, members = gf
    sf = generate_sigma_field(g, SetFamily(g, members))
    closure = sigma_closure(g, members)
    assert set(sf.members()) == closure
    assert set(sf.atoms) == atoms_of(g, closure)


@given(ground_and_family())
def test_lambda_closure_matches_oracle(gf):
    g, members = gf
    assert lambda_closure(g, SetFamily(g, members)).as_set() == lambda_fixpoint(g, members)


@given(ground_and_family())
def test_dynkin_on_pi_systems(gf):
    g, members = gf
    fam = SetFamily(g, members)
    if is_pi_system(fam):
        assert lambda_closure(g, fam).as_set() == frozenset(generate_sigma_field(g, fam).members())


@given(ground_and_family())
def test_generated_field_is_lambda_and_pi(gf):
    g, members = gf
    fam = generate_sigma_field(g, SetFamily(g, members)).family()
    assert is_pi_system(fam)
    assert is_lambda_system(g, fam)


@st.composite
def two_partitions(draw):
    n = draw(st.integers(1, 5))
    g = GroundSet(range(n))
    la = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    lb = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))

    def part(labels):
        d: dict = {}
        for x, b in zip(g, labels):
            d.setdefault(b, []).append(x)
        return SigmaField(g, d.values())

    return part(la), part(lb)


@given(two_partitions())
def test_join_meet_lattice(pair):
    a, b = pair
    j, m = join([a, b]), meet([a, b])
    assert j.refines(a) and j.refines(b)
    assert a.refines(m) and b.refines(m)
    assert set(j.members()) == sigma_closure(a.ground, list(a.members()) + list(b.members()))
    assert set(m.members()) == set(a.members()) & set(b.members())


@settings(max_examples=50)
@given(two_partitions(), st.data())
def test_pullback_and_pushforward_are_adjoint(pair, data):
    a, b = pair
    g = a.ground
    cod = GroundSet(["p", "q", "r"])
    graph = {x: data.draw(st.sampled_from(cod.elements)) for x in g}
    f = MeasurableMap(g, cod, graph)
    push = pushforward_sigma(f, a)
    assert is_measurable(f, a, push)
    # push is the largest such field: every codomain set with measurable preimage belongs to it
    for s in push.ground.power_set().members():
        assert push.contains(s) == a.contains(f.preimage(s))
    pull = pullback_sigma(f, cod.power_set())
    assert a.refines(pull) == is_measurable(f, a, cod.power_set())
