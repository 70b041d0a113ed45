import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fca_engine.classification import (
    Classification,
    Side,
    compose_infomorphisms,
    derive,
    identity_infomorphism,
    transpose,
    unit_counit,
)
from fca_engine.concept_lattice import (
    FormalConcept,
    check_concept_morphism,
    classify_lattice,
    clg,
    clg_morphism,
    clsn,
    clsn_morphism,
    compose_concept_morphisms,
    concepts,
    density_check,
    extent_intent_adjunctions,
    extent_quartet,
    identity_concept_morphism,
    intent_quartet,
    lattice_extremum,
    make_concept_lattice,
    roundtrip_iso,
    subset_generators,
    theories,
    theory_morphism,
    transpose_lattice,
)
from fca_engine.errors import InstanceNotPreserved, NotAdjoint, NotComplete, NotPoset, TypeNotPreserved
from fca_engine.galois import classify_connection, connection_mismatch
from fca_engine.generators import random_context, random_infomorphism
from fca_engine.order_core import Extremum, antichain, chain, is_order_isomorphism, make_preorder, powerset_order
from fca_engine.quartet import factor_coreflection_quartet, factor_reflection_quartet

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def brute_force(context):
    found = []
    for x in range(1 << len(context.instances)):
        y = derive(context, Side.INSTANCES, x)
        if derive(context, Side.TYPES, y) == x:
            found.append(FormalConcept(x, y))
    return found


def test_concepts_of_k1(k1):
    assert concepts(k1) == [FormalConcept(0b10, 0b11), FormalConcept(0b11, 0b01)]


def test_empty_context_has_one_concept(empty_context):
    assert concepts(empty_context) == [FormalConcept(0, 0)]
    assert len(clg(empty_context)) == 1


def test_instance_power_lattice_is_the_powerset(power_xy):
    lattice = clg(power_xy)
    assert len(lattice) == 4
    assert is_order_isomorphism(lattice.order, powerset_order(["x", "y"]), [0, 1, 2, 3])


def test_generators_of_k1(k1_lattice):
    assert k1_lattice.iota.tolist() == [1, 0]
    assert k1_lattice.tau.tolist() == [1, 0]
    assert k1_lattice.top == 1
    assert k1_lattice.bottom == 0


def test_meets_and_joins(k1_lattice):
    assert lattice_extremum(k1_lattice, [], Extremum.MEET) == FormalConcept(0b11, 0b01)
    assert lattice_extremum(k1_lattice, [], Extremum.JOIN) == FormalConcept(0b10, 0b11)
    assert lattice_extremum(k1_lattice, [0, 1], Extremum.MEET) == FormalConcept(0b10, 0b11)
    assert lattice_extremum(k1_lattice, [0, 1], Extremum.JOIN) == FormalConcept(0b11, 0b01)


def test_subset_generators(k1_lattice):
    assert subset_generators(k1_lattice, Side.INSTANCES, 0) == FormalConcept(0b10, 0b11)
    assert subset_generators(k1_lattice, Side.INSTANCES, 0b01) == FormalConcept(0b11, 0b01)
    assert subset_generators(k1_lattice, Side.TYPES, 0b11) == FormalConcept(0b10, 0b11)


def test_adjunctions_factor_the_derivation(k1_lattice):
    adjunctions = extent_intent_adjunctions(k1_lattice)
    assert classify_connection(adjunctions.extent).reflection
    assert classify_connection(adjunctions.intent).coreflection


def test_clsn_recovers_the_classification(k1, k1_lattice):
    assert clsn(k1_lattice) == k1
    assert clsn(transpose_lattice(k1_lattice)) == transpose(k1)


def test_classify_lattice(k1_lattice):
    kind = classify_lattice(k1_lattice)
    assert kind.extensional and kind.separated


def test_hand_built_lattices_are_validated():
    with pytest.raises(NotComplete):
        make_concept_lattice(antichain(["a", "b"]), [], [], [], [])
    loop = make_preorder(["a", "b"], [("a", "b"), ("b", "a")], close=True)
    with pytest.raises(NotPoset):
        make_concept_lattice(loop, [], [], [], [])


def test_density_failures_are_reported():
    # the middle element of a 3-chain is neither a join of instances nor a meet of types
    lattice = make_concept_lattice(chain(3), ["x"], ["y"], [2], [2])
    report = density_check(lattice)
    assert report.join_dense_failures == [1]
    assert report.meet_dense_failures == [0, 1]
    assert not report.holds
    assert density_check(clg(clsn(lattice))).holds


def test_roundtrip(k1_lattice):
    result = roundtrip_iso(k1_lattice)
    assert result.forward.tolist() == [0, 1]
    assert result.backward.tolist() == [0, 1]


def test_concept_morphism_checks(k1_lattice):
    identity = identity_concept_morphism(k1_lattice)
    assert identity.left.tolist() == [0, 1]
    with pytest.raises(NotAdjoint):
        check_concept_morphism(k1_lattice, k1_lattice, [0, 1], [1, 1], [0, 1], [0, 1])
    with pytest.raises(InstanceNotPreserved) as e:
        check_concept_morphism(k1_lattice, k1_lattice, [0, 1], [0, 1], [1, 0], [0, 1])
    assert e.value.witness["x2"] == "1"
    with pytest.raises(TypeNotPreserved) as e:
        check_concept_morphism(k1_lattice, k1_lattice, [0, 1], [0, 1], [0, 1], [1, 0])
    assert e.value.witness == {"y1": "a", "expected": 0, "actual": 1}


def test_clg_of_the_identity(k1, k1_lattice):
    h = clg_morphism(identity_infomorphism(k1), k1_lattice, k1_lattice)
    assert connection_mismatch(h.adjunction, identity_concept_morphism(k1_lattice).adjunction) is None
    assert clsn_morphism(h) == identity_infomorphism(k1)


def test_clg_of_the_unit(k1, k1_lattice):
    eta, _ = unit_counit(k1)
    h = clg_morphism(eta, source=k1_lattice)
    assert len(h.target) == 4
    assert h.target.extents[h.right[1]] == 0b11
    assert h.target.extents[h.right[0]] == 0b10


def test_theories_of_k1(k1_lattice):
    th = theories(k1_lattice)
    assert th.closure.tolist() == [0b01, 0b01, 0b11, 0b11]
    assert th.entails(0b10, 0b01)
    assert not th.entails(0b01, 0b10)


def test_theory_morphism_is_the_coreflection_factor(k1, k1_lattice):
    eta, _ = unit_counit(k1)
    h = clg_morphism(eta, source=k1_lattice)
    d = factor_coreflection_quartet(intent_quartet(h))
    assert connection_mismatch(d, theory_morphism(h)) is None
    c = factor_reflection_quartet(extent_quartet(h))
    assert len(c.source) == 4


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_enumeration_matches_brute_force(seed):
    context = random_context(np.random.default_rng(seed), 5)
    assert concepts(context) == brute_force(context)


def seeded_and_fixture_contexts(k1, empty_context, power_xy):
    rng = np.random.default_rng(2024)
    yield from (random_context(rng, 6) for _ in range(200))
    yield from (k1, empty_context, power_xy)
    yield Classification(["1", "2", "3"], ["a", "b"], np.ones((3, 2), dtype=bool))
    yield Classification(["1", "2", "3"], ["a", "b"], np.zeros((3, 2), dtype=bool))


def test_enumeration_and_round_trip_over_seeded_batch(k1, empty_context, power_xy):
    for context in seeded_and_fixture_contexts(k1, empty_context, power_xy):
        assert set(concepts(context)) == set(brute_force(context))
        lattice = clg(context)
        assert clsn(lattice) == context
        roundtrip_iso(lattice)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_clsn_of_clg_is_identity(seed):
    context = random_context(np.random.default_rng(seed), 5)
    lattice = clg(context)
    assert clsn(lattice) == context
    assert density_check(lattice).holds
    roundtrip_iso(lattice)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_clg_is_functorial(seed):
    rng = np.random.default_rng(seed)
    f = random_infomorphism(rng, random_context(rng, 4), 4)
    g = random_infomorphism(rng, f.target, 4)
    h = clg_morphism(f)
    k = clg_morphism(g, source=h.target)
    composite = compose_concept_morphisms(h, k)
    direct = clg_morphism(compose_infomorphisms(f, g), source=h.source, target=k.target)
    assert connection_mismatch(composite.adjunction, direct.adjunction) is None


def test_concepts_of_k2(k2):
    lattice = clg(k2)
    assert [c.extent for c in lattice.concepts] == [0b000, 0b001, 0b010, 0b011, 0b110, 0b111]
    assert lattice.iota.tolist() == [1, 2, 4]
    assert density_check(lattice).holds
