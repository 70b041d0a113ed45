import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fca_engine.errors import (
    CapacityExceeded,
    DuplicateLabel,
    NoBound,
    NotMonotone,
    NotReflexive,
    NotTransitive,
    UnknownLabel,
)
from fca_engine.order_core import (
    Extremum,
    MapKind,
    MonotoneMap,
    SetFunction,
    antichain,
    chain,
    classify_map,
    covers,
    direct_image,
    extremum,
    inverse_image,
    is_order_isomorphism,
    kernel_preorder,
    make_preorder,
    missing_meet,
    powerset_order,
    validate_preorder,
)
from fca_engine.utils.bitsets import is_subset


def test_missing_reflexive_pair_is_rejected():
    with pytest.raises(NotReflexive) as e:
        make_preorder(["a", "b"], [("a", "a")])
    assert e.value.witness == {"element": "b"}


def test_transitivity_witness_is_a_chain():
    pairs = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")]
    with pytest.raises(NotTransitive) as e:
        make_preorder(["a", "b", "c"], pairs)
    assert e.value.witness["chain"] == ["a", "b", "c"]


def test_close_builds_the_reflexive_transitive_closure():
    order = make_preorder(["a", "b", "c"], [("a", "b"), ("b", "c")], close=True)
    assert order.le(order.index("a"), order.index("c"))
    assert not order.le(order.index("c"), order.index("a"))
    assert order.is_poset()


def test_labels_must_be_unique_and_known():
    with pytest.raises(DuplicateLabel):
        make_preorder(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        make_preorder(["a"], [("a", "z")])
    with pytest.raises(UnknownLabel):
        chain(2).index("7")


def test_chain_bounds(chain2):
    three = chain(3)
    assert extremum(three, [1, 2], Extremum.MEET) == 1
    assert extremum(three, [1, 2], Extremum.JOIN) == 2
    assert extremum(three, [], Extremum.MEET) == 2
    assert extremum(three, [], Extremum.JOIN) == 0


def test_antichain_has_no_join(antichain2):
    with pytest.raises(NoBound) as e:
        extremum(antichain2, [0, 1], Extremum.JOIN)
    assert e.value.witness["subset"] == ["a", "b"]


def test_missing_meet():
    assert missing_meet(chain(3)) is None
    assert missing_meet(powerset_order(["x", "y"])) is None
    assert missing_meet(make_preorder(["a", "b"], [], close=True)) == []
    # t above a and b, both above c and d: {a, b} has two maximal lower bounds
    bowtie = make_preorder(
        ["t", "a", "b", "c", "d"],
        [("a", "t"), ("b", "t"), ("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
        close=True,
    )
    assert missing_meet(bowtie) == [1, 2]


def test_monotone_map_rejects_order_reversal(chain2):
    with pytest.raises(NotMonotone) as e:
        MonotoneMap(chain2, chain2, [1, 0])
    assert e.value.witness["pair"] == ["0", "1"]


def test_classify_map(chain2, antichain2):
    assert classify_map(MonotoneMap(chain2, chain2, [0, 1])) is MapKind.ISOTONE
    assert classify_map(MonotoneMap(antichain2, chain2, [0, 1])) is MapKind.MONOTONE


def test_kernel_preorder_identifies_collapsed_elements():
    kernel = kernel_preorder(MonotoneMap(chain(3), chain(2), [0, 0, 1]))
    assert kernel.equivalent(0, 1)
    assert kernel.canonical(1) == 0
    assert not kernel.is_poset()


def test_powerset_order_indexes_by_bitmask():
    order = powerset_order(["x", "y"])
    assert order.labels == ("{}", "{x}", "{y}", "{x,y}")
    assert order.le(1, 3)
    assert not order.le(1, 2)


def test_powerset_order_capacity():
    with pytest.raises(CapacityExceeded):
        powerset_order([str(i) for i in range(13)])


def test_covers_and_isomorphism(chain2):
    assert covers(chain(3)) == [(0, 1), (1, 2)]
    assert is_order_isomorphism(chain2, chain2, [0, 1])
    assert not is_order_isomorphism(chain2, chain2, [1, 0])


def test_subset_images():
    h = SetFunction(["a", "b", "c"], ["x", "y"], [0, 0, 1])
    assert direct_image(h, 0b011) == 0b01
    assert inverse_image(h, 0b01) == 0b011
    assert inverse_image(h, 0b10) == 0b100


@settings(max_examples=50)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=12))
def test_closed_relation_is_a_preorder(pairs):
    order = make_preorder(range(5), pairs, close=True)
    assert validate_preorder(order) is order
    assert np.all(np.diag(order.leq))


def test_kernel_of_identity_is_the_source():
    source = make_preorder("abc", [("a", "b")], close=True)
    f = MonotoneMap(source, source, [0, 1, 2])
    assert np.array_equal(kernel_preorder(f).leq, source.leq)
    assert classify_map(f) is MapKind.ISOTONE


def test_kernel_of_constant_map_merges_everything():
    f = MonotoneMap(antichain(["a", "b"]), chain(1), [0, 0])
    kernel = kernel_preorder(f)
    assert kernel.equivalent(0, 1)
    assert classify_map(f) is MapKind.MONOTONE


def random_monotone_map(rng: np.random.Generator) -> MonotoneMap:
    """A map into a random preorder, with the source order drawn from inside the kernel."""
    n_source, n_target = int(rng.integers(0, 5)), int(rng.integers(1, 5))
    target_pairs = [(a, b) for a in range(n_target) for b in range(n_target) if rng.random() < 0.3]
    target = make_preorder(range(n_target), target_pairs, close=True)
    mapping = rng.integers(0, n_target, size=n_source)
    keep = 1.0 if rng.random() < 0.3 else 0.5
    source_pairs = [
        (a, b)
        for a in range(n_source)
        for b in range(n_source)
        if target.le(int(mapping[a]), int(mapping[b])) and rng.random() < keep
    ]
    return MonotoneMap(make_preorder(range(n_source), source_pairs, close=True), target, mapping)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_isotone_exactly_when_kernel_is_source(seed):
    f = random_monotone_map(np.random.default_rng(seed))
    kernel = kernel_preorder(f)
    assert (classify_map(f) is MapKind.ISOTONE) == np.array_equal(kernel.leq, f.source.leq)
    assert np.all(kernel.leq[f.source.leq])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.integers(1, 5), st.data())
def test_direct_image_is_left_adjoint_to_inverse_image(n_source, n_target, data):
    mapping = data.draw(st.lists(st.integers(0, n_target - 1), min_size=n_source, max_size=n_source))
    h = SetFunction([f"a{i}" for i in range(n_source)], [f"b{j}" for j in range(n_target)], mapping)
    for x in range(1 << n_source):
        image = direct_image(h, x)
        for y in range(1 << n_target):
            assert is_subset(image, y) == is_subset(x, inverse_image(h, y))
